"""Coset graphs of finite groups, spectral gaps, representation angles,
property (T) certificates, and generalized triangle group presentations."""

__version__ = "0.1.0"
