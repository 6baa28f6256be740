"""Shared test configuration.

Registers a lenient hypothesis profile: closure and eigensolver based
properties have runtimes that vary too much for the default deadline.
"""

from hypothesis import HealthCheck, settings

settings.register_profile(
    "trigroup",
    deadline=None,
    suppress_health_check=(HealthCheck.too_slow,),
)
settings.load_profile("trigroup")
