"""Exception types shared across the package."""

from __future__ import annotations


class TrigroupError(Exception):
    """Base class for all package errors."""


class CapExceeded(TrigroupError):
    """Group closure grew past the requested cap."""


class MixedVariant(TrigroupError):
    """Generators do not share a variant / ambient degree or dimension."""


class UnassignedSymbol(TrigroupError):
    """A word uses a symbol missing from the assignment."""


class NotSubgroup(TrigroupError):
    """Claimed subgroup contains elements outside the ambient group."""


class Disconnected(TrigroupError):
    """Operation requires a connected graph."""


class NonSymmetricSet(TrigroupError):
    """Cayley graph connection set is not closed under inverses."""


class TooLarge(TrigroupError):
    """Input exceeds the size bound of the requested method."""


class NoConvergence(TrigroupError):
    """Iterative eigensolver hit its restart cap before reaching tolerance."""


class NotGenerating(TrigroupError):
    """A and B together do not generate X."""


class UnequalIndices(TrigroupError):
    """[A : A cap B] != [B : A cap B] where equal degrees are required."""


class BadParameters(TrigroupError):
    """Parameter combination outside the supported family."""


class BadPrime(TrigroupError):
    """Argument is not a prime (or not an odd prime) as required."""


class OutOfRange(TrigroupError):
    """Numeric argument outside its documented interval."""


class BadType(TrigroupError):
    """Unknown half-girth type tuple or invalid prime for it."""


class UnknownPattern(TrigroupError):
    """Flat witness pattern name not in the table."""


class UnsupportedAlgebraicForm(TrigroupError):
    """Exact-length arithmetic cannot represent the requested value."""


class UnknownVertexGroup(TrigroupError):
    """Vertex group id is not one of the ten catalog entries."""


class BadTag(TrigroupError):
    """Unknown presentation tag."""


class NotAnEdge(TrigroupError):
    """Requested epimorphism is not an edge of the specialization diagram."""


class NonUnitriangularInverse(TrigroupError):
    """Matrix inverse requested outside the unitriangular (nilpotent offset) case."""


class SearchExhausted(TrigroupError):
    """Search space exhausted without a witness."""


class PreconditionViolated(TrigroupError):
    """A verification bundle's stated precondition failed."""
