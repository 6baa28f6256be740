"""Property (T) certificates, the curvature gate, threshold cubics, flat witnesses.

The EJ test is one-sided: S = e0^2 + e1^2 + e2^2 + 2 e0 e1 e2 < 1 certifies (T),
equivalently arccos(e0) + arccos(e1) + arccos(e2) > pi; nothing is ever
concluded from S >= 1, so verdicts are {T-certified, inconclusive}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import is_prime
from .errors import (BadType, OutOfRange, UnknownPattern,
                     UnsupportedAlgebraicForm)


@dataclass
class TCertificate:
    epsilons: tuple
    S: float
    angles: tuple
    verdict: str
    margin: float

    @property
    def certified(self):
        return self.verdict == "T-certified"

    def to_dict(self):
        return {
            "epsilons": list(self.epsilons),
            "S": self.S,
            "angles_degrees": [math.degrees(a) for a in self.angles],
            "verdict": self.verdict,
            "margin": self.margin,
        }


def _s_form(e0, e1, e2):
    return e0 * e0 + e1 * e1 + e2 * e2 + 2.0 * e0 * e1 * e2


def ej_certify(e0, e1, e2, margin=0.0):
    """TCertificate for the angle triple; margin is an additive slack on S.

    Verdict is T-certified iff S + margin < 1.  The angle form
    sum arccos(ei) > pi is evaluated alongside and must agree with the
    margin-free S test (the two are equivalent on [0,1]^3).
    """
    epsilons = (e0, e1, e2)
    for e in epsilons:
        if not 0.0 <= e <= 1.0:
            raise OutOfRange(f"epsilon {e} outside [0,1]")
    if margin < 0.0:
        raise OutOfRange("margin must be nonnegative")
    s = _s_form(e0, e1, e2)
    angles = tuple(math.acos(e) for e in epsilons)
    angle_excess = sum(angles) - math.pi
    s_certifies = s + margin < 1.0
    if margin == 0.0 and abs(s - 1.0) > 1e-12:
        assert s_certifies == (angle_excess > 0.0), \
            "S-form and angle-form verdicts must agree"
    verdict = "T-certified" if s_certifies else "inconclusive"
    return TCertificate(epsilons=epsilons, S=s, angles=angles,
                        verdict=verdict, margin=margin)


def ej_certify_from_gaps(d0, d1, d2):
    """Certificate from spectral gaps: epsilon_i = 1 - delta_i."""
    for d in (d0, d1, d2):
        if not 0.0 <= d <= 1.0:
            raise OutOfRange(f"gap {d} outside [0,1]")
    return ej_certify(1.0 - d0, 1.0 - d1, 1.0 - d2)


def ej_certify_adversarial(epsilons, bounds):
    """Certificate with margin = S(eps + bound) - S(eps), the worst case over the radii."""
    clipped = [min(1.0, e + b) for e, b in zip(epsilons, bounds)]
    margin = _s_form(*clipped) - _s_form(*epsilons)
    return ej_certify(*epsilons, margin=max(0.0, margin))


@dataclass
class CurvatureClass:
    half_girths: tuple
    klass: str

    def to_dict(self):
        return {"half_girths": list(self.half_girths), "class": self.klass}


def npc_gate(r0, r1, r2):
    """Classify the half-girth triple by 1/r0 + 1/r1 + 1/r2 against 1 (exact)."""
    triple = (r0, r1, r2)
    if any(r < 2 or r != int(r) for r in triple):
        raise OutOfRange("half girths must be integers >= 2")
    total = Fraction(1, r0) + Fraction(1, r1) + Fraction(1, r2)
    if total < 1:
        klass = "hyperbolic"
    elif total == 1:
        klass = "euclidean-borderline"
    else:
        klass = "violates-NPC"
    return CurvatureClass(half_girths=triple, klass=klass)


THRESHOLD_CUBICS = {
    (3, 3, 3): (1, -6, 9, -4),
    (3, 3, 4): (1, -8, 16, -8),
    (3, 4, 4): (1, -10, 25, -16),
    (4, 4, 4): (1, -12, 36, -32),
}


def closed_form_epsilons(half_girth_type, p):
    """The closed-form angle triple of the type's vertex groups at odd prime p."""
    a = 1.0 / math.sqrt(p)
    b = math.sqrt(2.0 / p)
    table = {
        (2, 4, 4): (0.0, b, b),
        (3, 3, 3): (a, a, a),
        (3, 3, 4): (a, a, b),
        (3, 4, 4): (a, b, b),
        (4, 4, 4): (b, b, b),
    }
    if half_girth_type not in table:
        raise BadType(f"unknown half-girth type {half_girth_type}")
    return table[half_girth_type]


@dataclass
class ThresholdVerdict:
    half_girth_type: tuple
    p: int
    cubic_value: int | None
    certified: bool

    def to_dict(self):
        return {
            "type": list(self.half_girth_type),
            "p": self.p,
            "cubic_value": self.cubic_value,
            "certified": self.certified,
        }


def kms_kazhdan_threshold(half_girth_type, p):
    """Exact threshold test per type: sign of the type's cubic in p (p > 4 for (2,4,4)).

    Coincides with ej_certify fed the closed-form epsilon triple of the type.
    """
    half_girth_type = tuple(half_girth_type)
    if not is_prime(p) or p == 2:
        raise BadType(f"p={p} is not an odd prime")
    if half_girth_type == (2, 4, 4):
        return ThresholdVerdict(half_girth_type, p, None, certified=p > 4)
    if half_girth_type not in THRESHOLD_CUBICS:
        raise BadType(f"unknown half-girth type {half_girth_type}")
    c3, c2, c1, c0 = THRESHOLD_CUBICS[half_girth_type]
    value = ((c3 * p + c2) * p + c1) * p + c0
    return ThresholdVerdict(half_girth_type, p, value, certified=value > 0)


class Surd:
    """Exact nonnegative value q*sqrt(m): q rational >= 0, m squarefree >= 1."""

    __slots__ = ("q", "m")

    def __init__(self, q, m=1):
        q = Fraction(q)
        if q < 0:
            raise UnsupportedAlgebraicForm("negative lengths are not used")
        m = int(m)
        if m < 1:
            raise UnsupportedAlgebraicForm("radicand must be positive")
        square, free = _split_square(m)
        self.q = q * square
        self.m = free
        if self.q == 0:
            self.m = 1

    def __float__(self):
        return float(self.q) * math.sqrt(self.m)

    def __eq__(self, other):
        return isinstance(other, Surd) and self.q == other.q and self.m == other.m

    def __hash__(self):
        return hash((self.q, self.m))

    def __mul__(self, other):
        if isinstance(other, Surd):
            return Surd(self.q * other.q, self.m * other.m)
        return Surd(self.q * Fraction(other), self.m)

    def ratio(self, other):
        """self/other as a Surd; other must be nonzero."""
        if not isinstance(other, Surd):
            other = Surd(other)
        if other.q == 0:
            raise ZeroDivisionError("ratio by zero length")
        return Surd(self.q / (other.q * other.m), self.m * other.m)

    @property
    def is_rational(self):
        return self.m == 1

    def __repr__(self):
        if self.m == 1:
            return f"{self.q}"
        if self.q == 1:
            return f"sqrt({self.m})"
        return f"{self.q}*sqrt({self.m})"


def _split_square(m):
    square, free, d = 1, m, 2
    while d * d <= free:
        while free % (d * d) == 0:
            free //= d * d
            square *= d
        d += 1
    return square, free


FLAT_WITNESS_TABLE = {
    (3, 3, 3): {
        "abcb'": Surd(1, 3),
        "abca'b'c'": Surd(3),
        "abcb'a'b''c'b'''": Surd(2, 3),
        "abca'b'c'a''b''c''b'''": Surd(1, 21),
        "abcb'a'b''c'b'''a''b''''c''b'''''": Surd(3, 3),
    },
    (2, 4, 4): {
        "acbc'": Surd(1, 2),
        "aca'bc'b'": Surd(2),
        "acbc'a'c''b'c'''": Surd(2, 2),
        "aca'bc'a''b'c''b''c'''": Surd(1, 10),
        "aca'bc'b'a''c''a'''b''c'''b'''": Surd(4),
    },
}


def flat_witness_length(pattern, half_girth_type):
    """Exact translation length of one of the ten tabulated flat witness words."""
    half_girth_type = tuple(half_girth_type)
    table = FLAT_WITNESS_TABLE.get(half_girth_type)
    if table is None:
        raise UnknownPattern(f"no flat witness table for type {half_girth_type}")
    if pattern not in table:
        raise UnknownPattern(f"unknown pattern {pattern!r} for type {half_girth_type}")
    return table[pattern]


def z2_exclusion(len_x, len_y):
    """Rationality dichotomy for a commuting pair with the given translation lengths.

    Returns ("ratio-rational", (k, l)) with k/l the reduced length ratio, or
    ("ratio-irrational", None): in the latter case commuting witnesses span
    Z x Z outright.
    """
    sx = len_x if isinstance(len_x, Surd) else Surd(len_x)
    sy = len_y if isinstance(len_y, Surd) else Surd(len_y)
    if sx.q == 0 or sy.q == 0:
        raise UnsupportedAlgebraicForm("zero translation length")
    ratio = sx.ratio(sy)
    if ratio.is_rational:
        return "ratio-rational", (ratio.q.numerator, ratio.q.denominator)
    return "ratio-irrational", None
