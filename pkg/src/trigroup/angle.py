"""Representation angles epsilon_X(A,B) by three independent routes.

spectral: eta2/k on the coset graph.  closed-form: Gauss periods for the
Frobenius families and the unipotent 1/sqrt(p), sqrt(2/p) values.  oracle:
largest singular value of p_A p_B - p_X on the left regular representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import is_prime
from .coset_graph import build_coset_graph
from .errors import BadParameters, BadPrime, NotGenerating, TooLarge, UnequalIndices
from .spectra import largest_symmetric_eigenvalue, spectral_report

ORACLE_LIMIT = 200


@dataclass
class AngleResult:
    epsilon: float
    route: str
    bound: float
    closed_form: float | None = None
    detail: dict = field(default_factory=dict)

    @property
    def alpha_degrees(self):
        return math.degrees(math.acos(min(1.0, max(-1.0, self.epsilon))))

    def to_dict(self):
        return {
            "epsilon": self.epsilon,
            "alpha_degrees": self.alpha_degrees,
            "route": self.route,
            "bound": self.bound,
            "closed_form": self.closed_form,
        }


def epsilon_spectral(X, A, B, tol=1e-8, graph=None):
    """epsilon = eta2/k from the coset graph spectrum.

    Requires [A : A cap B] = [B : A cap B] and that A and B generate X
    (equivalently: the coset graph is connected).
    """
    if graph is None:
        graph = build_coset_graph(X, A, B)
    if graph.k_left != graph.k_right:
        raise UnequalIndices(f"[A:AcapB]={graph.k_left} != [B:AcapB]={graph.k_right}")
    if not graph.connected:
        raise NotGenerating("A and B do not generate X (coset graph disconnected)")
    k = graph.k_left
    report = spectral_report(graph, tol=tol)
    result = AngleResult(epsilon=report.eta2 / k, route="spectral",
                         bound=report.bound / k,
                         detail={"graph": graph, "report": report})
    return result


def epsilon_projection_oracle(X, A, B):
    """Largest singular value of p_A p_B - p_X on l^2(X).

    Left regular representation: the A-invariant vectors are the functions
    constant on right cosets Ax, so (p_A f)(x) is the mean of f over Ax.
    """
    n = len(X)
    if n > ORACLE_LIMIT:
        raise TooLarge(f"projection oracle limited to |X| <= {ORACLE_LIMIT}")

    def averaging_projection(H):
        proj = np.zeros((n, n))
        mul = X.context.mul
        weight = 1.0 / len(H)
        for i, x in enumerate(X.raws):
            for h in H.raws:
                proj[i, X.index[mul(h, x)]] += weight
        return proj

    p_a = averaging_projection(A)
    p_b = averaging_projection(B)
    p_x = np.full((n, n), 1.0 / n)
    m = p_a @ p_b - p_x
    sigma_sq = largest_symmetric_eigenvalue(m.T @ m)
    epsilon = math.sqrt(max(0.0, sigma_sq))
    return AngleResult(epsilon=epsilon, route="oracle", bound=1e-10)


def gauss_period_epsilon(p, r):
    """Frobenius-group angle via Gauss periods.

    epsilon = (1/r) max_n |sum_j zeta^(n omega^j)| over n = 1..p-1, where
    omega is the smallest integer of multiplicative order exactly r mod p.
    For r = (p-1)/2 the Gauss-sum closed form is evaluated and checked:
    (sqrt(p)+1)/(p-1) if p = 1 mod 4, sqrt(p+1)/(p-1) if p = 3 mod 4.
    """
    if not is_prime(p):
        raise BadParameters(f"{p} is not prime")
    if r <= 1 or (p - 1) % r != 0:
        raise BadParameters(f"r={r} must be a divisor of p-1 greater than 1")
    omega = _smallest_of_order(p, r)
    cos_table = [math.cos(2.0 * math.pi * m / p) for m in range(p)]
    sin_table = [math.sin(2.0 * math.pi * m / p) for m in range(p)]
    exponents = []
    w = 1
    for _ in range(r):
        exponents.append(w)
        w = (w * omega) % p
    best = 0.0
    periods = []
    for n in range(1, p):
        idx = [(n * w) % p for w in exponents]
        re = math.fsum(cos_table[i] for i in idx)
        im = math.fsum(sin_table[i] for i in idx)
        modulus = math.hypot(re, im)
        periods.append(complex(re, im))
        if modulus > best:
            best = modulus
    epsilon = best / r
    closed = None
    if r == (p - 1) // 2 and r > 1:
        if p % 4 == 1:
            closed = (math.sqrt(p) + 1.0) / (p - 1.0)
        else:
            closed = math.sqrt(p + 1.0) / (p - 1.0)
        assert abs(epsilon - closed) < 1e-10, "period maximum disagrees with closed form"
    return AngleResult(epsilon=epsilon, route="closed-form", bound=1e-11,
                       closed_form=closed,
                       detail={"omega": omega, "periods": periods})


def _smallest_of_order(p, r):
    for w in range(2, p):
        if _multiplicative_order(w, p) == r:
            return w
    raise BadParameters(f"no element of order {r} mod {p}")


def _multiplicative_order(w, p):
    n, x = 1, w % p
    while x != 1:
        x = (x * w) % p
        n += 1
        if n > p:
            raise BadParameters(f"{w} is not invertible mod {p}")
    return n


def epsilon_unipotent(family, p):
    """Closed-form angles of the two unipotent families: U3 -> 1/sqrt(p), U4 -> sqrt(2/p)."""
    if not is_prime(p) or p == 2:
        raise BadPrime(f"{p} is not an odd prime")
    if family == "U3":
        value = 1.0 / math.sqrt(p)
    elif family == "U4":
        value = math.sqrt(2.0 / p)
    else:
        raise BadParameters(f"unknown unipotent family {family!r}")
    return AngleResult(epsilon=value, route="closed-form", bound=1e-15)
