"""Matrices over polynomial coefficient rings, and exact verification of the
matrix models of the three-generator groups.

Covers four kinds of models: images over the one-variable polynomial ring
F_p[T], block images over F_p assembled from arbitrary k-by-k matrices,
images over the free ring F_p<x,y,z> in three non-commuting indeterminates,
and the unipotent root-group models inside SL_3(F_p) and Sp_4(F_p).  Also
builds Singer elements of GL_k(F_p) and the block witness whose commutator
identities drive the large-rank quotient construction.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from .algebra import is_prime
from .errors import (BadParameters, BadPrime, NonUnitriangularInverse,
                     OutOfRange, PreconditionViolated, SearchExhausted,
                     UnsupportedAlgebraicForm)
from .presentations import kms_presentation
from .words import Word, comm, verify_presentation

DEFAULT_SEED = 0xC0FFEE

MODES = ("commutative", "free")


# ---------------------------------------------------------------------------
# Sparse polynomials with coefficients in a prime field.
# ---------------------------------------------------------------------------

class NCPoly:
    """Formal F_p-linear combination of words over an ordered alphabet.

    A word is a tuple of letter names.  In commutative mode every word is
    kept sorted so that equal monomials merge; in free mode the letter order
    is significant.  Zero coefficients are never stored.
    """

    __slots__ = ("p", "mode", "coeffs")

    def __init__(self, p, mode, coeffs=None):
        if mode not in MODES:
            raise BadParameters(f"mode must be one of {MODES}, got {mode!r}")
        if not (isinstance(p, int) and is_prime(p)):
            raise BadPrime(f"coefficient modulus must be prime, got {p!r}")
        self.p = p
        self.mode = mode
        merged = {}
        for word, c in (coeffs or {}).items():
            word = tuple(word)
            if mode == "commutative":
                word = tuple(sorted(word))
            c = (merged.get(word, 0) + c) % p
            if c:
                merged[word] = c
            elif word in merged:
                del merged[word]
        self.coeffs = merged

    @staticmethod
    def constant(value, p, mode="commutative"):
        return NCPoly(p, mode, {(): value})

    @staticmethod
    def letter(name, p, mode="commutative", coefficient=1):
        return NCPoly(p, mode, {(name,): coefficient})

    @staticmethod
    def monomial(word, coefficient, p, mode="commutative"):
        return NCPoly(p, mode, {tuple(word): coefficient})

    def _check_compatible(self, other):
        if not isinstance(other, NCPoly):
            raise BadParameters(f"expected NCPoly operand, got {type(other).__name__}")
        if self.p != other.p or self.mode != other.mode:
            raise BadParameters("NCPoly operands must share modulus and mode")

    def __add__(self, other):
        self._check_compatible(other)
        coeffs = dict(self.coeffs)
        for word, c in other.coeffs.items():
            coeffs[word] = coeffs.get(word, 0) + c
        return NCPoly(self.p, self.mode, coeffs)

    def __neg__(self):
        return NCPoly(self.p, self.mode,
                      {word: -c for word, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_compatible(other)
        coeffs = {}
        for wa, ca in self.coeffs.items():
            for wb, cb in other.coeffs.items():
                word = wa + wb
                if self.mode == "commutative":
                    word = tuple(sorted(word))
                coeffs[word] = coeffs.get(word, 0) + ca * cb
        return NCPoly(self.p, self.mode, coeffs)

    def scale(self, value):
        return NCPoly(self.p, self.mode,
                      {word: c * value for word, c in self.coeffs.items()})

    def is_zero(self):
        return not self.coeffs

    def constant_value(self):
        """The value of a constant polynomial, None when any letter occurs."""
        if not self.coeffs:
            return 0
        if set(self.coeffs) == {()}:
            return self.coeffs[()]
        return None

    def degree(self):
        """Largest word length with nonzero coefficient (-1 for the zero poly)."""
        if not self.coeffs:
            return -1
        return max(len(word) for word in self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, NCPoly) and self.p == other.p
                and self.mode == other.mode and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.p, self.mode, frozenset(self.coeffs.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for word in sorted(self.coeffs, key=lambda w: (len(w), w)):
            c = self.coeffs[word]
            if not word:
                parts.append(str(c))
            else:
                name = "*".join(word)
                parts.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(parts)

    def __repr__(self):
        return f"NCPoly({self})"


# ---------------------------------------------------------------------------
# Square matrices of polynomials.
# ---------------------------------------------------------------------------

class PolyMatrix:
    """Square matrix with NCPoly entries sharing one modulus and mode."""

    __slots__ = ("p", "mode", "n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise BadParameters("PolyMatrix requires a nonempty square grid")
        first = rows[0][0]
        for row in rows:
            for entry in row:
                if not isinstance(entry, NCPoly):
                    raise BadParameters("PolyMatrix entries must be NCPoly")
                if entry.p != first.p or entry.mode != first.mode:
                    raise BadParameters("PolyMatrix entries must share modulus and mode")
        self.p = first.p
        self.mode = first.mode
        self.n = n
        self.rows = rows

    @staticmethod
    def identity(n, p, mode="commutative"):
        zero = NCPoly(p, mode)
        one = NCPoly.constant(1, p, mode)
        return PolyMatrix(tuple(tuple(one if i == j else zero for j in range(n))
                                for i in range(n)))

    @staticmethod
    def from_scalar_rows(rows, p, mode="commutative"):
        """Lift a grid of integers to constant polynomial entries."""
        return PolyMatrix(tuple(tuple(NCPoly.constant(v, p, mode) for v in row)
                                for row in rows))

    def entry(self, i, j):
        return self.rows[i][j]

    def _check_compatible(self, other):
        if not isinstance(other, PolyMatrix):
            raise BadParameters(f"expected PolyMatrix operand, got {type(other).__name__}")
        if self.n != other.n or self.p != other.p or self.mode != other.mode:
            raise BadParameters("PolyMatrix operands must share size, modulus, and mode")

    def __mul__(self, other):
        self._check_compatible(other)
        n = self.n
        zero = NCPoly(self.p, self.mode)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    left = self.rows[i][k]
                    if left.is_zero():
                        continue
                    right = other.rows[k][j]
                    if right.is_zero():
                        continue
                    acc = acc + left * right
                row.append(acc)
            out.append(tuple(row))
        return PolyMatrix(tuple(out))

    def __add__(self, other):
        self._check_compatible(other)
        return PolyMatrix(tuple(tuple(self.rows[i][j] + other.rows[i][j]
                                      for j in range(self.n))
                                for i in range(self.n)))

    def __eq__(self, other):
        return (isinstance(other, PolyMatrix) and self.n == other.n
                and self.p == other.p and self.mode == other.mode
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.p, self.mode, self.rows))

    def is_identity(self):
        return self == PolyMatrix.identity(self.n, self.p, self.mode)

    def inverse(self):
        """Neumann-series inverse of identity-plus-nilpotent matrices.

        The nilpotent part N = M - I must satisfy N^n = 0 (true for every
        matrix that is strictly triangular after a permutation of the basis);
        anything else raises NonUnitriangularInverse.
        """
        ident = PolyMatrix.identity(self.n, self.p, self.mode)
        nilpotent = self + ident.scale(-1)
        out = ident
        power = ident
        sign = -1
        for _ in range(self.n - 1):
            power = power * nilpotent
            out = out + power.scale(sign)
            sign = -sign
        if not (power * nilpotent).is_zero_matrix():
            raise NonUnitriangularInverse(
                "inverse supported only for identity plus nilpotent matrices")
        return out

    def scale(self, value):
        return PolyMatrix(tuple(tuple(e.scale(value) for e in row) for row in self.rows))

    def is_zero_matrix(self):
        return all(e.is_zero() for row in self.rows for e in row)

    def to_scalar_rows(self):
        """Integer grid for a matrix of constant entries, else raises."""
        out = []
        for row in self.rows:
            vals = []
            for e in row:
                v = e.constant_value()
                if v is None:
                    raise UnsupportedAlgebraicForm("matrix entry is not constant")
                vals.append(v)
            out.append(tuple(vals))
        return tuple(out)

    def det(self):
        """Determinant of a constant-entry matrix, as an element of F_p."""
        return _det_int(self.to_scalar_rows(), self.p)

    def max_degree(self):
        return max(e.degree() for row in self.rows for e in row)

    def __repr__(self):
        return f"PolyMatrix(n={self.n}, p={self.p}, mode={self.mode})"


# ---------------------------------------------------------------------------
# Integer matrices modulo p (fast scalar path shared by the block models).
# ---------------------------------------------------------------------------

def _np_grid(rows, p):
    return np.asarray(rows, dtype=np.int64) % p


def _grid_tuple(array):
    return tuple(tuple(int(v) for v in row) for row in array)


def _det_int(rows, p):
    """Determinant mod p by Gaussian elimination with pivot search."""
    a = [[v % p for v in row] for row in rows]
    n = len(a)
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det % p
        det = det * a[col][col] % p
        inv = pow(a[col][col], -1, p)
        for r in range(col + 1, n):
            factor = a[r][col] * inv % p
            if factor:
                a[r] = [(x - factor * y) % p for x, y in zip(a[r], a[col])]
    return det % p


def _inv_int(rows, p):
    """Inverse mod p by Gauss-Jordan elimination; raises on singular input."""
    n = len(rows)
    a = [[v % p for v in row] + [1 if i == j else 0 for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise BadParameters("matrix is singular modulo p")
        a[col], a[pivot] = a[pivot], a[col]
        inv = pow(a[col][col], -1, p)
        a[col] = [x * inv % p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [(x - factor * y) % p for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


class _ScalarMatrix:
    """Numpy-backed square matrix mod p exposing the word-evaluation protocol."""

    __slots__ = ("p", "a")

    def __init__(self, a, p):
        self.p = p
        self.a = _np_grid(a, p)

    def __mul__(self, other):
        return _ScalarMatrix(self.a @ other.a, self.p)

    def inverse(self):
        return _ScalarMatrix(_inv_int(_grid_tuple(self.a), self.p), self.p)

    def is_identity(self):
        return np.array_equal(self.a, np.eye(len(self.a), dtype=np.int64))

    def __eq__(self, other):
        return (isinstance(other, _ScalarMatrix) and self.p == other.p
                and np.array_equal(self.a, other.a))

    def __hash__(self):
        return hash((self.p, _grid_tuple(self.a)))

    def grid(self):
        return _grid_tuple(self.a)


def _scalar_pow(a, exponent, p):
    """Square-and-multiply power of an integer matrix mod p."""
    result = np.eye(len(a), dtype=np.int64)
    base = _np_grid(a, p)
    e = exponent
    while e:
        if e & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        e >>= 1
    return result


def _factorize(n):
    """Prime factorization by trial division, as a sorted list of primes."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _has_order(a, n, p, prime_divisors=None):
    """Whether the matrix has multiplicative order exactly n mod p."""
    ident = np.eye(len(a), dtype=np.int64)
    if not np.array_equal(_scalar_pow(a, n, p), ident):
        return False
    for q in prime_divisors or _factorize(n):
        if np.array_equal(_scalar_pow(a, n // q, p), ident):
            return False
    return True


# ---------------------------------------------------------------------------
# Singer elements.
# ---------------------------------------------------------------------------

def singer_matrix(p, k):
    """An element of GL_k(F_p) of multiplicative order p^k - 1 whose last
    column is e_1.

    Found by scanning monic degree-k polynomials in lexicographic coefficient
    order, testing the companion matrix for full multiplicative order, then
    conjugating by the cyclic basis permutation that moves the distinguished
    image into the last column.
    """
    if not (isinstance(p, int) and is_prime(p)):
        raise BadPrime(f"p must be prime, got {p!r}")
    if not (isinstance(k, int) and k >= 2):
        raise OutOfRange(f"k must be an integer >= 2, got {k!r}")
    n = p ** k - 1
    divisors = _factorize(n)
    for coeffs in itertools.product(range(p), repeat=k):
        # coeffs = (c_{k-1}, ..., c_1, c_0) for X^k + c_{k-1} X^{k-1} + ... + c_0
        if coeffs[-1] == 0:
            continue
        companion = [[0] * k for _ in range(k)]
        for i in range(1, k):
            companion[i][i - 1] = 1
        for i in range(k):
            companion[i][k - 1] = (-coeffs[k - 1 - i]) % p
        if not _has_order(companion, n, p, divisors):
            continue
        # Conjugate by the cyclic shift e_1 -> e_k, e_j -> e_{j-1} so that the
        # image of e_k lands on e_1: the companion maps e_1 to e_2.
        perm = [(j - 1) % k for j in range(k)]
        s = [[1 if i == perm[j] else 0 for j in range(k)] for i in range(k)]
        s_inv = _inv_int(s, p)
        c = (_np_grid(s, p) @ _np_grid(companion, p) @ _np_grid(s_inv, p)) % p
        return _grid_tuple(c)
    raise SearchExhausted(f"no primitive degree-{k} polynomial found over F_{p}")


def power_span_size(matrix, p):
    """Size of the F_p-span of the powers of a matrix (a commutative
    subalgebra), computed as p to the rank of the vectorized powers."""
    k = len(matrix)
    rows = []
    power = np.eye(k, dtype=np.int64)
    m = _np_grid(matrix, p)
    for _ in range(k * k):
        vec = [int(v) for v in power.reshape(-1) % p]
        rows.append(vec)
        power = (power @ m) % p
    rank = 0
    a = [row[:] for row in rows]
    cols = len(a[0])
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, len(a)) if a[i][col] % p), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = pow(a[r][col] % p, -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col] % p:
                f = a[i][col] % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
    rank = r
    return p ** rank


# ---------------------------------------------------------------------------
# Representation verification.
# ---------------------------------------------------------------------------

REP_IDS = ("A2_T", "A2_block", "C2_sigma", "B2_sigma'", "HC2_free", "HBC2_free")

# Source presentation tag for each representation id.
_REP_SOURCE = {
    "A2_T": "A2t",
    "A2_block": "A2t",
    "C2_sigma": "C2t",
    "B2_sigma'": "HB2_2",
    "HC2_free": "HC2_2",
    "HBC2_free": "HBC2_2",
}

# Block placements: generator -> ((block_row, block_col, sign, which), ...),
# with blocks indexed from 1 and `which` naming one of the three input
# matrices.  The assembled image is the identity plus the listed blocks.
_BLOCK_PLACEMENTS = {
    "A2_block": {
        "a": ((1, 2, 1, "a"),),
        "b": ((2, 3, 1, "b"),),
        "c": ((3, 1, 1, "c"),),
    },
    "C2_sigma": {
        "a": ((3, 1, 1, "a"),),
        "b": ((4, 2, 1, "b"),),
        "c": ((1, 4, 1, "c"), (2, 3, 1, "c")),
    },
    "B2_sigma'": {
        "a": ((1, 4, 1, "a"), (2, 3, 1, "a")),
        "b": ((2, 1, 1, "b"), (3, 4, -1, "b")),
        "c": ((4, 2, 1, "c"),),
    },
}

_BLOCK_COUNT = {"A2_block": 3, "C2_sigma": 4, "B2_sigma'": 4}


def random_matrix_triple(p, k, rng):
    """Three k-by-k matrices over F_p with independent uniform entries."""
    return tuple(tuple(tuple(rng.randrange(p) for _ in range(k)) for _ in range(k))
                 for _ in range(3))


def _check_matrix_triple(matrices, p, k):
    if len(matrices) != 3:
        raise BadParameters("expected exactly three block matrices")
    cleaned = []
    for m in matrices:
        grid = tuple(tuple(int(v) % p for v in row) for row in m)
        if len(grid) != k or any(len(row) != k for row in grid):
            raise BadParameters(f"block matrices must be {k}x{k}")
        cleaned.append(grid)
    return tuple(cleaned)


def _assemble_block(placements, blocks, k, p, matrices):
    """Identity plus signed block placements, as an integer grid."""
    n = blocks * k
    grid = np.eye(n, dtype=np.int64)
    for (bi, bj, sign, which) in placements:
        block = _np_grid(matrices[which], p) * sign
        grid[(bi - 1) * k:bi * k, (bj - 1) * k:bj * k] += block
    return _grid_tuple(grid % p)


def block_images(rep_id, p, k, matrices):
    """Generator images of a block representation as integer grids."""
    if rep_id not in _BLOCK_PLACEMENTS:
        raise BadParameters(f"not a block representation id: {rep_id!r}")
    named = {"a": matrices[0], "b": matrices[1], "c": matrices[2]}
    return {
        g: _assemble_block(placements, _BLOCK_COUNT[rep_id], k, p, named)
        for g, placements in _BLOCK_PLACEMENTS[rep_id].items()
    }


def a2_t_images(p, mode="commutative"):
    """Generator images over F_p[T]: two unit upper bidiagonal matrices and
    the corner matrix carrying T in the lower-left entry."""
    zero = NCPoly(p, mode)
    one = NCPoly.constant(1, p, mode)
    t = NCPoly.letter("T", p, mode)

    def mat(extra):
        rows = [[one if i == j else zero for j in range(3)] for i in range(3)]
        for (i, j, value) in extra:
            rows[i][j] = value
        return PolyMatrix(tuple(tuple(row) for row in rows))

    return {
        "a": mat(((0, 1, one),)),
        "b": mat(((1, 2, one),)),
        "c": mat(((2, 0, t),)),
    }


def free_ring_images(rep_id, p):
    """Generator images over the free ring F_p<x,y,z>."""
    mode = "free"
    zero = NCPoly(p, mode)
    one = NCPoly.constant(1, p, mode)

    def mat(n, extra):
        rows = [[one if i == j else zero for j in range(n)] for i in range(n)]
        for (i, j, value) in extra:
            rows[i][j] = value
        return PolyMatrix(tuple(tuple(row) for row in rows))

    x = NCPoly.letter("x", p, mode)
    y = NCPoly.letter("y", p, mode)
    z = NCPoly.letter("z", p, mode)
    if rep_id == "HC2_free":
        return {
            "a": mat(4, ((0, 1, x),)),
            "b": mat(4, ((3, 0, y),)),
            "c": mat(4, ((1, 2, z), (2, 3, z))),
        }
    if rep_id == "HBC2_free":
        half = pow(2, -1, p)
        x_sq_half = NCPoly.monomial(("x", "x"), half, p, mode)
        return {
            "a": mat(5, ((1, 2, x), (1, 3, x_sq_half), (2, 3, x))),
            "b": mat(5, ((4, 0, y),)),
            "c": mat(5, ((0, 1, z), (3, 4, z))),
        }
    raise BadParameters(f"not a free-ring representation id: {rep_id!r}")


def rep_images(rep_id, p, k=1, matrices=None, seed=DEFAULT_SEED):
    """Generator images of any supported representation as PolyMatrix values.

    Block representations get constant entries; supplying `matrices` fixes
    the three blocks, otherwise they are drawn from the seeded generator.
    """
    if rep_id not in REP_IDS:
        raise BadParameters(f"unknown representation id: {rep_id!r}")
    if rep_id == "A2_T":
        return a2_t_images(p)
    if rep_id in ("HC2_free", "HBC2_free"):
        return free_ring_images(rep_id, p)
    if matrices is None:
        matrices = random_matrix_triple(p, k, random.Random(seed))
    matrices = _check_matrix_triple(matrices, p, k)
    grids = block_images(rep_id, p, k, matrices)
    return {g: PolyMatrix.from_scalar_rows(grid, p) for g, grid in grids.items()}


@dataclass
class RepVerification:
    """Per-relator outcome of evaluating a representation on its source
    presentation."""

    rep_id: str
    p: int
    k: int
    relator_results: tuple
    matrices: tuple = None

    @property
    def passed(self):
        return all(ok for _, ok in self.relator_results)

    @property
    def relator_count(self):
        return len(self.relator_results)

    def to_dict(self):
        return {
            "rep_id": self.rep_id,
            "p": self.p,
            "k": self.k,
            "passed": self.passed,
            "relators": [{"word": word, "holds": ok}
                         for word, ok in self.relator_results],
            "matrices": [[list(row) for row in m] for m in self.matrices]
            if self.matrices else None,
        }


def verify_rep(rep_id, p, k=1, matrices=None, seed=DEFAULT_SEED):
    """Evaluate every relator of the source presentation under the named
    representation; reports a pass/fail flag per relator.

    Block representations take three k-by-k matrices over F_p (arbitrary
    entries are admissible); when omitted they are drawn from the seeded
    generator so runs stay reproducible.
    """
    if rep_id not in REP_IDS:
        raise BadParameters(f"unknown representation id: {rep_id!r}")
    spec = kms_presentation(_REP_SOURCE[rep_id], p)
    used = None
    if rep_id in _BLOCK_PLACEMENTS:
        if not (isinstance(k, int) and k >= 1):
            raise BadParameters(f"block size k must be a positive integer, got {k!r}")
        if matrices is None:
            matrices = random_matrix_triple(p, k, random.Random(seed))
        used = _check_matrix_triple(matrices, p, k)
        grids = block_images(rep_id, p, k, used)
        images = {g: _ScalarMatrix(grid, p) for g, grid in grids.items()}
    else:
        if matrices is not None:
            raise BadParameters(f"{rep_id} takes no block matrices")
        if k != 1:
            raise BadParameters(f"{rep_id} has no block size; leave k at 1")
        images = rep_images(rep_id, p)
    _, report = verify_presentation(spec.relators, images)
    results = tuple((str(word), holds) for word, holds in report)
    return RepVerification(rep_id=rep_id, p=p, k=k,
                           relator_results=results, matrices=used)


# ---------------------------------------------------------------------------
# Commuting pair inside the F_p[T] image (a necessary check only: equality
# in the image cannot certify equality in the source group).
# ---------------------------------------------------------------------------

@dataclass
class CommutingPairCheck:
    """Outcome of the free-abelian-pair identities evaluated in the image."""

    p: int
    commute: bool
    product_identity: bool
    reversed_identity: bool

    @property
    def passed(self):
        return self.commute and self.product_identity and self.reversed_identity

    def to_dict(self):
        return {
            "p": self.p,
            "commute": self.commute,
            "product_identity": self.product_identity,
            "reversed_identity": self.reversed_identity,
            "passed": self.passed,
            "necessary_only": True,
        }


def verify_commuting_pair_A2(p):
    """Check, inside the F_p[T] image, that the two designated words commute
    and satisfy the product identities xy = abc^2b and yx = acb^2c.

    This is a NECESSARY check only: it confirms the identities in the matrix
    image, not in the source group itself.
    """
    images = a2_t_images(p)
    half = (p - 1) // 2
    x = Word.parse("ab") * Word.gen("a", half) * Word.gen("c")
    y = Word.parse("ac") * Word.gen("a", half) * Word.gen("b")

    def ev(word):
        out = None
        for s, e in word.letters:
            m = images[s] if e == 1 else images[s].inverse()
            out = m if out is None else out * m
        return out

    xy = ev(x) * ev(y)
    yx = ev(y) * ev(x)
    return CommutingPairCheck(
        p=p,
        commute=xy == yx,
        product_identity=xy == ev(Word.parse("abccb")),
        reversed_identity=yx == ev(Word.parse("acbbc")),
    )


# ---------------------------------------------------------------------------
# Block witness for the large-rank quotient construction.
# ---------------------------------------------------------------------------

@dataclass
class BlockWitness:
    """The three structured blocks and their assembled 4k-by-4k images,
    together with the four commutator/order checks."""

    p: int
    k: int
    m_a: tuple
    m_b: tuple
    m_c: tuple
    v_a: tuple
    v_b: tuple
    v_c: tuple
    checks: tuple

    @property
    def passed(self):
        return all(ok for _, ok in self.checks)

    def to_dict(self):
        return {
            "p": self.p,
            "k": self.k,
            "m_a": [list(r) for r in self.m_a],
            "m_b": [list(r) for r in self.m_b],
            "m_c": [list(r) for r in self.m_c],
            "checks": {name: ok for name, ok in self.checks},
            "passed": self.passed,
        }


def _embed_single_block(n_blocks, k, p, bi, bj, block, sign=1):
    grid = np.eye(n_blocks * k, dtype=np.int64)
    grid[(bi - 1) * k:bi * k, (bj - 1) * k:bj * k] += _np_grid(block, p) * sign
    return _grid_tuple(grid % p)


def kassabov_witness(p, k):
    """Construct the structured block triple (subdiagonal, superdiagonal, and
    Singer-derived) and verify the four witness identities: the product
    order, non-commutation, and the two commutator block identities."""
    if not (isinstance(p, int) and is_prime(p) and p % 2 == 1):
        raise PreconditionViolated(f"p must be an odd prime, got {p!r}")
    if not (isinstance(k, int) and is_prime(k)):
        raise PreconditionViolated(f"k must be prime, got {k!r}")
    if k == p:
        raise PreconditionViolated("k = p is excluded")

    m_a = tuple(tuple(1 if i == j + 1 else 0 for j in range(k)) for i in range(k))
    m_b = tuple(tuple(1 if j == i + 1 else 0 for j in range(k)) for i in range(k))
    a = _np_grid(m_a, p)
    b = _np_grid(m_b, p)
    m1 = (a @ b + b @ a) % p
    expected_m1 = np.diag([1] + [2] * (k - 2) + [1]).astype(np.int64) % p
    structure_ok = np.array_equal(m1, expected_m1)

    c = singer_matrix(p, k)
    m_c = _grid_tuple((_np_grid(_inv_int(_grid_tuple(m1), p), p) @ _np_grid(c, p)) % p)
    m2 = _np_grid(m_c, p)
    m3 = (a @ b @ m2 @ b @ a) % p

    v_a = block_images("B2_sigma'", p, k, (m_a, m_b, m_c))["a"]
    v_b = block_images("B2_sigma'", p, k, (m_a, m_b, m_c))["b"]
    v_c = block_images("B2_sigma'", p, k, (m_a, m_b, m_c))["c"]
    sa = _ScalarMatrix(v_a, p)
    sb = _ScalarMatrix(v_b, p)
    sc = _ScalarMatrix(v_c, p)

    def bracket(u, w):
        return u.inverse() * w.inverse() * u * w

    order_ok = _has_order(_grid_tuple((m1 @ m2) % p), p ** k - 1, p)
    noncommuting = not np.array_equal((m1 @ m2 @ m3) % p, (m3 @ m2 @ m1) % p)

    first = bracket(sa, sb)
    expect_first = _ScalarMatrix(
        _embed_single_block(4, k, p, 2, 4, _grid_tuple(m1), sign=-1), p)
    second = bracket(bracket(bracket(bracket(sc, sb), sb), sa), sa)
    expect_second = _ScalarMatrix(
        _embed_single_block(4, k, p, 2, 4, _grid_tuple((4 * m3) % p), sign=-1), p)

    checks = (
        ("m1_structure", bool(structure_ok)),
        ("product_order", bool(order_ok)),
        ("noncommuting_products", bool(noncommuting)),
        ("bracket_ab", first == expect_first),
        ("bracket_cbbaa", second == expect_second),
    )
    return BlockWitness(p=p, k=k, m_a=m_a, m_b=m_b, m_c=m_c,
                        v_a=v_a, v_b=v_b, v_c=v_c, checks=checks)


# ---------------------------------------------------------------------------
# Unipotent root-group models.
# ---------------------------------------------------------------------------

# Linear parts N_i with x_i(t) = I + t N_i.  The 4x4 family lives inside the
# symplectic group for the form with antidiagonal (1, 1, -1, -1).
_U3_NILPOTENTS = (
    ("x1", ((0, 1), (1,))),
    ("x2", ((0, 2), (1,))),
    ("x3", ((1, 2), (1,))),
)

_ROOT_FAMILIES = ("U3", "U4")


def _unit_matrix(n, entries, t, p):
    grid = np.eye(n, dtype=np.int64)
    for (i, j, coeff) in entries:
        grid[i][j] = (grid[i][j] + coeff * t) % p
    return _grid_tuple(grid % p)


def _root_generators(family, p):
    """Callables t -> x_i(t) for the root groups, in index order."""
    if family == "U3":
        entries = {
            "x1": ((0, 1, 1),),
            "x2": ((0, 2, 1),),
            "x3": ((1, 2, 1),),
        }
        n = 3
    else:
        entries = {
            "x1": ((1, 2, 1),),
            "x2": ((0, 2, 1), (1, 3, 1)),
            "x3": ((0, 3, 1),),
            "x4": ((0, 1, 1), (2, 3, -1)),
        }
        n = 4
    return n, {name: (lambda t, ent=ent: _unit_matrix(n, ent, t, p))
               for name, ent in entries.items()}


@dataclass
class RootGroupModel:
    """Explicit unipotent root-group matrices with their relation checks."""

    family: str
    p: int
    size: int
    generators: dict
    relations: tuple
    group_order: int
    expected_order: int

    @property
    def passed(self):
        return (self.group_order == self.expected_order
                and all(ok for _, ok in self.relations))

    def to_dict(self):
        return {
            "family": self.family,
            "p": self.p,
            "size": self.size,
            "generators": {name: [list(r) for r in grid]
                           for name, grid in self.generators.items()},
            "relations": {name: ok for name, ok in self.relations},
            "group_order": self.group_order,
            "expected_order": self.expected_order,
            "passed": self.passed,
        }


def _closure_order(generators, p, cap=1_000_000):
    """Order of the matrix group generated by the given grids, by BFS."""
    gens = [_np_grid(g, p) for g in generators]
    n = len(gens[0])
    ident = _grid_tuple(np.eye(n, dtype=np.int64))
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for el in frontier:
            a = _np_grid(el, p)
            for g in gens:
                nxt = _grid_tuple((a @ g) % p)
                if nxt not in seen:
                    seen.add(nxt)
                    new.append(nxt)
                    if len(seen) > cap:
                        raise OutOfRange("matrix closure exceeded cap")
        frontier = new
    return len(seen)


def root_group_model(family, p):
    """Explicit root-group matrices for the two unipotent families, with all
    displayed commutation relations checked for every pair of parameters and
    the generated-group order compared against p^3 or p^4."""
    if family not in _ROOT_FAMILIES:
        raise BadParameters(f"family must be one of {_ROOT_FAMILIES}, got {family!r}")
    if not (isinstance(p, int) and is_prime(p) and p % 2 == 1):
        raise BadPrime(f"p must be an odd prime, got {p!r}")
    n, gens = _root_generators(family, p)

    def sm(grid):
        return _ScalarMatrix(grid, p)

    def bracket(u, w):
        return u.inverse() * w.inverse() * u * w

    relations = []
    if family == "U3":
        ok_main = all(
            bracket(sm(gens["x1"](a)), sm(gens["x3"](b))) == sm(gens["x2"]((a * b) % p))
            for a in range(p) for b in range(p))
        relations.append(("bracket_x1_x3", ok_main))
        for (u, w) in (("x1", "x2"), ("x2", "x3")):
            ok = all(bracket(sm(gens[u](a)), sm(gens[w](b))).is_identity()
                     for a in range(p) for b in range(p))
            relations.append((f"commute_{u}_{w}", ok))
        abstract = {"a": sm(gens["x1"](1)), "b": sm(gens["x3"](-1))}
        relator_words = [Word.gen("a", p), Word.gen("b", p),
                         comm("a", "b", "a"), comm("a", "b", "b")]
        expected = p ** 3
    else:
        ok_24 = all(
            bracket(sm(gens["x2"](a)), sm(gens["x4"](b)).inverse())
            == sm(gens["x3"]((2 * a * b) % p))
            for a in range(p) for b in range(p))
        relations.append(("bracket_x2_x4inv", ok_24))
        ok_14 = all(
            bracket(sm(gens["x1"](a)), sm(gens["x4"](b)).inverse())
            == sm(gens["x2"]((a * b) % p)) * sm(gens["x3"]((a * b * b) % p))
            for a in range(p) for b in range(p))
        relations.append(("bracket_x1_x4inv", ok_14))
        for (u, w) in (("x1", "x2"), ("x1", "x3"), ("x2", "x3"), ("x3", "x4")):
            ok = all(bracket(sm(gens[u](a)), sm(gens[w](b))).is_identity()
                     for a in range(p) for b in range(p))
            relations.append((f"commute_{u}_{w}", ok))
        j_form = _np_grid([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]], p)
        ok_symp = all(
            np.array_equal((_np_grid(gens[name](t), p).T @ j_form
                            @ _np_grid(gens[name](t), p)) % p, j_form)
            for name in gens for t in range(p))
        relations.append(("symplectic_form", ok_symp))
        abstract = {"a": sm(gens["x1"](1)), "b": sm(gens["x4"](-1))}
        relator_words = [Word.gen("a", p), Word.gen("b", p), comm("a", "b", "a"),
                         comm("a", "b", "b", "a"), comm("a", "b", "b", "b")]
        expected = p ** 4

    ok_pres, _ = verify_presentation(relator_words, abstract)
    relations.append(("presentation_relators", ok_pres))

    if family == "U3":
        closure_gens = [gens["x1"](1), gens["x3"](1)]
    else:
        closure_gens = [gens["x1"](1), gens["x4"](1)]
    order = _closure_order(closure_gens, p)

    return RootGroupModel(
        family=family, p=p, size=n,
        generators={name: fn(1) for name, fn in gens.items()},
        relations=tuple(relations),
        group_order=order, expected_order=expected)
