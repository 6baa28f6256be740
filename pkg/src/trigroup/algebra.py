"""Exact arithmetic for finite fields, permutations, matrix groups, and group closure.

Elements are stored as flat tuples of small ints ("raw" form) handled by a
context object (permutation / matrix / projective matrix).  Raw tuples compare
the same way as their byte encodings, which fixes a deterministic enumeration
order for closures and coset representatives.
"""

from __future__ import annotations

import math
import struct
from collections import deque

from .errors import CapExceeded, MixedVariant, NotSubgroup

CLOSURE_CAP = 2_000_000
_TABLE_LIMIT = 4096


def _poly_mul_mod(a, b, modulus, p):
    """Product of coefficient tuples a*b reduced mod (modulus, p)."""
    e = len(modulus) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    for i in range(len(out) - 1, e - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(e):
                out[i - e + j] = (out[i - e + j] - c * modulus[j]) % p
    return tuple(out[:e])


def _poly_pow_x(n, modulus, p):
    """x^n mod (modulus, p) as a coefficient tuple."""
    e = len(modulus) - 1
    result = (1,) + (0,) * (e - 1)
    base = tuple(1 if i == 1 else 0 for i in range(e)) if e > 1 else (0,)
    while n:
        if n & 1:
            result = _poly_mul_mod(result, base, modulus, p)
        base = _poly_mul_mod(base, base, modulus, p)
        n >>= 1
    return result


def _is_irreducible(modulus, p):
    e = len(modulus) - 1
    if e == 1:
        return True
    x = tuple(1 if i == 1 else 0 for i in range(e))
    if _poly_pow_x(p ** e, modulus, p) != x:
        return False
    for r in set(_prime_factors(e)):
        power = _poly_pow_x(p ** (e // r), modulus, p)
        if power == x:
            return False
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FieldSpec:
    """F_{p^e}; elements are encoded indices sum(c_k p^k) for coefficients low to high.

    For e=1 the index is the residue itself.  The default modulus for (p,e)=(3,2)
    is x^2+2x+2, i.e. coefficient tuple (2,2,1).
    """

    def __init__(self, p, e=1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.q = p ** e
        if e == 1:
            self.modulus = (0, 1) if modulus is None else tuple(m % p for m in modulus)
        else:
            if modulus is None:
                if (p, e) == (3, 2):
                    modulus = (2, 2, 1)
                else:
                    raise ValueError("modulus required for extension fields other than F_9")
            modulus = tuple(m % p for m in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree e")
            if not _is_irreducible(modulus, p):
                raise ValueError("modulus is reducible")
            self.modulus = modulus
        if e > 1:
            if self.q > _TABLE_LIMIT:
                raise ValueError(f"extension field of size {self.q} exceeds table limit")
            self._build_tables()

    def _build_tables(self):
        p, e, q = self.p, self.e, self.q
        coeffs = [self.decode(i) for i in range(q)]
        mul = [[0] * q for _ in range(q)]
        for i in range(q):
            for j in range(i, q):
                v = self.encode(_poly_mul_mod(coeffs[i], coeffs[j], self.modulus, p))
                mul[i][j] = v
                mul[j][i] = v
        self._mul = [tuple(row) for row in mul]
        inv = [0] * q
        for i in range(1, q):
            row = self._mul[i]
            inv[i] = row.index(1)
        self._inv = tuple(inv)

    def encode(self, coeffs):
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + (c % self.p)
        return v

    def decode(self, index):
        coeffs = []
        for _ in range(self.e):
            index, c = divmod(index, self.p)
            coeffs.append(c)
        return tuple(coeffs)

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        p = self.p
        ca, cb = self.decode(a), self.decode(b)
        return self.encode(tuple((x + y) % p for x, y in zip(ca, cb)))

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        p = self.p
        return self.encode(tuple((-x) % p for x in self.decode(a)))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("field inverse of zero")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._inv[a]

    def element_order(self, a):
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        n, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            n += 1
        return n

    def signature(self):
        return ("field", self.p, self.e, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        if self.e == 1:
            return f"F{self.p}"
        return f"F{self.q}"


class PermContext:
    """Permutations of {0,..,n-1} as image tuples, composed left to right."""

    variant = "perm"
    tag = b"P"

    def __init__(self, degree):
        self.degree = degree
        self._identity = tuple(range(degree))

    def signature(self):
        return ("perm", self.degree)

    def identity(self):
        return self._identity

    def mul(self, x, y):
        # (x*y)(i) = y(x(i)): apply x first, then y.
        return tuple(y[i] for i in x)

    def inv(self, x):
        out = [0] * self.degree
        for i, img in enumerate(x):
            out[img] = i
        return tuple(out)

    def key(self, x):
        return self.tag + struct.pack(f">{self.degree}H", *x)

    def repr_raw(self, x):
        return "(" + " ".join(str(i) for i in x) + ")"

    @staticmethod
    def from_cycles(degree, cycles):
        """Permutation from 1-based disjoint cycles, e.g. [(1,2,3)]."""
        images = list(range(degree))
        for cyc in cycles:
            for i, a in enumerate(cyc):
                images[a - 1] = cyc[(i + 1) % len(cyc)] - 1
        return tuple(images)


class MatrixContext:
    """Square matrices over a FieldSpec, stored as row-major flat tuples of encoded entries."""

    variant = "matrix"
    tag = b"M"

    def __init__(self, field, dim):
        self.field = field
        self.dim = dim
        n = dim
        ident = [0] * (n * n)
        for i in range(n):
            ident[i * n + i] = 1
        self._identity = tuple(ident)
        self._fast = field.e == 1 and dim == 2

    def signature(self):
        return (self.variant, self.field.signature(), self.dim)

    def identity(self):
        return self._identity

    def mul(self, x, y):
        if self._fast:
            p = self.field.p
            a, b, c, d = x
            e, f, g, h = y
            return ((a * e + b * g) % p, (a * f + b * h) % p,
                    (c * e + d * g) % p, (c * f + d * h) % p)
        n = self.dim
        fmul, fadd = self.field.mul, self.field.add
        out = []
        for i in range(n):
            row = x[i * n:(i + 1) * n]
            for j in range(n):
                acc = 0
                for k in range(n):
                    if row[k]:
                        acc = fadd(acc, fmul(row[k], y[k * n + j]))
                out.append(acc)
        return tuple(out)

    def inv(self, x):
        if self._fast:
            p = self.field.p
            a, b, c, d = x
            det = (a * d - b * c) % p
            di = pow(det, p - 2, p)
            return ((d * di) % p, (-b * di) % p, (-c * di) % p, (a * di) % p)
        return self._gauss_inverse(x)

    def _gauss_inverse(self, x):
        n = self.dim
        f = self.field
        m = [list(x[i * n:(i + 1) * n]) for i in range(n)]
        aug = [row + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if aug[r][col]), None)
            if pivot is None:
                raise ZeroDivisionError("singular matrix")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            piv_inv = f.inv(aug[col][col])
            aug[col] = [f.mul(v, piv_inv) for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col]:
                    factor = aug[r][col]
                    aug[r] = [f.sub(v, f.mul(factor, w)) for v, w in zip(aug[r], aug[col])]
        out = []
        for i in range(n):
            out.extend(aug[i][n:])
        return tuple(out)

    def key(self, x):
        return self.tag + struct.pack(f">{self.dim * self.dim}H", *x)

    def from_rows(self, rows):
        """Flat raw tuple from nested rows of integer (or coefficient-tuple) entries."""
        f = self.field
        flat = []
        for row in rows:
            for v in row:
                if isinstance(v, tuple):
                    flat.append(f.encode(v))
                else:
                    flat.append(v % f.p if f.e == 1 else f.encode((v,) + (0,) * (f.e - 1)))
        return tuple(flat)

    def repr_raw(self, x):
        n = self.dim
        rows = [" ".join(str(v) for v in x[i * n:(i + 1) * n]) for i in range(n)]
        return "[" + "; ".join(rows) + "]"


class ProjContext(MatrixContext):
    """Matrices modulo scalars; canonical representative scales the first nonzero entry to 1."""

    variant = "projective"
    tag = b"J"

    def canon(self, x):
        field = self.field
        for v in x:
            if v:
                if v == 1:
                    return x
                s = field.inv(v)
                if field.e == 1:
                    p = field.p
                    return tuple((w * s) % p for w in x)
                return tuple(field.mul(w, s) for w in x)
        raise ZeroDivisionError("zero matrix has no projective class")

    def mul(self, x, y):
        return self.canon(MatrixContext.mul(self, x, y))

    def inv(self, x):
        return self.canon(MatrixContext.inv(self, x))

    def from_rows(self, rows):
        return self.canon(MatrixContext.from_rows(self, rows))


class GroupElement:
    """A context-tagged raw element; multiplication composes left to right."""

    __slots__ = ("context", "raw")

    def __init__(self, context, raw):
        self.context = context
        self.raw = raw

    def __mul__(self, other):
        if self.context.signature() != other.context.signature():
            raise MixedVariant("elements from different contexts")
        return GroupElement(self.context, self.context.mul(self.raw, other.raw))

    def inverse(self):
        return GroupElement(self.context, self.context.inv(self.raw))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.context.identity()
        base = self.raw
        while n:
            if n & 1:
                result = self.context.mul(result, base)
            base = self.context.mul(base, base)
            n >>= 1
        return GroupElement(self.context, result)

    def is_identity(self):
        return self.raw == self.context.identity()

    def order(self):
        n, x = 1, self.raw
        ident = self.context.identity()
        mul = self.context.mul
        while x != ident:
            x = mul(x, self.raw)
            n += 1
        return n

    def key(self):
        return self.context.key(self.raw)

    def __eq__(self, other):
        return (isinstance(other, GroupElement)
                and self.context.signature() == other.context.signature()
                and self.raw == other.raw)

    def __hash__(self):
        return hash((self.context.signature(), self.raw))

    def __repr__(self):
        return self.context.repr_raw(self.raw)


class FiniteGroup:
    """Explicitly enumerated finite group: raw element list plus index map."""

    def __init__(self, context, raws, generator_raws, index=None):
        self.context = context
        self.raws = raws
        self.index = index if index is not None else {raw: i for i, raw in enumerate(raws)}
        self.generator_raws = list(generator_raws)

    @property
    def order(self):
        return len(self.raws)

    @property
    def generators(self):
        return [GroupElement(self.context, g) for g in self.generator_raws]

    @property
    def identity(self):
        return GroupElement(self.context, self.context.identity())

    def __len__(self):
        return len(self.raws)

    def __contains__(self, element):
        if isinstance(element, GroupElement):
            if element.context.signature() != self.context.signature():
                return False
            return element.raw in self.index
        return element in self.index

    def __iter__(self):
        ctx = self.context
        return (GroupElement(ctx, raw) for raw in self.raws)

    def element(self, i):
        return GroupElement(self.context, self.raws[i])

    def is_subgroup_of(self, other):
        if self.context.signature() != other.context.signature():
            return False
        return all(raw in other.index for raw in self.raws)

    def intersection(self, other):
        if self.context.signature() != other.context.signature():
            raise MixedVariant("intersection across contexts")
        common = [raw for raw in self.raws if raw in other.index]
        return FiniteGroup(self.context, common, [])

    def union_generates(self, other, ambient):
        """True iff the elements of self and other together generate ambient."""
        gens = list(dict.fromkeys(self.raws + other.raws))
        generated = closure([GroupElement(self.context, g) for g in gens],
                            cap=len(ambient))
        return generated.order == ambient.order

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, variant={self.context.variant})"


def closure(generators, cap=CLOSURE_CAP):
    """Breadth-first closure of the generators, enumerated in deterministic order.

    Raises CapExceeded if the group grows past cap and MixedVariant if the
    generators live in different contexts.
    """
    if not generators:
        raise MixedVariant("closure needs at least one generator")
    context = generators[0].context
    sig = context.signature()
    for g in generators[1:]:
        if g.context.signature() != sig:
            raise MixedVariant("generators from different contexts")
    gen_raws = []
    for g in generators:
        if g.raw not in gen_raws:
            gen_raws.append(g.raw)
    ident = context.identity()
    raws = [ident]
    seen = {ident: 0}
    queue = deque([ident])
    mul = context.mul
    while queue:
        x = queue.popleft()
        for g in gen_raws:
            y = mul(x, g)
            if y not in seen:
                if len(raws) >= cap:
                    raise CapExceeded(f"closure exceeded cap {cap}")
                seen[y] = len(raws)
                raws.append(y)
                queue.append(y)
    return FiniteGroup(context, raws, gen_raws, index=seen)


def cyclic_subgroup(g):
    """The cyclic group <g> with elements in power order e, g, g^2, ..."""
    context = g.context
    ident = context.identity()
    raws = [ident]
    x = g.raw
    while x != ident:
        raws.append(x)
        x = context.mul(x, g.raw)
    return FiniteGroup(context, raws, [g.raw] if g.raw != ident else [])


def subgroup_from_raws(context, raws):
    """FiniteGroup wrapper for an already-closed raw element list."""
    return FiniteGroup(context, list(raws), [])


def check_subgroup(sub, ambient):
    if not sub.is_subgroup_of(ambient):
        raise NotSubgroup("claimed subgroup has elements outside the ambient group")


def lcm(*values):
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out
