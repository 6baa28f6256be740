"""The ten trivalent vertex groups, their automorphisms, and the named matrix
generator pairs with their large coset graphs.

Each vertex group entry carries a two-generator presentation (both generators
of order 3), a concrete model found by a deterministic search inside a fixed
ambient group (first pair in enumeration order satisfying the relators and
generating the whole group), the exact angle value, and the generators of the
subgroup of Aut(X) preserving {A union A^-1, B union B^-1} as substitutions
on the generator pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import (FieldSpec, GroupElement, MatrixContext, PermContext,
                      ProjContext, closure, cyclic_subgroup)
from .errors import UnknownVertexGroup
from .words import Word, comm, verify_presentation

VERTEX_IDS = ("X6", "X8", "X14", "X16", "X18", "X24", "X26", "X40", "X48", "X54")

# Relator blocks R(x, y) shared with glued triangle presentations: the part of
# the presentation besides the generator power relators.
RELATOR_BLOCKS = {
    "X6": ("abAB",),
    "X8": ("abab",),
    "X14": ("abABab",),
    "X16": ("abaBAB",),
    "X18": ("ababab", "aBaBaB"),
    "X24": ("ababab", "abAbABaB"),
    "X26": ("ababab", "abAbAbAB"),
    "X40": ("aBabaBab", "ABaBABaB"),
    "X48": ("ababABAB",),
    "X54": ("abABAbaB", "abAbabAbabAb"),
}

# Substitution generators of Aut(X)_{A,B}: images of (a, b) in compact word
# letters, 'A' meaning a^-1.
AUT_GENERATORS = {
    "X6": (("b", "a"), ("A", "b")),
    "X8": (("b", "a"), ("A", "B")),
    "X14": (("B", "A"),),
    "X16": (("b", "a"), ("A", "B")),
    "X18": (("b", "a"), ("A", "b")),
    "X24": (("b", "a"), ("A", "B")),
    "X26": (("b", "a"),),
    "X40": (("b", "a"), ("A", "b")),
    "X48": (("b", "a"), ("A", "B")),
    "X54": (("A", "b"), ("a", "B")),
}

AUT_ORDERS = {"X6": 8, "X8": 4, "X14": 2, "X16": 4, "X18": 8,
              "X24": 4, "X26": 2, "X40": 8, "X48": 4, "X54": 4}


@dataclass
class VertexGroupEntry:
    vertex_id: str
    name: str
    group_order: int
    graph_order: int
    girth: int
    epsilon: float
    epsilon_form: str
    graph_name: str
    half_girth: int

    @property
    def relators(self):
        return vertex_relators(self.vertex_id)

    @property
    def relator_blocks(self):
        return [Word.parse(w) for w in RELATOR_BLOCKS[self.vertex_id]]

    @property
    def aut_generators(self):
        return AUT_GENERATORS[self.vertex_id]

    def model(self):
        return vertex_group_model(self.vertex_id)

    def to_dict(self):
        return {
            "id": self.vertex_id,
            "name": self.name,
            "group_order": self.group_order,
            "graph_order": self.graph_order,
            "girth": self.girth,
            "epsilon": self.epsilon,
            "epsilon_form": self.epsilon_form,
            "graph_name": self.graph_name,
            "half_girth": self.half_girth,
            "relators": [str(w) for w in self.relators],
        }


def _eps_x26():
    z = [complex(math.cos(2 * math.pi * k / 13), math.sin(2 * math.pi * k / 13))
         for k in range(13)]
    return abs(z[2] + z[5] + z[6]) / 3.0


_ENTRIES = [
    VertexGroupEntry("X6", "C3xC3", 9, 6, 4, 0.0, "0", "K33", 2),
    VertexGroupEntry("X8", "Alt(4)", 12, 8, 4, 1.0 / 3.0, "1/3", "cube", 2),
    VertexGroupEntry("X14", "Frobenius-21", 21, 14, 6, math.sqrt(2) / 3.0,
                     "sqrt(2)/3", "Heawood", 3),
    VertexGroupEntry("X16", "SL2(3)", 24, 16, 6, math.sqrt(3) / 3.0,
                     "sqrt(3)/3", "Moebius-Kantor", 3),
    VertexGroupEntry("X18", "Heisenberg-3", 27, 18, 6, math.sqrt(3) / 3.0,
                     "sqrt(3)/3", "Pappus", 3),
    VertexGroupEntry("X24", "Alt(4)xC3", 36, 24, 6, 2.0 / 3.0, "2/3", "Nauru", 3),
    VertexGroupEntry("X26", "Frobenius-39", 39, 26, 6, _eps_x26(),
                     "|z^2+z^5+z^6|/3, z=exp(2 pi i/13)", "F26A", 3),
    VertexGroupEntry("X40", "Alt(5)", 60, 40, 8, math.sqrt(5) / 3.0,
                     "sqrt(5)/3", "order-40 sextet graph", 4),
    VertexGroupEntry("X48", "SL2(3)xC3", 72, 48, 8, math.sqrt(2.0 / 3.0),
                     "sqrt(2/3)", "order-48 graph", 4),
    VertexGroupEntry("X54", "C3wrC3", 81, 54, 8, math.sqrt(2.0 / 3.0),
                     "sqrt(2/3)", "Gray", 4),
]

_BY_ID = {e.vertex_id: e for e in _ENTRIES}


def vertex_group_catalog():
    """The ten trivalent vertex group entries in graph-order order."""
    return list(_ENTRIES)


def vertex_group(vertex_id):
    entry = _BY_ID.get(vertex_id)
    if entry is None:
        raise UnknownVertexGroup(f"unknown vertex group {vertex_id!r}")
    return entry


def vertex_relators(vertex_id):
    if vertex_id not in RELATOR_BLOCKS:
        raise UnknownVertexGroup(f"unknown vertex group {vertex_id!r}")
    return [Word.parse("aaa"), Word.parse("bbb")] + \
        [Word.parse(w) for w in RELATOR_BLOCKS[vertex_id]]


def _affine_perm(p, u, v):
    return tuple((u * x + v) % p for x in range(p))


def _ambient(vertex_id):
    if vertex_id == "X6":
        ctx = PermContext(6)
        return closure([GroupElement(ctx, PermContext.from_cycles(6, [(1, 2, 3)])),
                        GroupElement(ctx, PermContext.from_cycles(6, [(4, 5, 6)]))])
    if vertex_id == "X8":
        ctx = PermContext(4)
        return closure([GroupElement(ctx, PermContext.from_cycles(4, [(1, 2, 3)])),
                        GroupElement(ctx, PermContext.from_cycles(4, [(2, 3, 4)]))])
    if vertex_id == "X14":
        ctx = PermContext(7)
        return closure([GroupElement(ctx, _affine_perm(7, 2, 0)),
                        GroupElement(ctx, _affine_perm(7, 1, 1))])
    if vertex_id == "X16":
        m = MatrixContext(FieldSpec(3), 2)
        return closure([GroupElement(m, m.from_rows([[1, 1], [0, 1]])),
                        GroupElement(m, m.from_rows([[1, 0], [1, 1]]))])
    if vertex_id == "X18":
        m = MatrixContext(FieldSpec(3), 3)
        return closure([GroupElement(m, m.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]])),
                        GroupElement(m, m.from_rows([[1, 0, 0], [0, 1, 1], [0, 0, 1]]))])
    if vertex_id == "X24":
        ctx = PermContext(7)
        return closure([GroupElement(ctx, PermContext.from_cycles(7, [(1, 2, 3)])),
                        GroupElement(ctx, PermContext.from_cycles(7, [(2, 3, 4)])),
                        GroupElement(ctx, PermContext.from_cycles(7, [(5, 6, 7)]))])
    if vertex_id == "X26":
        ctx = PermContext(13)
        return closure([GroupElement(ctx, _affine_perm(13, 3, 0)),
                        GroupElement(ctx, _affine_perm(13, 1, 1))])
    if vertex_id == "X40":
        ctx = PermContext(5)
        return closure([GroupElement(ctx, PermContext.from_cycles(5, [(1, 2, 3)])),
                        GroupElement(ctx, PermContext.from_cycles(5, [(3, 4, 5)]))])
    if vertex_id == "X48":
        m = MatrixContext(FieldSpec(3), 5)

        def block(sl, shift):
            rows = [[0] * 5 for _ in range(5)]
            for i in range(2):
                for j in range(2):
                    rows[i][j] = sl[i][j]
            if shift:
                rows[2][3] = rows[3][4] = rows[4][2] = 1
            else:
                rows[2][2] = rows[3][3] = rows[4][4] = 1
            return m.from_rows(rows)

        return closure([GroupElement(m, block([[1, 1], [0, 1]], False)),
                        GroupElement(m, block([[1, 0], [1, 1]], False)),
                        GroupElement(m, block([[1, 0], [0, 1]], True))])
    if vertex_id == "X54":
        ctx = PermContext(9)
        return closure([GroupElement(ctx, PermContext.from_cycles(9, [(1, 2, 3)])),
                        GroupElement(ctx, PermContext.from_cycles(9,
                                     [(1, 4, 7), (2, 5, 8), (3, 6, 9)]))])
    raise UnknownVertexGroup(f"unknown vertex group {vertex_id!r}")


@lru_cache(maxsize=None)
def vertex_group_model(vertex_id):
    """(X, a, b): concrete model with X = <a, b> satisfying the entry's relators.

    X40 uses the explicit permutation pair (1,2,3), (3,4,5); the others take
    the first order-3 pair in the deterministic enumeration of the ambient
    group that satisfies the relators and generates all of it.
    """
    entry = vertex_group(vertex_id)
    ambient = _ambient(vertex_id)
    relators = vertex_relators(vertex_id)
    if vertex_id == "X40":
        ctx = ambient.context
        a = GroupElement(ctx, PermContext.from_cycles(5, [(1, 2, 3)]))
        b = GroupElement(ctx, PermContext.from_cycles(5, [(3, 4, 5)]))
        ok, _ = verify_presentation(relators, {"a": a, "b": b})
        assert ok
        return closure([a, b]), a, b
    ctx = ambient.context
    order3 = [raw for raw in ambient.raws if GroupElement(ctx, raw).order() == 3]
    for raw_a in order3:
        ga = GroupElement(ctx, raw_a)
        for raw_b in order3:
            gb = GroupElement(ctx, raw_b)
            ok, _ = verify_presentation(relators, {"a": ga, "b": gb})
            if not ok:
                continue
            X = closure([ga, gb])
            if X.order == entry.group_order == ambient.order:
                return X, ga, gb
    raise UnknownVertexGroup(f"no model found for {vertex_id} (ambient mismatch)")


def vertex_graph(vertex_id):
    """The coset graph of the vertex group model."""
    from .coset_graph import build_coset_graph
    X, a, b = vertex_group_model(vertex_id)
    return build_coset_graph(X, cyclic_subgroup(a), cyclic_subgroup(b))


@dataclass
class MatrixGeneratorEntry:
    name: str
    p: int
    projective: bool
    a_rows: tuple
    b_rows: tuple
    girth: int
    phi: float
    ramanujan: bool
    field_degree: int = 1

    def context(self):
        spec = FieldSpec(self.p, self.field_degree)
        return (ProjContext if self.projective else MatrixContext)(spec, 2)

    def generators(self):
        ctx = self.context()
        a = GroupElement(ctx, ctx.from_rows(self.a_rows))
        b = GroupElement(ctx, ctx.from_rows(self.b_rows))
        return a, b

    def group(self, cap=2_000_000):
        a, b = self.generators()
        return closure([a, b], cap=cap)

    def graph(self, cap=2_000_000):
        from .coset_graph import build_coset_graph
        a, b = self.generators()
        X = closure([a, b], cap=cap)
        return build_coset_graph(X, cyclic_subgroup(a), cyclic_subgroup(b))

    def to_dict(self):
        return {
            "name": self.name,
            "p": self.p,
            "projective": self.projective,
            "a": [list(r) for r in self.a_rows],
            "b": [list(r) for r in self.b_rows],
            "girth": self.girth,
            "phi": self.phi,
            "ramanujan": self.ramanujan,
        }


def _f9_rows():
    # Entries written as powers of the residue class z of x in F3[x]/(x^2+2x+2).
    f9 = FieldSpec(3, 2)
    z = f9.encode((0, 1))

    def zp(k):
        v = 1
        for _ in range(k):
            v = f9.mul(v, z)
        return v

    a_rows = ((f9.decode(zp(5)), f9.decode(zp(1))), ((2, 0), f9.decode(zp(6))))
    b_rows = ((f9.decode(zp(3)), f9.decode(zp(6))), (f9.decode(zp(5)), f9.decode(zp(3))))
    return a_rows, b_rows


_F9A, _F9B = _f9_rows()

MATRIX_GENERATORS = {
    "SL2_5": MatrixGeneratorEntry("SL2_5", 5, False,
                                  ((4, 2), (3, 3)), ((1, 2), (0, 1)),
                                  girth=6, phi=2.2360679775, ramanujan=True),
    "SL2_9": MatrixGeneratorEntry("SL2_9", 3, False, _F9A, _F9B,
                                  girth=8, phi=3.16227766017, ramanujan=True,
                                  field_degree=2),
    "PSL2_31": MatrixGeneratorEntry("PSL2_31", 31, True,
                                    ((8, 14), (4, 11)), ((23, 0), (14, 27)),
                                    girth=10, phi=3.85410196624, ramanujan=True),
    "PSL2_41": MatrixGeneratorEntry("PSL2_41", 41, True,
                                    ((0, 28), (19, 35)), ((38, 27), (2, 9)),
                                    girth=10, phi=3.82842712474, ramanujan=True),
    "PSL2_109": MatrixGeneratorEntry("PSL2_109", 109, True,
                                     ((0, 1), (108, 11)), ((57, 2), (52, 42)),
                                     girth=14, phi=4.02260136849, ramanujan=False),
    "PSL2_131": MatrixGeneratorEntry("PSL2_131", 131, True,
                                     ((73, 107), (73, 46)), ((0, 128), (44, 119)),
                                     girth=14, phi=3.98383854575, ramanujan=True),
}


@dataclass
class HyperbolicPresentation:
    """A three-generator presentation whose three two-generator vertex groups
    carry the angle triple fed to the EJ certificate."""

    name: str
    relator_words: tuple
    vertex_groups: tuple      # ((generators, description, girth), ...)
    epsilon_plan: tuple       # ("zero" | "u4" | "u3" | spectral entry name, ...)

    @property
    def relators(self):
        return [w if isinstance(w, Word) else Word.parse(w) for w in self.relator_words]

    def vertex_models(self):
        """Concrete finite models of the three vertex groups, keyed by
        generator pair, as assignments usable with verify_presentation.

        "a,b" is the named projective matrix pair, "c,a" two disjoint
        5-cycles (C5 x C5), and "b,c" the unitriangular group over F5 of
        dimension 4 or 3 according to the epsilon plan.
        """
        entry = MATRIX_GENERATORS[self.epsilon_plan[0]]
        ga, gb = entry.generators()
        models = {"a,b": {"a": ga, "b": gb}}
        perm = PermContext(10)
        models["c,a"] = {
            "c": GroupElement(perm, PermContext.from_cycles(10, [(1, 2, 3, 4, 5)])),
            "a": GroupElement(perm, PermContext.from_cycles(10, [(6, 7, 8, 9, 10)])),
        }
        if self.epsilon_plan[2] == "u4":
            m = MatrixContext(FieldSpec(5), 4)
            rows_b = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]
            rows_c = [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
        else:
            m = MatrixContext(FieldSpec(5), 3)
            rows_b = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
            rows_c = [[1, 0, 0], [0, 1, 1], [0, 0, 1]]
        models["b,c"] = {"b": GroupElement(m, m.from_rows(rows_b)),
                         "c": GroupElement(m, m.from_rows(rows_c))}
        return models

    def to_dict(self):
        return {
            "name": self.name,
            "relators": [str(w) for w in self.relators],
            "vertex_groups": [
                {"generators": g, "group": d, "girth": girth}
                for g, d, girth in self.vertex_groups
            ],
        }


H31 = HyperbolicPresentation(
    name="H31",
    relator_words=(
        "aaaaa", "bbbbb", "ccccc",
        comm("a", "c"), comm("b", "c", "b"), comm("b", "c", "c", "b"),
        comm("b", "c", "c", "c"),
        "abaabaabaBaB", "bbabAbAbabba", "baBabAbaBabA",
    ),
    vertex_groups=(("a,b", "PSL2(31)", 10), ("c,a", "C5xC5", 8), ("b,c", "U4(5)", 4)),
    epsilon_plan=("PSL2_31", "zero", "u4"),
)

H109 = HyperbolicPresentation(
    name="H109",
    relator_words=(
        "aaaaa", "bbbbb", "ccccc",
        comm("a", "c"), comm("b", "c", "b"), comm("b", "c", "c"),
        "abaBAbabABAbaBAB",
        "bababbAbaaBBAbABaa",
        "bAbaBabbAbaBabABaa",
        "baBabAbAABAbABaBaa",
        "bAbABBaBABAbAABBaa",
        "abAABABABBaBAAbbaB",
        "AABAAbaBaBaaBabAAbb",
    ),
    vertex_groups=(("a,b", "PSL2(109)", 14), ("c,a", "C5xC5", 6), ("b,c", "U3(5)", 4)),
    epsilon_plan=("PSL2_109", "zero", "u3"),
)


def matrix_generator_catalog():
    """Named matrix generator pairs plus the two three-generator presentations."""
    out = dict(MATRIX_GENERATORS)
    out["H31_data"] = H31
    out["H109_data"] = H109
    return out
