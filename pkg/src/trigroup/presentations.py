"""Glued three-generator presentations over the trivalent vertex-group catalog.

A triangle of three vertex groups is glued along three order-3 letters a, b, c:
vertex i carries the letters (L_i, L_{i+1}) with (a, b, c) = (L_0, L_1, L_2).
A gluing assigns the vertex group's generator pair to signed letters; modulo
renaming each letter by its inverse, the gluings form the 64-point space F_2^6
with index l = 32(1-v0) + 16 v1 + 8(1-v2) + 4 v3 + 2(1-v4) + v5.  The
equivalence group Delta is generated by the catalog's vertex-group
automorphisms (acting at one vertex) and by triangle symmetries permuting
equal vertex groups; enumeration returns one minimal-index representative per
Delta orbit.

The module also builds the ten Kac-Moody-Steinberg style presentations indexed
by Dynkin tags, their cyclic (tilde) extensions, and the generator-preserving
epimorphism checks between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import FieldSpec, GroupElement, MatrixContext
from .catalog import RELATOR_BLOCKS, AUT_GENERATORS, vertex_group
from .errors import BadParameters, BadTag, NotAnEdge, PreconditionViolated, UnknownVertexGroup
from .words import Word, comm, evaluate_word

_LETTERS = ("a", "b", "c")


# ---------------------------------------------------------------------------
# Gluing vectors and raw gluings.
#
# A raw gluing assigns, per vertex i, an ordered pair of signed letters
# ((letter, sign), (letter, sign)) with letter set {i, i+1 mod 3}: the images
# of the vertex group's generator pair (a_i, b_i).  Inverting a letter at both
# of its occurrences (a gauge flip) renames a generator and keeps the
# presentation; every gluing is gauge-equivalent to first-slot-positive form,
# and those forms are the vectors v in F_2^6: v[2i] records whether the first
# slot holds the neighbour letter, v[2i+1] the sign of the second slot.
# ---------------------------------------------------------------------------

def index_of_vector(v):
    """l = 32(1-v0) + 16 v1 + 8(1-v2) + 4 v3 + 2(1-v4) + v5."""
    return (32 * (1 - v[0]) + 16 * v[1] + 8 * (1 - v[2]) + 4 * v[3]
            + 2 * (1 - v[4]) + v[5])


def vector_of_index(l):
    """Inverse of index_of_vector."""
    if not 0 <= l <= 63:
        raise PreconditionViolated(f"index {l} outside 0..63")
    bits = [(l >> k) & 1 for k in (5, 4, 3, 2, 1, 0)]
    return (1 - bits[0], bits[1], 1 - bits[2], bits[3], 1 - bits[4], bits[5])


def _check_vector(v):
    v = tuple(v)
    if len(v) != 6 or any(x not in (0, 1) for x in v):
        raise PreconditionViolated(f"gluing vector must lie in F_2^6, got {v!r}")
    return v


def _vector_to_raw(v):
    raw = []
    for i in range(3):
        s = -1 if v[2 * i + 1] else 1
        own, nb = i, (i + 1) % 3
        raw.append(((nb, 1), (own, s)) if v[2 * i] else ((own, 1), (nb, s)))
    return tuple(raw)


def _raw_vector(raw):
    """The vector of a first-slot-positive raw, None for other raws."""
    v = []
    for i, ((la, sa), (_, sb)) in enumerate(raw):
        if sa < 0:
            return None
        v.append(1 if la == (i + 1) % 3 else 0)
        v.append(1 if sb < 0 else 0)
    return tuple(v)


def _gauge(raw, j):
    """Invert letter j at both of its occurrences."""
    return tuple(tuple((l, -s if l == j else s) for l, s in pair) for pair in raw)


_SLOT = {"a": (0, 1), "A": (0, -1), "b": (1, 1), "B": (1, -1)}


def _apply_vertex_aut(raw, i, subst):
    """Precompose the gluing at vertex i with the substitution automorphism
    (image of a, image of b), each a single signed generator letter."""
    slots = raw[i]

    def image(token):
        slot, sgn = _SLOT[token]
        letter, lsign = slots[slot]
        return (letter, lsign * sgn)

    new = list(raw)
    new[i] = (image(subst[0]), image(subst[1]))
    return tuple(new)


_EDGE_OF = {frozenset({(k - 1) % 3, k}): k for k in range(3)}


def _apply_triple_perm(raw, pi):
    """Relabel the triangle by the vertex permutation pi; letters follow the
    induced permutation of the triangle's edges."""
    lam = {j: _EDGE_OF[frozenset({pi[(j - 1) % 3], pi[j]})] for j in range(3)}
    new = [None] * 3
    for i in range(3):
        first, second = raw[i]
        new[pi[i]] = ((lam[first[0]], first[1]), (lam[second[0]], second[1]))
    return tuple(new)


def _normalize_triple(triple):
    ids = tuple(triple)
    if len(ids) != 3:
        raise UnknownVertexGroup(f"need three vertex ids, got {ids!r}")
    for vid in ids:
        vertex_group(vid)
    return ids


_S3 = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (0, 2, 1), (2, 1, 0)]


def gluing_group_maps(triple):
    """The generators of Delta as maps of raw gluings: the three gauge flips,
    one map per vertex-group automorphism generator per vertex, and one per
    nontrivial triangle symmetry fixing the ordered id triple."""
    ids = _normalize_triple(triple)
    maps = [lambda raw, j=j: _gauge(raw, j) for j in range(3)]
    for i in range(3):
        for subst in AUT_GENERATORS[ids[i]]:
            maps.append(lambda raw, i=i, subst=subst: _apply_vertex_aut(raw, i, subst))
    for pi in _S3[1:]:
        if all(ids[pi[i]] == ids[i] for i in range(3)):
            maps.append(lambda raw, pi=pi: _apply_triple_perm(raw, pi))
    return maps


def gluing_orbits(triple):
    """Delta orbits on F_2^6, each as a sorted tuple of indices l.

    Closure runs on raw gluings so that automorphisms landing outside
    first-slot-positive form stay exact; an orbit's tuple lists the vectors
    its raws project to."""
    maps = gluing_group_maps(triple)
    seen = set()
    orbits = []
    for l in range(64):
        start = _vector_to_raw(vector_of_index(l))
        if start in seen:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            raw = frontier.pop()
            for move in maps:
                image = move(raw)
                if image not in orbit:
                    orbit.add(image)
                    frontier.append(image)
        seen |= orbit
        labels = {index_of_vector(v) for v in map(_raw_vector, orbit) if v is not None}
        orbits.append(tuple(sorted(labels)))
    orbits.sort()
    return orbits


# ---------------------------------------------------------------------------
# Assembled presentations.
# ---------------------------------------------------------------------------

@dataclass
class TrianglePresentation:
    """A glued presentation on generators a, b, c."""

    triple: tuple
    vector: tuple
    index: int
    generators: tuple
    relators: list
    half_girth_type: tuple
    orbit: tuple = ()

    @property
    def name(self):
        orders = ",".join(str(vertex_group(x).graph_order) for x in self.triple)
        return f"G^{{{orders}}}_{self.index}"

    def vertex_assignments(self):
        """Per vertex: the (first, second) signed-letter pair the vertex
        group's generators are glued to, as compact letter strings."""
        raw = _vector_to_raw(self.vector)
        out = []
        for first, second in raw:
            def token(slot):
                ch = _LETTERS[slot[0]]
                return ch if slot[1] == 1 else ch.upper()
            out.append((token(first), token(second)))
        return out

    def to_dict(self):
        return {
            "name": self.name,
            "triple": list(self.triple),
            "vector": list(self.vector),
            "index": self.index,
            "generators": list(self.generators),
            "relators": [str(w) for w in self.relators],
            "half_girth_type": list(self.half_girth_type),
            "orbit": list(self.orbit),
            "length": presentation_length(self),
        }


def _substitute(word, mapping):
    letters = []
    for sym, exp in word.letters:
        target, sign = mapping[sym]
        letters.append((target, exp * sign))
    return Word(letters)


def assemble_presentation(triple, v):
    """The glued presentation of the given triple at gluing vector v:
    generator cube relators followed by each vertex group's relator blocks
    rewritten in the glued letters, freely reduced."""
    ids = _normalize_triple(triple)
    v = _check_vector(v)
    raw = _vector_to_raw(v)
    relators = [Word.gen(ch, 3) for ch in _LETTERS]
    for i in range(3):
        first, second = raw[i]
        mapping = {"a": (_LETTERS[first[0]], first[1]),
                   "b": (_LETTERS[second[0]], second[1])}
        for block in RELATOR_BLOCKS[ids[i]]:
            relators.append(_substitute(Word.parse(block), mapping))
    half = tuple(sorted(vertex_group(x).half_girth for x in ids))
    return TrianglePresentation(triple=ids, vector=v, index=index_of_vector(v),
                                generators=_LETTERS, relators=relators,
                                half_girth_type=half)


def enumerate_trivalent(triple):
    """Orbit representatives (minimal index per Delta orbit) with assembled
    presentations, sorted by index."""
    ids = _normalize_triple(triple)
    reps = []
    for orbit in gluing_orbits(ids):
        l = orbit[0]
        pres = assemble_presentation(ids, vector_of_index(l))
        pres.orbit = orbit
        reps.append(pres)
    reps.sort(key=lambda p: p.index)
    return reps


def presentation_length(pres):
    """Total length of the freely reduced relators."""
    relators = pres.relators if hasattr(pres, "relators") else pres
    return sum(len(w) for w in relators)


# ---------------------------------------------------------------------------
# The sample of triangles over the catalog: every triple whose half-girth
# type satisfies the nonpositive-curvature gate 1/r0 + 1/r1 + 1/r2 <= 1.
# ---------------------------------------------------------------------------

def sample_triples():
    """All unordered catalog triples of half-girth type (2,4,4), (3,3,3),
    (3,3,4), (3,4,4) or (4,4,4), sorted by graph order."""
    from .catalog import VERTEX_IDS
    by_half = {2: [], 3: [], 4: []}
    for vid in VERTEX_IDS:
        by_half[vertex_group(vid).half_girth].append(vid)
    triples = []
    n = len(VERTEX_IDS)
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                ids = (VERTEX_IDS[i], VERTEX_IDS[j], VERTEX_IDS[k])
                halves = sorted(vertex_group(x).half_girth for x in ids)
                if sum(1.0 / r for r in halves) <= 1.0 + 1e-12:
                    triples.append(tuple(sorted(
                        ids, key=lambda x: vertex_group(x).graph_order)))
    return triples


def sample_presentations():
    """All orbit representatives over the sample triples."""
    out = []
    for triple in sample_triples():
        out.extend(enumerate_trivalent(triple))
    return out


# ---------------------------------------------------------------------------
# KMS presentations.
# ---------------------------------------------------------------------------

KMS_TAGS = ("B2t", "C2t", "BC2t", "A2t",
            "HC2_1", "HB2_2", "HC2_2", "HBC2_2", "HB2_3", "HBC2_3")

# Commutator relators per tag, each bracket left-nested.
_KMS_BRACKETS = {
    "B2t": (("a", "b"),
            ("c", "b", "c"), ("c", "b", "b", "c"), ("c", "b", "b", "b"),
            ("c", "a", "c"), ("c", "a", "a", "c"), ("c", "a", "a", "a")),
    "C2t": (("a", "b"),
            ("b", "c", "b"), ("b", "c", "c", "b"), ("b", "c", "c", "c"),
            ("a", "c", "a"), ("a", "c", "c", "a"), ("a", "c", "c", "c")),
    "BC2t": (("a", "b"),
             ("b", "c", "b"), ("b", "c", "c", "b"), ("b", "c", "c", "c"),
             ("c", "a", "c"), ("c", "a", "a", "c"), ("c", "a", "a", "a")),
    "A2t": (("a", "b", "a"), ("a", "b", "b"),
            ("b", "c", "b"), ("b", "c", "c"),
            ("a", "c", "a"), ("a", "c", "c")),
    "HC2_1": (("a", "b", "a"), ("a", "b", "b"),
              ("b", "c", "b"), ("b", "c", "c"),
              ("a", "c", "a"), ("a", "c", "c", "a"), ("a", "c", "c", "c")),
    "HB2_2": (("a", "b", "a"), ("a", "b", "b"),
              ("c", "b", "c"), ("c", "b", "b", "c"), ("c", "b", "b", "b"),
              ("c", "a", "c"), ("c", "a", "a", "c"), ("c", "a", "a", "a")),
    "HC2_2": (("a", "b", "a"), ("a", "b", "b"),
              ("b", "c", "b"), ("b", "c", "c", "b"), ("b", "c", "c", "c"),
              ("a", "c", "a"), ("a", "c", "c", "a"), ("a", "c", "c", "c")),
    "HBC2_2": (("a", "b", "a"), ("a", "b", "b"),
               ("b", "c", "b"), ("b", "c", "c", "b"), ("b", "c", "c", "c"),
               ("c", "a", "c"), ("c", "a", "a", "c"), ("c", "a", "a", "a")),
    "HB2_3": (("a", "b", "a"), ("a", "b", "b", "a"), ("a", "b", "b", "b"),
              ("b", "c", "b"), ("b", "c", "c", "b"), ("b", "c", "c", "c"),
              ("a", "c", "a"), ("a", "c", "c", "a"), ("a", "c", "c", "c")),
    "HBC2_3": (("a", "b", "a"), ("a", "b", "b", "a"), ("a", "b", "b", "b"),
               ("b", "c", "b"), ("b", "c", "c", "b"), ("b", "c", "c", "c"),
               ("c", "a", "c"), ("c", "a", "a", "c"), ("c", "a", "a", "a")),
}

KMS_HALF_GIRTH_TYPE = {
    "B2t": (2, 4, 4), "C2t": (2, 4, 4), "BC2t": (2, 4, 4),
    "A2t": (3, 3, 3),
    "HC2_1": (3, 3, 4),
    "HB2_2": (3, 4, 4), "HC2_2": (3, 4, 4), "HBC2_2": (3, 4, 4),
    "HB2_3": (4, 4, 4), "HBC2_3": (4, 4, 4),
}

# Identifications at p = 3 with sample triangle groups: tag -> (triple, index).
KMS_GF3 = {
    "B2t": (("X6", "X54", "X54"), 2),
    "C2t": (("X6", "X54", "X54"), 8),
    "BC2t": (("X6", "X54", "X54"), 0),
    "A2t": (("X18", "X18", "X18"), 0),
    "HC2_1": (("X18", "X18", "X54"), 0),
    "HB2_2": (("X18", "X54", "X54"), 2),
    "HC2_2": (("X18", "X54", "X54"), 8),
    "HBC2_2": (("X18", "X54", "X54"), 0),
    "HB2_3": (("X54", "X54", "X54"), 2),
    "HBC2_3": (("X54", "X54", "X54"), 0),
}

_TAG_ALIASES = {tag.lower(): tag for tag in KMS_TAGS}
_TAG_ALIASES.update({"b2~": "B2t", "c2~": "C2t", "bc2~": "BC2t", "a2~": "A2t",
                     "hc2(1)": "HC2_1", "hb2(2)": "HB2_2", "hc2(2)": "HC2_2",
                     "hbc2(2)": "HBC2_2", "hb2(3)": "HB2_3", "hbc2(3)": "HBC2_3"})


def normalize_tag(tag):
    canonical = _TAG_ALIASES.get(str(tag).lower())
    if canonical is None:
        raise BadTag(f"unknown Dynkin tag {tag!r}")
    return canonical


def _check_odd_prime(p):
    from .algebra import is_prime
    if not (isinstance(p, int) and p > 2 and is_prime(p)):
        raise BadParameters(f"p must be an odd prime, got {p!r}")
    return p


@dataclass
class KMSSpec:
    """A three-generator presentation indexed by a Dynkin tag and a prime."""

    tag: str
    p: int
    relators: list
    half_girth_type: tuple

    @property
    def name(self):
        return f"G_{self.tag}({self.p})"

    def pair_brackets(self):
        """The commutator relators grouped by unordered generator pair."""
        groups = {}
        for bracket in _KMS_BRACKETS[self.tag]:
            key = frozenset(bracket)
            groups.setdefault(key, []).append(bracket)
        return groups

    def to_dict(self):
        return {
            "tag": self.tag,
            "p": self.p,
            "name": self.name,
            "relators": [str(w) for w in self.relators],
            "half_girth_type": list(self.half_girth_type),
            "length": presentation_length(self),
        }


def kms_presentation(tag, p):
    """The presentation of the tagged group over F_p: generator p-th powers
    followed by the tag's commutator relators."""
    tag = normalize_tag(tag)
    p = _check_odd_prime(p)
    relators = [Word.gen(ch, p) for ch in _LETTERS]
    relators += [comm(*bracket) for bracket in _KMS_BRACKETS[tag]]
    return KMSSpec(tag=tag, p=p, relators=relators,
                   half_girth_type=KMS_HALF_GIRTH_TYPE[tag])


def kms_gf3_identification(tag):
    """The sample triangle group identified with the tag's group at p = 3,
    as (assembled presentation, triple, index)."""
    tag = normalize_tag(tag)
    triple, index = KMS_GF3[tag]
    pres = assemble_presentation(triple, vector_of_index(index))
    return pres, triple, index


# ---------------------------------------------------------------------------
# Cyclic (tilde) extensions.
# ---------------------------------------------------------------------------

@dataclass
class ExtensionSpec:
    """An index-3 overgroup presentation on generators t, a, b."""

    name: str
    generators: tuple
    relators: list

    def to_dict(self):
        return {
            "name": self.name,
            "generators": list(self.generators),
            "relators": [str(w) for w in self.relators],
            "length": presentation_length(self),
        }


_TILDE_TAGS = {"A2t", "HBC2_3"}
_G0_ORDERS = (14, 16, 18, 24, 26, 40, 48, 54)


def tilde_extension(spec):
    """Cyclic extension by the order-3 generator permutation.

    Accepts a KMSSpec with tag A2t or HBC2_3, or a pair ("G0", k) naming the
    diagonal sample group G^{k,k,k}_0; the result adjoins t with t^3 and
    t a t^-1 b^-1 and keeps one vertex group's relators on a, b.
    """
    conj = Word.parse("taTB")
    if isinstance(spec, KMSSpec):
        if spec.tag not in _TILDE_TAGS:
            raise BadTag(f"no cyclic extension defined for tag {spec.tag!r}")
        brackets = [b for b in _KMS_BRACKETS[spec.tag] if set(b) == {"a", "b"}]
        relators = [Word.gen("t", 3), Word.gen("a", spec.p), conj]
        relators += [comm(*bracket) for bracket in brackets]
        return ExtensionSpec(name=f"G~_{spec.tag}({spec.p})",
                             generators=("t", "a", "b"), relators=relators)
    if isinstance(spec, tuple) and len(spec) == 2 and spec[0] == "G0":
        k = spec[1]
        if k not in _G0_ORDERS:
            raise BadTag(f"no diagonal triple of graph order {k!r}")
        vid = f"X{k}"
        relators = [Word.gen("a", 3), Word.gen("b", 3)]
        relators += [Word.parse(w) for w in RELATOR_BLOCKS[vid]]
        relators += [Word.gen("t", 3), conj]
        return ExtensionSpec(name=f"G~^{{{k},{k},{k}}}_0",
                             generators=("t", "a", "b"), relators=relators)
    raise BadTag(f"no cyclic extension defined for {spec!r}")


# ---------------------------------------------------------------------------
# Epimorphisms between KMS groups.
# ---------------------------------------------------------------------------

# Epimorphism edges (source, target) -> generator assignment a, b, c of the
# source to generators of the target.  A double-bond vertex group maps onto a
# weaker bond by killing the center, but the double-bond relators are ordered
# in their two generators, so some edges need the non-identity relabelings
# below; each assignment is the lexicographically first one under which every
# source relator dies in the target's vertex groups, and the valid set is
# independent of p (checked at p = 5 and 7).
EPI_EDGES = {
    ("HC2_1", "A2t"): "abc",
    ("HB2_3", "HB2_2"): "cab",
    ("HB2_3", "HC2_2"): "abc",
    ("HB2_3", "HBC2_2"): "bca",
    ("HB2_2", "HC2_1"): "bca",
    ("HB2_2", "B2t"): "abc",
    ("HC2_2", "C2t"): "abc",
    ("HC2_2", "HC2_1"): "abc",
    ("HBC2_3", "HBC2_2"): "abc",
    ("HBC2_2", "HC2_1"): "bac",
    ("HBC2_2", "BC2t"): "abc",
}


def _pair_model(p, brackets):
    """A faithful matrix model of the vertex group cut out by the given
    bracket list on a two-letter pair: commuting blocks for a single [x, y],
    the 3- or 4-dimensional unitriangular group otherwise, assigned by the
    bracket roles (first symbol, second symbol)."""
    role_a, role_b = brackets[0][0], brackets[0][1]
    depth = max(len(b) for b in brackets)
    if depth == 2:
        m = MatrixContext(FieldSpec(p), 4)
        ra = [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
        rb = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]
    elif depth == 3:
        m = MatrixContext(FieldSpec(p), 3)
        ra = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
        rb = [[1, 0, 0], [0, 1, 1], [0, 0, 1]]
    else:
        m = MatrixContext(FieldSpec(p), 4)
        ra = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]]
        rb = [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    return {role_a: GroupElement(m, m.from_rows(ra)),
            role_b: GroupElement(m, m.from_rows(rb))}


def kms_vertex_models(tag, p):
    """Matrix models of the three vertex groups of the tagged presentation,
    keyed by frozenset of the generator pair."""
    spec = kms_presentation(tag, p)
    return {pair: _pair_model(p, brackets)
            for pair, brackets in spec.pair_brackets().items()}


def kms_epimorphism_check(source, target, p):
    """Verify the recorded epimorphism: apply the edge's generator assignment
    to each source relator (a word in at most two generators) and evaluate it
    in the target's model of the corresponding vertex group."""
    source = normalize_tag(source)
    target = normalize_tag(target)
    if (source, target) not in EPI_EDGES:
        raise NotAnEdge(f"no epimorphism edge {source} -> {target}")
    p = _check_odd_prime(p)
    mapping = {s: (t, 1) for s, t in zip("abc", EPI_EDGES[(source, target)])}
    models = kms_vertex_models(target, p)
    report = []
    for relator in kms_presentation(source, p).relators:
        image_word = _substitute(relator, mapping)
        syms = image_word.symbols()
        if len(syms) == 1:
            pair = next(k for k in models if syms <= k)
        else:
            pair = frozenset(syms)
        image = evaluate_word(image_word, models[pair])
        report.append((relator, image.is_identity()))
    return all(ok for _, ok in report), report


# ---------------------------------------------------------------------------
# Serialization.
# ---------------------------------------------------------------------------

def _format_word(word):
    if not word.letters:
        return "1"
    parts = []
    run_sym, run_exp, run_len = None, 0, 0
    for sym, exp in word.letters + ((None, 0),):
        if sym == run_sym and exp == run_exp:
            run_len += 1
            continue
        if run_sym is not None:
            total = run_exp * run_len
            parts.append(run_sym if total == 1 else f"{run_sym}^{total}")
        run_sym, run_exp, run_len = sym, exp, 1
    return " ".join(parts)


def presentation_text(pres):
    """Plain-text form: angle brackets around generators | relators, words
    written with ^-1 style exponents."""
    if hasattr(pres, "generators"):
        gens = pres.generators
    else:
        gens = _LETTERS
    words = ", ".join(_format_word(w) for w in pres.relators)
    return f"⟨{', '.join(gens)} | {words}⟩"
