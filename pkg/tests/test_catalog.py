"""Vertex-group catalog and the named matrix generator pairs."""

import cmath
import math

import pytest

from trigroup.catalog import (AUT_ORDERS, H31, H109, MATRIX_GENERATORS,
                              VERTEX_IDS, matrix_generator_catalog,
                              vertex_graph, vertex_group,
                              vertex_group_catalog, vertex_group_model)
from trigroup.coset_graph import girth
from trigroup.errors import UnknownVertexGroup
from trigroup.words import Word, verify_presentation


def _epsilon_x26():
    zeta = cmath.exp(2j * math.pi / 13.0)
    return abs(zeta ** 2 + zeta ** 5 + zeta ** 6) / 3.0


EXPECTED = {
    # vertex_id: (group name, group order, graph order, girth, epsilon)
    "X6": ("C3xC3", 9, 6, 4, 0.0),
    "X8": ("Alt(4)", 12, 8, 4, 1.0 / 3.0),
    "X14": ("Frobenius-21", 21, 14, 6, math.sqrt(2.0) / 3.0),
    "X16": ("SL2(3)", 24, 16, 6, math.sqrt(3.0) / 3.0),
    "X18": ("Heisenberg-3", 27, 18, 6, math.sqrt(3.0) / 3.0),
    "X24": ("Alt(4)xC3", 36, 24, 6, 2.0 / 3.0),
    "X26": ("Frobenius-39", 39, 26, 6, _epsilon_x26()),
    "X40": ("Alt(5)", 60, 40, 8, math.sqrt(5.0) / 3.0),
    "X48": ("SL2(3)xC3", 72, 48, 8, math.sqrt(2.0 / 3.0)),
    "X54": ("C3wrC3", 81, 54, 8, math.sqrt(2.0 / 3.0)),
}


def test_catalog_ids_and_order():
    assert VERTEX_IDS == tuple(EXPECTED)
    assert [e.vertex_id for e in vertex_group_catalog()] == list(VERTEX_IDS)


def test_catalog_entry_data():
    for vid, (name, group_order, graph_order, g, eps) in EXPECTED.items():
        entry = vertex_group(vid)
        assert entry.name == name
        assert entry.group_order == group_order
        assert entry.graph_order == graph_order
        assert entry.girth == g
        assert entry.half_girth == g // 2
        assert abs(entry.epsilon - eps) < 1e-12
        assert 3 * graph_order == 2 * group_order


def test_half_girths():
    halves = [vertex_group(vid).half_girth for vid in VERTEX_IDS]
    assert halves == [2, 2, 3, 3, 3, 3, 3, 4, 4, 4]


def test_unknown_vertex_id():
    with pytest.raises(UnknownVertexGroup):
        vertex_group("X7")
    with pytest.raises(UnknownVertexGroup):
        vertex_group_model("X100")


def test_models_realize_presentations():
    for vid in VERTEX_IDS:
        entry = vertex_group(vid)
        X, a, b = vertex_group_model(vid)
        assert X.order == entry.group_order
        assert a.order() == 3 and b.order() == 3
        ok, report = verify_presentation(entry.relators, {"a": a, "b": b})
        assert ok, (vid, [str(w) for w, holds in report if not holds])


def test_graphs_have_advertised_size_and_girth():
    for vid in ("X6", "X8", "X14", "X24"):
        entry = vertex_group(vid)
        g = vertex_graph(vid)
        assert g.n == entry.graph_order
        assert girth(g) == entry.girth


def test_aut_orders_cover_catalog():
    assert set(AUT_ORDERS) == set(VERTEX_IDS)
    assert all(order >= 1 for order in AUT_ORDERS.values())


MATRIX_EXPECTED = {
    # name: (p, projective, girth, phi, ramanujan)
    "SL2_5": (5, False, 6, 2.2360679775, True),
    "SL2_9": (3, False, 8, 3.16227766017, True),
    "PSL2_31": (31, True, 10, 3.85410196624, True),
    "PSL2_41": (41, True, 10, 3.82842712474, True),
    "PSL2_109": (109, True, 14, 4.02260136849, False),
    "PSL2_131": (131, True, 14, 3.98383854575, True),
}


def test_matrix_generator_table():
    assert set(MATRIX_GENERATORS) == set(MATRIX_EXPECTED)
    for name, (p, projective, g, phi, ramanujan) in MATRIX_EXPECTED.items():
        entry = MATRIX_GENERATORS[name]
        assert entry.p == p
        assert entry.projective == projective
        assert entry.girth == g
        assert abs(entry.phi - phi) < 1e-9
        assert entry.ramanujan == ramanujan
    full = matrix_generator_catalog()
    assert set(full) == set(MATRIX_GENERATORS) | {"H31_data", "H109_data"}
    assert full["H31_data"] is H31 and full["H109_data"] is H109


def test_matrix_generators_have_order_five():
    for name in ("SL2_5", "SL2_9", "PSL2_31"):
        a, b = MATRIX_GENERATORS[name].generators()
        assert a.order() == 5 and b.order() == 5


def test_small_matrix_groups_close_to_expected_order():
    assert MATRIX_GENERATORS["SL2_5"].group().order == 120
    assert MATRIX_GENERATORS["SL2_9"].group().order == 720


def _pair_relators(presentation, pair_key):
    symbols = set(pair_key.split(","))
    return [w for w in presentation.relators if w.symbols() <= symbols]


def test_hyperbolic_presentations_verify_in_vertex_models():
    for presentation in (H31, H109):
        models = presentation.vertex_models()
        assert set(models) == {"a,b", "c,a", "b,c"}
        for pair_key, assignment in models.items():
            relators = _pair_relators(presentation, pair_key)
            assert relators, (presentation.name, pair_key)
            ok, report = verify_presentation(relators, assignment)
            failed = [str(w) for w, holds in report if not holds]
            assert ok, (presentation.name, pair_key, failed)


def test_hyperbolic_presentation_metadata():
    assert H31.name == "H31"
    assert H109.name == "H109"
    assert H31.epsilon_plan == ("PSL2_31", "zero", "u4")
    assert H109.epsilon_plan == ("PSL2_109", "zero", "u3")
    assert [g for g, _, _ in H31.vertex_groups] == ["a,b", "c,a", "b,c"]
    assert all(isinstance(w, Word) for w in H31.relators)
    d = H31.to_dict()
    assert d["name"] == "H31" and len(d["relators"]) == len(H31.relator_words)
