"""Adjacency spectra: dense and iterative eigensolvers, Ramanujan verdicts,
distances, and the edge-distance eigenvalue bound."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from trigroup.algebra import cyclic_subgroup
from trigroup.catalog import vertex_group_model
from trigroup.coset_graph import Graph, build_coset_graph, line_graph
from trigroup.errors import Disconnected, OutOfRange, TooLarge
from trigroup.spectra import (bipartition, dense_second_eigenvalue,
                              dense_spectrum, diameter, epsilon_lower_bound,
                              iterative_second_eigenvalue,
                              largest_symmetric_eigenvalue, max_edge_distance,
                              ramanujan_verdict, spectral_report,
                              symmetric_eigenvalues)


def _coset_graph(vertex_id):
    X, a, b = vertex_group_model(vertex_id)
    return build_coset_graph(X, cyclic_subgroup(a), cyclic_subgroup(b))


def test_symmetric_eigenvalues_against_library_solver():
    rng = np.random.default_rng(7)
    for n in (3, 8, 15):
        m = rng.normal(size=(n, n))
        sym = (m + m.T) / 2.0
        mine = sorted(symmetric_eigenvalues(sym))
        ref = sorted(np.linalg.eigvalsh(sym))
        assert max(abs(a - b) for a, b in zip(mine, ref)) < 1e-8


def test_largest_symmetric_eigenvalue():
    m = np.array([[2.0, 1.0], [1.0, 2.0]])
    assert abs(largest_symmetric_eigenvalue(m) - 3.0) < 1e-10


def test_dense_spectrum_complete_bipartite():
    spectrum = dense_spectrum(_coset_graph("X6"))
    assert len(spectrum) == 6
    assert abs(spectrum[0] - 3.0) < 1e-9
    assert abs(spectrum[-1] + 3.0) < 1e-9
    assert max(abs(v) for v in spectrum[1:-1]) < 1e-9
    assert all(spectrum[i] >= spectrum[i + 1] - 1e-12 for i in range(5))


def test_dense_second_eigenvalue_heawood():
    eta2, bound = dense_second_eigenvalue(_coset_graph("X14"))
    assert abs(eta2 - math.sqrt(2.0)) < 1e-9
    assert bound < 1e-8


def test_spectrum_is_symmetric_for_bipartite_graphs():
    spectrum = dense_spectrum(_coset_graph("X8"))
    for v, w in zip(spectrum, reversed(spectrum)):
        assert abs(v + w) < 1e-9


def test_bipartition_sides():
    side = bipartition(_coset_graph("X6"))
    assert int(side.sum()) == 3
    with pytest.raises(ValueError):
        bipartition(Graph(3, ((0, 1), (1, 2), (0, 2))))


def test_spectral_report_heawood():
    report = spectral_report(_coset_graph("X14"))
    assert report.method == "dense"
    assert report.degree == 3
    assert abs(report.eta2 - math.sqrt(2.0)) < 1e-9
    assert abs(report.delta - (1.0 - math.sqrt(2.0) / 3.0)) < 1e-9
    assert abs(report.lambda2 - (math.sqrt(2.0) + 1.0)) < 1e-9
    assert report.ramanujan is True
    d = report.to_dict()
    assert d["method"] == "dense" and d["ramanujan"] is True


def test_iterative_matches_dense():
    g = _coset_graph("X24")
    eta_dense, _ = dense_second_eigenvalue(g)
    eta_iter, bound = iterative_second_eigenvalue(g)
    assert abs(eta_dense - eta_iter) < 1e-7
    assert bound >= 0.0
    report = spectral_report(g, force_iterative=True)
    assert report.method == "iterative"
    assert abs(report.eta2 - eta_dense) < 1e-7


def test_line_graph_eigenvalue_shift():
    g = _coset_graph("X14")
    eta2, _ = dense_second_eigenvalue(g)
    lam2, _ = dense_second_eigenvalue(line_graph(g))
    assert abs(lam2 - (eta2 + 1.0)) < 1e-8


def test_ramanujan_verdict_three_ways():
    threshold = 2.0 * math.sqrt(2.0)
    assert ramanujan_verdict(2.0, 1e-9, 3).ramanujan is True
    assert ramanujan_verdict(2.9, 1e-9, 3).ramanujan is False
    assert ramanujan_verdict(threshold, 0.01, 3).ramanujan is None
    verdict = ramanujan_verdict(2.0, 1e-9, 3)
    assert abs(verdict.threshold - threshold) < 1e-12


def test_diameter():
    assert diameter(_coset_graph("X6")) == 2
    assert diameter(_coset_graph("X8")) == 3
    with pytest.raises(Disconnected):
        diameter(Graph(4, ((0, 1), (2, 3))))


def test_max_edge_distance():
    assert max_edge_distance(_coset_graph("X6")) == 1
    assert max_edge_distance(_coset_graph("X8")) == 2
    with pytest.raises(Disconnected):
        max_edge_distance(Graph(4, ((0, 1), (2, 3))))


def test_epsilon_lower_bound_values_and_range():
    assert abs(epsilon_lower_bound(3, 1) - 1.0 / 3.0) < 1e-15
    assert epsilon_lower_bound(3, 2) > epsilon_lower_bound(3, 1)
    with pytest.raises(OutOfRange):
        epsilon_lower_bound(1, 1)
    with pytest.raises(OutOfRange):
        epsilon_lower_bound(3, 0)


def test_edge_distance_bound_holds_on_catalog_samples():
    for vid in ("X8", "X14", "X40"):
        g = _coset_graph(vid)
        t = max_edge_distance(g) // 2
        if t < 1:
            continue
        report = spectral_report(g)
        assert report.eta2 / 3.0 + 1e-12 >= epsilon_lower_bound(3, t)


def test_dense_solver_size_limit():
    big = Graph(4001, tuple((i, i + 1) for i in range(4000)))
    with pytest.raises(TooLarge):
        dense_spectrum(big)


@given(st.integers(min_value=0, max_value=10 ** 6))
def test_random_symmetric_matrices_match_library_solver(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 10))
    m = rng.normal(size=(n, n))
    sym = (m + m.T) / 2.0
    mine = sorted(symmetric_eigenvalues(sym))
    ref = sorted(np.linalg.eigvalsh(sym))
    assert max(abs(a - b) for a, b in zip(mine, ref)) < 1e-8
