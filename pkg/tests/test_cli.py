"""Command line interface: envelopes, exit codes, formats, error paths."""

import json
import math

import pytest

import trigroup.cli as cli
from trigroup.acceptance import CriterionResult
from trigroup.cli import (EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE, EXIT_VERIFY,
                          main)
from trigroup.coset_graph import from_graph6
from trigroup.polyrep import DEFAULT_SEED

ENVELOPE_KEYS = {"command", "params", "results", "citations", "version",
                 "seed", "elapsed_ms"}


def _json(capsys, *argv):
    code = main(list(argv) + ["--format", "json"])
    captured = capsys.readouterr()
    return code, json.loads(captured.out)


def _error(capsys, *argv):
    code = main(list(argv) + ["--format", "json"])
    captured = capsys.readouterr()
    return code, json.loads(captured.err)


def test_catalog_envelope(capsys):
    code, doc = _json(capsys, "catalog")
    assert code == EXIT_OK
    assert set(doc) == ENVELOPE_KEYS
    assert doc["command"] == "catalog"
    assert doc["seed"] == DEFAULT_SEED
    assert len(doc["results"]["vertex_groups"]) == 10
    assert len(doc["results"]["matrix_generators"]) == 6
    assert any(c.startswith("catalog:") for c in doc["citations"])


def test_catalog_group_filter(capsys):
    code, doc = _json(capsys, "catalog", "--group", "X14")
    assert code == EXIT_OK
    assert [e["id"] for e in doc["results"]["vertex_groups"]] == ["X14"]


def test_catalog_csv(capsys):
    code = main(["catalog", "--format", "csv"])
    out = capsys.readouterr().out.splitlines()
    assert code == EXIT_OK
    assert out[0] == "vertex_id,group,group_order,graph_order,girth,epsilon,graph"
    assert len(out) == 11


def test_catalog_text_default(capsys):
    code = main(["catalog"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "X54" in out


def test_catalog_verify_failure_path(capsys, monkeypatch):
    failing = CriterionResult(number=1, title="stub", passed=False,
                              elapsed_s=0.0, checks=1, details=("boom",))
    monkeypatch.setattr(cli, "run_acceptance", lambda **kw: [failing])
    code, doc = _json(capsys, "catalog", "--verify")
    assert code == EXIT_VERIFY
    assert doc["results"]["verification"]["passed"] is False


def test_graph_graph6_round_trip(capsys):
    code = main(["graph", "--group", "X6", "--format", "graph6"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert out == "EFz_\n"
    assert from_graph6(out.strip()).n == 6


def test_graph_dot(capsys):
    code = main(["graph", "--group", "X8", "--format", "dot"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert out.startswith("graph ")
    assert out.count("--") == 12


def test_graph_json_with_girth(capsys):
    code, doc = _json(capsys, "graph", "--group", "X14", "--girth")
    assert code == EXIT_OK
    assert doc["results"]["girth"] == 6


def test_graph_unknown_group(capsys):
    code, err = _error(capsys, "graph", "--group", "X99")
    assert code == EXIT_USAGE
    assert err["error"]["type"] == "BadParameters"


def test_usage_error_is_exit_4(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["graph"])
    assert exc.value.code == EXIT_USAGE
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["type"] == "usage"


def test_unknown_subcommand_is_exit_4(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == EXIT_USAGE


def test_spectrum(capsys):
    code, doc = _json(capsys, "spectrum", "--group", "X14")
    assert code == EXIT_OK
    results = doc["results"]
    assert abs(results["eta2"] - math.sqrt(2.0)) < 1e-8
    assert abs(results["epsilon"] - math.sqrt(2.0) / 3.0) < 1e-8
    assert results["method"] == "dense"
    assert results["ramanujan"] is True


def test_angle_vertex_group_routes(capsys):
    code, doc = _json(capsys, "angle", "--group", "X14")
    assert code == EXIT_OK
    results = doc["results"]
    assert abs(results["route_difference"]) < 1e-8
    assert abs(results["spectral"]["epsilon"] - math.sqrt(2.0) / 3.0) < 1e-8


def test_angle_gauss_period(capsys):
    code, doc = _json(capsys, "angle", "--gauss-p", "7")
    assert code == EXIT_OK
    results = doc["results"]
    assert results["closed_form"] is not None
    assert abs(results["epsilon"] - math.sqrt(2.0) / 3.0) < 1e-10


def test_angle_unipotent(capsys):
    code, doc = _json(capsys, "angle", "--unipotent", "U3", "--p", "5")
    assert code == EXIT_OK
    assert abs(doc["results"]["epsilon"] - 1.0 / math.sqrt(5.0)) < 1e-12


def test_angle_requires_exactly_one_mode(capsys):
    code, err = _error(capsys, "angle", "--group", "X14", "--gauss-p", "7")
    assert code == EXIT_USAGE
    code, err = _error(capsys, "angle")
    assert code == EXIT_USAGE


def test_certify_named_quotient(capsys):
    code, doc = _json(capsys, "certify", "--group", "ronan")
    assert code == EXIT_OK
    results = doc["results"]
    assert results["verdict"] == "T-certified"
    exact = 2.0 / 3.0 + 4.0 * math.sqrt(2.0) / 27.0
    assert abs(results["S"] - exact) < 1e-12


def test_certify_stored_hyperbolic_group(capsys):
    code, doc = _json(capsys, "certify", "--group", "H109")
    assert code == EXIT_OK
    results = doc["results"]
    assert results["verdict"] == "T-certified"
    assert results["girth"] == 14
    assert abs(results["five_epsilon"] - 4.02260136849) < 1e-9


def test_certify_explicit_epsilons_inconclusive(capsys):
    code, doc = _json(capsys, "certify", "--epsilons", "0.9", "0.9", "0.9")
    assert code == EXIT_INCONCLUSIVE
    assert doc["results"]["verdict"] == "inconclusive"


def test_certify_explicit_epsilons_certified(capsys):
    code, doc = _json(capsys, "certify", "--epsilons", "0.3", "0.3", "0.3")
    assert code == EXIT_OK
    assert doc["results"]["verdict"] == "T-certified"


def test_enumerate_count_only(capsys):
    code, doc = _json(capsys, "enumerate", "--all", "--count-only")
    assert code == EXIT_OK
    assert doc["results"] == {"triples": 132, "classes": 252}


def test_enumerate_count_needs_a_scope(capsys):
    code, err = _error(capsys, "enumerate", "--count-only")
    assert code == EXIT_USAGE
    assert err["error"]["type"] == "BadParameters"


def test_enumerate_single_triple(capsys):
    code, doc = _json(capsys, "enumerate", "--triple", "X14,X14,X16")
    assert code == EXIT_OK
    results = doc["results"]
    assert results["triples"] == 1
    assert results["classes"] == len(results["presentations"]) == 4


def test_enumerate_csv_rows(capsys):
    code = main(["enumerate", "--triple", "X14,X14,X16", "--format", "csv"])
    out = capsys.readouterr().out.splitlines()
    assert code == EXIT_OK
    assert out[0] == "name,p_len,girths,eps_triple,S,verdict"
    assert len(out) == 5


def test_kms_tag(capsys):
    code, doc = _json(capsys, "kms", "--tag", "A2t", "--p", "5")
    assert code == EXIT_OK
    results = doc["results"]
    assert results["name"] == "G_A2t(5)"
    assert results["half_girth_type"] == [3, 3, 3]
    assert results["tilde_extension"]["generators"] == ["t", "a", "b"]


def test_kms_thresholds(capsys):
    code, doc = _json(capsys, "kms", "--thresholds", "--p", "11")
    assert code == EXIT_OK
    thresholds = doc["results"]["thresholds"]
    assert len(thresholds) == 5
    assert all(t["certified"] for t in thresholds)
    code, doc = _json(capsys, "kms", "--thresholds", "--p", "3")
    assert not any(t["certified"] for t in doc["results"]["thresholds"])


def test_kms_epimorphisms(capsys):
    code, doc = _json(capsys, "kms", "--epimorphisms", "--p", "5")
    assert code == EXIT_OK
    results = doc["results"]
    assert results["all_hold"] is True
    assert len(results["edges"]) == 11
    assert all(edge["holds"] for edge in results["edges"])


def test_kms_gf3(capsys):
    code, doc = _json(capsys, "kms", "--gf3", "A2t")
    assert code == EXIT_OK
    assert doc["results"]["tag"] == "A2t"
    assert doc["results"]["triple"] == ["X18", "X18", "X18"]


def test_polyrep_scalar_rep(capsys):
    code, doc = _json(capsys, "polyrep", "--rep", "A2_T", "--p", "5")
    assert code == EXIT_OK
    assert doc["results"]["passed"] is True


def test_polyrep_witness(capsys):
    code, doc = _json(capsys, "polyrep", "--witness", "--p", "5", "--k", "2")
    assert code == EXIT_OK
    assert doc["results"]["passed"] is True


def test_polyrep_witness_precondition(capsys):
    code, err = _error(capsys, "polyrep", "--witness", "--p", "3", "--k", "3")
    assert code == EXIT_USAGE
    assert err["error"]["type"] == "PreconditionViolated"


def test_polyrep_root_model(capsys):
    code, doc = _json(capsys, "polyrep", "--root", "U4", "--p", "5")
    assert code == EXIT_OK
    assert doc["results"]["group_order"] == 625


def test_polyrep_commuting_pair(capsys):
    code, doc = _json(capsys, "polyrep", "--commuting-pair", "--p", "7")
    assert code == EXIT_OK
    assert doc["results"]["passed"] is True
    assert doc["results"]["necessary_only"] is True


def test_report_single_criterion(capsys):
    code, doc = _json(capsys, "report", "--criterion", "6")
    assert code == EXIT_OK
    assert doc["results"]["passed"] is True
    assert doc["results"]["criteria"][0]["number"] == 6


def test_report_failure_path(capsys, monkeypatch):
    failing = CriterionResult(number=2, title="stub", passed=False,
                              elapsed_s=0.0, checks=3, details=("boom",))
    monkeypatch.setattr(cli, "run_acceptance", lambda **kw: [failing])
    code, doc = _json(capsys, "report")
    assert code == EXIT_VERIFY
    assert doc["results"]["passed"] is False


def test_seed_is_recorded(capsys):
    code, doc = _json(capsys, "catalog", "--seed", "42")
    assert code == EXIT_OK
    assert doc["seed"] == 42
