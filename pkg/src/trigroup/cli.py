"""Command surface: reproducible runs over the library with a JSON envelope.

Every invocation prints either a report envelope {command, params, results,
citations, version, seed, elapsed_ms} (JSON), a flat table (CSV), plain lines
(text), or a raw graph serialization (DOT / graph6 pass-through).  Exit codes:
0 success, 2 verification failure, 3 inconclusive certificate, 4 usage error.
Citations are the internal data-table labels backing each numeric claim.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import dataclass, field

from . import __version__
from .acceptance import run_acceptance
from .algebra import cyclic_subgroup
from .angle import (epsilon_projection_oracle, epsilon_spectral,
                    epsilon_unipotent, gauss_period_epsilon)
from .catalog import (H31, H109, MATRIX_GENERATORS, vertex_graph, vertex_group,
                      vertex_group_catalog, vertex_group_model)
from .certifier import closed_form_epsilons, ej_certify, kms_kazhdan_threshold
from .coset_graph import export_graph, girth
from .errors import BadParameters, TrigroupError
from .polyrep import (DEFAULT_SEED, REP_IDS, kassabov_witness, root_group_model,
                      verify_commuting_pair_A2, verify_rep)
from .presentations import (EPI_EDGES, KMS_HALF_GIRTH_TYPE, KMS_TAGS,
                            enumerate_trivalent, kms_epimorphism_check,
                            kms_gf3_identification, kms_presentation,
                            presentation_length, presentation_text,
                            sample_triples, tilde_extension)
from .spectra import spectral_report
from .words import Word

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_INCONCLUSIVE = 3
EXIT_USAGE = 4

_VERTEX_IDS = ("X6", "X8", "X14", "X16", "X18", "X24", "X26", "X40", "X48", "X54")
_HYPERBOLIC = {"H31": H31, "H109": H109}


@dataclass
class _Output:
    results: dict
    citations: list = field(default_factory=list)
    rows: list = None
    exit_code: int = EXIT_OK
    raw: str = None


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage errors as machine-readable objects."""

    def error(self, message):
        print(json.dumps({"error": {"type": "usage", "message": message}}),
              file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _resolve_graph(name, cap):
    if name in _VERTEX_IDS:
        return vertex_graph(name), f"catalog:{name}"
    if name in MATRIX_GENERATORS:
        entry = MATRIX_GENERATORS[name]
        return (entry.graph(cap) if cap else entry.graph()), f"generators:{name}"
    raise BadParameters(f"unknown group {name!r}; choose from "
                        f"{', '.join(_VERTEX_IDS + tuple(MATRIX_GENERATORS))}")


# ---------------------------------------------------------------------------
# Command handlers.
# ---------------------------------------------------------------------------

def _cmd_catalog(args):
    entries = vertex_group_catalog()
    if args.group:
        entries = [e for e in entries if e.vertex_id == args.group]
        if not entries:
            raise BadParameters(f"unknown vertex group {args.group!r}")
    results = {
        "vertex_groups": [e.to_dict() for e in entries],
        "matrix_generators": [e.to_dict() for e in MATRIX_GENERATORS.values()],
    }
    citations = [f"catalog:{e.vertex_id}" for e in entries]
    citations += [f"generators:{name}" for name in MATRIX_GENERATORS]
    exit_code = EXIT_OK
    if args.verify:
        report = run_acceptance(numbers=[1])[0]
        results["verification"] = report.to_dict()
        citations.append("acceptance:criterion-1")
        if not report.passed:
            exit_code = EXIT_VERIFY
    rows = [{"vertex_id": e.vertex_id, "group": e.name, "group_order": e.group_order,
             "graph_order": e.graph_order, "girth": e.girth, "epsilon": e.epsilon,
             "graph": e.graph_name} for e in entries]
    return _Output(results, citations, rows=rows, exit_code=exit_code)


def _cmd_graph(args):
    g, citation = _resolve_graph(args.group, args.cap)
    if args.format in ("dot", "graph6"):
        fmt = "DOT" if args.format == "dot" else "graph6"
        return _Output({}, [citation], raw=export_graph(g, fmt))
    results = {
        "group": args.group,
        "vertices": g.n,
        "edges": g.edge_count,
        "degree": g.degree,
        "sides": [getattr(g, "left_count", None), getattr(g, "right_count", None)],
        "connected": g.is_connected(),
    }
    if args.girth:
        results["girth"] = girth(g)
    rows = [{"u": u, "v": v} for u, v in g.edges]
    return _Output(results, [citation], rows=rows)


def _cmd_spectrum(args):
    g, citation = _resolve_graph(args.group, args.cap)
    report = spectral_report(g, tol=args.tol, force_iterative=args.force_iterative)
    results = {"group": args.group, **report.to_dict()}
    results["epsilon"] = report.eta2 / g.degree
    return _Output(results, [citation], rows=[results])


def _cmd_angle(args):
    modes = [bool(args.group), args.gauss_p is not None, args.unipotent is not None]
    if sum(modes) != 1:
        raise BadParameters("angle needs exactly one of --group, --gauss-p, --unipotent")
    if args.gauss_p is not None:
        result = gauss_period_epsilon(args.gauss_p, (args.gauss_p - 1) // 2)
        results = {"p": args.gauss_p, "r": (args.gauss_p - 1) // 2, **result.to_dict()}
        return _Output(results, ["gauss-period:closed-form"], rows=[results])
    if args.unipotent is not None:
        if args.p is None:
            raise BadParameters("--unipotent needs --p")
        result = epsilon_unipotent(args.unipotent, args.p)
        results = {"family": args.unipotent, "p": args.p, **result.to_dict()}
        return _Output(results, [f"unipotent:{args.unipotent}"], rows=[results])
    if args.group in _VERTEX_IDS:
        x, a, b = vertex_group_model(args.group)
        sub_a, sub_b = cyclic_subgroup(a), cyclic_subgroup(b)
        spectral = epsilon_spectral(x, sub_a, sub_b, tol=args.tol)
        results = {"group": args.group, "spectral": spectral.to_dict()}
        if x.order <= 200:
            oracle = epsilon_projection_oracle(x, sub_a, sub_b)
            results["projection_oracle"] = oracle.to_dict()
            results["route_difference"] = abs(spectral.epsilon - oracle.epsilon)
        return _Output(results, [f"catalog:{args.group}"], rows=[{
            "group": args.group, "epsilon": spectral.epsilon, "route": "spectral"}])
    g, citation = _resolve_graph(args.group, args.cap)
    report = spectral_report(g, tol=args.tol)
    results = {"group": args.group, "epsilon": report.eta2 / g.degree,
               "route": "spectral", "eta2": report.eta2}
    return _Output(results, [citation], rows=[results])


def _named_certificate(name):
    e14 = math.sqrt(2.0) / 3.0
    if name == "ronan":
        cert = ej_certify(e14, e14, e14)
        return {"name": name, "epsilons": [e14] * 3}, cert, ["catalog:X14"]
    pres = _HYPERBOLIC[name]
    entry = MATRIX_GENERATORS[pres.epsilon_plan[0]]
    family = pres.epsilon_plan[2].upper()
    if name == "H31":
        g = entry.graph()
        report = spectral_report(g)
        eta2, graph_girth, source = report.eta2, girth(g), "spectral"
    else:
        eta2, graph_girth, source = entry.phi, entry.girth, "stored"
    eps = eta2 / 5.0
    cert = ej_certify(0.0, epsilon_unipotent(family, 5).epsilon, eps)
    results = {
        "name": name,
        "girth": graph_girth,
        "five_epsilon": eta2,
        "epsilon_source": source,
        "epsilons": [0.0, epsilon_unipotent(family, 5).epsilon, eps],
    }
    return results, cert, [f"generators:{pres.epsilon_plan[0]}", f"unipotent:{family}"]


def _cmd_certify(args):
    if args.group and args.epsilons:
        raise BadParameters("certify takes either --group or --epsilons, not both")
    if args.group:
        if args.group not in ("ronan", "H31", "H109"):
            raise BadParameters("certify --group expects ronan, H31 or H109")
        results, cert, citations = _named_certificate(args.group)
    elif args.epsilons:
        e0, e1, e2 = args.epsilons
        cert = ej_certify(e0, e1, e2, margin=args.margin)
        results = {"epsilons": [e0, e1, e2]}
        citations = ["certifier:EJ-inequality"]
    else:
        raise BadParameters("certify needs --group or --epsilons")
    results.update({"S": cert.S, "verdict": cert.verdict, "margin": cert.margin,
                    "angle_sum_degrees": [round(a * 180.0 / math.pi, 6) for a in cert.angles]})
    exit_code = EXIT_OK if cert.certified else EXIT_INCONCLUSIVE
    return _Output(results, citations, rows=[{
        "name": results.get("name", "custom"), "S": cert.S, "verdict": cert.verdict}],
        exit_code=exit_code)


def _class_row(pres):
    epsilons = [vertex_group(vid).epsilon for vid in pres.triple]
    cert = ej_certify(*epsilons)
    return {
        "name": pres.name,
        "p_len": presentation_length(pres),
        "girths": "/".join(str(vertex_group(vid).girth) for vid in pres.triple),
        "eps_triple": "/".join(f"{e:.6f}" for e in epsilons),
        "S": round(cert.S, 6),
        "verdict": cert.verdict,
    }


def _cmd_enumerate(args):
    if args.triple:
        ids = tuple(part.strip() for part in args.triple.split(","))
        if len(ids) != 3:
            raise BadParameters("--triple expects three comma-separated vertex ids")
        triples = [ids]
    elif args.all:
        triples = sample_triples()
    else:
        raise BadParameters("enumerate needs --all or --triple")
    classes = []
    for triple in triples:
        classes.extend(enumerate_trivalent(triple))
    citations = sorted({f"catalog:{vid}" for t in triples for vid in t})
    citations.append("enumeration:orbit-table")
    if args.count_only:
        results = {"triples": len(triples), "classes": len(classes)}
        return _Output(results, citations, rows=[results])
    rows = [_class_row(pres) for pres in classes]
    results = {
        "triples": len(triples),
        "classes": len(classes),
        "presentations": [
            {**pres.to_dict(), "text": presentation_text(pres)} for pres in classes],
    }
    return _Output(results, citations, rows=rows)


def _cmd_kms(args):
    modes = [args.tag is not None, args.thresholds, args.epimorphisms, args.gf3 is not None]
    if sum(modes) != 1:
        raise BadParameters("kms needs exactly one of --tag, --thresholds, "
                            "--epimorphisms, --gf3")
    if args.thresholds:
        if args.p is None:
            raise BadParameters("--thresholds needs --p")
        rows = []
        for half_type in ((2, 4, 4), (3, 3, 3), (3, 3, 4), (3, 4, 4), (4, 4, 4)):
            verdict = kms_kazhdan_threshold(half_type, args.p)
            cert = ej_certify(*closed_form_epsilons(half_type, args.p))
            rows.append({"half_girth_type": "/".join(map(str, half_type)),
                         "p": args.p, "certified": verdict.certified,
                         "S": round(cert.S, 9), "verdict": cert.verdict})
        results = {"p": args.p, "thresholds": rows}
        return _Output(results, ["thresholds:cubics"], rows=rows)
    if args.epimorphisms:
        if args.p is None:
            raise BadParameters("--epimorphisms needs --p")
        rows = []
        all_ok = True
        for (source, target), assignment in EPI_EDGES.items():
            ok, report = kms_epimorphism_check(source, target, args.p)
            all_ok &= ok
            rows.append({"source": source, "target": target, "p": args.p,
                         "assignment": assignment, "holds": ok,
                         "relators": len(report)})
        results = {"p": args.p, "edges": rows, "all_hold": all_ok}
        return _Output(results, ["kms:epimorphism-edges"], rows=rows,
                       exit_code=EXIT_OK if all_ok else EXIT_VERIFY)
    if args.gf3 is not None:
        pres, triple, index = kms_gf3_identification(args.gf3)
        results = {"tag": args.gf3, "triple": list(triple), "index": index,
                   "identified_with": pres.name,
                   "presentation": pres.to_dict()}
        return _Output(results, [f"gf3:{args.gf3}"], rows=[{
            "tag": args.gf3, "identified_with": pres.name, "index": index}])
    if args.p is None:
        raise BadParameters("--tag needs --p")
    spec = kms_presentation(args.tag, args.p)
    results = spec.to_dict()
    results["tilde_extension"] = tilde_extension(spec).to_dict()
    return _Output(results, [f"kms:{spec.tag}"], rows=[{
        "name": spec.name, "tag": spec.tag, "p": spec.p,
        "relators": len(spec.relators),
        "half_girth_type": "/".join(map(str, spec.half_girth_type))}])


def _cmd_polyrep(args):
    modes = [args.rep is not None, args.witness, args.root is not None,
             args.commuting_pair]
    if sum(modes) != 1:
        raise BadParameters("polyrep needs exactly one of --rep, --witness, "
                            "--root, --commuting-pair")
    if args.p is None:
        raise BadParameters("polyrep needs --p")
    if args.rep is not None:
        verification = verify_rep(args.rep, args.p, k=args.k, seed=args.seed)
        results = verification.to_dict()
        citation = f"rep:{args.rep}"
        ok = verification.passed
    elif args.witness:
        witness = kassabov_witness(args.p, args.k)
        results = witness.to_dict()
        citation = "rep:block-witness"
        ok = witness.passed
    elif args.root is not None:
        model = root_group_model(args.root, args.p)
        results = model.to_dict()
        citation = f"root-groups:{args.root}"
        ok = model.passed
    else:
        check = verify_commuting_pair_A2(args.p)
        results = check.to_dict()
        citation = "rep:A2-commuting-pair"
        ok = check.passed
    results["passed"] = ok
    return _Output(results, [citation], rows=[{"p": args.p, "k": args.k, "passed": ok}],
                   exit_code=EXIT_OK if ok else EXIT_VERIFY)


def _cmd_report(args):
    numbers = [args.criterion] if args.criterion is not None else None
    reports = run_acceptance(include_slow=args.slow, numbers=numbers)
    if not reports:
        raise BadParameters(f"no criterion {args.criterion}")
    results = {"criteria": [r.to_dict() for r in reports],
               "passed": all(r.passed for r in reports)}
    rows = [{"number": r.number, "passed": r.passed, "checks": r.checks,
             "elapsed_s": round(r.elapsed_s, 2), "title": r.title} for r in reports]
    citations = [f"acceptance:criterion-{r.number}" for r in reports]
    return _Output(results, citations, rows=rows,
                   exit_code=EXIT_OK if results["passed"] else EXIT_VERIFY)


# ---------------------------------------------------------------------------
# Emission.
# ---------------------------------------------------------------------------

def _render_text(value, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {item}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)):
                lines.extend(_render_text(item, indent))
                lines.append("")
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{value}")
    return lines


def _emit(command, params, output, seed, start, fmt):
    if output.raw is not None:
        sys.stdout.write(output.raw)
        if not output.raw.endswith("\n"):
            sys.stdout.write("\n")
        return
    if fmt == "csv":
        rows = output.rows or [
            {"key": k, "value": v} for k, v in output.results.items()
            if not isinstance(v, (dict, list))]
        writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
        return
    if fmt == "json":
        envelope = {
            "command": command,
            "params": params,
            "results": output.results,
            "citations": list(dict.fromkeys(output.citations)),
            "version": __version__,
            "seed": seed,
            "elapsed_ms": int((time.perf_counter() - start) * 1000),
        }
        print(json.dumps(envelope, indent=2, default=str))
        return
    for line in _render_text(output.results):
        print(line)


# ---------------------------------------------------------------------------
# Parser.
# ---------------------------------------------------------------------------

def _build_parser():
    parser = _Parser(prog="trigroup",
                     description="Coset graphs, spectral angles, Kazhdan "
                                 "certificates and triangle-group enumeration.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("json", "csv", "text"), cap=False, tol=False, prime=False):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--threads", type=int, default=None,
                       help="advisory; recorded in the report, computations "
                            "run single-process")
        if cap:
            p.add_argument("--cap", type=int, default=None,
                           help="group closure cap")
        if tol:
            p.add_argument("--tol", type=float, default=1e-8)
        if prime:
            p.add_argument("--p", type=int, default=None)

    p = sub.add_parser("catalog", help="vertex groups and matrix generators")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--group", default=None)
    common(p)

    p = sub.add_parser("graph", help="build a coset graph, export, girth")
    p.add_argument("--group", required=True)
    p.add_argument("--girth", action="store_true")
    common(p, formats=("json", "csv", "text", "dot", "graph6"), cap=True)

    p = sub.add_parser("spectrum", help="eta2, spectral gap, Ramanujan flag")
    p.add_argument("--group", required=True)
    p.add_argument("--force-iterative", action="store_true")
    common(p, cap=True, tol=True)

    p = sub.add_parser("angle", help="representation angles by route")
    p.add_argument("--group", default=None)
    p.add_argument("--gauss-p", type=int, default=None)
    p.add_argument("--unipotent", choices=("U3", "U4"), default=None)
    common(p, cap=True, tol=True, prime=True)

    p = sub.add_parser("certify", help="property (T) certificates")
    p.add_argument("--group", default=None)
    p.add_argument("--epsilons", type=float, nargs=3, default=None)
    p.add_argument("--margin", type=float, default=0.0)
    common(p)

    p = sub.add_parser("enumerate", help="trivalent triangle-group classes")
    p.add_argument("--all", action="store_true")
    p.add_argument("--triple", default=None)
    p.add_argument("--count-only", action="store_true")
    common(p)

    p = sub.add_parser("kms", help="KMS presentations, thresholds, epimorphisms")
    p.add_argument("--tag", choices=KMS_TAGS, default=None)
    p.add_argument("--thresholds", action="store_true")
    p.add_argument("--epimorphisms", action="store_true")
    p.add_argument("--gf3", choices=KMS_TAGS, default=None)
    common(p, prime=True)

    p = sub.add_parser("polyrep", help="matrix and polynomial representations")
    p.add_argument("--rep", choices=REP_IDS, default=None)
    p.add_argument("--witness", action="store_true")
    p.add_argument("--root", choices=("U3", "U4"), default=None)
    p.add_argument("--commuting-pair", action="store_true")
    p.add_argument("--k", type=int, default=1)
    common(p, prime=True)

    p = sub.add_parser("report", help="run the acceptance criteria")
    p.add_argument("--slow", action="store_true")
    p.add_argument("--criterion", type=int, default=None)
    common(p)

    return parser


_HANDLERS = {
    "catalog": _cmd_catalog,
    "graph": _cmd_graph,
    "spectrum": _cmd_spectrum,
    "angle": _cmd_angle,
    "certify": _cmd_certify,
    "enumerate": _cmd_enumerate,
    "kms": _cmd_kms,
    "polyrep": _cmd_polyrep,
    "report": _cmd_report,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    params = {key: value for key, value in sorted(vars(args).items())
              if key not in ("command",)}
    try:
        output = _HANDLERS[args.command](args)
    except TrigroupError as exc:
        print(json.dumps({"error": {"type": type(exc).__name__,
                                    "message": str(exc)}}), file=sys.stderr)
        return EXIT_USAGE
    _emit(args.command, params, output, args.seed, start, args.format)
    return output.exit_code


if __name__ == "__main__":
    sys.exit(main())
