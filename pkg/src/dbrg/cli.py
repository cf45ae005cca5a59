"""Command-line front end.

Exit codes: 0 after any completed analysis (whatever the verdicts), 1 for
bad input or unmet command preconditions, 2 for numerical breakdown or
disagreement between routes.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, is_dataclass

import numpy as np

from . import __version__
from .characterize import (ExcessReport, IntersectionNumbers, Verdict, classify,
                           cospectral_girth_dbrg, halved_route_dbrg, spectral_excess_dbrg,
                           spectral_excess_drg)
from .corpus import FAMILIES, generate
from .errors import AnalysisError, DbrgError, NotBipartite, NotSemiregular
from .graph import (Graph, bipartition, distance_data, format_edge_list, girth,
                    halved_graphs, parse_edge_list, semiregular_profile)
from .spectral import DEFAULT_TOL, decompose

SIG_DIGITS = 12


def _clean(obj):
    """JSON-ready copy with floats rounded to 12 significant digits and inf/nan as null."""
    if isinstance(obj, Verdict):
        return _clean({"theorem": obj.theorem, "outcome": obj.outcome, "residual": obj.residual,
                       "evidence": obj.evidence, "tolerances": obj.tolerances})
    if isinstance(obj, IntersectionNumbers):
        return {"root": obj.root, "triples": [list(t) for t in obj.array()]}
    if is_dataclass(obj) and not isinstance(obj, type):
        return _clean(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return [_clean(v) for v in sorted(obj)]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return None
        x = float(f"{x:.{SIG_DIGITS}g}")
        return 0.0 if x == 0 else x
    return obj


def _graph_summary(g: Graph, dd) -> dict:
    try:
        part = bipartition(g)
        parts = {"B": list(part.side_b), "C": list(part.side_c), "k": part.k, "ell": part.ell}
    except NotBipartite:
        parts = None
    return {"n": g.n, "edges": g.num_edges, "degrees": g.degrees.tolist(), "bipartition": parts,
            "girth": girth(g), "diameter": dd.diameter}


def _spectrum(dec) -> list:
    # clusters around 0 average to round-off noise; report them as exact zeros
    eigs = np.where(np.abs(dec.eigs) <= dec.tol * dec.scale, 0.0, dec.eigs)
    return [{"eigenvalue": t, "multiplicity": int(m)} for t, m in zip(eigs, dec.mult)]


def _excess(rep: ExcessReport) -> dict:
    return {"excess": rep.excess, "predistance_value": rep.predistance_value,
            "side_values": rep.side_values, "t": rep.t, "kd_b": rep.kd_b, "kd_c": rep.kd_c,
            "average_excess": rep.average_excess}


def cmd_analyze(g: Graph, tol: float) -> dict:
    c = classify(g, tol)
    dec = decompose(g, tol)
    dd = distance_data(g)
    pseudo = [{"vertex": u, "outcome": v.outcome, "residual": v.residual} for u, v in enumerate(c.pseudo_vertices)]
    return {"graph": _graph_summary(g, dd), "spectrum": _spectrum(dec), "verdicts": c.verdicts,
            "pseudo_vertices": pseudo,
            "oracle": {"drg": c.oracle["drg"], "dbrg": c.oracle["dbrg"], "all_local": c.oracle["all_local"]},
            "excess": _excess(c.excess) if c.excess is not None else None,
            "classification": c.label}


def cmd_classify(g: Graph, tol: float) -> dict:
    return {"classification": classify(g, tol).label}


def cmd_excess(g: Graph, tol: float) -> dict:
    dec = decompose(g, tol)
    dd = distance_data(g)
    verdicts = []
    v, rep = spectral_excess_drg(g, dec, dd, tol)
    verdicts.append(v)
    part = None
    try:
        part = bipartition(g)
        semiregular_profile(g, part)
    except (NotBipartite, NotSemiregular):
        part = None
    if part is not None and dec.num_distinct == dd.diameter + 1:
        v, rep_b = spectral_excess_dbrg(g, dec, dd, part, tol)
        verdicts.append(v)
        rep.side_values, rep.t = rep_b.side_values, rep_b.t if rep.t is None else rep.t
        try:
            cg = cospectral_girth_dbrg(g, tol, dec, dd)
            verdicts.append(cg)
            rep.kd_b, rep.kd_c = cg.evidence.get("kd_b"), cg.evidence.get("kd_c")
        except DbrgError as exc:
            if isinstance(exc, AnalysisError):
                raise
    return {"graph": _graph_summary(g, dd), "spectrum": _spectrum(dec), "verdicts": verdicts,
            "excess": _excess(rep)}


def cmd_halved(g: Graph, tol: float) -> dict:
    part = bipartition(g)
    semiregular_profile(g, part)
    halves = halved_graphs(g, part)
    verdict = halved_route_dbrg(g, tol)
    side = lambda h, labels: {"vertices": list(labels), "edges": [list(e) for e in h.edges],
                              "spectrum": _spectrum(decompose(h, tol))}
    return {"halved": {"B": side(halves.h_b, halves.side_b), "C": side(halves.h_c, halves.side_c),
                       "r": halves.r, "s": halves.s, "k": part.k, "ell": part.ell},
            "verdicts": [verdict]}


COMMANDS = {"analyze": cmd_analyze, "classify": cmd_classify, "excess": cmd_excess, "halved": cmd_halved}


def _render_text(command: str, report: dict) -> str:
    if command == "classify":
        return report["classification"] + "\n"
    lines = []
    graph = report.get("graph")
    if graph:
        lines.append(f"n={graph['n']} edges={graph['edges']} diameter={graph['diameter']} "
                     f"girth={graph['girth'] if graph['girth'] is not None else 'inf'}")
    if report.get("spectrum"):
        lines.append("spectrum: " + ", ".join(f"{s['eigenvalue']:.12g}^{s['multiplicity']}"
                                              for s in report["spectrum"]))
    if report.get("halved"):
        h = report["halved"]
        lines.append(f"halved: k={h['k']} ell={h['ell']} r={h['r']} s={h['s']}")
        for label in ("B", "C"):
            spec = ", ".join(f"{s['eigenvalue']:.12g}^{s['multiplicity']}" for s in h[label]["spectrum"])
            lines.append(f"  H_{label}: {len(h[label]['vertices'])} vertices, {len(h[label]['edges'])} edges; {spec}")
    if report.get("excess"):
        e = report["excess"]
        lines.append(f"excess: {e['excess']}")
        for key in ("predistance_value", "side_values", "t", "kd_b", "kd_c"):
            if e.get(key) not in (None, {}):
                lines.append(f"  {key}: {e[key]}")
    for v in report.get("verdicts", []):
        res = "" if v["residual"] is None else f" residual={v['residual']:.3g}"
        lines.append(f"{v['outcome']:<15} {v['theorem']}{res}")
    if "classification" in report:
        lines.append(f"classification: {report['classification']}")
    return "\n".join(lines) + "\n"


def _error_text(record: dict) -> str:
    extra = " ".join(f"{k}={json.dumps(v)}" for k, v in record.items() if k not in ("type", "message"))
    return f"error: {record['type']}: {record['message']}" + (f" {extra}" if extra else "") + "\n"


def _default_tol() -> float:
    env = os.environ.get("DBR_TOL")
    return float(env) if env else DEFAULT_TOL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="numerical tolerance (default 1e-8 or $DBR_TOL)")
    common.add_argument("--format", choices=("json", "text"), default="text")
    parser = argparse.ArgumentParser(prog="dbrg", description="Spectral tests for distance-(bi)regular graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {"analyze": "full report", "classify": "classification only",
             "excess": "spectral excess report", "halved": "halved graphs and their route"}
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file", help="edge-list file, or - for stdin")
    gen = sub.add_parser("gen", parents=[common], help="emit a generated graph as an edge list")
    gen.add_argument("family", help=f"one of: {', '.join(FAMILIES)}")
    gen.add_argument("params", nargs="*")
    gen.add_argument("-o", "--output", help="write to this file instead of stdout")
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputFileError(f"cannot read {path}: {exc.strerror}", path=path) from None


class InputFileError(DbrgError, ValueError):
    pass


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    tol = args.tol if args.tol is not None else _default_tol()
    try:
        if args.command == "gen":
            g = generate(args.family, *args.params)
            text = format_edge_list(g, " ".join([args.family, *args.params]))
            if args.output:
                with open(args.output, "w") as fh:
                    fh.write(text)
            else:
                stdout.write(text)
            return 0
        g = parse_edge_list(_read(args.file))
        report = {"version": __version__, "command": args.command, **COMMANDS[args.command](g, tol),
                  "tolerances": {"tol": tol}}
        report = _clean(report)
        if args.format == "json":
            stdout.write(json.dumps(report, indent=2) + "\n")
        else:
            stdout.write(_render_text(args.command, report))
        return 0
    except DbrgError as exc:
        record = _clean(exc.record())
        if args.format == "json":
            stdout.write(json.dumps({"version": __version__, "error": record}, indent=2) + "\n")
        else:
            stdout.write(_error_text(record))
        return 2 if isinstance(exc, AnalysisError) else 1


def main(argv=None) -> None:
    sys.exit(run(argv))
