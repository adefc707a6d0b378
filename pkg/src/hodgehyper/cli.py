"""Command-line frontend: ``hodgehyper {betti,hodge,spectra,validate-weight,from-digraph,suite}``.

Exit status is 0 when every requested check passes, 1 when some check fails,
2 on unreadable input or an invalid weight.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

import numpy as np

from .chains import (InvalidWeight, TrivialWeight, Weight, WeightedHypergraph, ZeroWeight,
                     parse_weight, random_evaluation_weight, weight_violation)
from .hodge import InternalInconsistency, degree_report, embedded_homology, harmonic_space, laplacian
from .hypergraph import (CyclicDigraph, Hypergraph, HypergraphError, digraph_to_hypergraph,
                         format_hypergraph, format_simplex, parse_digraph, random_hypergraph,
                         read_hypergraph)
from .spectra import spectrum, verify_spectral_suite

CSV_COLUMNS = ["n", "betti_embedded", "betti_complex", "dim_common", "dim_ker_s", "dim_coker_s"]
INTEGER_FIELDS = ["betti_embedded", "betti_complex", "dim_common", "dim_ker_s_star", "dim_coker_s_star",
                  "summand_dims_ambient", "summand_dims_sup"]


class UsageError(Exception):
    pass


@dataclass
class AnalysisConfig:
    input_path: str | None = None
    weight_path: str | None = None
    degrees: str = "all"
    backend: str = "exact"
    output: str = "json"
    seed: int = 0
    suite: str = "all"
    bases: bool = False


def load_weight(path: str | None) -> Weight:
    if not path:
        return TrivialWeight()
    try:
        with open(path) as f:
            return parse_weight(json.load(f))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read weight file {path}: {exc}") from None


def check_weight(h: Hypergraph, phi: Weight) -> None:
    bad = weight_violation(h, phi)
    if bad is not None:
        s, i, j = bad
        raise InvalidWeight(f"weight identity fails at sigma={{{format_simplex(s)}}}, i={i}, j={j}")


def parse_degrees(spec: str, top: int) -> list[int]:
    if spec in ("all", ""):
        return list(range(top + 1))
    out: list[int] = []
    for part in spec.split(","):
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    bad = [n for n in out if n < 0 or n > top]
    if bad:
        raise UsageError(f"degrees {bad} outside [0, {top}]")
    return sorted(set(out))


def _load(cfg: AnalysisConfig) -> tuple[Hypergraph, Weight]:
    if not cfg.input_path:
        raise UsageError("--input is required")
    try:
        h = read_hypergraph(cfg.input_path)
    except (OSError, HypergraphError) as exc:
        raise UsageError(f"cannot read hypergraph {cfg.input_path}: {exc}") from None
    phi = load_weight(cfg.weight_path)
    check_weight(h, phi)
    return h, phi


def _backends(cfg: AnalysisConfig) -> list[bool]:
    return {"exact": [True], "float": [False], "both": [True, False]}[cfg.backend]


def _agreement(records: list[list[dict]], fields: list[str]) -> list[dict]:
    """Checks that the integer fields of every backend match the first one."""
    if len(records) < 2:
        return []
    same = all(a.get(k) == b.get(k) for a, b in zip(records[0], records[1]) for k in fields)
    return [{"name": "backend_agreement", "pass": same}]


# ------------------------------------------------------------------ commands

def cmd_betti(cfg: AnalysisConfig) -> tuple[dict, bool]:
    h, phi = _load(cfg)
    runs = []
    ok = True
    for exact in _backends(cfg):
        wh = WeightedHypergraph(h, phi, exact)
        rows = []
        for n in parse_degrees(cfg.degrees, wh.top_dim):
            try:
                rep = embedded_homology(wh, n)
                rows.append({"n": n, "betti_embedded": rep.betti_embedded, "betti_complex": rep.betti_complex,
                             "ker_inf_dim": rep.ker_inf_dim, "ker_sup_dim": rep.ker_sup_dim,
                             "checks": [{"name": "triple_agreement", "pass": True}]})
            except InternalInconsistency as exc:
                ok = False
                rows.append({"n": n, "error": str(exc), "checks": [{"name": "triple_agreement", "pass": False}]})
        runs.append(rows)
    agree = _agreement(runs, ["betti_embedded", "betti_complex", "ker_inf_dim", "ker_sup_dim"])
    ok = ok and all(c["pass"] for c in agree)
    return {"backend": cfg.backend, "degrees": runs[0], "checks": agree}, ok


def cmd_hodge(cfg: AnalysisConfig) -> tuple[dict, bool]:
    h, phi = _load(cfg)
    runs = []
    for exact in _backends(cfg):
        wh = WeightedHypergraph(h, phi, exact)
        rows = []
        for n in parse_degrees(cfg.degrees, wh.top_dim):
            row = degree_report(wh, n).to_json()
            if cfg.bases:
                row["harmonic_bases"] = _harmonic_bases(wh, n)
            rows.append(row)
        runs.append(rows)
    agree = _agreement(runs, INTEGER_FIELDS)
    ok = all(c["pass"] for rows in runs for r in rows for c in r["checks"]) and all(c["pass"] for c in agree)
    return {"backend": cfg.backend, "degrees": runs[0], "checks": agree}, ok


def _harmonic_bases(wh: WeightedHypergraph, n: int) -> dict:
    """Harmonic basis vectors per carrier as {simplex: coefficient} maps, reduced echelon form when exact."""
    out = {}
    simplices = [format_simplex(s) for s in wh.basis(n).simplices]
    for carrier in ("ambient", "inf", "sup"):
        basis = harmonic_space(wh, n, carrier=carrier).basis
        vecs = []
        for col in basis.T:
            vecs.append({s: str(c) if wh.exact else float(c) for s, c in zip(simplices, col) if c != 0})
        out[carrier] = vecs
    return out


def cmd_spectra(cfg: AnalysisConfig) -> tuple[dict, bool]:
    h, phi = _load(cfg)
    exact = cfg.backend != "float"
    wh = WeightedHypergraph(h, phi, exact)
    rows = []
    ok = True
    for n in parse_degrees(cfg.degrees, wh.top_dim):
        spectra = {carrier: {which: spectrum(laplacian(wh, n, carrier=carrier), which).to_json()
                             for which in ("full", "up", "down")}
                   for carrier in ("ambient", "inf", "sup")}
        relations = [r.to_json() for r in verify_spectral_suite(wh, n)]
        ok = ok and all(r["status"] != "fail" for r in relations)
        rows.append({"n": n, "spectra": spectra, "relations": relations})
    return {"backend": "exact" if exact else "float", "degrees": rows}, ok


def cmd_validate_weight(cfg: AnalysisConfig) -> tuple[dict, bool]:
    if not cfg.input_path:
        raise UsageError("--input is required")
    try:
        h = read_hypergraph(cfg.input_path)
    except (OSError, HypergraphError) as exc:
        raise UsageError(f"cannot read hypergraph {cfg.input_path}: {exc}") from None
    phi = load_weight(cfg.weight_path)
    bad = weight_violation(h, phi)
    if bad is None:
        return {"valid": True}, True
    s, i, j = bad
    return {"valid": False, "sigma": format_simplex(s), "i": i, "j": j}, False


def run_suite(count: int, vertices: int, max_dim: int, p: float, seed: int, suite: str) -> tuple[dict, bool]:
    """Random hypergraphs, each analysed under the trivial, a random evaluation, and the zero weight."""
    failures: dict[str, int] = {}
    evaluated = 0
    for k in range(count):
        h = random_hypergraph(vertices, max_dim, p, seed + k)
        rng = np.random.default_rng(seed + k)
        for phi in (TrivialWeight(), random_evaluation_weight(h, rng), ZeroWeight()):
            wh = WeightedHypergraph(h, phi)
            for n in range(wh.top_dim + 1):
                evaluated += 1
                if suite in ("diagram", "all"):
                    for c in degree_report(wh, n).checks:
                        if not c.passed:
                            failures[c.name] = failures.get(c.name, 0) + 1
                if suite in ("spectral", "all"):
                    for r in verify_spectral_suite(wh, n):
                        if r.status == "fail":
                            failures[r.relation_name] = failures.get(r.relation_name, 0) + 1
    params = {"count": count, "vertices": vertices, "max_dim": max_dim, "p": p, "seed": seed, "suite": suite}
    return {"parameters": params, "degree_runs": evaluated, "failures": dict(sorted(failures.items()))}, not failures


# ------------------------------------------------------------------- output

def _csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in report.get("degrees", []):
        w.writerow([r.get("n"), r.get("betti_embedded"), r.get("betti_complex"), r.get("dim_common", ""),
                    r.get("dim_ker_s_star", ""), r.get("dim_coker_s_star", "")])
    return buf.getvalue()


def _text(report: dict) -> str:
    lines = []
    for r in report.get("degrees", []):
        head = f"n={r['n']}"
        for key in ("betti_embedded", "betti_complex", "dim_common", "dim_ker_s_star", "dim_coker_s_star",
                    "summand_dims_ambient", "summand_dims_sup"):
            if key in r:
                head += f"  {key}={r[key]}"
        lines.append(head)
        for c in r.get("checks", []):
            lines.append(f"  {'PASS' if c['pass'] else 'FAIL'}  {c['name']}")
        for rel in r.get("relations", []):
            lines.append(f"  {rel['status'].upper():7s} {rel['relation_name']}")
    for c in report.get("checks", []):
        lines.append(f"{'PASS' if c['pass'] else 'FAIL'}  {c['name']}")
    for key in ("valid", "sigma", "i", "j", "parameters", "degree_runs", "failures"):
        if key in report:
            lines.append(f"{key}: {report[key]}")
    return "\n".join(lines) + "\n"


def emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(report, indent=2) + "\n")
    elif fmt == "csv":
        out.write(_csv(report))
    else:
        out.write(_text(report))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hodgehyper", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", required=True, help="hypergraph file, one hyperedge per line")
        p.add_argument("--weight", help="weight JSON file (default: trivial weight)")
        p.add_argument("--degrees", default="all", help='e.g. "1", "0-2", "0,2" or "all"')
        p.add_argument("--backend", choices=["exact", "float", "both"], default="exact")
        p.add_argument("--output", choices=["json", "csv", "text"], default="json")
        p.add_argument("--seed", type=int, default=0, help="seed for any randomized step (reports are deterministic)")

    parsers = {name: sub.add_parser(name) for name in ("betti", "hodge", "spectra", "validate-weight")}
    for p in parsers.values():
        common(p)
    parsers["hodge"].add_argument("--bases", action="store_true", help="include harmonic bases in the report")

    dg = sub.add_parser("from-digraph", help="write the allowed-path hypergraph of an acyclic digraph")
    dg.add_argument("--input", required=True, help="digraph file, one 'a -> b' per line")
    dg.add_argument("--max-len", type=int, default=None, help="longest path length (default: #vertices - 1)")
    dg.add_argument("--out", default=None, help="output path (default: stdout)")

    st = sub.add_parser("suite", help="run the identity checks on random hypergraphs")
    st.add_argument("--count", type=int, default=100)
    st.add_argument("--vertices", type=int, default=6)
    st.add_argument("--max-dim", type=int, default=3)
    st.add_argument("--p", type=float, default=0.3)
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--suite", choices=["diagram", "spectral", "all"], default="all")
    st.add_argument("--output", choices=["json", "text"], default="json")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "from-digraph":
            try:
                with open(args.input) as f:
                    g = parse_digraph(f.read())
            except (OSError, HypergraphError) as exc:
                raise UsageError(f"cannot read digraph {args.input}: {exc}") from None
            max_len = args.max_len if args.max_len is not None else max(len(g.vertices) - 1, 0)
            text = format_hypergraph(digraph_to_hypergraph(g, max_len))
            if args.out:
                with open(args.out, "w") as f:
                    f.write(text)
            else:
                sys.stdout.write(text)
            return 0
        if args.command == "suite":
            report, ok = run_suite(args.count, args.vertices, args.max_dim, args.p, args.seed, args.suite)
            emit(report, args.output)
            return 0 if ok else 1
        cfg = AnalysisConfig(args.input, args.weight, args.degrees, args.backend, args.output,
                             seed=args.seed, bases=getattr(args, "bases", False))
        handler = {"betti": cmd_betti, "hodge": cmd_hodge, "spectra": cmd_spectra,
                   "validate-weight": cmd_validate_weight}[args.command]
        report, ok = handler(cfg)
        emit(report, cfg.output)
        return 0 if ok else 1
    except CyclicDigraph as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("cycle: " + " ".join(map(str, exc.cycle)), file=sys.stderr)
        return 1
    except (UsageError, InvalidWeight) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
