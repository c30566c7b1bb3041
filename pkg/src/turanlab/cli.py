"""Command-line front end.

Subcommands: formula, construct, partition, verify, shift, rainbow.

Exit codes: 0 success; 1 verify found a disagreement; 2 invalid arguments or
malformed input; 3 hypothesis violated under --strict; 4 inconclusive point
under --require-conclusive.

Reports are written atomically (tmp file + rename).  The JSON report contains
no timing, so identical configs reproduce byte-identical files; the CSV adds
a millis column per point.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import itertools
import json
import multiprocessing
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from . import formulas, solvers
from .constructions import (
    g_construction,
    h1_construction,
    h2_construction,
    matching_partition,
)
from .hypercore import MultipartiteHypergraph, Shape, hypergraph_from_json, hypergraph_to_json
from .rainbow import ColoredHypergraph, find_rainbow_matching
from .shifting import stabilize

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_USAGE = 2
EXIT_HYPOTHESIS = 3
EXIT_INCONCLUSIVE = 4

THEOREMS = ("thm11", "thm12", "thm13", "thm14", "thm15", "thm16", "lemma21")


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# verify sweeps
# ---------------------------------------------------------------------------

@dataclass
class SweepConfig:
    theorem: str
    r_values: tuple[int, ...] = (2, 3)
    s_values: Optional[tuple[int, ...]] = None
    clique_sizes: Optional[tuple[int, ...]] = None
    max_size: int = 2
    k_max: Optional[int] = None  # None: k runs up to n_1
    node_budget: int = solvers.DEFAULT_NODE_BUDGET
    jobs: int = 1
    seed: int = 0
    out: Optional[str] = None
    include_witnesses: bool = False
    require_conclusive: bool = False

    def to_json_dict(self) -> dict:
        d = asdict(self)
        for key in ("r_values", "s_values", "clique_sizes"):
            if d[key] is not None:
                d[key] = list(d[key])
        return d


def _grid_points(cfg: SweepConfig) -> list[dict]:
    """All grid points of the sweep, sorted by their key."""
    points = []
    for r in cfg.r_values:
        for sizes in itertools.combinations_with_replacement(range(1, cfg.max_size + 1), r):
            n1 = sizes[0]
            k_hi = n1 if cfg.k_max is None else cfg.k_max
            for k in range(1, k_hi + 1):
                if cfg.theorem == "thm11":
                    points.append({"s": 2, "sizes": sizes, "k": k, "t": 2, "clique_size": None})
                elif cfg.theorem == "lemma21":
                    points.append({"s": r, "sizes": sizes, "k": k, "t": r, "clique_size": None})
                elif cfg.theorem == "thm12":
                    points.append({"s": 2, "sizes": sizes, "k": k, "t": r, "clique_size": None})
                elif cfg.theorem in ("thm13", "thm14"):
                    t_of = (lambda s: s) if cfg.theorem == "thm13" else (lambda s: r)
                    for s in cfg.s_values or range(2, r + 1):
                        if 2 <= s <= r:
                            points.append(
                                {"s": s, "sizes": sizes, "k": k, "t": t_of(s), "clique_size": None}
                            )
                elif cfg.theorem in ("thm15", "thm16"):
                    for sq in cfg.clique_sizes or range(2, r + 1):
                        if 2 <= sq <= r:
                            points.append(
                                {"s": 2, "sizes": sizes, "k": k, "t": r, "clique_size": sq}
                            )
                else:
                    raise CliError(f"unknown theorem {cfg.theorem!r}; expected one of {THEOREMS}")
    points.sort(key=_point_key)
    return points


def _point_key(p: dict) -> tuple:
    return (len(p["sizes"]), p["sizes"], p["s"], p["clique_size"] or 0, p["k"], p["t"])


def _formula_for(theorem: str, point: dict) -> int:
    sizes, k, s = point["sizes"], point["k"], point["s"]
    if theorem == "thm11":
        return formulas.thm11_value(k, sizes)
    if theorem == "lemma21":
        return formulas.lemma21_value(k, sizes)
    if theorem == "thm12":
        return formulas.thm12_value(k, sizes)
    if theorem == "thm13":
        return formulas.f_value(s, k, sizes[1:])
    if theorem == "thm14":
        return formulas.g_value(s, k, sizes)
    return formulas.h_value(point["clique_size"], k, sizes)


def _hypothesis_for(theorem: str, point: dict) -> bool:
    sizes, k = point["sizes"], point["k"]
    r = len(sizes)
    s_eff = {
        "thm11": 2,
        "thm12": 2,
        "lemma21": r,
        "thm13": point["s"],
        "thm14": point["s"],
        "thm15": point["clique_size"],
        "thm16": point["clique_size"],
    }[theorem]
    return formulas.hypothesis_check(theorem, s_eff, r, k, sizes)


def _run_point(task: tuple) -> dict:
    theorem, point, node_budget, include_witness = task
    sizes, k, s, t = point["sizes"], point["k"], point["s"], point["t"]
    shape = Shape(r=len(sizes), s=s, sizes=sizes)
    t0 = time.perf_counter()
    if point["clique_size"] is None:
        rep = solvers.max_edges_free(shape, k, t, node_budget=node_budget)
    else:
        rep = solvers.max_cliques_free(
            shape, k, point["clique_size"], t, node_budget=node_budget
        )
    millis = int((time.perf_counter() - t0) * 1000)
    formula_value = _formula_for(theorem, point)
    hyp = _hypothesis_for(theorem, point)
    witness_json = hypergraph_to_json(rep.witness)
    digest = hashlib.sha256(
        json.dumps(witness_json, sort_keys=True).encode()
    ).hexdigest()
    record = {
        "theorem": theorem,
        "s": s,
        "r": len(sizes),
        "sizes": list(sizes),
        "k": k,
        "t": t,
        "clique_size": point["clique_size"],
        "formula": formula_value,
        "oracle": rep.optimum,
        "conclusive": rep.conclusive,
        "agree": bool(rep.conclusive and rep.optimum == formula_value),
        "hypothesis_ok": hyp,
        "nodes": rep.nodes_explored,
        "witness_digest": digest,
        "millis": millis,
    }
    if include_witness:
        record["witness"] = witness_json
    return record


def run_sweep(cfg: SweepConfig) -> dict:
    """Execute the sweep and return the full report dict (points sorted)."""
    points = _grid_points(cfg)
    tasks = [(cfg.theorem, p, cfg.node_budget, cfg.include_witnesses) for p in points]
    if cfg.jobs > 1 and len(tasks) > 1:
        with multiprocessing.Pool(cfg.jobs) as pool:
            records = pool.map(_run_point, tasks)
    else:
        records = [_run_point(t) for t in tasks]
    records.sort(key=lambda rec: _point_key(
        {"sizes": tuple(rec["sizes"]), "s": rec["s"], "clique_size": rec["clique_size"],
         "k": rec["k"], "t": rec["t"]}
    ))
    summary = {
        "total": len(records),
        "agree": sum(1 for rec in records if rec["hypothesis_ok"] and rec["agree"]),
        "disagree": sum(
            1
            for rec in records
            if rec["hypothesis_ok"] and rec["conclusive"] and not rec["agree"]
        ),
        "hypothesis_skipped": sum(1 for rec in records if not rec["hypothesis_ok"]),
        "inconclusive": sum(1 for rec in records if not rec["conclusive"]),
    }
    return {"config": cfg.to_json_dict(), "points": records, "summary": summary}


def _write_atomic(path: str, payload: str) -> None:
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(payload)
    os.replace(tmp, path)


def _write_report(report: dict, out: str) -> None:
    json_points = [
        {key: val for key, val in rec.items() if key != "millis"}
        for rec in report["points"]
    ]
    json_report = {"config": report["config"], "points": json_points, "summary": report["summary"]}
    _write_atomic(out + ".json", json.dumps(json_report, indent=2, sort_keys=True) + "\n")

    import io

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(
        ["theorem", "s", "r", "sizes", "k", "t", "clique_size", "formula", "oracle",
         "agree", "hypothesis_ok", "conclusive", "nodes", "millis"]
    )
    for rec in report["points"]:
        writer.writerow(
            [rec["theorem"], rec["s"], rec["r"], "x".join(map(str, rec["sizes"])),
             rec["k"], rec["t"], rec["clique_size"] if rec["clique_size"] is not None else "",
             rec["formula"], rec["oracle"], int(rec["agree"]), int(rec["hypothesis_ok"]),
             int(rec["conclusive"]), rec["nodes"], rec["millis"]]
        )
    _write_atomic(out + ".csv", buf.getvalue())


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x != "")
    except ValueError as exc:
        raise CliError(f"bad {what}: {text!r}") from exc


def _emit(obj, out: Optional[str]) -> None:
    payload = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        _write_atomic(out, payload)
    else:
        sys.stdout.write(payload)


def cmd_formula(args: argparse.Namespace) -> int:
    sizes = _parse_int_list(args.sizes, "--sizes") if args.sizes else None
    try:
        result = formulas.evaluate(
            args.which, s=args.s, k=args.k, sizes=sizes, n=args.n, r=args.r
        )
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    if args.strict and result.hypothesis_ok is False:
        sys.stderr.write("hypothesis violated for the requested point\n")
        _emit(result.to_json_dict(), args.out)
        return EXIT_HYPOTHESIS
    _emit(result.to_json_dict(), args.out)
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    sizes = _parse_int_list(args.sizes, "--sizes")
    try:
        shape = Shape(r=len(sizes), s=args.s, sizes=sizes)
        builder = {"h1": h1_construction, "h2": h2_construction, "g": g_construction}[args.which]
        graph = builder(shape, args.k)
    except (KeyError, ValueError) as exc:
        raise CliError(str(exc)) from exc
    _emit(hypergraph_to_json(graph), args.out)
    return EXIT_OK


def cmd_partition(args: argparse.Namespace) -> int:
    sizes = _parse_int_list(args.sizes, "--sizes")
    try:
        shape = Shape(r=len(sizes), s=len(sizes), sizes=sizes)
        part = matching_partition(shape)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _emit(part.to_json_dict(), args.out)
    return EXIT_OK


def _load_json_input(path: str) -> dict:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read input {path!r}: {exc}") from exc


def cmd_shift(args: argparse.Namespace) -> int:
    data = _load_json_input(args.input)
    try:
        H = hypergraph_from_json(data)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    trace = stabilize(H)
    _emit(trace.to_json_dict(), args.out)
    return EXIT_OK


def cmd_rainbow(args: argparse.Namespace) -> int:
    data = _load_json_input(args.input)
    try:
        C = ColoredHypergraph.from_json_dict(data)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    got = find_rainbow_matching(C, args.k)
    if got is None:
        _emit({"k": args.k, "matching": None}, args.out)
    else:
        _emit(
            {
                "k": args.k,
                "matching": [
                    {"edge": [[v.part, v.index] for v in e], "color": c} for e, c in got
                ],
            },
            args.out,
        )
    return EXIT_OK


def _load_config_file(path: str) -> dict:
    if path.endswith(".toml"):
        try:
            import tomllib  # Python 3.11+
        except ImportError as exc:
            raise CliError(
                "TOML configs need Python 3.11+ (tomllib); use a JSON config instead"
            ) from exc
        try:
            with open(path, "rb") as fh:
                return tomllib.load(fh)
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise CliError(f"cannot read config {path!r}: {exc}") from exc
    return _load_json_input(path)


def cmd_verify(args: argparse.Namespace) -> int:
    raw: dict = {}
    if args.config:
        raw.update(_load_config_file(args.config))
    overrides = {
        "theorem": args.theorem,
        "r_values": _parse_int_list(args.r, "--r") if args.r else None,
        "s_values": _parse_int_list(args.s, "--s") if args.s else None,
        "clique_sizes": _parse_int_list(args.clique_sizes, "--clique-sizes")
        if args.clique_sizes
        else None,
        "max_size": args.max_size,
        "k_max": args.k_max,
        "node_budget": args.node_budget,
        "jobs": args.jobs,
        "seed": args.seed,
        "out": args.out,
        "include_witnesses": args.witnesses or None,
        "require_conclusive": args.require_conclusive or None,
    }
    raw.update({key: val for key, val in overrides.items() if val is not None})
    if "theorem" not in raw:
        raise CliError("verify needs --theorem or a config with one")
    for key in ("r_values", "s_values", "clique_sizes"):
        if raw.get(key) is not None:
            raw[key] = tuple(raw[key])
    known = set(SweepConfig.__dataclass_fields__)
    unknown = set(raw) - known
    if unknown:
        raise CliError(f"unknown config keys: {sorted(unknown)}")
    cfg = SweepConfig(**raw)
    if cfg.theorem not in THEOREMS:
        raise CliError(f"unknown theorem {cfg.theorem!r}; expected one of {THEOREMS}")
    if cfg.jobs < 1:
        raise CliError(f"--jobs must be >= 1, got {cfg.jobs}")

    report = run_sweep(cfg)
    if cfg.out:
        _write_report(report, cfg.out)
    else:
        json_points = [
            {key: val for key, val in rec.items() if key != "millis"}
            for rec in report["points"]
        ]
        _emit({"config": report["config"], "points": json_points, "summary": report["summary"]}, None)

    summary = report["summary"]
    sys.stderr.write(
        f"verify {cfg.theorem}: {summary['total']} points, "
        f"{summary['agree']} agree, {summary['disagree']} disagree, "
        f"{summary['hypothesis_skipped']} outside hypothesis, "
        f"{summary['inconclusive']} inconclusive\n"
    )
    if summary["disagree"]:
        for rec in report["points"]:
            if rec["hypothesis_ok"] and rec["conclusive"] and not rec["agree"]:
                sys.stderr.write(f"counterexample: {json.dumps(rec, sort_keys=True)}\n")
        return EXIT_DISAGREE
    if cfg.require_conclusive and summary["inconclusive"]:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _default_jobs() -> int:
    env = os.environ.get("TURANLAB_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="turanlab",
        description="Verification workbench for disjoint-clique extremal problems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("formula", help="evaluate a closed-form value")
    p.add_argument("--which", required=True,
                   choices=["f", "g", "h", "thm11", "thm12", "lemma21", "emc", "rainbow-bound"])
    p.add_argument("--s", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--sizes", help="full host sizes n_1..n_r, comma separated")
    p.add_argument("--n", type=int, help="ground-set size (emc only)")
    p.add_argument("--r", type=int, help="part count (rainbow-bound only)")
    p.add_argument("--strict", action="store_true",
                   help="exit 3 when the theorem hypothesis fails")
    p.add_argument("--out")
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("construct", help="emit an extremal construction as JSON")
    p.add_argument("--which", required=True, choices=["h1", "h2", "g"])
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sizes", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("partition", help="cyclic matching partition of the s=r host")
    p.add_argument("--sizes", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("verify", help="sweep oracle vs formula over a grid")
    p.add_argument("--theorem", choices=list(THEOREMS))
    p.add_argument("--config", help="JSON (or TOML on 3.11+) config file")
    p.add_argument("--r", help="part counts, e.g. 2,3,4")
    p.add_argument("--s", help="uniformities for thm13/thm14")
    p.add_argument("--clique-sizes", help="objective clique orders for thm15/thm16")
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--node-budget", type=int, default=None)
    p.add_argument("--jobs", type=int, default=_default_jobs())
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", help="report path prefix (writes .json and .csv)")
    p.add_argument("--witnesses", action="store_true",
                   help="embed full witnesses instead of digests only")
    p.add_argument("--require-conclusive", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("shift", help="stabilize a hypergraph, print the trace")
    p.add_argument("--input", required=True, help="hypergraph JSON file, or - for stdin")
    p.add_argument("--out")
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("rainbow", help="search a rainbow matching in a coloured hypergraph")
    p.add_argument("--input", required=True, help="coloured hypergraph JSON file, or - for stdin")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_rainbow)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
