"""Command-line front end.

    occult [--config FILE] [--threads N] generate FAMILY [params] [--out DIR]
    occult check NAME --graph G [--witness W] [params]
    occult extract PROCEDURE --graph G [--witness W] [params] [--out DIR]
    occult treewidth --graph G [--node-limit N] [--out DIR]

A JSON report goes to stdout and a one-line summary to stderr.  Exit codes:
0 ok, 1 property refuted (or extraction insufficient), 2 indeterminate
(budget exhausted), 3 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import tomli

from . import __version__, fixtures, generators as gen
from .asterism import (OrderedAsterism, Violation, interruption_failures, invasion_failures, is_d_ample,
                       is_d_meager, is_syzygy, min_route_length, occultation_violation,
                       validate_asterism)
from .detectors import (Gemini, NotPerforated, Perforated, contains_biclique, contains_clique,
                        is_perforated, validate_constellation, validate_gemini, verify_cycle_packing)
from .extraction import (ExtractionError, VertexCover, asterism_to_syzygy_or_constellation,
                         gemini_to_cycles, interrupted_to_occultation, matching_or_cover)
from .graph import Graph, GraphError, cycle_graph, dumps, path_graph
from .treewidth import TreeDecomposition, exact_treewidth, verify_decomposition

OK, REFUTED, INDETERMINATE, USAGE = 0, 1, 2, 3
BUDGET_ENV = "OCCULT_BUDGET"
DEFAULT_BUDGET = 10 ** 6


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


# file helpers

def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_graph(path: str | None) -> Graph:
    if not path:
        raise UsageError("--graph is required")
    try:
        return Graph.from_dict(_read_json(path))
    except GraphError as exc:
        raise UsageError(str(exc)) from exc


def _need_witness(args) -> object:
    if not args.witness:
        raise UsageError("--witness is required for this command")
    return _read_json(args.witness)


def _asterism(g: Graph, data) -> OrderedAsterism | Violation:
    try:
        S, L = [int(v) for v in data["S"]], [int(v) for v in data["L"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"asterism witness needs integer lists S and L ({exc})") from exc
    return validate_asterism(g, S, L)


def _gemini(g: Graph, data) -> Gemini:
    try:
        a1 = OrderedAsterism(g, tuple(data["g1"]["S"]), tuple(data["g1"]["L"]))
        a2 = OrderedAsterism(g, tuple(data["g2"]["S"]), tuple(data["g2"]["L"]))
        Q = tuple(tuple(int(v) for v in q) for q in data["Q"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"gemini witness needs g1, g2 and Q ({exc})") from exc
    return Gemini(a1, a2, Q)


def _write_out(out: str | None, files: dict[str, str]) -> list[str]:
    if not out:
        return []
    d = Path(out)
    d.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (d / name).write_text(text)
    return [str(d / name) for name in files]


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        label = getattr(args, "family", None) or getattr(args, "name", None) or getattr(args, "procedure", "")
        raise UsageError(f"{label}: missing "
                         + ", ".join("--" + m.replace("_", "-") for m in missing))


# generate

def _gen_family(args) -> tuple[Graph, dict | None]:
    f = args.family
    seed = args.seed
    if f == "occultation":
        _need(args, "s")
        g, a = gen.occultation(args.s)
        return g, a.to_dict()
    if f == "full-occultation":
        _need(args, "s")
        g, a = gen.random_full_occultation(args.s, args.o or 1, seed)
        return g, a.to_dict()
    if f == "interrupted":
        _need(args, "r")
        g, a = gen.random_interrupted_asterism(args.r, seed, d=args.d if args.d is not None else 2)
        return g, a.to_dict()
    if f == "ample-interrupted":
        _need(args, "s", "d")
        g, a = gen.ample_interrupted_asterism(args.s, args.d)
        return g, a.to_dict()
    if f == "meager":
        _need(args, "n", "d")
        g, a = gen.random_meager_asterism(args.n, args.d, seed)
        return g, a.to_dict()
    if f == "syzygy":
        _need(args, "a")
        g, a = gen.syzygy(args.a, seed=seed)
        return g, a.to_dict()
    if f == "gemini":
        _need(args, "g")
        g, gm = gen.gemini(args.g, args.o or 1, seed)
        return g, gm.to_dict()
    if f == "constellation":
        _need(args, "s", "l")
        g, c = gen.constellation(args.s, args.l, seed=seed, plain=not args.non_plain)
        return g, c.to_dict()
    if f == "five-asterism":
        a = fixtures.five_asterism()
        return a.graph, a.to_dict()
    if f == "wall":
        _need(args, "t")
        return gen.wall(args.t), None
    if f == "complete":
        _need(args, "t")
        return gen.complete(args.t), None
    if f == "biclique":
        _need(args, "t")
        return gen.complete_bipartite(args.t, args.t), None
    if f == "cycle":
        _need(args, "n")
        return cycle_graph(args.n), None
    if f == "path":
        _need(args, "n")
        return path_graph(args.n), None
    raise UsageError(f"unknown family {f!r}")


FAMILIES = ["occultation", "full-occultation", "interrupted", "ample-interrupted", "meager", "syzygy",
            "gemini", "constellation", "five-asterism", "wall", "complete", "biclique", "cycle", "path"]


def cmd_generate(args) -> tuple[int, dict, str]:
    try:
        g, witness = _gen_family(args)
    except gen.GenerationError as exc:
        raise UsageError(str(exc)) from exc
    files = {"graph.json": g.to_json(), "graph.dot": g.to_dot()}
    if witness is not None:
        files["witness.json"] = dumps(witness)
    written = _write_out(args.out, files)
    report = {"family": args.family, "n": g.n, "m": g.m, "seed": gen.parse_seed(args.seed),
              "graph": g.to_dict(), "witness": witness, "files": written}
    return OK, report, f"{args.family}: {g.n} vertices, {g.m} edges"


# check

CHECKS = ["asterism", "full-occultation", "occultation", "ample", "interrupted", "invaded", "meager",
          "syzygy", "perforated", "clique-free", "biclique-free", "constellation", "gemini",
          "cycle-packing", "decomposition"]


def _verdict(ok: bool, report: dict, what: str) -> tuple[int, dict, str]:
    report["holds"] = ok
    return (OK if ok else REFUTED), report, f"{what}: {'holds' if ok else 'refuted'}"


def cmd_check(args) -> tuple[int, dict, str]:
    g = _load_graph(args.graph)
    name = args.name
    rep: dict = {"check": name}
    if name == "perforated":
        c, o = args.c or 2, args.o or 1
        v = is_perforated(g, c, o, args.budget)
        rep.update(v.to_dict())
        if isinstance(v, Perforated):
            return OK, rep, f"({c},{o})-perforated"
        if isinstance(v, NotPerforated):
            return REFUTED, rep, f"not ({c},{o})-perforated: {len(v.witness)} cycles found"
        return INDETERMINATE, rep, f"indeterminate: {v.reason}"
    if name in ("clique-free", "biclique-free"):
        _need(args, "t")
        res = (contains_clique if name == "clique-free" else contains_biclique)(g, args.t)
        rep["witness"] = res.witness
        return _verdict(not res.found, rep, f"{name} t={args.t}")
    if name == "decomposition":
        if not args.witness:
            raise UsageError("--witness (a .td or decomposition JSON file) is required")
        try:
            text = Path(args.witness).read_text()
            td = TreeDecomposition.from_pace(text)[0] if not text.lstrip().startswith("{") \
                else TreeDecomposition.from_dict(json.loads(text))
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read decomposition: {exc}") from exc
        res = verify_decomposition(g, td)
        if isinstance(res, Violation):
            rep["violation"] = res.to_dict()
            return _verdict(False, rep, "decomposition")
        rep["width"] = res
        return _verdict(True, rep, f"decomposition of width {res}")
    data = _need_witness(args)
    if name == "cycle-packing":
        cycles = [list(map(int, cy)) for cy in data]
        bad = verify_cycle_packing(g, cycles, args.o or 1)
        rep["violation"] = bad.to_dict() if bad is not None else None
        return _verdict(bad is None, rep, "cycle packing")
    if name == "constellation":
        bad = validate_constellation(g, data["S"], [tuple(p) for p in data["paths"]], require_plain=args.plain)
        rep["violation"] = bad.to_dict() if bad is not None else None
        return _verdict(bad is None, rep, "plain constellation" if args.plain else "constellation")
    if name == "gemini":
        bad = validate_gemini(g, _gemini(g, data))
        rep["violation"] = bad.to_dict() if bad is not None else None
        return _verdict(bad is None, rep, "gemini")
    a = _asterism(g, data)
    if isinstance(a, Violation):
        rep["violation"] = a.to_dict()
        return _verdict(False, rep, "asterism")
    if name == "asterism":
        return _verdict(True, rep, "asterism")
    if name == "full-occultation":
        o = args.o or 1
        ample = is_d_ample(a, 1)
        intr = [{"i": i, "piece": list(P.path)} for i, P in interruption_failures(a)]
        inv = [{"i": i, "piece": list(P.path)} for i, P in invasion_failures(a, o)]
        rep.update({"o": o, "ample": ample, "interruption_failures": intr, "invasion_failures": inv})
        return _verdict(ample and not intr and not inv, rep, f"full ({a.s},{o})-occultation")
    if name == "occultation":
        bad = occultation_violation(a)
        rep["violation"] = bad.to_dict() if bad is not None else None
        return _verdict(bad is None, rep, "occultation")
    if name == "ample":
        d = args.d if args.d is not None else 1
        rep.update({"d": d, "min_route_length": min_route_length(a)})
        rep["min_route_length"] = None if rep["min_route_length"] == float("inf") else rep["min_route_length"]
        return _verdict(is_d_ample(a, d), rep, f"{d}-ample")
    if name == "interrupted":
        fails = [{"i": i, "piece": list(P.path)} for i, P in interruption_failures(a)]
        rep["failures"] = fails
        return _verdict(not fails, rep, "interrupted")
    if name == "invaded":
        o = args.o or 1
        fails = [{"i": i, "piece": list(P.path)} for i, P in invasion_failures(a, o)]
        rep.update({"o": o, "failures": fails})
        return _verdict(not fails, rep, f"{o}-invaded")
    if name == "meager":
        _need(args, "d")
        return _verdict(is_d_meager(a, args.d), rep, f"{args.d}-meager")
    if name == "syzygy":
        return _verdict(is_syzygy(a), rep, "syzygy")
    raise UsageError(f"unknown check {name!r}")


# extract

PROCEDURES = ["occultation", "syzygy-or-constellation", "gemini-cycles", "matching-or-cover"]


def cmd_extract(args) -> tuple[int, dict, str]:
    g = _load_graph(args.graph)
    proc = args.procedure
    try:
        if proc == "matching-or-cover":
            res = matching_or_cover(g, args.c or 1)
            if isinstance(res, VertexCover):
                report = {"kind": "VertexCover", "witness": list(res.vertices)}
            else:
                report = {"kind": "Matching", "witness": [list(e) for e in res.edges]}
            code, summary = OK, f"{report['kind']} of size {len(report['witness'])}"
        elif proc == "gemini-cycles":
            cycles = gemini_to_cycles(_gemini(g, _need_witness(args)), args.c or 1, args.o or 1)
            report = {"kind": "CyclePacking", "witness": [list(cy) for cy in cycles]}
            code, summary = OK, f"{len(cycles)} cycles, lengths {[len(cy) for cy in cycles]}"
        else:
            a = _asterism(g, _need_witness(args))
            if isinstance(a, Violation):
                raise UsageError(f"witness is not an asterism ({a.clause}: {a.detail})")
            if proc == "occultation":
                _need(args, "s")
                out = interrupted_to_occultation(g, a, args.c or 1, args.o or 1, args.s)
            elif proc == "syzygy-or-constellation":
                _need(args, "a", "l", "s", "d")
                out = asterism_to_syzygy_or_constellation(a, args.a, args.l, args.s, args.d)
            else:
                raise UsageError(f"unknown procedure {proc!r}")
            report = out.to_dict()
            code = REFUTED if out.kind == "Insufficient" else OK
            summary = out.kind
    except ExtractionError as exc:
        raise UsageError(f"precondition failed: {exc}") from exc
    report["procedure"] = proc
    report["files"] = _write_out(args.out, {"outcome.json": dumps(report)})
    return code, report, f"{proc}: {summary}"


# treewidth

def cmd_treewidth(args) -> tuple[int, dict, str]:
    g = _load_graph(args.graph)
    res = exact_treewidth(g, args.node_limit)
    report = res.to_dict()
    report["files"] = _write_out(args.out, {"decomposition.td": res.decomposition.to_pace(g.n),
                                            "decomposition.json": dumps(res.decomposition.to_dict())})
    if res.exact:
        return OK, report, f"treewidth {res.value}"
    return INDETERMINATE, report, f"treewidth in [{res.lower}, {res.upper}] (node limit reached)"


# parser and config

def _add_common(p):
    p.add_argument("--out", help="directory for output files")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="occult", description="Occultation and perforation toolkit.")
    parser.add_argument("--version", action="version", version=f"occult {__version__}")
    parser.add_argument("--config", help="TOML file of default flag values")
    parser.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; all solvers run single-threaded")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("generate", help="write a generated graph and witness")
    p.add_argument("family", choices=FAMILIES)
    for flag in ("s", "t", "o", "n", "r", "d", "a", "g", "l"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--seed", default=0, help="integer seed (decimal or 0x hex)")
    p.add_argument("--non-plain", action="store_true", help="constellation: join two paths")
    _add_common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("check", help="run a validator or detector")
    p.add_argument("name", choices=CHECKS)
    p.add_argument("--graph")
    p.add_argument("--witness")
    for flag in ("c", "o", "d", "t"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--plain", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("extract", help="run an extraction procedure")
    p.add_argument("procedure", choices=PROCEDURES)
    p.add_argument("--graph")
    p.add_argument("--witness")
    for flag in ("c", "o", "s", "a", "l", "d"):
        p.add_argument(f"--{flag}", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("treewidth", help="exact treewidth with a decomposition")
    p.add_argument("--graph")
    p.add_argument("--node-limit", type=int, default=2_000_000)
    _add_common(p)
    p.set_defaults(func=cmd_treewidth)
    return parser


def _config_defaults(parser: argparse.ArgumentParser, path: str, command: str) -> dict:
    """Flag defaults from a TOML file: top-level keys apply to every command
    that has the flag, a [command] table applies to that command only."""
    try:
        with open(path, "rb") as fh:
            data = tomli.load(fh)
    except (OSError, tomli.TOMLDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    subs = parser._subparsers._group_actions[0].choices
    dests = {name: {a.dest for a in sp._actions} for name, sp in subs.items()}
    top = {a.dest for a in parser._actions}
    anywhere = top.union(*dests.values())

    def norm(table):
        return {k.replace("-", "_"): v for k, v in table.items()}

    glob = norm({k: v for k, v in data.items() if not isinstance(v, dict)})
    unknown = sorted(set(glob) - anywhere)
    for name, table in data.items():
        if isinstance(table, dict):
            if name not in subs:
                unknown.append(f"[{name}]")
            else:
                unknown += [f"{name}.{k}" for k in sorted(set(norm(table)) - dests[name] - top)]
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(unknown)}")
    merged = {k: v for k, v in glob.items() if k in dests[command] | top}
    merged.update(norm(data.get(command, {})))
    return merged


def _default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise UsageError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise UsageError(f"{BUDGET_ENV} must be >= 1")
    return value


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version, or a usage error
        return exc.code if isinstance(exc.code, int) else USAGE
    try:
        if args.config:
            defaults = _config_defaults(parser, args.config, args.command)
            sub = parser._subparsers._group_actions[0].choices[args.command]
            sub_dests = {a.dest for a in sub._actions}
            sub.set_defaults(**{k: v for k, v in defaults.items() if k in sub_dests})
            parser.set_defaults(**{k: v for k, v in defaults.items() if k not in sub_dests})
            try:
                args = parser.parse_args(argv)
            except SystemExit as exc:
                return exc.code if isinstance(exc.code, int) else USAGE
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        if getattr(args, "budget", 0) is None:
            args.budget = _default_budget()
        code, report, summary = args.func(args)
    except UsageError as exc:
        print(dumps({"error": str(exc)}), end="")
        print(f"occult: error: {exc}", file=sys.stderr)
        return USAGE
    except (gen.GenerationError, GraphError, ValueError, KeyError, TypeError) as exc:
        # malformed parameters or witness files
        print(dumps({"error": str(exc)}), end="")
        print(f"occult: error: {exc}", file=sys.stderr)
        return USAGE
    print(dumps(report), end="")
    print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
