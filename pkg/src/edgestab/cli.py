"""Command-line entry point.

Every command prints a one-line effective-configuration header to stderr;
results go to stdout (or ``--out``) so that JSON output can be piped into the
matching ``--in`` reader.  Exit codes: 0 success, 1 operational error,
2 theorem violation, 64 usage error, 65 input parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import graph as gr
from .closure import closure_power
from .corpus import CorpusError, CorpusSpec, generate_corpus
from .decomposition import associated_primes
from .harness import ALL_CHECKS, PairLimits, report_json, run, summary_text
from .homology import FIELD, betti_numbers, depth_quotient, total_betti
from .monomial import (
    DimensionError,
    MonomialIdeal,
    edge_ideal,
    format_monomial,
    make_ideal,
    parse_monomial,
    power,
)
from .stability import StabilityReport, StabilityViolation, report

VERSION = "0.1.0"
EXIT_OK, EXIT_ERROR, EXIT_VIOLATION, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 64, 65
MAX_EXHAUSTIVE = 6
HARD_EXHAUSTIVE = 7


class UsageError(Exception):
    pass


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- input readers -------------------------------------------------------------------

def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _load_json(path: str):
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc


def read_graph(path: str) -> gr.Graph:
    """One graph: an edge-list file, a single graph6 line, or a JSON object
    with ``vertex_count`` and ``edges``."""
    text = _read_text(path)
    try:
        if text.lstrip().startswith("{"):
            return _graph_from_dict(json.loads(text))
        lines = [ln.strip() for ln in text.splitlines()
                 if ln.strip() and not ln.lstrip().startswith("#")]
        if len(lines) == 1 and len(lines[0].split()) == 1:
            return gr.from_graph6(lines[0])
        return gr.parse_edge_list(text)
    except (gr.GraphError, ValueError, KeyError, TypeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _graph_from_dict(d: dict) -> gr.Graph:
    if "graph" in d and isinstance(d["graph"], dict):
        d = d["graph"]
    return gr.Graph.from_edges(int(d["vertex_count"]), [tuple(e) for e in d["edges"]])


def _graph_dict(g: gr.Graph) -> dict:
    return {"vertex_count": g.vertex_count, "edges": [list(e) for e in g.edge_list]}


def read_ideal(path: str) -> MonomialIdeal:
    """JSON ``{"ambient": r, "generators": [[...], ...]}`` or text: first line
    ``r``, then one monomial per line such as ``x1^2*x3``."""
    text = _read_text(path)
    try:
        if text.lstrip().startswith("{"):
            return MonomialIdeal.from_json(json.loads(text))
        lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise ValueError("empty ideal file")
        r = int(lines[0])
        return make_ideal(r, [parse_monomial(ln, r) for ln in lines[1:]])
    except (ValueError, KeyError, TypeError, DimensionError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


# --- output helpers ----------------------------------------------------------------

def _emit(text: str, out: str | None):
    if not text.endswith("\n"):
        text += "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _header(args, extra: dict | None = None):
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    cfg["version"] = VERSION
    cfg["field"] = FIELD
    cfg["checks_env"] = os.environ.get("EDGESTAB_CHECKS", "1")
    if extra:
        cfg.update(extra)
    if not args.quiet:
        print("# config: " + _dump(cfg), file=sys.stderr)


def _positive(name):
    def conv(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer")
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be at least 1")
        return v
    return conv


def _nonnegative(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer")
    if v < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return v


def _source_ideal(args) -> tuple[MonomialIdeal, dict]:
    if bool(args.graph) == bool(args.ideal):
        raise UsageError("give exactly one of --graph or --ideal")
    if args.graph:
        g = read_graph(args.graph)
        return edge_ideal(g), {"graph": _graph_dict(g)}
    return read_ideal(args.ideal), {}


def _powered(I: MonomialIdeal, n: int, ordinary: bool) -> MonomialIdeal:
    return power(I, n) if ordinary else closure_power(I, n)


def _ideal_payload(C: MonomialIdeal) -> dict:
    d = C.to_json()
    d["monomials"] = [format_monomial(m) for m in C.gens]
    return d


# --- commands ---------------------------------------------------------------------

def cmd_invariants(args) -> int:
    if args.input:
        d = _load_json(args.input)
        g = _require_graph(d, args.input)
        if d.get("graph6") not in (None, gr.to_graph6(g)):
            raise ParseError(f"{args.input}: graph6 does not match the edge list")
    else:
        if not args.graph:
            raise UsageError("invariants needs --graph or --in")
        g = read_graph(args.graph)
    _header(args)
    _emit(_dump(invariants_of(g)), args.out)
    return EXIT_OK


def _require_graph(d, where) -> gr.Graph:
    try:
        return _graph_from_dict(d)
    except (gr.GraphError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{where}: {exc}") from exc


def invariants_of(g: gr.Graph) -> dict:
    if not g.edges:
        raise UsageError("the graph has no edges")
    try:
        n1 = gr.n1(g)
    except gr.GraphError:
        n1 = None
    return {
        "graph": _graph_dict(g),
        "graph6": gr.to_graph6(g),
        "components": len(g.component_vertex_sets),
        "bipartite": all(p.is_bipartite for p in g.profiles),
        "pseudoforest": gr.is_pseudoforest(g),
        "leaf_edges": gr.leaf_edge_count(g),
        "odd_girth": gr.odd_girth(g),
        "max_odd_cycle": gr.max_odd_cycle(g),
        "max_cycle": gr.max_cycle(g),
        "n0": gr.n0(g),
        "n1": n1,
        "phi0": gr.phi0(g),
        "phi1": gr.phi1(g),
    }


def cmd_closure(args) -> int:
    if args.input:
        d = _load_json(args.input)
        try:
            C = MonomialIdeal.from_json(d)
        except (ValueError, KeyError, TypeError, DimensionError) as exc:
            raise ParseError(f"{args.input}: {exc}") from exc
        _header(args)
        out = _ideal_payload(C)
        for k in ("power", "mode", "graph"):
            if k in d:
                out[k] = d[k]
    else:
        I, extra = _source_ideal(args)
        _header(args)
        C = _powered(I, args.power, args.ordinary)
        out = {**_ideal_payload(C), "power": args.power,
               "mode": "ordinary" if args.ordinary else "closure", **extra}
    if args.format == "human":
        _emit("\n".join(out["monomials"]), args.out)
    else:
        _emit(_dump(out), args.out)
    return EXIT_OK


def cmd_ass(args) -> int:
    if args.input:
        d = _load_json(args.input)
        if not isinstance(d, list) or not all(
                isinstance(p, list) and all(isinstance(i, int) and i >= 1 for i in p) for p in d):
            raise ParseError(f"{args.input}: expected a JSON list of supports")
        _header(args)
        primes = sorted({tuple(sorted(set(p))) for p in d}, key=lambda p: (len(p), p))
    else:
        I, _ = _source_ideal(args)
        _header(args)
        primes = associated_primes(_powered(I, args.power, args.ordinary))
    _emit(_dump([list(p) for p in primes]), args.out)
    return EXIT_OK


def cmd_depth(args) -> int:
    if args.input:
        d = _load_json(args.input)
        try:
            out = {"depth": int(d["depth"]),
                   "betti": {str(int(k)): int(v) for k, v in d["betti"].items()},
                   "field": str(d.get("field", FIELD))}
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ParseError(f"{args.input}: {exc}") from exc
        for k in ("power", "mode", "ambient"):
            if k in d:
                out[k] = d[k]
        _header(args)
    else:
        I, _ = _source_ideal(args)
        _header(args)
        C = _powered(I, args.power, args.ordinary)
        betti = total_betti(betti_numbers(C))
        out = {"depth": depth_quotient(C), "betti": {str(k): v for k, v in betti.items()},
               "field": FIELD, "power": args.power, "ambient": C.ambient,
               "mode": "ordinary" if args.ordinary else "closure"}
    if args.format == "human":
        _emit(str(out["depth"]), args.out)
    else:
        _emit(_dump(out), args.out)
    return EXIT_OK


def cmd_stability(args) -> int:
    if args.input:
        d = _load_json(args.input)
        try:
            rep = StabilityReport.from_dict(d)
        except (TypeError, KeyError) as exc:
            raise ParseError(f"{args.input}: not a stability report: {exc}") from exc
        _header(args)
    else:
        if not args.graph:
            raise UsageError("stability needs --graph or --in")
        g = read_graph(args.graph)
        if not g.edges:
            raise UsageError("the graph has no edges")
        _header(args)
        rep = report(g, probe=args.probe, shortcut=not args.no_shortcut)
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if not args.no_csv_header:
            w.writerow(StabilityReport.CSV_FIELDS)
        w.writerow(rep.csv_row())
        _emit(buf.getvalue(), args.out)
    else:
        _emit(rep.to_json(), args.out)
    return EXIT_OK


def _corpus_spec(args) -> CorpusSpec:
    modes = [m for m in ("exhaustive", "random_pseudoforest", "file")
             if getattr(args, m) is not None]
    if len(modes) != 1:
        raise UsageError("give exactly one of --exhaustive, --random-pseudoforest, --file")
    mode = modes[0]
    if mode == "exhaustive":
        if args.exhaustive > MAX_EXHAUSTIVE:
            if not args.allow_large:
                raise UsageError(f"exhaustive corpora above {MAX_EXHAUSTIVE} vertices "
                                 "need --allow-large")
            print(f"edgestab: warning: {args.exhaustive}-vertex exhaustive corpus; "
                  f"{'expect hours of runtime' if args.exhaustive <= HARD_EXHAUSTIVE else 'untested size, runtime unbounded'}",
                  file=sys.stderr)
        spec = CorpusSpec("exhaustive", max_vertices=args.exhaustive,
                          connected_only=not args.all_graphs,
                          pseudoforest_only=args.pseudoforest, no_c4=args.no_c4)
    elif mode == "random_pseudoforest":
        if args.seed is None:
            raise UsageError("random corpora need an explicit --seed")
        if args.max_vertices is None:
            raise UsageError("--random-pseudoforest needs --max-vertices")
        spec = CorpusSpec("random_pseudoforest", max_vertices=args.max_vertices,
                          count=args.random_pseudoforest, seed=args.seed,
                          connected_only=not args.all_graphs, pseudoforest_only=True,
                          no_c4=args.no_c4)
    else:
        spec = CorpusSpec("file", path=args.file, connected_only=not args.all_graphs,
                          pseudoforest_only=args.pseudoforest, no_c4=args.no_c4)
    try:
        spec.validate()
    except CorpusError as exc:
        raise UsageError(str(exc)) from exc
    return spec


def _graphs_of(spec: CorpusSpec) -> list[gr.Graph]:
    try:
        return list(generate_corpus(spec))
    except CorpusError as exc:
        if isinstance(exc.__cause__, OSError):
            raise OSError(str(exc)) from exc
        raise ParseError(str(exc)) from exc
    except gr.GraphError as exc:
        raise ParseError(str(exc)) from exc


def cmd_corpus(args) -> int:
    if args.input:
        d = _load_json(args.input)
        try:
            graphs = [_graph_from_dict(x) for x in d["graphs"]]
            corpus = d.get("corpus", {})
        except (KeyError, TypeError, ValueError, gr.GraphError) as exc:
            raise ParseError(f"{args.input}: {exc}") from exc
        _header(args)
    else:
        spec = _corpus_spec(args)
        _header(args)
        graphs = _graphs_of(spec)
        corpus = spec.describe()
    if args.format == "json":
        _emit(_dump({"corpus": corpus, "count": len(graphs),
                     "graphs": [_graph_dict(g) for g in graphs]}), args.out)
    elif args.format == "graph6":
        _emit("\n".join(gr.to_graph6(g) for g in graphs), args.out)
    else:
        _emit("\n\n".join(gr.format_edge_list(g) for g in graphs), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.input:
        rep = _load_json(args.input)
        if not isinstance(rep, dict) or rep.get("schema") != 1 or "ok" not in rep:
            raise ParseError(f"{args.input}: not a schema-1 verification report")
        _header(args)
        if args.out:
            _emit(report_json(rep), args.out)
        print(summary_text(rep))
        return EXIT_OK if rep["ok"] else EXIT_VIOLATION
    spec = _corpus_spec(args)
    checks = tuple(c.strip() for c in args.checks.split(",") if c.strip()) \
        if args.checks else ALL_CHECKS
    unknown = sorted(set(checks) - set(ALL_CHECKS))
    if unknown:
        raise UsageError(f"unknown checks {unknown}; choose from {list(ALL_CHECKS)}")
    jobs = args.jobs or _env_jobs()
    pairs = PairLimits(args.pair_bipartite, args.pair_nonbipartite, args.pair_power)
    _header(args, {"jobs": jobs, "checks": list(checks)})

    def progress(res):
        if args.verbose:
            mark = "ok" if res.passed else "FAIL"
            print(f"{res.check} {res.subject} {mark}", file=sys.stderr)

    try:
        rep = run(spec, checks=checks, jobs=jobs, pairs=pairs, progress=progress)
    except CorpusError as exc:
        raise ParseError(str(exc)) from exc
    rep["config"] = {"jobs": jobs, "pairs": vars(pairs), "field": FIELD,
                     "version": VERSION}
    if args.out:
        _emit(report_json(rep), args.out)
    print(summary_text(rep))
    return EXIT_OK if rep["ok"] else EXIT_VIOLATION


def _env_jobs() -> int:
    raw = os.environ.get("EDGESTAB_JOBS", "1")
    try:
        jobs = int(raw)
    except ValueError:
        raise UsageError(f"EDGESTAB_JOBS must be a positive integer, got {raw!r}")
    if jobs < 1:
        raise UsageError("EDGESTAB_JOBS must be a positive integer")
    return jobs


# --- parser ----------------------------------------------------------------------

def _add_corpus_options(p):
    p.add_argument("--exhaustive", type=_positive("N"), metavar="N",
                   help="all connected graphs with at most N vertices")
    p.add_argument("--random-pseudoforest", type=_nonnegative, metavar="COUNT",
                   dest="random_pseudoforest", help="COUNT seeded random pseudoforests")
    p.add_argument("--max-vertices", type=_positive("M"), metavar="M")
    p.add_argument("--seed", type=int, help="RNG seed (required for random corpora)")
    p.add_argument("--file", metavar="PATH", help="graphs from an edge-list or graph6 file")
    p.add_argument("--all-graphs", action="store_true",
                   help="include disconnected graphs")
    p.add_argument("--pseudoforest", action="store_true", help="keep only pseudoforests")
    p.add_argument("--no-c4", action="store_true", help="drop graphs with a 4-cycle")
    p.add_argument("--allow-large", action="store_true",
                   help=f"permit exhaustive corpora above {MAX_EXHAUSTIVE} vertices")


def _add_ideal_source(p):
    p.add_argument("--graph", metavar="FILE", help="edge-list graph file")
    p.add_argument("--ideal", metavar="FILE", help="monomial ideal file (JSON or text)")
    p.add_argument("--power", type=_positive("--power"), default=1, metavar="n")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--closure", dest="ordinary", action="store_false",
                      help="integral closure of the power (default)")
    mode.add_argument("--ordinary", dest="ordinary", action="store_true",
                      help="the ordinary power")
    p.set_defaults(ordinary=False)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="edgestab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"edgestab {VERSION}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="write the result to PATH")
    common.add_argument("--in", dest="input", metavar="PATH",
                        help="re-read and re-emit a JSON result of this command")
    common.add_argument("--quiet", action="store_true", help="suppress the config header")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("invariants", parents=[common], help="n0, n1, phi0, phi1 of a graph")
    p.add_argument("--graph", metavar="FILE")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("closure", parents=[common], help="closure of a power")
    _add_ideal_source(p)
    p.add_argument("--format", choices=("json", "human"), default="json")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("ass", parents=[common], help="associated primes of a power")
    _add_ideal_source(p)
    p.set_defaults(func=cmd_ass)

    p = sub.add_parser("depth", parents=[common], help="depth and Betti summary of a power")
    _add_ideal_source(p)
    p.add_argument("--format", choices=("json", "human"), default="json")
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("stability", parents=[common], help="stability report of a graph")
    p.add_argument("--graph", metavar="FILE")
    p.add_argument("--csv", action="store_true", help="one CSV row instead of JSON")
    p.add_argument("--no-csv-header", action="store_true")
    p.add_argument("--no-shortcut", action="store_true",
                   help="compute closures even for bipartite graphs")
    p.add_argument("--probe", type=_nonnegative, default=1,
                   help="extra powers checked past each bound")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("verify", parents=[common], help="check the theorems over a corpus")
    _add_corpus_options(p)
    p.add_argument("--checks", help="comma-separated subset of " + ",".join(ALL_CHECKS))
    p.add_argument("--jobs", type=_positive("--jobs"),
                   help="worker processes (default: $EDGESTAB_JOBS or 1)")
    p.add_argument("--pair-bipartite", type=_positive("size"), default=4,
                   help="max vertices of the bipartite graph in pair checks")
    p.add_argument("--pair-nonbipartite", type=_positive("size"), default=5,
                   help="max vertices of the nonbipartite graph in pair checks")
    p.add_argument("--pair-power", type=_positive("n"), default=3,
                   help="max power in pair checks")
    p.add_argument("--verbose", action="store_true", help="one log line per check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("corpus", parents=[common], help="emit a graph corpus")
    _add_corpus_options(p)
    p.add_argument("--format", choices=("edges", "graph6", "json"), default="edges")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"edgestab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"edgestab: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except StabilityViolation as exc:
        print(f"edgestab: theorem violation: {exc} {json.dumps(exc.payload, default=str)}",
              file=sys.stderr)
        return EXIT_VIOLATION
    except (OSError, MemoryError) as exc:
        print(f"edgestab: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # noqa: BLE001 - any other failure is operational
        print(f"edgestab: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
