"""Command-line interface.

Results go to standard output as JSON (floats printed with 12 significant
digits), diagnostics to standard error. Exit codes: 0 success, 1 domain
error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

import numpy as np

from . import __version__
from .errors import EmbeddingError, IndexOutOfRange
from .families import FAMILY_KINDS, FamilySpec, generate, pythagorean_pairs
from .geomspec import (
    DEFAULT_BUDGET,
    HarmonicMap,
    classic_lambda2,
    geometric_fiedler,
    orthogonality_defect,
)
from .metric import DEFAULT_TOL, MetricSpace, WeightedGraph, critical_graph, to_dot
from .schoenberg import embed_coordinates, is_embeddable, kernel_trace_profile
from .structure import (
    classify_4point,
    classify_unweighted,
    connectivity_report,
    match_pivot_structure,
    verify_unweighted_theorem,
)

logger = logging.getLogger("hilbert_embed")


class UsageError(Exception):
    pass


def _plain(obj):
    """Convert numpy scalars/arrays and round floats to 12 significant digits."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if x == 0.0:
            return 0.0
        return float("%.12g" % x)
    return obj


def dumps(obj) -> str:
    return json.dumps(_plain(obj))


def _load_json(path: str, flag: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"{flag}: cannot read {path!r}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: {path!r} is not valid JSON ({exc.msg})") from exc


def _load_metric(path: str, tol: float) -> MetricSpace:
    obj = _load_json(path, "--metric")
    if not isinstance(obj, dict) or "d" not in obj:
        raise UsageError(f"--metric: {path!r} lacks a 'd' matrix")
    slack = tol * max(1.0, float(np.max(np.abs(np.asarray(obj["d"], dtype=float)), initial=0.0)))
    return MetricSpace.from_json(obj, tol=slack)


def _load_graph(path: str) -> WeightedGraph:
    obj = _load_json(path, "--graph")
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise UsageError(f"--graph: {path!r} needs 'n' and 'edges'")
    return WeightedGraph.from_json(obj)


def _parse_map(text: str, flag: str) -> list[int]:
    try:
        if text.lstrip().startswith("["):
            return [int(x) for x in json.loads(text)]
        return [int(x) for x in text.split(",") if x.strip()]
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"{flag}: expected comma-separated point indices, got {text!r}") from exc


# --- commands --------------------------------------------------------------


def cmd_validate(args, out):
    m = _load_metric(args.metric, args.tol)
    out.write(dumps({"valid": True, "n": m.n, "labels": list(m.labels)}) + "\n")


def cmd_critgraph(args, out):
    m = _load_metric(args.metric, args.tol)
    g = critical_graph(m)
    if args.dot:
        out.write(to_dot(g, m.labels))
        return
    obj = g.to_json()
    obj["labels"] = list(m.labels)
    out.write(dumps(obj) + "\n")


def cmd_test_embed(args, out):
    m = _load_metric(args.metric, args.tol)
    obj = is_embeddable(m, args.tol).to_json()
    obj["trace_profile"] = kernel_trace_profile(m)
    out.write(dumps(obj) + "\n")


def cmd_embed(args, out):
    m = _load_metric(args.metric, args.tol)
    if not 0 <= args.base < m.n:
        raise IndexOutOfRange(f"--base {args.base} outside 0..{m.n - 1}")
    out.write(dumps(embed_coordinates(m, args.base, args.tol).to_json()) + "\n")


def cmd_classify(args, out):
    m = _load_metric(args.metric, args.tol)
    g = critical_graph(m)
    if m.n == 4:
        cls = classify_4point(m)
    else:
        cls = classify_unweighted(g)
    conn = connectivity_report(g)
    pivot = match_pivot_structure(g) if m.n >= 4 else None
    obj = {
        "class": cls.tag.value,
        "embeddable": is_embeddable(m, args.tol).embeddable,
        "certificate": list(cls.certificate),
        "critical_graph": g.to_json(),
        "connectivity": {
            "is_path": conn.is_path,
            "is_2_connected": conn.is_2_connected,
            "is_3_connected": conn.is_3_connected,
            "two_cuts": [list(c) for c in conn.two_cuts],
        },
        "pivot": None if pivot is None else {"order": list(pivot.order), "k": pivot.k},
    }
    out.write(dumps(obj) + "\n")


def cmd_fiedler(args, out):
    g = _load_graph(args.graph)
    x = _load_metric(args.metric, args.tol)
    res = geometric_fiedler(g, x, budget=args.budget)
    obj = {
        "value": res.value,
        "argmin": list(res.argmin.assignment),
        "classic_lambda2": classic_lambda2(g),
        "maps_searched": res.maps_searched,
    }
    out.write(dumps(obj) + "\n")


def cmd_ortho(args, out):
    g = _load_graph(args.graph)
    x = _load_metric(args.metric, args.tol)
    f1 = HarmonicMap(g, x, _parse_map(args.f1, "--f1"))
    f2 = HarmonicMap(g, x, _parse_map(args.f2, "--f2"))
    out.write(dumps({"defect": orthogonality_defect(f1, f2)}) + "\n")


def cmd_gen(args, out):
    pairs = tuple(tuple(p) for p in args.pair or ())
    if args.family == "pythagorean" and not pairs and args.z is not None:
        pairs = tuple(pythagorean_pairs(args.z)[:3])
    spec = FamilySpec(
        kind=args.family,
        n=args.n,
        k=args.k,
        config=args.config,
        z=args.z,
        pairs=pairs,
        dim=args.dim,
        seed=args.seed,
    )
    text = dumps(generate(spec).to_json()) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


def cmd_verify_theorem(args, out):
    t0 = time.monotonic()

    def progress(n, scan):
        print(
            f"n={n}: {scan.total_masks} masks, {len(scan.masks)} connected, "
            f"{int(scan.embeddable.sum())} embeddable ({time.monotonic() - t0:.1f}s)",
            file=sys.stderr,
            flush=True,
        )

    stats = {}
    found = verify_unweighted_theorem(args.max_n, args.tol, progress=progress, stats=stats)
    obj = {
        "max_n": args.max_n,
        "tol": args.tol,
        "counterexamples": [c.to_json() for c in found],
        "graphs": {str(n): s for n, s in stats.items()},
    }
    out.write(dumps(obj) + "\n")


# --- parser ----------------------------------------------------------------


def _positive_float(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive_float, default=argparse.SUPPRESS,
                        help="numerical tolerance (default 1e-9)")
    p = argparse.ArgumentParser(prog="hilbert-embed", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL,
                   help="numerical tolerance (default 1e-9)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "check metric axioms")
    sp.add_argument("--metric", required=True)

    sp = add("critgraph", cmd_critgraph, "critical graph of a metric")
    sp.add_argument("--metric", required=True)
    sp.add_argument("--dot", action="store_true", help="emit Graphviz DOT instead of JSON")

    sp = add("test-embed", cmd_test_embed, "spectral embeddability test")
    sp.add_argument("--metric", required=True)

    sp = add("embed", cmd_embed, "explicit Euclidean coordinates")
    sp.add_argument("--metric", required=True)
    sp.add_argument("--base", type=int, default=0)

    sp = add("classify", cmd_classify, "structural class of the critical graph")
    sp.add_argument("--metric", required=True)

    sp = add("fiedler", cmd_fiedler, "geometric Fiedler value by exhaustive search")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--metric", required=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = add("ortho", cmd_ortho, "orthogonality defect of two vertex maps")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--metric", required=True)
    sp.add_argument("--f1", required=True, help="point index per vertex, e.g. 0,1,1")
    sp.add_argument("--f2", required=True)

    sp = add("gen", cmd_gen, "generate a named metric family")
    sp.add_argument("--family", required=True, choices=FAMILY_KINDS)
    sp.add_argument("--n", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--config", choices=("a", "b", "c"))
    sp.add_argument("--z", type=int)
    sp.add_argument("--pair", type=int, nargs=2, action="append", metavar=("P", "Q"))
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")

    sp = add("verify-theorem", cmd_verify_theorem, "exhaustive check over small unit-weight graphs")
    sp.add_argument("--max-n", type=int, default=7)
    return p


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"hilbert-embed: error: {exc}", file=sys.stderr)
        return 2
    except EmbeddingError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
