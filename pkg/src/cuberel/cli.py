"""Command-line front end.

Every subcommand writes CSV or JSON to stdout (or ``--out``). Output depends
only on the arguments: floats are printed with ``repr`` and ``--workers``
never changes a result.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

from .errors import CapacityError, CuberelError
from .graph import Graph, complete_graph, cycle_graph, path_graph, star_graph

WORKERS_ENV = "CUBEREL_WORKERS"
_JSON_SAFE = 2**53


def parse_graph_spec(text: str) -> Graph:
    """q:N, q3:N, p3:N, k:N, cycle:N, path:N, star:LEAVES or file:PATH."""
    from .products import build, parse_family

    kind, _, arg = text.partition(":")
    if kind == "file":
        return Graph.from_text(Path(arg).read_text())
    if kind in ("q", "q3", "p3"):
        return build(parse_family(text))
    simple = {"k": complete_graph, "cycle": cycle_graph, "path": path_graph, "star": star_graph}
    if kind in simple and arg:
        return simple[kind](int(arg))
    raise argparse.ArgumentTypeError(f"unrecognised graph spec {text!r}")


def parse_sweep(text: str) -> list[float]:
    """'a:b:step' -> a, a+step, ... up to b inclusive."""
    try:
        a, b, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"sweep must look like a:b:step, got {text!r}") from None
    if step <= 0 or b < a:
        raise argparse.ArgumentTypeError("sweep needs a <= b and a positive step")
    count = int(math.floor((b - a) / step + 1e-9)) + 1
    return [round(a + i * step, 12) for i in range(count)]


def _json_int(x: int):
    return str(x) if abs(x) > _JSON_SAFE else x


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _fmt(x: float) -> str:
    return repr(float(x))


# -- subcommands ---------------------------------------------------------------

def cmd_iso(args) -> str:
    from .isoperimetry import iso_profile, oracle_max_induced_edges
    from .products import ProductSpec, build

    prof = iso_profile(args.base, args.n)
    header = ["m", "e_max", "b_min"]
    rows = [list(r) for r in prof.entries]
    if args.oracle:
        g = build(ProductSpec("K2" if args.base == 2 else "K3", args.n))
        header.append("oracle_e_max")
        for r in rows:
            r.append(oracle_max_induced_edges(g, r[0]))
    return _csv(header, rows)


def cmd_perc(args) -> str:
    from . import percolation as perc
    from .products import ProductSpec, build

    ps = [args.p] if args.sweep is None else args.sweep
    graph = None
    if args.family != "gnm":
        graph = build(ProductSpec.family(args.family, args.n))
    rows = []
    for p in ps:
        if graph is None:
            N, M = 2**args.n, args.n * 2 ** (args.n - 1)
            s = perc.gnm_percolation_samples(N, M, p, args.trials, args.seed, args.workers)
        else:
            s = perc.percolation_samples(graph, p, args.trials, args.seed, args.workers)
        if args.stat == "moments":
            ests = perc.moment_estimates(s["isolated"], args.r_max, args.seed, args.family, args.n, p)
        else:
            hits = {"conn": s["connected"], "noiso": s["isolated"] == 0, "middle": s["middle"]}[args.stat]
            ests = [perc.bernoulli_estimate(args.stat, int(hits.sum()), args.trials, args.seed,
                                            args.family, args.n, p)]
        for e in ests:
            rows.append([args.family, args.n, _fmt(p), e.statistic, _fmt(e.estimate), _fmt(e.stderr),
                         e.trials, e.seed])
    return _csv(["family", "n", "p", "stat", "estimate", "stderr", "trials", "seed"], rows)


def cmd_rel(args) -> str:
    from .reliability import cross_check, evaluate, reliability_coefficients

    g = parse_graph_spec(args.graph)
    c = reliability_coefficients(g, method=args.method, workers=args.workers)
    checks = cross_check(g, c, strict=False)
    value = None
    if args.p is not None:
        value = evaluate(c, Fraction(args.p))
    if args.json:
        out = {"n": g.n, "m": g.m, "s": [_json_int(x) for x in c.s], "checks": checks}
        if value is not None:
            out["p"] = args.p
            out["eval"] = float(value)
            out["eval_exact"] = f"{value.numerator}/{value.denominator}"
        return _json(out)
    row = [g.n, g.m, " ".join(map(str, c.s))]
    header = ["n", "m", "s"]
    if value is not None:
        header += ["p", "reliability"]
        row += [args.p, _fmt(value)]
    return _csv(header, [row])


def _graph_json(g: Graph) -> list[list[int]]:
    return [list(e) for e in g.sorted_edges()]


def cmd_uor(args) -> str:
    from .uor import find_uor, necessary_conditions

    rep = find_uor(args.n, args.m, workers=args.workers)
    if args.emit_classes:
        d = Path(args.emit_classes)
        d.mkdir(parents=True, exist_ok=True)
        width = len(str(len(rep.classes)))
        for i, g in enumerate(rep.classes):
            (d / f"class_{i:0{width}d}.txt").write_text(g.to_text())
    out = {
        "n": rep.n,
        "m": rep.m,
        "classes": len(rep.classes),
        "uor_exists": rep.uor_exists,
        "maximal": [
            {"s": [_json_int(x) for x in c.s], "graphs": [_graph_json(g) for g in gs]}
            for c, gs in zip(rep.maximal, rep.maximal_graphs)
        ],
        "crossovers": list(rep.crossovers),
        "brackets": [[str(lo), str(hi)] for lo, hi in rep.brackets],
        "necessary_conditions": necessary_conditions(rep),
    }
    return _json(out)


def cmd_uor_table(args) -> str:
    from .published import PUBLISHED, diff_rows
    from .uor import uor_table

    top = args.n * (args.n - 1) // 2
    last = top if args.full or args.n < 7 else min(top, 16)
    reports, rows = uor_table(args.n, range(args.n, last + 1), workers=args.workers)
    cross = {r.m: r.crossovers for r in reports}
    out_rows = []
    mismatches = []
    if args.n in PUBLISHED:
        mismatches = diff_rows(args.n, [(r.m, r.label, r.coefficients) for r in rows], range(args.n, last + 1))
    bad = {(x.m, x.label) for x in mismatches}
    for r in rows:
        status = "" if args.n not in PUBLISHED else ("differs" if (r.m, r.label) in bad else "match")
        crossing = " ".join(_fmt(x) for x in cross[r.m])
        out_rows.append([r.n, r.m, r.label, " ".join(map(str, r.coefficients)), crossing, status])
    for x in mismatches:
        print(f"mismatch: {x.describe()}", file=sys.stderr)
    return _csv(["n", "m", "label", "coefficients", "crossover", "published"], out_rows)


def cmd_access(args) -> str:
    from .accessibility import accessibility_profile

    g = parse_graph_spec(args.graph)
    policy = "weighted" if args.weighted else args.start
    prof = accessibility_profile(g, policy, args.trials, args.seed, args.workers, args.graph)
    rows = [[e.j, _fmt(e.mean), _fmt(e.variance), args.graph, e.policy, e.trials, e.seed] for e in prof]
    return _csv(["j", "mean", "variance", "graph", "policy", "trials", "seed"], rows)


# -- parser --------------------------------------------------------------------

def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=_default_workers(),
                        help=f"parallel workers (default from ${WORKERS_ENV}, else 1)")
    common.add_argument("--out", help="write output here instead of stdout")

    ap = argparse.ArgumentParser(prog="cuberel", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("iso", parents=[common], help="isoperimetric profile of Q^n or 3Q^n")
    p.add_argument("--base", type=int, choices=(2, 3), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="add an exhaustive check column")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("perc", parents=[common], help="Monte Carlo edge percolation")
    p.add_argument("--family", choices=("q", "q3", "p3", "gnm"), required=True)
    p.add_argument("--n", type=int, required=True)
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--p", type=float)
    grp.add_argument("--sweep", type=parse_sweep, help="a:b:step")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--stat", choices=("conn", "noiso", "middle", "moments"), default="conn")
    p.add_argument("--r-max", type=int, default=4)
    p.set_defaults(func=cmd_perc)

    p = sub.add_parser("rel", parents=[common], help="reliability coefficients of one graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--p", type=str, help="evaluate at p (decimal or fraction, exact)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--method", choices=("enumerate", "subsets"), default="enumerate")
    p.set_defaults(func=cmd_rel)

    p = sub.add_parser("uor", parents=[common], help="search G(n, m) for a UOR graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--emit-classes", metavar="DIR")
    p.set_defaults(func=cmd_uor)

    p = sub.add_parser("uor-table", parents=[common], help="most reliable graphs for every m")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--full", action="store_true", help="at n = 7 also run m >= 17")
    p.set_defaults(func=cmd_uor_table)

    p = sub.add_parser("access", parents=[common], help="random-walk accessibility profile")
    p.add_argument("--graph", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--start", type=int, default=0)
    grp.add_argument("--weighted", action="store_true")
    p.set_defaults(func=cmd_access)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.workers < 1:
        ap.error("--workers must be >= 1")
    try:
        text = args.func(args)
    except argparse.ArgumentTypeError as exc:
        ap.error(str(exc))
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except (CuberelError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
