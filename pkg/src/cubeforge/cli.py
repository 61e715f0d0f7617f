"""``cubeforge`` command line.

Every subcommand prints one JSON document (or CSV rows with ``--format
csv``) on stdout and a run manifest on stderr or ``--manifest PATH``.
Timing lives only in the manifest, so equal manifests give byte-identical
stdout.

Exit codes: 0 success, 1 domain error, 2 budget or timeout, 3 usage.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
import time
from pathlib import Path

from . import __version__
from .colorings import (
    default_budget,
    estimate_mono_cube_probability,
    find_ap_free_coloring,
    find_mono_ap,
    find_mono_cube,
    parse_coloring,
    product_coloring,
)
from .errors import BudgetExceeded, CubeforgeError, DomainError, SearchTimeout
from .gaps import containing_ap, decompose_rank2, enumerate_gap, find_collision, parse_gap, read_gap_file
from .grids import (
    dyadic_select,
    freiman_embed_set,
    grid_restricted_sumset,
    parse_grid_text,
    read_grid_file,
    stack_partition,
    verify_dense_gap_bound,
)
from .intset import parse_set_text, read_set_file
from .ramsey import census_small_sumsets, check_against_baseline, hilbert_number, vdw_number
from .rng import ALGORITHM
from .sidon import erdos_turan_sidon, mian_chowla, sidon_cubic_lowerbound
from .sumsets import (
    chain_witness,
    ell_fold_sums,
    is_sidon,
    longest_ap_in,
    m_fold_restricted_sumset,
    restricted_sumset,
)
from .verify import DEFAULT_CONFIG, load_config, verify_bounds

DEFAULT_SEED = 20240601
EXIT_OK, EXIT_DOMAIN, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with exit code 3 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- helpers ---------------------------------------------------------------


def _read_set(args):
    if args.set is not None:
        return parse_set_text(args.set)
    if args.input is not None:
        return read_set_file(args.input)
    raise UsageError("give --set or --input")


def _int_list(s) -> list[int]:
    return [int(v) for v in s.elements] if hasattr(s, "elements") else [int(v) for v in s]


def _parse_construct(spec: str):
    """``et:p=101`` or ``mc:n=50``."""
    try:
        kind, arg = spec.split(":", 1)
        key, value = arg.split("=", 1)
        value = int(value)
    except ValueError:
        raise UsageError(f"bad --construct {spec!r}; expected et:p=P or mc:n=N") from None
    if kind == "et" and key == "p":
        return erdos_turan_sidon(value)
    if kind == "mc" and key == "n":
        return mian_chowla(value)
    raise UsageError(f"bad --construct {spec!r}; expected et:p=P or mc:n=N")


class _Run:
    """Per-invocation state shared with handlers (seed, budget, node counts)."""

    def __init__(self, args):
        self.args = args
        self.seed = args.seed
        self.budget = args.budget if args.budget is not None else default_budget()
        self.nodes = None


# --- handlers: each returns (payload, csv rows) ----------------------------


def cmd_sumset(run):
    a = run.args
    A = _read_set(a)
    payload = {"op": a.op, "input": _int_list(A)}
    if a.op == "restricted":
        S = restricted_sumset(A)
    elif a.op == "ell":
        S = ell_fold_sums(A, a.ell)
        payload["ell"] = a.ell
    elif a.op == "mfold":
        S = m_fold_restricted_sumset(A, a.m)
        payload["m"] = a.m
    elif a.op == "chain":
        chain = chain_witness(A)
        payload.update(result=chain, size=len(chain))
        return payload, [{"value": v} for v in chain]
    elif a.op == "longest-ap":
        w = longest_ap_in(restricted_sumset(A)) if a.of_sumset else longest_ap_in(A)
        payload["ap"] = w.to_dict()
        return payload, [w.to_dict()]
    else:  # sidon
        payload["sidon"] = is_sidon(A)
        return payload, [{"sidon": payload["sidon"]}]
    payload.update(result=_int_list(S), size=len(S))
    return payload, [{"value": v} for v in S]


def cmd_gap(run):
    a = run.args
    if a.gap is not None:
        Q = parse_gap(a.gap)
    elif a.input is not None:
        Q = read_gap_file(a.input)
    else:
        raise UsageError("give --gap or --input")
    payload = {"op": a.op, "gap": Q.to_dict()}
    if a.op == "enumerate":
        S = enumerate_gap(Q)
        payload.update(result=_int_list(S), size=len(S), proper=len(S) == Q.volume)
        return payload, [{"value": v} for v in S]
    if a.op == "decompose":
        dec = decompose_rank2(Q)
        parts = [_int_list(p) for p in dec.parts]
        payload["parts"] = parts
        return payload, [{"part": j + 1, "value": v} for j, p in enumerate(parts) for v in p]
    if a.op == "containing-ap":
        w = containing_ap(Q)
        payload["ap"] = w.to_dict()
        return payload, [w.to_dict()]
    # collision
    if Q.rank != 2 or not Q.is_symmetric:
        raise DomainError("collision needs a symmetric rank-2 GAP")
    w = find_collision(*Q.differences, *Q.upper, a.k)
    payload["collision"] = w.to_dict()
    return payload, [{"x": w.x, "y": w.y, "value": w.value()}]


def cmd_grid(run):
    a = run.args
    if a.points is not None:
        text = "\n".join(p.strip() for p in a.points.split(";"))
        if a.box:
            text = f"box: {a.box}\n" + text
        A = parse_grid_text(text)
    elif a.input is not None:
        A = read_grid_file(a.input)
    else:
        raise UsageError("give --points or --input")
    payload = {"op": a.op, "dim": A.dim, "box": list(A.box) if A.box else None,
               "points": [list(p) for p in A.sorted_points()]}
    if a.op == "sumset":
        S = grid_restricted_sumset(A, a.m)
        pts = [list(p) for p in S.sorted_points()]
        payload.update(m=a.m, result=pts, size=len(pts))
        return payload, [{f"x{i + 1}": c for i, c in enumerate(p)} for p in pts]
    if a.op == "stacks":
        S = stack_partition(A)
        rows = [{"base": list(x), "stack": list(v), "dense": x in S.dense}
                for x, v in sorted(S.stacks.items())]
        payload.update(alpha=str(S.alpha), threshold=str(S.threshold), s=S.s, stacks=rows)
        return payload, rows
    if a.op == "dyadic":
        ch = dyadic_select(stack_partition(A))
        classes = [{"index": i, "threshold": str(t), "covered": c} for i, t, c in ch.classes]
        payload.update(index=ch.index, threshold=str(ch.threshold), bases=[list(b) for b in ch.bases],
                       covered=ch.covered, classes=classes, meets_2s_bound=ch.meets_2s_bound)
        return payload, classes
    if a.op == "embed":
        E = freiman_embed_set(A)
        pts = [list(p) for p in E.sorted_points()]
        payload["result"] = pts
        return payload, [{"x1": p[0], "x2": p[1]} for p in pts]
    rep = verify_dense_gap_bound(A, a.m)
    payload["report"] = rep.to_dict()
    return payload, [rep.to_dict()]


def _read_coloring(text_or_path: str, r):
    p = Path(text_or_path)
    text = p.read_text() if not text_or_path.isdigit() and p.exists() else text_or_path
    return parse_coloring(text, r)


def cmd_coloring(run):
    a = run.args
    if a.find_ap_free:
        if a.n is None:
            raise UsageError("--find-ap-free needs -n")
        c = find_ap_free_coloring(a.n, a.k, a.r, budget=run.budget)
        payload = {"op": "find-ap-free", "n": a.n, "k": a.k, "r": a.r,
                   "feasible": c is not None, "coloring": str(c) if c else None}
        return payload, [payload]
    if a.coloring is None:
        raise UsageError("give --coloring or --find-ap-free")
    c = _read_coloring(a.coloring, a.r)
    payload = {"coloring": str(c), "r": c.r, "k": a.k}
    if a.times is not None:
        c2 = _read_coloring(a.times, None)
        pc = product_coloring(c, c2)
        payload.update(op="product", product=list(pc.colors), colors=pc.r)
        return payload, [{"position": i + 1, "color": v} for i, v in enumerate(pc.colors)]
    if a.cube:
        w = find_mono_cube(c, a.k, budget=run.budget)
        payload.update(op="mono-cube", witness=w.to_dict() if w else None)
        return payload, [w.to_dict() if w else {}]
    w = find_mono_ap(c, a.k)
    payload.update(op="mono-ap", witness=w.to_dict() if w else None)
    return payload, [w.to_dict() if w else {}]


def _ramsey(run, fn):
    a = run.args
    res = fn(a.k, a.r, a.nmax, budget=run.budget)
    run.nodes = res.nodes
    out = res.to_dict()
    run.seconds = out.pop("seconds")
    out["baseline_match"] = check_against_baseline(res)
    if out["baseline_match"] is False:
        raise DomainError(f"{res.kind}({a.k},{a.r}) = {res.value} drifted from the stored baseline")
    return out, [out]


def cmd_vdw(run):
    return _ramsey(run, vdw_number)


def cmd_hilbert(run):
    return _ramsey(run, hilbert_number)


def cmd_census(run):
    a = run.args
    res = census_small_sumsets(a.n, a.k, a.u)
    out = res.to_dict()
    return out, [out]


def cmd_sidon(run):
    A = _parse_construct(run.args.construct)
    out = {"construct": run.args.construct, "set": _int_list(A), "size": len(A),
           "max": A.max, "sidon": is_sidon(A)}
    return out, [{"value": v} for v in A]


def cmd_sidon_grow(run):
    a = run.args
    if a.construct is not None:
        A = _parse_construct(a.construct)
    elif a.input is not None:
        A = read_set_file(a.input)
    else:
        raise UsageError("give --input or --construct")
    tr = sidon_cubic_lowerbound(A)
    d = tr.to_dict()
    if a.trace:
        Path(a.trace).write_text(json.dumps(d, indent=2) + "\n")
    summary = {k: d[k] for k in ("size", "final_x", "final_sumset", "constant", "small_exit")}
    summary["small_steps"] = len(tr.phase_steps("small"))
    summary["large_steps"] = len(tr.phase_steps("large"))
    summary["steps"] = d["steps"]
    return summary, d["steps"]


def cmd_montecarlo(run):
    a = run.args
    est = estimate_mono_cube_probability(a.n, a.k, a.trials, run.seed, exact=a.exact, budget=run.budget)
    out = est.to_dict()
    return out, [out]


def cmd_verify_bounds(run):
    a = run.args
    config = load_config(a.config) if a.config else DEFAULT_CONFIG
    rep = verify_bounds(config)
    run.seconds = {r["suite"]: r.pop("seconds", None) for r in rep["suites"]}
    rows = [{"suite": r["suite"], "passed": r["passed"], "checked": r.get("checked"),
             "violations": r.get("violations"), "error": r.get("error")} for r in rep["suites"]]
    return rep, rows


# --- parser ----------------------------------------------------------------


def _seed(value: str):
    if value == "auto":
        return "auto"
    try:
        return int(value, 0)
    except ValueError:
        raise argparse.ArgumentTypeError("seed must be an integer or 'auto'") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--manifest", metavar="PATH", help="write the run manifest here instead of stderr")
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED,
                        help=f"integer seed, or 'auto' for entropy (default {DEFAULT_SEED})")
    common.add_argument("--threads", type=int, default=1, help="worker count (searches run sequentially)")
    common.add_argument("--budget", type=int, help="node budget (default: $CUBEFORGE_BUDGET or 10^9)")

    p = _Parser(prog="cubeforge", description="Restricted sumsets, colorings and small Ramsey-type numbers.")
    p.add_argument("--version", action="version", version=f"cubeforge {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    s = sub.add_parser("sumset", parents=[common], help="restricted / l-fold / m-fold sumsets")
    s.add_argument("--set", help='integers, e.g. "1,2,4"')
    s.add_argument("--input", help="set file")
    s.add_argument("--op", choices=("restricted", "ell", "mfold", "chain", "longest-ap", "sidon"),
                   default="restricted")
    s.add_argument("-l", "--ell", type=int, default=1)
    s.add_argument("-m", type=int, default=1)
    s.add_argument("--of-sumset", action="store_true", help="longest-ap: search inside the restricted sumset")
    s.set_defaults(func=cmd_sumset)

    s = sub.add_parser("gap", parents=[common], help="generalized arithmetic progressions")
    s.add_argument("--gap", help='descriptor, e.g. "0; 3,5; -2..2, -1..1"')
    s.add_argument("--input", help="GAP descriptor file")
    s.add_argument("--op", choices=("enumerate", "decompose", "containing-ap", "collision"), default="enumerate")
    s.add_argument("-k", type=int, default=1, help="collision: search range 1..k*extent")
    s.set_defaults(func=cmd_gap)

    s = sub.add_parser("grid", parents=[common], help="subsets of Z^d")
    s.add_argument("--points", help='e.g. "1,1; 2,1; 2,2"')
    s.add_argument("--box", help='side lengths, e.g. "2,2"')
    s.add_argument("--input", help="grid set file")
    s.add_argument("--op", choices=("sumset", "stacks", "dyadic", "embed", "dense-report"), default="sumset")
    s.add_argument("-m", type=int, default=1)
    s.set_defaults(func=cmd_grid)

    s = sub.add_parser("coloring", parents=[common], help="monochromatic APs and cubes")
    s.add_argument("--coloring", help="digit string or coloring file")
    s.add_argument("--times", help="second coloring: output the product coloring")
    s.add_argument("--cube", action="store_true", help="look for an affine k-cube instead of a k-AP")
    s.add_argument("--find-ap-free", action="store_true", help="search for a k-AP-free r-coloring of [n]")
    s.add_argument("-n", type=int)
    s.add_argument("-k", type=int, default=3)
    s.add_argument("-r", type=int, default=None)
    s.set_defaults(func=cmd_coloring)

    for name, fn, nmax in (("vdw", cmd_vdw, 40), ("hilbert", cmd_hilbert, 30)):
        s = sub.add_parser(name, parents=[common], help=f"exact {name} number")
        s.add_argument("-k", type=int, required=True)
        s.add_argument("-r", type=int, default=2)
        s.add_argument("--nmax", type=int, default=nmax)
        s.set_defaults(func=fn)

    s = sub.add_parser("census", parents=[common], help="count k-subsets of [n] with small sumset")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-k", type=int, required=True)
    s.add_argument("-u", type=int, required=True)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("sidon", parents=[common], help="construct a Sidon set")
    s.add_argument("--construct", required=True, help="et:p=P or mc:n=N")
    s.set_defaults(func=cmd_sidon)

    s = sub.add_parser("sidon-grow", parents=[common], help="greedy cubic growth inside a Sidon set")
    s.add_argument("--input", help="set file")
    s.add_argument("--construct", help="et:p=P or mc:n=N")
    s.add_argument("--trace", help="write the full trace JSON here")
    s.set_defaults(func=cmd_sidon_grow)

    s = sub.add_parser("montecarlo", parents=[common], help="probability of a monochromatic k-cube")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--exact", action="store_true", help="enumerate all 2^n colorings")
    s.set_defaults(func=cmd_montecarlo)

    s = sub.add_parser("verify-bounds", parents=[common], help="run the bound-check suites")
    s.add_argument("--config", help="JSON config; omitted runs every suite at default caps")
    s.set_defaults(func=cmd_verify_bounds)
    return p


# --- output ----------------------------------------------------------------


def _csv_text(rows) -> str:
    buf = io.StringIO()
    keys = []
    for r in rows:
        keys += [k for k in r if k not in keys]
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, tuple, dict)) else v for k, v in r.items()})
    return buf.getvalue()


def _manifest(run, wall: float, status: str) -> dict:
    params = {k: v for k, v in vars(run.args).items() if k not in ("func", "manifest")}
    params["seed"] = run.seed
    return {
        "subcommand": run.args.subcommand,
        "params": params,
        "seed": run.seed,
        "prng": ALGORITHM,
        "version": __version__,
        "wall_time": wall,
        "seconds": getattr(run, "seconds", None),
        "threads": run.args.threads,
        "budget": {"limit": run.budget, "nodes": run.nodes},
        "status": status,
    }


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.seed == "auto":
        args.seed = random.SystemRandom().getrandbits(63)
    run = _Run(args)
    t0 = time.perf_counter()
    status, code = "ok", EXIT_OK
    try:
        payload, rows = args.func(run)
        if args.format == "csv":
            sys.stdout.write(_csv_text(rows))
        else:
            sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
        if args.subcommand == "verify-bounds" and not payload["passed"]:
            status, code = "suite-failure", EXIT_DOMAIN
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"cubeforge: error: {exc}", file=sys.stderr)
        status, code = "usage", EXIT_USAGE
    except BudgetExceeded as exc:
        if isinstance(exc, SearchTimeout):
            run.nodes = exc.nodes
        print(f"cubeforge: budget: {exc}", file=sys.stderr)
        status, code = "budget", EXIT_BUDGET
    except (CubeforgeError, OSError, ValueError) as exc:
        print(f"cubeforge: error: {exc}", file=sys.stderr)
        status, code = "domain-error", EXIT_DOMAIN
    text = json.dumps(_manifest(run, time.perf_counter() - t0, status), sort_keys=True, default=str)
    if args.manifest:
        Path(args.manifest).write_text(text + "\n")
    else:
        print(text, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
