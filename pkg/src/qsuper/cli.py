"""qsuper command line: every check as a subcommand, reports as JSON lines.

Exit status is 0 when no report fails, 1 when one does, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor, as_completed
from fractions import Fraction

from .checks import (DEFAULT_GRID, EXTRA_OPE_IDS, SUBCOMMANDS, WEAKEQ_PROPS, Options, plan,
                     run_task, weak_instances)
from .report import summary_table

JOBS_ENV = "QSUPER_JOBS"


class UsageError(Exception):
    pass


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a rational number: %r" % s)


def _positive_float(s: str) -> float:
    try:
        v = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError("not a number: %r" % s)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _default_jobs() -> int:
    v = os.environ.get(JOBS_ENV, "1")
    try:
        return max(1, int(v))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("parameters")
    g.add_argument("--M", type=int, help="even dimension (with --N; default: the grid)")
    g.add_argument("--N", type=int, help="odd dimension")
    g.add_argument("--max-mn", type=int, dest="max_mn",
                   help="grid of all M, N >= 1, M != N, M + N <= this (default: six-point grid)")
    g.add_argument("--order", type=int, help="series order K")
    g.add_argument("--q", type=_rational, action="append",
                   help="rational q in (0, 1); repeatable (default 1/2 and 1/3)")
    g.add_argument("--precision", type=_positive_float, default=1e-10)
    g.add_argument("--convention", choices=("paper", "flipped"))
    g.add_argument("--samples", type=int, default=100, help="numeric spot checks per identity")
    o = common.add_argument_group("output")
    o.add_argument("--jobs", type=int, default=_default_jobs(),
                   help="worker processes (default from $%s, else 1)" % JOBS_ENV)
    o.add_argument("--sorted", action="store_true", help="emit reports in canonical order")
    o.add_argument("--summary", action="store_true", help="print a table instead of JSON lines")

    p = argparse.ArgumentParser(prog="qsuper", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True, metavar="subcommand")
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name, parents=[common], help=_HELP[name])
        if name == "ope":
            m = sp.add_mutually_exclusive_group(required=True)
            m.add_argument("--rule", help="rule id (see --list)")
            m.add_argument("--all", action="store_true")
            m.add_argument("--list", action="store_true", help="print rule ids and exit")
        if name == "weakeq":
            sp.add_argument("--prop", required=True, choices=WEAKEQ_PROPS + ("all",))
    return p


_HELP = {
    "ybe": "graded Yang-Baxter equation, symbolic",
    "unitarity": "R(z) R21(1/z) = 1 and kappa(z) kappa(1/z) = 1",
    "crossing": "crossing unitarity and its kappa ratio",
    "initial": "R(1) against the graded permutation (report only)",
    "rmatrix-derived": "R-matrices on V*V, VV*, V*V* against closed forms",
    "ope": "normal-ordering rules and h*-kernels",
    "weakeq": "weak-equality identities",
    "fmu": "F_mu = 0 with drop-one controls",
    "composite": "residual scalars of the composite vertex-operator products",
    "exchange": "exchange relations of the edge vertex operators",
    "invert": "invertibility constants through the specialization pipeline",
    "constants": "g and g* at rational q",
    "suite": "everything over a grid",
}


def _points(a) -> tuple:
    """(R-matrix points, weak-equality instances or None)."""
    if (a.M is None) != (a.N is None):
        raise UsageError("--M and --N go together")
    if a.M is not None:
        if a.max_mn is not None:
            raise UsageError("--max-mn conflicts with --M/--N")
        if a.M == a.N:
            raise UsageError("M = N is not supported (M - N appears in denominators)")
        if a.M < 0 or a.N < 0:
            raise UsageError("M, N must be non-negative")
        if min(a.M, a.N) == 0:
            if a.cmd != "weakeq":
                raise UsageError("M = 0 or N = 0 is only meaningful for weakeq")
            if a.prop not in ("5prime", "7", "all"):
                raise UsageError("prop %s needs M, N >= 1" % a.prop)
        return [(a.M, a.N)], None
    if a.max_mn is None:
        pts, top = list(DEFAULT_GRID), 5
    else:
        if a.max_mn < 3:
            raise UsageError("--max-mn must be at least 3")
        top = a.max_mn
        pts = [(M, N) for s in range(3, top + 1) for M in range(1, s) for N in [s - M] if M != N]
    edge = [p for K in range(2, top) for p in ((K, 0), (0, K))]
    return pts, weak_instances(pts + edge)


def _options(a) -> Options:
    if a.order is not None and a.order < 1:
        raise UsageError("--order must be positive")
    if a.samples < 0:
        raise UsageError("--samples must be non-negative")
    qs = tuple(a.q) if a.q else Options.q
    for q in qs:
        if not 0 < q < 1:
            raise UsageError("q must lie in (0, 1)")
    return Options(order=a.order, q=qs, precision=a.precision, convention=a.convention,
                   rule=getattr(a, "rule", None), prop=getattr(a, "prop", None), samples=a.samples)


def _validate_tasks(a, tasks, pts, opts):
    if a.cmd == "weakeq" and a.M is not None and a.prop != "all" and not tasks:
        raise UsageError("prop %s has no admissible instance at (%d|%d)" % (a.prop, a.M, a.N))
    if a.cmd == "ope" and opts.rule is not None and not tasks:
        raise UsageError("rule %r is not defined at any requested point" % opts.rule)


def _list_rules(pts) -> str:
    from .rules import rule_ids
    ids = set(EXTRA_OPE_IDS)
    for M, N in pts:
        ids.update(rule_ids(M, N))
    return "\n".join(sorted(ids))


def execute(tasks, jobs: int):
    """Yield reports as they are produced."""
    if jobs <= 1 or len(tasks) <= 1:
        for t in tasks:
            yield from run_task(t)
        return
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        futs = [ex.submit(run_task, t) for t in tasks]
        for f in as_completed(futs):
            yield from f.result()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if a.jobs < 1:
            raise UsageError("--jobs must be positive")
        pts, weak = _points(a)
        if a.cmd == "weakeq" and a.M is not None:
            weak = weak_instances(pts, a.prop)
        if a.cmd == "ope" and a.list:
            print(_list_rules(pts))
            return 0
        opts = _options(a)
        tasks = plan(a.cmd, pts, opts, weak)
        _validate_tasks(a, tasks, pts, opts)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print("qsuper: error: %s" % e, file=sys.stderr)
        return 2

    failed = False
    collected = []
    keep = a.sorted or a.summary
    for r in execute(tasks, a.jobs):
        failed = failed or r.status == "fail"
        if keep:
            collected.append(r)
        else:
            print(r.to_json(), flush=True)
    if a.summary:
        print(summary_table(collected))
    elif a.sorted:
        for r in sorted(collected, key=lambda r: r.sort_key()):
            print(r.to_json())
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
