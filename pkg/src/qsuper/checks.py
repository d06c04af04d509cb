"""Every verification as a picklable task producing CheckReports.

A task is a pair (name, params) with params a plain dict; `run_task` turns it
into a list of reports.  `plan` expands a subcommand over parameter points.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .report import CheckReport

__all__ = ["Options", "DEFAULT_GRID", "TASKS", "run_task", "plan", "WEAKEQ_PROPS",
           "EXTRA_OPE_IDS", "SUBCOMMANDS"]

DEFAULT_GRID = ((1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2))
WEAKEQ_PROPS = ("1", "2", "3", "5prime", "5", "6", "7")
HSTAR_PAIRS = ("11", "LL", "1L")
EXTRA_OPE_IDS = tuple("hstar." + p for p in HSTAR_PAIRS)
SUBCOMMANDS = ("ybe", "unitarity", "crossing", "initial", "rmatrix-derived", "ope", "weakeq",
               "fmu", "composite", "exchange", "invert", "constants", "suite")


@dataclass(frozen=True)
class Options:
    order: int | None = None          # None: 40 for q-series checks, 30 for OPE series
    q: tuple = (Fraction(1, 2), Fraction(1, 3))
    precision: float = 1e-10
    convention: str | None = None     # None: both (initial) or paper (the rest)
    rule: str | None = None
    prop: str | None = None
    samples: int = 100
    hstar_modes: int = 50


def _timed(check, params, fn):
    t0 = time.perf_counter()
    try:
        status, witness = fn()
    except (ArithmeticError, ValueError, KeyError) as e:
        status, witness = "fail", {"error": "%s: %s" % (type(e).__name__, e)}
    return CheckReport(check, params, status, witness, 1000 * (time.perf_counter() - t0))


def _st(ok):
    return "pass" if ok else "fail"


# --------------------------------------------------------------------------
# R-matrix
# --------------------------------------------------------------------------

def _grading(p):
    from .graded import Grading
    return Grading(p["M"], p["N"], p["convention"])


def t_ybe(p):
    from .rmatrix import check_ybe

    def go():
        r = check_ybe(_grading(p))
        return _st(r["ok"]), r["witness"]
    return [_timed("ybe", p, go)]


def t_unitarity(p):
    from .rmatrix import check_unitarity

    def go():
        r = check_unitarity(_grading(p), p["K"])
        return _st(r["ok"]), None if r["ok"] else r
    return [_timed("unitarity", p, go)]


def t_crossing(p):
    from .rmatrix import check_crossing

    def go():
        r = check_crossing(_grading(p), p["K"])
        return _st(r["ok"]), None if r["ok"] else r
    return [_timed("crossing", p, go)]


def t_initial(p):
    from .rmatrix import check_initial
    return [_timed("initial", p, lambda: ("report-only", check_initial(_grading(p))))]


def t_derived(p):
    from .rmatrix import check_derived

    def go():
        r = check_derived(_grading(p))
        return _st(r["ok"]), None if r["ok"] else r
    return [_timed("rmatrix-derived", p, go)]


# --------------------------------------------------------------------------
# normal ordering
# --------------------------------------------------------------------------

def t_ope(p):
    from .rules import corrected_reading, rule_table, verify_rule
    out = []
    for rule in rule_table(p["M"], p["N"]):
        if rule.rid != p["rule"]:
            continue

        def go(rule=rule):
            v = verify_rule(p["M"], p["N"], rule, p["K"])
            if v["ok"]:
                return "pass", None
            w = {"scalar": v["scalar"], "kernel": v["kernel"], "series": v["series"], **v["witness"]}
            alt = corrected_reading(rule)
            if alt is not None:
                c = verify_rule(p["M"], p["N"], alt, p["K"])
                w["pole_on_eps2"] = {k: c[k] for k in ("scalar", "kernel", "series")}
            return "fail", w
        out.append(_timed("ope", {**p, "rule": rule.name}, go))
    return out


def _hstar_indices(M, N, pair):
    top = M + N - 1
    return {"11": (1, 1), "LL": (top, top), "1L": (1, top)}[pair]


def t_hstar(p):
    from .boson import hstar_kernel, hstar_kernel_closed

    def go():
        M, N = p["M"], p["N"]
        i, k = _hstar_indices(M, N, p["pair"])
        eng, closed = hstar_kernel(M, N, i, k), hstar_kernel_closed(M, N, p["pair"])
        exact = eng == closed
        bad = [m for m in range(1, p["modes"] + 1)
               if eng.specialize_qh(m) != closed.specialize_qh(m)]
        ok = exact and not bad
        return _st(ok), None if ok else {"closed_form_equal": exact, "modes": bad[:5]}
    return [_timed("ope", {**p, "rule": "hstar." + p["pair"]}, go)]


# --------------------------------------------------------------------------
# composite products
# --------------------------------------------------------------------------

PRINTED_ENDPOINT = "typeII.backward.printed"


def chain_names(M, N):
    from .vertex import chains
    names = sorted(chains(M, N))
    if N > M and N >= 2:
        names.append(PRINTED_ENDPOINT)
    return names


def t_composite(p):
    from .vertex import chains, composite_scalar_check, printed_typeII_backward

    def go():
        M, N = p["M"], p["N"]
        if p["chain"] == PRINTED_ENDPOINT:
            ch, target = printed_typeII_backward(M, N)
        else:
            ch, target = chains(M, N)[p["chain"]]
        r = composite_scalar_check(M, N, ch, target)
        return _st(r["ok"]), r["witness"]
    return [_timed("composite", p, go)]


def t_exchange(p):
    """Edge vertex-operator exchange relations; variant readings ride in the witness."""
    from .vertex import current_commutations, relation_table, verify_relation
    M, N = p["M"], p["N"]
    rels = relation_table(M, N)
    out = []
    for rel in rels:
        if rel.diagnostic:
            continue

        def go(rel=rel):
            v = verify_relation(M, N, rel, p["K"])
            if v["ok"]:
                return "pass", None
            w = {k: v[k] for k in ("structural", "numeric", "series")}
            w.update(v["witness"] or {})
            for d in rels:
                tag = d.note.split(";")[0] if d.note.startswith("eps") else ""
                if d.diagnostic and d.rid == rel.rid + ".alt" and tag == rel.note:
                    w.setdefault("variants", {})[d.note] = verify_relation(M, N, d, p["K"])["ok"]
            return "fail", w
        name = rel.rid + ("[%s]" % rel.note if rel.note else "")
        out.append(_timed("exchange", {**p, "relation": name}, go))

    def currents():
        res = current_commutations(M, N, p["K"])
        bad = [r for r in res if not r["ok"]]
        return _st(not bad), None if not bad else {"pairs": bad}
    out.append(_timed("exchange", {**p, "relation": "currents"}, currents))
    return out


# --------------------------------------------------------------------------
# identities
# --------------------------------------------------------------------------

def _report(d):
    return CheckReport(d["check"], d["params"], d["status"], d["witness"], d["ms"])


def t_weakeq(p):
    from .identities.props import check_prop
    t0 = time.perf_counter()
    try:
        d = check_prop(p["prop"], p["M"], p["N"], p["mu"], p.get("nu"), p["samples"])
    except ValueError as e:
        return [CheckReport("weakeq.prop%s" % p["prop"], p, "fail", {"error": str(e)},
                            1000 * (time.perf_counter() - t0))]
    w = d["witness"]
    if w is not None:
        w = {**w, "resolved_ok": d["resolved_ok"], "routes_agree": d["routes_agree"]}
    elif not d["routes_agree"]:
        w = {"routes_agree": False, "readings": d["readings"]}
    params = {**d["params"], "samples": p["samples"]}
    return [CheckReport(d["check"], params, d["status"], w, d["ms"])]


def t_fmu(p):
    from .identities.fmu import check_F_mu
    return [_report(check_F_mu(p["M"], p["N"], p["mu"]))]


def t_invert(p):
    from .identities.invert import invertibility_eval
    t0 = time.perf_counter()
    try:
        d = invertibility_eval(p["M"], p["N"], p["mu"], Fraction(p["q"]), p["precision"])
    except ArithmeticError as e:
        return [CheckReport("invert", p, "fail", {"error": str(e)}, 1000 * (time.perf_counter() - t0))]
    w = d["witness"]
    if w is not None:
        w = {**w, "targets": d["targets"], "alternatives": d["alternatives"] or None,
             "chain_residual": d["chain_residual"], "degenerate": d["degenerate"]}
    return [CheckReport("invert", {**d["params"], "precision": p["precision"]}, d["status"], w, d["ms"])]


def t_charges(p):
    from .identities.invert import charge_mismatch

    def go():
        r = charge_mismatch(p["M"], p["N"])
        return _st(r["ok"]), None if r["ok"] else r
    return [_timed("invert.charges", p, go)]


def t_constants(p):
    from .vertex import eval_constants

    def go():
        r = eval_constants(p["M"], p["N"], Fraction(p["q"]))
        ok = r["routes_rel_diff"] < p["precision"] and r["tail_bound"] < p["precision"]
        r.pop("value_mp")
        # the value is the result, so it travels with passing reports too
        return _st(ok), r
    return [_timed("constants", p, go)]


TASKS = {
    "ybe": t_ybe, "unitarity": t_unitarity, "crossing": t_crossing, "initial": t_initial,
    "rmatrix-derived": t_derived, "ope": t_ope, "hstar": t_hstar, "composite": t_composite,
    "exchange": t_exchange, "weakeq": t_weakeq, "fmu": t_fmu, "invert": t_invert, "invert.charges": t_charges,
    "constants": t_constants,
}


def run_task(task) -> list:
    name, params = task
    return TASKS[name](params)


# --------------------------------------------------------------------------
# planning
# --------------------------------------------------------------------------

def _conv(opts, default=("paper",)):
    return (opts.convention,) if opts.convention else default


def _q_str(q):
    return str(Fraction(q))


def plan(sub: str, points, opts: Options, weak_points=None) -> list:
    """Tasks for a subcommand over (M, N) points.

    weak_points: (prop, M, N, mu, nu) tuples for weakeq; computed from points
    when omitted.
    """
    tasks = []
    K40 = opts.order or 40
    K30 = opts.order or 30
    if sub == "suite":
        for s in SUBCOMMANDS[:-1]:
            tasks += plan(s, points, opts, weak_points)
        return tasks
    for M, N in points:
        base = {"M": M, "N": N}
        if sub == "ybe":
            tasks += [("ybe", {**base, "convention": c}) for c in _conv(opts)]
        elif sub == "unitarity":
            tasks += [("unitarity", {**base, "K": K40, "convention": c}) for c in _conv(opts)]
        elif sub == "crossing":
            tasks += [("crossing", {**base, "K": K40, "convention": c}) for c in _conv(opts)]
        elif sub == "initial":
            tasks += [("initial", {**base, "convention": c}) for c in _conv(opts, ("paper", "flipped"))]
        elif sub == "rmatrix-derived":
            tasks += [("rmatrix-derived", {**base, "convention": c}) for c in _conv(opts)]
        elif sub == "ope":
            from .rules import rule_ids
            ids = list(rule_ids(M, N)) + list(EXTRA_OPE_IDS)
            if opts.rule is not None:
                ids = [r for r in ids if r == opts.rule]
            for rid in ids:
                if rid.startswith("hstar."):
                    tasks.append(("hstar", {**base, "pair": rid[6:], "modes": opts.hstar_modes}))
                else:
                    tasks.append(("ope", {**base, "rule": rid, "K": K30}))
        elif sub == "fmu":
            tasks += [("fmu", {**base, "mu": mu}) for mu in range(1, M + N + 1)]
        elif sub == "composite":
            tasks += [("composite", {**base, "chain": c}) for c in chain_names(M, N)]
        elif sub == "exchange":
            tasks.append(("exchange", {**base, "K": K30}))
        elif sub == "invert":
            tasks.append(("invert.charges", dict(base)))
            for q in opts.q:
                tasks += [("invert", {**base, "mu": mu, "q": _q_str(q), "precision": opts.precision})
                          for mu in range(1, M + N + 1)]
        elif sub == "constants":
            tasks += [("constants", {**base, "q": _q_str(q), "precision": opts.precision})
                      for q in opts.q]
        elif sub != "weakeq":
            raise ValueError("unknown subcommand %r" % sub)
    if sub == "weakeq":
        if weak_points is None:
            weak_points = weak_instances(points, opts.prop)
        for prop, M, N, mu, nu in weak_points:
            if opts.prop in (None, "all", prop):
                tasks.append(("weakeq", {"prop": prop, "M": M, "N": N, "mu": mu, "nu": nu,
                                         "samples": opts.samples}))
    return tasks


def weak_instances(points, prop=None) -> list:
    """Admissible (prop, M, N, mu, nu) at the given points; (M|0) and (0|N) points
    only carry 5' and 7."""
    from .identities.props import admissible
    out = []
    props = WEAKEQ_PROPS if prop in (None, "all") else (prop,)
    for M, N in points:
        for pr in props:
            if M == 0 or N == 0:
                if pr not in ("5prime", "7") or (pr == "7" and (M != 0 or N < 2)):
                    continue
            elif pr in ("5prime", "7"):
                continue
            out += [(pr, M, N, mu, nu) for mu, nu in admissible(pr, M, N)]
    return out
