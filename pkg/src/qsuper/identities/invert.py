"""Invertibility constants from the specialization of F_mu (type I) and G_mu (type II).

The rational prefactor is specialized exactly at

    w_j = q^-j w0 (j <= M),  w_{M+j} = q^(-M+j) w0 (1 <= j <= N),

multiplied by the residual scalar of the normal-ordered chain, and compared
with (-1)^(M+N) q^(2 rho_mu) g^-1 (type I) or the g* counterparts (type II).
Both sides carry the same q-Pochhammer ratio; the left one is evaluated by a
truncated product with a tail bound, the right one through mpmath.qp.
"""

from __future__ import annotations

import time
from fractions import Fraction

import mpmath

from ..catalog import catalog
from ..exact import MRat, Phase, QRat, Scalar
from ..rmatrix import rho
from ..vertex import chain_exponent, chains, composite_scalar_check, truncated_poch
from .fmu import IntegralCoeffs
from .weak import Sym, cprod

__all__ = ["prefactor", "specialization_points", "specialize", "invertibility_eval",
           "charge_mismatch", "poch_ratio_params"]


def specialization_points(M: int, N: int) -> dict:
    """w_j -> q^k w0 exponents k for j = 1..M+N."""
    k = {j: -j for j in range(1, M + 1)}
    k.update({M + j: -M + j for j in range(1, N + 1)})
    return k


def _phase(M, N) -> Phase:
    D = M - N
    return Phase(Fraction(1, D) + Fraction(M * (M - 1), 2 * D * D))


def prefactor(M: int, N: int, mu: int, reading: str = "printed") -> dict:
    """Rational part, fractional power and phase of F_mu (M > N) or G_mu (N > M).

    reading "qpower" replaces q^(-N+1-mu) by q^(-N) in the type I branch mu <= M.
    """
    if M == N:
        raise ValueError("M = N")
    if not 1 <= mu <= M + N:
        raise ValueError("mu out of range")
    c = Sym()
    q, w = c.q, c.w
    ic = IntegralCoeffs(M, N)
    h = q - 1 / q
    D = M - N
    if D > 0:
        cc = ic.c(mu, q) * ic.cstar(mu, q)
        if mu <= M:
            den = h ** N * cprod(c, [q - w(j + 1) / w(j) for j in range(M) if j != mu - 1])
            k = -N if reading == "qpower" else -N + 1 - mu
            P = w(mu - 1) / w(0) * cc * (-1) ** (mu + 1) * q ** k / den
        else:
            den = h ** N * cprod(c, [q - w(j + 1) / w(j) for j in range(M)])
            P = w(mu) / w(0) * cc * (-1) ** mu * q ** (-N) * (q - w(mu - 1) / w(mu)) / den
        frac = ("w0", -Fraction(D - 1, D))
    else:
        dd = ic.d(mu, q) * ic.dstar(mu, q)
        if mu <= M:
            den = h ** N * cprod(c, [q - w(j + 1) / w(j) for j in range(mu - 1)]) \
                * cprod(c, [w(j) / w(j + 1) - 1 / q for j in range(mu, M)])
            P = dd * (-1) ** (N + mu) * q ** (-M + mu) / den
        else:
            den = h ** N * cprod(c, [q - w(j + 1) / w(j) for j in range(M)])
            P = dd * (-1) ** (N + mu + 1) / den * w(M) / w(mu - 1) * (q - w(mu - 1) / w(mu))
        frac = ("w%d" % (M + N), Fraction(1 - D, D))
    return {"P": P, "frac": frac, "phase": _phase(M, N)}


def poch_ratio_params(M: int, N: int) -> tuple:
    """((a_num, a_den), p) of the specialized ratio (q^a_num; q^p) / (q^a_den; q^p)."""
    D = M - N
    if D > 0:
        # (q^{3D} x; q^{2D}) / (q^{D+2} x; q^{2D}),  x = w_{M+N}/w0 = q^-D
        return (3 * D - D, D + 2 - D), 2 * D
    E = -D
    # (q^{3E} y; q^{2E}) / (q^{E-2} y; q^{2E}),  y = w0/w_{M+N} = q^-E
    return (3 * E - E, E - 2 - E), 2 * E


def specialize(M: int, N: int, mu: int, reading: str = "printed") -> dict:
    """Exact specialization; returns the w0-free Scalar and the homogeneity data."""
    pf = prefactor(M, N, mu, reading)
    P, (fvar, fexp) = pf["P"], pf["frac"]
    wnames = ["w%d" % j for j in range(M + N + 1)]
    hom = P.total_degree_in(wnames) + fexp
    pts = specialization_points(M, N)
    R = P.subs_monomial({"w%d" % j: (1, {"q": k, "w0": 1}) for j, k in pts.items()})
    e = R.total_degree_in(["w0"])
    Rq = R * MRat.monomial(1, w0=-e)
    if "w0" in Rq.variables():
        raise AssertionError("specialized prefactor is not a monomial in w0")
    # fractional power: w0^f, or w_{M+N}^f = q^{(N-M) f} w0^f
    qfrac = Fraction(0) if fvar == "w0" else (N - M) * fexp
    S = Scalar(pf["phase"], Rq.to_qrat(), {"z": e + fexp, "q": qfrac})
    return {"scalar": S, "homogeneity": hom, "w0_power": e + fexp}


def _poch(a: int, p: int, q, route: str, tol):
    """(q^a; q^p)_inf with any exactly vanishing factor removed; returns (value, removed, bound)."""
    pre, k, removed = mpmath.mpf(1), 0, False
    while a + k * p <= 0:
        if a + k * p == 0:
            removed = True
        else:
            pre *= 1 - q ** (a + k * p)
        k += 1
    a0 = a + k * p
    if route == "lib":
        return pre * mpmath.qp(q ** a0, q ** p), removed, mpmath.mpf(0)
    v, _, bound = truncated_poch(a0, p, q, tol)
    return pre * v, removed, bound


def _scalar_value(S: Scalar, q) -> mpmath.mpc:
    if S.zpart.get("z") != 0:
        raise ValueError("scalar still depends on w0")
    return _phase_value(S.phase) * _qrat_eval(S.qpart, q) * q ** _mpf(S.zpart.get("q"))


def _mpf(x: Fraction) -> mpmath.mpf:
    return mpmath.mpf(x.numerator) / x.denominator


def _phase_value(ph: Phase) -> mpmath.mpc:
    return mpmath.expjpi(_mpf(ph.r))


def _qrat_eval(x: QRat, q) -> mpmath.mpf:
    n, d = x.num, x.den
    ev = lambda p: sum(mpmath.mpf(int(c.p)) / int(c.q) * q ** i for i, c in enumerate(p.coeffs()))
    return ev(n) / ev(d) * q ** x.shift


def _target(M, N, mu, q, route, tol, kind):
    """(-1)^{M+N} q^{2 rho_mu} g^-1, or for type II the requested pattern times (g*)^-1."""
    D = M - N
    if D > 0:
        qexp, (a1, p1), (a2, p2) = Fraction(D - 1, 2), (2, 2 * D), (2 * D, 2 * D)
    else:
        qexp, (a1, p1), (a2, p2) = Fraction(-3 * D - 1, 2), (-2, -2 * D), (-2 * D, -2 * D)
    n, rem, b1 = _poch(a2, p2, q, route, tol)
    d, rem2, b2 = _poch(a1, p1, q, route, tol)
    ph = _phase(M, N)     # g carries the conjugate phase
    ginv = _phase_value(ph) * q ** (-_mpf(qexp)) * n / d
    if kind == "rho":
        sgn = (-1) ** (M + N) * (1 if D > 0 else -1)
        val = sgn * q ** rho(M, N)[mu - 1] * ginv
    else:  # (-1)^{[mu]+1}, [mu] = 1 for mu <= M
        val = (-1) ** ((1 if mu <= M else 0) + 1) * ginv
    scalar = Scalar(ph, QRat.q(rho(M, N)[mu - 1]) if kind == "rho" else QRat(1),
                    {"q": -qexp})
    if kind == "rho":
        scalar = scalar * Scalar((M + N + (0 if D > 0 else 1)) % 2)
    else:
        scalar = scalar * Scalar(((1 if mu <= M else 0) + 1) % 2)
    return val, scalar, rem or rem2, b1 + b2


def charge_mismatch(M: int, N: int) -> dict:
    """Total zero-mode charge of the chains behind Phi*_mu Phi_nu (or Psi*_mu Psi_nu)."""
    cat = catalog(M, N)
    L = M + N
    if M > N:
        left = lambda mu: ["Phistar"] + [_xkey("X-", j, M) for j in range(1, mu)]
        right = lambda nu: [_xkey("X-", j, M) for j in range(nu, L)] + ["Phi"]
    else:
        left = lambda mu: [_xkey("X+", j, M) for j in range(mu, L)] + [("Psistar", -1)]
        right = lambda nu: ["Psi"] + [_xkey("X+", j, M) for j in range(1, nu)]
    out, ok = {}, True
    for mu in range(1, L + 1):
        for nu in range(mu, L + 1):
            tot = {}
            for k in left(mu) + right(nu):
                for s, v in cat.charge(k).items():
                    tot[s] = tot.get(s, 0) + v
            tot = {s: v for s, v in tot.items() if v}
            if mu == nu:
                ok = ok and not tot
            else:
                ok = ok and bool(tot)
                out["%d,%d" % (mu, nu)] = {s: str(v) for s, v in sorted(tot.items())}
    return {"ok": ok, "charges": out}


def _xkey(sign, j, M):
    split = (sign == "X+" and j > M) or (sign == "X-" and j >= M)
    return (sign, j, 1) if split else (sign, j)


def invertibility_eval(M: int, N: int, mu: int, q_value, precision=1e-10, dps: int = 40) -> dict:
    t0 = time.perf_counter()
    q_value = Fraction(q_value)
    if not 0 < q_value < 1:
        raise ValueError("q must lie in (0, 1)")
    if M == N:
        raise ValueError("M = N")
    precision = mpmath.mpf(precision)
    typ = "I" if M > N else "II"
    sp = specialize(M, N, mu)
    ch_name = "typeI.forward" if typ == "I" else "typeII.forward"
    chain, ch_target = chains(M, N)[ch_name]
    chain_ok = composite_scalar_check(M, N, chain, ch_target)
    chain_scalar = chain_exponent(M, N, chain).prefactor
    total = sp["scalar"] * chain_scalar
    w0_free = sp["homogeneity"] + chain_scalar.zpart.get("z") == 0 and total.zpart.get("z") == 0
    (an, ad), p = poch_ratio_params(M, N)
    kinds = ("rho",) if typ == "I" else ("rho", "sign")
    with mpmath.workdps(dps):
        q = mpmath.mpf(q_value.numerator) / q_value.denominator
        tol = precision * mpmath.mpf("1e-6")
        pn, r1, b1 = _poch(an, p, q, "own", tol)
        pd, r2, b2 = _poch(ad, p, q, "own", tol)
        lhs = _scalar_value(total, q) * pn / pd
        bound = b1 + b2
        results = {}
        for kind in kinds:
            tv, tscalar, rem, tb = _target(M, N, mu, q, "lib", tol, kind)
            rel = abs(lhs - tv) / abs(tv)
            results[kind] = {"target": mpmath.nstr(tv, 20), "rel_err": float(rel),
                             "exact_ratio": (total / tscalar).as_dict(),
                             "exact_match": total == tscalar,
                             "ok": bool(rel < precision)}
        degenerate = r1 or r2
        alternatives = {}
        if typ == "I" and mu <= M:
            alt = specialize(M, N, mu, "qpower")["scalar"] * chain_scalar
            alternatives["qpower"] = (alt / _target(M, N, mu, q, "lib", tol, "rho")[1]).as_dict()
    if bound >= precision:
        raise ArithmeticError("precision %s not reachable: tail bound %s" % (precision, bound))
    primary = results["rho"]
    ok = w0_free and primary["ok"]
    witness = None if ok else {"w0_free": w0_free, "chain": chain_ok["witness"],
                               "exact_ratio": primary["exact_ratio"]}
    return {"check": "invert", "params": {"M": M, "N": N, "mu": mu, "q": str(q_value), "type": typ},
            "status": "pass" if ok else "fail", "witness": witness,
            "lhs": mpmath.nstr(lhs, 20), "targets": results, "alternatives": alternatives,
            "degenerate": degenerate, "chain_residual": chain_scalar.as_dict(),
            "tail_bound": float(bound), "w0_free": w0_free,
            "ms": round(1000 * (time.perf_counter() - t0), 1)}
