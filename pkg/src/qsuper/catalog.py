"""Bosonized currents and edge vertex operators as FieldExponents.

Keys:
    ("X+", i) / ("X-", i)           for the currents without a q-difference,
    ("X+", i, eps) / ("X-", i, eps) for the eps-pieces of the split currents,
    "Phi", "Phistar", "Psi", ("Psistar", eps).

A split current or Psi* is (piece(+) - piece(-)) / ((q - q^-1) z) up to the
overall sign recorded by `split_sign`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .boson import (BosonBasis, FieldExponent, compose, field_exponent, h_modes,
                    hstar_modes, phase_exponent, species_field)
from .exact import Scalar

__all__ = ["Catalog", "catalog", "split_sign"]


def _pow_prefactor(k, e) -> Scalar:
    """(q^k z)^e."""
    k, e = Fraction(k), Fraction(e)
    return Scalar(0, 1, {"q": k * e, "z": e})


class Catalog:
    def __init__(self, M: int, N: int):
        if M < 1 or N < 1:
            raise ValueError("M, N must be positive")
        self.M, self.N = M, N
        self.basis = BosonBasis(M, N)
        self._cache = {}

    # -- currents ----------------------------------------------------------------
    def _x(self, sign: str, i: int, eps=None) -> FieldExponent:
        M, N = self.M, self.N
        if not 1 <= i <= M + N - 1:
            raise KeyError("no current X%s,%d" % (sign, i))
        split = (sign == "+" and i > M) or (sign == "-" and i >= M)
        if split != (eps is not None):
            raise KeyError("current X%s,%d %s an eps label" % (sign, i, "needs" if split else "takes no"))
        hm = h_modes(M, N, i)
        if sign == "+":
            parts = [field_exponent(hm, Fraction(1, 2))]
            if i <= M - 1:
                parts.append(phase_exponent({"a%d" % i: 1}))
            elif i == M:
                parts.append(field_exponent(species_field("c1"), 0))
                parts.append(phase_exponent({"a%d" % j: -1 for j in range(1, M)}))
            else:
                j = i - M
                parts.append(field_exponent(species_field("c%d" % j), 0, shift=eps, coeff=-1))
                parts.append(field_exponent(species_field("c%d" % (j + 1)), 0))
            pref = Scalar()
        else:
            parts = [field_exponent(hm, Fraction(-1, 2), coeff=-1)]
            pref = Scalar()
            if i <= M - 1:
                parts.append(phase_exponent({"a%d" % i: -1}))
                pref = Scalar(1)
            elif i == M:
                parts.append(field_exponent(species_field("c1"), 0, shift=eps, coeff=-1))
                parts.append(phase_exponent({"a%d" % j: 1 for j in range(1, M)}))
            else:
                j = i - M
                parts.append(field_exponent(species_field("c%d" % j), 0))
                parts.append(field_exponent(species_field("c%d" % (j + 1)), 0, shift=eps, coeff=-1))
        lab = "X%s,%d" % (sign, i) + ("" if eps is None else "[%+d]" % eps)
        return compose(*parts, label=lab).with_prefactor(pref)

    # -- vertex operators ------------------------------------------------------
    def _vo(self, name: str, eps=None) -> FieldExponent:
        M, N = self.M, self.N
        D = M - N
        if D == 0:
            raise ValueError("vertex operators need M != N")
        top = M + N - 1
        e = Fraction(D - 1, 2 * D)
        up = {"a%d" % k: Fraction(k - 1, D) for k in range(1, M + 1)}
        down = {k: -v for k, v in up.items()}
        if name == "Phi":
            k0 = D + 1
            parts = [field_exponent(hstar_modes(M, N, top), Fraction(-1, 2), shift=k0, coeff=-1),
                     field_exponent(species_field("c%d" % N), 0, shift=k0),
                     phase_exponent(down)]
        elif name == "Phistar":
            k0 = 1
            parts = [field_exponent(hstar_modes(M, N, 1), Fraction(-1, 2), shift=k0),
                     phase_exponent(up)]
        elif name == "Psi":
            k0 = 1
            parts = [field_exponent(hstar_modes(M, N, 1), Fraction(1, 2), shift=k0, coeff=-1),
                     phase_exponent(down)]
        elif name == "Psistar":
            k0 = -D + 1
            parts = [field_exponent(hstar_modes(M, N, top), Fraction(1, 2), shift=k0),
                     field_exponent(species_field("c%d" % N), 0, shift=k0 + eps, coeff=-1),
                     phase_exponent(up)]
        else:
            raise KeyError(name)
        lab = name + ("" if eps is None else "[%+d]" % eps)
        return compose(*parts, label=lab).with_prefactor(_pow_prefactor(k0, e))

    def __getitem__(self, key) -> FieldExponent:
        if key not in self._cache:
            if isinstance(key, tuple) and key[0] in ("X+", "X-"):
                self._cache[key] = self._x(key[0][1], key[1], key[2] if len(key) > 2 else None)
            elif isinstance(key, tuple) and key[0] == "Psistar":
                self._cache[key] = self._vo("Psistar", key[1])
            elif key in ("Phi", "Phistar", "Psi"):
                self._cache[key] = self._vo(key)
            else:
                raise KeyError(key)
        return self._cache[key]

    def charge(self, key) -> dict:
        return dict(self[key].charge)


def split_sign(M: int, key) -> int:
    """X = split_sign * (piece(+) - piece(-)) / ((q - q^-1) z) for split operators.

    X^{-,M+j} carries an overall minus sign in its bosonization; X^{-,M},
    X^{+,M+j} and Psi* do not.
    """
    if isinstance(key, tuple) and key[0] == "X-" and len(key) > 2 and key[1] > M:
        return -1
    return 1


@lru_cache(maxsize=None)
def catalog(M: int, N: int) -> Catalog:
    return Catalog(M, N)
