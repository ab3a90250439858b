"""Polynomials as coefficient lists, rational functions, and Berlekamp-Massey."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .arith import rat_to_str, simplify
from .series import PowerSeries


def trim(p: Sequence) -> list:
    p = [simplify(c) for c in p]
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p or [Fraction(0)]


def degree(p: Sequence) -> int:
    p = trim(p)
    return -1 if len(p) == 1 and not p[0] else len(p) - 1


def poly_mul(a: Sequence, b: Sequence) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return trim(out)


def poly_sub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return trim([x - y for x, y in zip(a, b)])


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    b = trim(b)
    db = degree(b)
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(a)
    qt = [Fraction(0)] * max(len(r) - db, 1)
    while degree(r) >= db:
        shift = degree(r) - db
        c = r[-1] / b[-1]
        qt[shift] = c
        r = poly_sub(r, [Fraction(0)] * shift + [c * x for x in b])
    return trim(qt), r


def poly_gcd(a: Sequence, b: Sequence) -> list:
    a, b = trim(a), trim(b)
    while degree(b) >= 0:
        a, b = b, poly_divmod(a, b)[1]
    if degree(a) < 0:
        return [Fraction(0)]
    lead = a[-1]
    return [c / lead for c in a]


def poly_eval(p: Sequence, x):
    out = Fraction(0)
    for c in reversed(p):
        out = out * x + c
    return out


def poly_to_str(p: Sequence[Fraction]) -> list[str]:
    return [rat_to_str(c) for c in p]


@dataclass(frozen=True)
class RationalFn:
    """numerator/denominator, coprime, with denominator constant term 1."""

    numerator: tuple
    denominator: tuple

    @classmethod
    def make(cls, num: Sequence, den: Sequence) -> "RationalFn":
        num, den = trim(num), trim(den)
        g = poly_gcd(num, den)
        if degree(g) > 0:
            num, _ = poly_divmod(num, g)
            den, _ = poly_divmod(den, g)
        c = den[0]
        if not c:
            raise ValueError("denominator vanishes at t = 0")
        return cls(tuple(simplify(x / c) for x in num), tuple(simplify(x / c) for x in den))

    def expand(self, order: int) -> PowerSeries:
        num = PowerSeries.from_poly(self.numerator, order)
        den = PowerSeries.from_poly(self.denominator, order)
        return num / den

    @property
    def chi(self) -> int:
        """deg(denominator) - deg(numerator)."""
        return degree(self.denominator) - degree(self.numerator)

    def to_json(self) -> dict:
        return {"numerator": poly_to_str(self.numerator), "denominator": poly_to_str(self.denominator)}


def berlekamp_massey(seq: Sequence) -> tuple[int, list]:
    """Shortest LFSR: (L, C) with C[0] = 1 and sum_i C[i] s[n-i] = 0 for n >= L."""
    C, B = [Fraction(1)], [Fraction(1)]
    L, m, b = 0, 1, Fraction(1)
    for n in range(len(seq)):
        d = seq[n]
        for i in range(1, L + 1):
            if i < len(C):
                d = d + C[i] * seq[n - i]
        if not d:
            m += 1
            continue
        coef = d / b
        shifted = [Fraction(0)] * m + [coef * x for x in B]
        T = list(C)
        C = poly_sub(C, shifted)
        if 2 * L <= n:
            L, B, b, m = n + 1 - L, T, d, 1
        else:
            m += 1
    return L, C


class InsufficientOrderError(ValueError):
    pass


HELD_OUT = 4


def reconstruct_rational(f: PowerSeries, dmax: int) -> Optional[RationalFn]:
    """Fit a recurrence of order <= dmax on 2*dmax coefficients; validate on the rest.

    Returns None unless the fitted rational function reproduces every
    available coefficient exactly.
    """
    need = 2 * dmax + HELD_OUT
    if f.order < need:
        raise InsufficientOrderError(f"order {f.order} < 2*dmax + {HELD_OUT} = {need}")
    coeffs = list(f.coeffs)
    L, C = berlekamp_massey(coeffs[: 2 * dmax])
    if L > dmax:
        return None
    num = poly_mul(C, coeffs[:L])[:L] if L else [Fraction(0)]
    candidate = RationalFn.make(num, C)
    if candidate.expand(f.order) != f:
        return None
    return candidate
