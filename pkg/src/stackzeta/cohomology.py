"""Frobenius eigenvalues on compactly supported cohomology of catalog stacks.

For B of a connected d-dimensional group with transgressive generators
``alpha_ij`` in odd degrees i, H^*(BG) is the polynomial ring on generators
of degree i+1, and Poincare duality puts the eigenvalues
``q^-d * prod alpha_ij^-m_ij`` (with ``sum m_ij (i+1) = 2r``) in degree
``-2r - 2d`` of compactly supported cohomology.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Optional, Sequence

from .arith import QuadField, WeilNum, frobenius_roots, is_rational, rat_to_str, simplify, weilnum_to_json
from .catalog import (
    GL,
    AffineLine,
    BConnectedGroup,
    BElliptic,
    BFiniteGroup,
    BNormTorus,
    DisjointUnion,
    Gm,
    P1,
    Point,
    Stack,
)


class GaloisInstabilityError(ValueError):
    """A characteristic polynomial came out with irrational coefficients."""


class NoSpectrumError(ValueError):
    """The stack has no materialized spectrum in this model."""


@dataclass(frozen=True)
class BorelData:
    """Dimension d and generators (odd degree i, eigenvalues on N^i)."""

    d: int
    gens: tuple

    def __post_init__(self):
        gens = tuple((int(i), tuple(eigs)) for i, eigs in self.gens)
        object.__setattr__(self, "gens", gens)
        for i, eigs in gens:
            if i <= 0 or i % 2 == 0:
                raise ValueError(f"generator degree {i} must be odd and positive")
            for e in eigs:
                if e.weight < i:
                    raise ValueError(f"eigenvalue {e} on N^{i} has weight {e.weight} < {i}")

    @property
    def slots(self) -> list:
        """Flattened (degree, eigenvalue) pairs, one per generator basis vector."""
        return [(i, e) for i, eigs in self.gens for e in eigs]


def gl_borel_data(n: int, q: int) -> BorelData:
    return BorelData(n * n, tuple((2 * k - 1, (WeilNum.q_power(q, k),)) for k in range(1, n + 1)))


def torus_form_borel_data(q: int) -> BorelData:
    # weight-2 generator -q: the sign is pinned by c_v at odd v
    return BorelData(1, ((1, (WeilNum(Fraction(-q), 2),)),))


def elliptic_borel_data(field: QuadField) -> BorelData:
    return BorelData(1, ((1, frobenius_roots(field)),))


def borel_data_for(stack: Stack) -> BorelData:
    if isinstance(stack, BConnectedGroup):
        if stack.borel is not None:
            return stack.borel
        group = stack.group
        n = 1 if isinstance(group, Gm) else group.n
        return gl_borel_data(n, group.q)
    if isinstance(stack, BNormTorus):
        return torus_form_borel_data(stack.q)
    if isinstance(stack, BElliptic):
        return elliptic_borel_data(QuadField(stack.a, stack.q))
    raise NoSpectrumError(f"{stack.name} has no Borel data")


@dataclass(frozen=True)
class FrobSpectrum:
    """Eigenvalues of Frobenius on H^n_c, keyed by degree n.

    ``depth`` is None for finite cohomology.  For Sym-type spectra,
    ``trace_product = (twist, gens)`` gives the full alternating trace as
    ``twist^v * prod 1/(1 - g^v)``.
    """

    entries: dict
    q: int
    dim: Fraction
    top: int
    depth: Optional[int] = None
    trace_product: Optional[tuple] = field(default=None, compare=False)

    @property
    def bounded(self) -> bool:
        return self.depth is None

    def degrees(self) -> list[int]:
        """Nonzero degrees, from the top down."""
        return sorted((n for n, eigs in self.entries.items() if eigs), reverse=True)

    def eigenvalues(self, n: int) -> tuple:
        return self.entries.get(n, ())

    def levels(self, depth: Optional[int]) -> list[int]:
        """The first ``depth`` nonzero degrees from the top (all if None)."""
        degs = self.degrees()
        if depth is None or self.bounded:
            return degs
        if depth > len(degs):
            raise ValueError(f"spectrum materialized to {len(degs)} degrees, {depth} requested")
        return degs[:depth]

    def partial_trace(self, v: int, depth: Optional[int] = None):
        """sum_n (-1)^n sum_gamma gamma^v over the first ``depth`` degrees."""
        total = Fraction(0)
        for n in self.levels(depth):
            s = sum((g.value ** v for g in self.entries[n]), Fraction(0))
            total = total + s if n % 2 == 0 else total - s
        return simplify(total)

    def full_trace(self, v: int):
        """Exact value of the complete alternating trace, when a closed form exists."""
        if self.bounded:
            return self.partial_trace(v)
        if self.trace_product is None:
            return None
        twist, gens = self.trace_product
        out = twist.value ** v
        for g in gens:
            out = out / (1 - g.value ** v)
        return simplify(out)

    def to_json(self) -> list:
        return [
            {"degree": n, "eigenvalues": [weilnum_to_json(g) for g in self.entries[n]]}
            for n in self.degrees()
        ]


def partitions121(weights: Sequence[int], total: int) -> list[tuple]:
    """All m >= 0 (one entry per slot) with sum m_s * weights[s] == total."""
    out: list[tuple] = []
    k = len(weights)

    def rec(s: int, remaining: int, acc: list):
        if s == k:
            if remaining == 0:
                out.append(tuple(acc))
            return
        w = weights[s]
        for m in range(remaining // w + 1):
            acc.append(m)
            rec(s + 1, remaining - m * w, acc)
            acc.pop()

    rec(0, total, [])
    return out


def _monomial(gens: Sequence[WeilNum], ms: Sequence[int], start: WeilNum) -> WeilNum:
    out = start
    for g, m in zip(gens, ms):
        if m:
            out = out * g ** m
    return out


def borel_spectrum(b: BorelData, q: int, depth: int) -> FrobSpectrum:
    """H_c of BG for r = 0..depth: degree -2r-2d holds q^-d prod alpha^-m."""
    slots = b.slots
    weights = [i + 1 for i, _ in slots]
    inverses = [e.inverse() for _, e in slots]
    twist = WeilNum.q_power(q, -b.d)
    entries = {}
    for r in range(depth + 1):
        entries[-2 * r - 2 * b.d] = tuple(
            _monomial(inverses, ms, twist) for ms in partitions121(weights, 2 * r)
        )
    return FrobSpectrum(entries, q, Fraction(-b.d), -2 * b.d, depth, (twist, tuple(inverses)))


def borel_ordinary(b: BorelData, depth: int) -> dict:
    """Eigenvalues on H^{2r}(BG) for r = 0..depth."""
    slots = b.slots
    weights = [i + 1 for i, _ in slots]
    gens = [e for _, e in slots]
    return {
        2 * r: tuple(_monomial(gens, ms, WeilNum.one()) for ms in partitions121(weights, 2 * r))
        for r in range(depth + 1)
    }


def abelian_spectrum(roots: Sequence[WeilNum], q: int, depth: int) -> FrobSpectrum:
    """H_c of BA for an abelian variety A with H^1 eigenvalues ``roots`` (2g of them).

    Degree -2g-2n holds q^-g times the inverse of each size-n multiset product
    of the roots.
    """
    if len(roots) % 2:
        raise ValueError("an abelian variety has an even number of H^1 eigenvalues")
    g = len(roots) // 2
    inverses = [r.inverse() for r in roots]
    twist = WeilNum.q_power(q, -g)
    entries = {}
    # level n from level n-1: extend each multiset by an index >= its last one
    level = [(0, twist)]
    for n in range(depth + 1):
        entries[-2 * g - 2 * n] = tuple(x for _, x in level)
        level = [(i, x * inverses[i]) for last, x in level for i in range(last, 2 * g)]
    return FrobSpectrum(entries, q, Fraction(-g), -2 * g, depth, (twist, tuple(inverses)))


def abelian_ordinary(roots: Sequence[WeilNum], depth: int) -> dict:
    out = {}
    for n in range(depth + 1):
        eigs = []
        for combo in combinations_with_replacement(range(len(roots)), n):
            x = WeilNum.one()
            for idx in combo:
                x = x * roots[idx]
            eigs.append(x)
        out[2 * n] = tuple(eigs)
    return out


def gl_spectrum(n: int, q: int) -> FrobSpectrum:
    """H_c of GL_n: the exterior algebra on q^k in degree 2k-1, dualized in dimension n^2."""
    d = n * n
    entries: dict = {}
    ks = range(1, n + 1)
    for size in range(n + 1):
        for subset in combinations(ks, size):
            deg = sum(2 * k - 1 for k in subset)
            gamma = WeilNum.q_power(q, d - sum(subset))
            entries.setdefault(2 * d - deg, []).append(gamma)
    entries = {k: tuple(v) for k, v in entries.items()}
    return FrobSpectrum(entries, q, Fraction(d), 2 * d)


def _finite(entries: dict, q: int, dim: int) -> FrobSpectrum:
    return FrobSpectrum({k: tuple(v) for k, v in entries.items()}, q, Fraction(dim), max(entries))


def merge_spectra(parts: Sequence[FrobSpectrum]) -> FrobSpectrum:
    """Spectrum of a disjoint union: the degreewise union of multisets."""
    entries: dict = {}
    for s in parts:
        for n in s.degrees():
            entries[n] = entries.get(n, ()) + s.entries[n]
    depths = [s.depth for s in parts if s.depth is not None]
    return FrobSpectrum(
        entries,
        parts[0].q,
        max(s.dim for s in parts),
        max(s.top for s in parts),
        min(depths) if depths else None,
    )


def build_spectrum(stack: Stack, depth: int) -> FrobSpectrum:
    q = stack.q
    one = WeilNum.one()
    if isinstance(stack, (Point, BFiniteGroup)):
        # H^0_c(BG) is the trivial representation for finite G, all else vanishes
        return _finite({0: [one]}, q, 0)
    if isinstance(stack, AffineLine):
        return _finite({2: [WeilNum.q_power(q)]}, q, 1)
    if isinstance(stack, P1):
        return _finite({0: [one], 2: [WeilNum.q_power(q)]}, q, 1)
    if isinstance(stack, Gm):
        return _finite({1: [one], 2: [WeilNum.q_power(q)]}, q, 1)
    if isinstance(stack, GL):
        return gl_spectrum(stack.n, q)
    if isinstance(stack, BElliptic):
        return abelian_spectrum(frobenius_roots(QuadField(stack.a, q)), q, depth)
    if isinstance(stack, (BConnectedGroup, BNormTorus)):
        return borel_spectrum(borel_data_for(stack), q, depth)
    if isinstance(stack, DisjointUnion):
        return merge_spectra([build_spectrum(p, depth) for p in stack.parts])
    raise NoSpectrumError(f"{stack.name} has no materialized spectrum")


def has_spectrum(stack: Stack) -> bool:
    if isinstance(stack, DisjointUnion):
        return all(has_spectrum(p) for p in stack.parts)
    return isinstance(
        stack, (Point, BFiniteGroup, AffineLine, P1, Gm, GL, BElliptic, BConnectedGroup, BNormTorus)
    )


def expand_factors(gammas: Sequence, order: Optional[int] = None) -> list:
    """Coefficients of prod (1 - gamma t), optionally truncated after t^order."""
    coeffs = [Fraction(1)]
    for g in gammas:
        g = g.value if isinstance(g, WeilNum) else g
        nxt = coeffs + [Fraction(0)]
        for k in range(1, len(nxt)):
            nxt[k] = nxt[k] - g * coeffs[k - 1]
        coeffs = nxt if order is None else nxt[: order + 1]
    return coeffs


def charpoly(S: FrobSpectrum, n: int, order: Optional[int] = None) -> list[Fraction]:
    """det(1 - F t | H^n_c) as rational coefficients [1, c_1, ...]."""
    out = []
    for k, c in enumerate(expand_factors(S.eigenvalues(n), order)):
        r = is_rational(c)
        if r is None:
            raise GaloisInstabilityError(f"degree {n}: coefficient of t^{k} is {c}")
        out.append(r)
    return out


@dataclass
class PoincareReport:
    ok: bool
    checked: list
    mismatches: list

    def to_json(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "mismatches": self.mismatches}


def poincare_check(S: FrobSpectrum, ordinary: dict, d) -> PoincareReport:
    """H_c^{-2r-2d} must hold exactly q^-d * gamma^-1 for gamma on H^{2r}.

    ``d`` is the dimension of the group (use -dim for a smooth variety).
    """
    d = Fraction(d)
    if d.denominator != 1:
        raise ValueError("d must be an integer")
    d = int(d)
    twist = WeilNum.q_power(S.q, -d)
    checked, bad = [], []
    for deg, eigs in sorted(ordinary.items()):
        cdeg = -deg - 2 * d
        expected = Counter(twist * g.inverse() for g in eigs)
        got = Counter(S.eigenvalues(cdeg))
        checked.append(cdeg)
        if expected != got:
            bad.append(cdeg)
    return PoincareReport(not bad, checked, bad)


@dataclass
class WeightRow:
    degree: int
    max_weight: Fraction
    bound: Fraction
    slack: Fraction
    affine_bound: Optional[Fraction] = None
    affine_slack: Optional[Fraction] = None

    @property
    def tight_slack(self) -> Fraction:
        return self.slack if self.affine_slack is None else min(self.slack, self.affine_slack)

    @property
    def sharp(self) -> bool:
        return self.tight_slack == 0

    def to_json(self) -> dict:
        out = {
            "degree": self.degree,
            "max_weight": rat_to_str(self.max_weight),
            "bound": rat_to_str(self.bound),
            "slack": rat_to_str(self.slack),
        }
        if self.affine_bound is not None:
            out["affine_bound"] = rat_to_str(self.affine_bound)
            out["affine_slack"] = rat_to_str(self.affine_slack)
        out["sharp"] = self.sharp
        return out


@dataclass
class WeightAudit:
    rows: list
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def sharp_degrees(self) -> list:
        return [r.degree for r in self.rows if r.sharp]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": self.violations,
            "rows": [r.to_json() for r in self.rows],
        }


def weight_audit(S: FrobSpectrum, dim, w=0, affine_stabilizers: bool = False) -> WeightAudit:
    """Check weight(gamma) <= dim + n/2 + w on H^n_c, and <= n + w if affine."""
    dim, w = Fraction(dim), Fraction(w)
    rows, violations = [], []
    for n in S.degrees():
        eigs = S.entries[n]
        top = max(g.weight for g in eigs)
        bound = dim + Fraction(n, 2) + w
        row = WeightRow(n, top, bound, bound - top)
        if top > bound:
            violations.append({"degree": n, "bound": "dim", "weight": str(top)})
        if affine_stabilizers:
            row.affine_bound = n + w
            row.affine_slack = row.affine_bound - top
            if top > row.affine_bound:
                violations.append({"degree": n, "bound": "affine", "weight": str(top)})
        rows.append(row)
    return WeightAudit(rows, violations)
