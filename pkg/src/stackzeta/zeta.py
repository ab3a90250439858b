"""Zeta functions from both sides, and the verification checks built on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator, Optional, Sequence

from .arith import (
    AlgNum,
    QuadField,
    WeilNum,
    algnum_to_json,
    rat_to_str,
    scalar_norm,
    simplify,
    weilnum_to_json,
)
from .catalog import (
    BConnectedGroup,
    BElliptic,
    BFiniteGroup,
    BNormTorus,
    P1,
    Point,
    QuotientP1Gm,
    Stack,
    BGm,
    BGL,
)
from .cohomology import FrobSpectrum, build_spectrum, charpoly, has_spectrum
from .ratfunc import RationalFn, degree, poly_mul, reconstruct_rational
from .series import Factor, PowerSeries, ps_partial_product, series_from_traces

PASS, FAIL, INCONCLUSIVE, NA = "pass", "fail", "inconclusive", "n/a"


class StreamDivergenceError(ValueError):
    """An unbounded spectrum contains an eigenvalue of absolute value >= 1."""


def _fmt(x) -> Any:
    x = simplify(x)
    if isinstance(x, AlgNum):
        return algnum_to_json(x)
    return rat_to_str(x)


@dataclass
class VerificationReport:
    check: str
    stack: str
    status: str
    witness: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {"check": self.check, "stack": self.stack, "status": self.status, "witness": self.witness}


# -- the two sides ----------------------------------------------------------------


def zeta_from_counts(stack: Stack, order: int) -> PowerSeries:
    """exp(sum_{v<=order} c_v t^v / v)."""
    if order < 1:
        raise ValueError("order must be >= 1")
    return series_from_traces([stack.cv(v) for v in range(1, order + 1)], order)


def l_series(traces: Sequence, order: int) -> PowerSeries:
    """L-series from precomputed c_v values (any coefficient sheaf)."""
    return series_from_traces(traces, order)


def spectrum_stream(S: FrobSpectrum, depth: Optional[int] = None) -> Iterator[Factor]:
    """Factors (1 - gamma t)^{(-1)^{n+1}}, degrees descending from the top."""
    for n in S.levels(depth):
        e = -1 if n % 2 == 0 else 1
        for g in S.entries[n]:
            yield Factor(g, e)


def _check_convergent(S: FrobSpectrum, degrees: Sequence[int]) -> None:
    if S.bounded:
        return
    for n in degrees:
        for g in S.entries[n]:
            if g.weight >= 0:
                raise StreamDivergenceError(f"degree {n} eigenvalue {g} has weight {g.weight} >= 0")


def _mul_poly(coeffs: list, p: Sequence) -> list:
    return [sum((p[j] * coeffs[k - j] for j in range(min(k, len(p) - 1) + 1)), Fraction(0))
            for k in range(len(coeffs))]


def _div_poly(coeffs: list, p: Sequence) -> list:
    # p[0] == 1
    out: list = []
    for k in range(len(coeffs)):
        s = coeffs[k]
        for j in range(1, min(k, len(p) - 1) + 1):
            s = s - p[j] * out[k - j]
        out.append(s)
    return out


def zeta_from_spectrum(S: FrobSpectrum, order: int, depth: Optional[int]) -> PowerSeries:
    """prod over the first ``depth`` nonzero degrees of P_n(t)^{(-1)^{n+1}}."""
    degrees = S.levels(depth)
    _check_convergent(S, degrees)
    coeffs = [Fraction(1)] + [Fraction(0)] * order
    for n in degrees:
        p = charpoly(S, n, order)
        coeffs = _div_poly(coeffs, p) if n % 2 == 0 else _mul_poly(coeffs, p)
    return PowerSeries(coeffs)


@dataclass
class ZetaResult:
    stack: Stack
    counts_side: PowerSeries
    spectrum_side: Optional[PowerSeries]
    depth: int
    order: int
    gap: Optional[list]

    def to_json(self) -> dict:
        return {
            "stack": self.stack.to_json(),
            "order": self.order,
            "depth": self.depth,
            "counts_side": [_fmt(c) for c in self.counts_side],
            "spectrum_side": None if self.spectrum_side is None else [_fmt(c) for c in self.spectrum_side],
            "gap": None if self.gap is None else [_fmt(c) for c in self.gap],
        }


def compute_zeta(stack: Stack, order: int, depth: int) -> ZetaResult:
    counts = zeta_from_counts(stack, order)
    spec_side = gap = None
    if has_spectrum(stack):
        S = build_spectrum(stack, depth)
        spec_side = zeta_from_spectrum(S, order, depth)
        gap = [simplify(a - b) for a, b in zip(counts, spec_side)]
    return ZetaResult(stack, counts, spec_side, depth, order, gap)


# -- trace formula ---------------------------------------------------------------


def _spectra_for_trace(stack: Stack, depth: int) -> Optional[list]:
    if isinstance(stack, QuotientP1Gm):
        # traces are additive over the orbit stratification
        return [build_spectrum(s, depth) for s in stack.strata()]
    if has_spectrum(stack):
        return [build_spectrum(stack, depth)]
    return None


def verify_trace_formula(stack: Stack, V: int, depth: int) -> VerificationReport:
    """Compare c_v with the partial alternating trace of Frobenius for v <= V.

    Finite spectra must match exactly.  Infinite ones must have an exact gap
    that shrinks from depth D/2 to D with |gap(D)| < q^{-D/2}, and the closed
    form of the full trace must equal c_v exactly.
    """
    spectra = _spectra_for_trace(stack, depth)
    if spectra is None:
        return VerificationReport("trace", stack.name, NA, {"reason": "no materialized spectrum"})
    q = stack.q
    bounded = all(S.bounded for S in spectra)
    half = max(depth // 2, 1)
    rows, ok = [], True
    for v in range(1, V + 1):
        c = stack.cv(v)
        if bounded:
            tr = sum((S.partial_trace(v) for S in spectra), Fraction(0))
            good = tr == c
            rows.append({"v": v, "count": _fmt(c), "trace": _fmt(tr), "exact": good})
        else:
            def trace_at(D):
                return sum((S.partial_trace(v, None if S.bounded else D) for S in spectra), Fraction(0))

            g_half = simplify(c - trace_at(half))
            g_full = simplify(c - trace_at(depth))
            n_half, n_full = scalar_norm(g_half), scalar_norm(g_full)
            shrinks = n_full == 0 or n_full < n_half
            small = n_full < Fraction(1, q ** depth)  # |gap|^2 < q^-D
            totals = [S.full_trace(v) for S in spectra]
            closed = None
            if all(t is not None for t in totals):
                closed = simplify(sum(totals, Fraction(0))) == c
            good = shrinks and small and closed is not False
            rows.append({
                "v": v,
                "count": _fmt(c),
                "gap_half_depth": _fmt(g_half),
                "gap": _fmt(g_full),
                "shrinks": shrinks,
                "below_q^-D/2": small,
                "closed_form_total_matches": closed,
            })
        ok = ok and good
    witness = {"depth": depth, "bounded": bounded, "rows": rows}
    return VerificationReport("trace", stack.name, PASS if ok else FAIL, witness)


# -- rationality -----------------------------------------------------------------


def verify_rationality(stack: Stack, order: int = 20, dmax: int = 6) -> VerificationReport:
    """Reconstruct Z(t) as a rational function and compare with the expected verdict."""
    Z = zeta_from_counts(stack, order)
    R = reconstruct_rational(Z, dmax)
    rational = R is not None
    ok = rational == stack.expect_rational
    witness = {
        "order": order,
        "dmax": dmax,
        "expected_rational": stack.expect_rational,
        "rational": rational,
        "function": None if R is None else R.to_json(),
    }
    return VerificationReport("rational", stack.name, PASS if ok else FAIL, witness)


# -- functional equations ----------------------------------------------------------


def _series_from_log(terms: Sequence, order: int) -> PowerSeries:
    return series_from_traces(terms, order)


def _first_mismatch(f: PowerSeries, g: PowerSeries) -> Optional[dict]:
    for k, (a, b) in enumerate(zip(f, g)):
        if a != b:
            return {"index": k, "lhs": _fmt(a), "rhs": _fmt(b)}
    return None


def _identity_row(name: str, lhs: PowerSeries, rhs: PowerSeries) -> dict:
    bad = _first_mismatch(lhs, rhs)
    return {"identity": name, "holds": bad is None, "first_mismatch": bad}


def _one_minus(c, order: int) -> PowerSeries:
    return PowerSeries.from_poly([Fraction(1), -c], order)


def bgl2_shift_factor(q: int, order: int) -> PowerSeries:
    """Z_1(t) = prod_{k>=0} (1 - t/q^{2k+3})^{-1}, via its exact logarithm."""
    return _series_from_log([Fraction(1, q ** (3 * v)) / (1 - Fraction(1, q ** (2 * v))) for v in range(1, order + 1)], order)


def be_second_factor(field: QuadField, order: int) -> PowerSeries:
    """Z_2(t) = prod_{m>=1} (1 - alpha beta^{-m} t)^{-1}, via its exact logarithm."""
    a, b = field.alpha, field.beta
    return _series_from_log([a ** v / (b ** v - 1) for v in range(1, order + 1)], order)


def be_second_factor_stream(field: QuadField) -> Iterator[Factor]:
    a, b = WeilNum(field.alpha, 1), WeilNum(field.beta, 1)
    m = 1
    while True:
        yield Factor(a * b ** (-m), -1)
        m += 1


def _max_norm_gap(f: PowerSeries, g: PowerSeries) -> Fraction:
    return max(scalar_norm(simplify(x - y)) for x, y in zip(f, g))


def functional_equation_check(kind: str, params: dict, order: int = 16) -> VerificationReport:
    """Exact functional equations.

    kinds: ``BGm``, ``BGL2`` and ``BE`` (scaling identities of truncated
    series) and ``proper`` (t -> 1/(q^d t) on a reconstructed rational function).
    """
    q = params["q"]
    rows: list = []
    extra: dict = {}
    if kind == "BGm":
        Z = zeta_from_counts(BGm(q), order)
        rows.append(_identity_row("(1-t) Z(qt) = Z(t)", Z.scale(q) * _one_minus(1, order), Z))
        name = "BGm"
    elif kind == "BGL2":
        Z = zeta_from_counts(BGL(2, q), order)
        Z1 = bgl2_shift_factor(q, order)
        rows.append(_identity_row("Z(qt) = Z(t) Z_1(t)", Z.scale(q), Z * Z1))
        rows.append(_identity_row("Z_1(q^2 t) (1 - t/q) = Z_1(t)",
                                  Z1.scale(q * q) * _one_minus(Fraction(1, q), order), Z1))
        name = "BGL2"
    elif kind == "BE":
        field = QuadField(params["a"], q)
        alpha, beta = field.alpha, field.beta
        Z1 = zeta_from_counts(BElliptic(q, params["a"]), order).scale(q)
        Z2 = be_second_factor(field, order)
        rows.append(_identity_row("Z_1(alpha t) (1 - alpha t) = Z_1(t) Z_2(t)",
                                  Z1.scale(alpha) * _one_minus(alpha, order), Z1 * Z2))
        rows.append(_identity_row("Z_2(beta t) (1 - alpha t) = Z_2(t)",
                                  Z2.scale(beta) * _one_minus(alpha, order), Z2))
        depth = params.get("depth", 32)
        half = ps_partial_product(be_second_factor_stream(field), depth // 2, order)
        full = ps_partial_product(be_second_factor_stream(field), depth, order)
        g_half, g_full = _max_norm_gap(half, Z2), _max_norm_gap(full, Z2)
        stream_ok = g_full < g_half
        extra["Z_2_stream"] = {
            "depth": depth,
            "max_norm_gap_half_depth": _fmt(g_half),
            "max_norm_gap": _fmt(g_full),
            "shrinks": stream_ok,
        }
        rows.append({"identity": "Z_2 factor stream converges term by term", "holds": stream_ok})
        name = "BE"
    elif kind == "proper":
        stack: Stack = params["stack"]
        d = params["d"]
        dmax = params.get("dmax", (order - 4) // 2)
        R = reconstruct_rational(zeta_from_counts(stack, order), dmax)
        if R is None:
            return VerificationReport("funceq", stack.name, FAIL, {"reason": "zeta not reconstructed as rational"})
        rows, extra = _proper_functional_equation(R, q, d, params.get("chi"))
        name = stack.name
    else:
        raise ValueError(f"unknown functional equation kind {kind!r}")
    ok = all(r["holds"] for r in rows)
    return VerificationReport("funceq", name, PASS if ok else FAIL, {"order": order, "identities": rows, **extra})


def _reverse_scaled(p: Sequence, c) -> list:
    """t^deg(p) * p(c/t) as a coefficient list."""
    n = degree(p)
    return [p[n - j] * c ** (n - j) for j in range(n + 1)]


def _proper_functional_equation(R: RationalFn, q: int, d: int, chi: Optional[int]):
    """Z(1/(q^d t)) = eps * q^{d chi / 2} * t^chi * Z(t), eps detected."""
    P, Q = list(R.numerator), list(R.denominator)
    c = Fraction(1, q ** d)
    Pr, Qr = _reverse_scaled(P, c), _reverse_scaled(Q, c)
    # Z(c/t) = t^{deg Q - deg P} * Pr / Qr
    shift = degree(Q) - degree(P)
    lhs, rhs = poly_mul(Pr, Q), poly_mul(P, Qr)
    ratio = None
    if degree(rhs) == degree(lhs) and degree(rhs) >= 0:
        ratio = lhs[-1] / rhs[-1]
        if poly_mul([ratio], rhs) != lhs:
            ratio = None
    rows = [{"identity": "t^chi shift", "holds": chi is None or chi == shift, "chi": shift}]
    sign = None
    if ratio is not None:
        target_sq = Fraction(q) ** (d * shift)
        holds = ratio * ratio == target_sq
        sign = "+" if ratio > 0 else "-"
    else:
        holds = False
    rows.append({"identity": "Z(1/(q^d t)) = +-q^{d chi/2} t^chi Z(t)", "holds": holds,
                 "constant": None if ratio is None else _fmt(ratio)})
    return rows, {"sign": sign, "chi": shift, "d": d, "function": R.to_json()}


# -- poles ----------------------------------------------------------------------


@dataclass
class Pole:
    location: WeilNum
    degrees: tuple
    multiplicity: int

    @property
    def degree(self) -> int:
        return self.degrees[0]

    def to_json(self) -> dict:
        return {"t": weilnum_to_json(self.location), "degrees": list(self.degrees), "multiplicity": self.multiplicity}


def pole_catalog(S: FrobSpectrum, depth: Optional[int] = None) -> list[Pole]:
    """Candidate poles t = 1/gamma from eigenvalues in even degrees."""
    found: dict = {}
    for n in S.levels(depth):
        if n % 2:
            continue
        for g in S.entries[n]:
            loc = g.inverse()
            degs, mult = found.get(loc, ((), 0))
            if n not in degs:
                degs = degs + (n,)
            found[loc] = (degs, mult + 1)
    return [Pole(loc, degs, mult) for loc, (degs, mult) in found.items()]


# -- point existence --------------------------------------------------------------

EXISTS, EXISTS_IN_OPEN_ORBIT = "EXISTS", "EXISTS_IN_OPEN_ORBIT"
INCONCLUSIVE_VERDICT = "INCONCLUSIVE"


@dataclass
class ExistenceVerdict:
    kind: str
    q: int
    verdict: str
    lower_bound: Fraction
    closed_orbit_bound: Optional[Fraction]
    exact_count: Fraction
    consistent: bool

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "q": self.q,
            "verdict": self.verdict,
            "lower_bound": rat_to_str(self.lower_bound),
            "closed_orbit_bound": None if self.closed_orbit_bound is None else rat_to_str(self.closed_orbit_bound),
            "exact_count": rat_to_str(self.exact_count),
            "consistent": self.consistent,
        }


def point_existence(kind: str, q: int) -> ExistenceVerdict:
    """Lower bounds for #X(F_q) from the weight bound and the trace formula."""
    if kind == "FormOfBGm":
        # 1/q minus the largest possible contribution of degrees -4, -6, ...
        bound = Fraction(1, q) - Fraction(1, q) / (q - 1)
        verdict = EXISTS if bound > 0 else INCONCLUSIVE_VERDICT
        counts = [BNormTorus(q).cv(1), BGm(q).cv(1)]
        return ExistenceVerdict(kind, q, verdict, bound, None, counts[0], all(c >= bound for c in counts))
    if kind == "QuotientP1Gm":
        bound = 1 - Fraction(2, q - 1)
        closed = Fraction(2, q - 1)
        if bound > closed:
            verdict = EXISTS_IN_OPEN_ORBIT
        elif bound > 0:
            verdict = EXISTS
        else:
            verdict = INCONCLUSIVE_VERDICT
        exact = QuotientP1Gm(q).cv(1)
        return ExistenceVerdict(kind, q, verdict, bound, closed, exact, exact >= bound)
    raise ValueError(f"no existence bound for {kind!r}")


def verify_existence(stack: Stack, strict: bool = False) -> VerificationReport:
    kind = stack.name
    if kind not in ("FormOfBGm", "QuotientP1Gm"):
        return VerificationReport("existence", kind, NA, {"reason": "no point-existence bound"})
    verdict = point_existence(kind, stack.q)
    if not verdict.consistent:
        status = FAIL
    elif verdict.verdict == INCONCLUSIVE_VERDICT:
        status = FAIL if strict else INCONCLUSIVE
    else:
        status = PASS
    return VerificationReport("existence", kind, status, verdict.to_json())


def funceq_for(stack: Stack, order: int, depth: int) -> VerificationReport:
    """Dispatch a catalog stack to its functional equation, if it has one."""
    q = stack.q
    if isinstance(stack, BConnectedGroup) and stack.name == "BGm":
        return functional_equation_check("BGm", {"q": q}, order)
    if isinstance(stack, BConnectedGroup) and stack.name == "BGL2":
        return functional_equation_check("BGL2", {"q": q}, order)
    if isinstance(stack, BElliptic):
        return functional_equation_check("BE", {"q": q, "a": stack.a, "depth": depth}, min(order, 12))
    if isinstance(stack, P1):
        return functional_equation_check("proper", {"q": q, "stack": stack, "d": 1, "chi": 2}, order)
    if isinstance(stack, (Point, BFiniteGroup)):
        return functional_equation_check("proper", {"q": q, "stack": stack, "d": 0, "chi": 1}, order)
    return VerificationReport("funceq", stack.name, NA, {"reason": "no functional equation in the catalog"})
