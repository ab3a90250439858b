"""Acceptance gate: one test per criterion, each with its runtime budget."""

import random
import time
from collections import Counter
from fractions import Fraction

import pytest

from oracles import geometric_product
from stackzeta.arith import AlgNum, QuadField, frobenius_roots, nf_conj
from stackzeta.catalog import BElliptic, BFiniteGroup, BGL, BGm, BNormTorus, Gm, P1, Point, QuotientP1Gm
from stackzeta.cohomology import (
    abelian_ordinary,
    borel_ordinary,
    borel_spectrum,
    build_spectrum,
    charpoly,
    gl_borel_data,
    poincare_check,
    weight_audit,
)
from stackzeta.groups import automorphisms, count_bg_finite, small_groups, twisted_orbits
from stackzeta.ratfunc import reconstruct_rational
from stackzeta.series import PowerSeries
from stackzeta.zeta import (
    EXISTS,
    EXISTS_IN_OPEN_ORBIT,
    INCONCLUSIVE_VERDICT,
    PASS,
    functional_equation_check,
    point_existence,
    verify_trace_formula,
    zeta_from_counts,
    zeta_from_spectrum,
)


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.2f} s, budget {self.seconds} s"


@pytest.mark.criterion(1, "finite-group trace formula, all groups of order <= 8, all sigma, v <= 6")
def test_criterion_1_finite_groups():
    with Budget(1.0):
        cases = 0
        for name, G in small_groups(8):
            for sigma in automorphisms(G):
                stack = BFiniteGroup(G.with_sigma(sigma), 2, name)
                S = build_spectrum(stack, 1)
                for v in range(1, 7):
                    assert count_bg_finite(stack.table, v) == 1
                    assert S.partial_trace(v) == 1
                cases += 1
    assert cases == sum(len(list(automorphisms(G))) for _, G in small_groups(8))


@pytest.mark.criterion(2, "BGm product vs exp of counts, q in {2,3,5}, N = 16, D = 64")
def test_criterion_2_bgm_product():
    N, D = 16, 64
    with Budget(1.0):
        for q in (2, 3, 5):
            counts = zeta_from_counts(BGm(q), N)
            S = build_spectrum(BGm(q), D + 1)
            at_D = zeta_from_spectrum(S, N, D)
            at_D1 = zeta_from_spectrum(S, N, D + 1)
            gaps = [counts[k] - at_D[k] for k in range(N + 1)]
            assert all(abs(g) < Fraction(1, q ** 48) for g in gaps)
            assert gaps[1] == Fraction(1, q ** D * (q - 1))
            assert gaps[1] / (counts[1] - at_D1[1]) == q


@pytest.mark.criterion(3, "BGL2 multiplicities floor(n/2)+1 in degree -8-2n, n <= 20")
def test_criterion_3_bgl2_multiplicities():
    with Budget(1.0):
        oracle = geometric_product([2, 4], 40)
        for q in (2, 3, 5):
            S = borel_spectrum(gl_borel_data(2, q), q, 20)
            for n in range(21):
                eigs = S.eigenvalues(-8 - 2 * n)
                assert len(eigs) == n // 2 + 1 == oracle[2 * n]
                assert all(g.value == Fraction(1, q ** (n + 4)) and g.weight == -2 * (n + 4) for g in eigs)


@pytest.mark.criterion(4, "BE: charpolys rational to D = 40, trace v <= 4, slack 0, functional equations to N = 12")
def test_criterion_4_elliptic():
    with Budget(5.0):
        for q, a in [(5, 2), (2, 1), (7, 3)]:
            stack = BElliptic(q, a)
            S = build_spectrum(stack, 40)
            for n in S.degrees():
                assert len(charpoly(S, n)) == len(S.eigenvalues(n)) + 1
            assert verify_trace_formula(stack, 4, 40).status == PASS
            audit = weight_audit(S, stack.dim, 0, stack.affine_stabilizers)
            assert audit.ok and len(audit.rows) == 41 and all(r.slack == 0 for r in audit.rows)
            rep = functional_equation_check("BE", {"q": q, "a": a}, 12)
            assert rep.status == PASS, rep.witness


@pytest.mark.criterion(5, "rationality detection with exact held-out validation, N = 20")
def test_criterion_5_rationality():
    N = 20
    with Budget(1.0):
        for q in (2, 3, 5):
            for stack in (BFiniteGroup(small_groups(6)[-1][1], q), Point(q), Gm(q), P1(q)):
                Z = zeta_from_counts(stack, N)
                R = reconstruct_rational(Z, 6)
                assert R is not None and R.expand(N) == Z
            for stack in (BGm(q),):
                Z = zeta_from_counts(stack, N)
                assert all(reconstruct_rational(Z, d) is None for d in range(1, 7))
        for q, a in [(5, 2), (2, 1), (7, 3)]:
            Z = zeta_from_counts(BElliptic(q, a), N)
            assert all(reconstruct_rational(Z, d) is None for d in range(1, 7))


@pytest.mark.criterion(6, "P1 functional equation Z(1/(qt)) = +q t^2 Z(t), q in {2,3,5}")
def test_criterion_6_p1_functional_equation():
    with Budget(1.0):
        for q in (2, 3, 5):
            rep = functional_equation_check("proper", {"q": q, "stack": P1(q), "d": 1, "chi": 2}, 16)
            assert rep.status == PASS
            assert rep.witness["sign"] == "+" and rep.witness["chi"] == 2
            assert rep.witness["identities"][1]["constant"] == f"{q}/1"
            assert rep.witness["function"] == {
                "numerator": ["1/1"],
                "denominator": ["1/1", f"{-(q + 1)}/1", f"{q}/1"],
            }


@pytest.mark.criterion(7, "weight bounds on every catalog spectrum to depth 40")
def test_criterion_7_weights():
    with Budget(1.0):
        for q in (2, 5):
            for stack in (BGm(q), BNormTorus(q), BGL(2, q), BGL(3, q), BElliptic(q, 1)):
                audit = weight_audit(build_spectrum(stack, 40), stack.dim, 0, stack.affine_stabilizers)
                assert audit.ok, audit.violations
                assert len(audit.rows) == 41
                assert all(r.affine_bound is not None for r in audit.rows) == (stack.name != "BE")


@pytest.mark.criterion(8, "point-existence verdict tables")
def test_criterion_8_existence():
    with Budget(1.0):
        assert point_existence("FormOfBGm", 2).verdict == INCONCLUSIVE_VERDICT
        for q in (3, 4, 5, 7, 8, 9):
            assert point_existence("FormOfBGm", q).verdict == EXISTS
        for q in (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25):
            v = point_existence("QuotientP1Gm", q)
            assert (v.verdict in (EXISTS, EXISTS_IN_OPEN_ORBIT)) == (q >= 4)
            assert (v.verdict == EXISTS_IN_OPEN_ORBIT) == (q >= 7)
            assert v.consistent


def _random_series(rng, order):
    return PowerSeries([Fraction(1)] + [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(order)])


@pytest.mark.criterion(9, "property suites: series, orbit-stabilizer, field axioms, Poincare duality")
def test_criterion_9_properties():
    rng = random.Random(20261014)
    with Budget(30.0):
        series = [_random_series(rng, 12) for _ in range(200)]
        for f, g in zip(series, series[1:] + series[:1]):
            assert f.log().exp() == f
            assert (f * g).log() == f.log() + g.log()

        for _, G in small_groups(8):
            for sigma in automorphisms(G):
                H = G.with_sigma(sigma)
                for v in range(1, 7):
                    orbits = twisted_orbits(H, v)
                    assert sum(Fraction(H.n, stab) for _, stab in orbits) == H.n

        fields = [QuadField(2, 5), QuadField(1, 2), QuadField(3, 7), QuadField(-4, 9), QuadField(0, 11)]
        for i in range(1000):
            K = fields[i % len(fields)]
            x, y, z = (AlgNum(K, Fraction(rng.randint(-50, 50), rng.randint(1, 30)),
                              Fraction(rng.randint(-50, 50), rng.randint(1, 30))) for _ in range(3))
            assert (x * y) * z == x * (y * z) and x * y == y * x
            assert x * (y + z) == x * y + x * z and (x + y) - y == x
            assert nf_conj(x * y) == nf_conj(x) * nf_conj(y)
            if x:
                assert x * (1 / x) == 1

        for n in (1, 2):
            b = gl_borel_data(n, 3)
            assert poincare_check(borel_spectrum(b, 3, 20), borel_ordinary(b, 20), n * n).ok
        for K in fields[:3]:
            roots = frobenius_roots(K)
            S = build_spectrum(BElliptic(K.q, K.a), 20)
            assert poincare_check(S, abelian_ordinary(roots, 20), 1).ok
