"""Exact zeta functions of algebraic stacks over finite fields."""

from .arith import AlgNum, QuadField, Rat, WeilNum
from .catalog import (
    AffineLine,
    BConnectedGroup,
    BElliptic,
    BFiniteGroup,
    BGL,
    BGm,
    BNormTorus,
    DisjointUnion,
    GL,
    Gm,
    P1,
    Point,
    QuotientP1Gm,
    cv,
)
from .cohomology import FrobSpectrum, build_spectrum, weight_audit
from .ratfunc import RationalFn, reconstruct_rational
from .series import PowerSeries
from .zeta import (
    compute_zeta,
    functional_equation_check,
    pole_catalog,
    point_existence,
    verify_trace_formula,
    zeta_from_counts,
    zeta_from_spectrum,
)

__version__ = "0.1.0"
