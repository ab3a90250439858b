"""Command-line entry point: ``stackzeta zeta ...`` and ``stackzeta verify ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .arith import is_prime_power
from .catalog import (
    AffineLine,
    BElliptic,
    BFiniteGroup,
    BGL,
    BGm,
    BNormTorus,
    GL,
    Gm,
    P1,
    Point,
    QuotientP1Gm,
    Stack,
)
from .cohomology import build_spectrum, has_spectrum, weight_audit
from .groups import GroupTable, InvalidGroupError, symmetric
from .ratfunc import reconstruct_rational
from .series import DEFAULT_DEPTH, DEFAULT_ORDER
from .zeta import (
    FAIL,
    NA,
    PASS,
    VerificationReport,
    compute_zeta,
    funceq_for,
    pole_catalog,
    verify_existence,
    verify_rationality,
    verify_trace_formula,
)

SUITES = ("trace", "weights", "funceq", "rational", "existence")
ALL_SELECTORS = ("Point", "Gm", "A1", "P1", "GL2", "BGm", "BGL2", "BGL3",
                 "BE", "BFinite", "FormOfBGm", "QuotientP1Gm")
DEFAULT_V = 6


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    selectors: tuple
    q: int = 5
    a: int = 2
    order: int = DEFAULT_ORDER
    depth: int = DEFAULT_DEPTH
    V: int = DEFAULT_V
    fmt: str = "json"
    out: Optional[str] = None
    table: Optional[str] = None
    strict: bool = False

    def __post_init__(self):
        if self.order < 1 or self.depth < 1 or self.V < 1:
            raise UsageError("--order, --depth and --V must all be >= 1")
        if not is_prime_power(self.q):
            raise UsageError(f"--q {self.q} is not a prime power")


def make_stack(selector: str, config: RunConfig) -> Stack:
    q = config.q
    simple = {"Point": Point, "Gm": Gm, "A1": AffineLine, "P1": P1,
              "BGm": BGm, "FormOfBGm": BNormTorus, "QuotientP1Gm": QuotientP1Gm}
    if selector in simple:
        return simple[selector](q)
    m = re.fullmatch(r"(B?)GL(\d+)", selector)
    if m:
        n = int(m.group(2))
        if n < 1:
            raise UsageError("GL_n needs n >= 1")
        return BGL(n, q) if m.group(1) else GL(n, q)
    if selector == "BE":
        try:
            return BElliptic(q, config.a)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if selector == "BFinite":
        if config.table is None:
            return BFiniteGroup(symmetric(3), q, "S3")
        try:
            return BFiniteGroup(GroupTable.load(config.table), q, config.table)
        except (OSError, ValueError, KeyError, InvalidGroupError) as exc:
            raise UsageError(f"cannot read group table {config.table}: {exc}") from exc
    raise UsageError(f"unknown stack selector {selector!r}")


# -- reports ---------------------------------------------------------------------


def zeta_report(stack: Stack, config: RunConfig) -> dict:
    result = compute_zeta(stack, config.order, config.depth)
    out = result.to_json()
    dmax = min(6, (config.order - 4) // 2)
    R = reconstruct_rational(result.counts_side, dmax) if dmax >= 1 else None
    out["rational_function"] = None if R is None else R.to_json()
    poles = None
    if has_spectrum(stack):
        poles = [p.to_json() for p in pole_catalog(build_spectrum(stack, config.depth), config.depth)]
    out["poles"] = poles
    return out


def weights_report(stack: Stack, config: RunConfig) -> VerificationReport:
    if not has_spectrum(stack):
        return VerificationReport("weights", stack.name, NA, {"reason": "no materialized spectrum"})
    S = build_spectrum(stack, config.depth)
    audit = weight_audit(S, stack.dim, 0, stack.affine_stabilizers)
    witness = {"dim": str(stack.dim), "affine_stabilizers": stack.affine_stabilizers, **audit.to_json()}
    return VerificationReport("weights", stack.name, PASS if audit.ok else FAIL, witness)


def run_suite(suite: str, stack: Stack, config: RunConfig) -> VerificationReport:
    if suite == "trace":
        return verify_trace_formula(stack, config.V, config.depth)
    if suite == "weights":
        return weights_report(stack, config)
    if suite == "funceq":
        return funceq_for(stack, config.order, config.depth)
    if suite == "rational":
        return verify_rationality(stack, max(config.order, 20), 6)
    if suite == "existence":
        return verify_existence(stack, config.strict)
    raise UsageError(f"unknown suite {suite!r}")


# -- rendering --------------------------------------------------------------------


def _render_json(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _cell(x) -> str:
    if x is None:
        return ""
    return json.dumps(x) if isinstance(x, dict) else x


def _zeta_csv(reports: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["stack", "k", "counts_side", "spectrum_side", "gap"])
    for r in reports:
        side, gap = r["spectrum_side"], r["gap"]
        for k, c in enumerate(r["counts_side"]):
            w.writerow([r["stack"]["kind"], k, c,
                        _cell(None if side is None else side[k]),
                        _cell(None if gap is None else gap[k])])
    return buf.getvalue()


def _verify_csv(reports: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check", "stack", "status", "witness"])
    for r in reports:
        w.writerow([r["check"], r["stack"], r["status"], json.dumps(r["witness"], sort_keys=False)])
    return buf.getvalue()


def _zeta_text(reports: Sequence[dict]) -> str:
    lines = []
    for r in reports:
        lines.append(f"{r['stack']['kind']} q={r['stack']['q']} order={r['order']} depth={r['depth']}")
        lines.append("  counts:   " + " ".join(r["counts_side"]))
        if r["spectrum_side"] is not None:
            lines.append("  spectrum: " + " ".join(str(c) for c in r["spectrum_side"]))
            lines.append("  gap:      " + " ".join(str(c) for c in r["gap"]))
        R = r["rational_function"]
        lines.append("  rational: " + ("none" if R is None else f"({', '.join(R['numerator'])}) / ({', '.join(R['denominator'])})"))
        if r["poles"] is not None:
            lines.append(f"  poles:    {len(r['poles'])} candidate(s)")
    return "\n".join(lines) + "\n"


def _verify_text(reports: Sequence[dict]) -> str:
    return "".join(f"{r['check']:<10} {r['stack']:<14} {r['status']}\n" for r in reports)


def render(kind: str, reports: list, fmt: str) -> str:
    if fmt == "json":
        return _render_json(reports)
    if fmt == "csv":
        return _zeta_csv(reports) if kind == "zeta" else _verify_csv(reports)
    return _zeta_text(reports) if kind == "zeta" else _verify_text(reports)


# -- commands ---------------------------------------------------------------------


def _emit(text: str, config: RunConfig) -> None:
    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_zeta(config: RunConfig) -> int:
    stacks = [make_stack(s, config) for s in config.selectors]
    reports = [zeta_report(s, config) for s in stacks]
    _emit(render("zeta", reports, config.fmt), config)
    return 0


def cmd_verify(config: RunConfig, suite: str) -> int:
    stacks = [make_stack(s, config) for s in config.selectors]
    suites = SUITES if suite == "all" else (suite,)
    reports = [run_suite(name, stack, config) for stack in stacks for name in suites]
    _emit(render("verify", [r.to_json() for r in reports], config.fmt), config)
    return 1 if any(r.status == FAIL for r in reports) else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("stacks", nargs="*", help="stack selectors, e.g. BGm BGL2 BE BFinite")
    common.add_argument("--all", action="store_true", help="select every catalog entry")
    common.add_argument("--q", type=int, default=5)
    common.add_argument("--a", type=int, default=2, help="Frobenius trace for BE")
    common.add_argument("--order", "--N", dest="order", type=int, default=DEFAULT_ORDER)
    common.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    common.add_argument("--V", type=int, default=DEFAULT_V)
    common.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out")
    common.add_argument("--table", help="JSON group table for BFinite")
    common.add_argument("--strict", action="store_true", help="treat INCONCLUSIVE as failure")

    parser = argparse.ArgumentParser(prog="stackzeta", description="Zeta functions of stacks over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("zeta", parents=[common], help="compute zeta data")
    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    selectors = tuple(args.stacks)
    if args.all:
        selectors = selectors + tuple(s for s in ALL_SELECTORS if s not in selectors)
    try:
        if not selectors:
            raise UsageError("no stack selected")
        config = RunConfig(selectors, args.q, args.a, args.order, args.depth, args.V,
                           args.fmt, args.out, args.table, args.strict)
        if args.command == "zeta":
            return cmd_zeta(config)
        return cmd_verify(config, args.suite)
    except UsageError as exc:
        print(f"stackzeta: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
