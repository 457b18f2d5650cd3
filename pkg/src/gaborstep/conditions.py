"""Sufficient and necessary frame criteria evaluated cell by cell.

Every "ess inf"/"ess sup" below is an exact min/max over the finite common
refinement of the period cell: all functions involved are step functions on
a commensurable grid.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .gabor import GaborSystem, bracket, cross_bracket, gk_table, periodize
from .scalar import QComplex, absval, fmt_rational, is_exact, is_zero, get_tolerance
from .stepfn import PeriodicStepFunction, StepFunction, _refine, add, chi, translate

__all__ = [
    "Status",
    "FrameVerdict",
    "CcReport",
    "cc_bounds",
    "g0_bounds",
    "g0_verdict",
    "overlap_count",
    "h_gap",
    "two_overlap_verdict",
    "small_periodization_obstruction",
    "correlation_residual",
    "averaged_translate_energy",
]

# rule identifiers carried by verdicts
CC_RULE = "cc-condition"
G0_RULE = "g0-bounds"
TWO_OVERLAP_RULE = "two-overlap"
PERIODIZATION_RULE = "small-periodization"


class Status(str, Enum):
    FRAME = "Frame"
    NOT_FRAME = "NotFrame"
    INCONCLUSIVE = "Inconclusive"


def _num(x):
    if isinstance(x, Fraction):
        return fmt_rational(x)
    if isinstance(x, (tuple, list)):
        return [_num(v) for v in x]
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, QComplex):
        return [fmt_rational(x.re), fmt_rational(x.im)]
    return x


@dataclass(frozen=True)
class FrameVerdict:
    status: Status
    rule: str
    bounds: tuple | None = None
    witness: dict | None = None
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status is Status.NOT_FRAME and not (self.rule or self.witness):
            raise ValueError("NotFrame verdict needs a rule or a witness")

    def to_json(self) -> dict:
        out = {"status": self.status.value, "rule": self.rule}
        if self.bounds is not None:
            out["bounds"] = [_num(x) for x in self.bounds]
        if self.witness is not None:
            out["witness"] = {k: _num(v) for k, v in self.witness.items()}
        if self.detail:
            out["detail"] = {k: _num(v) for k, v in self.detail.items()}
        return out


@dataclass(frozen=True)
class CcReport:
    """Result of the CC-condition: raw inf/sup and the frame bounds ``A/b, B/b``."""

    a_raw: object
    b_raw: object
    frame_lower: object
    frame_upper: object
    verdict: str  # "FrameCertified" | "Inconclusive" | "NotFrame"
    g_nonnegative: bool
    exact: bool

    def to_verdict(self) -> FrameVerdict:
        if self.verdict == "FrameCertified":
            return FrameVerdict(Status.FRAME, CC_RULE, (self.frame_lower, self.frame_upper))
        if self.verdict == "NotFrame":
            return FrameVerdict(Status.NOT_FRAME, CC_RULE, detail={"A_raw": self.a_raw})
        return FrameVerdict(Status.INCONCLUSIVE, CC_RULE, detail={"A_raw": self.a_raw})

    def to_json(self) -> dict:
        return {
            "A_raw": _num(self.a_raw),
            "B_raw": _num(self.b_raw),
            "frame_lower": _num(self.frame_lower),
            "frame_upper": _num(self.frame_upper),
            "verdict": self.verdict,
            "g_nonnegative": self.g_nonnegative,
            "exact": self.exact,
        }


def _common_cells(funcs: list) -> list:
    """Left endpoints of the common refinement of several periodic step functions."""
    pts = {Fraction(0)}
    for f in funcs:
        for lo, hi, _ in f.cells():
            pts.add(lo)
    return sorted(pts)


def _lookup(f: PeriodicStepFunction):
    cells = f.cells()
    los = [c[0] for c in cells]
    return lambda t: cells[bisect.bisect_right(los, t) - 1][2]


def _is_nonnegative(g: StepFunction) -> bool:
    return all(isinstance(v, (int, Fraction, float)) and v >= 0 for _, _, v in g.pieces)


def cc_bounds(sys: GaborSystem, nonneg_necessary: bool = False) -> CcReport:
    """CC-condition bounds for ``(g, a, b)``.

    ``A_raw = inf_t [G_0 - sum_{k!=0} |G_k|]`` and ``B_raw = sup_t sum_k |G_k|``;
    the frame bounds are ``A_raw/b, B_raw/b`` when ``A_raw > 0``.  With
    ``nonneg_necessary=True`` a nonnegative window with ``A_raw <= 0`` is
    reported as ``NotFrame``; this upgrade is opt-in because the condition is
    not necessary in general (see :func:`gaborstep.abcproblem.classify`).
    """
    table = gk_table(sys)
    funcs = [table[k] for k in table.krange]
    evals = {k: _lookup(table[k]) for k in table.krange}
    lower = upper = None
    for t in _common_cells(funcs):
        vals = {k: ev(t) for k, ev in evals.items()}
        g0 = vals.get(0, 0)
        off = sum((absval(v) for k, v in vals.items() if k != 0), Fraction(0))
        tot = absval(g0) + off
        lo = g0 - off
        if isinstance(lo, complex):
            lo = lo.real
        lower = lo if lower is None or lo < lower else lower
        upper = tot if upper is None or tot > upper else upper
    exact = all(is_exact(x) for x in (lower, upper))
    b = sys.b if exact else float(sys.b)
    positive = lower > 0 if exact else lower > get_tolerance()
    nonneg = _is_nonnegative(sys.g)
    if positive:
        verdict = "FrameCertified"
    elif nonneg_necessary and nonneg:
        verdict = "NotFrame"
    else:
        verdict = "Inconclusive"
    return CcReport(lower, upper, lower / b, upper / b, verdict, nonneg, exact)


def g0_bounds(sys: GaborSystem) -> tuple:
    """``(ess inf G_0, ess sup G_0)`` over one period (0 included where the cell has gaps)."""
    g0 = bracket(sys.g, sys.g, sys.a)
    return g0.ess_inf(), g0.ess_sup()


def g0_verdict(sys: GaborSystem) -> FrameVerdict:
    """Decide from ``G_0`` alone where that is possible.

    ``ess inf G_0 = 0`` rules out a frame (``bA <= G_0``).  When ``ab <= 1`` and
    the support of ``g`` fits in an interval of length ``1/b``, ``G_0`` decides
    completely and the frame bounds are ``inf G_0 / b`` and ``sup G_0 / b``.
    """
    lo, hi = g0_bounds(sys)
    zero = lo == 0 if is_exact(lo) else abs(lo) <= get_tolerance()
    if zero:
        return FrameVerdict(Status.NOT_FRAME, G0_RULE, detail={"ess_inf_G0": lo},
                            witness={"family": "g0-gap"})
    slo, shi = sys.g.support()
    if sys.a * sys.b <= 1 and shi - slo <= 1 / sys.b:
        b = sys.b if is_exact(lo) else float(sys.b)
        return FrameVerdict(Status.FRAME, G0_RULE, (lo / b, hi / b))
    return FrameVerdict(Status.INCONCLUSIVE, G0_RULE, detail={"ess_inf_G0": lo})


def overlap_count(g: StepFunction) -> PeriodicStepFunction:
    """``t -> #{n : g(t - n) != 0}`` as a 1-periodic function."""
    return periodize(g.map(lambda v: Fraction(1)), 1)


def h_gap(g: StepFunction):
    """``inf |g(t)| - |g(t - n)|`` over ``n != 0`` and cells where both factors are nonzero.

    Returns ``(gap, n, cell)`` for the minimizing pair, or ``None`` if no two
    translates ever overlap.
    """
    lo, hi = g.support()
    nmax = math.ceil(hi - lo)
    mag = g.abs()
    best = None
    for n in range(-nmax, nmax + 1):
        if n == 0:
            continue
        for clo, chi_, u, v in _refine(mag, translate(mag, n)):
            if is_zero(u) or is_zero(v):
                continue
            gap = abs(u - v)
            if best is None or gap < best[0]:
                best = (gap, n, (clo, chi_))
    return best


def two_overlap_verdict(g: StepFunction) -> FrameVerdict:
    """Frame test for ``(g, 1, 1)`` when at most two integer translates overlap.

    Frame iff ``G_0`` is bounded below and ``|H_n(t)| = ||g(t)| - |g(t-n)||`` stays
    away from 0 wherever both values are nonzero.
    """
    cnt = overlap_count(g)
    if cnt.ess_sup() > 2:
        raise ValueError("two-overlap criterion not applicable: three translates overlap")
    sys = GaborSystem(g, 1, 1)
    g0lo, _ = g0_bounds(sys)
    if is_zero(g0lo):
        return FrameVerdict(Status.NOT_FRAME, TWO_OVERLAP_RULE, witness={"family": "g0-gap"},
                            detail={"ess_inf_G0": g0lo})
    best = h_gap(g)
    if best is not None and is_zero(best[0]):
        gap, n, (clo, chi_) = best
        # witness cell E sits where g(t) and g(t - n) agree in modulus; shift so E + m is the partner
        return FrameVerdict(
            Status.NOT_FRAME, TWO_OVERLAP_RULE,
            witness={"family": "two-overlap", "m": -n, "E_lo": clo, "E_hi": chi_},
            detail={"h_gap": gap},
        )
    cc = cc_bounds(sys)
    detail = {"h_gap": best[0] if best else None}
    return FrameVerdict(Status.FRAME, TWO_OVERLAP_RULE, (cc.frame_lower, cc.frame_upper),
                        detail=detail)


def small_periodization_obstruction(g: StepFunction, eps=None) -> FrameVerdict:
    """``(g, 1, 1)`` fails to be a frame if ``|sum_n g(t + n)|`` vanishes on a set of positive measure.

    For exact step functions "below every epsilon" means "exactly zero on some
    cell"; approximate data use ``eps`` (default: the global tolerance).
    """
    per = periodize(g, 1)
    cells = per.cells()
    mods = [(absval(v), lo, hi) for lo, hi, v in cells]
    mmin, lo, hi = min(mods, key=lambda m: m[0])
    if per.exact:
        hit = mmin == 0
    else:
        hit = mmin < (get_tolerance() if eps is None else eps)
    if hit:
        return FrameVerdict(
            Status.NOT_FRAME, PERIODIZATION_RULE,
            witness={"family": "periodization", "E_lo": lo, "E_hi": hi},
            detail={"min_modulus": mmin},
        )
    return FrameVerdict(Status.INCONCLUSIVE, PERIODIZATION_RULE, detail={"min_modulus": mmin})


def correlation_residual(sys: GaborSystem, upper_bound=None) -> PeriodicStepFunction:
    """``sum_n |<g, T_{na} g>_{1/b}(t)|^2 - b B ||g||_{1/b}(t)`` as a ``1/b``-periodic function.

    A preframe window with upper bound ``B`` must keep this ``<= 0``.
    ``B`` defaults to the CC upper frame bound.  Windows with infinite support
    must be truncated by the caller (see :func:`gaborstep.gabor.harmonic_window`).
    """
    g, a, b = sys.g, sys.a, sys.b
    if upper_bound is None:
        upper_bound = cc_bounds(sys).frame_upper
    p = 1 / b
    lo, hi = g.support()
    nmax = math.ceil((hi - lo) / a)
    lhs = PeriodicStepFunction(p, StepFunction(()))
    for n in range(-nmax, nmax + 1):
        c = cross_bracket(g, g, n * a, p)
        if not c.is_zero:
            lhs = lhs + c.abs2()
    coef = b * upper_bound if is_exact(upper_bound) and g.exact else float(b) * float(upper_bound)
    return lhs - bracket(g, g, p) * coef


def averaged_translate_energy(sys: GaborSystem, m: int):
    """``sup_t sum_j |sum_{k=-m}^{m} g(t - ka - j/b)|^2 / (2 m b)`` for one ``m``.

    Reported raw: the normalization of the limit is not pinned down, so no
    bound is asserted here.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    g, a, b = sys.g, sys.a, sys.b
    h = StepFunction(())
    for k in range(-m, m + 1):
        h = add(h, translate(g, k * a))
    if h.is_zero:
        return Fraction(0) if g.exact else 0.0
    peak = bracket(h, h, 1 / b).ess_sup()
    if isinstance(peak, complex):
        peak = peak.real
    return peak / (2 * m * (b if is_exact(peak) else float(b)))
