"""Explicit test functions that exhibit frame failure quantitatively.

Each builder is deterministic in its parameters.  Fed to the energy oracle,
the families show ``energy / norm_sq -> 0`` (no lower frame bound) or, for the
Riesz family, a fixed norm against a growing coefficient norm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .abcproblem import AbcVerdict
from .conditions import h_gap, overlap_count
from .gabor import GaborSystem, bracket, frame_energy
from .scalar import is_zero, to_rational
from .stepfn import StepFunction, chi, norm_sq, translate

__all__ = [
    "WitnessFamily",
    "case1_witness",
    "case2_witness",
    "riesz_witness",
    "riesz_coefficient_norm_sq",
    "periodization_witness",
    "find_two_overlap_cell",
    "two_overlap_witness",
    "gap_witness",
    "alternating_case",
    "decay_table",
    "family_for_abc",
    "family_for_verdict",
]


def _blocks(values, d) -> StepFunction:
    """``sum_i values[i] * chi_[i, i+d)``."""
    return StepFunction([(Fraction(i), i + d, Fraction(v)) for i, v in enumerate(values) if v])


def _check_d(d) -> Fraction:
    d = to_rational(d)
    if not 0 < d <= 1:
        raise ValueError("block length d must lie in (0, 1]")
    return d


def case1_witness(d, n: int) -> StepFunction:
    """``sum_{i=0}^{2n} (-1)^i chi_[i, i+d)``; ``norm_sq = (2n + 1) d``."""
    d = _check_d(d)
    if n < 1:
        raise ValueError("n must be at least 1")
    return _blocks([(-1) ** i for i in range(2 * n + 1)], d)


def case2_witness(d, n: int) -> StepFunction:
    """``3n`` blocks ``chi_[i, i+d)`` weighted ``1, -1/2, -1/2, 1, ...``; ``norm_sq = 3nd/2``."""
    d = _check_d(d)
    if n < 1:
        raise ValueError("n must be at least 1")
    pattern = (Fraction(1), Fraction(-1, 2), Fraction(-1, 2))
    return _blocks([pattern[i % 3] for i in range(3 * n)], d)


def alternating_case(c) -> tuple:
    """For ``c > 1`` return ``(builder, d, k, case)`` of the matching alternating family.

    ``2k - 1 < c <= 2k`` uses ``d = c - (2k - 1)`` with :func:`case1_witness`;
    ``2k < c <= 2k + 1`` uses ``d = c - 2k`` with :func:`case2_witness`.
    """
    c = to_rational(c)
    if c <= 1:
        raise ValueError("alternating witnesses need c > 1")
    k = math.ceil(c / 2)
    if c <= 2 * k and c > 2 * k - 1:
        return case1_witness, c - (2 * k - 1), k, 1
    k = math.floor(c / 2)
    return case2_witness, c - 2 * k, k, 2


def _from_jumps(jumps: dict) -> StepFunction:
    """Step function whose value jumps by ``jumps[t]`` at each ``t``; must return to 0."""
    pieces, level, prev = [], Fraction(0), None
    for t in sorted(jumps):
        if level and prev is not None:
            pieces.append((prev, t, level))
        level += jumps[t]
        prev = t
    if level:
        raise ValueError("jumps do not sum to zero")
    return StepFunction(pieces)


def riesz_witness(n: int, k: int) -> StepFunction:
    """``sum_{j=0}^{k-1} (T_{jn} g - T_{jn+1} g)`` with ``g = chi_[0, n)``, summed through the jump table."""
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    jumps = {}
    for j in range(k):
        for start, sign in ((j * n, 1), (j * n + 1, -1)):
            jumps[start] = jumps.get(start, 0) + sign
            jumps[start + n] = jumps.get(start + n, 0) - sign
    return _from_jumps({Fraction(t): v for t, v in jumps.items() if v})


def riesz_coefficient_norm_sq(k: int) -> int:
    """Squared l2 norm of the ``2k`` coefficients ``+-1`` behind :func:`riesz_witness`."""
    return 2 * k


def periodization_witness(E: StepFunction, n: int) -> StepFunction:
    """``sum_{k=0}^{n} chi_{k+E}`` for an indicator ``E`` inside ``[0, 1)``; ``norm_sq = (n+1)|E|``."""
    lo, hi = E.support() or (None, None)
    if lo is None or lo < 0 or hi > 1:
        raise ValueError("E must be a nonempty subset of [0, 1)")
    if any(v != 1 for v in E.values()):
        raise ValueError("E must be an indicator function")
    if n < 0:
        raise ValueError("n must be nonnegative")
    f = StepFunction(())
    for k in range(n + 1):
        f = f + translate(E, k)
    return f


def find_two_overlap_cell(g: StepFunction, eps=0):
    """``(m, (lo, hi))`` with ``g != 0`` on ``E = [lo, hi)`` and on ``E + m`` and
    ``| |g(t)| - |g(t+m)| | <= eps`` there, or ``None``.

    ``E`` is clipped to length at most 1 so its integer translates are disjoint.
    """
    best = h_gap(g)
    if best is None or best[0] > eps:
        return None
    _, n, (lo, hi) = best
    return -n, (lo, min(hi, lo + 1))


def two_overlap_witness(g: StepFunction, m: int, E: tuple, n: int) -> StepFunction:
    """Alternating ``2n``-block function ``sum_i (-1)^i u_i chi_{E + im}`` for real ``g``.

    The signs ``u_i`` make consecutive blocks cancel against ``g`` and
    ``T_{-m} g``, so every translate except the two ends sees only
    ``|g(t)| - |g(t+m)|`` on ``E``.  ``norm_sq = 2n|E|``.
    """
    if not g.is_real:
        raise ValueError("two-overlap witness supports real-valued windows only")
    if overlap_count(g).ess_sup() > 2:
        raise ValueError("window has three overlapping integer translates")
    if n < 1 or m == 0:
        raise ValueError("need n >= 1 and m != 0")
    lo, hi = (to_rational(x) for x in E)
    if not 0 < hi - lo <= 1:
        raise ValueError("E must have length in (0, 1]")
    v0, v1 = g(lo), g(lo + m)
    if is_zero(v0) or is_zero(v1):
        raise ValueError("g must be nonzero on E and on E + m")
    sign = lambda v: 1 if v > 0 else -1
    flip = sign(v0) * sign(v1)
    # a cell of E may still split where g has breakpoints; the witness needs constant signs
    for t in g.breakpoints():
        if lo < t < hi or lo < t - m < hi:
            raise ValueError("E must lie inside one cell of g and of T_{-m} g")
    u = sign(v0)
    pieces = []
    for i in range(2 * n):
        pieces.append((lo + i * m, hi + i * m, Fraction((-1) ** i * u)))
        u *= flip
    return StepFunction(pieces)


def gap_witness(sys: GaborSystem) -> StepFunction:
    """Indicator of a cell of ``[0, a)`` where ``G_0 = 0``: every ``f * T_{na} g`` vanishes."""
    g0 = bracket(sys.g, sys.g, sys.a)
    for lo, hi, v in g0.cells():
        if is_zero(v):
            return chi(lo, hi)
    raise ValueError("G_0 has no zero cell")


@dataclass(frozen=True)
class WitnessFamily:
    """``builder(n)`` gives the ``n``-th member; ``kind`` is ``"energy"`` or ``"riesz"``."""

    name: str
    builder: Callable
    system: GaborSystem
    expected: str
    kind: str = "energy"

    def row(self, n: int) -> tuple:
        f = self.builder(n)
        if f.is_zero:
            raise ValueError(f"{self.name} produced a zero function at n={n}")
        nf = norm_sq(f)
        if self.kind == "riesz":
            coeff = riesz_coefficient_norm_sq(n)
            return n, nf, coeff, nf / coeff
        e = frame_energy(f, self.system)
        return n, nf, e, e / nf


def decay_table(family: WitnessFamily, ns) -> list:
    """Rows ``(n, norm_sq, energy, ratio)``; for Riesz families ``energy`` is the coefficient norm."""
    return [family.row(n) for n in ns]


def family_for_abc(verdict: AbcVerdict, a, c) -> WitnessFamily:
    """Witness family for a rational ``NotFrame`` point ``(chi_[0,c), a, 1)``."""
    a, c = to_rational(a), to_rational(c)
    sys = GaborSystem(chi(0, c), a, 1)
    if verdict.rule == "INTEGER_C":
        n = int(c)
        return WitnessFamily("riesz", lambda k: riesz_witness(n, k), sys,
                             "norm_sq stays 2 while the coefficient norm is 2k", "riesz")
    if verdict.rule == "A_EQ_1_C_GT_1":
        build, d, k, case = alternating_case(c)
        return WitnessFamily(f"case{case}", lambda n: build(d, n), sys,
                             "energy bounded while norm_sq grows linearly")
    if verdict.rule == "C_LT_1" and c < a:
        f = gap_witness(sys)
        return WitnessFamily("g0-gap", lambda n: f, sys, "energy exactly 0")
    raise ValueError(f"no witness family for rule {verdict.rule}")


def family_for_verdict(verdict, g: StepFunction) -> WitnessFamily:
    """Witness family for a ``NotFrame`` verdict on ``(g, 1, 1)`` from :mod:`gaborstep.conditions`."""
    sys = GaborSystem(g, 1, 1)
    fam = (verdict.witness or {}).get("family")
    if fam == "g0-gap":
        f = gap_witness(sys)
        return WitnessFamily("g0-gap", lambda n: f, sys, "energy exactly 0")
    if fam == "two-overlap":
        m, E = verdict.witness["m"], (verdict.witness["E_lo"], verdict.witness["E_hi"])
        cell = find_two_overlap_cell(g)
        if cell is not None:
            m, E = cell
        return WitnessFamily("two-overlap", lambda n: two_overlap_witness(g, m, E, n), sys,
                             "energy bounded while norm_sq = 2n|E|")
    if fam == "periodization":
        E = chi(verdict.witness["E_lo"], verdict.witness["E_hi"])
        return WitnessFamily("periodization", lambda n: periodization_witness(E, n), sys,
                             "energy bounded while norm_sq = (n+1)|E|")
    raise ValueError(f"no witness family for {fam!r}")
