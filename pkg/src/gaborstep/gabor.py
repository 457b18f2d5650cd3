"""Periodization, p-inner products, correlation functions and frame energy.

Modulations are never materialized: every sum over modulations is collapsed
by Parseval on one period cell, so the whole computation stays inside the
step-function algebra.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .scalar import abs2, fmt_rational, is_exact, to_rational
from .stepfn import PeriodicStepFunction, StepFunction, chi, inner, norm_sq, translate

__all__ = [
    "GaborSystem",
    "GkTable",
    "periodize",
    "bracket",
    "cross_bracket",
    "gk_table",
    "frame_energy",
    "energy_ratio",
    "translate_energy",
    "harmonic_window",
    "harmonic_gk_limit",
]


@dataclass(frozen=True)
class GaborSystem:
    """The Weyl-Heisenberg system ``(E_{mb} T_{na} g)_{m,n}``."""

    g: StepFunction
    a: Fraction
    b: Fraction
    approx: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self):
        a = to_rational(self.a, self.approx)
        b = to_rational(self.b, self.approx)
        if a <= 0 or b <= 0:
            raise ValueError("lattice parameters a, b must be positive")
        if self.g.is_zero:
            raise ValueError("window g must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def exact(self) -> bool:
        return self.g.exact

    def to_json(self) -> dict:
        return {"g": self.g.to_json(), "a": fmt_rational(self.a), "b": fmt_rational(self.b)}


def periodize(f: StepFunction, p, approx: bool = False) -> PeriodicStepFunction:
    """``t -> sum_j f(t - j p)`` on one cell ``[0, p)``."""
    p = to_rational(p, approx)
    if p <= 0:
        raise ValueError("period must be positive")
    den = kernels.grid_denominator(f, p)
    starts, ends, vals = kernels.to_grid(f, den)
    if not vals:
        return PeriodicStepFunction(p, StepFunction(()))
    cuts, cvals = kernels.fold(starts, ends, vals, p.numerator * (den // p.denominator))
    return kernels.periodic_from_grid(cuts, cvals, den, p)


def cross_bracket(f: StepFunction, g: StepFunction, shift, p) -> PeriodicStepFunction:
    """``t -> sum_k f(t - kp) * conj(g(t - kp - shift))``, i.e. ``<f, T_shift g>_p``."""
    shift, p = Fraction(shift), Fraction(p)
    den = kernels.grid_denominator(f, g, shift, p)
    if f.is_zero or g.is_zero:
        return PeriodicStepFunction(p, StepFunction(()))
    cuts, cvals = kernels.cross_fold(
        kernels.to_grid(f, den), kernels.to_grid(g, den),
        shift.numerator * (den // shift.denominator),
        p.numerator * (den // p.denominator),
    )
    return kernels.periodic_from_grid(cuts, cvals, den, p)


def bracket(f: StepFunction, g: StepFunction, p, approx: bool = False) -> PeriodicStepFunction:
    """The ``p``-inner product ``<f, g>_p(t) = sum_k f(t - kp) conj(g(t - kp))``."""
    return cross_bracket(f, g, 0, to_rational(p, approx))


@dataclass(frozen=True)
class GkTable:
    """Correlation functions ``G_k``, each ``a``-periodic; only nonzero ``k`` are stored."""

    system: GaborSystem
    entries: dict

    @property
    def krange(self) -> list:
        return sorted(self.entries)

    def __getitem__(self, k: int) -> PeriodicStepFunction:
        return self.entries.get(k, PeriodicStepFunction(self.system.a, StepFunction(())))

    def to_json(self) -> dict:
        return {
            "a": fmt_rational(self.system.a),
            "b": fmt_rational(self.system.b),
            "entries": {str(k): self.entries[k].cell.to_json() for k in self.krange},
        }


def _diameter(g: StepFunction) -> Fraction:
    lo, hi = g.support()
    return hi - lo


def gk_table(sys: GaborSystem) -> GkTable:
    """``G_k(t) = sum_n g(t - na) conj(g(t - na - k/b))`` for every ``k`` with ``G_k != 0``."""
    g, a, b = sys.g, sys.a, sys.b
    kmax = math.ceil(b * _diameter(g))
    den = kernels.grid_denominator(g, a, 1 / b)
    grid = kernels.to_grid(g, den)
    period = a.numerator * (den // a.denominator)
    step = den // (1 / b).denominator * (1 / b).numerator
    entries = {}
    for k in range(-kmax, kmax + 1):
        cuts, cvals = kernels.cross_fold(grid, grid, k * step, period)
        gk = kernels.periodic_from_grid(cuts, cvals, den, a)
        if not gk.is_zero:
            entries[k] = gk
    return GkTable(sys, entries)


def _shift_range(f: StepFunction, g: StepFunction, a: Fraction) -> range:
    """Integers ``n`` for which ``f * T_{na} g`` can be nonzero."""
    flo, fhi = f.support()
    glo, ghi = g.support()
    return range(math.floor((flo - ghi) / a), math.ceil((fhi - glo) / a) + 1)


def frame_energy(f: StepFunction, sys: GaborSystem):
    """``sum_{m,n} |<f, E_{mb} T_{na} g>|^2`` computed exactly.

    Uses ``sum_m |<F, E_{mb}>|^2 = (1/b) int_0^{1/b} |periodize(F, 1/b)|^2``
    for each translate ``F = f * conj(T_{na} g)``.
    """
    g, a, b = sys.g, sys.a, sys.b
    exact = f.exact and g.exact
    if f.is_zero:
        return Fraction(0) if exact else 0.0
    p = 1 / b
    den = kernels.grid_denominator(f, g, a, p)
    fg, gg = kernels.to_grid(f, den), kernels.to_grid(g, den)
    period = p.numerator * (den // p.denominator)
    step = a.numerator * (den // a.denominator)
    total = 0
    for n in _shift_range(f, g, a):
        cuts, cvals = kernels.cross_fold(fg, gg, n * step, period)
        for lo, hi, v in zip(cuts, cuts[1:], cvals):
            if v:
                total += (hi - lo) * abs2(v)
    if exact:
        return Fraction(total) / den / b
    return float(total) / den / float(b)


def energy_ratio(f: StepFunction, sys: GaborSystem):
    """``frame_energy(f) / ||f||^2``; any frame bounds ``A, B`` satisfy ``A <= ratio <= B``."""
    nf = norm_sq(f)
    if nf == 0:
        raise ValueError("energy ratio of the zero function is undefined")
    return frame_energy(f, sys) / nf


def translate_energy(f: StepFunction, g: StepFunction, a):
    """``sum_n |<f, T_{na} g>|^2`` (translates only, no modulations)."""
    a = Fraction(a)
    if f.is_zero or g.is_zero:
        return Fraction(0)
    total = 0
    for n in _shift_range(f, g, a):
        total += abs2(inner(f, translate(g, n * a)))
    return total


def harmonic_window(N: int, b=1) -> StepFunction:
    """Truncation ``sum_{n=2}^{N} e_n / n`` of the harmonic window, ``e_n = T_{n/b} chi[0, 1/b)``.

    Values are floats: the exact harmonic denominators grow too fast to be useful.
    """
    b = Fraction(b)
    if N < 2:
        raise ValueError("N must be at least 2")
    return StepFunction([(n / b, (n + 1) / b, 1.0 / n) for n in range(2, N + 1)])


def harmonic_gk_limit(k: int) -> float:
    """Closed form of ``G_k`` for the untruncated harmonic window at ``a = b = 1``.

    ``sum_{n>=2} 1/(n(n+k)) = (1/k) sum_{n=2}^{k+1} 1/n`` for ``k >= 1``.
    """
    k = abs(k)
    if k == 0:
        return math.pi ** 2 / 6 - 1
    return math.fsum(1.0 / n for n in range(2, k + 2)) / k
