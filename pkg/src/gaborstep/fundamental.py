"""Compressed operators over ``1/b``-periodic coefficient functions.

Everything here works through the ``1/b``-inner product: an operator that
commutes with multiplication by ``1/b``-periodic functions is determined by
finitely many periodic step functions, so ``S``, ``T``, ``T*``, the Walnut
entries and the fundamental decomposition all stay exact for rational data.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .gabor import GaborSystem, _shift_range, bracket, cross_bracket, gk_table
from .scalar import fmt_rational, sqrt_scalar, to_rational
from .stepfn import PeriodicStepFunction, StepFunction, _refine, chi, norm_sq, translate

__all__ = [
    "e_basis",
    "WindowFamily",
    "apply_frame_operator",
    "apply_preframe",
    "apply_adjoint",
    "walnut_entry",
    "walnut_band",
    "apply_via_walnut",
    "fundamental_decomposition_apply",
    "build_bgp",
    "sqrt_inverse_check",
]


def e_basis(k: int, b) -> StepFunction:
    """``e_k = T_{k/b} chi_[0, 1/b)``, orthonormal for the ``1/b``-inner product."""
    b = Fraction(b)
    return chi(Fraction(k) / b, Fraction(k + 1) / b)


def _sum(parts) -> StepFunction:
    out = StepFunction(())
    for p in parts:
        out = out + p
    return out


def _scale(f: StepFunction, c) -> StepFunction:
    return f if c == 1 else f * c


def _cell_range(f: StepFunction, width) -> range:
    """Indices ``k`` with ``f`` nonzero somewhere on ``[k w, (k+1) w)``."""
    lo, hi = f.support()
    return range(math.floor(lo / width), math.ceil(hi / width))


def apply_frame_operator(sys: GaborSystem, f: StepFunction) -> StepFunction:
    """``S f = (1/b) sum_n <f, T_{na} g>_{1/b} T_{na} g``."""
    g, a, b = sys.g, sys.a, sys.b
    if f.is_zero:
        return f
    p = 1 / b
    parts = []
    for n in _shift_range(f, g, a):
        coef = cross_bracket(f, g, n * a, p)
        if not coef.is_zero:
            parts.append(coef.multiply(translate(g, n * a)))
    return _scale(_sum(parts), p)


def apply_adjoint(sys: GaborSystem, f: StepFunction) -> StepFunction:
    """``T* f = sqrt(1/b) sum_k <f, T_{ka} g>_{1/b} e_k``."""
    g, a, b = sys.g, sys.a, sys.b
    if f.is_zero:
        return f
    p = 1 / b
    parts = []
    for k in _shift_range(f, g, a):
        coef = cross_bracket(f, g, k * a, p)
        if not coef.is_zero:
            parts.append(coef.multiply(e_basis(k, b)))
    return _scale(_sum(parts), sqrt_scalar(p))


def apply_preframe(sys: GaborSystem, h: StepFunction) -> StepFunction:
    """``T h = sqrt(1/b) sum_k <h, e_k>_{1/b} T_{ka} g``."""
    g, a, b = sys.g, sys.a, sys.b
    if h.is_zero:
        return h
    p = 1 / b
    parts = []
    for k in _cell_range(h, p):
        coef = bracket(h.restrict(k * p, (k + 1) * p), chi(k * p, (k + 1) * p), p)
        if not coef.is_zero:
            parts.append(coef.multiply(translate(g, k * a)))
    return _scale(_sum(parts), sqrt_scalar(p))


def walnut_entry(sys: GaborSystem, j: int, k: int, table=None) -> PeriodicStepFunction:
    """``W_jk`` with ``S(e_k) = sum_j W_jk e_j``; a ``1/b``-periodic function.

    ``W_jk(s) = (1/b) G_{j-k}(s + j/b)`` for ``s`` in ``[0, 1/b)``.
    """
    b = sys.b
    p = 1 / b
    table = table or gk_table(sys)
    gk = table[j - k]
    if gk.is_zero:
        return PeriodicStepFunction(p, StepFunction(()))
    cell = gk.shifted(-j * p).unroll(0, p)
    return PeriodicStepFunction(p, _scale(cell, p))


def walnut_band(sys: GaborSystem, k: int = 0) -> dict:
    """Column ``k`` of the Walnut matrix on its finite band, as JSON."""
    table = gk_table(sys)
    lo, hi = table.krange[0], table.krange[-1]
    return {
        "band_low": lo,
        "band_high": hi,
        "column": k,
        "entries": {str(k + d): walnut_entry(sys, k + d, k, table).to_json() for d in range(lo, hi + 1)},
    }


def apply_via_walnut(sys: GaborSystem, f: StepFunction) -> StepFunction:
    """``S f = sum_k <f, e_k>_{1/b} sum_j W_jk e_j``."""
    if f.is_zero:
        return f
    b = sys.b
    p = 1 / b
    table = gk_table(sys)
    band = table.krange
    parts = []
    for k in _cell_range(f, p):
        coef = bracket(f.restrict(k * p, (k + 1) * p), chi(k * p, (k + 1) * p), p)
        if coef.is_zero:
            continue
        for d in band:
            w = walnut_entry(sys, k + d, k, table)
            if not w.is_zero:
                parts.append((coef * w).multiply(e_basis(k + d, b)))
    return _sum(parts)


def fundamental_decomposition_apply(sys: GaborSystem, f: StepFunction) -> StepFunction:
    """``S f = sum_k <f, alpha_k>_{1/b} T_{ka} S(alpha_0)`` with ``S(alpha_0) = (1/b) sum_j G_j phi_j``.

    ``alpha_k = T_{ka} chi_[0, a)`` and ``phi_j = T_{j/b} chi_[0, a)``; requires ``ab <= 1``.
    """
    g, a, b = sys.g, sys.a, sys.b
    if a * b > 1:
        raise ValueError("fundamental decomposition needs ab <= 1")
    if f.is_zero:
        return f
    p = 1 / b
    table = gk_table(sys)
    s_alpha0 = _scale(_sum(table[j].multiply(chi(j * p, j * p + a)) for j in table.krange), p)
    parts = []
    for k in _cell_range(f, a):
        coef = bracket(f, chi(k * a, (k + 1) * a), p)
        if not coef.is_zero:
            parts.append(coef.multiply(translate(s_alpha0, k * a)))
    return _sum(parts)


@dataclass(frozen=True)
class WindowFamily:
    """``member(k)`` is ``T_{k/b}`` (kinds ``e``, ``phi``) or ``T_{ka}`` (others) of ``generator``."""

    kind: str
    a: Fraction
    b: Fraction
    generator: StepFunction

    def member(self, k: int) -> StepFunction:
        step = 1 / self.b if self.kind in ("e", "phi") else self.a
        return translate(self.generator, k * step)


def build_bgp(a, b) -> tuple:
    """``(beta, gamma, psi)`` families for ``1/2 <= ab <= 1`` with ``delta = 1/b - a``.

    ``beta_0 = chi_[0, 1/b)``; ``gamma_0`` and ``psi_0`` weight the two overlap
    pieces ``[0, delta)`` and ``[a, 1/b)`` by ``1/sqrt 2`` and ``1/sqrt(2 sqrt 2)``.
    """
    a, b = to_rational(a, approx=True), to_rational(b, approx=True)
    if not Fraction(1, 2) <= a * b <= 1:
        raise ValueError("need 1/2 <= ab <= 1")
    p = 1 / b
    delta = p - a

    def window(edge):
        pieces = [(delta, a, 1.0)] if delta < a else []
        if delta > 0:
            pieces += [(Fraction(0), delta, edge), (a, p, edge)]
        return StepFunction(sorted(pieces, key=lambda x: x[0]))

    beta = WindowFamily("beta", a, b, StepFunction([(Fraction(0), p, 1.0)]))
    gamma = WindowFamily("gamma", a, b, window(2 ** -0.5))
    psi = WindowFamily("psi", a, b, window(2 ** -0.75))
    return beta, gamma, psi


def _random_step(rng: random.Random, lo: int, hi: int, den: int) -> StepFunction:
    cuts = sorted({Fraction(rng.randint(lo * den, hi * den), den) for _ in range(rng.randint(2, 7))})
    return StepFunction([(u, v, rng.uniform(-2.0, 2.0)) for u, v in zip(cuts, cuts[1:])])


def _l2_dist(f: StepFunction, g: StepFunction) -> float:
    """``||f - g||`` on raw cell values, bypassing the tolerance that drops tiny pieces."""
    return math.sqrt(math.fsum(float(hi - lo) * abs(complex(u) - complex(v)) ** 2
                               for lo, hi, u, v in _refine(f, g)))


def sqrt_inverse_check(a, b, trials: int = 30, seed: int = 0) -> dict:
    """Numerically confirm ``S^psi(beta_0) = gamma_0`` and ``S^psi S^b S^psi = I``.

    ``S^b`` and ``S^psi`` are the frame operators of ``sqrt(b) beta_0`` and
    ``sqrt(b) psi_0``.  Errors are L2 norms computed on the float cell values.
    """
    beta, gamma, psi = build_bgp(a, b)
    a, b = beta.a, beta.b
    rb = math.sqrt(b)
    sys_b = GaborSystem(beta.generator * rb, a, b)
    sys_psi = GaborSystem(psi.generator * rb, a, b)
    sys_gamma = GaborSystem(gamma.generator * rb, a, b)

    err_bg = _l2_dist(apply_frame_operator(sys_psi, beta.generator), gamma.generator)
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(trials):
        f = _random_step(rng, -3, 3, 20)
        if f.is_zero:
            continue
        out = apply_frame_operator(sys_psi, apply_frame_operator(sys_b, apply_frame_operator(sys_psi, f)))
        worst = max(worst, _l2_dist(out, f) / math.sqrt(norm_sq(f)))
    g0 = bracket(sys_gamma.g, sys_gamma.g, a)
    return {
        "a": fmt_rational(a),
        "b": fmt_rational(b),
        "trials": trials,
        "max_err_beta_gamma": err_bg,
        "max_err_identity": worst,
        "gamma_tight_constant": [g0.ess_inf() / float(b), g0.ess_sup() / float(b)],
    }
