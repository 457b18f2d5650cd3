"""Frame sets built from integer translates of ``[0, 1)``.

For ``F = U_j ([0, 1) + n_j)`` the system ``(chi_F, 1, 1)`` is a frame exactly
when ``p(z) = sum_j z^{n_j}`` has no zero on the unit circle, and its frame
bounds are ``min |p|^2`` and ``max |p|^2`` over ``|z| = 1``.

``min |p|`` is enclosed by a certified branch and bound on
``r(theta) = |p(e^{i theta})|^2 = k + 2 sum_{j<l} cos((n_l - n_j) theta)``;
an exact Sturm count over Q settles the cases the floating enclosure cannot
separate from zero.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .conditions import FrameVerdict, Status
from .stepfn import StepFunction
from .poly import circle_square_chebyshev, count_roots, degree, peval, pgcd, poly, reciprocal

__all__ = [
    "ExponentSet",
    "CertifiedRange",
    "circle_range",
    "exact_circle_zero",
    "is_frame_set",
    "frame_set_window",
]

CIRCLE_RULE = "circle-min-modulus"
_EPS = np.finfo(float).eps
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ExponentSet:
    """Strictly increasing integers ``n_1 < ... < n_k``."""

    exps: tuple

    def __post_init__(self):
        exps = tuple(int(n) for n in self.exps)
        if not exps:
            raise ValueError("exponent set must be nonempty")
        if any(u >= v for u, v in zip(exps, exps[1:])):
            raise ValueError("exponents must be strictly increasing")
        object.__setattr__(self, "exps", exps)

    @classmethod
    def parse(cls, text: str) -> "ExponentSet":
        return cls(tuple(int(t) for t in text.split(",") if t.strip()))

    def normalized(self) -> "ExponentSet":
        """The twin with ``n_1 = 0``; ``|p|`` on the circle is unchanged."""
        n0 = self.exps[0]
        return ExponentSet(tuple(n - n0 for n in self.exps))

    def shift(self, c: int) -> "ExponentSet":
        return ExponentSet(tuple(n + c for n in self.exps))

    def __len__(self) -> int:
        return len(self.exps)

    def differences(self) -> Counter:
        """Multiset of ``n_l - n_j`` for ``j < l``."""
        e = self.exps
        return Counter(e[l] - e[j] for j in range(len(e)) for l in range(j + 1, len(e)))

    def polynomial(self):
        e = self.normalized().exps
        coeffs = [0] * (e[-1] + 1)
        for n in e:
            coeffs[n] = 1
        return poly(coeffs)


@dataclass(frozen=True)
class CertifiedRange:
    """Enclosures ``lo`` of ``min |p|`` and ``hi`` of ``max |p|`` on ``|z| = 1``."""

    exps: ExponentSet
    lo: tuple
    hi: tuple
    certificate: dict = field(default_factory=dict)

    @property
    def width(self) -> float:
        return float(self.lo[1] - self.lo[0])

    def frame_bounds(self) -> tuple:
        """Certified ``(A, B)`` for ``(chi_F, 1, 1)``: the squared enclosure ends."""
        return self.lo[0] ** 2, self.hi[1] ** 2

    def to_json(self) -> dict:
        return {
            "exps": list(self.exps.exps),
            "min_enclosure": [float(x) for x in self.lo],
            "max_enclosure": [float(x) for x in self.hi],
            "certificate": self.certificate,
        }


class _Trig:
    """``r`` and ``r'`` evaluated in float with a rigorous rounding allowance."""

    def __init__(self, e: ExponentSet):
        diffs = e.differences()
        self.k = len(e)
        self.d = np.array(sorted(diffs), dtype=float)
        self.cnt = np.array([diffs[int(d)] for d in self.d], dtype=float)
        self.m2 = 2.0 * float(np.sum(self.cnt * self.d**2))
        terms = len(self.d) + 2
        mag = self.k + 2.0 * float(np.sum(self.cnt))
        # each cos(d*theta) is off by <= eps*(2 + 2*pi*d); summation adds terms*eps*mag
        self.slack = 2.0 * _EPS * (
            float(np.sum(2.0 * self.cnt * (2.0 + _TWO_PI * self.d))) + terms * mag
        )
        self.dslack = 2.0 * _EPS * (
            float(np.sum(2.0 * self.cnt * self.d * (2.0 + _TWO_PI * self.d)))
            + terms * float(np.sum(2.0 * self.cnt * self.d))
        )

    def r(self, th: np.ndarray) -> np.ndarray:
        if not len(self.d):
            return np.full(th.shape, float(self.k))
        return self.k + 2.0 * (np.cos(np.outer(th, self.d)) @ self.cnt)

    def dr(self, th: np.ndarray) -> np.ndarray:
        if not len(self.d):
            return np.zeros(th.shape)
        return -2.0 * (np.sin(np.outer(th, self.d)) @ (self.cnt * self.d))


def _median_lipschitz(e: ExponentSet) -> float:
    """Lipschitz constant of ``theta -> |p(e^{i theta})|``: ``sum |n_j - median|``."""
    med = e.exps[len(e) // 2]
    return float(sum(abs(n - med) for n in e.exps))


def _branch_and_bound(tr: _Trig, lo, hi, best, tol, max_levels):
    """Refine ``[lo, hi)`` intervals until ``sqrt`` enclosure width of ``min r`` is ``<= tol``.

    Returns ``(lower, best, argmin, finest_width, levels, evaluated, done)``.
    """
    retired_lb = math.inf
    argmin = None
    evaluated = 0
    finest = float(np.max(hi - lo)) if len(lo) else 0.0
    for level in range(max_levels + 1):
        if not len(lo):
            return min(retired_lb, best), best, argmin, finest, level, evaluated, True
        c = 0.5 * (lo + hi)
        h = 0.5 * (hi - lo) * (1 + 4 * _EPS) + 4 * _EPS
        rc, rl, rh = tr.r(c), tr.r(lo), tr.r(hi)
        evaluated += 3 * len(c)
        i = int(np.argmin(rc))
        if rc[i] < best:
            best, argmin = float(rc[i]), float(c[i])
        lb_taylor = rc - np.abs(tr.dr(c)) * h - 0.5 * tr.m2 * h * h - tr.slack - tr.dslack * h
        lb_chord = np.minimum(rl, rh) - tr.m2 * (2 * h) ** 2 / 8 - tr.slack
        lb = np.maximum(lb_taylor, lb_chord)
        target = tol * math.sqrt(max(best, 0.0))
        done = lb >= best - target
        if target < 4 * tr.slack and not done.all():
            # the requested width is below float resolution near a (near) zero
            lb_active = float(np.min(lb[~done]))
            return min(retired_lb, lb_active, best), best, argmin, finest, level, evaluated, False
        if done.any():
            retired_lb = min(retired_lb, float(np.min(lb[done])))
        lo, hi, c = lo[~done], hi[~done], c[~done]
        if len(lo):
            finest = float(np.max(hi - lo)) / 2
        lo, hi = np.concatenate([lo, c]), np.concatenate([c, hi])
        keep = hi > lo  # below float resolution a midpoint collapses onto an endpoint
        lo, hi = lo[keep], hi[keep]
    active_lb = float(np.min(lb[~done])) if (~done).any() else math.inf
    return min(retired_lb, active_lb, best), best, argmin, finest, max_levels, evaluated, False


def exact_circle_zero(e: ExponentSet) -> bool:
    """Decide over Q whether ``p(z) = sum z^{n_j}`` vanishes somewhere on ``|z| = 1``.

    Circle zeros of ``p`` are common zeros with its reciprocal, hence zeros of
    ``d = gcd(p, p*)``.  Then ``|d(e^{i theta})|^2 = Q(cos theta)`` and a circle
    zero of ``d`` is a root of ``Q`` in ``[-1, 1]``, counted by Sturm.
    """
    p = e.polynomial()
    d = pgcd(p, reciprocal(p))
    if degree(d) < 1:
        return False
    if peval(d, 1) == 0 or peval(d, -1) == 0:
        return True
    q = circle_square_chebyshev(d)
    return count_roots(q, Fraction(-1), Fraction(1)) > 0


def circle_range(e: ExponentSet, tol: float = 1e-9, max_levels: int = 40) -> CertifiedRange:
    """Certified enclosures of ``min`` and ``max`` of ``|p|`` on the unit circle.

    ``max |p| = k`` exactly (triangle inequality, attained at ``z = 1``).  The
    minimum comes from branch and bound on ``r = |p|^2`` using
    ``r >= r(c) - |r'(c)| h - M2 h^2 / 2`` with ``M2 = 2 sum_{j<l} (n_l - n_j)^2``.
    If the floating enclosure cannot leave zero, the exact test decides.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    e = e.normalized()
    k = len(e)
    hi = (Fraction(k), Fraction(k))
    cert = {
        "lipschitz": _median_lipschitz(e),
        "second_derivative_bound": 0.0,
        "tolerance": tol,
    }
    if k == 1:
        cert.update(method="constant")
        return CertifiedRange(e, (Fraction(1), Fraction(1)), hi, cert)

    tr = _Trig(e)
    npts = max(64, 16 * e.exps[-1])
    step = _TWO_PI / npts
    gmin, imin, _, _ = kernels.circle_extrema(e.exps, npts)
    lo_edges = np.arange(npts, dtype=float) * step
    hi_edges = lo_edges + step
    hi_edges[-1] = _TWO_PI + 1e-9  # overlap past 2*pi so the cover is closed under rounding

    lower, best, argmin, finest, levels, evaluated, done = _branch_and_bound(
        tr, lo_edges, hi_edges, float(gmin), tol, max_levels
    )
    cert.update(
        second_derivative_bound=tr.m2,
        grid_points=npts,
        grid_step=step,
        rounding_slack=tr.slack,
        levels=levels,
        evaluations=evaluated,
        finest_step=finest,
        theta_min=argmin if argmin is not None else imin * step,
    )
    if not done:
        zero = exact_circle_zero(e)
        cert["exact_zero"] = zero
        if zero:
            cert["method"] = "exact-sturm"
            return CertifiedRange(e, (0.0, 0.0), hi, cert)
    cert["method"] = "branch-and-bound"
    cert["width_met"] = done
    lo = (math.sqrt(max(lower, 0.0)), math.sqrt(max(best, 0.0)))
    return CertifiedRange(e, lo, hi, cert)


def is_frame_set(e: ExponentSet, tol: float = 1e-9) -> FrameVerdict:
    """Frame verdict for ``(chi_F, 1, 1)``, ``F = U_j ([0,1) + n_j)``, with bounds ``(A, B)``."""
    if exact_circle_zero(e):
        return FrameVerdict(Status.NOT_FRAME, CIRCLE_RULE, witness={"family": "circle-zero"},
                            detail={"exps": list(e.exps)})
    rng = circle_range(e, tol)
    a, b = rng.frame_bounds()
    if a <= 0:
        return FrameVerdict(Status.INCONCLUSIVE, CIRCLE_RULE, detail={"min_enclosure": rng.lo})
    return FrameVerdict(Status.FRAME, CIRCLE_RULE, (a, b),
                        detail={"min_enclosure": rng.lo, "max_enclosure": rng.hi})


def frame_set_window(e: ExponentSet):
    """``chi_F`` for ``F = U_j ([0, 1) + n_j)``."""
    return StepFunction([(Fraction(n), Fraction(n + 1), Fraction(1)) for n in e.exps])
