"""Pure-Python hot kernels.

All positions are integers on a common grid (breakpoints times a shared
denominator).  Values are any field elements supporting ``+``, ``*`` and
``conjugate()``, so exact rationals pass through untouched.
"""
from __future__ import annotations

import math


def _zero_like(vals):
    for v in vals:
        return v * 0
    return 0


def _sweep(events: dict, period: int, zero):
    xs = sorted(events.keys() | {0, period})
    cuts, cvals = [xs[0]], []
    acc = zero
    for x, nxt in zip(xs, xs[1:]):
        acc = acc + events.get(x, zero)
        cvals.append(acc)
        cuts.append(nxt)
    return cuts, cvals


def _deposit(events: dict, s: int, e: int, v, period: int) -> None:
    """Add ``v`` on ``[s, e)`` wrapped onto ``[0, period)``."""
    L = s % period
    end = L + (e - s)
    if end <= period:
        events[L] = events.get(L, 0) + v
        events[end] = events.get(end, 0) - v
        return
    events[L] = events.get(L, 0) + v
    events[period] = events.get(period, 0) - v
    q, r = divmod(end - period, period)
    if q:
        events[0] = events.get(0, 0) + q * v
        events[period] = events.get(period, 0) - q * v
    if r:
        events[0] = events.get(0, 0) + v
        events[r] = events.get(r, 0) - v


def fold(starts, ends, vals, period):
    """Periodize pieces ``[starts[i], ends[i]) -> vals[i]`` with the given period.

    Returns ``(cuts, cvals)``: a partition ``0 = cuts[0] < ... < cuts[-1] = period``
    and the summed value on each cell.
    """
    zero = _zero_like(vals)
    events: dict = {}
    for s, e, v in zip(starts, ends, vals):
        if v:
            _deposit(events, s, e, v, period)
    return _sweep(events, period, zero)


def cross_fold(fs, fe, fv, gs, ge, gv, shift, period):
    """Periodize ``f(t) * conj(g(t - shift))`` with the given period."""
    zero = _zero_like(fv) * _zero_like(gv)
    events: dict = {}
    i = j = 0
    nf, ng = len(fs), len(gs)
    while i < nf and j < ng:
        glo, ghi = gs[j] + shift, ge[j] + shift
        lo = fs[i] if fs[i] > glo else glo
        hi = fe[i] if fe[i] < ghi else ghi
        if lo < hi:
            v = fv[i] * gv[j].conjugate()
            if v:
                _deposit(events, lo, hi, v, period)
        if fe[i] <= ghi:
            i += 1
        else:
            j += 1
    return _sweep(events, period, zero)


def circle_extrema(exps, npts):
    """Extrema of ``r(theta) = |sum_j exp(i n_j theta)|^2`` on ``theta_i = 2 pi i / npts``.

    Returns ``(rmin, imin, rmax, imax)``.
    """
    rmin, imin, rmax, imax = math.inf, 0, -math.inf, 0
    step = 2.0 * math.pi / npts
    for i in range(npts):
        th = i * step
        c = s = 0.0
        for n in exps:
            c += math.cos(n * th)
            s += math.sin(n * th)
        r = c * c + s * s
        if r < rmin:
            rmin, imin = r, i
        if r > rmax:
            rmax, imax = r, i
    return rmin, imin, rmax, imax
