"""Dense univariate polynomials over Q with Sturm root counting.

A polynomial is a tuple of Fractions, lowest degree first, with no trailing
zeros; the zero polynomial is ``()``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = [
    "poly",
    "degree",
    "padd",
    "psub",
    "pmul",
    "pdivmod",
    "pgcd",
    "pderiv",
    "peval",
    "reciprocal",
    "chebyshev_t",
    "sturm_sequence",
    "count_roots",
    "autocorrelation",
    "circle_square_chebyshev",
]

Poly = tuple


def poly(coeffs: Sequence) -> Poly:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Poly) -> int:
    return len(p) - 1


def padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def psub(p: Poly, q: Poly) -> Poly:
    return padd(p, tuple(-x for x in q))


def pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return poly(out)


def pdivmod(p: Poly, q: Poly) -> tuple:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    for i in range(len(p) - len(q), -1, -1):
        c = rem[i + len(q) - 1] / lead
        quo[i] = c
        if c:
            for j, y in enumerate(q):
                rem[i + j] -= c * y
    return poly(quo), poly(rem[: len(q) - 1])


def _monic(p: Poly) -> Poly:
    return tuple(x / p[-1] for x in p) if p else p


def pgcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor (Euclid over Q)."""
    while q:
        p, q = q, pdivmod(p, q)[1]
    return _monic(p)


def pderiv(p: Poly) -> Poly:
    return poly([i * x for i, x in enumerate(p)][1:])


def peval(p: Poly, x):
    acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def reciprocal(p: Poly) -> Poly:
    """``z^deg(p) p(1/z)`` for a polynomial with ``p(0) != 0``."""
    return poly(reversed(p))


def chebyshev_t(m: int) -> Poly:
    t0, t1 = poly([1]), poly([0, 1])
    if m == 0:
        return t0
    for _ in range(m - 1):
        t0, t1 = t1, psub(pmul(poly([0, 2]), t1), t0)
    return t1


def sturm_sequence(p: Poly) -> list:
    seq = [p, pderiv(p)]
    while seq[-1]:
        r = pdivmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(tuple(-x for x in r))
    return seq


def _sign_changes(seq: list, x: Fraction) -> int:
    signs = [s for s in ((peval(p, x) > 0) - (peval(p, x) < 0) for p in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def count_roots(p: Poly, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``."""
    if not p:
        raise ValueError("zero polynomial has infinitely many roots")
    lo, hi = Fraction(lo), Fraction(hi)
    # square-free part: with repeated roots the plain sequence miscounts roots sitting on an endpoint
    sqfree = pdivmod(p, pgcd(p, pderiv(p)))[0]
    seq = sturm_sequence(sqfree)
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def autocorrelation(p: Poly) -> list:
    """``c_m = sum_i p_i p_{i+m}`` for ``m >= 0``."""
    return [sum((p[i] * p[i + m] for i in range(len(p) - m)), Fraction(0)) for m in range(len(p))]


def circle_square_chebyshev(p: Poly) -> Poly:
    """``Q`` with ``|p(e^{i theta})|^2 = Q(cos theta)`` for real coefficients."""
    c = autocorrelation(p)
    q = poly([c[0]]) if c else ()
    for m in range(1, len(c)):
        if c[m]:
            q = padd(q, tuple(2 * c[m] * x for x in chebyshev_t(m)))
    return q
