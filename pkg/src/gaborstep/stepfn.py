"""Compactly supported step functions and their periodic counterparts.

Pieces are half-open intervals ``[lo, hi)`` with rational endpoints.  Values
are exact (``Fraction``/``QComplex``) or approximate (``float``/``complex``),
see :mod:`gaborstep.scalar`.  Every :class:`StepFunction` is kept in
canonical form: sorted, adjacent equal values merged, zero pieces dropped.
"""
from __future__ import annotations

import bisect
import math
import warnings
from collections import Counter
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .scalar import (
    QComplex,
    abs2,
    absval,
    close,
    fmt_rational,
    is_exact,
    is_zero,
    parse_rational,
    to_rational,
    to_scalar,
)

__all__ = [
    "StepFunction",
    "PeriodicStepFunction",
    "MixedModeWarning",
    "make",
    "chi",
    "translate",
    "dilate",
    "add",
    "mul",
    "conj",
    "scale",
    "norm_sq",
    "integral",
]


class MixedModeWarning(UserWarning):
    """An exact and an approximate operand were combined; the result is approximate."""


Piece = tuple  # (Fraction lo, Fraction hi, value)


def _canonical(pieces: Iterable[Piece]) -> tuple:
    """Merge/drop on an already sorted, pairwise disjoint piece list."""
    out: list = []
    for lo, hi, v in pieces:
        if is_zero(v):
            continue
        if out and out[-1][1] == lo and close(out[-1][2], v):
            out[-1] = (out[-1][0], hi, out[-1][2])
        else:
            out.append((lo, hi, v))
    return tuple(out)


class StepFunction:
    """Immutable compactly supported piecewise-constant function."""

    __slots__ = ("pieces", "_los")

    def __init__(self, pieces: Sequence[Piece] = ()):
        # trusted constructor: pieces must be sorted and disjoint
        object.__setattr__(self, "pieces", _canonical(pieces))
        object.__setattr__(self, "_los", None)

    def __setattr__(self, name, value):
        raise AttributeError("StepFunction is immutable")

    # -- basic queries -------------------------------------------------
    @property
    def exact(self) -> bool:
        return all(is_exact(v) for _, _, v in self.pieces)

    @property
    def is_zero(self) -> bool:
        return not self.pieces

    @property
    def is_real(self) -> bool:
        return all(isinstance(v, (int, Fraction, float)) for _, _, v in self.pieces)

    def support(self) -> tuple:
        """Convex hull ``(lo, hi)`` of the support; ``None`` for the zero function."""
        if not self.pieces:
            return None
        return self.pieces[0][0], self.pieces[-1][1]

    def breakpoints(self) -> list:
        pts = []
        for lo, hi, _ in self.pieces:
            if not pts or pts[-1] != lo:
                pts.append(lo)
            pts.append(hi)
        return pts

    def values(self) -> list:
        return [v for _, _, v in self.pieces]

    def __call__(self, t):
        if self._los is None:
            object.__setattr__(self, "_los", [p[0] for p in self.pieces])
        i = bisect.bisect_right(self._los, t) - 1
        if i >= 0:
            lo, hi, v = self.pieces[i]
            if lo <= t < hi:
                return v
        return Fraction(0) if self.exact else 0.0

    def __iter__(self) -> Iterator[Piece]:
        return iter(self.pieces)

    def __len__(self) -> int:
        return len(self.pieces)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        if len(self.pieces) != len(other.pieces):
            return False
        return all(
            a[0] == b[0] and a[1] == b[1] and close(a[2], b[2])
            for a, b in zip(self.pieces, other.pieces)
        )

    def __hash__(self):
        return hash(tuple((lo, hi) for lo, hi, _ in self.pieces))

    def __reduce__(self):
        return StepFunction, (self.pieces,)

    def __repr__(self):
        body = ", ".join(f"[{lo},{hi})->{v}" for lo, hi, v in self.pieces)
        return f"StepFunction({body})"

    # -- algebra -------------------------------------------------------
    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, StepFunction):
            return mul(self, other)
        return scale(self, other)

    def __rmul__(self, other):
        return scale(self, other)

    def conj(self) -> "StepFunction":
        return conj(self)

    def translate(self, s) -> "StepFunction":
        return translate(self, s)

    def dilate(self, r) -> "StepFunction":
        return dilate(self, r)

    def norm_sq(self):
        return norm_sq(self)

    def integral(self):
        return integral(self)

    def restrict(self, lo, hi) -> "StepFunction":
        """``f * chi[lo, hi)``."""
        lo, hi = Fraction(lo), Fraction(hi)
        out = []
        for plo, phi, v in self.pieces:
            a, b = max(plo, lo), min(phi, hi)
            if a < b:
                out.append((a, b, v))
        return StepFunction(out)

    def map(self, fn) -> "StepFunction":
        return StepFunction([(lo, hi, fn(v)) for lo, hi, v in self.pieces])

    def abs(self) -> "StepFunction":
        return self.map(absval)

    def to_approx(self) -> "StepFunction":
        return self.map(_to_float)

    # -- serialization ---------------------------------------------------
    def to_json(self) -> list:
        if self.exact:
            rows = []
            for lo, hi, v in self.pieces:
                re, im = (v.re, v.im) if isinstance(v, QComplex) else (Fraction(v), Fraction(0))
                rows.append(
                    [lo.numerator, lo.denominator, hi.numerator, hi.denominator,
                     fmt_rational(re), fmt_rational(im)]
                )
            return rows
        return [
            [float(lo), float(hi), complex(v).real, complex(v).imag]
            for lo, hi, v in self.pieces
        ]

    @classmethod
    def from_json(cls, rows, approx: bool = False) -> "StepFunction":
        pieces = []
        for row in rows:
            if not isinstance(row, (list, tuple)):
                raise ValueError(f"piece must be an array, got {row!r}")
            if len(row) == 6:
                lo = Fraction(int(row[0]), int(row[1]))
                hi = Fraction(int(row[2]), int(row[3]))
                v = to_scalar([row[4], row[5]], approx)
            elif len(row) == 4:
                lo, hi = to_rational(row[0], True), to_rational(row[1], True)
                v = complex(float(row[2]), float(row[3]))
                v = v.real if v.imag == 0 else v
            elif len(row) == 3:
                lo, hi = to_rational(row[0], approx), to_rational(row[1], approx)
                v = to_scalar(row[2], approx)
            else:
                raise ValueError(f"piece must have 3, 4 or 6 entries, got {row!r}")
            pieces.append((lo, hi, v))
        return make(pieces, approx=True)


def _to_float(v):
    if isinstance(v, (int, Fraction)):
        return float(v)
    return complex(v) if not isinstance(v, float) else v


def _mode_check(f: StepFunction, g: StepFunction) -> None:
    if f.pieces and g.pieces and f.exact != g.exact:
        warnings.warn(
            "combining exact and approximate step functions; result is approximate",
            MixedModeWarning,
            stacklevel=3,
        )


def make(pieces, approx: bool = False) -> StepFunction:
    """Build a canonical step function from ``(lo, hi, value)`` triples.

    Overlapping pieces are accepted only where they carry the same value.
    """
    norm = []
    for piece in pieces:
        lo, hi, v = piece
        lo, hi = to_rational(lo, approx), to_rational(hi, approx)
        if not lo < hi:
            raise ValueError(f"empty or reversed interval [{lo}, {hi})")
        norm.append((lo, hi, to_scalar(v, approx)))
    if not norm:
        return StepFunction(())
    norm.sort(key=lambda p: (p[0], p[1]))
    if all(norm[i][1] <= norm[i + 1][0] for i in range(len(norm) - 1)):
        return StepFunction(norm)
    # overlapping input: refine and check agreement on every cell
    events: dict = {}
    for idx, (lo, hi, _) in enumerate(norm):
        events.setdefault(lo, []).append((1, idx))
        events.setdefault(hi, []).append((-1, idx))
    active: Counter = Counter()
    out = []
    xs = sorted(events)
    for x, nxt in zip(xs, xs[1:] + [None]):
        for kind, idx in events[x]:
            active[idx] += kind
            if active[idx] == 0:
                del active[idx]
        if nxt is None or not active:
            continue
        vals = [norm[i][2] for i in active]
        v0 = vals[0]
        if any(not close(v, v0) for v in vals[1:]):
            raise ValueError(f"overlapping pieces disagree on [{x}, {nxt})")
        out.append((x, nxt, v0))
    return StepFunction(out)


def chi(lo, hi, value=1) -> StepFunction:
    """``value * chi[lo, hi)``."""
    return make([(lo, hi, value)], approx=isinstance(value, (float, complex)))


def translate(f: StepFunction, s) -> StepFunction:
    """``T_s f (t) = f(t - s)``."""
    s = Fraction(s)
    return StepFunction([(lo + s, hi + s, v) for lo, hi, v in f.pieces])


def dilate(f: StepFunction, r) -> StepFunction:
    """``t -> f(t / r)``, stretching breakpoints by ``r > 0``."""
    r = Fraction(r)
    if r <= 0:
        raise ValueError("dilation factor must be positive")
    return StepFunction([(lo * r, hi * r, v) for lo, hi, v in f.pieces])


def _refine(f: StepFunction, g: StepFunction):
    """Yield ``(lo, hi, f_value, g_value)`` on the common refinement of both supports."""
    pts = sorted(set(f.breakpoints()) | set(g.breakpoints()))
    zf = Fraction(0) if f.exact else 0.0
    zg = Fraction(0) if g.exact else 0.0
    fp, gp = f.pieces, g.pieces
    i = j = 0
    for lo, hi in zip(pts, pts[1:]):
        while i < len(fp) and fp[i][1] <= lo:
            i += 1
        while j < len(gp) and gp[j][1] <= lo:
            j += 1
        fv = fp[i][2] if i < len(fp) and fp[i][0] <= lo else zf
        gv = gp[j][2] if j < len(gp) and gp[j][0] <= lo else zg
        yield lo, hi, fv, gv


def add(f: StepFunction, g: StepFunction) -> StepFunction:
    _mode_check(f, g)
    return StepFunction([(lo, hi, u + v) for lo, hi, u, v in _refine(f, g)])


def mul(f: StepFunction, g: StepFunction) -> StepFunction:
    _mode_check(f, g)
    out = []
    fp, gp = f.pieces, g.pieces
    i = j = 0
    while i < len(fp) and j < len(gp):
        lo = max(fp[i][0], gp[j][0])
        hi = min(fp[i][1], gp[j][1])
        if lo < hi:
            out.append((lo, hi, fp[i][2] * gp[j][2]))
        if fp[i][1] <= gp[j][1]:
            i += 1
        else:
            j += 1
    return StepFunction(out)


def conj(f: StepFunction) -> StepFunction:
    return StepFunction([(lo, hi, v.conjugate()) for lo, hi, v in f.pieces])


def scale(f: StepFunction, c) -> StepFunction:
    if isinstance(c, (int, str)):
        c = parse_rational(c) if isinstance(c, str) else Fraction(c)
    if f.pieces and is_exact(c) != f.exact and isinstance(c, (float, complex)):
        warnings.warn(
            "scaling an exact step function by a float; result is approximate",
            MixedModeWarning,
            stacklevel=2,
        )
    return StepFunction([(lo, hi, c * v) for lo, hi, v in f.pieces])


def norm_sq(f: StepFunction):
    """``integral |f|^2``."""
    total = Fraction(0) if f.exact else 0.0
    for lo, hi, v in f.pieces:
        total += (hi - lo) * abs2(v) if f.exact else float(hi - lo) * abs2(v)
    return total


def integral(f: StepFunction):
    total = Fraction(0) if f.exact else 0.0
    for lo, hi, v in f.pieces:
        total += (hi - lo) * v if f.exact else float(hi - lo) * v
    return total


def inner(f: StepFunction, g: StepFunction):
    """``<f, g> = integral f * conj(g)``."""
    return integral(mul(f, conj(g)))


class PeriodicStepFunction:
    """A ``period``-periodic step function stored by its cell on ``[0, period)``."""

    __slots__ = ("period", "cell")

    def __init__(self, period, cell: StepFunction):
        period = Fraction(period)
        if period <= 0:
            raise ValueError("period must be positive")
        sup = cell.support()
        if sup is not None and (sup[0] < 0 or sup[1] > period):
            raise ValueError("cell must be supported in [0, period)")
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "cell", cell)

    def __setattr__(self, name, value):
        raise AttributeError("PeriodicStepFunction is immutable")

    @classmethod
    def from_cuts(cls, period, cuts: Sequence, values: Sequence) -> "PeriodicStepFunction":
        """From a partition ``cuts[0]=0 < ... < cuts[-1]=period`` and per-cell values."""
        return cls(period, StepFunction(list(zip(cuts, cuts[1:], values))))

    @classmethod
    def constant(cls, period, value) -> "PeriodicStepFunction":
        return cls(period, StepFunction([(Fraction(0), Fraction(period), value)]))

    @property
    def exact(self) -> bool:
        return self.cell.exact

    @property
    def is_zero(self) -> bool:
        return self.cell.is_zero

    def cells(self) -> list:
        """Full partition of ``[0, period)`` as ``(lo, hi, value)``, gaps included as zero."""
        zero = Fraction(0) if self.exact else 0.0
        out, x = [], Fraction(0)
        for lo, hi, v in self.cell.pieces:
            if lo > x:
                out.append((x, lo, zero))
            out.append((lo, hi, v))
            x = hi
        if x < self.period:
            out.append((x, self.period, zero))
        return out

    def __call__(self, t):
        t = Fraction(t) if not isinstance(t, float) else t
        p = self.period
        r = t - p * math.floor(t / p)
        return self.cell(r)

    def _check(self, other):
        if other.period != self.period:
            raise ValueError("periods differ")

    def __add__(self, other):
        self._check(other)
        return PeriodicStepFunction(self.period, add(self.cell, other.cell))

    def __sub__(self, other):
        self._check(other)
        return PeriodicStepFunction(self.period, add(self.cell, scale(other.cell, -1)))

    def __mul__(self, other):
        if isinstance(other, PeriodicStepFunction):
            self._check(other)
            return PeriodicStepFunction(self.period, mul(self.cell, other.cell))
        return PeriodicStepFunction(self.period, scale(self.cell, other))

    __rmul__ = __mul__

    def __neg__(self):
        return PeriodicStepFunction(self.period, scale(self.cell, -1))

    def __eq__(self, other):
        if not isinstance(other, PeriodicStepFunction):
            return NotImplemented
        return self.period == other.period and self.cell == other.cell

    def __hash__(self):
        return hash((self.period, self.cell))

    def __reduce__(self):
        return PeriodicStepFunction, (self.period, self.cell)

    def __repr__(self):
        return f"PeriodicStepFunction(period={self.period}, cell={self.cell!r})"

    def conj(self) -> "PeriodicStepFunction":
        return PeriodicStepFunction(self.period, conj(self.cell))

    def abs(self) -> "PeriodicStepFunction":
        return PeriodicStepFunction(self.period, self.cell.abs())

    def abs2(self) -> "PeriodicStepFunction":
        return PeriodicStepFunction(self.period, self.cell.map(abs2))

    def map(self, fn) -> "PeriodicStepFunction":
        """Apply ``fn`` cellwise; ``fn(0)`` must be 0 (gaps stay gaps)."""
        return PeriodicStepFunction(self.period, self.cell.map(fn))

    def shifted(self, s) -> "PeriodicStepFunction":
        """``t -> self(t - s)``."""
        p = self.period
        s = Fraction(s) % p
        if s == 0:
            return self
        return PeriodicStepFunction(p, self.unroll(-s, p - s).translate(s))

    def unroll(self, lo, hi) -> StepFunction:
        """The restriction of the periodic function to ``[lo, hi)`` as a compact step function."""
        lo, hi = Fraction(lo), Fraction(hi)
        if hi <= lo or self.is_zero:
            return StepFunction(())
        p = self.period
        out = []
        k = math.floor(lo / p)
        while k * p < hi:
            base = k * p
            for clo, chi_, v in self.cell.pieces:
                a, b = max(clo + base, lo), min(chi_ + base, hi)
                if a < b:
                    out.append((a, b, v))
            k += 1
        return StepFunction(out)

    def multiply(self, f: StepFunction) -> StepFunction:
        """Pointwise product with a compactly supported step function."""
        sup = f.support()
        if sup is None:
            return f
        return mul(self.unroll(*sup), f)

    def integral(self):
        """Integral over one period."""
        return integral(self.cell)

    def _real_values(self):
        vals = [v for _, _, v in self.cells()]
        for v in vals:
            if isinstance(v, complex) and abs(v.imag) > 0:
                raise ValueError("ordering requested on a complex-valued function")
            if isinstance(v, QComplex):
                raise ValueError("ordering requested on a complex-valued function")
        return [v.real if isinstance(v, complex) else v for v in vals]

    def ess_inf(self):
        return min(self._real_values())

    def ess_sup(self):
        return max(self._real_values())

    def to_json(self) -> dict:
        return {"period": fmt_rational(self.period), "cell": self.cell.to_json()}
