"""Scalar field for step-function values.

Exact mode uses :class:`fractions.Fraction` (and :class:`QComplex` for
complex rationals); approx mode uses Python ``float``/``complex``.  The mode
of a value is read off its type, so no wrapper object is needed.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

__all__ = [
    "QComplex",
    "IncommensurableError",
    "get_tolerance",
    "set_tolerance",
    "is_exact",
    "is_zero",
    "close",
    "abs2",
    "absval",
    "to_rational",
    "to_scalar",
    "sqrt_scalar",
    "fmt_rational",
    "parse_rational",
]

_EPS = 1e-12


class IncommensurableError(ValueError):
    """Raised when an exact routine receives data it cannot place on a rational grid."""


def get_tolerance() -> float:
    return _EPS


def set_tolerance(eps: float) -> float:
    """Set the approx-mode equality tolerance; returns the previous value."""
    global _EPS
    if not eps > 0:
        raise ValueError("tolerance must be positive")
    old, _EPS = _EPS, float(eps)
    return old


class QComplex:
    """Exact complex rational ``re + i*im``.

    Arithmetic with ``int``/``Fraction`` stays exact, arithmetic with
    ``float``/``complex`` degrades to ``complex``.  Results with zero
    imaginary part collapse back to ``Fraction``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def make(re, im):
        im = Fraction(im)
        if im == 0:
            return Fraction(re)
        return QComplex(re, im)

    @staticmethod
    def _parts(x):
        if isinstance(x, QComplex):
            return x.re, x.im
        if isinstance(x, (int, Fraction)):
            return Fraction(x), Fraction(0)
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return complex(self) + other
        return QComplex.make(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __neg__(self):
        return QComplex(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return complex(self) * other
        a, b = self.re, self.im
        c, d = p
        return QComplex.make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return complex(self) / other
        c, d = p
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("QComplex division by zero")
        return self * QComplex.make(c / den, -d / den)

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QComplex(other, 0) / self
        return other / complex(self)

    def conjugate(self):
        return QComplex(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            try:
                return complex(self) == other
            except TypeError:
                return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"QComplex({self.re}, {self.im})"

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im


def is_exact(v) -> bool:
    return isinstance(v, (int, Fraction, QComplex))


def is_zero(v) -> bool:
    if is_exact(v):
        return v == 0
    return abs(v) <= _EPS


def close(u, v) -> bool:
    if is_exact(u) and is_exact(v):
        return u == v
    return abs(complex(u) - complex(v)) <= _EPS


def abs2(v):
    """``|v|**2``, exact whenever ``v`` is exact."""
    if isinstance(v, QComplex):
        return v.re * v.re + v.im * v.im
    if isinstance(v, complex):
        return v.real * v.real + v.imag * v.imag
    return v * v


def absval(v):
    """``|v|``; exact for real rationals, float otherwise."""
    if isinstance(v, (int, Fraction)):
        return abs(Fraction(v))
    if isinstance(v, QComplex):
        return math.sqrt(abs2(v))
    return abs(v)


def parse_rational(s) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction.  Floats are rejected."""
    if isinstance(s, bool):
        raise TypeError("bool is not a rational literal")
    if isinstance(s, (int, Fraction)):
        return Fraction(s)
    if isinstance(s, float):
        raise IncommensurableError(
            f"float {s!r} given where an exact rational is required; "
            "pass 'p/q' or enable approx mode"
        )
    if isinstance(s, str):
        txt = s.strip()
        if any(ch in txt for ch in ".eE") and "/" not in txt:
            raise IncommensurableError(
                f"decimal literal {s!r} given where an exact rational is required; "
                "pass 'p/q' or enable approx mode"
            )
        return Fraction(txt)
    raise TypeError(f"cannot read {s!r} as a rational")


def to_rational(x, approx: bool = False) -> Fraction:
    """Coerce a breakpoint/parameter to Fraction.

    With ``approx=True`` floats are accepted and converted through their
    shortest decimal repr (``0.6 -> 3/5``).
    """
    if isinstance(x, float) or (isinstance(x, str) and approx):
        if not approx:
            parse_rational(x)
        if isinstance(x, float):
            if not math.isfinite(x):
                raise ValueError(f"non-finite value {x!r}")
            return Fraction(repr(x))
        return Fraction(x.strip())
    if isinstance(x, Rational):
        return Fraction(x)
    return parse_rational(x)


def to_scalar(x, approx: bool = False):
    """Coerce a function value.  Exact types pass through; floats need ``approx``."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, QComplex):
        return QComplex.make(x.re, x.im)
    if isinstance(x, (float, complex)):
        if not approx:
            raise IncommensurableError(
                f"float value {x!r} in exact mode; pass approx=True"
            )
        return x
    if isinstance(x, str):
        return parse_rational(x) if not approx else _float_or_fraction(x)
    if isinstance(x, (tuple, list)) and len(x) == 2:
        re, im = (to_scalar(x[0], approx), to_scalar(x[1], approx))
        if is_exact(re) and is_exact(im):
            return QComplex.make(re, im)
        return complex(re) + 1j * complex(im)
    raise TypeError(f"cannot read {x!r} as a scalar")


def _float_or_fraction(s: str):
    try:
        return parse_rational(s)
    except IncommensurableError:
        return float(s)


def sqrt_scalar(q):
    """Square root of a nonnegative scalar, exact when ``q`` is a rational square."""
    if isinstance(q, (int, Fraction)):
        q = Fraction(q)
        if q < 0:
            raise ValueError("negative argument")
        n, d = q.numerator, q.denominator
        rn, rd = math.isqrt(n), math.isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return math.sqrt(n) / math.sqrt(d)
    return math.sqrt(q)


def fmt_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
