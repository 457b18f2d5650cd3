"""Backend selection and integer-grid plumbing for the hot kernels.

The compiled extension (``_ckernels``) is used for approximate data when it
imports; exact data, and every case when ``GABORSTEP_PURE_PYTHON=1`` is set,
go through :mod:`gaborstep._pykernels`.
"""
from __future__ import annotations

import contextlib
import math
import os
from fractions import Fraction

from . import _pykernels
from .stepfn import PeriodicStepFunction, StepFunction

try:
    if os.environ.get("GABORSTEP_PURE_PYTHON"):
        raise ImportError("pure-Python backend forced by environment")
    from . import _ckernels
except ImportError:
    _ckernels = None

__all__ = ["BACKEND", "compiled_available", "use_backend", "grid_denominator",
           "to_grid", "fold", "cross_fold", "circle_extrema"]

_I64 = 2**62
_state = {"backend": "cython" if _ckernels is not None else "python"}


def compiled_available() -> bool:
    return _ckernels is not None


def __getattr__(name):
    if name == "BACKEND":
        return _state["backend"]
    raise AttributeError(name)


@contextlib.contextmanager
def use_backend(name: str):
    """Temporarily force ``"python"`` or ``"cython"``."""
    if name not in ("python", "cython"):
        raise ValueError(name)
    if name == "cython" and _ckernels is None:
        raise RuntimeError("compiled kernels are not built")
    old = _state["backend"]
    _state["backend"] = name
    try:
        yield
    finally:
        _state["backend"] = old


def grid_denominator(*items) -> int:
    """Least common denominator of rationals and step-function breakpoints."""
    den = 1
    for it in items:
        if isinstance(it, StepFunction):
            for lo, hi, _ in it.pieces:
                den = math.lcm(den, lo.denominator, hi.denominator)
        else:
            den = math.lcm(den, Fraction(it).denominator)
    return den


def to_grid(f: StepFunction, den: int):
    starts, ends, vals = [], [], []
    for lo, hi, v in f.pieces:
        starts.append(lo.numerator * (den // lo.denominator))
        ends.append(hi.numerator * (den // hi.denominator))
        vals.append(v)
    return starts, ends, vals


def _compiled(ints) -> bool:
    return _state["backend"] == "cython" and all(abs(x) < _I64 for x in ints)


def fold(starts, ends, vals, period: int):
    if _compiled([period] + starts[:1] + ends[-1:]):
        out = _ckernels.fold(list(starts), list(ends), list(vals), period)
        if out is not None:
            return out
    return _pykernels.fold(starts, ends, vals, period)


def cross_fold(f_grid, g_grid, shift: int, period: int):
    fs, fe, fv = f_grid
    gs, ge, gv = g_grid
    span = [period, shift] + fs[:1] + fe[-1:] + gs[:1] + ge[-1:]
    if _compiled(span + [abs(shift) + max(map(abs, span))]):
        out = _ckernels.cross_fold(list(fs), list(fe), list(fv), list(gs), list(ge), list(gv),
                                   shift, period)
        if out is not None:
            return out
    return _pykernels.cross_fold(fs, fe, fv, gs, ge, gv, shift, period)


def circle_extrema(exps, npts: int):
    if _state["backend"] == "cython":
        return _ckernels.circle_extrema(list(exps), npts)
    return _pykernels.circle_extrema(list(exps), npts)


def periodic_from_grid(cuts, cvals, den: int, period) -> PeriodicStepFunction:
    pieces = [
        (Fraction(lo, den), Fraction(hi, den), v)
        for lo, hi, v in zip(cuts, cuts[1:], cvals)
    ]
    return PeriodicStepFunction(period, StepFunction(pieces))
