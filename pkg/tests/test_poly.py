import cmath
import math
from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from gaborstep.poly import (chebyshev_t, circle_square_chebyshev, count_roots, degree, pdivmod, peval,
                            pgcd, pmul, poly, psub, reciprocal)

coeffs = st.lists(st.integers(-5, 5), min_size=1, max_size=7).map(poly)
X = sympy.Symbol("x")


def to_sympy(p):
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in p])) or [0], X)


@given(coeffs, coeffs.filter(lambda p: degree(p) >= 0))
def test_division_identity(p, d):
    q, r = pdivmod(p, d)
    assert psub(p, pmul(q, d)) == r
    assert degree(r) < degree(d)


@given(coeffs, coeffs)
def test_gcd_matches_sympy(p, q):
    if not p and not q:
        return
    g = pgcd(p, q)
    ref = sympy.gcd(to_sympy(p), to_sympy(q)).monic()
    assert to_sympy(g).monic() == ref


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=5))
def test_sturm_count_matches_sympy(roots):
    p = poly([1])
    for r in roots:
        p = pmul(p, poly([-Fraction(r, 2), 1]))
    lo, hi = Fraction(-1), Fraction(1)
    expect = len({Fraction(r, 2) for r in roots if lo < Fraction(r, 2) <= hi})
    assert count_roots(p, lo, hi) == expect


def test_chebyshev():
    assert chebyshev_t(0) == (1,) and chebyshev_t(1) == (0, 1)
    for n in range(6):
        for x in (Fraction(-1), Fraction(1, 3), Fraction(1)):
            assert abs(float(peval(chebyshev_t(n), x)) - math.cos(n * math.acos(float(x)))) < 1e-12


def test_double_root_on_endpoint():
    p = pmul(poly([0, 1]), pmul(poly([1, 1]), poly([1, 1])))
    assert count_roots(p, -1, 1) == 1
    assert count_roots(p, -2, 1) == 2


def test_reciprocal():
    assert reciprocal(poly([1, 2, 3])) == poly([3, 2, 1])


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=6).filter(any), st.floats(0, 2 * math.pi))
def test_circle_square(cs, theta):
    p = poly(cs)
    q = circle_square_chebyshev(p)
    z = cmath.exp(1j * theta)
    val = abs(sum(float(c) * z**i for i, c in enumerate(p))) ** 2
    assert abs(float(peval(q, Fraction(math.cos(theta)))) - val) <= 1e-9 * (1 + val)
