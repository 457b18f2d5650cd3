import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from gaborstep.conditions import Status
from gaborstep.frameset import (ExponentSet, circle_range, exact_circle_zero, frame_set_window,
                                is_frame_set)
from gaborstep.gabor import GaborSystem, energy_ratio
from gaborstep.stepfn import chi


def test_exponent_set_validation():
    with pytest.raises(ValueError):
        ExponentSet(())
    with pytest.raises(ValueError):
        ExponentSet((0, 2, 1))
    e = ExponentSet.parse("-2,0,3")
    assert e.normalized().exps == (0, 2, 5)
    assert e.shift(2).exps == (0, 2, 5)
    assert e.differences() == {2: 1, 3: 1, 5: 1}


def test_decisions():
    assert is_frame_set(ExponentSet((0, 1))).status is Status.NOT_FRAME
    assert is_frame_set(ExponentSet((0, 1, 2))).status is Status.NOT_FRAME
    v = is_frame_set(ExponentSet((0,)))
    assert v.status is Status.FRAME and v.bounds == (1, 1)
    v = is_frame_set(ExponentSet((0, 1, 3)))
    assert v.status is Status.FRAME and v.bounds[1] == 9


def test_symmetric_gap_free_sets():
    # 1 + z + ... + z^{k-1} vanishes at the k-th roots of unity
    for k in range(2, 9):
        assert exact_circle_zero(ExponentSet(range(k)))


def test_every_small_set_agrees_with_numpy_roots():
    for r in range(1, 7):
        for rest in itertools.combinations(range(1, 7), r - 1):
            exps = (0,) + rest
            assert exact_circle_zero(ExponentSet(exps)) == oracles.circle_roots_on_unit(exps), exps


def test_min_modulus_enclosure_0_1_3():
    rng = circle_range(ExponentSet((0, 1, 3)))
    lo, hi = rng.lo
    assert hi - lo <= 1e-9
    best, slack = oracles.circle_min_modulus((0, 1, 3), npts=10**6)
    assert lo <= best + 1e-12
    assert abs(lo - best) <= 1e-6 + slack


@settings(max_examples=25)
@given(st.sets(st.integers(-6, 10), min_size=2, max_size=6))
def test_enclosure_contains_grid_minimum(s):
    e = ExponentSet(sorted(s))
    rng = circle_range(e)
    best, slack = oracles.circle_min_modulus(e.exps, npts=20000, chunk=20000)
    assert rng.lo[0] <= best + 1e-12
    assert rng.lo[0] >= best - slack - 1e-9
    assert rng.hi == (len(s), len(s))
    if rng.certificate["method"] == "branch-and-bound":
        assert rng.width <= 1e-9 or not rng.certificate["width_met"]


@given(st.sets(st.integers(0, 8), min_size=1, max_size=5), st.integers(-5, 5))
def test_shift_invariance(s, c):
    e = ExponentSet(sorted(s))
    assert exact_circle_zero(e) == exact_circle_zero(e.shift(c))
    assert circle_range(e).lo == circle_range(e.shift(c)).lo


def test_literal_unsquared_bounds_are_violated():
    # chi_F for F = {0,1,3} has energy ratio 5, above max |p| = 3 but inside max |p|^2 = 9
    e = ExponentSet((0, 1, 3))
    w = frame_set_window(e)
    r = energy_ratio(w, GaborSystem(w, 1, 1))
    assert r == 5
    a, b = circle_range(e).frame_bounds()
    assert a <= r <= b
    assert r > float(circle_range(e).hi[1])


def test_certificate_serializes():
    js = json.loads(json.dumps(circle_range(ExponentSet((0, 2, 3))).to_json()))
    assert js["certificate"]["method"] == "branch-and-bound"
    assert js["certificate"]["lipschitz"] == 3.0
    js = circle_range(ExponentSet((0, 1, 2))).to_json()
    assert js["certificate"]["method"] == "exact-sturm" and js["min_enclosure"] == [0.0, 0.0]


def test_tolerance_validation():
    with pytest.raises(ValueError):
        circle_range(ExponentSet((0, 1)), tol=0)


def test_window():
    assert frame_set_window(ExponentSet((0, 2))) == chi(0, 1) + chi(2, 3)
