import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from gaborstep.conditions import cc_bounds, g0_verdict, Status
from gaborstep.fundamental import (WindowFamily, apply_adjoint, apply_frame_operator, apply_preframe,
                                   apply_via_walnut, build_bgp, e_basis,
                                   fundamental_decomposition_apply, sqrt_inverse_check, walnut_band,
                                   walnut_entry)
from gaborstep.gabor import GaborSystem, bracket, cross_bracket, frame_energy
from gaborstep.stepfn import PeriodicStepFunction, StepFunction, chi, inner, make, translate
from strategies import random_step, step_functions

EX45 = chi(0, 2) - chi(2, 3)
HALF = Fraction(1, 2)
PAIRS = [(HALF, Fraction(1)), (Fraction(1), Fraction(1)), (Fraction(3, 4), Fraction(1)), (HALF, Fraction(2)),
         (Fraction(3, 4), Fraction(4, 3)), (Fraction(1), HALF)]


def test_e_basis_orthonormal():
    b = Fraction(3, 2)
    for j in range(-2, 3):
        for k in range(-2, 3):
            br = bracket(e_basis(j, b), e_basis(k, b), 1 / b)
            assert br == (PeriodicStepFunction.constant(1 / b, 1) if j == k else PeriodicStepFunction(1 / b, StepFunction(())))


@given(step_functions())
def test_identity_for_orthonormal_generator(f):
    sys_ = GaborSystem(chi(0, 1), 1, 1)
    assert apply_frame_operator(sys_, f) == f
    assert apply_preframe(sys_, apply_adjoint(sys_, f)) == f


@pytest.mark.parametrize("a", [HALF, Fraction(3, 4), 1])
def test_tight_frame_is_identity(a):
    sys_ = GaborSystem(chi(0, a), a, 1)
    rng = random.Random(1)
    for _ in range(10):
        f = random_step(rng, -2, 2, 8)
        assert apply_frame_operator(sys_, f) == f


def test_quadratic_form_is_energy_and_respects_bounds():
    sys_ = GaborSystem(EX45, 1, 1)
    f = chi(0, 1)
    q = inner(apply_frame_operator(sys_, f), f)
    assert q == frame_energy(f, sys_) and 1 <= q <= 5
    rng = random.Random(4)
    for a, b in PAIRS:
        g = random_step(rng, 0, 3, 4)
        s = GaborSystem(g, a, b)
        for _ in range(3):
            f = random_step(rng, -1, 3, 6)
            assert inner(apply_frame_operator(s, f), f) == frame_energy(f, s)


def test_zero_input():
    sys_ = GaborSystem(EX45, 1, 1)
    z = StepFunction(())
    for op in (apply_frame_operator, apply_adjoint, apply_preframe, apply_via_walnut,
               fundamental_decomposition_apply):
        assert op(sys_, z).is_zero


@pytest.mark.parametrize("b", [Fraction(1), Fraction(1, 4), Fraction(4)])
def test_adjoint_bracket_identity(b):
    rng = random.Random(int(b * 4))
    g = random_step(rng, 0, 2, 4)
    a = Fraction(1, 2)
    sys_ = GaborSystem(g, a, b)
    h = apply_adjoint(sys_, g)
    lhs = bracket(h, h, 1 / b)
    rhs = PeriodicStepFunction(1 / b, StepFunction(()))
    lo, hi = g.support()
    n = math.ceil((hi - lo) / a)
    for k in range(-n, n + 1):
        rhs = rhs + cross_bracket(g, g, k * a, 1 / b).abs2()
    assert lhs == rhs * (1 / b)


@given(step_functions(lo=0, hi=3), step_functions(lo=-2, hi=2))
def test_preframe_and_adjoint_compose_to_frame_operator(g, f):
    sys_ = GaborSystem(g, HALF, 1)
    assert apply_preframe(sys_, apply_adjoint(sys_, f)) == apply_frame_operator(sys_, f)


@given(step_functions(lo=-2, hi=2), step_functions(lo=-2, hi=2), step_functions(lo=0, hi=2))
def test_adjoint_is_adjoint(f, h, g):
    sys_ = GaborSystem(g, HALF, 1)
    assert inner(apply_adjoint(sys_, f), h) == inner(f, apply_preframe(sys_, h))


def test_walnut_examples():
    sys_ = GaborSystem(chi(0, 1), 1, 1)
    for j in range(-2, 3):
        w = walnut_entry(sys_, j, 0)
        assert w == (PeriodicStepFunction.constant(1, 1) if j == 0 else PeriodicStepFunction(1, StepFunction(())))
    sys_ = GaborSystem(EX45, 1, 1)
    for k in (-1, 0, 3):
        assert walnut_entry(sys_, k, k) == PeriodicStepFunction.constant(1, 3)
        assert walnut_entry(sys_, k + 2, k) == walnut_entry(sys_, k - 2, k) == PeriodicStepFunction.constant(1, -1)
        assert walnut_entry(sys_, k + 1, k).is_zero and walnut_entry(sys_, k + 5, k).is_zero
    band = walnut_band(sys_, 0)
    assert (band["band_low"], band["band_high"]) == (-2, 2)
    assert set(band["entries"]) == {"-2", "-1", "0", "1", "2"}


@settings(max_examples=30)
@given(step_functions(lo=0, hi=3), st.sampled_from(PAIRS))
def test_walnut_band_width(g, ab):
    a, b = (Fraction(x) for x in ab)
    sys_ = GaborSystem(g, a, b)
    lo, hi = g.support()
    width = b * (hi - lo)
    for d in range(-8, 9):
        if abs(d) > width:
            assert walnut_entry(sys_, d, 0).is_zero


def test_walnut_apply_matches_frame_operator_example():
    sys_ = GaborSystem(EX45, 1, 1)
    assert apply_via_walnut(sys_, chi(0, 1)) == apply_frame_operator(sys_, chi(0, 1))


def test_fundamental_decomposition_local_term():
    # f inside [0, a) only sees the k = 0 term
    sys_ = GaborSystem(EX45, HALF, 1)
    f = chi(0, Fraction(1, 4))
    assert fundamental_decomposition_apply(sys_, f) == apply_frame_operator(sys_, f)
    with pytest.raises(ValueError):
        fundamental_decomposition_apply(GaborSystem(EX45, 2, 1), f)


@pytest.mark.parametrize("seed", range(10))
def test_three_representations_agree(seed):
    rng = random.Random(100 + seed)
    a, b = PAIRS[seed % len(PAIRS)]
    g = random_step(rng, 0, 4, 4)
    f = random_step(rng, -2, 3, 6)
    sys_ = GaborSystem(g, a, b)
    s1 = apply_frame_operator(sys_, f)
    assert apply_via_walnut(sys_, f) == s1
    if a * b <= 1:
        assert fundamental_decomposition_apply(sys_, f) == s1


@pytest.mark.parametrize("seed", range(5))
def test_frame_operator_matches_pointwise_oracle(seed):
    rng = random.Random(seed)
    a, b = PAIRS[seed]
    g, f = random_step(rng, 0, 3, 4), random_step(rng, -1, 2, 6)
    s = apply_frame_operator(GaborSystem(g, a, b), f)
    ts = [float(Fraction(2 * i + 1, 48)) - 3 for i in range(48 * 7)]
    expect = oracles.frame_operator_pointwise(f, g, a, b, ts)
    assert [complex(s(Fraction(t))) for t in ts] == pytest.approx(expect, abs=1e-12)


@given(step_functions(lo=0, hi=2), step_functions(lo=-2, hi=2), step_functions(lo=0, hi=1, den=3))
def test_frame_operator_is_factorable(g, f, phi_cell):
    b = Fraction(1)
    phi = PeriodicStepFunction(1 / b, phi_cell)
    sys_ = GaborSystem(g, HALF, b)
    lhs = apply_frame_operator(sys_, phi.multiply(f))
    rhs = apply_frame_operator(sys_, f)
    assert lhs == phi.multiply(rhs)


@given(step_functions(lo=-2, hi=2), step_functions(lo=-2, hi=2), step_functions(lo=0, hi=1, den=3),
       st.integers(-3, 3), st.sampled_from([HALF, Fraction(1), Fraction(3, 2)]))
def test_p_inner_product_identities(f, g, phi_cell, k, p):
    phi = PeriodicStepFunction(1, phi_cell) if p == 1 else PeriodicStepFunction.constant(p, 2)
    # periodicity and the expansion over the orthonormal cells e_k
    br = bracket(f, g, p)
    assert br.shifted(p) == br
    lo, hi = f.support()
    parts = StepFunction(())
    for j in range(math.floor(lo / p), math.ceil(hi / p)):
        e = chi(j * p, (j + 1) * p)
        parts = parts + bracket(f, e, p).multiply(e)
    assert parts == f
    # <e_0, f> e_0 = conj(f) e_0
    e0 = chi(0, p)
    assert bracket(e0, f, p).multiply(e0) == periodize_conj(f, p).multiply(e0)
    # product and shift identities
    assert bracket(phi.multiply(f), g, p) == phi * br
    assert bracket(translate(f, k * p), g, p) == bracket(f, translate(g, -k * p), p)
    assert bracket(translate(f, k * p), translate(g, k * p), p) == br
    s = Fraction(k, 3)
    assert bracket(translate(f, s), translate(g, s), p) == br.shifted(s)


def periodize_conj(f, p):
    return PeriodicStepFunction(p, StepFunction(())) + bracket(f, chi(0, p), p).conj()


@pytest.mark.parametrize("seed", range(6))
def test_compressed_operator_norm_bound(seed):
    rng = random.Random(seed)
    while True:
        g = random_step(rng, 0, 2, 4, pieces=(1, 3))
        a, b = PAIRS[seed]
        rep = cc_bounds(GaborSystem(g, a, b))
        if rep.verdict == "FrameCertified":
            break
    sys_ = GaborSystem(g, a, b)
    for _ in range(5):
        f = random_step(rng, -2, 2, 6)
        sf = apply_frame_operator(sys_, f)
        diff = bracket(f, f, 1 / b) * (rep.frame_upper ** 2) - bracket(sf, sf, 1 / b)
        assert diff.ess_inf() >= 0


def test_window_families():
    beta, gamma, psi = build_bgp(Fraction(3, 4), 1)
    assert beta.member(2) == translate(beta.generator, Fraction(3, 2))
    assert WindowFamily("e", Fraction(3, 4), 1, chi(0, 1)).member(2) == chi(2, 3)
    assert WindowFamily("alpha", Fraction(3, 4), 1, chi(0, 1)).member(2) == chi(Fraction(3, 2), Fraction(5, 2))
    assert gamma.generator(Fraction(1, 8)) == pytest.approx(2 ** -0.5)
    assert psi.generator(Fraction(7, 8)) == pytest.approx(2 ** -0.75)
    assert gamma.generator(HALF) == 1.0
    with pytest.raises(ValueError):
        build_bgp(Fraction(1, 4), 1)
    with pytest.raises(ValueError):
        build_bgp(2, 1)


def test_beta_bounds_via_g0():
    beta, _, _ = build_bgp(Fraction(3, 4), 1)
    v = g0_verdict(GaborSystem(chi(0, 1), Fraction(3, 4), 1))
    assert v.status is Status.FRAME and v.bounds == (1, 2)


def test_degenerate_overlap():
    beta, gamma, psi = build_bgp(1, 1)
    assert beta.generator == gamma.generator == psi.generator
    rep = sqrt_inverse_check(1, 1, trials=5)
    assert rep["max_err_identity"] <= 1e-12


@pytest.mark.parametrize("a,b", [(Fraction(3, 4), 1), (0.6, 1), (HALF, Fraction(3, 2))])
def test_sqrt_inverse(a, b):
    rep = sqrt_inverse_check(a, b, trials=30, seed=0)
    assert rep["max_err_beta_gamma"] <= 1e-12
    assert rep["max_err_identity"] <= 1e-10
    assert rep["gamma_tight_constant"] == pytest.approx([1.0, 1.0], abs=1e-12)
