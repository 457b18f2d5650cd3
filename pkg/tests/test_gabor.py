import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from gaborstep.frameset import ExponentSet, circle_range
from gaborstep.gabor import (GaborSystem, bracket, energy_ratio, frame_energy, gk_table,
                             harmonic_gk_limit, harmonic_window, periodize, translate_energy)
from gaborstep.stepfn import PeriodicStepFunction, StepFunction, chi, dilate, make, norm_sq, translate
from gaborstep.witnesses import case2_witness
from strategies import random_step, step_functions

EX45 = chi(0, 2) - chi(2, 3)


def const(p, v):
    return PeriodicStepFunction.constant(p, Fraction(v))


def test_periodize_examples():
    assert periodize(chi(0, 1) - chi(1, 2), 1).is_zero
    assert periodize(chi(0, 2), 1) == const(1, 2)
    assert periodize(chi(0, Fraction(3, 2)), 1) == PeriodicStepFunction(
        1, make([(0, Fraction(1, 2), 2), (Fraction(1, 2), 1, 1)]))
    with pytest.raises(ValueError):
        periodize(chi(0, 1), 0)


def test_bracket_examples():
    b = Fraction(3, 2)
    e0, e1 = chi(0, 1 / b), chi(1 / b, 2 / b)
    assert bracket(e0, e0, 1 / b) == const(1 / b, 1)
    # disjoint supports in one cell, but e1 folds onto e0 modulo 1/b: the bracket sees both
    assert bracket(e0, chi(Fraction(1, 3), Fraction(2, 3)) - chi(Fraction(1, 3), Fraction(2, 3)), 1 / b).is_zero
    assert bracket(EX45, EX45, 1) == const(1, 3)
    assert bracket(e1, e1, 1 / b) == const(1 / b, 1)


def test_gk_example_45():
    t = gk_table(GaborSystem(EX45, 1, 1))
    assert t.krange == [-2, 0, 2]
    assert t[0] == const(1, 3)
    assert t[2] == t[-2] == const(1, -1)
    assert t[1].is_zero and t[-1].is_zero and t[5].is_zero


def test_gk_trivial_and_derived():
    t = gk_table(GaborSystem(chi(0, 1), 1, 1))
    assert t.krange == [0] and t[0] == const(1, 1)
    t = gk_table(GaborSystem(chi(0, 3), 1, 1))
    assert {k: t[k] for k in t.krange} == {k: const(1, 3 - abs(k)) for k in range(-2, 3)}


@settings(max_examples=30)
@given(step_functions(lo=0, hi=3), st.sampled_from([(1, 1), (Fraction(1, 2), 1), (Fraction(3, 4), Fraction(2, 3)),
                                                  (1, Fraction(1, 2))]))
def test_gk_matches_pointwise_oracle(g, ab):
    a, b = (Fraction(x) for x in ab)
    table = gk_table(GaborSystem(g, a, b))
    samples = [a * (Fraction(2 * i + 1, 2 * 48)) for i in range(48)]
    for k in range(-8, 9):
        expect = oracles.gk_sampled(g, a, b, k, [float(s) for s in samples])
        got = [complex(table[k](s)) for s in samples]
        assert got == pytest.approx(expect, abs=1e-12)


@given(step_functions(lo=0, hi=3), st.sampled_from([(1, 1), (Fraction(1, 2), Fraction(3, 2)), (Fraction(2, 3), 1)]))
def test_gk_conjugate_symmetry(g, ab):
    a, b = (Fraction(x) for x in ab)
    t = gk_table(GaborSystem(g, a, b))
    kmax = max(abs(k) for k in t.krange)
    assert kmax <= b * (g.support()[1] - g.support()[0])
    for k in range(-kmax, kmax + 1):
        assert t[-k] == t[k].shifted(-k / b).conj()


def test_energy_examples():
    f = chi(0, 1) - chi(1, 2)
    assert frame_energy(f, GaborSystem(chi(0, 2), 1, 1)) == 2
    sys3 = GaborSystem(chi(0, 3), 1, 1)
    for n in (2, 5, 9):
        w = case2_witness(1, n)
        assert frame_energy(w, sys3) == Fraction(5, 2)
        assert energy_ratio(w, sys3) == Fraction(5, 3 * n)
    r = energy_ratio(chi(0, 1), GaborSystem(EX45, 1, 1))
    assert 1 <= r <= 5
    with pytest.raises(ValueError):
        energy_ratio(StepFunction(()), sys3)


@given(step_functions())
def test_orthonormal_basis_energy(f):
    assert frame_energy(f, GaborSystem(chi(0, 1), 1, 1)) == norm_sq(f)


@pytest.mark.parametrize("seed", range(20))
def test_energy_matches_parseval_double_sum(seed):
    rng = random.Random(seed)
    g = random_step(rng, 0, 3, 4)
    f = random_step(rng, -2, 2, 3)
    a = rng.choice([Fraction(1, 2), Fraction(3, 4), Fraction(1), Fraction(4, 3)])
    b = rng.choice([Fraction(1, 2), Fraction(2, 3), Fraction(1)])
    exact = float(frame_energy(f, GaborSystem(g, a, b)))
    trunc, tail = oracles.energy_double_sum(f, g, a, b, mmax=3000)
    assert trunc <= exact + 1e-9 * max(1, exact)
    assert exact - trunc <= tail + 1e-9 * max(1, exact)


@given(step_functions(lo=-2, hi=2), step_functions(lo=0, hi=2),
       st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(3, 2)]),
       st.sampled_from([Fraction(1, 2), Fraction(2, 3), Fraction(2)]))
def test_dilation_reduces_to_unit_modulation(f, g, a, b):
    # the unitary dilation carries a 1/sqrt(b) on g; the energy is quadratic in g, hence the factor b
    lhs = energy_ratio(f, GaborSystem(g, a, b))
    rhs = energy_ratio(dilate(f, b), GaborSystem(dilate(g, b), a * b, 1))
    assert b * lhs == rhs


@pytest.mark.parametrize("a,b", [(1, 1), (Fraction(1, 2), 1), (Fraction(3, 4), 1), (Fraction(1, 2), 2)])
def test_tight_frame_energy(a, b):
    # g = sqrt(b) chi[0, a); the energy is quadratic in g, so chi[0, a) must give ||f||^2 / b
    a, b = Fraction(a), Fraction(b)
    sys_ = GaborSystem(chi(0, a), a, b)
    rng = random.Random(7)
    for _ in range(10):
        f = random_step(rng, -2, 2, 8)
        assert b * frame_energy(f, sys_) == norm_sq(f)


def test_exact_and_approx_agree():
    rng = random.Random(3)
    for _ in range(10):
        g, f = random_step(rng, 0, 3, 4), random_step(rng, -1, 3, 6)
        e = frame_energy(f, GaborSystem(g, Fraction(3, 4), Fraction(2, 3)))
        ea = frame_energy(f.to_approx(), GaborSystem(g.to_approx(), 0.75, Fraction(2, 3), approx=True))
        assert isinstance(ea, float)
        assert ea == pytest.approx(float(e), rel=1e-12)


@given(step_functions(lo=0, hi=3))
def test_upper_bound_dominates_periodized_power(g):
    # the CC upper bound B satisfies sup_t sum_k |g(t - k/b)|^2 <= b B
    from gaborstep.conditions import cc_bounds
    for a, b in [(1, 1), (Fraction(1, 2), 2), (Fraction(1, 2), Fraction(1, 2))]:
        sys_ = GaborSystem(g, a, b)
        rep = cc_bounds(sys_)
        power = bracket(g, g, 1 / Fraction(b)).ess_sup()
        assert power <= Fraction(b) * rep.frame_upper


def test_upper_bound_needs_b_factor():
    # sqrt(b) chi[0, a) with a = 1/2, b = 2 is tight with B = 1 yet its 1/b-periodized power is 2 = bB
    b = Fraction(2)
    g = chi(0, Fraction(1, 2), 1)
    sys_ = GaborSystem(g, Fraction(1, 2), b)
    assert frame_energy(chi(0, 1), sys_) * b == norm_sq(chi(0, 1))
    assert bracket(g * 2, g, 1 / b).ess_sup() == 2


@pytest.mark.parametrize("exps", [(0, 1, 3), (0, 2, 3), (-1, 0, 4)])
def test_frame_set_energy_on_subspace(exps):
    e = ExponentSet(exps)
    rng = circle_range(e)
    lo, hi = rng.lo[0] ** 2, rng.hi[1] ** 2
    window = StepFunction([(Fraction(n), Fraction(n + 1), Fraction(1)) for n in exps])
    gen = random.Random(sum(exps))
    for _ in range(10):
        E = random_step(gen, 0, 1, 12, vals=(1, 1))
        E = make([(u, v, 1) for u, v, _ in E])
        f = StepFunction(())
        for n in exps:
            f = f + translate(random_step(gen, 0, 1, 12) * E, n) if not E.is_zero else f
        if f.is_zero:
            continue
        r = float(energy_ratio(f, GaborSystem(window, 1, 1)))
        assert lo - 1e-9 <= r <= float(hi) + 1e-9


def test_translate_energy_example():
    assert translate_energy(chi(0, 1), chi(0, 2), 1) == 2


def test_harmonic_window_closed_form():
    N = 64
    t = gk_table(GaborSystem(harmonic_window(N), 1, 1, approx=True))
    for k in range(1, N // 2 + 1):
        assert abs(t[k].ess_sup() - harmonic_gk_limit(k)) <= 2 / N
    with pytest.raises(ValueError):
        harmonic_window(1)
