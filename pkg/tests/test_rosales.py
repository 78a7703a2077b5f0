import random
from fractions import Fraction

import pytest

from nlsslab.rings import GR_I
from nlsslab.rosales import (ModeSet, SeriesFamily, WaveSum, phi_dagger_direct,
                             quadratic_gap_lhs, quadratic_gap_rhs)


def frac(rng, lo=-9, hi=9, den=7):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def distinct_fracs(rng, n, taken=()):
    out = []
    seen = set(taken)
    while len(out) < n:
        f = frac(rng)
        if f not in seen:
            seen.add(f)
            out.append(f)
    return out


def test_modeset_validation():
    with pytest.raises(ValueError):
        ModeSet(1, 0, [Fraction(1)], [Fraction(1), Fraction(2)])
    with pytest.raises(ValueError):
        ModeSet(1, 0, [Fraction(1), Fraction(1)], [Fraction(2)])
    with pytest.raises(ValueError):
        ModeSet(1, 0, [Fraction(1)], [])


def test_wavesum_calculus():
    ms = ModeSet(1, 0, [Fraction(3)], [Fraction(1)])
    f = SeriesFamily(ms).phi(0, 0)
    # each plane wave obeys the free equation i dt f + dxx f = 0
    assert (GR_I * f.dt() + f.dx().dx()).is_zero()
    assert f.conj().conj() == f
    g = f * f
    assert g.dx() == f.dx() * f + f * f.dx()


def test_quadratic_gap_identity_samples():
    rng = random.Random(31)
    for n in range(1, 6):
        for _ in range(8):
            ps = distinct_fracs(rng, n)
            qs = distinct_fracs(rng, n + 1, taken=ps)
            assert quadratic_gap_lhs(ps, qs) == quadratic_gap_rhs(ps, qs)


def test_quadratic_gap_frozen_values():
    # hand-checked anchor points
    assert quadratic_gap_lhs([2], [0, 1]) == Fraction(-4)
    assert quadratic_gap_rhs([2], [0, 1]) == Fraction(-4)
    assert quadratic_gap_lhs([5, 7], [1, 2, 3]) == Fraction(-96)
    assert quadratic_gap_rhs([5, 7], [1, 2, 3]) == Fraction(-96)


def test_quadratic_gap_shifted_ranges_fail():
    # starting the double sum at index 1 instead of 0 is not an identity
    ps, qs = [Fraction(2)], [Fraction(0), Fraction(1)]
    shifted = Fraction(0)  # with n = 1 the shifted sum is empty
    assert quadratic_gap_lhs(ps, qs) != -2 * shifted


def test_residual_order1_sign_witness():
    ms = ModeSet(1, 0, [Fraction(3)], [Fraction(0), Fraction(1)])
    fam = SeriesFamily(ms)
    lin = GR_I * fam.phi(0, 1).dt() + fam.phi(0, 1).dx().dx()
    cub = (fam.psi(0, 0) * fam.phi(0, 0)) * fam.phi(0, 0)
    assert (lin + 2 * cub).is_zero()
    assert not (lin - 2 * cub).is_zero()


def test_residual_bosonic_through_order3():
    ms = ModeSet(1, 0, [Fraction(2), Fraction(-1, 2)], [Fraction(0), Fraction(1)])
    fam = SeriesFamily(ms)
    for n in range(4):
        assert fam.residual(0, n).is_zero()
        assert fam.residual_dual(0, n).is_zero()


def test_single_fermion_is_free():
    # with one fermionic color the cubic term contains the square of an
    # odd field and vanishes pointwise, so the series stops at order 0
    ms = ModeSet(0, 1, [Fraction(4), Fraction(5)],
                 [Fraction(0), Fraction(1), Fraction(2)])
    fam = SeriesFamily(ms)
    assert not fam.phi(0, 0).is_zero()
    for n in range(1, 3):
        assert fam.phi(0, n).is_zero()
        assert fam.residual(0, n).is_zero()


def test_residual_mixed_graded():
    ms = ModeSet(1, 1, [Fraction(2)], [Fraction(0), Fraction(1)])
    fam = SeriesFamily(ms)
    for j in range(2):
        for n in range(3):
            assert fam.residual(j, n).is_zero()
            assert fam.residual_dual(j, n).is_zero()
    assert not fam.phi(1, 1).is_zero()


def test_conjugate_series_formula():
    ms = ModeSet(1, 1, [Fraction(2)], [Fraction(0), Fraction(1)])
    fam = SeriesFamily(ms)
    for j in range(2):
        for n in range(3):
            assert fam.phi(j, n).conj() == phi_dagger_direct(ms, j, n)


def test_random_modesets_residuals():
    rng = random.Random(32)
    for m, n in [(1, 0), (1, 1), (2, 1)]:
        for _ in range(2):
            ps = distinct_fracs(rng, 2)
            qs = distinct_fracs(rng, 2, taken=ps)
            ms = ModeSet(m, n, ps, qs)
            fam = SeriesFamily(ms)
            color = rng.randrange(m + n)
            for order in range(3):
                assert fam.residual(color, order).is_zero()


def test_numeric_truncation_scaling():
    # evaluate the truncated coupled fields numerically; the equation
    # residual must shrink like g^(n_max+1) when g is halved
    ms = ModeSet(1, 0, [Fraction(2)], [Fraction(0), Fraction(1)])
    fam = SeriesFamily(ms)
    rng = random.Random(33)
    assign = {}
    for name in ms.space.names:
        j = ms.space.index(name)
        if ms.space.conj_perm[j] > j:
            assign[name] = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
    for name in ms.space.names:
        j = ms.space.index(name)
        jc = ms.space.conj_perm[j]
        if jc < j:
            assign[name] = assign[ms.space.names[jc]].conjugate()

    n_max = 3
    x, t = 0.37, 0.21
    h = 1e-4

    def fields(g):
        def phi_at(xx, tt):
            return sum((-g) ** k * fam.phi(0, k).evaluate(xx, tt, assign)
                       for k in range(n_max + 1))

        def psi_at(xx, tt):
            return sum((-g) ** k * fam.psi(0, k).evaluate(xx, tt, assign)
                       for k in range(n_max + 1))

        dphi_t = (phi_at(x, t + h) - phi_at(x, t - h)) / (2 * h)
        dphi_xx = (phi_at(x + h, t) - 2 * phi_at(x, t) + phi_at(x - h, t)) / h ** 2
        return abs(1j * dphi_t + dphi_xx
                   - 2 * g * psi_at(x, t) * phi_at(x, t) * phi_at(x, t))

    r1 = fields(0.2)
    r2 = fields(0.1)
    # finite differences contribute ~1e-8; the g^4 scaling dominates
    assert r1 > 1e-6
    assert r2 < r1 / 10
