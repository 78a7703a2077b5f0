import random
from fractions import Fraction

from nlsslab.grassmann import GRCoeff, RatCoeff
from nlsslab.graded import GradedOp, field_grading
from nlsslab.rings import GR_I, GaussianRational, Poly, RatFunc, VarSpace, gr
from nlsslab.rmatrix import (permutation_op, r_check_op, r_op, swap_slots,
                             ybe_residual)

RING = GRCoeff()

GRADINGS = [field_grading(1, 0), field_grading(0, 1), field_grading(1, 1),
            field_grading(2, 1), field_grading(1, 2), field_grading(3, 0)]


def rand_k(rng):
    k = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
    return k if k != 0 else Fraction(1, 7)


def test_permutation_squares_to_identity():
    for g in GRADINGS:
        p = permutation_op(g, RING)
        assert p * p == GradedOp.identity(p.slots, RING)


def test_r_symmetric_under_slot_swap():
    rng = random.Random(210)
    for grading in GRADINGS:
        k, gc = rand_k(rng), Fraction(1, 3)
        r = r_op(grading, RING, k, gc)
        assert swap_slots(r) == r


def test_r_unitarity():
    rng = random.Random(211)
    for grading in GRADINGS:
        k, gc = rand_k(rng), rand_k(rng)
        r = r_op(grading, RING, k, gc)
        rm = r_op(grading, RING, -k, gc)
        assert r * rm == GradedOp.identity(r.slots, RING)


def test_r_hermiticity_pair():
    rng = random.Random(212)
    for grading in GRADINGS:
        k, gc = rand_k(rng), rand_k(rng)
        lhs = r_op(grading, RING, k, gc).realize().dagger()
        rhs = r_op(grading, RING, -k, gc).realize()
        assert lhs == rhs


def test_r_at_zero_is_minus_permutation():
    for grading in GRADINGS[:3]:
        r = r_op(grading, RING, 0, Fraction(2, 5))
        assert r == -1 * permutation_op(grading, RING)


def test_ybe_exact_rational_points():
    rng = random.Random(213)
    for grading in GRADINGS:
        ks = []
        while len(ks) < 3:
            k = rand_k(rng)
            if k not in ks:
                ks.append(k)
        gc = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        assert ybe_residual(grading, RING, *ks, gc).is_zero()


def test_ybe_in_function_field():
    sp = VarSpace(["k1", "k2", "k3", "g"])
    ring = RatCoeff(sp)
    k1, k2, k3, g = (RatFunc.var(sp, n) for n in sp.names)
    for grading in [field_grading(1, 1), field_grading(0, 2)]:
        assert ybe_residual(grading, ring, k1, k2, k3, g).is_zero()


def test_braid_form_involution():
    # P R(k) composed with itself at opposite rapidity is the identity
    rng = random.Random(214)
    for grading in GRADINGS[:4]:
        k, gc = rand_k(rng), rand_k(rng)
        a = r_check_op(grading, RING, k, gc)
        b = r_check_op(grading, RING, -k, gc)
        assert a * b == GradedOp.identity(a.slots, RING)


def test_scalar_limit_is_phase():
    # single boson: P = I, so R(k) collapses to (k - ig)/(k + ig) times I
    grading = field_grading(1, 0)
    k, gc = Fraction(3, 2), Fraction(1, 2)
    r = r_op(grading, RING, k, gc)
    phase = (gr(k) - GR_I * gr(gc)) * (gr(k) + GR_I * gr(gc)).inv()
    assert r == phase * GradedOp.identity(r.slots, RING)
    mod2 = phase * phase.conj()
    assert mod2 == gr(1)


def test_single_fermion_r_is_constant():
    # single fermion: P = -I, so R(k) = ((k + ig)/(k + ig)) I = I
    grading = field_grading(0, 1)
    r = r_op(grading, RING, Fraction(5, 3), Fraction(2, 7))
    assert r == GradedOp.identity(r.slots, RING)
