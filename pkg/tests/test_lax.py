from fractions import Fraction

import pytest

from nlsslab.classical_pb import FieldGrid
from nlsslab.errors import GradingError
from nlsslab.graded import GradedOp, aux_grading
from nlsslab.lax import (
    check_lax_parity_structure,
    check_lax_ultralocal,
    classical_r,
    lax_matrix,
    pb_tensor,
    permutation_op,
    transition_series_term,
    ultralocal_rhs,
)
from nlsslab.rings import GaussianRational


def swap_slots(op):
    """Exchange the two tensor factors of a 2-slot operator."""
    slots = (op.slots[1], op.slots[0])
    terms = {(at2, at1): c for (at1, at2), c in op.terms.items()}
    return GradedOp(slots, op.ring, terms)


@pytest.mark.parametrize("m,n", [(1, 0), (0, 1), (1, 1), (2, 1)])
def test_ultralocal_exact(m, n):
    rep = check_lax_ultralocal(m, n)
    assert rep.passed
    assert rep.residual == 0.0
    assert rep.tolerance == 0.0


def test_ultralocal_rejects_equal_spectral_parameters():
    with pytest.raises(ValueError):
        check_lax_ultralocal(1, 1, lam=Fraction(1, 2), mu=Fraction(1, 2))


def test_r_matrix_pole():
    grid = FieldGrid(1, 1, 2, Fraction(1, 3))
    with pytest.raises(ValueError):
        classical_r(1, 1, grid.ring, 0, Fraction(1, 4))


def test_pb_tensor_requires_one_slot():
    grid = FieldGrid(1, 0, 2, Fraction(1, 3))
    p = permutation_op(1, 0, grid.ring)
    l1 = lax_matrix(grid, Fraction(1, 2), 0, Fraction(1, 2))
    with pytest.raises(GradingError):
        pb_tensor(grid, p, l1)


def test_bracket_antisymmetry_boson_sector():
    # With no fermions every coefficient is even, so swapping the
    # arguments (atoms staying in their own slots) is a bare sign flip.
    grid = FieldGrid(2, 0, 3, Fraction(1, 3))
    sq = Fraction(1, 2)
    l_lam = lax_matrix(grid, Fraction(3, 2), 1, sq)
    l_mu = lax_matrix(grid, Fraction(1, 3), 1, sq)
    fwd = pb_tensor(grid, l_lam, l_mu)
    rev = swap_slots(pb_tensor(grid, l_mu, l_lam))
    assert (fwd + rev).is_zero()


@pytest.mark.parametrize("m,n", [(1, 0), (0, 1), (1, 1)])
def test_bracket_component_antisymmetry(m, n):
    # Componentwise the bracket is graded: swapping the two coefficient
    # functionals costs -(-1)**(p1*p2) with parities read off the atoms.
    grid = FieldGrid(m, n, 3, Fraction(1, 3))
    sq = Fraction(1, 2)
    l_lam = lax_matrix(grid, Fraction(3, 2), 1, sq)
    l_mu = lax_matrix(grid, Fraction(1, 3), 1, sq)
    fwd = pb_tensor(grid, l_lam, l_mu)
    rev = pb_tensor(grid, l_mu, l_lam)
    keys = set(fwd.terms) | {(b, a) for (a, b) in rev.terms}
    assert keys
    zero = grid.zero()
    for (at1, at2) in keys:
        c_fwd = fwd.terms.get((at1, at2), zero)
        c_rev = rev.terms.get((at2, at1), zero)
        p1 = fwd._atom_parity(0, at1)
        p2 = fwd._atom_parity(1, at2)
        if p1 and p2:
            assert (c_fwd - c_rev).is_zero()
        else:
            assert (c_fwd + c_rev).is_zero()


def test_bracket_offsite_vanishes():
    grid = FieldGrid(1, 1, 3, Fraction(1, 3))
    sq = Fraction(1, 2)
    l1 = lax_matrix(grid, Fraction(3, 2), 0, sq)
    l2 = lax_matrix(grid, Fraction(1, 3), 2, sq)
    assert pb_tensor(grid, l1, l2).is_zero()
    assert ultralocal_rhs(grid, Fraction(3, 2), Fraction(1, 3), 0, 2, sq).is_zero()


def test_permutation_squares_to_identity():
    grid = FieldGrid(1, 1, 2, Fraction(1, 3))
    p = permutation_op(1, 1, grid.ring)
    sq = p * p
    aux = aux_grading(1, 1)
    ident = GradedOp.identity((aux, aux), grid.ring)
    assert (sq - ident).is_zero()


def test_permutation_conjugates_lax():
    # P (L x I) P = I x L entry for entry, fields included.
    grid = FieldGrid(1, 1, 2, Fraction(1, 3))
    aux = aux_grading(1, 1)
    slots = (aux, aux)
    p = permutation_op(1, 1, grid.ring)
    l = lax_matrix(grid, Fraction(2, 5), 1, Fraction(1, 2))
    l1 = l.promote(slots, (0,))
    l2 = l.promote(slots, (1,))
    assert (p * l1 * p - l2).is_zero()


@pytest.mark.parametrize("m,n", [(1, 0), (0, 1), (1, 1), (2, 1)])
def test_transition_parity_structure(m, n):
    rep = check_lax_parity_structure(m, n)
    assert rep.passed
    assert rep.residual == 0.0


def test_transition_series_order_zero_is_diagonal():
    grid = FieldGrid(1, 1, 4, Fraction(1, 3))
    t0 = transition_series_term(grid, 0, Fraction(1, 2))
    assert all(at[0] == at[1] for (at,) in t0.terms)
    assert len(t0.terms) == grid.k + 1


def test_lax_entries_match_construction():
    grid = FieldGrid(2, 1, 2, Fraction(1, 4))
    sq = Fraction(1, 3)
    lam = Fraction(5, 7)
    op = lax_matrix(grid, lam, 0, sq)
    half = GaussianRational(0, lam / 2)
    k = grid.k
    for i in range(k):
        assert op.terms[((i, i),)] == half
    assert op.terms[((k, k),)] == -half
    root = GaussianRational(0, sq)
    for j in range(k):
        assert op.terms[((j, k),)] == root * grid.field(j, 0)
        assert op.terms[((k, j),)] == -(root * grid.field(j, 0, dag=True))
