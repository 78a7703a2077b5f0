"""The graded rational R-matrix and its defining identities.

For a color space with ``m`` even and ``n`` odd labels the graded
permutation is P = sum_ij (-1)^[j] E_ij (x) E_ji and the R-matrix is

    R(k) = (k I - i g P) / (k + i g),

acting on two copies of the color space.  The same constructors accept
exact rational parameters (Gaussian-rational coefficients) or symbols
living in a rational-function ring, so every identity can be checked
either on sampled points or in the function field itself.
"""

from __future__ import annotations

from .graded import GradedOp, Grading
from .rings import GR_I


def permutation_op(grading: Grading, ring) -> GradedOp:
    """Graded permutation on two slots: e_a (x) e_b -> (-1)^[a][b] e_b (x) e_a."""
    slots = (tuple(grading), tuple(grading))
    d = len(grading)
    terms = {}
    for i in range(d):
        for j in range(d):
            c = ring.coerce(-1 if grading[j] else 1)
            terms[((i, j), (j, i))] = c
    return GradedOp(slots, ring, terms)


def r_op(grading: Grading, ring, k, g) -> GradedOp:
    """R(k) = (k I - i g P)/(k + i g) on two graded slots.

    ``k`` and ``g`` may be anything the ring coerces: exact rationals,
    polynomials, or rational functions.
    """
    k = ring.coerce(k)
    g = ring.coerce(g)
    den = k + GR_I * g
    den_inv = den.inv()
    a = k * den_inv
    b = (GR_I * g) * den_inv
    slots = (tuple(grading), tuple(grading))
    eye = GradedOp.identity(slots, ring)
    return a * eye - b * permutation_op(grading, ring)


def r_check_op(grading: Grading, ring, k, g) -> GradedOp:
    """Braid form P R(k): the operator that swaps factors after scattering."""
    return permutation_op(grading, ring) * r_op(grading, ring, k, g)


def ybe_residual(grading: Grading, ring, k1, k2, k3, g) -> GradedOp:
    """R12(k1-k2) R13(k1-k3) R23(k2-k3) - R23 R13 R12 on three slots."""
    slots = (tuple(grading),) * 3
    r12 = r_op(grading, ring, k1 - k2, g).promote(slots, (0, 1))
    r13 = r_op(grading, ring, k1 - k3, g).promote(slots, (0, 2))
    r23 = r_op(grading, ring, k2 - k3, g).promote(slots, (1, 2))
    return r12 * r13 * r23 - r23 * r13 * r12


def swap_slots(op: GradedOp) -> GradedOp:
    """Conjugate a two-slot operator by the graded permutation."""
    p = permutation_op(op.slots[0], op.ring)
    return p * op * p
