"""Lattice versions of the conserved functionals and the Q-hierarchy.

All derivatives use one fixed skew-adjoint central-difference stencil D
(missing neighbors are zero), and the second derivative is D applied
twice, so summation by parts is exact for fields supported away from
the grid ends.  The bilocal and trilocal charges weight site pairs with
the lattice sign function sg (sg of zero is 0).

Brackets that only move color indices around close exactly on any
grid; brackets whose continuum proofs differentiate sg or use the
chain rule hold only up to lattice artifacts and are validated by grid
refinement elsewhere.
"""

from __future__ import annotations

from fractions import Fraction

from .classical_pb import FieldGrid, central_diff
from .errors import GradingError
from .grassmann import SuperScalar
from .rings import GaussianRational

Matrix = "list[list[GaussianRational]]"


def coerce_matrix(entries) -> list[list[GaussianRational]]:
    return [[e if isinstance(e, GaussianRational) else GaussianRational(e)
             for e in row] for row in entries]


def identity_matrix(k: int) -> list[list[GaussianRational]]:
    one, zero = GaussianRational(1), GaussianRational(0)
    return [[one if j == l else zero for l in range(k)] for j in range(k)]


def basis_matrix(k: int, j: int, l: int) -> list[list[GaussianRational]]:
    mat = [[GaussianRational(0)] * k for _ in range(k)]
    mat[j][l] = GaussianRational(1)
    return mat


def matrix_parity(grid: FieldGrid, sigma) -> int:
    """Common parity of the nonzero entries; mixed entries are rejected."""
    par = None
    for j, row in enumerate(sigma):
        for l, e in enumerate(row):
            if e == GaussianRational(0):
                continue
            p = (grid.parity(j) + grid.parity(l)) % 2
            if par is None:
                par = p
            elif par != p:
                raise GradingError("matrix mixes even and odd entries")
    return 0 if par is None else par


def super_commutator(grid: FieldGrid, sigma, omega) -> list[list[GaussianRational]]:
    """sigma omega - (-1)^([sigma][omega]) omega sigma."""
    sgn = (-1) ** (matrix_parity(grid, sigma) * matrix_parity(grid, omega))
    k = grid.k
    out = [[GaussianRational(0)] * k for _ in range(k)]
    for j in range(k):
        for l in range(k):
            acc = GaussianRational(0)
            for t in range(k):
                acc = acc + sigma[j][t] * omega[t][l]
                acc = acc - GaussianRational(sgn) * (omega[j][t] * sigma[t][l])
            out[j][l] = acc
    return out


def sg(a: int, b: int) -> int:
    return (a > b) - (a < b)


def second_diff(grid: FieldGrid, color: int, site: int, dag: bool = False) -> SuperScalar:
    """D(D phi) with the same Dirichlet cutoff as the single stencil."""
    half = GaussianRational(1 / (2 * grid.delta))
    total = grid.zero()
    if site + 1 < grid.sites:
        total = total + central_diff(grid, color, site + 1, dag)
    if site - 1 >= 0:
        total = total - central_diff(grid, color, site - 1, dag)
    return half * total


def _pairs(sigma):
    zero = GaussianRational(0)
    return [(j, l, e) for j, row in enumerate(sigma)
            for l, e in enumerate(row) if e != zero]


def sigma_bilinear(grid: FieldGrid, a: int, sigma, b: int,
                   d_left: bool = False, d_right: bool = False) -> SuperScalar:
    """Phi+(a) sigma Phi(b), optionally with D on either factor."""
    total = grid.zero()
    for j, l, e in _pairs(sigma):
        lf = central_diff(grid, j, a, True) if d_left else grid.field(j, a, True)
        rf = central_diff(grid, l, b) if d_right else grid.field(l, b)
        total = total + e * (lf * rf)
    return total


def local_density(grid: FieldGrid, a: int) -> SuperScalar:
    total = grid.zero()
    for color in range(grid.k):
        total = total + grid.field(color, a, True) * grid.field(color, a)
    return total


def charge_q0(grid: FieldGrid, sigma) -> SuperScalar:
    total = grid.zero()
    for a in range(grid.sites):
        total = total + sigma_bilinear(grid, a, sigma, a)
    return GaussianRational(grid.delta) * total


def charge_q1(grid: FieldGrid, sigma, g) -> SuperScalar:
    delta = GaussianRational(grid.delta)
    kin = grid.zero()
    for a in range(grid.sites):
        kin = kin + sigma_bilinear(grid, a, sigma, a, d_right=True)
    half_g = GaussianRational(Fraction(g) / 2)
    tail = grid.zero()
    for a in range(grid.sites):
        for b in range(grid.sites):
            s = sg(a, b)
            if s == 0:
                continue
            term = sigma_bilinear(grid, a, sigma, b) * sigma_bilinear(
                grid, b, identity_matrix(grid.k), a)
            tail = tail + GaussianRational(s) * term
    return delta * kin - half_g * (delta * (delta * tail))


def charge_q2(grid: FieldGrid, sigma, g) -> SuperScalar:
    g = Fraction(g)
    delta = GaussianRational(grid.delta)
    eye = identity_matrix(grid.k)
    kin = grid.zero()
    for a in range(grid.sites):
        for j, l, e in _pairs(sigma):
            kin = kin + e * (grid.field(j, a, True) * second_diff(grid, l, a))
    bi = grid.zero()
    for a in range(grid.sites):
        for b in range(grid.sites):
            s = sg(a, b)
            if s == 0:
                continue
            mid = sigma_bilinear(grid, a, sigma, b, d_right=True) \
                - sigma_bilinear(grid, a, sigma, b, d_left=True)
            bi = bi + GaussianRational(s) * (mid * sigma_bilinear(grid, b, eye, a))
    bl_eye = {(x, y): sigma_bilinear(grid, x, eye, y)
              for x in range(grid.sites) for y in range(grid.sites)}
    bl_sig = {(x, y): sigma_bilinear(grid, x, sigma, y)
              for x in range(grid.sites) for y in range(grid.sites)}
    tri = grid.zero()
    for b in range(grid.sites):
        for a in range(grid.sites):
            s1 = sg(a, b)
            if s1 == 0:
                continue
            left = bl_eye[(b, a)]
            for c in range(grid.sites):
                s2 = sg(b, c)
                if s2 == 0:
                    continue
                term = (left * bl_sig[(a, c)]) * bl_eye[(c, b)]
                tri = tri + GaussianRational(s1 * s2) * term
    out = delta * kin
    out = out - GaussianRational(g / 2) * (delta * (delta * bi))
    out = out + GaussianRational(g * g / 4) * (delta * (delta * (delta * tri)))
    return out


def charge_q(grid: FieldGrid, sigma, n: int, g) -> SuperScalar:
    if n == 0:
        return charge_q0(grid, sigma)
    if n == 1:
        return charge_q1(grid, sigma, g)
    if n == 2:
        return charge_q2(grid, sigma, g)
    raise ValueError(f"charge level {n} not implemented (0, 1, 2 only)")


def q1q1_extra(grid: FieldGrid, sigma, omega, g) -> SuperScalar:
    """Expected gap {Q1_sigma, Q1_omega} - i Q2_[[sigma,omega]] in the limit.

    The kernel S(x,y,t) is the cyclic sum of sg products; the whole term
    carries -i (g/2)^2 and the measure of a triple sum.
    """
    g = Fraction(g)
    delta = GaussianRational(grid.delta)
    eye = identity_matrix(grid.k)
    bl_eye = {(x, y): sigma_bilinear(grid, x, eye, y)
              for x in range(grid.sites) for y in range(grid.sites)}
    bl_sig = {(x, y): sigma_bilinear(grid, x, sigma, y)
              for x in range(grid.sites) for y in range(grid.sites)}
    bl_omg = {(x, y): sigma_bilinear(grid, x, omega, y)
              for x in range(grid.sites) for y in range(grid.sites)}
    total = grid.zero()
    for x in range(grid.sites):
        for y in range(grid.sites):
            for t in range(grid.sites):
                s = sg(t, x) * sg(x, y) + sg(x, y) * sg(y, t) + sg(y, t) * sg(t, x)
                if s == 0:
                    continue
                term = bl_sig[(x, y)] * bl_omg[(y, t)] \
                    - bl_omg[(x, y)] * bl_sig[(y, t)]
                term = term * bl_eye[(t, x)]
                total = total + GaussianRational(s) * term
    coeff = GaussianRational(0, -1) * GaussianRational(g * g / 4)
    return coeff * (delta * (delta * (delta * total)))


def charge_number(grid: FieldGrid) -> SuperScalar:
    """N = delta sum_a Phi+ Phi."""
    return charge_q0(grid, identity_matrix(grid.k))


def charge_color(grid: FieldGrid, j: int, k: int) -> SuperScalar:
    """Q_jk = delta sum_a phi+_j phi_k, of parity [j]+[k]."""
    return charge_q0(grid, basis_matrix(grid.k, j, k))


def charge_momentum(grid: FieldGrid) -> SuperScalar:
    """P = delta sum_a Phi+ (D Phi); the sg tail of Q1 at sigma=I cancels."""
    total = grid.zero()
    for color in range(grid.k):
        for a in range(grid.sites):
            total = total + grid.field(color, a, True) * central_diff(grid, color, a)
    return GaussianRational(grid.delta) * total


def charge_hamiltonian(grid: FieldGrid, g) -> SuperScalar:
    """H = delta sum_a ( (D Phi+)(D Phi) + g (Phi+ Phi)^2 )."""
    g = Fraction(g)
    total = grid.zero()
    for a in range(grid.sites):
        for color in range(grid.k):
            total = total + central_diff(grid, color, a, True) \
                * central_diff(grid, color, a)
        dens = local_density(grid, a)
        total = total + GaussianRational(g) * (dens * dens)
    return GaussianRational(grid.delta) * total


def lattice_eom_rhs(grid: FieldGrid, g, color: int, site: int) -> SuperScalar:
    """i dt phi for the Hamiltonian above: -DD phi + 2 g (Phi+ Phi) phi."""
    g = Fraction(g)
    return -second_diff(grid, color, site) + (2 * GaussianRational(g)) \
        * (local_density(grid, site) * grid.field(color, site))
