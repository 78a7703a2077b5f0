"""Report-producing checks for the lattice charge algebra.

Identities split into two families.  Closure of the charges under the
bracket holds exactly on the lattice, so those checks demand a zero
residual in the exact ring on formal fields.  Conservation by H and
the bilinear charge bracket need integration by parts, which the
lattice only reproduces in the limit; those run on a ladder of numeric
configurations with halved spacing and must show order >= 1.
"""

from __future__ import annotations

import time
from fractions import Fraction

from .charges import (basis_matrix, charge_hamiltonian, charge_q, identity_matrix,
                      matrix_parity, q1q1_extra, super_commutator)
from .classical_pb import FieldGrid
from .fields import FieldConfiguration, hamiltonian_flow, jet_bracket, q1_flow
from .grassmann import CxCoeff, GrassmannRegistry, SuperScalar
from .report import CheckReport, halving_order
from .rings import GaussianRational


def bump(y: Fraction) -> Fraction:
    """C^3 bump supported on (0, 1) with peak value 1 at the midpoint."""
    if y <= 0 or y >= 1:
        return Fraction(0)
    return 256 * (y * (1 - y)) ** 4


def reference_configuration(m: int, n: int, sites: int,
                            base=None, margin: int = 2) -> FieldConfiguration:
    """Deterministic compactly supported profile on [0, 1].

    Spacing is 1/(sites-1); the support sits inside (1/8, 7/8) so a
    halving ladder keeps a two-site zero margin at every level.  Each
    fermionic color draws on its own pair of Grassmann generators, so
    bilinear parts of the charges stay visible.
    """
    names: list = []
    pairs: dict = {}
    for t in range(2 * n):
        names += [f"x{t + 1}", f"x{t + 1}d"]
        pairs[f"x{t + 1}"] = f"x{t + 1}d"
    reg = GrassmannRegistry(names, conj_pairs=pairs)
    delta = Fraction(1, sites - 1)
    conf = FieldConfiguration(m, n, sites, delta, reg=reg, margin=margin, base=base)
    ring = conf.ring.base
    for a in range(sites):
        y = (8 * a * delta - 1) / 6
        b0 = bump(y)
        if not b0:
            continue
        b1 = b0 * (1 - 2 * y)
        b2 = b0 * (2 - 3 * y)
        b3 = b0 * y
        for j in range(m):
            conf.set_value(j, a, GaussianRational(b0 * (1 + j), 2 * b1 + j * b3))
        for t in range(n):
            g1 = reg.index(f"x{2 * t + 1}")
            g2 = reg.index(f"x{2 * t + 2}")
            scale = Fraction(1, t + 1)
            val = SuperScalar(reg, ring, {
                (g1,): ring.coerce(GaussianRational(b2 * scale)),
                (g2,): ring.coerce(GaussianRational(b1 * scale, b3 * scale)),
            })
            conf.set_value(m + t, a, val)
    conf.require_margin(margin)
    return conf


def coefficient_norm(s: SuperScalar) -> float:
    """Max modulus over Grassmann-word coefficients; 0.0 for the zero element."""
    return max((abs(complex(c)) for c in s.terms.values()), default=0.0)


def gl_basis(k: int) -> list:
    return [basis_matrix(k, j, l) for j in range(k) for l in range(k)]


def _report(check: str, params: dict, residual: float, tolerance: float,
            domain: str, t0: float, order_estimate=None,
            order_required=None) -> CheckReport:
    return CheckReport(check=check, params=params, residual=residual,
                       tolerance=tolerance, domain=domain,
                       order_estimate=order_estimate,
                       order_required=order_required,
                       runtime_ms=(time.perf_counter() - t0) * 1e3)


def check_charge_closure(m: int, n: int, sites: int = 6,
                         orders=(0, 1, 2), g=Fraction(1, 4),
                         delta=Fraction(1, 5)) -> CheckReport:
    """{Q0_sigma, Qn_omega} = i Qn_[[sigma,omega]] over all basis pairs, exactly.

    The charge map is linear in the color matrix, so only the k*k basis
    charges are assembled; the super-commutator side reduces to the
    structure constants E_jl E_pq = delta_lp E_jq.
    """
    t0 = time.perf_counter()
    grid = FieldGrid(m, n, sites, delta)
    k = grid.k
    cached = {(j, l, order): charge_q(grid, basis_matrix(k, j, l), order, g)
              for j in range(k) for l in range(k) for order in orders}
    i_unit = GaussianRational(0, 1)
    bad = 0
    for j in range(k):
        for l in range(k):
            q0 = cached.get((j, l, 0))
            if q0 is None:
                q0 = charge_q(grid, basis_matrix(k, j, l), 0, g)
            p_sigma = (grid.parity(j) + grid.parity(l)) & 1
            for p in range(k):
                for q in range(k):
                    p_omega = (grid.parity(p) + grid.parity(q)) & 1
                    sign = -1 if (p_sigma and p_omega) else 1
                    for order in orders:
                        lhs = grid.pbracket(q0, cached[(p, q, order)])
                        rhs = grid.zero()
                        if l == p:
                            rhs = rhs + cached[(j, q, order)]
                        if q == j:
                            rhs = rhs - GaussianRational(sign) * cached[(p, l, order)]
                        if not (lhs - i_unit * rhs).is_zero():
                            bad += 1
    return _report("charge-closure", {"m": m, "n": n, "sites": sites, "g": str(g)},
                   float(bad), 0.0,
                   f"all gl({m}|{n}) basis pairs, orders {tuple(orders)}", t0)


def check_charge_susy(m: int, n: int, sites: int = 6, g=Fraction(1, 4),
                      delta=Fraction(1, 5)) -> CheckReport:
    """{Q0_s, Q0_s} = 2iN and {Q0_s, Q1_s} = 2iP for odd involutive s."""
    t0 = time.perf_counter()
    grid = FieldGrid(m, n, sites, delta)
    odd_involutions = []
    if (m, n) == (1, 1):
        odd_involutions = [
            [[0, 1], [1, 0]],
            [[0, GaussianRational(0, 1)], [GaussianRational(0, -1), 0]],
        ]
    bad = 0
    two_i = GaussianRational(0, 2)
    for sigma in odd_involutions:
        q0 = charge_q(grid, sigma, 0, g)
        q1 = charge_q(grid, sigma, 1, g)
        number = charge_q(grid, identity_matrix(grid.k), 0, g)
        momentum = charge_q(grid, identity_matrix(grid.k), 1, g)
        if not (grid.pbracket(q0, q0) - two_i * number).is_zero():
            bad += 1
        if not (grid.pbracket(q0, q1) - two_i * momentum).is_zero():
            bad += 1
    return _report("charge-susy", {"m": m, "n": n, "sites": sites, "g": str(g),
                                   "involutions": len(odd_involutions)},
                   float(bad), 0.0,
                   f"odd involutive matrices in gl({m}|{n})", t0)


def check_conservation_exact(m: int, n: int, sites: int = 6, g=Fraction(1, 4),
                             delta=Fraction(1, 5)) -> CheckReport:
    """{H, Q0_sigma} = 0 exactly for every basis sigma (no parts integration needed)."""
    t0 = time.perf_counter()
    grid = FieldGrid(m, n, sites, delta)
    ham = charge_hamiltonian(grid, g)
    bad = 0
    for sigma in gl_basis(grid.k):
        if not grid.pbracket(ham, charge_q(grid, sigma, 0, g)).is_zero():
            bad += 1
    return _report("charge-conservation-exact",
                   {"m": m, "n": n, "sites": sites, "g": str(g)},
                   float(bad), 0.0, f"all gl({m}|{n}) basis matrices", t0)


def _ladder_confs(m: int, n: int, levels, profile=None):
    if profile is None:
        profile = lambda sites: reference_configuration(m, n, sites, base=CxCoeff())
    confs = []
    for sites in levels:
        conf = profile(sites)
        conf.require_margin(2)
        confs.append(conf)
    return confs


def check_charge_conservation(m: int, n: int, sigma, order: int,
                              levels=(13, 25, 49), g=Fraction(1, 4),
                              profile=None) -> CheckReport:
    """Residual ladder for {H, Qn_sigma} -> 0 under spacing halving."""
    t0 = time.perf_counter()
    residuals = []
    for conf in _ladder_confs(m, n, levels, profile):
        val = jet_bracket(conf, hamiltonian_flow(conf, g), False,
                          lambda jc: charge_q(jc, sigma, order, g))
        residuals.append(coefficient_norm(val))
    est = halving_order(residuals)
    return _report("charge-conservation",
                   {"m": m, "n": n, "order": order, "levels": list(levels),
                    "g": str(g), "residuals": residuals},
                   residuals[-1], 0.0, f"jet ladder, sites {tuple(levels)}", t0,
                   order_estimate=est, order_required=1.0)


def check_q1q1_identity(m: int, n: int, sigma, omega,
                        levels=(13, 25, 49), g=Fraction(1, 4),
                        profile=None) -> CheckReport:
    """{Q1_sigma, Q1_omega} vs i Q2_[[sigma,omega]] plus the triple sg kernel term."""
    t0 = time.perf_counter()
    residuals = []
    for conf in _ladder_confs(m, n, levels, profile):
        odd = matrix_parity(conf, sigma) == 1
        br = jet_bracket(conf, q1_flow(conf, sigma, g), odd,
                         lambda jc: charge_q(jc, omega, 1, g))
        comm = super_commutator(conf, sigma, omega)
        expected = GaussianRational(0, 1) * charge_q(conf, comm, 2, g) \
            + q1q1_extra(conf, sigma, omega, g)
        residuals.append(coefficient_norm(br - expected))
    est = halving_order(residuals)
    return _report("charge-q1q1",
                   {"m": m, "n": n, "levels": list(levels), "g": str(g),
                    "residuals": residuals},
                   residuals[-1], 0.0, f"jet ladder, sites {tuple(levels)}", t0,
                   order_estimate=est, order_required=1.0)


def check_charge_algebra(m: int, n: int, sigma, omega, orders=(0, 1, 2),
                         levels=(13, 25, 49), g=Fraction(1, 4)) -> list:
    """Full exact + convergence battery for one pair of color matrices."""
    reports = [
        check_charge_closure(m, n, orders=orders, g=g),
        check_charge_susy(m, n, g=g),
        check_conservation_exact(m, n, g=g),
    ]
    for order in orders:
        if order == 0:
            continue
        reports.append(check_charge_conservation(m, n, sigma, order,
                                                 levels=levels, g=g))
    reports.append(check_q1q1_identity(m, n, sigma, omega, levels=levels, g=g))
    return reports
