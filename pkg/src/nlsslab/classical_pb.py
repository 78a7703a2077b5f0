"""Graded Poisson brackets for lattice-discretized classical fields.

Fields live on a uniform grid of ``sites`` points with spacing
``delta``; functional derivatives become (1/delta) times partial
derivatives with respect to the per-site symbols, all derivatives taken
from the left.  For homogeneous functionals F, G the bracket is

    {F, G} = i sum_l sum_a (1/delta) (-1)^([F][l]) (
                 (-1)^[l] dF/dphi_l(a) * dG/dphi+_l(a)
                        - dF/dphi+_l(a) * dG/dphi_l(a) ),

which gives the canonical pair {phi_j(a), phi+_k(b)} = i d_jk d_ab / delta.
Boundary handling is Dirichlet: difference operators treat missing
neighbours as zero, so identities that need integration by parts are
exact whenever the fields vanish on a margin.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import GradingError
from .grassmann import (GrassmannRegistry, PolyCoeff, SuperCoeff, SuperScalar)
from .rings import GR_I, GaussianRational, Poly, VarSpace


class FieldGrid:
    """Per-site field symbols for m bosonic and n fermionic colors."""

    def __init__(self, m: int, n: int, sites: int, delta):
        self.m = m
        self.n = n
        self.k = m + n
        self.sites = sites
        self.delta = Fraction(delta)
        poly_names: list = []
        poly_pairs: dict = {}
        gen_names: list = []
        gen_pairs: dict = {}
        for j in range(self.k):
            names, pairs = (gen_names, gen_pairs) if j >= m else (poly_names, poly_pairs)
            for a in range(sites):
                names += [f"f{j}a{a}", f"fc{j}a{a}"]
                pairs[f"f{j}a{a}"] = f"fc{j}a{a}"
        self.space = VarSpace(poly_names, conj_pairs=poly_pairs)
        self.reg = GrassmannRegistry(gen_names, conj_pairs=gen_pairs)
        self.ring = SuperCoeff(self.reg, PolyCoeff(self.space))

    def parity(self, color: int) -> int:
        return 1 if color >= self.m else 0

    def zero(self) -> SuperScalar:
        return SuperScalar.zero(self.reg, self.ring.base)

    def field(self, color: int, site: int, dag: bool = False) -> SuperScalar:
        name = f"{'fc' if dag else 'f'}{color}a{site}"
        if self.parity(color):
            return SuperScalar.gen(self.reg, self.ring.base, name)
        return SuperScalar.scalar(self.reg, self.ring.base,
                                  Poly.var(self.space, name))

    def _deriv(self, func: SuperScalar, color: int, site: int, dag: bool) -> SuperScalar:
        name = f"{'fc' if dag else 'f'}{color}a{site}"
        if self.parity(color):
            return func.gderiv(name)
        return func.pderiv(name)

    def pbracket(self, f: SuperScalar, g: SuperScalar) -> SuperScalar:
        """Graded Poisson bracket of two functionals."""
        out = SuperScalar.zero(self.reg, self.ring.base)
        inv_delta = GaussianRational(1 / self.delta)
        for pf in (0, 1):
            fp = f.grade_part(pf)
            if fp.is_zero():
                continue
            for color in range(self.k):
                pl = self.parity(color)
                sgn_front = -1 if (pf and pl) else 1
                sgn_l = -1 if pl else 1
                for a in range(self.sites):
                    df = self._deriv(fp, color, a, False)
                    dfd = self._deriv(fp, color, a, True)
                    if not df.is_zero():
                        dg = self._deriv(g, color, a, True)
                        if not dg.is_zero():
                            out = out + (GR_I * (sgn_front * sgn_l)) \
                                * inv_delta * (df * dg)
                    if not dfd.is_zero():
                        dg = self._deriv(g, color, a, False)
                        if not dg.is_zero():
                            out = out + (GR_I * (-sgn_front)) \
                                * inv_delta * (dfd * dg)
        return out

    def substitute(self, func: SuperScalar, bos: Mapping[str, object],
                   ferm: Mapping[str, SuperScalar], target: SuperCoeff) -> SuperScalar:
        """Evaluate a functional on a concrete field configuration.

        Bosonic symbols map to exact numbers, fermionic generators to
        odd elements of a (small) target Grassmann algebra; parities
        must be preserved for the substitution to be a morphism.
        """
        out = SuperScalar.zero(target.reg, target.base)
        for w, c in func.terms.items():
            val = SuperScalar.scalar(target.reg, target.base, c.evaluate(bos))
            for gid in w:
                rep = ferm[self.reg.names[gid]]
                if not rep.is_zero() and rep.parity() != 1:
                    raise GradingError("fermionic replacement must be odd")
                val = val * rep
            if not val.is_zero():
                out = out + val
        return out


def forward_diff(grid: FieldGrid, color: int, site: int, dag: bool = False) -> SuperScalar:
    """(phi(a+1) - phi(a)) / delta with Dirichlet boundary."""
    zero = grid.zero()
    nxt = grid.field(color, site + 1, dag) if site + 1 < grid.sites else zero
    inv = GaussianRational(1 / grid.delta)
    return inv * (nxt - grid.field(color, site, dag))


def central_diff(grid: FieldGrid, color: int, site: int, dag: bool = False) -> SuperScalar:
    """(phi(a+1) - phi(a-1)) / (2 delta) with Dirichlet boundary."""
    zero = grid.zero()
    nxt = grid.field(color, site + 1, dag) if site + 1 < grid.sites else zero
    prv = grid.field(color, site - 1, dag) if site - 1 >= 0 else zero
    inv = GaussianRational(1 / (2 * grid.delta))
    return inv * (nxt - prv)
