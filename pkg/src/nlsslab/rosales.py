"""Explicit series solution of the graded cubic Schrodinger equation.

The fields solve

    i d_t phi_j = -d_xx phi_j + 2 g (phi+_k phi_k) phi_j,

with K = m + n colors, the first m bosonic and the last n fermionic.
Expanding phi_j in powers of (-g), the order-n coefficient is a sum of
plane waves whose amplitudes are products of n "daggered" seed symbols
at momenta drawn from one list and n+1 plain seed symbols at momenta
from a second, disjoint list, divided by the telescoping denominator

    Q_n = prod_i (p_i - q_{i-1})(p_i - q_i).

Keeping the two momentum lists disjoint keeps every denominator away
from zero, and treating the daggered and plain seed symbols as
independent generators (each with its own conjugate) turns the
order-by-order equation of motion into a family of exact polynomial
identities, one per monomial in the seeds: that is the form verified
here.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping

from .grassmann import (GrassmannRegistry, PolyCoeff, SuperCoeff, SuperScalar)
from .rings import GR_I, GaussianRational, Poly, VarSpace


class WaveSum:
    """Finite sum of plane waves c * exp(i(w x - e t)) with exact keys.

    Keys are (w, e) pairs of Fractions; coefficients are Grassmann
    scalars over a polynomial ring in the seed amplitudes.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: SuperCoeff, terms: Mapping[tuple, SuperScalar] | None = None):
        self.ring = ring
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if not c.is_zero():
                    self.terms[k] = c

    @classmethod
    def zero(cls, ring) -> "WaveSum":
        return cls(ring, {})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "WaveSum") -> "WaveSum":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return WaveSum(self.ring, out)

    def __neg__(self) -> "WaveSum":
        return WaveSum(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "WaveSum") -> "WaveSum":
        return self + (-other)

    def __mul__(self, other) -> "WaveSum":
        if isinstance(other, WaveSum):
            out: dict = {}
            for (w1, e1), c1 in self.terms.items():
                for (w2, e2), c2 in other.terms.items():
                    k = (w1 + w2, e1 + e2)
                    c = c1 * c2
                    s = out.get(k)
                    s = c if s is None else s + c
                    if s.is_zero():
                        out.pop(k, None)
                    else:
                        out[k] = s
            return WaveSum(self.ring, out)
        return WaveSum(self.ring, {k: c * other for k, c in self.terms.items()})

    def __rmul__(self, other) -> "WaveSum":
        return WaveSum(self.ring, {k: other * c for k, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, WaveSum):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def dx(self) -> "WaveSum":
        return WaveSum(self.ring,
                       {k: (GR_I * GaussianRational(k[0])) * c
                        for k, c in self.terms.items()})

    def dt(self) -> "WaveSum":
        return WaveSum(self.ring,
                       {k: (-GR_I * GaussianRational(k[1])) * c
                        for k, c in self.terms.items()})

    def conj(self) -> "WaveSum":
        return WaveSum(self.ring,
                       {(-k[0], -k[1]): c.conj() for k, c in self.terms.items()})

    def evaluate(self, x, t, assign: Mapping[str, complex]) -> complex:
        """Numeric value for purely bosonic coefficients."""
        import cmath
        total = 0j
        for (w, e), c in self.terms.items():
            if set(c.terms) - {()}:
                raise ValueError("evaluate requires Grassmann-free coefficients")
            amp = c.scalar_part().evaluate(assign)
            total += complex(amp) * cmath.exp(1j * (float(w) * x - float(e) * t))
        return total

    def __repr__(self) -> str:
        return f"WaveSum({len(self.terms)} waves)"


class ModeSet:
    """Seed data: disjoint momentum lists plus per-color amplitude symbols.

    Bosonic amplitudes are polynomial variables, fermionic ones are
    Grassmann generators; each carries an independent conjugate symbol.
    ``d{j}p{r}`` is the daggered seed of color j at the r-th momentum of
    the daggered list, ``a{j}q{m}`` the plain seed at the m-th momentum
    of the plain list; the ``c...`` names are their conjugates.
    """

    def __init__(self, m: int, n: int, p_moms: Iterable, q_moms: Iterable):
        self.m = m
        self.n = n
        self.k = m + n
        self.p_moms = [Fraction(p) for p in p_moms]
        self.q_moms = [Fraction(q) for q in q_moms]
        if set(self.p_moms) & set(self.q_moms):
            raise ValueError("momentum lists must be disjoint")
        if len(set(self.p_moms)) != len(self.p_moms) or \
           len(set(self.q_moms)) != len(self.q_moms):
            raise ValueError("momenta must be distinct within each list")
        if not self.q_moms:
            raise ValueError("the plain momentum list must not be empty")
        poly_names: list = []
        poly_pairs: dict = {}
        gen_names: list = []
        gen_pairs: dict = {}
        for j in range(self.k):
            names, pairs = (gen_names, gen_pairs) if j >= m else (poly_names, poly_pairs)
            for r in range(len(self.p_moms)):
                names += [f"d{j}p{r}", f"cd{j}p{r}"]
                pairs[f"d{j}p{r}"] = f"cd{j}p{r}"
            for mi in range(len(self.q_moms)):
                names += [f"a{j}q{mi}", f"ca{j}q{mi}"]
                pairs[f"a{j}q{mi}"] = f"ca{j}q{mi}"
        self.space = VarSpace(poly_names, conj_pairs=poly_pairs)
        self.reg = GrassmannRegistry(gen_names, conj_pairs=gen_pairs)
        self.ring = SuperCoeff(self.reg, PolyCoeff(self.space))

    def parity(self, color: int) -> int:
        return 1 if color >= self.m else 0

    def seed(self, kind: str, color: int, idx: int) -> SuperScalar:
        lst = "p" if kind in ("d", "cd") else "q"
        name = f"{kind}{color}{lst}{idx}"
        if self.parity(color):
            return SuperScalar.gen(self.reg, self.ring.base, name)
        return SuperScalar.scalar(self.reg, self.ring.base,
                                  Poly.var(self.space, name))


class SeriesFamily:
    """Memoized order-n coefficients of the field and its daggered partner.

    The equation of motion couples phi to its conjugate.  With the two
    seed families kept independent the conjugate's role is played by a
    mirror series psi: daggered seeds carry the (n+1)-fold momentum
    variables (drawn from the daggered list), plain seeds carry the
    n-fold ones, and the phase is reversed.  Setting the daggered seeds
    equal to the conjugates of the plain ones on a common support
    recovers psi = conj(phi); keeping them independent turns each order
    of the equation into a monomial-by-monomial polynomial identity
    with pole-free denominators.
    """

    def __init__(self, ms: ModeSet):
        self.ms = ms
        self._phi: dict = {}
        self._psi: dict = {}

    def phi(self, color: int, order: int) -> WaveSum:
        key = (color, order)
        if key not in self._phi:
            self._phi[key] = _phi_term(self.ms, color, order)
        return self._phi[key]

    def psi(self, color: int, order: int) -> WaveSum:
        key = (color, order)
        if key not in self._psi:
            self._psi[key] = _psi_term(self.ms, color, order)
        return self._psi[key]

    def residual(self, color: int, order: int) -> WaveSum:
        """Order-n equation of motion for phi; identically zero.

        The sign of the cubic term is pinned by the order-1 identity:
        with the expansion parameter (-g) the combination is

            i d_t phi^(n) + d_xx phi^(n)
                + 2 sum_{a+b+c=n-1} (psi^(a)_k phi^(b)_k) phi^(c)_j.
        """
        ms = self.ms
        n = order
        res = GR_I * self.phi(color, n).dt() + self.phi(color, n).dx().dx()
        cubic = WaveSum.zero(ms.ring)
        for a in range(n):
            for b in range(n - a):
                c = n - 1 - a - b
                for k in range(ms.k):
                    cubic = cubic + (self.psi(k, a) * self.phi(k, b)) \
                        * self.phi(color, c)
        return res + 2 * cubic

    def residual_dual(self, color: int, order: int) -> WaveSum:
        """Order-n equation for the daggered partner, psi leftmost:

            -i d_t psi^(n) + d_xx psi^(n)
                + 2 sum_{a+b+c=n-1} psi^(c)_j (psi^(a)_k phi^(b)_k).
        """
        ms = self.ms
        n = order
        res = -GR_I * self.psi(color, n).dt() + self.psi(color, n).dx().dx()
        cubic = WaveSum.zero(ms.ring)
        for a in range(n):
            for b in range(n - a):
                c = n - 1 - a - b
                for k in range(ms.k):
                    cubic = cubic + self.psi(color, c) \
                        * (self.psi(k, a) * self.phi(k, b))
        return res + 2 * cubic


def _phi_term(ms: ModeSet, color: int, order: int) -> WaveSum:
    """Order-n series coefficient of phi_color as an exact wave sum."""
    n = order
    p, q = ms.p_moms, ms.q_moms
    out = WaveSum.zero(ms.ring)
    if n > 0 and not p:
        return out
    for colors in itertools.product(range(ms.k), repeat=n):
        for rs in itertools.product(range(len(p)), repeat=n):
            for mi in itertools.product(range(len(q)), repeat=n + 1):
                qn = Fraction(1)
                for i in range(n):
                    qn *= (p[rs[i]] - q[mi[i]]) * (p[rs[i]] - q[mi[i + 1]])
                coeff = SuperScalar.scalar(ms.reg, ms.ring.base,
                                           GaussianRational(1 / qn))
                for i in range(n):
                    coeff = coeff * ms.seed("d", colors[i], rs[i])
                for i in range(n, 0, -1):
                    coeff = coeff * ms.seed("a", colors[i - 1], mi[i])
                coeff = coeff * ms.seed("a", color, mi[0])
                if coeff.is_zero():
                    continue
                w = sum(q[x] for x in mi) - sum(p[x] for x in rs)
                e = sum(q[x] ** 2 for x in mi) - sum(p[x] ** 2 for x in rs)
                out = out + WaveSum(ms.ring, {(w, e): coeff})
    return out


def _psi_term(ms: ModeSet, color: int, order: int) -> WaveSum:
    """Order-n coefficient of the daggered partner series.

    Mirror of the plain series: the (n+1)-fold momentum variables are
    drawn from the daggered list and carried by daggered seeds (the
    leftmost one wearing the free color), the n-fold ones from the
    plain list, and the phase is the reverse of the plain one.
    """
    n = order
    p, q = ms.p_moms, ms.q_moms
    out = WaveSum.zero(ms.ring)
    if not p or (n > 0 and not q):
        return out
    for colors in itertools.product(range(ms.k), repeat=n):
        for mi in itertools.product(range(len(q)), repeat=n):
            for rs in itertools.product(range(len(p)), repeat=n + 1):
                qn = Fraction(1)
                for i in range(n):
                    qn *= (q[mi[i]] - p[rs[i]]) * (q[mi[i]] - p[rs[i + 1]])
                coeff = SuperScalar.scalar(ms.reg, ms.ring.base,
                                           GaussianRational(1 / qn))
                coeff = coeff * ms.seed("d", color, rs[0])
                for i in range(1, n + 1):
                    coeff = coeff * ms.seed("d", colors[i - 1], rs[i])
                for i in range(n, 0, -1):
                    coeff = coeff * ms.seed("a", colors[i - 1], mi[i - 1])
                if coeff.is_zero():
                    continue
                w = sum(p[x] for x in rs) - sum(q[x] for x in mi)
                e = sum(p[x] ** 2 for x in rs) - sum(q[x] ** 2 for x in mi)
                out = out + WaveSum(ms.ring, {(-w, -e): coeff})
    return out


def phi_dagger_direct(ms: ModeSet, color: int, order: int) -> WaveSum:
    """Conjugate series from its own closed formula (not via .conj()).

    Same shape as the daggered partner but written in the conjugate
    seed symbols: conjugated plain seeds carry the (n+1)-fold plain-list
    momenta, conjugated daggered seeds the n-fold daggered-list ones.
    """
    n = order
    p, q = ms.p_moms, ms.q_moms
    out = WaveSum.zero(ms.ring)
    if n > 0 and not p:
        return out
    for colors in itertools.product(range(ms.k), repeat=n):
        for rs in itertools.product(range(len(p)), repeat=n):
            for mi in itertools.product(range(len(q)), repeat=n + 1):
                qn = Fraction(1)
                for i in range(n):
                    qn *= (p[rs[i]] - q[mi[i]]) * (p[rs[i]] - q[mi[i + 1]])
                coeff = SuperScalar.scalar(ms.reg, ms.ring.base,
                                           GaussianRational(1 / qn))
                coeff = coeff * ms.seed("ca", color, mi[0])
                for i in range(1, n + 1):
                    coeff = coeff * ms.seed("ca", colors[i - 1], mi[i])
                for i in range(n, 0, -1):
                    coeff = coeff * ms.seed("cd", colors[i - 1], rs[i - 1])
                if coeff.is_zero():
                    continue
                w = sum(q[x] for x in mi) - sum(p[x] for x in rs)
                e = sum(q[x] ** 2 for x in mi) - sum(p[x] ** 2 for x in rs)
                out = out + WaveSum(ms.ring, {(-w, -e): coeff})
    return out


def quadratic_gap_lhs(ps, qs) -> Fraction:
    """sum q^2 - sum p^2 - (sum q - sum p)^2 for n daggered, n+1 plain momenta."""
    ps = [Fraction(x) for x in ps]
    qs = [Fraction(x) for x in qs]
    return (sum(x ** 2 for x in qs) - sum(x ** 2 for x in ps)
            - (sum(qs) - sum(ps)) ** 2)


def quadratic_gap_rhs(ps, qs) -> Fraction:
    """-2 sum_{c=0}^{n-1} sum_{a=0}^{c} (p_{a+1} - q_a)(p_{c+1} - q_{c+1}).

    Zero-based momenta lists: ps has n entries (1-based p_1..p_n is
    ps[0..n-1]), qs has n+1 entries q_0..q_n.
    """
    ps = [Fraction(x) for x in ps]
    qs = [Fraction(x) for x in qs]
    n = len(ps)
    if len(qs) != n + 1:
        raise ValueError("need one more plain momentum than daggered")
    total = Fraction(0)
    for c in range(n):
        for a in range(c + 1):
            total += (ps[a] - qs[a]) * (ps[c] - qs[c + 1])
    return -2 * total
