"""Numeric field configurations and first-order jet evaluation.

FieldConfiguration stores one value per color and site over a small
target Grassmann algebra and mirrors the accessor surface of the
formal grid, so every charge assembly in charges.py also evaluates
numerically.  JetConfiguration additionally attaches a first variation
to each field value; running an assembly over jets returns the Poisson
bracket of the generating functional with that charge, because both
extend the same generator values by the graded Leibniz rule.
"""

from __future__ import annotations

from fractions import Fraction

from .charges import _pairs, local_density, matrix_parity, second_diff, sg, sigma_bilinear
from .classical_pb import central_diff
from .errors import GradingError
from .grassmann import CoeffRing, GRCoeff, GrassmannRegistry, SuperCoeff, SuperScalar
from .rings import GR_I, GaussianRational


class FieldConfiguration:
    """Grid of numeric field values with an enforced zero margin."""

    def __init__(self, m: int, n: int, sites: int, delta, reg: GrassmannRegistry | None = None,
                 margin: int = 2, base: CoeffRing | None = None):
        self.m = m
        self.n = n
        self.k = m + n
        self.sites = sites
        self.delta = Fraction(delta)
        self.margin = margin
        self.reg = reg if reg is not None else GrassmannRegistry([])
        self.ring = SuperCoeff(self.reg, base if base is not None else GRCoeff())
        self._vals: dict = {}

    def parity(self, color: int) -> int:
        return 1 if color >= self.m else 0

    def zero(self) -> SuperScalar:
        return SuperScalar.zero(self.reg, self.ring.base)

    def set_value(self, color: int, site: int, value) -> None:
        if not 0 <= site < self.sites:
            raise IndexError(f"site {site} outside grid")
        if not isinstance(value, SuperScalar):
            value = SuperScalar.scalar(self.reg, self.ring.base, value)
        if not value.is_zero() and value.parity() != self.parity(color):
            raise GradingError("field value parity must match the color")
        self._vals[(False, color, site)] = value
        self._vals[(True, color, site)] = value.conj()

    def field(self, color: int, site: int, dag: bool = False) -> SuperScalar:
        if not 0 <= site < self.sites:
            raise IndexError(f"site {site} outside grid")
        got = self._vals.get((dag, color, site))
        return got if got is not None else self.zero()

    def require_margin(self, width: int | None = None) -> None:
        w = self.margin if width is None else width
        edge = list(range(w)) + list(range(self.sites - w, self.sites))
        for color in range(self.k):
            for a in edge:
                if not self.field(color, a).is_zero():
                    raise ValueError(f"support margin smaller than {w} sites")

    @classmethod
    def from_table(cls, m: int, n: int, delta, text: str, margin: int = 2) -> "FieldConfiguration":
        """Rows: site color re im gen_id (gen_id 0 marks a plain scalar)."""
        rows = []
        gen_ids = set()
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            site_s, color_s, re_s, im_s, gid_s = line.split()
            row = (int(site_s), int(color_s), Fraction(re_s), Fraction(im_s), int(gid_s))
            rows.append(row)
            if row[4]:
                gen_ids.add(row[4])
        if not rows:
            raise ValueError("empty profile table")
        sites = 1 + max(r[0] for r in rows)
        names: list = []
        pairs: dict = {}
        for gid in sorted(gen_ids):
            names += [f"t{gid}", f"t{gid}d"]
            pairs[f"t{gid}"] = f"t{gid}d"
        reg = GrassmannRegistry(names, conj_pairs=pairs)
        conf = cls(m, n, sites, delta, reg, margin)
        acc: dict = {}
        for site, color, re_, im_, gid in rows:
            c = GaussianRational(re_, im_)
            if gid == 0:
                term = SuperScalar.scalar(reg, conf.ring.base, c)
            else:
                term = c * SuperScalar.gen(reg, conf.ring.base, f"t{gid}")
            key = (color, site)
            acc[key] = acc.get(key, conf.zero()) + term
        for (color, site), v in acc.items():
            conf.set_value(color, site, v)
        conf.require_margin()
        return conf


class JetScalar:
    """First-order jet v + eps d with eps squaring to zero.

    eps carries a fixed parity; for odd eps the derivation picks up the
    usual sign when eps crosses an odd left factor.
    """

    __slots__ = ("val", "der", "odd")

    def __init__(self, val: SuperScalar, der: SuperScalar, odd: bool):
        self.val = val
        self.der = der
        self.odd = odd

    def _past(self, s: SuperScalar) -> SuperScalar:
        """s with the sign produced by moving eps across it from the right."""
        if not self.odd:
            return s
        return s.grade_part(0) - s.grade_part(1)

    def __add__(self, other):
        if isinstance(other, JetScalar):
            return JetScalar(self.val + other.val, self.der + other.der, self.odd)
        return JetScalar(self.val + other, self.der, self.odd)

    __radd__ = __add__

    def __neg__(self):
        return JetScalar(-self.val, -self.der, self.odd)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, JetScalar):
            if self.odd != other.odd:
                raise GradingError("mixed jet parities")
            der = self.der * other.val + self._past(self.val) * other.der
            return JetScalar(self.val * other.val, der, self.odd)
        return JetScalar(self.val * other, self.der * other, self.odd)

    def __rmul__(self, other):
        val = other * self.val
        if self.odd and isinstance(other, SuperScalar):
            other = other.grade_part(0) - other.grade_part(1)
        return JetScalar(val, other * self.der, self.odd)

    def is_zero(self) -> bool:
        return self.val.is_zero() and self.der.is_zero()


class JetConfiguration:
    """Field view whose values carry the variation of one functional."""

    def __init__(self, conf, variation: dict, odd: bool):
        self.conf = conf
        self.variation = variation
        self.odd = odd
        self.m, self.n, self.k = conf.m, conf.n, conf.k
        self.sites = conf.sites
        self.delta = conf.delta
        self.reg = conf.reg
        self.ring = conf.ring

    def parity(self, color: int) -> int:
        return self.conf.parity(color)

    def zero(self) -> JetScalar:
        z = self.conf.zero()
        return JetScalar(z, z, self.odd)

    def field(self, color: int, site: int, dag: bool = False) -> JetScalar:
        der = self.variation.get((dag, color, site))
        if der is None:
            der = self.conf.zero()
        return JetScalar(self.conf.field(color, site, dag), der, self.odd)


def hamiltonian_flow(conf, g) -> dict:
    """(dag, color, site) -> bracket of H with that field.

    {H, phi} = i (DD phi - 2 g dens phi) and the conjugate relation.
    """
    g = Fraction(g)
    two_g = 2 * GaussianRational(g)
    out: dict = {}
    for c in range(conf.sites):
        dens = local_density(conf, c)
        for l in range(conf.k):
            dd = second_diff(conf, l, c)
            out[(False, l, c)] = GR_I * (dd - two_g * (dens * conf.field(l, c)))
            ddd = second_diff(conf, l, c, True)
            out[(True, l, c)] = GR_I * (-ddd + two_g * (dens * conf.field(l, c, True)))
    return out


def q0_flow(conf, sigma) -> dict:
    """Variation generated by Q0_sigma: a pointwise color rotation."""
    ps = matrix_parity(conf, sigma)
    out: dict = {}
    for c in range(conf.sites):
        for l in range(conf.k):
            front = GaussianRational(0, -1) if not (ps and conf.parity(l)) \
                else GaussianRational(0, 1)
            acc = conf.zero()
            accd = conf.zero()
            for j, t, e in _pairs(sigma):
                if j == l:
                    acc = acc + e * conf.field(t, c)
                if t == l:
                    accd = accd + conf.field(j, c, True) * e
            out[(False, l, c)] = front * acc
            out[(True, l, c)] = GR_I * accd
    return out


def q1_flow(conf, sigma, g) -> dict:
    """Variation generated by Q1_sigma (kinetic plus sg tail)."""
    g = Fraction(g)
    ps = matrix_parity(conf, sigma)
    half_g_delta = GaussianRational(g * conf.delta / 2)
    from .charges import identity_matrix
    eye = identity_matrix(conf.k)
    bl_eye = {(a, b): sigma_bilinear(conf, a, eye, b)
              for a in range(conf.sites) for b in range(conf.sites)}
    bl_sig = {(a, b): sigma_bilinear(conf, a, sigma, b)
              for a in range(conf.sites) for b in range(conf.sites)}
    out: dict = {}
    for c in range(conf.sites):
        for l in range(conf.k):
            sgn = -1 if (ps and conf.parity(l)) else 1
            kin = conf.zero()
            kind = conf.zero()
            for j, t, e in _pairs(sigma):
                if j == l:
                    kin = kin + e * central_diff(conf, t, c)
                if t == l:
                    kind = kind + central_diff(conf, j, c, True) * e
            tail = conf.zero()
            taild = conf.zero()
            for b in range(conf.sites):
                s = sg(c, b)
                if s:
                    row = conf.zero()
                    for j, t, e in _pairs(sigma):
                        if j == l:
                            row = row + e * conf.field(t, b)
                    tail = tail + GaussianRational(s) * (row * bl_eye[(b, c)])
                    taild = taild + GaussianRational(s) * (bl_sig[(c, b)] * conf.field(l, b, True))
                s = sg(b, c)
                if s:
                    tail = tail + GaussianRational(s * sgn) * (bl_sig[(b, c)] * conf.field(l, b))
                    rowd = conf.zero()
                    for j, t, e in _pairs(sigma):
                        if t == l:
                            rowd = rowd + conf.field(j, b, True) * e
                    taild = taild + GaussianRational(s) * (rowd * bl_eye[(c, b)])
            inner = kin - half_g_delta * tail
            out[(False, l, c)] = GaussianRational(0, -sgn) * inner
            out[(True, l, c)] = GR_I * (-kind - half_g_delta * taild)
    return out


def jet_bracket(conf, flow: dict, odd: bool, assemble) -> SuperScalar:
    """Bracket of the functional behind flow with assemble(conf)."""
    return assemble(JetConfiguration(conf, flow, odd)).der
