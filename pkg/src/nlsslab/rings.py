"""Exact scalar rings: Gaussian rationals, Laurent polynomials, rational functions.

Every algebraic identity in this package is checked over these rings,
so equality means equality, not closeness to machine precision.  The
polynomial ring supports a conjugation involution on its variables and
distinguishes ordinary variables from invertible unit symbols (pure
phases), which may carry negative exponents and conjugate to their own
inverse.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import PoleError, RingMismatchError


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Fraction")


class GaussianRational:
    """Complex scalar with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    def __repr__(self) -> str:
        if self.im == 0:
            return f"{self.re}"
        if self.re == 0:
            return f"{self.im}*i"
        return f"({self.re} + {self.im}*i)"

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def parity(self) -> int:
        return 0

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        if isinstance(other, GaussianRational):
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return NotImplemented

    __rmul__ = __mul__

    def inv(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise PoleError("division by zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if isinstance(other, GaussianRational):
            return self * other.inv()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other) * self.inv()
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __complex__(self) -> complex:
        return float(self.re) + 1j * float(self.im)


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


def gr(re=0, im=0) -> GaussianRational:
    return GaussianRational(re, im)


class Cx:
    """Complex float with the same small-ring protocol as GaussianRational.

    Drop-in coefficient for fast numeric sweeps; zero tests are exact
    comparisons against 0.0, never a tolerance.
    """

    __slots__ = ("v",)

    def __init__(self, v=0.0):
        if isinstance(v, Cx):
            v = v.v
        elif isinstance(v, GaussianRational):
            v = complex(v)
        self.v = complex(v)

    def __repr__(self) -> str:
        return f"Cx({self.v})"

    @staticmethod
    def _val(other):
        if isinstance(other, Cx):
            return other.v
        if isinstance(other, (int, float, complex, Fraction)):
            return complex(other)
        if isinstance(other, GaussianRational):
            return complex(other)
        return None

    def __eq__(self, other) -> bool:
        v = self._val(other)
        return NotImplemented if v is None else self.v == v

    def __hash__(self):
        return hash(self.v)

    def is_zero(self) -> bool:
        return self.v == 0.0

    def parity(self) -> int:
        return 0

    def conj(self) -> "Cx":
        return Cx(self.v.conjugate())

    def __neg__(self) -> "Cx":
        return Cx(-self.v)

    def __add__(self, other):
        v = self._val(other)
        return NotImplemented if v is None else Cx(self.v + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._val(other)
        return NotImplemented if v is None else Cx(self.v - v)

    def __rsub__(self, other):
        v = self._val(other)
        return NotImplemented if v is None else Cx(v - self.v)

    def __mul__(self, other):
        v = self._val(other)
        return NotImplemented if v is None else Cx(self.v * v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._val(other)
        return NotImplemented if v is None else Cx(self.v / v)

    def __complex__(self) -> complex:
        return self.v


class VarSpace:
    """Ordered set of variable names with a conjugation involution.

    ``conj_pairs`` maps each variable to its conjugate partner; unlisted
    variables are self-conjugate (real).  Names in ``units`` are
    invertible phase symbols: they admit negative exponents and
    conjugation sends them to their inverse, so they must be
    self-conjugate.
    """

    __slots__ = ("names", "_index", "conj_perm", "unit")

    def __init__(self, names: Iterable[str], conj_pairs: Mapping[str, str] | None = None,
                 units: Iterable[str] = ()):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}
        perm = list(range(len(names)))
        if conj_pairs:
            for a, b in conj_pairs.items():
                ia, ib = self._index[a], self._index[b]
                perm[ia] = ib
                perm[ib] = ia
        for i, j in enumerate(perm):
            if perm[j] != i:
                raise ValueError("conjugation map is not an involution")
        self.conj_perm = tuple(perm)
        unit = [False] * len(names)
        for u in units:
            iu = self._index[u]
            if self.conj_perm[iu] != iu:
                raise ValueError("unit symbols must be self-conjugate")
            unit[iu] = True
        self.unit = tuple(unit)

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def __eq__(self, other) -> bool:
        if not isinstance(other, VarSpace):
            return NotImplemented
        return (self.names == other.names and self.conj_perm == other.conj_perm
                and self.unit == other.unit)

    def __hash__(self):
        return hash((self.names, self.conj_perm, self.unit))

    def __repr__(self) -> str:
        return f"VarSpace({self.names!r})"


def _check_same_space(a: "Poly", b: "Poly") -> None:
    if a.space != b.space:
        raise RingMismatchError("polynomials live in different variable spaces")


class Poly:
    """Sparse multivariate polynomial over the Gaussian rationals.

    Exponents of unit symbols may be negative (Laurent behaviour); all
    other exponents are non-negative.  The term dict never stores zero
    coefficients, so dict equality is semantic equality.
    """

    __slots__ = ("space", "terms")

    def __init__(self, space: VarSpace, terms: Mapping[tuple, GaussianRational]):
        self.space = space
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    @classmethod
    def zero(cls, space: VarSpace) -> "Poly":
        return cls(space, {})

    @classmethod
    def const(cls, space: VarSpace, c) -> "Poly":
        if isinstance(c, (int, Fraction)):
            c = GaussianRational(c)
        return cls(space, {(0,) * space.n: c})

    @classmethod
    def one(cls, space: VarSpace) -> "Poly":
        return cls.const(space, 1)

    @classmethod
    def var(cls, space: VarSpace, name: str, power: int = 1) -> "Poly":
        i = space.index(name)
        if power < 0 and not space.unit[i]:
            raise ValueError(f"negative power of non-unit variable {name!r}")
        e = [0] * space.n
        e[i] = power
        return cls(space, {tuple(e): GR_ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int:
        return 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Poly.const(self.space, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    __hash__ = None

    def _coerce(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return Poly.const(self.space, other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if isinstance(other, Poly):
            _check_same_space(self, other)
            out = dict(self.terms)
            for e, c in other.terms.items():
                s = out.get(e, GR_ZERO) + c
                if s.is_zero():
                    out.pop(e, None)
                else:
                    out[e] = s
            return Poly(self.space, out)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.space, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if isinstance(other, Poly):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if isinstance(other, GaussianRational):
            if other.is_zero():
                return Poly.zero(self.space)
            return Poly(self.space, {e: c * other for e, c in self.terms.items()})
        if isinstance(other, Poly):
            _check_same_space(self, other)
            out: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    s = out.get(e, GR_ZERO) + c1 * c2
                    if s.is_zero():
                        out.pop(e, None)
                    else:
                        out[e] = s
            return Poly(self.space, out)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if isinstance(other, GaussianRational):
            return self * other.inv()
        if isinstance(other, Poly):
            return RatFunc(self, other)
        return NotImplemented

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        out = Poly.one(self.space)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "Poly":
        sp = self.space
        out: dict = {}
        for e, c in self.terms.items():
            ne = [0] * sp.n
            for i, p in enumerate(e):
                j = sp.conj_perm[i]
                ne[j] += -p if sp.unit[i] else p
            key = tuple(ne)
            s = out.get(key, GR_ZERO) + c.conj()
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return Poly(sp, out)

    def derivative(self, name: str) -> "Poly":
        i = self.space.index(name)
        if self.space.unit[i]:
            raise ValueError(f"cannot differentiate unit symbol {name!r}")
        out: dict = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
        return Poly(self.space, out)

    def eval_partial(self, assign: Mapping[str, object]) -> "Poly":
        """Substitute exact values for a subset of variables."""
        sp = self.space
        idx = {}
        for name, v in assign.items():
            if isinstance(v, (int, Fraction)):
                v = GaussianRational(v)
            if not isinstance(v, GaussianRational):
                raise TypeError("eval_partial requires exact values")
            idx[sp.index(name)] = v
        out: dict = {}
        for e, c in self.terms.items():
            ne = list(e)
            for i, v in idx.items():
                if ne[i]:
                    c = c * v ** ne[i]
                    ne[i] = 0
            key = tuple(ne)
            s = out.get(key, GR_ZERO) + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return Poly(sp, out)

    def evaluate(self, assign: Mapping[str, object]):
        """Evaluate at a full assignment; exact if every value is exact."""
        sp = self.space
        vals = []
        exact = True
        for name in sp.names:
            v = assign[name]
            if isinstance(v, (int, Fraction)):
                v = GaussianRational(v)
            if not isinstance(v, GaussianRational):
                exact = False
            vals.append(v)
        if not exact:
            vals = [complex(v) if isinstance(v, GaussianRational) else complex(v)
                    for v in vals]
            total = 0j
            for e, c in self.terms.items():
                t = complex(c)
                for v, p in zip(vals, e):
                    if p:
                        t *= v ** p
                total += t
            return total
        total = GR_ZERO
        for e, c in self.terms.items():
            t = c
            for v, p in zip(vals, e):
                if p:
                    t = t * v ** p
            total = total + t
        return total

    def monomial_content(self) -> tuple:
        """Componentwise minimum exponent over all terms."""
        if not self.terms:
            return (0,) * self.space.n
        its = iter(self.terms)
        m = list(next(its))
        for e in its:
            for i, p in enumerate(e):
                if p < m[i]:
                    m[i] = p
        return tuple(m)

    def shift_monomial(self, shift: tuple) -> "Poly":
        return Poly(self.space,
                    {tuple(a - b for a, b in zip(e, shift)): c
                     for e, c in self.terms.items()})

    def leading_coeff(self) -> GaussianRational:
        """Coefficient of the lexicographically largest monomial."""
        if not self.terms:
            return GR_ZERO
        return self.terms[max(self.terms)]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{n}^{p}" if p != 1 else n
                for n, p in zip(self.space.names, e) if p
            )
            bits.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


class RatFunc:
    """Quotient of two polynomials with equality by cross-multiplication.

    No polynomial gcd is attempted; normalization only cancels the common
    monomial content and rescales the denominator's leading coefficient
    to one, which keeps representations deterministic and small enough
    for the checks in this package.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        _check_same_space(num, den)
        if den.is_zero():
            raise PoleError("zero denominator")
        if num.is_zero():
            den = Poly.one(num.space)
        else:
            cn = num.monomial_content()
            cd = den.monomial_content()
            common = tuple(min(a, b) for a, b in zip(cn, cd))
            if any(common):
                num = num.shift_monomial(common)
                den = den.shift_monomial(common)
        lead = den.leading_coeff()
        if not (lead == GR_ONE):
            inv = lead.inv()
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFunc":
        return cls(p, Poly.one(p.space))

    @classmethod
    def const(cls, space: VarSpace, c) -> "RatFunc":
        return cls.from_poly(Poly.const(space, c))

    @classmethod
    def var(cls, space: VarSpace, name: str, power: int = 1) -> "RatFunc":
        if power >= 0 or space.unit[space.index(name)]:
            return cls.from_poly(Poly.var(space, name, power))
        return cls(Poly.one(space), Poly.var(space, name, -power))

    @property
    def space(self) -> VarSpace:
        return self.num.space

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def parity(self) -> int:
        return 0

    def _coerce(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return RatFunc.const(self.space, other)
        if isinstance(other, Poly):
            return RatFunc.from_poly(other)
        return other

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __add__(self, other):
        other = self._coerce(other)
        if isinstance(other, RatFunc):
            if self.den == other.den:
                return RatFunc(self.num + other.num, self.den)
            return RatFunc(self.num * other.den + other.num * self.den,
                           self.den * other.den)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if isinstance(other, RatFunc):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            return RatFunc(self.num * other, self.den)
        if isinstance(other, Poly):
            other = RatFunc.from_poly(other)
        if isinstance(other, RatFunc):
            return RatFunc(self.num * other.num, self.den * other.den)
        return NotImplemented

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.num.is_zero():
            raise PoleError("inverting zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if isinstance(other, RatFunc):
            return self * other.inv()
        return NotImplemented

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if isinstance(other, RatFunc):
            return other * self.inv()
        return NotImplemented

    def __pow__(self, n: int) -> "RatFunc":
        if not isinstance(n, int):
            raise TypeError("rational function powers must be integers")
        if n < 0:
            return self.inv() ** (-n)
        out = RatFunc.const(self.space, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "RatFunc":
        return RatFunc(self.num.conj(), self.den.conj())

    def evaluate(self, assign: Mapping[str, object]):
        d = self.den.evaluate(assign)
        if isinstance(d, GaussianRational):
            if d.is_zero():
                raise PoleError("evaluation hits a pole")
            return self.num.evaluate(assign) * d.inv()
        if d == 0:
            raise PoleError("evaluation hits a pole")
        return self.num.evaluate(assign) / d

    def __repr__(self) -> str:
        if self.den == Poly.one(self.space):
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"
