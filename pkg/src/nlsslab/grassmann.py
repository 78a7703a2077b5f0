"""Grassmann algebra over an arbitrary commuting coefficient ring.

A :class:`SuperScalar` is a finite sum of words in anticommuting
generators with coefficients drawn from one of the exact scalar rings.
Words are kept sorted by generator id, so the only bookkeeping is the
sign picked up while merging, and dict equality is semantic equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import GradingError, RingMismatchError
from .rings import GR_ONE, GR_ZERO, Cx, GaussianRational, Poly, RatFunc, VarSpace


class CoeffRing:
    """Descriptor used to coerce bare numbers into a coefficient ring."""

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash(type(self).__name__)


class GRCoeff(CoeffRing):
    def zero(self):
        return GR_ZERO

    def one(self):
        return GR_ONE

    def coerce(self, x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        raise RingMismatchError(f"cannot coerce {type(x).__name__} to GaussianRational")


class CxCoeff(CoeffRing):
    def zero(self):
        return Cx(0.0)

    def one(self):
        return Cx(1.0)

    def coerce(self, x):
        if isinstance(x, Cx):
            return x
        if isinstance(x, (int, float, complex, Fraction, GaussianRational)):
            return Cx(x)
        raise RingMismatchError(f"cannot coerce {type(x).__name__} to Cx")


class PolyCoeff(CoeffRing):
    def __init__(self, space: VarSpace):
        self.space = space

    def zero(self):
        return Poly.zero(self.space)

    def one(self):
        return Poly.one(self.space)

    def coerce(self, x):
        if isinstance(x, Poly):
            if x.space != self.space:
                raise RingMismatchError("polynomial from a different variable space")
            return x
        if isinstance(x, (int, Fraction, GaussianRational)):
            return Poly.const(self.space, x)
        raise RingMismatchError(f"cannot coerce {type(x).__name__} to Poly")

    def __eq__(self, other):
        return isinstance(other, PolyCoeff) and self.space == other.space

    def __hash__(self):
        return hash(("PolyCoeff", self.space))


class RatCoeff(CoeffRing):
    def __init__(self, space: VarSpace):
        self.space = space

    def zero(self):
        return RatFunc.const(self.space, 0)

    def one(self):
        return RatFunc.const(self.space, 1)

    def coerce(self, x):
        if isinstance(x, RatFunc):
            if x.space != self.space:
                raise RingMismatchError("rational function from a different space")
            return x
        if isinstance(x, Poly):
            if x.space != self.space:
                raise RingMismatchError("polynomial from a different space")
            return RatFunc.from_poly(x)
        if isinstance(x, (int, Fraction, GaussianRational)):
            return RatFunc.const(self.space, x)
        raise RingMismatchError(f"cannot coerce {type(x).__name__} to RatFunc")

    def __eq__(self, other):
        return isinstance(other, RatCoeff) and self.space == other.space

    def __hash__(self):
        return hash(("RatCoeff", self.space))


class SuperCoeff(CoeffRing):
    """Coefficient ring of Grassmann-valued scalars over a base ring."""

    def __init__(self, reg: "GrassmannRegistry", base: CoeffRing):
        self.reg = reg
        self.base = base

    def zero(self):
        return SuperScalar.zero(self.reg, self.base)

    def one(self):
        return SuperScalar.scalar(self.reg, self.base, self.base.one())

    def coerce(self, x):
        if isinstance(x, SuperScalar):
            if x.reg != self.reg or x.ring != self.base:
                raise RingMismatchError("Grassmann scalar from a different algebra")
            return x
        return SuperScalar.scalar(self.reg, self.base, self.base.coerce(x))

    def __eq__(self, other):
        return (isinstance(other, SuperCoeff) and self.reg == other.reg
                and self.base == other.base)

    def __hash__(self):
        return hash(("SuperCoeff", self.reg))


class GrassmannRegistry:
    """Ordered anticommuting generators with a conjugation pairing.

    Conjugation reverses words, maps each generator to its partner and
    conjugates the coefficient; generators without a listed partner are
    their own conjugate.
    """

    __slots__ = ("names", "_index", "conj_perm")

    def __init__(self, names: Iterable[str], conj_pairs: Mapping[str, str] | None = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
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

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def __eq__(self, other):
        if not isinstance(other, GrassmannRegistry):
            return NotImplemented
        return self.names == other.names and self.conj_perm == other.conj_perm

    def __hash__(self):
        return hash((self.names, self.conj_perm))


def merge_sign(w1: tuple, w2: tuple) -> int:
    """Sign from interleaving two sorted words into one sorted word.

    Counts the transpositions needed to move every element of ``w2``
    past the larger elements of ``w1``; repeated generators make the
    product vanish, which callers detect separately.
    """
    inv = 0
    for b in w2:
        for a in w1:
            if a > b:
                inv += 1
    return -1 if inv & 1 else 1


def sort_sign(word) -> tuple:
    """Sort an arbitrary generator list; returns (sorted tuple, sign).

    The sign is the parity of the permutation applied; a repeated
    generator yields sign 0.
    """
    w = list(word)
    sign = 1
    for i in range(1, len(w)):
        j = i
        while j > 0 and w[j - 1] > w[j]:
            w[j - 1], w[j] = w[j], w[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(w)):
        if w[i - 1] == w[i]:
            return tuple(w), 0
    return tuple(w), sign


class SuperScalar:
    """Element of the Grassmann algebra over a commuting coefficient ring."""

    __slots__ = ("reg", "ring", "terms")

    def __init__(self, reg: GrassmannRegistry, ring: CoeffRing,
                 terms: Mapping[tuple, object]):
        self.reg = reg
        self.ring = ring
        self.terms = {w: c for w, c in terms.items() if not c.is_zero()}

    @classmethod
    def zero(cls, reg: GrassmannRegistry, ring: CoeffRing) -> "SuperScalar":
        return cls(reg, ring, {})

    @classmethod
    def scalar(cls, reg: GrassmannRegistry, ring: CoeffRing, c) -> "SuperScalar":
        return cls(reg, ring, {(): ring.coerce(c)})

    @classmethod
    def gen(cls, reg: GrassmannRegistry, ring: CoeffRing, name: str) -> "SuperScalar":
        return cls(reg, ring, {(reg.index(name),): ring.one()})

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int:
        p = None
        for w in self.terms:
            wp = len(w) & 1
            if p is None:
                p = wp
            elif p != wp:
                raise GradingError("scalar of mixed Grassmann parity")
        return 0 if p is None else p

    def coeff(self, word: tuple):
        return self.terms.get(tuple(word), self.ring.zero())

    def scalar_part(self):
        return self.coeff(())

    def _check(self, other: "SuperScalar") -> None:
        if self.reg != other.reg or self.ring != other.ring:
            raise RingMismatchError("Grassmann scalars from different algebras")

    def _coerce(self, other):
        if isinstance(other, SuperScalar):
            return other
        try:
            return SuperScalar.scalar(self.reg, self.ring, other)
        except RingMismatchError:
            return None

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._check(other)
        if set(self.terms) != set(other.terms):
            return False
        return all(self.terms[w] == other.terms[w] for w in self.terms)

    __hash__ = None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        return SuperScalar(self.reg, self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "SuperScalar":
        return SuperScalar(self.reg, self.ring, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, SuperScalar):
            other = self._coerce(other)
            if other is None:
                return NotImplemented
        self._check(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            s1 = set(w1)
            for w2, c2 in other.terms.items():
                if s1 & set(w2):
                    continue
                sign = merge_sign(w1, w2)
                w, _ = sort_sign(w1 + w2)
                c = c1 * c2
                if sign < 0:
                    c = -c
                s = out.get(w)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = s
        return SuperScalar(self.reg, self.ring, out)

    def __rmul__(self, other):
        # bare numbers and commuting ring elements are central
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return coerced * self

    def conj(self) -> "SuperScalar":
        out: dict = {}
        for w, c in self.terms.items():
            mapped = [self.reg.conj_perm[g] for g in reversed(w)]
            nw, sign = sort_sign(mapped)
            if sign == 0:
                continue
            nc = c.conj()
            if sign < 0:
                nc = -nc
            s = out.get(nw)
            s = nc if s is None else s + nc
            if s.is_zero():
                out.pop(nw, None)
            else:
                out[nw] = s
        return SuperScalar(self.reg, self.ring, out)

    def grade_part(self, parity: int) -> "SuperScalar":
        return SuperScalar(self.reg, self.ring,
                           {w: c for w, c in self.terms.items() if len(w) & 1 == parity})

    def gderiv(self, name: str) -> "SuperScalar":
        """Left derivative with respect to a Grassmann generator.

        Removing the generator from position k of a sorted word costs
        (-1)^k for carrying the derivative past the earlier factors.
        """
        g = self.reg.index(name)
        out = {}
        for w, c in self.terms.items():
            if g not in w:
                continue
            k = w.index(g)
            nw = w[:k] + w[k + 1:]
            out[nw] = -c if k & 1 else c
        return SuperScalar(self.reg, self.ring, out)

    def pderiv(self, name: str) -> "SuperScalar":
        """Derivative with respect to a commuting polynomial variable."""
        out = {}
        for w, c in self.terms.items():
            d = c.derivative(name)
            if not d.is_zero():
                out[w] = d
        return SuperScalar(self.reg, self.ring, out)

    def map_coeffs(self, fn) -> "SuperScalar":
        return SuperScalar(self.reg, self.ring, {w: fn(c) for w, c in self.terms.items()})

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=lambda t: (len(t), t)):
            mono = "*".join(self.reg.names[g] for g in w)
            c = self.terms[w]
            bits.append(f"({c!r})" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)
