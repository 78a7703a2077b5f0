"""Graded tensor-product operators with mechanical sign bookkeeping.

Operators on a tensor product of graded slots are stored as sums of
elementary words: per slot either the identity or a matrix unit
``E_ij``, with a scalar coefficient kept leftmost.

Conventions.  Matrices over the supercommutative scalar ring multiply
by the plain row-by-column rule; scalar entries never pick up signs
against matrix units.  The only Koszul signs in a product are
unit-against-unit crossings between tensor slots, where ``E_ij``
carries parity ``[i]+[j]``: in ``(A (x) B)(C (x) D)`` the factor ``C``
crosses ``B``.  Consequently the flat realization of a product equals
the product of realizations only when every participating word has
even total unit parity; that even sector covers all numeric work here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import GradingError, RingMismatchError
from .grassmann import CoeffRing
from .rings import GaussianRational

Grading = tuple  # tuple of 0/1 parities, one per basis index of a slot


def parity_of(grading: Grading, index: int) -> int:
    return grading[index] & 1


class TensorBasis:
    """Flat indexing of a tensor product of graded slots (last slot fastest)."""

    __slots__ = ("gradings", "dims", "dim", "_parity")

    def __init__(self, gradings: Iterable[Grading]):
        self.gradings = tuple(tuple(g) for g in gradings)
        self.dims = tuple(len(g) for g in self.gradings)
        dim = 1
        for d in self.dims:
            dim *= d
        self.dim = dim
        par = []
        for flat in range(dim):
            par.append(sum(g[i] for g, i in zip(self.gradings, self._unravel(flat))) & 1)
        self._parity = tuple(par)

    def _unravel(self, flat: int) -> tuple:
        out = []
        for d in reversed(self.dims):
            out.append(flat % d)
            flat //= d
        return tuple(reversed(out))

    def unravel(self, flat: int) -> tuple:
        return self._unravel(flat)

    def ravel(self, multi) -> int:
        flat = 0
        for d, i in zip(self.dims, multi):
            flat = flat * d + i
        return flat

    def parity(self, flat: int) -> int:
        return self._parity[flat]


class SpMat:
    """Dict-sparse matrix over an exact scalar ring.

    Entries must provide ``is_zero``, ``conj`` and arithmetic; a zero
    element of the ring is kept for padding.  Equality is semantic:
    ``A == B`` iff every entry of ``A - B`` is zero in its ring.
    """

    __slots__ = ("nrows", "ncols", "zero", "data")

    def __init__(self, nrows: int, ncols: int, zero, data: Mapping | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.zero = zero
        self.data = {}
        if data:
            for k, v in data.items():
                if not v.is_zero():
                    self.data[k] = v

    @classmethod
    def identity(cls, n: int, zero, one) -> "SpMat":
        return cls(n, n, zero, {(i, i): one for i in range(n)})

    def get(self, i: int, j: int):
        return self.data.get((i, j), self.zero)

    def _check_shape(self, other: "SpMat", what: str) -> None:
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise RingMismatchError(f"shape mismatch in {what}")

    def __add__(self, other: "SpMat") -> "SpMat":
        if not isinstance(other, SpMat):
            return NotImplemented
        self._check_shape(other, "matrix addition")
        out = dict(self.data)
        for k, v in other.data.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return SpMat(self.nrows, self.ncols, self.zero, out)

    def __neg__(self) -> "SpMat":
        return SpMat(self.nrows, self.ncols, self.zero,
                     {k: -v for k, v in self.data.items()})

    def __sub__(self, other: "SpMat") -> "SpMat":
        if not isinstance(other, SpMat):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> "SpMat":
        return SpMat(self.nrows, self.ncols, self.zero,
                     {k: v * scalar for k, v in self.data.items()})

    def __rmul__(self, scalar) -> "SpMat":
        return SpMat(self.nrows, self.ncols, self.zero,
                     {k: scalar * v for k, v in self.data.items()})

    def __matmul__(self, other: "SpMat") -> "SpMat":
        if not isinstance(other, SpMat):
            return NotImplemented
        if self.ncols != other.nrows:
            raise RingMismatchError("shape mismatch in matrix product")
        rows: dict = {}
        for (k, j), v in other.data.items():
            rows.setdefault(k, []).append((j, v))
        out: dict = {}
        for (i, k), a in self.data.items():
            for j, b in rows.get(k, ()):
                key = (i, j)
                s = out.get(key)
                p = a * b
                s = p if s is None else s + p
                out[key] = s
        return SpMat(self.nrows, other.ncols, self.zero, out)

    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpMat):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def transpose(self) -> "SpMat":
        return SpMat(self.ncols, self.nrows, self.zero,
                     {(j, i): v for (i, j), v in self.data.items()})

    def conj(self) -> "SpMat":
        return SpMat(self.nrows, self.ncols, self.zero,
                     {k: v.conj() for k, v in self.data.items()})

    def dagger(self) -> "SpMat":
        """Conjugate transpose; the adjoint for commuting entries."""
        return self.conj().transpose()

    def supertranspose(self, parities: Grading) -> "SpMat":
        """Graded transpose: (A^st)_ij = (-1)^([i]([i]+[j])) A_ji."""
        if self.nrows != self.ncols:
            raise GradingError("supertranspose needs a square matrix")
        out = {}
        for (j, i), v in self.data.items():
            if (parities[i] * (parities[i] + parities[j])) & 1:
                v = -v
            out[(i, j)] = v
        return SpMat(self.nrows, self.ncols, self.zero, out)

    def trace(self):
        t = self.zero
        for (i, j), v in self.data.items():
            if i == j:
                t = t + v
        return t

    def supertrace(self, parities: Grading):
        t = self.zero
        for (i, j), v in self.data.items():
            if i == j:
                t = t + (-v if parities[i] & 1 else v)
        return t

    def map(self, fn: Callable) -> "SpMat":
        return SpMat(self.nrows, self.ncols, self.zero,
                     {k: fn(v) for k, v in self.data.items()})

    def to_numpy(self, conv: Callable = complex) -> np.ndarray:
        a = np.zeros((self.nrows, self.ncols), dtype=complex)
        for (i, j), v in self.data.items():
            a[i, j] = conv(v)
        return a

    def kron(self, other: "SpMat") -> "SpMat":
        out = {}
        for (i, j), a in self.data.items():
            for (k, l), b in other.data.items():
                out[(i * other.nrows + k, j * other.ncols + l)] = a * b
        return SpMat(self.nrows * other.nrows, self.ncols * other.ncols,
                     self.zero, out)

    def __repr__(self) -> str:
        return f"SpMat({self.nrows}x{self.ncols}, {len(self.data)} entries)"


def super_kron(a: SpMat, ga: Grading, b: SpMat, gb: Grading,
               pa: int = 0, pb: int = 0) -> SpMat:
    """Graded Kronecker product of homogeneous square graded matrices.

    ``pa`` and ``pb`` are the operator parities.  The entry at
    ((i,k),(j,l)) is (-1)^(pb*[j] + ([i]+[j]+pa)*[k]) A_ij B_kl: the
    first term is the second operator crossing the input basis vector,
    the second is the entry of A crossing the output basis vector of
    the second slot.  Both vanish for even operators, where this is the
    plain Kronecker product.
    """
    out = {}
    for (i, j), x in a.data.items():
        for (k, l), y in b.data.items():
            v = x * y
            if (pb * ga[j] + (ga[i] + ga[j] + pa) * gb[k]) & 1:
                v = -v
            out[(i * b.nrows + k, j * b.ncols + l)] = v
    return SpMat(a.nrows * b.nrows, a.ncols * b.ncols, a.zero, out)


def comm(a: SpMat, b: SpMat) -> SpMat:
    return a @ b - b @ a


def acomm(a: SpMat, b: SpMat) -> SpMat:
    return a @ b + b @ a


Atom = tuple  # (i, j) for a matrix unit; None stands for the identity


def _parity_parts(c):
    """Split a scalar into homogeneous-parity pieces."""
    try:
        return ((c.parity(), c),)
    except GradingError:
        return ((0, c.grade_part(0)), (1, c.grade_part(1)))
    except AttributeError:
        return ((0, c),)


class GradedOp:
    """Sum of elementary tensor words on graded slots, coefficients leftmost."""

    __slots__ = ("slots", "ring", "terms")

    def __init__(self, slots: Iterable[Grading], ring: CoeffRing,
                 terms: Mapping[tuple, object] | None = None):
        self.slots = tuple(tuple(g) for g in slots)
        self.ring = ring
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if not c.is_zero():
                    self.terms[k] = c

    @classmethod
    def zero(cls, slots, ring) -> "GradedOp":
        return cls(slots, ring, {})

    @classmethod
    def identity(cls, slots, ring) -> "GradedOp":
        op = cls(slots, ring, {})
        op.terms[(None,) * len(op.slots)] = ring.one()
        return op

    @classmethod
    def unit(cls, slots, ring, slot: int, i: int, j: int, coeff=None) -> "GradedOp":
        """Matrix unit E_ij in one slot, identity elsewhere."""
        op = cls(slots, ring, {})
        key = [None] * len(op.slots)
        key[slot] = (i, j)
        op.terms[tuple(key)] = ring.one() if coeff is None else ring.coerce(coeff)
        return op

    def _atom_parity(self, s: int, atom) -> int:
        if atom is None:
            return 0
        g = self.slots[s]
        return (g[atom[0]] + g[atom[1]]) & 1

    def _check(self, other: "GradedOp") -> None:
        if self.slots != other.slots or self.ring != other.ring:
            raise RingMismatchError("graded operators on different slot structures")

    def __add__(self, other):
        if not isinstance(other, GradedOp):
            try:
                other = GradedOp.identity(self.slots, self.ring) * other
            except (RingMismatchError, TypeError):
                return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return GradedOp(self.slots, self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "GradedOp":
        return GradedOp(self.slots, self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = other if isinstance(other, GradedOp) else None
        if o is None:
            try:
                o = GradedOp.identity(self.slots, self.ring) * other
            except (RingMismatchError, TypeError):
                return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, GradedOp):
            # scalar entries never cross matrix units, so either side
            # of a scalar multiplication lands on the coefficient
            try:
                c2 = self.ring.coerce(other)
            except (RingMismatchError, TypeError):
                return NotImplemented
            return GradedOp(self.slots, self.ring,
                            {k: c * c2 for k, c in self.terms.items()})
        self._check(other)
        n = len(self.slots)
        out: dict = {}
        for k1, c1 in self.terms.items():
            pa = [self._atom_parity(s, a) for s, a in enumerate(k1)]
            suffix = [0] * (n + 1)
            for s in range(n - 1, -1, -1):
                suffix[s] = suffix[s + 1] + pa[s]
            for k2, c2 in other.terms.items():
                sign = 0
                key = []
                dead = False
                for s in range(n):
                    a, b = k1[s], k2[s]
                    if b is not None:
                        # b crosses every atom of k1 strictly to its right
                        sign += self._atom_parity(s, b) * suffix[s + 1]
                    if a is None:
                        key.append(b)
                    elif b is None:
                        key.append(a)
                    else:
                        if a[1] != b[0]:
                            dead = True
                            break
                        key.append((a[0], b[1]))
                if dead:
                    continue
                c = c1 * c2
                if sign & 1:
                    c = -c
                key = tuple(key)
                s0 = out.get(key)
                s0 = c if s0 is None else s0 + c
                if s0.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s0
        return GradedOp(self.slots, self.ring, out)

    def __rmul__(self, other):
        # left multiplication by a scalar lands directly on the coefficient
        try:
            c = self.ring.coerce(other)
        except (RingMismatchError, TypeError):
            return NotImplemented
        return GradedOp(self.slots, self.ring,
                        {k: c * v for k, v in self.terms.items()})

    def is_zero(self) -> bool:
        # the term dict is not canonical (identity atoms versus sums of
        # diagonal units), so vanishing is decided on the realization
        return not self.terms or self.realize().is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedOp):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def map_coeffs(self, fn: Callable) -> "GradedOp":
        return GradedOp(self.slots, self.ring,
                        {k: fn(c) for k, c in self.terms.items()})

    def promote(self, slots, placement: tuple) -> "GradedOp":
        """Embed into a larger slot structure, identity on new slots.

        ``placement`` must be strictly increasing so the word order is
        preserved and no crossing signs arise.
        """
        slots = tuple(tuple(g) for g in slots)
        if list(placement) != sorted(placement):
            raise ValueError("placement must be strictly increasing")
        for s, p in enumerate(placement):
            if slots[p] != self.slots[s]:
                raise GradingError("slot grading mismatch in promote")
        out = {}
        for k, c in self.terms.items():
            key = [None] * len(slots)
            for s, p in enumerate(placement):
                key[p] = k[s]
            out[tuple(key)] = c
        return GradedOp(slots, self.ring, out)

    def realize(self, basis: TensorBasis | None = None) -> SpMat:
        """Matrix of the operator on the flat tensor basis."""
        if basis is None:
            basis = TensorBasis(self.slots)
        zero = self.ring.zero()
        data: dict = {}
        n = len(self.slots)
        pieces = [(key, pc, c)
                  for key, cfull in self.terms.items()
                  for pc, c in _parity_parts(cfull)
                  if not c.is_zero()]
        for key, pc, c in pieces:
            for b in range(basis.dim):
                multi = basis.unravel(b)
                sign = 0
                prefix = 0  # parity of input slots strictly left of s
                outm = list(multi)
                dead = False
                for s in range(n):
                    atom = key[s]
                    ps = self.slots[s][multi[s]]
                    if atom is not None:
                        i, j = atom
                        if multi[s] != j:
                            dead = True
                            break
                        outm[s] = i
                        sign += self._atom_parity(s, atom) * prefix
                    prefix += ps
                if dead:
                    continue
                a = basis.ravel(outm)
                if pc:
                    sign += pc * basis.parity(a)
                v = -c if sign & 1 else c
                kent = (a, b)
                s0 = data.get(kent)
                s0 = v if s0 is None else s0 + v
                if s0.is_zero():
                    data.pop(kent, None)
                else:
                    data[kent] = s0
        return SpMat(basis.dim, basis.dim, zero, data)

    def __repr__(self) -> str:
        return f"GradedOp({len(self.slots)} slots, {len(self.terms)} terms)"


def field_grading(m: int, n: int) -> Grading:
    """Parities of the K = m + n field colors: bosons first, then fermions."""
    return (0,) * m + (1,) * n


def aux_grading(m: int, n: int) -> Grading:
    """Parities of the (K+1)-dimensional auxiliary space; the extra index is even."""
    return (0,) * m + (1,) * n + (0,)
