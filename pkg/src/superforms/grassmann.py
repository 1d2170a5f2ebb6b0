"""Exact arithmetic in a finite Grassmann algebra over the rationals.

Coefficients are ``gmpy2.mpq`` rationals.  A monomial ``θ_{i1} θ_{i2} ... θ_{ik}`` with ``i1 < i2 < ... < ik`` is stored as
the integer bitmask with bits ``i1, ..., ik`` set (generators are 0-based
internally; the 1-based names θ₁, θ₂, ... are only used for display).
"""

from __future__ import annotations

from gmpy2 import mpq
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

from .errors import ConfigurationError, NotInvertible, ParityError

EVEN = 0
ODD = 1

Parity = int  # 0 or 1, added mod 2


class OddNotInvertible(ParityError, NotInvertible):
    """Raised when inverting an element without a body (e.g. an odd one)."""


@lru_cache(maxsize=1 << 16)
def reorder_sign(a: int, b: int) -> int:
    """Sign of sorting the concatenation of monomials ``a`` and ``b``.

    Returns +1 or -1; the caller must check ``a & b == 0`` first.
    """
    inversions = 0
    while b:
        low = b & -b
        b ^= low
        inversions += (a & ~((low << 1) - 1)).bit_count()
    return -1 if inversions & 1 else 1


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


class GrassmannAlgebra:
    """The algebra Λ[θ₁, ..., θ_N] with a fixed generator budget.

    Generators ``0 .. reserved-1`` hold argument values (sampled points, frames,
    group elements); generators ``reserved .. size-1`` are kept free for the
    nilpotent probes used by differentiation.
    """

    __slots__ = ("size", "reserved", "zero", "one")

    def __init__(self, size: int, reserved: int | None = None):
        if size < 0:
            raise ConfigurationError("generator budget must be non-negative")
        if reserved is None:
            reserved = size
        if not 0 <= reserved <= size:
            raise ConfigurationError("reserved generators exceed the budget")
        self.size = size
        self.reserved = reserved
        self.zero = Supernumber(self, {})
        self.one = Supernumber(self, {0: mpq(1)})

    def __repr__(self) -> str:
        return f"GrassmannAlgebra(size={self.size}, reserved={self.reserved})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GrassmannAlgebra):
            return NotImplemented
        return self.size == other.size and self.reserved == other.reserved

    def __hash__(self) -> int:
        return hash((self.size, self.reserved))

    def scalar(self, value: Union[int, mpq, str]) -> Supernumber:
        q = mpq(value)
        return Supernumber(self, {0: q} if q else {})

    def gen(self, i: int) -> Supernumber:
        """The generator θ_{i+1} (0-based index ``i``)."""
        self._check_index(i)
        return Supernumber(self, {1 << i: mpq(1)})

    def monomial(self, indices: Iterable[int], coeff=1) -> Supernumber:
        """``coeff`` times the product of the given generators, in the given order."""
        result = self.scalar(coeff)
        for i in indices:
            result = result * self.gen(i)
        return result

    def from_terms(self, terms: Mapping[Iterable[int], object]) -> Supernumber:
        """Build from ``{ascending generator tuple: coefficient}``."""
        out: dict[int, mpq] = {}
        for idx, c in terms.items():
            idx = tuple(idx)
            if list(idx) != sorted(set(idx)):
                raise ValueError(f"monomial {idx} is not strictly ascending")
            for i in idx:
                self._check_index(i)
            q = mpq(c)
            if q:
                out[mask_of(idx)] = out.get(mask_of(idx), 0) + q
        return Supernumber(self, {k: v for k, v in out.items() if v})

    def coerce(self, value) -> Supernumber:
        if isinstance(value, Supernumber):
            if value.alg is not self and value.alg != self:
                raise ConfigurationError(
                    f"Grassmann context mismatch: {value.alg!r} vs {self!r}"
                )
            return value
        if isinstance(value, (int, Rational)):
            return self.scalar(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to Supernumber")

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.size:
            raise ConfigurationError(
                f"generator θ{i + 1} is outside the budget of {self.size}"
            )


class Supernumber:
    """Immutable element of a :class:`GrassmannAlgebra`."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: GrassmannAlgebra, terms: dict[int, mpq]):
        self.alg = alg
        self.terms = terms

    # -- inspection -------------------------------------------------------

    @property
    def body(self) -> mpq:
        return self.terms.get(0, mpq(0))

    @property
    def parity(self) -> Parity | None:
        """0 or 1 for homogeneous elements (zero counts as even), else None."""
        parities = {bin(m).count("1") & 1 for m in self.terms}
        if not parities:
            return EVEN
        if len(parities) == 1:
            return parities.pop()
        return None

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> int:
        """Bitmask of all generators occurring in some term."""
        mask = 0
        for m in self.terms:
            mask |= m
        return mask

    def coeff(self, monomial: Iterable[int] | int) -> mpq:
        """Exact coefficient of a monomial given as a set of generator indices.

        The indices are read as a set and normalised to ascending order.
        """
        mask = monomial if isinstance(monomial, int) else mask_of(monomial)
        return self.terms.get(mask, mpq(0))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], mpq]]:
        """Terms in canonical order: by cardinality, then lexicographically."""
        items = [(indices_of(m), c) for m, c in self.terms.items()]
        items.sort(key=lambda t: (len(t[0]), t[0]))
        return items

    def __iter__(self) -> Iterator[tuple[tuple[int, ...], mpq]]:
        return iter(self.sorted_terms())

    # -- arithmetic -------------------------------------------------------

    def _other(self, other) -> Supernumber:
        return self.alg.coerce(other)

    def __add__(self, other) -> Supernumber:
        try:
            other = self._other(other)
        except TypeError:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Supernumber(self.alg, out)

    __radd__ = __add__

    def __neg__(self) -> Supernumber:
        return Supernumber(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> Supernumber:
        try:
            other = self._other(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Supernumber:
        return self._other(other) - self

    def __mul__(self, other) -> Supernumber:
        if isinstance(other, (int, Rational)) and not isinstance(other, Supernumber):
            q = mpq(other)
            if not q:
                return self.alg.zero
            return Supernumber(self.alg, {m: c * q for m, c in self.terms.items()})
        try:
            other = self._other(other)
        except TypeError:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return self.alg.zero
        out: dict[int, mpq] = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                if ma & mb:
                    continue
                if ma and mb:
                    c = ca * cb if reorder_sign(ma, mb) > 0 else -(ca * cb)
                else:
                    c = ca * cb
                m = ma | mb
                v = out.get(m)
                out[m] = c if v is None else v + c
        return Supernumber(self.alg, {m: c for m, c in out.items() if c})

    def __rmul__(self, other) -> Supernumber:
        # only scalars reach here; rationals are central
        if isinstance(other, (int, Rational)):
            return self * other
        return NotImplemented

    def __truediv__(self, other) -> Supernumber:
        if isinstance(other, (int, Rational)) and not isinstance(other, Supernumber):
            return self * (1 / mpq(other))
        return self * self._other(other).inv()

    def __pow__(self, k: int) -> Supernumber:
        if k < 0:
            return self.inv() ** (-k)
        result = self.alg.one
        for _ in range(k):
            result = result * self
        return result

    def inv(self) -> Supernumber:
        """Two-sided inverse by the finite geometric series in the nilpotent part."""
        b = self.body
        if not b:
            if self.parity == ODD:
                raise OddNotInvertible("odd elements are never invertible")
            raise NotInvertible(f"element with zero body is not invertible: {self}")
        inv_b = 1 / b
        nil = Supernumber(self.alg, {m: c * inv_b for m, c in self.terms.items() if m})
        result = self.alg.one
        power = self.alg.one
        neg = -nil
        while True:
            power = power * neg
            if power.is_zero():
                break
            result = result + power
        return result * inv_b

    # -- comparison & display ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Supernumber):
            if other.alg is not self.alg and other.alg != self.alg:
                raise ConfigurationError("comparing Supernumbers from different contexts")
            return self.terms == other.terms
        if isinstance(other, (int, Rational)):
            q = mpq(other)
            return self.terms == ({0: q} if q else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        return f"Supernumber({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, c in self.sorted_terms():
            mono = "".join(f"θ{i + 1}" for i in idx)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{mono}" if c.denominator == 1 else f"({c}){mono}")
        return " + ".join(parts).replace("+ -", "- ")


def supersum(values: Iterable[Supernumber], alg: GrassmannAlgebra) -> Supernumber:
    out = alg.zero
    for v in values:
        out = out + v
    return out
