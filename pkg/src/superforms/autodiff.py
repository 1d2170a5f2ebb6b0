"""Exact left derivatives through nilpotent probes.

To differentiate an evaluator ``f`` at a point, the point is shifted by
``probe * direction`` where the probe is a fresh even square-zero element
``θ_a θ_{a+1}`` or a fresh odd generator ``θ_c``.  Because the probe squares to
zero, ``f(point + probe*C) = f(point) + probe * Σ C_slot ∂f/∂slot`` holds exactly
and the derivative is read off as the left coefficient of the probe.

Probe generators come from the part of the Grassmann budget above
``alg.reserved``.  A context variable tracks how many of them are in use by the
enclosing derivative calls, so nested derivatives always get fresh probes and
siblings reuse the same ones.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Callable, Iterator, Mapping, Optional

from .errors import ConfigurationError, DomainError, NotInvertible
from .grassmann import EVEN, GrassmannAlgebra, Parity, Supernumber
from .supermatrix import SuperMatrix

_probes_in_use: ContextVar[int] = ContextVar("_probes_in_use", default=0)


@dataclass(frozen=True)
class Point:
    """Arguments of an evaluator: the matrix ``P`` and an optional base point ``x``.

    ``x`` is a 1 x (n|m) row of coordinate values; it is ``None`` for purely
    algebraic forms.
    """

    P: SuperMatrix
    x: Optional[SuperMatrix] = None

    def matrix(self, mid: str) -> SuperMatrix:
        m = self.P if mid == "P" else self.x
        if m is None:
            raise KeyError(f"point has no matrix {mid!r}")
        return m

    def with_matrix(self, mid: str, m: SuperMatrix) -> "Point":
        return Point(m, self.x) if mid == "P" else Point(self.P, m)

    @property
    def alg(self) -> GrassmannAlgebra:
        return self.P.alg


Evaluator = Callable[[Point], Supernumber]
Slot = tuple[str, int, int]


@dataclass(frozen=True)
class ProbeAllocation:
    """Generators reserved for one derivative evaluation."""

    even_probes: tuple[tuple[int, int], ...] = ()
    odd_probes: tuple[int, ...] = ()

    def generators(self) -> tuple[int, ...]:
        out = [g for pair in self.even_probes for g in pair]
        return tuple(out) + self.odd_probes


@contextmanager
def _allocate(alg: GrassmannAlgebra, count: int) -> Iterator[int]:
    used = _probes_in_use.get()
    start = alg.reserved + used
    if start + count > alg.size:
        raise ConfigurationError(
            f"probe budget exhausted: need generators up to θ{start + count}, budget is {alg.size}"
        )
    token = _probes_in_use.set(used + count)
    try:
        yield start
    finally:
        _probes_in_use.reset(token)


def slot_parity(point: Point, slot: Slot) -> Parity:
    mid, i, j = slot
    m = point.matrix(mid)
    return (m.row_sig[i] + m.col_sig[j]) & 1


def _extract_even(value: Supernumber, a: int) -> Supernumber:
    pair = (1 << a) | (1 << (a + 1))
    out = {}
    for mask, c in value.terms.items():
        hit = mask & pair
        if hit == pair:
            out[mask ^ pair] = c
        elif hit:
            raise ConfigurationError("probe generator leaked into a derivative")
    return Supernumber(value.alg, out)


def _extract_odd(value: Supernumber, c: int) -> Supernumber:
    bit = 1 << c
    below = bit - 1
    out = {}
    for mask, coeff in value.terms.items():
        if mask & bit:
            rest = mask ^ bit
            out[rest] = -coeff if (rest & below).bit_count() & 1 else coeff
    return Supernumber(value.alg, out)


def _shift(point: Point, probe: Supernumber, direction: Mapping[str, SuperMatrix]) -> Point:
    for mid, d in direction.items():
        base = point.matrix(mid)
        if d.row_sig != base.row_sig or d.col_sig != base.col_sig:
            raise ConfigurationError(f"direction for {mid!r} has the wrong shape")
        shifted = SuperMatrix(
            base.alg,
            [
                [x + probe * y if y.terms else x for x, y in zip(rb, rd)]
                for rb, rd in zip(base.rows, d.rows)
            ],
            base.row_sig,
            base.col_sig,
            check=False,
        )
        point = point.with_matrix(mid, shifted)
    return point


def directional(
    evaluator: Evaluator,
    point: Point,
    direction: Mapping[str, SuperMatrix],
    offset: Parity,
) -> Supernumber:
    """Σ_slot C_slot ∂f/∂slot with the coefficients written to the left.

    Every entry of the direction ``C`` must have parity ``slot parity + offset``;
    the probe parity is ``offset`` so that the shifted point stays
    parity-consistent.
    """
    alg = point.alg
    if offset == EVEN:
        with _allocate(alg, 2) as a:
            probe = Supernumber(alg, {(1 << a) | (1 << (a + 1)): 1})
            value = _evaluate(evaluator, _shift(point, probe, direction))
            return _extract_even(value, a)
    with _allocate(alg, 1) as c:
        probe = alg.gen(c)
        value = _evaluate(evaluator, _shift(point, probe, direction))
        return _extract_odd(value, c)


def _evaluate(evaluator: Evaluator, point: Point) -> Supernumber:
    try:
        return evaluator(point)
    except NotInvertible as exc:
        raise DomainError(str(exc)) from exc


def unit_direction(point: Point, slot: Slot) -> dict[str, SuperMatrix]:
    mid, i, j = slot
    m = point.matrix(mid)
    alg = m.alg
    d = SuperMatrix.zeros(alg, m.row_sig, m.col_sig).replace(i, j, alg.one)
    return {mid: d}


def deriv(evaluator: Evaluator, point: Point, slot: Slot) -> Supernumber:
    """Left partial derivative of ``evaluator`` with respect to one matrix entry."""
    parity = slot_parity(point, slot)
    d = unit_direction(point, slot)
    # a unit direction has even entries, so the probe must carry the slot parity
    return directional(evaluator, point, d, parity)


def deriv2(evaluator: Evaluator, point: Point, slot1: Slot, slot2: Slot) -> Supernumber:
    """∂_{slot1} ∂_{slot2} f: the derivative along ``slot2`` is taken first."""
    return deriv(lambda pt: deriv(evaluator, pt, slot2), point, slot1)


def gradient(evaluator: Evaluator, point: Point, mid: str = "P") -> list[list[Supernumber]]:
    m = point.matrix(mid)
    return [[deriv(evaluator, point, (mid, i, j)) for j in range(m.shape[1])] for i in range(m.shape[0])]
