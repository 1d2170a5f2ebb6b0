"""Seeded random instances: rationals, odd supernumbers, points and frames."""

from __future__ import annotations

import random
from typing import Sequence

from gmpy2 import mpq

from .grassmann import GrassmannAlgebra, Parity, Supernumber
from .supermatrix import SuperMatrix

DEFAULT_POOL = 6
DEFAULT_PROBES = 48


class Sampler:
    """Draws exact random values inside one Grassmann context.

    Odd values are ±1 combinations of one or two generators from a fixed pool
    of ``pool`` generators (indices ``0 .. pool-1``); the generators above the
    pool are left to the differentiation probes.
    """

    def __init__(self, seed: int, pool: int = DEFAULT_POOL, probes: int = DEFAULT_PROBES):
        self.seed = seed
        self.rng = random.Random(seed)
        self.alg = GrassmannAlgebra(pool + probes, reserved=pool)
        self.pool = pool

    def rational(self, bound: int = 9, nonzero: bool = False) -> mpq:
        while True:
            q = mpq(self.rng.randint(-bound, bound), self.rng.randint(1, bound))
            if q or not nonzero:
                return q

    def integer(self, bound: int = 3, nonzero: bool = False) -> int:
        while True:
            k = self.rng.randint(-bound, bound)
            if k or not nonzero:
                return k

    def odd(self, integer: bool = False) -> Supernumber:
        if self.pool == 0:
            return self.alg.zero
        k = self.rng.randint(1, min(2, self.pool))
        gens = self.rng.sample(range(self.pool), k)
        out = self.alg.zero
        for g in gens:
            c = self.integer(2, nonzero=True) if integer else self.rng.choice((-1, 1))
            out = out + self.alg.gen(g) * c
        return out

    def even(self, integer: bool = False, nonzero: bool = False) -> Supernumber:
        return self.alg.scalar(self.integer(nonzero=nonzero) if integer else self.rational(nonzero=nonzero))

    def entry(self, parity: Parity, integer: bool = False, nonzero: bool = False) -> Supernumber:
        return self.odd(integer) if parity else self.even(integer, nonzero)

    def matrix(self, row_sig: Sequence[Parity], col_sig: Sequence[Parity], nonzero: bool = False) -> SuperMatrix:
        """Random parity-consistent matrix; ``nonzero`` keeps even entries away from 0."""
        return SuperMatrix.from_function(
            self.alg,
            row_sig,
            col_sig,
            lambda i, j: self.entry((row_sig[i] + col_sig[j]) & 1, nonzero=nonzero),
            check=False,
        )

    def frame(self, row_sig: Sequence[Parity], col_sig: Sequence[Parity]) -> SuperMatrix:
        return self.matrix(row_sig, col_sig, nonzero=True)

    def gl(self, signature: Sequence[Parity]) -> SuperMatrix:
        from .supermatrix import sample_gl

        return sample_gl(self.alg, signature, self)

    def vector(self, signature: Sequence[Parity], parity: Parity) -> SuperMatrix:
        """A row vector (1 x signature) of the given parity."""
        return self.matrix((parity,), signature)

    def covector(self, signature: Sequence[Parity], parity: Parity) -> SuperMatrix:
        """A column covector (signature x 1) of the given parity."""
        return self.matrix(signature, (parity,))

    def choice(self, seq):
        return self.rng.choice(seq)
