"""Parity-typed matrices over Supernumbers and the Berezinian.

Index layout convention (used everywhere in the package): within every index
family the even indices come first, then the odd ones.  A signature ``r|s`` is
therefore the tuple ``(0,)*r + (1,)*s``.  Rows of an argument matrix are
vectors and columns are covectors.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .errors import NotInvertible, ParityError, ShapeError
from .grassmann import EVEN, GrassmannAlgebra, Parity, Supernumber

Signature = tuple[Parity, ...]


def sig(even: int, odd: int) -> Signature:
    """The standard signature ``even|odd``."""
    return (EVEN,) * even + (1,) * odd


def sig_dims(signature: Sequence[Parity]) -> tuple[int, int]:
    odd = sum(signature)
    return len(signature) - odd, odd


def even_indices(signature: Sequence[Parity]) -> list[int]:
    return [i for i, p in enumerate(signature) if p == EVEN]


def odd_indices(signature: Sequence[Parity]) -> list[int]:
    return [i for i, p in enumerate(signature) if p != EVEN]


class SuperMatrix:
    """Rectangular matrix whose entry (i, j) has parity ``row_sig[i] + col_sig[j]``."""

    __slots__ = ("alg", "rows", "row_sig", "col_sig")

    def __init__(
        self,
        alg: GrassmannAlgebra,
        rows: Sequence[Sequence[Supernumber]],
        row_sig: Sequence[Parity],
        col_sig: Sequence[Parity],
        check: bool = True,
    ):
        self.alg = alg
        self.rows = tuple(tuple(alg.coerce(x) for x in row) for row in rows) if check else tuple(
            tuple(row) for row in rows
        )
        self.row_sig = tuple(row_sig)
        self.col_sig = tuple(col_sig)
        if check:
            self._validate()

    def _validate(self) -> None:
        if len(self.rows) != len(self.row_sig):
            raise ShapeError(f"{len(self.rows)} rows but row signature of length {len(self.row_sig)}")
        for i, row in enumerate(self.rows):
            if len(row) != len(self.col_sig):
                raise ShapeError(f"row {i} has {len(row)} entries, expected {len(self.col_sig)}")
            for j, x in enumerate(row):
                want = (self.row_sig[i] + self.col_sig[j]) & 1
                got = x.parity
                if x.terms and got != want:
                    raise ParityError(
                        f"entry ({i}, {j}) = {x} should have parity {want}"
                    )

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, alg: GrassmannAlgebra, row_sig: Sequence[Parity], col_sig: Sequence[Parity]) -> "SuperMatrix":
        z = alg.zero
        return cls(alg, [[z] * len(col_sig) for _ in row_sig], row_sig, col_sig, check=False)

    @classmethod
    def identity(cls, alg: GrassmannAlgebra, signature: Sequence[Parity]) -> "SuperMatrix":
        n = len(signature)
        return cls(
            alg,
            [[alg.one if i == j else alg.zero for j in range(n)] for i in range(n)],
            signature,
            signature,
            check=False,
        )

    @classmethod
    def from_function(
        cls,
        alg: GrassmannAlgebra,
        row_sig: Sequence[Parity],
        col_sig: Sequence[Parity],
        fn: Callable[[int, int], object],
        check: bool = True,
    ) -> "SuperMatrix":
        return cls(
            alg,
            [[alg.coerce(fn(i, j)) for j in range(len(col_sig))] for i in range(len(row_sig))],
            row_sig,
            col_sig,
            check=check,
        )

    # -- basic access -----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_sig), len(self.col_sig)

    def __getitem__(self, ij: tuple[int, int]) -> Supernumber:
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> "SuperMatrix":
        return SuperMatrix(self.alg, [self.rows[i]], [self.row_sig[i]], self.col_sig, check=False)

    def col(self, j: int) -> "SuperMatrix":
        return self.sub(range(len(self.row_sig)), [j])

    def sub(self, rows: Iterable[int], cols: Iterable[int]) -> "SuperMatrix":
        rows, cols = list(rows), list(cols)
        return SuperMatrix(
            self.alg,
            [[self.rows[i][j] for j in cols] for i in rows],
            [self.row_sig[i] for i in rows],
            [self.col_sig[j] for j in cols],
            check=False,
        )

    def replace(self, i: int, j: int, value: Supernumber) -> "SuperMatrix":
        rows = [list(r) for r in self.rows]
        rows[i][j] = value
        return SuperMatrix(self.alg, rows, self.row_sig, self.col_sig, check=False)

    def map(self, fn: Callable[[Supernumber], Supernumber]) -> "SuperMatrix":
        return SuperMatrix(
            self.alg, [[fn(x) for x in row] for row in self.rows], self.row_sig, self.col_sig, check=False
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (
            self.row_sig == other.row_sig
            and self.col_sig == other.col_sig
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.row_sig, self.col_sig, self.rows))

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(x) for x in row) for row in self.rows)
        return f"SuperMatrix[{sig_str(self.row_sig)} x {sig_str(self.col_sig)}]({body})"

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._same_shape(other)
        return SuperMatrix(
            self.alg,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            self.row_sig,
            self.col_sig,
            check=False,
        )

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._same_shape(other)
        return SuperMatrix(
            self.alg,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            self.row_sig,
            self.col_sig,
            check=False,
        )

    def __neg__(self) -> "SuperMatrix":
        return self.map(lambda x: -x)

    def scale(self, c: Supernumber) -> "SuperMatrix":
        """Left multiplication of every entry by an even scalar."""
        return self.map(lambda x: c * x)

    def _same_shape(self, other: "SuperMatrix") -> None:
        if self.row_sig != other.row_sig or self.col_sig != other.col_sig:
            raise ShapeError("matrix signatures differ")

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        return sm_mul(self, other)

    def inv(self) -> "SuperMatrix":
        return sm_inv(self)

    def ber(self) -> Supernumber:
        return berezinian(self)

    def is_square_matched(self) -> bool:
        return sig_dims(self.row_sig) == sig_dims(self.col_sig)


def sig_str(signature: Sequence[Parity]) -> str:
    e, o = sig_dims(signature)
    return f"{e}|{o}"


def sm_mul(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    """Row-by-column product."""
    if a.col_sig != b.row_sig:
        raise ShapeError(
            f"cannot multiply {sig_str(a.row_sig)}x{sig_str(a.col_sig)} by "
            f"{sig_str(b.row_sig)}x{sig_str(b.col_sig)}"
        )
    alg = a.alg
    bcols = list(zip(*b.rows)) if b.rows else [()] * len(b.col_sig)
    out = []
    for row in a.rows:
        out_row = []
        for col in bcols:
            acc = alg.zero
            for x, y in zip(row, col):
                if x.terms and y.terms:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return SuperMatrix(alg, out, a.row_sig, b.col_sig, check=False)


def hstack(blocks: Sequence[SuperMatrix]) -> SuperMatrix:
    first = blocks[0]
    for b in blocks[1:]:
        if b.row_sig != first.row_sig:
            raise ShapeError("hstack needs equal row signatures")
    rows = [sum((list(b.rows[i]) for b in blocks), []) for i in range(len(first.row_sig))]
    col_sig = sum((list(b.col_sig) for b in blocks), [])
    return SuperMatrix(first.alg, rows, first.row_sig, col_sig, check=False)


def vstack(blocks: Sequence[SuperMatrix]) -> SuperMatrix:
    first = blocks[0]
    for b in blocks[1:]:
        if b.col_sig != first.col_sig:
            raise ShapeError("vstack needs equal column signatures")
    rows = sum((list(b.rows) for b in blocks), [])
    row_sig = sum((list(b.row_sig) for b in blocks), [])
    return SuperMatrix(first.alg, rows, row_sig, first.col_sig, check=False)


def _invertible(x: Supernumber) -> bool:
    return bool(x.body)


def sm_inv(a: SuperMatrix) -> SuperMatrix:
    """Two-sided inverse by Gauss-Jordan elimination with body pivoting.

    Row operations act from the left, so the computation is valid even though
    odd entries do not commute.  Pivots are always even (a pivot with nonzero
    body cannot be odd), so the elimination never mixes parity blocks wrongly.
    """
    n, m = a.shape
    if n != m or not a.is_square_matched():
        raise ShapeError("only square matrices with matched signatures are invertible")
    alg = a.alg
    work = [list(r) for r in a.rows]
    inv = [[alg.one if i == j else alg.zero for j in range(n)] for i in range(n)]
    for i in range(n):
        piv_row = next((j for j in range(i, n) if _invertible(work[j][i])), None)
        if piv_row is None:
            raise NotInvertible(f"no invertible pivot in column {i}")
        if piv_row != i:
            work[i], work[piv_row] = work[piv_row], work[i]
            inv[i], inv[piv_row] = inv[piv_row], inv[i]
        p_inv = work[i][i].inv()
        work[i] = [p_inv * x for x in work[i]]
        inv[i] = [p_inv * x for x in inv[i]]
        for j in range(n):
            if j == i:
                continue
            f = work[j][i]
            if not f.terms:
                continue
            work[j] = [x - f * y for x, y in zip(work[j], work[i])]
            inv[j] = [x - f * y for x, y in zip(inv[j], inv[i])]
    # rows were permuted together with the identity, so ``inv`` is a left inverse
    return SuperMatrix(alg, inv, a.col_sig, a.row_sig, check=False)


def det_even(a: SuperMatrix) -> Supernumber:
    """Determinant of a square matrix with even (hence commuting) entries."""
    n, m = a.shape
    if n != m:
        raise ShapeError("determinant of a non-square matrix")
    alg = a.alg
    work = [list(r) for r in a.rows]
    result = alg.one
    for i in range(n):
        piv_row = next((j for j in range(i, n) if _invertible(work[j][i])), None)
        if piv_row is None:
            return _det_expand(a)
        if piv_row != i:
            work[i], work[piv_row] = work[piv_row], work[i]
            result = -result
        piv = work[i][i]
        result = result * piv
        p_inv = piv.inv()
        for j in range(i + 1, n):
            f = work[j][i]
            if not f.terms:
                continue
            f = f * p_inv
            work[j] = [x - f * y for x, y in zip(work[j], work[i])]
    return result


def _det_expand(a: SuperMatrix) -> Supernumber:
    # Laplace expansion; only reached when the body of the matrix is singular,
    # where the determinant may still be a nonzero nilpotent.
    rows = a.rows
    n = len(rows)
    alg = a.alg

    def rec(r: int, cols: tuple[int, ...]) -> Supernumber:
        if r == n:
            return alg.one
        acc = alg.zero
        for k, c in enumerate(cols):
            x = rows[r][c]
            if not x.terms:
                continue
            term = x * rec(r + 1, cols[:k] + cols[k + 1:])
            acc = acc - term if k & 1 else acc + term
        return acc

    return rec(0, tuple(range(n)))


def blocks(a: SuperMatrix) -> tuple[SuperMatrix, SuperMatrix, SuperMatrix, SuperMatrix]:
    """The even/odd blocks ``(A00, A01, A10, A11)`` of a matrix."""
    re, ro = even_indices(a.row_sig), odd_indices(a.row_sig)
    ce, co = even_indices(a.col_sig), odd_indices(a.col_sig)
    return a.sub(re, ce), a.sub(re, co), a.sub(ro, ce), a.sub(ro, co)


def berezinian(a: SuperMatrix, route: str = "auto") -> Supernumber:
    """Ber(a) for a square matrix with matched parity signatures.

    ``route="odd"`` uses det(A00 - A01 A11⁻¹ A10) / det(A11); ``route="even"``
    uses det(A00) / det(A11 - A10 A00⁻¹ A01).  ``"auto"`` prefers the odd route
    and falls back to the even one when the odd-odd block is singular.
    """
    if not a.is_square_matched():
        raise ShapeError(
            f"Berezinian needs matched signatures, got {sig_str(a.row_sig)} x {sig_str(a.col_sig)}"
        )
    a00, a01, a10, a11 = blocks(a)
    if route in ("auto", "odd"):
        try:
            d_inv = sm_inv(a11) if a11.shape[0] else a11
        except NotInvertible:
            if route == "odd":
                raise
        else:
            schur = a00 - a01 @ d_inv @ a10 if a11.shape[0] else a00
            return det_even(schur) * det_even(a11).inv()
    if route not in ("auto", "even"):
        raise ValueError(f"unknown route {route!r}")
    a_inv = sm_inv(a00) if a00.shape[0] else a00
    schur = a11 - a10 @ a_inv @ a01 if a00.shape[0] else a11
    return det_even(a00) * det_even(schur).inv()


def pairing(v: SuperMatrix, alpha: SuperMatrix) -> Supernumber:
    """⟨v, α⟩ = Σ_A v^A α_A for a row vector and a column covector."""
    if v.shape[0] != 1 or alpha.shape[1] != 1:
        raise ShapeError("pairing needs a single row and a single column")
    return sm_mul(v, alpha)[0, 0]


def sample_gl(alg: GrassmannAlgebra, signature: Sequence[Parity], sampler) -> SuperMatrix:
    """A random parity-consistent element of GL(signature).

    Even entries have small integer bodies; odd entries are small integer
    combinations of fresh generators taken from ``sampler``.  Resamples until
    both diagonal blocks have invertible bodies.
    """
    for _ in range(100):
        g = SuperMatrix.from_function(
            alg,
            signature,
            signature,
            lambda i, j: sampler.entry((signature[i] + signature[j]) & 1, integer=True),
            check=False,
        )
        a00, _, _, a11 = blocks(g)
        try:
            if a00.shape[0]:
                sm_inv(a00)
            if a11.shape[0]:
                sm_inv(a11)
        except NotInvertible:
            continue
        return g
    raise NotInvertible("could not sample an invertible matrix")  # pragma: no cover
