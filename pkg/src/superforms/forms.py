"""Straight, dual and mixed forms on a superspace V of dimension n|m.

A form is represented extensionally: a :class:`FormSignature` plus an exact
evaluator taking the argument matrix (and, for form fields on a patch, the
base point ``x``) to the coefficient of the value in the trivialised Vol V.

Argument matrices, with rows = vectors and columns = covectors:

* straight ``r|s``:  v, rows F (r even, s odd) x columns A (n even, m odd)
* dual ``p|q``:      p, rows A x columns K (p even, q odd)
* mixed ``p|q, r|s``: p stacked over w, rows A then F x columns K
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Optional, Sequence

from .autodiff import Evaluator, Point, deriv, deriv2
from .errors import InvalidForm, ShapeError
from .grassmann import Parity, Supernumber
from .supermatrix import SuperMatrix, berezinian, sig, sm_mul, vstack

STRAIGHT = "straight"
DUAL = "dual"
MIXED = "mixed"


@dataclass(frozen=True)
class FormSignature:
    n: int
    m: int
    kind: str
    p: int = 0
    q: int = 0
    r: int = 0
    s: int = 0

    def __post_init__(self):
        if min(self.n, self.m, self.p, self.q, self.r, self.s) < 0:
            raise ShapeError(f"negative dimension in {self}")
        if self.kind == STRAIGHT:
            if self.p or self.q:
                raise ShapeError("straight forms have no codegree")
            if self.s > self.m:
                raise ShapeError(f"straight form needs 0 <= s <= m, got s={self.s}, m={self.m}")
        elif self.kind == DUAL:
            if self.r or self.s:
                raise ShapeError("dual forms have no additional degree")
            if self.q > self.m:
                raise ShapeError(f"dual form needs 0 <= q <= m, got q={self.q}, m={self.m}")
        elif self.kind == MIXED:
            if not self.s <= self.q <= self.m + self.s:
                raise ShapeError(f"mixed form needs s <= q <= m + s, got {self}")
        else:
            raise ShapeError(f"unknown form kind {self.kind!r}")

    @classmethod
    def straight(cls, n: int, m: int, r: int, s: int) -> "FormSignature":
        return cls(n, m, STRAIGHT, r=r, s=s)

    @classmethod
    def dual(cls, n: int, m: int, p: int, q: int) -> "FormSignature":
        return cls(n, m, DUAL, p=p, q=q)

    @classmethod
    def mixed(cls, n: int, m: int, p: int, q: int, r: int, s: int) -> "FormSignature":
        return cls(n, m, MIXED, p=p, q=q, r=r, s=s)

    def as_mixed(self) -> "FormSignature":
        """A dual form is the same thing as a mixed form with r|s = 0|0."""
        if self.kind == DUAL:
            return FormSignature.mixed(self.n, self.m, self.p, self.q, 0, 0)
        if self.kind != MIXED:
            raise ShapeError("straight forms are not mixed forms")
        return self

    def with_degrees(self, **kw) -> "FormSignature":
        base = self.as_mixed() if self.kind == DUAL else self
        fields = dict(n=base.n, m=base.m, kind=base.kind, p=base.p, q=base.q, r=base.r, s=base.s)
        fields.update(kw)
        return FormSignature(**fields)

    @property
    def is_straight(self) -> bool:
        return self.kind == STRAIGHT

    @property
    def row_sig(self) -> tuple[Parity, ...]:
        if self.kind == STRAIGHT:
            return sig(self.r, self.s)
        return sig(self.n, self.m) + sig(self.r, self.s)

    @property
    def col_sig(self) -> tuple[Parity, ...]:
        if self.kind == STRAIGHT:
            return sig(self.n, self.m)
        return sig(self.p, self.q)

    @property
    def stable_degree(self) -> tuple[int, int]:
        """k|l = r + n - p | s + m - q (for straight forms simply r|s)."""
        if self.kind == STRAIGHT:
            return self.r, self.s
        return self.r + self.n - self.p, self.s + self.m - self.q

    # index bookkeeping for the argument matrix; derived from the signature only

    @property
    def a_rows(self) -> list[int]:
        return [] if self.kind == STRAIGHT else list(range(self.n + self.m))

    @property
    def f_rows(self) -> list[int]:
        off = 0 if self.kind == STRAIGHT else self.n + self.m
        return list(range(off, off + self.r + self.s))

    @property
    def f_even(self) -> list[int]:
        off = 0 if self.kind == STRAIGHT else self.n + self.m
        return list(range(off, off + self.r))

    @property
    def f_odd(self) -> list[int]:
        off = (0 if self.kind == STRAIGHT else self.n + self.m) + self.r
        return list(range(off, off + self.s))

    @property
    def k_even(self) -> list[int]:
        return list(range(self.p))

    @property
    def k_odd(self) -> list[int]:
        return list(range(self.p, self.p + self.q))

    def to_json(self) -> dict:
        return dict(n=self.n, m=self.m, kind=self.kind, p=self.p, q=self.q, r=self.r, s=self.s)

    @classmethod
    def from_json(cls, data: dict) -> "FormSignature":
        return cls(**data)

    def __str__(self) -> str:
        if self.kind == STRAIGHT:
            return f"E^{self.r}|{self.s}(V^{self.n}|{self.m})"
        if self.kind == DUAL:
            return f"E_{self.p}|{self.q}(V^{self.n}|{self.m})"
        return f"E_{self.p}|{self.q}^{self.r}|{self.s}(V^{self.n}|{self.m})"


@dataclass(frozen=True, eq=False)
class Form:
    """A form: its signature, an exact evaluator and an optional replay recipe."""

    signature: FormSignature
    evaluator: Evaluator
    recipe: Optional[dict] = None
    parity: Parity = 0

    def __call__(self, P: SuperMatrix, x: Optional[SuperMatrix] = None) -> Supernumber:
        return self.at(Point(P, x))

    def at(self, point: Point) -> Supernumber:
        sg = self.signature
        if point.P.row_sig != sg.row_sig or point.P.col_sig != sg.col_sig:
            raise ShapeError(f"argument of shape {point.P.row_sig} x {point.P.col_sig} does not fit {sg}")
        return self.evaluator(point)


def _check_frame(frame: SuperMatrix, row_sig, col_sig, what: str) -> None:
    if frame.row_sig != tuple(row_sig) or frame.col_sig != tuple(col_sig):
        raise ShapeError(f"{what} frame has shape {frame.row_sig} x {frame.col_sig}")
    frame._validate()


FrameLike = Any  # a constant SuperMatrix or a callable x -> SuperMatrix


def _frame_at(frame: FrameLike, point: Point) -> SuperMatrix:
    return frame(point.x) if callable(frame) else frame


def make_straight_ber_form(alpha: SuperMatrix, n: int, m: int, recipe: Optional[dict] = None) -> Form:
    """L(v) = Ber(⟨v_F, α^G⟩) for a frame of covector columns α (shape n|m x r|s)."""
    r = sum(1 for t in alpha.col_sig if t == 0)
    s = len(alpha.col_sig) - r
    if alpha.col_sig != sig(r, s):
        raise ShapeError("frame columns must be ordered even first")
    _check_frame(alpha, sig(n, m), sig(r, s), "covector")
    signature = FormSignature.straight(n, m, r, s)

    def evaluate(pt: Point) -> Supernumber:
        return berezinian(sm_mul(pt.P, alpha))

    return Form(signature, evaluate, recipe or {"op": "straight_ber", "n": n, "m": m, "frame": alpha})


def make_dual_ber_form(frame: SuperMatrix, n: int, m: int, recipe: Optional[dict] = None) -> Form:
    """Λ(p) = Ber(⟨u_K, p^L⟩) for a frame of vector rows u (shape p|q x n|m)."""
    p = sum(1 for t in frame.row_sig if t == 0)
    q = len(frame.row_sig) - p
    if frame.row_sig != sig(p, q):
        raise ShapeError("frame rows must be ordered even first")
    _check_frame(frame, sig(p, q), sig(n, m), "vector")
    signature = FormSignature.dual(n, m, p, q)

    def evaluate(pt: Point) -> Supernumber:
        return berezinian(sm_mul(frame, pt.P))

    return Form(signature, evaluate, recipe or {"op": "dual_ber", "n": n, "m": m, "frame": frame})


def make_mixed_ber_form(frame: SuperMatrix, n: int, m: int, r: int, s: int) -> Form:
    """Λ(p, w) = Ber of the square matrix (u p ; w), with u of shape (p-r|q-s) x n|m.

    This is the Berezinian dual form on V ⊕ R^{r|s} whose frame contains the
    standard basis of R^{r|s}; it satisfies the shear law in w.
    """
    p0 = sum(1 for t in frame.row_sig if t == 0)
    q0 = len(frame.row_sig) - p0
    _check_frame(frame, sig(p0, q0), sig(n, m), "vector")
    signature = FormSignature.mixed(n, m, p0 + r, q0 + s, r, s)
    nm = n + m

    def evaluate(pt: Point) -> Supernumber:
        P = pt.P
        top = sm_mul(frame, P.sub(range(nm), range(P.shape[1])))
        bottom = P.sub(range(nm, P.shape[0]), range(P.shape[1]))
        return berezinian(vstack([top, bottom]))

    return Form(signature, evaluate, {"op": "mixed_ber", "n": n, "m": m, "r": r, "s": s, "frame": frame})


def _extended_to_family_rows(n: int, m: int, r: int, s: int) -> list[int]:
    """Row positions, in the even-first layout of V ⊕ R^{r|s}, of the mixed rows A, F."""
    # extended layout: V-even (n), R-even (r), V-odd (m), R-odd (s)
    v_even = list(range(n))
    r_even = list(range(n, n + r))
    v_odd = list(range(n + r, n + r + m))
    r_odd = list(range(n + r + m, n + r + m + s))
    return v_even + v_odd + r_even + r_odd


def lift_to_mixed(f: Form, n: int, m: int, r: int, s: int, validate_with=None) -> Form:
    """Read a dual form on V ⊕ R^{r|s} as a mixed form on V of additional degree r|s.

    ``f`` must be a dual form on a space of dimension (n+r)|(m+s) whose rows use
    the even-first layout of the extended space.  When ``validate_with`` (a
    Sampler) is given, the shear law is checked on a few samples and
    :class:`InvalidForm` is raised on violation.
    """
    fs = f.signature
    if fs.kind not in ("dual", "mixed") or (fs.kind == "mixed" and (fs.r or fs.s)):
        raise ShapeError("lift_to_mixed needs a dual form")
    if (fs.n, fs.m) != (n + r, m + s):
        raise ShapeError(f"dual form lives on {fs.n}|{fs.m}, expected {n + r}|{m + s}")
    signature = FormSignature.mixed(n, m, fs.p, fs.q, r, s)
    family_pos = _extended_to_family_rows(n, m, r, s)
    # family row i sits at extended row family_pos[i]; invert to read extended rows
    ext_from_family = [0] * len(family_pos)
    for fam, ext in enumerate(family_pos):
        ext_from_family[ext] = fam

    def evaluate(pt: Point) -> Supernumber:
        P = pt.P
        ext = P.sub(ext_from_family, range(P.shape[1]))
        return f.at(Point(ext, pt.x))

    out = Form(signature, evaluate, {"op": "lift", "n": n, "m": m, "r": r, "s": s, "of": f.recipe}, f.parity)
    if validate_with is not None:
        for _ in range(3):
            pt = sample_point(out, validate_with)
            g = validate_with.gl(sig(r, s))
            a = validate_with.matrix(sig(n, m), sig(r, s))
            if not check_homogeneity(out, pt, g, side="left", shear=a):
                raise InvalidForm("the lifted dual form violates the shear law")
    return out


def linear_combination(coeffs: Sequence[Any], forms: Sequence[Form]) -> Form:
    """Pointwise Σ c_i f_i with the (constant) coefficients on the left."""
    if not forms:
        raise ShapeError("empty linear combination")
    signature = forms[0].signature
    for f in forms[1:]:
        if f.signature != signature:
            raise ShapeError(f"signature mismatch: {f.signature} vs {signature}")
    if len(coeffs) != len(forms):
        raise ShapeError("coefficient count differs from form count")
    coeffs = list(coeffs)

    def evaluate(pt: Point) -> Supernumber:
        alg = pt.alg
        acc = alg.zero
        for c, f in zip(coeffs, forms):
            val = f.at(pt)
            acc = acc + alg.coerce(c) * val
        return acc

    return Form(
        signature,
        evaluate,
        {"op": "lincomb", "coeffs": coeffs, "of": [f.recipe for f in forms]},
        forms[0].parity,
    )


def zero_form(signature: FormSignature) -> Form:
    return Form(signature, lambda pt: pt.alg.zero, {"op": "zero", "signature": signature.to_json()})


# -- sampling points ---------------------------------------------------------

def sample_point(form: Form, sampler, x_dims: Optional[tuple[int, int]] = None, retries: int = 50) -> Point:
    """A random point inside the domain of ``form``.

    Resamples (bounded) until the evaluator succeeds, i.e. until every inverse
    it needs has a nonzero body.  ``x_dims`` requests a base point on a patch.
    """
    from .errors import DomainError, NotInvertible

    sg = form.signature
    last: Exception | None = None
    for _ in range(retries):
        P = sampler.matrix(sg.row_sig, sg.col_sig)
        x = sampler.matrix((0,), sig(*x_dims)) if x_dims else None
        pt = Point(P, x)
        try:
            form.at(pt)
        except (DomainError, NotInvertible) as exc:
            last = exc
            continue
        return pt
    raise DomainError(f"no admissible point found for {sg} after {retries} tries: {last}")


# -- defining-equation checkers ----------------------------------------------

def check_homogeneity(
    form: Form,
    point: Point,
    group_element: SuperMatrix,
    side: str = "auto",
    shear: Optional[SuperMatrix] = None,
) -> bool:
    """Exact check of the Berezinian homogeneity law at ``point``.

    * straight forms: L(g v) = L(v) Ber g
    * dual / mixed, ``side="right"``: Λ(p h, w h) = Λ(p, w) Ber h
    * mixed, ``side="left"``: Λ(p + a w, g w) = Λ(p, w) Ber g  (``shear`` = a)
    """
    sg = form.signature
    P = point.P
    if side == "auto":
        side = "left" if sg.kind == STRAIGHT else "right"
    ber = berezinian(group_element)
    if sg.kind == STRAIGHT:
        moved = sm_mul(group_element, P)
    elif side == "right":
        moved = sm_mul(P, group_element)
    else:
        a_rows, f_rows = sg.a_rows, sg.f_rows
        cols = range(P.shape[1])
        p = P.sub(a_rows, cols)
        w = P.sub(f_rows, cols)
        if shear is not None:
            p = p + sm_mul(shear, w)
        moved = vstack([p, sm_mul(group_element, w)])
    return form.at(Point(moved, point.x)) == form.at(point) * ber


def pde_residual(form: Form, point: Point, i: int, j: int, k: int, l: int, table=None) -> Supernumber:
    """∂²Λ/∂P_i^k ∂P_j^l + (-1)^{ij + (i+j)l} ∂²Λ/∂P_j^k ∂P_i^l (parities of the indices).

    This single pattern covers the symmetry systems of straight forms (rows are
    the vector labels F, G) as well as dual and mixed forms (rows A, B or F, G).
    """
    P = point.P
    ti, tj, tl = P.row_sig[i], P.row_sig[j], P.col_sig[l]
    sign = -1 if (ti * tj + (ti + tj) * tl) & 1 else 1
    if table is None:
        first = deriv2(form.at, point, ("P", i, k), ("P", j, l))
        second = deriv2(form.at, point, ("P", j, k), ("P", i, l))
    else:
        first = table[(i, k), (j, l)]
        second = table[(j, k), (i, l)]
    return first + second * sign


def second_derivative_table(form: Form, point: Point) -> dict:
    rows, cols = point.P.shape
    slots = [(i, k) for i in range(rows) for k in range(cols)]
    table = {}
    for s1 in slots:
        inner = lambda pt, s1=s1: deriv(form.at, pt, ("P",) + s1)  # noqa: E731
        for s2 in slots:
            table[s2, s1] = deriv(inner, point, ("P",) + s2)
    return table


def check_symmetry_pde(form: Form, point: Point, slots: Optional[tuple[int, int, int, int]] = None) -> bool:
    """Exact check of the second-order symmetry system.

    With ``slots=(i, j, k, l)`` only that equation is checked; otherwise every
    row pair and column pair is.
    """
    if slots is not None:
        return pde_residual(form, point, *slots).is_zero()
    return not pde_violations(form, point)


def pde_violations(form: Form, point: Point) -> list[tuple[int, int, int, int]]:
    rows, cols = point.P.shape
    table = second_derivative_table(form, point)
    bad = []
    for i, j in itertools.combinations_with_replacement(range(rows), 2):
        for k, l in itertools.product(range(cols), repeat=2):
            if not pde_residual(form, point, i, j, k, l, table).is_zero():
                bad.append((i, j, k, l))
    return bad
