"""Operators on forms: stability and duality isomorphisms, e(α), e(u), e_α, i_u.

Every operator is a :class:`FormOperator`; applying it to a :class:`Form`
returns a new form whose evaluator is built from the old one.  Index ranges
(which rows are "new", which columns are "old", ...) are always re-derived from
the signature of the form being acted on, never captured up front.

First-order differential parts are computed as one directional derivative:
``Σ c_slot ∂Λ/∂slot`` where all coefficients ``c_slot`` share the same parity
offset relative to their slots (see :func:`superforms.autodiff.directional`).
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Callable, Optional

from .autodiff import Point, directional
from .errors import DegreeError, ShapeError
from .forms import STRAIGHT, Form, FormSignature
from .grassmann import EVEN, Parity, Supernumber
from .supermatrix import SuperMatrix, berezinian, sm_inv, sm_mul, vstack


@dataclass(frozen=True)
class Mutations:
    """Deliberate sign errors used to prove that the verification suites can fail."""

    flip_e_cov_sign: bool = False
    drop_e_vec_third_term: bool = False

    def any(self) -> bool:
        return self.flip_e_cov_sign or self.drop_e_vec_third_term


_mutations: ContextVar[Mutations] = ContextVar("_mutations", default=Mutations())


@contextmanager
def mutations(**flags):
    token = _mutations.set(Mutations(**flags))
    try:
        yield
    finally:
        _mutations.reset(token)


@dataclass(frozen=True)
class FormOperator:
    name: str
    parity: Parity
    signature_map: Callable[[FormSignature], FormSignature]
    build: Callable[[Form, FormSignature], Callable[[Point], Supernumber]]
    params: Optional[dict] = None

    def __call__(self, form: Form) -> Form:
        out_sig = self.signature_map(form.signature)
        evaluator = self.build(form, out_sig)
        recipe = {"op": self.name, **(self.params or {}), "of": form.recipe}
        return Form(out_sig, evaluator, recipe, (form.parity + self.parity) & 1)

    def __matmul__(self, other: "FormOperator") -> "FormOperator":
        """Composition: ``(A @ B)(f) = A(B(f))``."""
        return FormOperator(
            f"{self.name}*{other.name}",
            (self.parity + other.parity) & 1,
            lambda sg: self.signature_map(other.signature_map(sg)),
            lambda f, out: self(other(f)).evaluator,
            {"left": self.params, "right": other.params},
        )


def _mixed(sg: FormSignature, what: str) -> FormSignature:
    if sg.kind == STRAIGHT:
        raise ShapeError(f"{what} acts on dual or mixed forms, got {sg}")
    return sg.as_mixed()


def _datum_parity(datum, parity: Optional[Parity], axis: str) -> Parity:
    if parity is not None:
        return parity
    if hasattr(datum, "parity"):
        return datum.parity
    return datum.row_sig[0] if axis == "row" else datum.col_sig[0]


def _value_at(vec, point: Point) -> SuperMatrix:
    """Constant vectors/covectors, or fields evaluated at the base point."""
    return vec(point.x) if callable(vec) else vec


# -- stability isomorphisms ---------------------------------------------------

def _sigma_layout(out: FormSignature, k: int, l: int):
    """Old/new rows and columns of an argument of ``out`` = σ_{k|l}(input)."""
    nm = out.n + out.m
    r, s = out.r - k, out.s - l
    p, q = out.p - k, out.q - l
    old_cols = list(range(p)) + list(range(p + k, p + k + q))
    new_cols = list(range(p, p + k)) + list(range(p + k + q, p + k + q + l))
    old_f = list(range(nm, nm + r)) + list(range(nm + r + k, nm + r + k + s))
    new_f = list(range(nm + r, nm + r + k)) + list(range(nm + r + k + s, nm + r + k + s + l))
    return list(range(nm)), old_f, new_f, old_cols, new_cols


def sigma(k: int, l: int) -> FormOperator:
    """σ_{k|l}: E_{p|q}^{r|s} → E_{p+k|q+l}^{r+k|s+l}.

    (σΛ)(p1 p2; w11 w12; w21 w22) = Λ(p1 - p2 w22⁻¹ w21; w11 - w12 w22⁻¹ w21) Ber w22,
    the new rows and columns being the last k even and last l odd ones.
    """

    def sig_map(sg: FormSignature) -> FormSignature:
        sg = _mixed(sg, "σ")
        return sg.with_degrees(p=sg.p + k, q=sg.q + l, r=sg.r + k, s=sg.s + l)

    def build(form: Form, out: FormSignature):
        if k == 0 and l == 0:
            return lambda pt: form.at(Point(pt.P, pt.x))
        a_rows, old_f, new_f, old_cols, new_cols = _sigma_layout(out, k, l)
        top_rows = a_rows + old_f

        def evaluate(pt: Point) -> Supernumber:
            P = pt.P
            w22 = P.sub(new_f, new_cols)
            w21 = P.sub(new_f, old_cols)
            right = P.sub(top_rows, new_cols)
            reduced = P.sub(top_rows, old_cols) - sm_mul(sm_mul(right, sm_inv(w22)), w21)
            return form.at(Point(reduced, pt.x)) * berezinian(w22)

        return evaluate

    return FormOperator("sigma", EVEN, sig_map, build, {"k": k, "l": l})


def sigma_inv(k: int, l: int) -> FormOperator:
    """σ_{k|l}⁻¹: evaluate on (p 0; w 0; 0 1)."""

    def sig_map(sg: FormSignature) -> FormSignature:
        sg = _mixed(sg, "σ⁻¹")
        if sg.p < k or sg.q < l or sg.r < k or sg.s < l:
            raise DegreeError(f"σ_{k}|{l}⁻¹ cannot act on {sg}")
        return sg.with_degrees(p=sg.p - k, q=sg.q - l, r=sg.r - k, s=sg.s - l)

    def build(form: Form, out: FormSignature):
        inner = form.signature.as_mixed()
        a_rows, old_f, new_f, old_cols, new_cols = _sigma_layout(inner, k, l)
        top_rows = a_rows + old_f

        def evaluate(pt: Point) -> Supernumber:
            P = pt.P
            alg = P.alg
            rows = [[alg.zero] * len(inner.col_sig) for _ in inner.row_sig]
            for i_src, i_dst in enumerate(top_rows):
                for j_src, j_dst in enumerate(old_cols):
                    rows[i_dst][j_dst] = P.rows[i_src][j_src]
            for i_dst, j_dst in zip(new_f, new_cols):
                rows[i_dst][j_dst] = alg.one
            big = SuperMatrix(alg, rows, inner.row_sig, inner.col_sig, check=False)
            return form.at(Point(big, pt.x))

        return evaluate

    return FormOperator("sigma_inv", EVEN, sig_map, build, {"k": k, "l": l})


# -- straight <-> mixed ---------------------------------------------------------

def tau() -> FormOperator:
    """τ: E^{r|s} → E_{n|m}^{r|s}, (τL)(p; w) = L(w p⁻¹) Ber p."""

    def sig_map(sg: FormSignature) -> FormSignature:
        if sg.kind != STRAIGHT:
            raise ShapeError(f"τ acts on straight forms, got {sg}")
        return FormSignature.mixed(sg.n, sg.m, sg.n, sg.m, sg.r, sg.s)

    def build(form: Form, out: FormSignature):
        a_rows, f_rows = out.a_rows, out.f_rows
        cols = range(len(out.col_sig))

        def evaluate(pt: Point) -> Supernumber:
            p = pt.P.sub(a_rows, cols)
            w = pt.P.sub(f_rows, cols)
            v = sm_mul(w, sm_inv(p))
            return form.at(Point(v, pt.x)) * berezinian(p)

        return evaluate

    return FormOperator("tau", EVEN, sig_map, build)


def tau_inv() -> FormOperator:
    """τ⁻¹: E_{n|m}^{r|s} → E^{r|s}, (τ⁻¹Λ)(v) = Λ(1; v)."""

    def sig_map(sg: FormSignature) -> FormSignature:
        sg = _mixed(sg, "τ⁻¹")
        if (sg.p, sg.q) != (sg.n, sg.m):
            raise DegreeError(f"τ⁻¹ needs codegree n|m, got {sg}")
        return FormSignature.straight(sg.n, sg.m, sg.r, sg.s)

    def build(form: Form, out: FormSignature):
        def evaluate(pt: Point) -> Supernumber:
            one = SuperMatrix.identity(pt.P.alg, pt.P.col_sig)
            return form.at(Point(vstack([one, pt.P]), pt.x))

        return evaluate

    return FormOperator("tau_inv", EVEN, sig_map, build)


# -- e(α), e(u) on mixed forms ----------------------------------------------------

def _sign(parity_sum: int) -> int:
    return -1 if parity_sum & 1 else 1


def e_cov(alpha, parity: Optional[Parity] = None) -> FormOperator:
    """e(α): E_{p|q}^{r|s} → E_{p|q}^{r+1|s},

    e(α)Λ = (-1)^r α_A w_{r+1}^K (-1)^{α̃Ã} ∂Λ/∂p_A^K.

    ``alpha`` is a column covector (n|m x 1) or a callable giving one at the
    base point (a covector field, e.g. df).
    """
    a_par = _datum_parity(alpha, parity, "col")
    flip = _mutations.get().flip_e_cov_sign

    def sig_map(sg: FormSignature) -> FormSignature:
        sg = _mixed(sg, "e(α)")
        return sg.with_degrees(r=sg.r + 1)

    def build(form: Form, out: FormSignature):
        inner = form.signature.as_mixed()
        nm = inner.n + inner.m
        new_row = nm + inner.r
        keep = [i for i in range(len(out.row_sig)) if i != new_row]
        cols = range(len(out.col_sig))
        a_sig = inner.row_sig[:nm]
        sign_r = _sign(inner.r) * (-1 if flip else 1)

        def evaluate(pt: Point) -> Supernumber:
            P = pt.P
            alg = P.alg
            a = _value_at(alpha, pt)
            w_new = P.rows[new_row]
            base = P.sub(keep, cols)
            c = [[alg.zero] * len(inner.col_sig) for _ in inner.row_sig]
            for A in range(nm):
                aA = a.rows[A][0]
                if not aA.terms:
                    continue
                if (a_par * a_sig[A]) & 1:
                    aA = -aA
                c[A] = [aA * wk for wk in w_new]
            direction = SuperMatrix(alg, c, inner.row_sig, inner.col_sig, check=False)
            d = directional(form.at, Point(base, pt.x), {"P": direction}, a_par)
            return d * sign_r

        return evaluate

    return FormOperator("e_cov", a_par, sig_map, build, {"alpha": alpha, "flip": flip})


def e_vec(u, parity: Optional[Parity] = None) -> FormOperator:
    """e(u): E_{p|q}^{r|s} → E_{p+1|q}^{r|s},

    e(u)Λ = (-1)^r u^A (p_A^{p+1} - (-1)^{B̃K̃} p_A^K p_B^{p+1} ∂/∂p_B^K
                        - (-1)^{F̃K̃} p_A^K w_F^{p+1} ∂/∂w_F^K) Λ.

    ``u`` is a row vector (1 x n|m) or a callable giving one at the base point
    (a vector field).
    """
    u_par = _datum_parity(u, parity, "row")
    drop_third = _mutations.get().drop_e_vec_third_term

    def sig_map(sg: FormSignature) -> FormSignature:
        sg = _mixed(sg, "e(u)")
        return sg.with_degrees(p=sg.p + 1)

    def build(form: Form, out: FormSignature):
        inner = form.signature.as_mixed()
        nm = inner.n + inner.m
        new_col = inner.p
        old_cols = [j for j in range(len(out.col_sig)) if j != new_col]
        rows = range(len(out.row_sig))
        row_sig = inner.row_sig
        col_sig = inner.col_sig
        sign_r = _sign(inner.r)

        def evaluate(pt: Point) -> Supernumber:
            P = pt.P
            alg = P.alg
            uu = _value_at(u, pt)
            base = P.sub(rows, old_cols)
            new = [P.rows[i][new_col] for i in rows]
            p_part = base.sub(range(nm), range(len(col_sig)))
            up = sm_mul(uu, p_part).rows[0]  # (u p)^K
            first = sm_mul(uu, SuperMatrix(alg, [[x] for x in new[:nm]], row_sig[:nm], (0,), check=False))
            c = []
            for i, t_i in enumerate(row_sig):
                if i >= nm and drop_third:
                    c.append([alg.zero] * len(col_sig))
                    continue
                c.append([
                    (upk * new[i]) * _sign(t_i * t_k) if upk.terms and new[i].terms else alg.zero
                    for upk, t_k in zip(up, col_sig)
                ])
            direction = SuperMatrix(alg, c, row_sig, col_sig, check=False)
            base_pt = Point(base, pt.x)
            value = first.rows[0][0] * form.at(base_pt) - directional(form.at, base_pt, {"P": direction}, u_par)
            return value * sign_r

        return evaluate

    return FormOperator("e_vec", u_par, sig_map, build, {"u": u, "drop_third": drop_third})


def sigma_alt() -> FormOperator:
    """Another expression for σ_{1|0}:

    w_{r+1}^{p+1} - (-1)^{B̃K̃} w_{r+1}^K p_B^{p+1} ∂/∂p_B^K - (-1)^{F̃K̃} w_{r+1}^K w_F^{p+1} ∂/∂w_F^K.
    """

    def sig_map(sg: FormSignature) -> FormSignature:
        sg = _mixed(sg, "σ")
        return sg.with_degrees(p=sg.p + 1, r=sg.r + 1)

    def build(form: Form, out: FormSignature):
        inner = form.signature.as_mixed()
        nm = inner.n + inner.m
        new_row, new_col = nm + inner.r, inner.p
        keep_rows = [i for i in range(len(out.row_sig)) if i != new_row]
        keep_cols = [j for j in range(len(out.col_sig)) if j != new_col]
        row_sig, col_sig = inner.row_sig, inner.col_sig

        def evaluate(pt: Point) -> Supernumber:
            P = pt.P
            alg = P.alg
            base = P.sub(keep_rows, keep_cols)
            w_new = [P.rows[new_row][j] for j in keep_cols]
            col_new = [P.rows[i][new_col] for i in keep_rows]
            c = [
                [(wk * col_new[i]) * _sign(t_i * t_k) for wk, t_k in zip(w_new, col_sig)]
                for i, t_i in enumerate(row_sig)
            ]
            direction = SuperMatrix(alg, c, row_sig, col_sig, check=False)
            base_pt = Point(base, pt.x)
            corner = P.rows[new_row][new_col]
            return corner * form.at(base_pt) - directional(form.at, base_pt, {"P": direction}, EVEN)

        return evaluate

    return FormOperator("sigma_alt", EVEN, sig_map, build)


# -- straight-form counterparts -------------------------------------------------------

def e_alpha_straight(alpha, parity: Optional[Parity] = None) -> FormOperator:
    """e_α: E^{r|s} → E^{r+1|s},

    e_α = (-1)^r (v_{r+1}^A α_A - (-1)^{α̃F̃} v_F^A α_A v_{r+1}^B ∂/∂v_F^B).

    The sign (-1)^{α̃F̃} is the one forced by e(α)τ = τe_α.
    """
    a_par = _datum_parity(alpha, parity, "col")

    def sig_map(sg: FormSignature) -> FormSignature:
        if sg.kind != STRAIGHT:
            raise ShapeError(f"e_α acts on straight forms, got {sg}")
        return FormSignature.straight(sg.n, sg.m, sg.r + 1, sg.s)

    def build(form: Form, out: FormSignature):
        inner = form.signature
        new_row = inner.r
        keep = [i for i in range(len(out.row_sig)) if i != new_row]
        cols = range(len(out.col_sig))
        row_sig, col_sig = inner.row_sig, inner.col_sig
        sign_r = _sign(inner.r)
        f_signs = [_sign(a_par * t_F) for t_F in row_sig]

        def evaluate(pt: Point) -> Supernumber:
            P = pt.P
            alg = P.alg
            a = _value_at(alpha, pt)
            base = P.sub(keep, cols)
            v_new = P.row(new_row)
            first = sm_mul(v_new, a).rows[0][0]
            va = sm_mul(base, a)  # column of ⟨v_F, α⟩
            c = [
                [
                    (va.rows[F][0] * v_new.rows[0][B]) * sign_F
                    for B in range(len(col_sig))
                ]
                for F, sign_F in enumerate(f_signs)
            ]
            direction = SuperMatrix(alg, c, row_sig, col_sig, check=False)
            base_pt = Point(base, pt.x)
            value = first * form.at(base_pt) - directional(form.at, base_pt, {"P": direction}, a_par)
            return value * sign_r

        return evaluate

    return FormOperator("e_alpha", a_par, sig_map, build, {"alpha": alpha})


def i_u_straight(u, parity: Optional[Parity] = None) -> FormOperator:
    """i_u: E^{r|s} → E^{r-1|s}, i_u = (-1)^{r-1} u^A ∂/∂v_r^A.

    The derivative is taken with the last even row set to zero; forms are
    linear in every even row, so this is substitution of u into that slot.
    """
    u_par = _datum_parity(u, parity, "row")

    def sig_map(sg: FormSignature) -> FormSignature:
        if sg.kind != STRAIGHT:
            raise ShapeError(f"i_u acts on straight forms, got {sg}")
        if sg.r == 0:
            raise DegreeError("i_u needs at least one even argument (r > 0)")
        return FormSignature.straight(sg.n, sg.m, sg.r - 1, sg.s)

    def build(form: Form, out: FormSignature):
        inner = form.signature
        slot = inner.r - 1
        sign_r = _sign(inner.r - 1)

        def evaluate(pt: Point) -> Supernumber:
            P = pt.P
            alg = P.alg
            uu = _value_at(u, pt)
            zero_row = [alg.zero] * len(inner.col_sig)
            rows = list(P.rows[:slot]) + [zero_row] + list(P.rows[slot:])
            full = SuperMatrix(alg, rows, inner.row_sig, inner.col_sig, check=False)
            c = [[alg.zero] * len(inner.col_sig) for _ in inner.row_sig]
            c[slot] = list(uu.rows[0])
            direction = SuperMatrix(alg, c, inner.row_sig, inner.col_sig, check=False)
            return directional(form.at, Point(full, pt.x), {"P": direction}, u_par) * sign_r

        return evaluate

    return FormOperator("i_u", u_par, sig_map, build, {"u": u})


# -- harness -----------------------------------------------------------------------

def anticommutator(A: FormOperator, B: FormOperator) -> Callable[[Form], Form]:
    """f ↦ A(B(f)) + (-1)^{ÃB̃} B(A(f))."""

    def apply(form: Form) -> Form:
        ab = A(B(form))
        ba = B(A(form))
        if ab.signature != ba.signature:
            raise ShapeError(f"anticommutator of operators with different targets: {ab.signature} vs {ba.signature}")
        sign = _sign(A.parity * B.parity)

        def evaluate(pt: Point) -> Supernumber:
            return ab.at(pt) + ba.at(pt) * sign

        recipe = {"op": "anticommutator", "A": A.name, "B": B.name, "of": form.recipe}
        return Form(ab.signature, evaluate, recipe, ab.parity)

    return apply


def scale(c: Supernumber | int, form: Form) -> Form:
    """The form c·Λ for a constant c (written on the left)."""

    def evaluate(pt: Point) -> Supernumber:
        return pt.alg.coerce(c) * form.at(pt)

    return Form(form.signature, evaluate, {"op": "scale", "c": c, "of": form.recipe}, form.parity)
