import pytest
from hypothesis import given
from hypothesis import strategies as st

from superforms.autodiff import Point
from superforms.errors import InvalidForm, ShapeError
from superforms.forms import (
    FormSignature,
    Form,
    check_homogeneity,
    check_symmetry_pde,
    lift_to_mixed,
    linear_combination,
    make_dual_ber_form,
    make_mixed_ber_form,
    make_straight_ber_form,
    pde_violations,
    sample_point,
    zero_form,
)
from superforms.generate import random_form, signatures
from superforms.grassmann import GrassmannAlgebra
from superforms.sampling import Sampler
from superforms.supermatrix import SuperMatrix, sig

ALG = GrassmannAlgebra(40, reserved=4)


def M(rows, row_sig, col_sig):
    return SuperMatrix(ALG, rows, row_sig, col_sig)


def test_straight_coordinate_form():
    L = make_straight_ber_form(M([[1]], (0,), (0,)), 1, 0)
    assert L(M([[7]], (0,), (0,))) == ALG.scalar(7)


def test_straight_determinant_form():
    L = make_straight_ber_form(SuperMatrix.identity(ALG, (0, 0)), 2, 0)
    v = M([[2, 3], [5, 7]], (0, 0), (0, 0))
    assert L(v) == ALG.scalar(2 * 7 - 3 * 5)


def test_straight_odd_degree_is_inverse_pairing():
    # r|s = 0|1 on 1|1 with the odd basis covector: L(v) = 1 / v^2
    L = make_straight_ber_form(M([[0], [1]], (0, 1), (1,)), 1, 1)
    v = M([[ALG.gen(0), 4]], (1,), (0, 1))
    assert L(v) == ALG.scalar("1/4")


def test_dual_coordinate_form():
    L = make_dual_ber_form(M([[1]], (0,), (0,)), 1, 0)
    assert L(M([[-3]], (0,), (0,))) == ALG.scalar(-3)


def test_dual_determinant_form():
    L = make_dual_ber_form(SuperMatrix.identity(ALG, (0, 0)), 2, 0)
    assert L(M([[1, 4], [2, 3]], (0, 0), (0, 0))) == ALG.scalar(-5)


def test_dual_11_berezinian():
    L = make_dual_ber_form(SuperMatrix.identity(ALG, (0, 1)), 1, 1)
    p = M([[2, ALG.gen(0)], [ALG.gen(1), 4]], (0, 1), (0, 1))
    # Ber = 2/4 - t1 t2 / 16
    assert L(p) == ALG.from_terms({(): "1/2", (0, 1): "-1/16"})


def test_mixed_with_empty_degree_is_dual():
    frame = M([[1, 2], [3, 5]], (0, 0), (0, 0))
    mixed = make_mixed_ber_form(frame, 2, 0, 0, 0)
    dual = make_dual_ber_form(frame, 2, 0)
    p = M([[1, 4], [2, 3]], (0, 0), (0, 0))
    assert mixed(p) == dual(p)
    assert mixed.signature.stable_degree == (0, 0)


def test_signature_validation():
    with pytest.raises(ShapeError):
        FormSignature.straight(1, 1, 0, 2)
    with pytest.raises(ShapeError):
        FormSignature.mixed(1, 1, 0, 0, 0, 1)


def test_argument_shape_checked():
    L = make_straight_ber_form(SuperMatrix.identity(ALG, (0, 0)), 2, 0)
    with pytest.raises(ShapeError):
        L(M([[1]], (0,), (0,)))


def test_linear_combinations():
    S = Sampler(11, pool=4)
    L1 = make_straight_ber_form(S.frame(sig(1, 1), sig(1, 1)), 1, 1)
    L2 = make_straight_ber_form(S.frame(sig(1, 1), sig(1, 1)), 1, 1)
    pt = sample_point(linear_combination([1, 1], [L1, L2]), S)
    assert linear_combination([1, 0], [L1, L2]).at(pt) == L1.at(pt)
    assert linear_combination([1, -1], [L1, L1]).at(pt).is_zero()
    assert linear_combination([2, 3], [L1, L2]).at(pt) == 2 * L1.at(pt) + 3 * L2.at(pt)


def test_linear_combination_signature_mismatch():
    L1 = make_straight_ber_form(SuperMatrix.identity(ALG, (0,)), 1, 0)
    L2 = make_straight_ber_form(SuperMatrix.identity(ALG, (0, 0)), 2, 0)
    with pytest.raises(ShapeError):
        linear_combination([1, 1], [L1, L2])


def test_homogeneity_identity_group():
    S = Sampler(1, pool=4)
    L = make_straight_ber_form(S.frame(sig(1, 1), sig(1, 1)), 1, 1)
    pt = sample_point(L, S)
    assert check_homogeneity(L, pt, SuperMatrix.identity(S.alg, sig(1, 1)))


@pytest.mark.parametrize("n, m, r, s", [(1, 1, 1, 1), (2, 1, 1, 0), (2, 1, 2, 1), (1, 1, 0, 1)])
@given(seed=st.integers(0, 2**32))
def test_straight_homogeneity(n, m, r, s, seed):
    S = Sampler(seed, pool=4)
    L = make_straight_ber_form(S.frame(sig(n, m), sig(r, s)), n, m)
    pt = sample_point(L, S)
    assert check_homogeneity(L, pt, S.gl(sig(r, s)))


@pytest.mark.parametrize("n, m, r, s, p0, q0", [(1, 1, 1, 0, 1, 1), (1, 1, 0, 1, 0, 1), (2, 1, 1, 1, 1, 0)])
@given(seed=st.integers(0, 2**32))
def test_mixed_shear_law(n, m, r, s, p0, q0, seed):
    S = Sampler(seed, pool=4)
    L = make_mixed_ber_form(S.frame(sig(p0, q0), sig(n, m)), n, m, r, s)
    pt = sample_point(L, S)
    sg = L.signature
    assert check_homogeneity(L, pt, S.gl(sig(r, s)), side="left", shear=S.matrix(sig(n, m), sig(r, s)))
    assert check_homogeneity(L, pt, S.gl(sig(sg.p, sg.q)), side="right")


def test_lift_of_berezinian_dual_form():
    S = Sampler(7, pool=4)
    # dual form on V ⊕ R^{1|0} (dims 2|1) whose frame contains the extension vector
    frame = S.frame(sig(2, 1), sig(2, 1))
    frame = SuperMatrix.from_function(
        S.alg, sig(2, 1), sig(2, 1), lambda i, j: (1 if j == 1 else 0) if i == 1 else frame[i, j]
    )
    L = lift_to_mixed(make_dual_ber_form(frame, 2, 1), 1, 1, 1, 0, validate_with=S)
    assert L.signature == FormSignature.mixed(1, 1, 2, 1, 1, 0)


def test_lift_rejects_non_form():
    # a generic 1|1 frame on the 2|1 extension ignores the extension direction
    S = Sampler(7, pool=4)
    frame = S.frame(sig(1, 1), sig(2, 1))
    with pytest.raises(InvalidForm):
        lift_to_mixed(make_dual_ber_form(frame, 2, 1), 1, 1, 1, 0, validate_with=S)


@pytest.mark.parametrize(
    "make",
    [
        lambda S: make_straight_ber_form(S.frame(sig(1, 1), sig(1, 1)), 1, 1),
        lambda S: make_straight_ber_form(S.frame(sig(2, 0), sig(2, 0)), 2, 0),
        lambda S: make_straight_ber_form(S.frame(sig(1, 1), sig(0, 1)), 1, 1),
        lambda S: make_dual_ber_form(S.frame(sig(1, 1), sig(1, 1)), 1, 1),
        lambda S: make_dual_ber_form(S.frame(sig(1, 0), sig(1, 1)), 1, 1),
        lambda S: make_mixed_ber_form(S.frame(sig(1, 0), sig(1, 1)), 1, 1, 1, 0),
        lambda S: make_mixed_ber_form(S.frame(sig(0, 1), sig(1, 1)), 1, 1, 0, 1),
    ],
)
def test_full_symmetry_system(make):
    S = Sampler(99, pool=4)
    L = make(S)
    assert pde_violations(L, sample_point(L, S)) == []


def test_zero_form_passes_every_check():
    S = Sampler(1, pool=4)
    z = zero_form(FormSignature.mixed(1, 1, 1, 1, 1, 0))
    pt = sample_point(z, S)
    assert check_symmetry_pde(z, pt)
    assert check_homogeneity(z, pt, S.gl(sig(1, 1)))


def test_checkers_reject_non_forms():
    S = Sampler(5, pool=4)
    sq = Form(FormSignature.straight(2, 0, 1, 0), lambda pt: pt.P[0, 0] * pt.P[0, 0])
    pt = sample_point(sq, S)
    assert not check_homogeneity(sq, pt, S.gl(sig(1, 0)))
    assert pde_violations(sq, pt)


@pytest.mark.parametrize("n, m", [(1, 1)])
def test_generated_forms_satisfy_defining_equations(n, m):
    S = Sampler(31, pool=4)
    for sg in signatures(n, m, 1) + signatures(n, m, 1, kind="straight"):
        f = random_form(S, sg)
        pt = sample_point(f, S)
        assert pde_violations(f, pt) == [], sg


def test_point_keeps_base_point():
    pt = Point(M([[1]], (0,), (0,)), M([[2, 0]], (0,), (0, 1)))
    assert pt.x[0, 0] == ALG.scalar(2)
