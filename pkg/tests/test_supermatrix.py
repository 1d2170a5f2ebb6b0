import pytest
from hypothesis import given
from hypothesis import strategies as st

from superforms.errors import NotInvertible, ParityError, ShapeError
from superforms.grassmann import GrassmannAlgebra
from superforms.sampling import Sampler
from superforms.supermatrix import SuperMatrix, berezinian, pairing, sig, sm_inv, sm_mul


def mat(alg, rows, row_sig, col_sig):
    return SuperMatrix(alg, rows, row_sig, col_sig)


def odd_11(alg, a=2, d=1):
    t1, t2 = alg.gen(0), alg.gen(1)
    return mat(alg, [[a, t1], [t2, d]], (0, 1), (0, 1))


def test_identity_is_neutral(alg):
    m = odd_11(alg)
    one = SuperMatrix.identity(alg, (0, 1))
    assert sm_mul(one, m) == m
    assert sm_mul(m, one) == m


def test_scalar_product(alg):
    assert sm_mul(mat(alg, [[2]], (0,), (0,)), mat(alg, [[3]], (0,), (0,))) == mat(alg, [[6]], (0,), (0,))


def test_square_with_odd_off_diagonal(alg):
    # [[2, t1], [t2, 1]]^2 expanded by hand
    t1, t2, t12 = alg.gen(0), alg.gen(1), alg.monomial([0, 1])
    expected = mat(alg, [[4 + t12, 3 * t1], [3 * t2, 1 - t12]], (0, 1), (0, 1))
    m = odd_11(alg)
    assert sm_mul(m, m) == expected


def test_diagonal_inverse(alg):
    from gmpy2 import mpq

    d = mat(alg, [[2, 0], [0, 3]], (0, 0), (0, 0))
    assert sm_inv(d) == mat(alg, [[mpq(1, 2), 0], [0, mpq(1, 3)]], (0, 0), (0, 0))


def test_inverse_multiplies_back(alg):
    m = odd_11(alg)
    one = SuperMatrix.identity(alg, (0, 1))
    assert sm_mul(m, sm_inv(m)) == one
    assert sm_mul(sm_inv(m), m) == one


def test_singular_block_not_invertible(alg):
    with pytest.raises(NotInvertible):
        sm_inv(mat(alg, [[0, alg.gen(0)], [alg.gen(1), 1]], (0, 1), (0, 1)))


def test_shape_mismatch(alg):
    with pytest.raises(ShapeError):
        sm_mul(mat(alg, [[1]], (0,), (0,)), mat(alg, [[1]], (1,), (1,)))


def test_parity_violation(alg):
    with pytest.raises(ParityError):
        mat(alg, [[alg.gen(0)]], (0,), (0,))


@pytest.mark.parametrize("signature", [sig(2, 0), sig(0, 2), sig(2, 1)])
def test_ber_identity(alg, signature):
    assert berezinian(SuperMatrix.identity(alg, signature)) == alg.one


def test_ber_of_even_matrix_is_det(alg):
    assert berezinian(mat(alg, [[1, 2], [3, 4]], (0, 0), (0, 0))) == alg.scalar(-2)


def test_ber_11_closed_form(alg):
    # Ber [[a, x], [y, d]] = a/d - x y / d^2; a=2, d=1, x=t1, y=t2
    assert berezinian(odd_11(alg)) == 2 - alg.monomial([0, 1])
    assert berezinian(odd_11(alg, 2, 4)) == alg.from_terms({(): "1/2", (0, 1): "-1/16"})


def test_ber_routes_agree(alg):
    m = odd_11(alg, 3, 5)
    assert berezinian(m, route="odd") == berezinian(m, route="even")


def test_ber_purely_odd(alg):
    # 0|1: Ber of the single odd-odd entry is its inverse
    assert berezinian(mat(alg, [[4]], (1,), (1,))) == alg.scalar("1/4")


def test_pairing_hand_value(alg):
    v = mat(alg, [[2, alg.gen(0)]], (0,), (0, 1))
    a = mat(alg, [[3], [alg.gen(1)]], (0, 1), (0,))
    assert pairing(v, a) == 6 + alg.monomial([0, 1])


@pytest.mark.parametrize("A, B", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_pairing_dual_bases(alg, A, B):
    # the basis vector e_A has parity A in dimension 1|1
    e = mat(alg, [[int(i == A) for i in range(2)]], (A,), (0, 1))
    f = mat(alg, [[int(i == B)] for i in range(2)], (0, 1), (B,))
    assert pairing(e, f) == alg.scalar(int(A == B))


def test_pairing_zero_vector(alg):
    v = SuperMatrix.zeros(alg, (0,), (0, 1))
    assert pairing(v, mat(alg, [[3], [alg.gen(1)]], (0, 1), (0,))).is_zero()


@pytest.mark.parametrize("signature", [sig(1, 0), sig(0, 1), sig(1, 1), sig(2, 1)])
@given(seed=st.integers(0, 2**32))
def test_ber_multiplicative(signature, seed):
    S = Sampler(seed, pool=4)
    g, h = S.gl(signature), S.gl(signature)
    assert berezinian(sm_mul(g, h)) == berezinian(g) * berezinian(h)


@pytest.mark.parametrize("signature", [sig(1, 1), sig(2, 1)])
@given(seed=st.integers(0, 2**32))
def test_inverse_property(signature, seed):
    S = Sampler(seed, pool=4)
    g = S.gl(signature)
    assert sm_mul(g, sm_inv(g)) == SuperMatrix.identity(S.alg, signature)
    assert berezinian(sm_inv(g)) == berezinian(g).inv()


def test_sample_gl_small_dims():
    S = Sampler(5, pool=4)
    assert berezinian(S.gl(sig(1, 0))).body != 0
    assert berezinian(S.gl(sig(1, 1))).body != 0
    assert S.gl(sig(0, 1))[0, 0].body != 0


def test_grassmann_context_kept():
    alg = GrassmannAlgebra(3)
    assert SuperMatrix.identity(alg, (0,)).alg is alg
