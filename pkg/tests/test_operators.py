import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from superforms.errors import DegreeError, ShapeError
from superforms.forms import FormSignature, make_dual_ber_form, make_straight_ber_form, sample_point
from superforms.generate import random_mixed, random_straight
from superforms.operators import (
    anticommutator,
    e_alpha_straight,
    e_cov,
    e_vec,
    i_u_straight,
    mutations,
    scale,
    sigma,
    sigma_alt,
    sigma_inv,
    tau,
    tau_inv,
)
from superforms.sampling import Sampler
from superforms.suites import compare
from superforms.supermatrix import SuperMatrix, berezinian, pairing, sig, sm_inv, sm_mul

seeds = st.integers(0, 2**32)


def same(S, lhs, rhs):
    return compare(S, lhs, rhs).ok


def mixed(S, n, m, p, q, r, s):
    return random_mixed(S, FormSignature.mixed(n, m, p, q, r, s))


@given(seeds)
def test_sigma_00_is_identity(seed):
    S = Sampler(seed, pool=4)
    f = mixed(S, 1, 1, 1, 1, 1, 0)
    assert same(S, sigma(0, 0)(f), f)


@pytest.mark.parametrize("k, l", [(1, 0), (0, 1)])
@given(seed=seeds)
def test_sigma_inverse_on_dual_forms(k, l, seed):
    S = Sampler(seed, pool=4)
    f = make_dual_ber_form(S.frame(sig(1, 1), sig(1, 1)), 1, 1)
    assert same(S, sigma_inv(k, l)(sigma(k, l)(f)), f.__class__(f.signature.as_mixed(), f.evaluator))


@given(seeds)
def test_sigma_composes(seed):
    S = Sampler(seed, pool=4)
    f = mixed(S, 1, 1, 1, 1, 0, 0)
    assert same(S, sigma(1, 0)(sigma(1, 0)(f)), sigma(2, 0)(f))
    assert same(S, sigma(1, 0)(sigma(0, 1)(f)), sigma(1, 1)(f))


def test_signature_maps():
    sg = FormSignature.mixed(2, 1, 1, 1, 0, 1)
    S = Sampler(0, pool=4)
    alpha = S.covector(sig(2, 1), 1)
    u = S.vector(sig(2, 1), 0)
    assert sigma(1, 0).signature_map(sg) == FormSignature.mixed(2, 1, 2, 1, 1, 1)
    assert sigma(0, 1).signature_map(sg) == FormSignature.mixed(2, 1, 1, 2, 0, 2)
    assert e_cov(alpha).signature_map(sg) == FormSignature.mixed(2, 1, 1, 1, 1, 1)
    assert e_vec(u).signature_map(sg) == FormSignature.mixed(2, 1, 2, 1, 0, 1)
    assert tau().signature_map(FormSignature.straight(2, 1, 1, 0)) == FormSignature.mixed(2, 1, 2, 1, 1, 0)
    assert e_cov(alpha).parity == 1 and e_vec(u).parity == 0


def test_stable_degree_of_sigma_image():
    sg = FormSignature.mixed(2, 1, 1, 1, 0, 1)
    assert sigma(1, 0).signature_map(sg).stable_degree == sg.stable_degree


def test_operators_reject_wrong_kind():
    S = Sampler(0, pool=4)
    with pytest.raises(ShapeError):
        sigma(1, 0).signature_map(FormSignature.straight(1, 1, 1, 0))
    with pytest.raises(ShapeError):
        tau().signature_map(FormSignature.mixed(1, 1, 1, 1, 0, 0))
    with pytest.raises(DegreeError):
        tau_inv().signature_map(FormSignature.mixed(1, 1, 1, 0, 0, 0))
    with pytest.raises(DegreeError):
        i_u_straight(S.vector(sig(1, 1), 0)).signature_map(FormSignature.straight(1, 1, 0, 1))


@given(seeds)
def test_tau_roundtrip(seed):
    S = Sampler(seed, pool=4)
    L = random_straight(S, 2, 1, 1, 1)
    assert same(S, tau_inv()(tau()(L)), L)


def test_tau_of_constant_is_berezinian():
    S = Sampler(3, pool=4)
    L = make_straight_ber_form(SuperMatrix.zeros(S.alg, sig(1, 1), ()), 1, 1)
    P = S.gl(sig(1, 1))
    assert tau()(L)(P) == berezinian(P)


def test_tau_det_form_explicit():
    # τL(p; w) = ⟨w p⁻¹, α⟩ det p on 2|0, r = 1
    S = Sampler(4, pool=4)
    alpha = S.frame(sig(2, 0), sig(1, 0))
    L = make_straight_ber_form(alpha, 2, 0)
    p = SuperMatrix(S.alg, [[2, 1], [1, 3]], sig(2, 0), sig(2, 0))
    w = SuperMatrix(S.alg, [[mpq(1, 2), -1]], sig(1, 0), sig(2, 0))
    P = SuperMatrix(S.alg, list(p.rows) + list(w.rows), sig(3, 0), sig(2, 0))
    p_inv = SuperMatrix(S.alg, [[mpq(3, 5), mpq(-1, 5)], [mpq(-1, 5), mpq(2, 5)]], sig(2, 0), sig(2, 0))
    assert sm_inv(p) == p_inv
    assert tau()(L)(P) == pairing(sm_mul(w, p_inv), alpha) * 5


@given(seeds)
def test_e_cov_is_linear(seed):
    S = Sampler(seed, pool=4)
    f = mixed(S, 1, 1, 1, 1, 0, 0)
    par = S.rng.randint(0, 1)
    a, b = S.covector(sig(1, 1), par), S.covector(sig(1, 1), par)
    summed = e_cov(a + b)(f)
    lhs, rhs = e_cov(a)(f), e_cov(b)(f)
    pt = sample_point(summed, S)
    assert summed.at(pt) == lhs.at(pt) + rhs.at(pt)


def test_e_cov_zero_covector():
    S = Sampler(9, pool=4)
    f = mixed(S, 1, 1, 1, 1, 0, 0)
    g = e_cov(SuperMatrix.zeros(S.alg, sig(1, 1), (0,)))(f)
    assert g.at(sample_point(g, S)).is_zero()


@given(seeds)
def test_e_vec_pair_anticommutes(seed):
    S = Sampler(seed, pool=4)
    f = mixed(S, 1, 1, 0, 1, 0, 0)
    u, v = S.vector(sig(1, 1), S.rng.randint(0, 1)), S.vector(sig(1, 1), S.rng.randint(0, 1))
    g = anticommutator(e_vec(u), e_vec(v))(f)
    assert g.at(sample_point(g, S)).is_zero()


@given(seeds)
def test_clifford_central_term(seed):
    S = Sampler(seed, pool=4)
    f = mixed(S, 1, 1, 1, 1, 0, 1)
    u, alpha = S.vector(sig(1, 1), S.rng.randint(0, 1)), S.covector(sig(1, 1), S.rng.randint(0, 1))
    lhs = anticommutator(e_vec(u), e_cov(alpha))(f)
    assert same(S, lhs, scale(pairing(u, alpha), sigma(1, 0)(f)))


@pytest.mark.parametrize("parity, factor", [(0, 2), (1, 0)])
@given(seed=seeds)
def test_anticommutator_of_operator_with_itself(parity, factor, seed):
    # AA + (-1)^{ÃÃ} AA: doubles an even operator, cancels an odd one
    S = Sampler(seed, pool=4)
    f = mixed(S, 1, 1, 1, 1, 0, 0)
    A = e_cov(S.covector(sig(1, 1), parity))
    assert same(S, anticommutator(A, A)(f), scale(factor, A(A(f))))


@given(seeds)
def test_sigma_alt_matches_sigma(seed):
    S = Sampler(seed, pool=4)
    f = mixed(S, 1, 1, 1, 1, 1, 0)
    assert same(S, sigma_alt()(f), sigma(1, 0)(f))


@given(seeds)
def test_i_u_pair_anticommutes(seed):
    S = Sampler(seed, pool=4)
    L = random_straight(S, 2, 1, 2, 1)
    u, v = S.vector(sig(2, 1), S.rng.randint(0, 1)), S.vector(sig(2, 1), S.rng.randint(0, 1))
    g = anticommutator(i_u_straight(u), i_u_straight(v))(L)
    assert g.at(sample_point(g, S)).is_zero()


@given(seeds)
def test_e_alpha_matches_tau(seed):
    S = Sampler(seed, pool=4)
    L = random_straight(S, 1, 1, 1, 1)
    alpha = S.covector(sig(1, 1), S.rng.randint(0, 1))
    assert same(S, e_cov(alpha)(tau()(L)), tau()(e_alpha_straight(alpha)(L)))


def test_composition_operator():
    S = Sampler(2, pool=4)
    f = mixed(S, 1, 1, 1, 1, 0, 0)
    op = sigma(1, 0) @ sigma(0, 1)
    assert op.signature_map(f.signature) == FormSignature.mixed(1, 1, 2, 2, 1, 1)
    assert same(S, op(f), sigma(1, 1)(f))


def test_dropped_third_term_changes_values():
    S = Sampler(12, pool=4)
    f = mixed(S, 1, 1, 1, 1, 1, 0)
    u = S.vector(sig(1, 1), 0)
    with mutations(drop_e_vec_third_term=True):
        bad = e_vec(u)
    good = e_vec(u)
    pt = sample_point(good(f), S)
    assert good(f).at(pt) != bad(f).at(pt)


def test_mutation_flags_read_at_construction():
    S = Sampler(1, pool=4)
    alpha = S.covector(sig(1, 1), 0)
    with mutations(flip_e_cov_sign=True):
        flipped = e_cov(alpha)
    plain = e_cov(alpha)
    f = mixed(S, 1, 1, 1, 1, 0, 0)
    pt = sample_point(plain(f), S)
    assert flipped(f).at(pt) == -plain(f).at(pt)
