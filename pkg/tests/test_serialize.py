import json

import pytest
from gmpy2 import mpq

from superforms.forms import FormSignature, sample_point
from superforms.generate import random_field, random_form, signatures
from superforms.manifold import CoordinatePatch, VectorField, dbar, lie_derivative
from superforms.operators import mutations, e_cov
from superforms.sampling import Sampler
from superforms.serialize import SCHEMA_VERSION, DecodeError, decode, encode, form_from_json, form_to_json
from superforms.supermatrix import sig


def roundtrip(form, S, x_dims=None):
    doc = json.loads(json.dumps(form_to_json(form, S.alg)))
    back, alg = form_from_json(doc)
    assert alg == S.alg
    pt = sample_point(form, S, x_dims=x_dims)
    return form.at(pt), back.at(pt)


def test_encode_values():
    S = Sampler(0, pool=4)
    x = S.alg.from_terms({(): "1/2", (0, 1): -3})
    assert encode(x) == {"sn": [[[], "1/2"], [[0, 1], "-3"]]}
    assert decode(encode(x), S.alg) == x
    assert encode(mpq(2, 3)) == {"q": "2/3"}
    m = S.matrix(sig(1, 1), sig(0, 1))
    assert decode(encode(m), S.alg) == m


def test_opaque_callable_rejected():
    with pytest.raises(DecodeError):
        encode(lambda: 0)


def test_version_checked():
    S = Sampler(0, pool=4)
    f = random_form(S, FormSignature.straight(1, 1, 1, 0))
    doc = form_to_json(f, S.alg)
    doc["version"] = "superforms/0"
    with pytest.raises(DecodeError):
        form_from_json(doc)
    assert form_to_json(f, S.alg)["version"] == SCHEMA_VERSION


@pytest.mark.parametrize("n, m", [(1, 1), (2, 1)])
@pytest.mark.parametrize("kind", ["mixed", "straight", "dual"])
@pytest.mark.parametrize("seed", range(2))
def test_generated_forms_roundtrip(n, m, kind, seed):
    S = Sampler(seed, pool=4)
    for sg in signatures(n, m, 2, kind=kind):
        a, b = roundtrip(random_form(S, sg), S)
        assert a == b, sg


@pytest.mark.parametrize("seed", range(3))
def test_field_operators_roundtrip(seed):
    S = Sampler(seed, pool=4)
    lam = random_field(S, FormSignature.mixed(1, 1, 1, 1, 0, 0))
    X = VectorField.random(CoordinatePatch(1, 1), S.rng, seed % 2)
    for form in (lam, dbar()(lam), lie_derivative(X)(lam)):
        a, b = roundtrip(form, S, x_dims=(1, 1))
        assert a == b


def test_mutation_flag_survives_roundtrip():
    S = Sampler(4, pool=4)
    f = random_form(S, FormSignature.mixed(1, 1, 1, 1, 0, 0))
    alpha = S.covector(sig(1, 1), 0)
    with mutations(flip_e_cov_sign=True):
        g = e_cov(alpha)(f)
    doc = json.loads(json.dumps(form_to_json(g, S.alg)))
    back, _ = form_from_json(doc)
    pt = sample_point(g, S)
    assert back.at(pt) == g.at(pt) == -e_cov(alpha)(f).at(pt)
