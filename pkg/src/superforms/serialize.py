"""Versioned JSON encoding of values, frames, fields and form recipes.

Values are tagged so that nested recipes round-trip:

* ``{"q": "3/4"}`` rational
* ``{"sn": [[[0, 2], "1/2"], ...]}`` supernumber (0-based generator indices)
* ``{"mat": {...}}`` SuperMatrix, ``{"pf": ...}`` PatchFunction, ``{"vf": ...}`` VectorField,
  ``{"cf": ...}`` CovectorField, ``{"pm": ...}`` PatchMatrix

:func:`rebuild` turns a recipe back into a :class:`Form` for the generating
class and the operators whose data are constants or fields.
"""

from __future__ import annotations

from numbers import Rational
from typing import Any

from gmpy2 import mpq

from .errors import SuperformsError
from .forms import Form, FormSignature, linear_combination, make_dual_ber_form, make_mixed_ber_form
from .forms import make_straight_ber_form, zero_form
from .grassmann import GrassmannAlgebra, Supernumber
from .manifold import (
    CoordinatePatch,
    CovectorField,
    PatchFunction,
    PatchMatrix,
    VectorField,
    add_forms,
    dbar,
    lie_derivative,
    mixed_ber_field,
    multiply_by_function,
    straight_ber_field,
)
from .operators import e_alpha_straight, e_cov, e_vec, i_u_straight, sigma, sigma_inv, sigma_alt, tau, tau_inv
from .supermatrix import SuperMatrix

SCHEMA_VERSION = "superforms/1"


class DecodeError(SuperformsError):
    pass


def encode(obj: Any) -> Any:
    if isinstance(obj, Supernumber):
        return {"sn": [[list(idx), str(c)] for idx, c in obj.sorted_terms()]}
    if isinstance(obj, SuperMatrix):
        return {
            "mat": {
                "row_sig": list(obj.row_sig),
                "col_sig": list(obj.col_sig),
                "entries": [[encode(x) for x in row] for row in obj.rows],
            }
        }
    if isinstance(obj, PatchFunction):
        return {"pf": {"n": obj.patch.n, "m": obj.patch.m, "terms": obj.to_json()}}
    if isinstance(obj, VectorField):
        return {"vf": {"n": obj.patch.n, "m": obj.patch.m, **obj.to_json()}}
    if isinstance(obj, CovectorField):
        return {
            "cf": {
                "n": obj.patch.n,
                "m": obj.patch.m,
                "parity": obj.parity,
                "components": [f.to_json() for f in obj.components],
            }
        }
    if isinstance(obj, PatchMatrix):
        patch = obj.entries[0][0].patch if obj.entries and obj.entries[0] else None
        dims = {"n": patch.n, "m": patch.m} if patch else {"n": 0, "m": 0}
        return {"pm": {**dims, **obj.to_json()}}
    if isinstance(obj, FormSignature):
        return {"sig": obj.to_json()}
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, Rational) or type(obj).__name__ == "mpq":
        return {"q": str(mpq(obj))}
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if callable(obj):
        raise DecodeError(f"cannot serialize opaque callable {obj!r}")
    raise DecodeError(f"cannot serialize {type(obj).__name__}")


def decode(data: Any, alg: GrassmannAlgebra) -> Any:
    if isinstance(data, list):
        return [decode(v, alg) for v in data]
    if not isinstance(data, dict):
        return data
    if len(data) == 1:
        (tag, body), = data.items()
        if tag == "q":
            return mpq(body)
        if tag == "sn":
            return alg.from_terms({tuple(idx): mpq(c) for idx, c in body})
        if tag == "mat":
            rows = [[decode(x, alg) for x in row] for row in body["entries"]]
            return SuperMatrix(alg, rows, tuple(body["row_sig"]), tuple(body["col_sig"]))
        if tag == "pf":
            return PatchFunction.from_json(CoordinatePatch(body["n"], body["m"]), body["terms"])
        if tag == "vf":
            patch = CoordinatePatch(body["n"], body["m"])
            return VectorField([PatchFunction.from_json(patch, c) for c in body["components"]], body["parity"])
        if tag == "cf":
            patch = CoordinatePatch(body["n"], body["m"])
            return CovectorField([PatchFunction.from_json(patch, c) for c in body["components"]], body["parity"])
        if tag == "pm":
            patch = CoordinatePatch(body["n"], body["m"])
            entries = [[PatchFunction.from_json(patch, f) for f in row] for row in body["entries"]]
            return PatchMatrix(entries, body["row_sig"], body["col_sig"])
        if tag == "sig":
            return FormSignature.from_json(body)
    return {k: decode(v, alg) for k, v in data.items()}


def algebra_to_json(alg: GrassmannAlgebra) -> dict:
    return {"size": alg.size, "reserved": alg.reserved}


def algebra_from_json(data: dict) -> GrassmannAlgebra:
    return GrassmannAlgebra(data["size"], data["reserved"])


def form_to_json(form: Form, alg: GrassmannAlgebra) -> dict:
    if form.recipe is None:
        raise DecodeError("form has no recipe")
    return {
        "version": SCHEMA_VERSION,
        "algebra": algebra_to_json(alg),
        "signature": form.signature.to_json(),
        "recipe": encode(form.recipe),
    }


def form_from_json(doc: dict) -> tuple[Form, GrassmannAlgebra]:
    if doc.get("version") != SCHEMA_VERSION:
        raise DecodeError(f"unsupported schema version {doc.get('version')!r}")
    alg = algebra_from_json(doc["algebra"])
    form = rebuild(decode(doc["recipe"], alg))
    if form.signature != FormSignature.from_json(doc["signature"]):
        raise DecodeError("rebuilt form has a different signature")
    return form, alg


def rebuild(recipe: dict) -> Form:
    """Reconstruct a form from a decoded recipe."""
    op = recipe["op"]
    if op == "straight_ber":
        return make_straight_ber_form(recipe["frame"], recipe["n"], recipe["m"])
    if op == "dual_ber":
        return make_dual_ber_form(recipe["frame"], recipe["n"], recipe["m"])
    if op == "mixed_ber":
        return make_mixed_ber_form(recipe["frame"], recipe["n"], recipe["m"], recipe["r"], recipe["s"])
    if op == "mixed_ber_field":
        return mixed_ber_field(recipe["frame"], recipe["n"], recipe["m"], recipe["r"], recipe["s"])
    if op == "straight_ber_field":
        return straight_ber_field(recipe["frame"], recipe["n"], recipe["m"])
    if op == "lincomb":
        return linear_combination(recipe["coeffs"], [rebuild(r) for r in recipe["of"]])
    if op == "sum":
        return add_forms([rebuild(r) for r in recipe["of"]])
    if op == "zero":
        return zero_form(FormSignature.from_json(recipe["signature"]))
    if op == "fmul":
        inner = rebuild(recipe["of"])
        patch = CoordinatePatch(inner.signature.n, inner.signature.m)
        return multiply_by_function(PatchFunction.from_json(patch, recipe["f"]), inner)
    inner = rebuild(recipe["of"])
    simple = {
        "sigma": lambda: sigma(recipe["k"], recipe["l"]),
        "sigma_inv": lambda: sigma_inv(recipe["k"], recipe["l"]),
        "tau": tau,
        "tau_inv": tau_inv,
        "sigma_alt": sigma_alt,
        "dbar": dbar,
        "e_alpha": lambda: e_alpha_straight(recipe["alpha"]),
        "i_u": lambda: i_u_straight(recipe["u"]),
    }
    if op in simple:
        return simple[op]()(inner)
    if op == "e_cov":
        from .operators import mutations

        with mutations(flip_e_cov_sign=recipe.get("flip", False)):
            return e_cov(recipe["alpha"])(inner)
    if op == "e_vec":
        from .operators import mutations

        with mutations(drop_e_vec_third_term=recipe.get("drop_third", False)):
            return e_vec(recipe["u"])(inner)
    if op == "lie":
        patch = CoordinatePatch(inner.signature.n, inner.signature.m)
        X = recipe["X"]
        field = VectorField([PatchFunction.from_json(patch, c) for c in X["components"]], X["parity"])
        return lie_derivative(field)(inner)
    raise DecodeError(f"no rebuild rule for recipe op {op!r}")
