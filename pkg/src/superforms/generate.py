"""Random members of the generating class of forms.

The class is: Berezinian forms built from random frames, constant linear
combinations of them (coefficients of either parity), and their images under
σ, τ, e(α), e(u) and e_α.  Form fields on a patch are functions times
Berezinian forms with polynomial frames.
"""

from __future__ import annotations

from typing import Callable, Optional

from .errors import DegreeError
from .forms import DUAL, MIXED, STRAIGHT, Form, FormSignature, linear_combination, make_dual_ber_form
from .forms import make_mixed_ber_form, make_straight_ber_form
from .manifold import CoordinatePatch, PatchMatrix, mixed_ber_field, multiply_by_function, random_function
from .operators import e_alpha_straight, e_cov, e_vec, sigma, tau
from .sampling import Sampler
from .supermatrix import sig


def _combine(S: Sampler, make: Callable[[], Form]) -> Form:
    f, g = make(), make()
    parity = S.rng.randint(0, 1)
    return linear_combination([S.entry(parity), S.entry(parity)], [f, g])


def random_straight(S: Sampler, n: int, m: int, r: int, s: int, depth: int = 1) -> Form:
    """A straight form of degree r|s on V^{n|m}."""
    options = ["ber", "lincomb"]
    if depth > 0 and r >= 1:
        options.append("e_alpha")
    kind = S.choice(options)
    if kind == "ber":
        return make_straight_ber_form(S.frame(sig(n, m), sig(r, s)), n, m)
    if kind == "lincomb":
        return _combine(S, lambda: make_straight_ber_form(S.frame(sig(n, m), sig(r, s)), n, m))
    inner = random_straight(S, n, m, r - 1, s, depth - 1)
    return e_alpha_straight(S.covector(sig(n, m), S.rng.randint(0, 1)))(inner)


def random_dual(S: Sampler, n: int, m: int, p: int, q: int) -> Form:
    if S.rng.random() < 0.5:
        return make_dual_ber_form(S.frame(sig(p, q), sig(n, m)), n, m)
    return _combine(S, lambda: make_dual_ber_form(S.frame(sig(p, q), sig(n, m)), n, m))


def mixed_constructions(sg: FormSignature, depth: int = 1) -> list[str]:
    """Names of the generating-class constructions that land in ``sg``."""
    p, q, r, s, n, m = sg.p, sg.q, sg.r, sg.s, sg.n, sg.m
    out = []
    if p >= r and q >= s:
        out += ["ber", "lincomb"]
    if depth > 0:
        if p >= 1 and r >= 1 and _feasible(sg.with_degrees(p=p - 1, r=r - 1), depth - 1):
            out.append("sigma10")
        if q >= 1 and s >= 1 and _feasible(sg.with_degrees(q=q - 1, s=s - 1), depth - 1):
            out.append("sigma01")
        if r >= 1 and _feasible(sg.with_degrees(r=r - 1), depth - 1):
            out.append("e_cov")
        if p >= 1 and _feasible(sg.with_degrees(p=p - 1), depth - 1):
            out.append("e_vec")
        if (p, q) == (n, m) and s <= m:
            out.append("tau")
    return out


def _feasible(sg: FormSignature, depth: int) -> bool:
    try:
        FormSignature.mixed(sg.n, sg.m, sg.p, sg.q, sg.r, sg.s)
    except Exception:
        return False
    return bool(mixed_constructions(sg, depth))


def random_mixed(S: Sampler, sg: FormSignature, depth: int = 1, kind: Optional[str] = None) -> Form:
    """A mixed form in ``sg`` (dual signatures are read as r|s = 0|0)."""
    sg = sg.as_mixed()
    options = mixed_constructions(sg, depth)
    if not options:
        raise DegreeError(f"the generating class has no construction for {sg}")
    kind = kind or S.choice(options)
    n, m, p, q, r, s = sg.n, sg.m, sg.p, sg.q, sg.r, sg.s

    def ber() -> Form:
        return make_mixed_ber_form(S.frame(sig(p - r, q - s), sig(n, m)), n, m, r, s)

    if kind == "ber":
        return ber()
    if kind == "lincomb":
        return _combine(S, ber)
    if kind == "sigma10":
        return sigma(1, 0)(random_mixed(S, sg.with_degrees(p=p - 1, r=r - 1), depth - 1))
    if kind == "sigma01":
        return sigma(0, 1)(random_mixed(S, sg.with_degrees(q=q - 1, s=s - 1), depth - 1))
    if kind == "e_cov":
        alpha = S.covector(sig(n, m), S.rng.randint(0, 1))
        return e_cov(alpha)(random_mixed(S, sg.with_degrees(r=r - 1), depth - 1))
    if kind == "e_vec":
        u = S.vector(sig(n, m), S.rng.randint(0, 1))
        return e_vec(u)(random_mixed(S, sg.with_degrees(p=p - 1), depth - 1))
    if kind == "tau":
        return tau()(random_straight(S, n, m, r, s, depth - 1))
    raise ValueError(f"unknown construction {kind!r}")


def random_form(S: Sampler, sg: FormSignature, depth: int = 1) -> Form:
    if sg.kind == STRAIGHT:
        return random_straight(S, sg.n, sg.m, sg.r, sg.s, depth)
    if sg.kind == DUAL and S.rng.random() < 0.5:
        return random_dual(S, sg.n, sg.m, sg.p, sg.q)
    return random_mixed(S, sg, depth)


def random_field(S: Sampler, sg: FormSignature, degree: int = 1) -> Form:
    """f(x) Ber(U(x) p ; w) with polynomial f and frame U; needs p >= r, q >= s."""
    sg = sg.as_mixed()
    n, m, p, q, r, s = sg.n, sg.m, sg.p, sg.q, sg.r, sg.s
    if p < r or q < s:
        raise DegreeError(f"no Berezinian form field in {sg}")
    patch = CoordinatePatch(n, m)
    frame = PatchMatrix.random(patch, S.rng, sig(p - r, q - s), sig(n, m), degree=degree)
    f = random_function(patch, S.rng, 0, degree=degree)
    if f.is_zero():
        f = patch.constant(1)
    return multiply_by_function(f, mixed_ber_field(frame, n, m, r, s))


def signatures(n: int, m: int, max_deg: int, kind: str = MIXED, depth: int = 1) -> list[FormSignature]:
    """Every signature on V^{n|m} with degrees <= max_deg reachable by the generating class."""
    out = []
    rng = range(max_deg + 1)
    if kind == STRAIGHT:
        return [FormSignature.straight(n, m, r, s) for r in rng for s in rng if s <= m]
    if kind == DUAL:
        return [FormSignature.dual(n, m, p, q) for p in rng for q in rng if q <= m]
    for p in rng:
        for q in rng:
            for r in rng:
                for s in rng:
                    if not s <= q <= m + s:
                        continue
                    sg = FormSignature.mixed(n, m, p, q, r, s)
                    if mixed_constructions(sg, depth):
                        out.append(sg)
    return out
