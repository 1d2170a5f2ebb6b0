"""Theorem suites run by the command-line harness.

Every property is a function ``check(S, sg) -> Outcome`` that draws one random
instance from the sampler ``S`` for the signature ``sg`` and tests one identity
exactly.  The driver derives a seed per (suite, property, dims, signature,
trial) so any single trial can be replayed in isolation.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import ConfigurationError, DomainError, NotInvertible
from .forms import (
    STRAIGHT,
    Form,
    FormSignature,
    check_homogeneity,
    linear_combination,
    pde_residual,
    sample_point,
    zero_form,
)
from .generate import random_field, random_form, random_mixed, random_straight, signatures
from .manifold import (
    CoordinatePatch,
    NaiveForm,
    VectorField,
    add_forms,
    cartan_sides,
    dbar,
    lie_derivative,
    module_action,
    naive_d_function,
    random_function,
)
from .operators import (
    anticommutator,
    e_alpha_straight,
    e_cov,
    e_vec,
    i_u_straight,
    mutations,
    sigma,
    sigma_alt,
    sigma_inv,
    tau,
    tau_inv,
)
from .sampling import Sampler
from .serialize import encode
from .supermatrix import pairing, sig

SUITES = ("defining_eqs", "sigma_tau", "stability", "clifford", "leibniz", "cartan")
REPORT_VERSION = "superforms-report/1"
GRIDS = ("desk", "full")

# (p, q, r, s) covering set for mixed signatures: every degree 0..2 occurs in
# every slot, together with a codegree-below-degree case (0|1, 1|0).
DESK_MIXED = (
    (1, 0, 0, 0),
    (0, 1, 0, 1),
    (1, 1, 1, 0),
    (2, 0, 1, 0),
    (2, 1, 1, 1),
    (1, 2, 0, 1),
    (2, 2, 2, 2),
    (0, 1, 1, 0),
)
MAX_ATTEMPTS = 20


@dataclass
class Outcome:
    ok: bool
    instance: dict


@dataclass(frozen=True)
class Property:
    suite: str
    name: str
    grid: Callable[[int, int, int], list[FormSignature]]
    check: Callable[[Sampler, FormSignature], Outcome]


@dataclass(frozen=True)
class SuiteConfig:
    dims: tuple[tuple[int, int], ...] = ((1, 1), (2, 1), (2, 2))
    max_deg: int = 2
    trials: int = 10
    seed: int = 0
    suites: tuple[str, ...] = SUITES
    pde_equations: int = 8
    grid: str = "desk"
    pool: int = 4
    flip_e_cov_sign: bool = False
    drop_e_vec_third_term: bool = False

    def __post_init__(self):
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise ConfigurationError(f"unknown suite(s): {', '.join(unknown)}")
        if self.grid not in GRIDS:
            raise ConfigurationError(f"unknown grid {self.grid!r}; choose from {', '.join(GRIDS)}")
        if not 1 <= self.pool <= 16:
            raise ConfigurationError("pool must be between 1 and 16")
        if self.trials < 0 or self.max_deg < 0 or self.pde_equations < 0:
            raise ConfigurationError("trials, max-deg and pde-equations must be non-negative")
        for n, m in self.dims:
            if n < 0 or m < 0:
                raise ConfigurationError(f"invalid dimension {n}|{m}")

    def to_json(self) -> dict:
        return {
            "dims": [f"{n}|{m}" for n, m in self.dims],
            "max_deg": self.max_deg,
            "trials": self.trials,
            "seed": self.seed,
            "suites": list(self.suites),
            "pde_equations": self.pde_equations,
            "grid": self.grid,
            "pool": self.pool,
            "mutations": self.mutation_flags(),
        }

    def mutation_flags(self) -> dict:
        return {"flip_e_cov_sign": self.flip_e_cov_sign, "drop_e_vec_third_term": self.drop_e_vec_third_term}


@dataclass
class PropertyResult:
    suite: str
    property: str
    trials: int = 0
    status: str = "pass"
    counterexample: Optional[dict] = None
    wall_time: float = 0.0

    def to_json(self) -> dict:
        out = {"suite": self.suite, "property": self.property, "trials": self.trials, "status": self.status}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class SuiteReport:
    config: SuiteConfig
    results: list[PropertyResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status == "pass" for r in self.results)

    def to_json(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "config": self.config.to_json(),
            "results": [r.to_json() for r in self.results],
        }

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            line = f"{r.status.upper():4} {r.suite}/{r.property}  trials={r.trials}  time={r.wall_time:.2f}s"
            if r.counterexample:
                ce = r.counterexample
                line += f"  first failure: dims {ce['dims']}, {ce['signature_str']}, trial {ce['trial']}"
            lines.append(line)
        lines.append(f"{'ALL PASS' if self.passed else 'FAILURES'}: {len(self.results)} properties")
        return "\n".join(lines)


# -- helpers -------------------------------------------------------------------------

def trial_seed(seed: int, suite: str, prop: str, dims: tuple[int, int], sg: FormSignature, trial: int) -> int:
    key = f"{seed}:{suite}:{prop}:{dims[0]}|{dims[1]}:{sorted(sg.to_json().items())}:{trial}"
    return int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "big")


def _x_dims(sg: FormSignature, field_: bool) -> Optional[tuple[int, int]]:
    return (sg.n, sg.m) if field_ else None


def compare(S: Sampler, lhs: Form, rhs: Form, field_: bool = False, **info) -> Outcome:
    """Evaluate both sides at one random point inside both domains."""
    if lhs.signature != rhs.signature:
        raise ConfigurationError(f"compared forms live in {lhs.signature} and {rhs.signature}")
    for _ in range(MAX_ATTEMPTS):
        pt = sample_point(lhs, S, x_dims=_x_dims(lhs.signature, field_))
        try:
            a, b = lhs.at(pt), rhs.at(pt)
        except (DomainError, NotInvertible):
            continue
        instance = {
            **info,
            "point": {"P": encode(pt.P), "x": encode(pt.x) if pt.x is not None else None},
            "lhs": encode(a),
            "rhs": encode(b),
        }
        return Outcome(a == b, instance)
    raise DomainError("no common domain point found")


def _recipe(form: Form) -> dict:
    try:
        return encode(form.recipe)
    except Exception:  # opaque data (e.g. lambdas) are not part of the record
        return {"op": "opaque"}


def _parities(S: Sampler) -> int:
    return S.rng.randint(0, 1)


# -- grids ---------------------------------------------------------------------------

def mixed_grid(n: int, m: int, R: int) -> list[FormSignature]:
    return signatures(n, m, R)


def straight_grid(n: int, m: int, R: int) -> list[FormSignature]:
    return signatures(n, m, R, kind=STRAIGHT)


def straight_grid_positive(n: int, m: int, R: int) -> list[FormSignature]:
    return [sg for sg in straight_grid(n, m, R) if sg.r >= 1]


def top_codegree_grid(n: int, m: int, R: int) -> list[FormSignature]:
    """E_{n|m}^{r|s}: the image of τ."""
    rng = range(R + 1)
    return [FormSignature.mixed(n, m, n, m, r, s) for r in rng for s in rng if s <= m]


def top_codegree_grid_positive(n: int, m: int, R: int) -> list[FormSignature]:
    return [sg for sg in top_codegree_grid(n, m, R) if sg.r >= 1]


def field_grid(n: int, m: int, R: int) -> list[FormSignature]:
    return [sg for sg in mixed_grid(n, m, R) if sg.p >= sg.r and sg.q >= sg.s]


def sigma_image_grid(n: int, m: int, R: int) -> list[FormSignature]:
    """Signatures whose σ_{1|0} and σ_{0|1} images stay in the degree grid."""
    return [sg for sg in mixed_grid(n, m, R) if max(sg.p, sg.q, sg.r, sg.s) < R or R == 0]


def _small(grid: Callable[[int, int, int], list[FormSignature]], cap: int):
    """The grid restricted to signatures with p+q+r+s <= cap (for costly properties)."""

    def inner(n: int, m: int, R: int) -> list[FormSignature]:
        return [sg for sg in grid(n, m, R) if sg.p + sg.q + sg.r + sg.s <= cap]

    return inner


# -- defining equations -----------------------------------------------------------------

def homogeneity(S: Sampler, sg: FormSignature) -> Outcome:
    f = random_form(S, sg)
    pt = sample_point(f, S)
    info = {"form": _recipe(f), "point": {"P": encode(pt.P)}}
    if sg.kind == STRAIGHT:
        g = S.gl(sig(sg.r, sg.s))
        return Outcome(check_homogeneity(f, pt, g), {**info, "g": encode(g)})
    h = S.gl(sig(sg.p, sg.q))
    g = S.gl(sig(sg.r, sg.s))
    a = S.matrix(sig(sg.n, sg.m), sig(sg.r, sg.s))
    ok = check_homogeneity(f, pt, h, side="right") and check_homogeneity(f, pt, g, side="left", shear=a)
    return Outcome(ok, {**info, "h": encode(h), "g": encode(g), "shear": encode(a)})


def make_pde_check(budget_of: Callable[[], int]):
    def symmetry_pde(S: Sampler, sg: FormSignature) -> Outcome:
        f = random_form(S, sg)
        pt = sample_point(f, S)
        rows, cols = pt.P.shape
        if rows == 0 or cols == 0:
            return Outcome(True, {"form": _recipe(f)})
        budget = budget_of()
        if budget == 0:
            eqs = [(i, j, k, l) for i in range(rows) for j in range(i, rows) for k in range(cols) for l in range(cols)]
        else:
            eqs = []
            for _ in range(budget):
                i, j = sorted((S.rng.randrange(rows), S.rng.randrange(rows)))
                eqs.append((i, j, S.rng.randrange(cols), S.rng.randrange(cols)))
        for eq in eqs:
            res = pde_residual(f, pt, *eq)
            if not res.is_zero():
                return Outcome(False, {"form": _recipe(f), "point": {"P": encode(pt.P)}, "equation": list(eq),
                                       "residual": encode(res)})
        return Outcome(True, {"form": _recipe(f), "equations": len(eqs)})

    return symmetry_pde


# -- σ and τ ----------------------------------------------------------------------------

_UNITS = ((1, 0), (0, 1))


def sigma_inverse_left(S: Sampler, sg: FormSignature) -> Outcome:
    k, l = S.choice(_UNITS)
    f = random_mixed(S, sg)
    return compare(S, sigma_inv(k, l)(sigma(k, l)(f)), f, k=k, l=l, form=_recipe(f))


def sigma_inverse_right(S: Sampler, sg: FormSignature) -> Outcome:
    k, l = S.choice(_UNITS)
    image = sigma(k, l)(random_mixed(S, sg))
    return compare(S, sigma(k, l)(sigma_inv(k, l)(image)), image, k=k, l=l, form=_recipe(image))


def sigma_composition(S: Sampler, sg: FormSignature) -> Outcome:
    (k1, l1), (k2, l2) = S.choice(_UNITS), S.choice(_UNITS)
    f = random_mixed(S, sg)
    lhs = sigma(k1, l1)(sigma(k2, l2)(f))
    rhs = sigma(k1 + k2, l1 + l2)(f)
    return compare(S, lhs, rhs, outer=[k1, l1], inner=[k2, l2], form=_recipe(f))


def tau_inverse_left(S: Sampler, sg: FormSignature) -> Outcome:
    L = random_straight(S, sg.n, sg.m, sg.r, sg.s)
    return compare(S, tau_inv()(tau()(L)), L, form=_recipe(L))


def tau_inverse_right(S: Sampler, sg: FormSignature) -> Outcome:
    M = random_mixed(S, sg)
    return compare(S, tau()(tau_inv()(M)), M, form=_recipe(M))


# -- stability --------------------------------------------------------------------------

def e_cov_commutes_with_sigma(S: Sampler, sg: FormSignature) -> Outcome:
    k, l = S.choice(_UNITS)
    alpha = S.covector(sig(sg.n, sg.m), _parities(S))
    f = random_mixed(S, sg)
    return compare(S, e_cov(alpha)(sigma(k, l)(f)), sigma(k, l)(e_cov(alpha)(f)),
                   k=k, l=l, alpha=encode(alpha), form=_recipe(f))


def e_vec_commutes_with_sigma(S: Sampler, sg: FormSignature) -> Outcome:
    k, l = S.choice(_UNITS)
    u = S.vector(sig(sg.n, sg.m), _parities(S))
    f = random_mixed(S, sg)
    return compare(S, e_vec(u)(sigma(k, l)(f)), sigma(k, l)(e_vec(u)(f)), k=k, l=l, u=encode(u), form=_recipe(f))


def commuting_square(S: Sampler, sg: FormSignature) -> Outcome:
    u = S.vector(sig(sg.n, sg.m), _parities(S))
    M = random_mixed(S, sg)
    lhs = tau_inv()(sigma_inv(1, 0)(e_vec(u)(M)))
    rhs = i_u_straight(u)(tau_inv()(M))
    return compare(S, lhs, rhs, u=encode(u), form=_recipe(M))


def e_alpha_matches_tau(S: Sampler, sg: FormSignature) -> Outcome:
    alpha = S.covector(sig(sg.n, sg.m), _parities(S))
    L = random_straight(S, sg.n, sg.m, sg.r, sg.s)
    return compare(S, e_cov(alpha)(tau()(L)), tau()(e_alpha_straight(alpha)(L)), alpha=encode(alpha), form=_recipe(L))


# -- Clifford relations ------------------------------------------------------------------

def _zero_like(f: Form) -> Form:
    return zero_form(f.signature)


def e_vec_anticommute(S: Sampler, sg: FormSignature) -> Outcome:
    u = S.vector(sig(sg.n, sg.m), _parities(S))
    v = S.vector(sig(sg.n, sg.m), _parities(S))
    f = random_mixed(S, sg)
    lhs = anticommutator(e_vec(u), e_vec(v))(f)
    return compare(S, lhs, _zero_like(lhs), u=encode(u), v=encode(v), form=_recipe(f))


def e_cov_anticommute(S: Sampler, sg: FormSignature) -> Outcome:
    a = S.covector(sig(sg.n, sg.m), _parities(S))
    b = S.covector(sig(sg.n, sg.m), _parities(S))
    f = random_mixed(S, sg)
    lhs = anticommutator(e_cov(a), e_cov(b))(f)
    return compare(S, lhs, _zero_like(lhs), alpha=encode(a), beta=encode(b), form=_recipe(f))


def clifford_central(S: Sampler, sg: FormSignature) -> Outcome:
    u = S.vector(sig(sg.n, sg.m), _parities(S))
    a = S.covector(sig(sg.n, sg.m), _parities(S))
    f = random_mixed(S, sg)
    lhs = anticommutator(e_vec(u), e_cov(a))(f)
    rhs = linear_combination([pairing(u, a)], [sigma(1, 0)(f)])
    return compare(S, lhs, rhs, u=encode(u), alpha=encode(a), form=_recipe(f))


def sigma_alternative(S: Sampler, sg: FormSignature) -> Outcome:
    f = random_mixed(S, sg)
    return compare(S, sigma_alt()(f), sigma(1, 0)(f), form=_recipe(f))


def contraction_anticommute(S: Sampler, sg: FormSignature) -> Outcome:
    u = S.vector(sig(sg.n, sg.m), _parities(S))
    v = S.vector(sig(sg.n, sg.m), _parities(S))
    L = random_straight(S, sg.n, sg.m, sg.r, sg.s)
    lhs = anticommutator(i_u_straight(u), i_u_straight(v))(L)
    return compare(S, lhs, _zero_like(lhs), u=encode(u), v=encode(v), form=_recipe(L))


def straight_grid_two(n: int, m: int, R: int) -> list[FormSignature]:
    return [sg for sg in straight_grid(n, m, R) if sg.r >= 2]


# -- complex and Leibniz ------------------------------------------------------------------

def dbar_squared(S: Sampler, sg: FormSignature) -> Outcome:
    f = random_field(S, sg)
    d = dbar()
    lhs = d(d(f))
    return compare(S, lhs, _zero_like(lhs), field_=True, form=_recipe(f))


def _naive(S: Sampler, patch: CoordinatePatch, kind: str) -> NaiveForm:
    f = random_function(patch, S.rng, _parities(S))
    g = random_function(patch, S.rng, _parities(S))
    if kind == "f":
        return NaiveForm.function(f)
    if kind == "df":
        return naive_d_function(f)
    if kind == "fdg":
        return NaiveForm.function(f) * naive_d_function(g)
    return naive_d_function(f) * naive_d_function(g)


def make_leibniz(kind: str):
    degree = {"f": 0, "df": 1, "fdg": 1, "dfdg": 2}[kind]

    def leibniz(S: Sampler, sg: FormSignature) -> Outcome:
        patch = CoordinatePatch(sg.n, sg.m)
        w = _naive(S, patch, kind)
        f = random_field(S, sg)
        d = dbar()
        lhs = d(module_action(w, f, degree))
        first = module_action(w.d(), f, degree + 1)
        second = module_action(w, d(f), degree)
        if degree % 2:
            second = linear_combination([-1], [second])
        rhs = add_forms([first, second])
        return compare(S, lhs, rhs, field_=True, omega=repr(w), form=_recipe(f))

    return leibniz


# -- Cartan ---------------------------------------------------------------------------------

def make_cartan(parity: int):
    def cartan(S: Sampler, sg: FormSignature) -> Outcome:
        X = VectorField.random(CoordinatePatch(sg.n, sg.m), S.rng, parity)
        f = random_field(S, sg)
        lhs, rhs = cartan_sides(X, f)
        return compare(S, lhs, rhs, field_=True, X=X.to_json(), form=_recipe(f))

    return cartan


def lie_commutes_with_sigma(S: Sampler, sg: FormSignature) -> Outcome:
    k, l = S.choice(_UNITS)
    X = VectorField.random(CoordinatePatch(sg.n, sg.m), S.rng, _parities(S))
    f = random_field(S, sg)
    d = lie_derivative(X)
    return compare(S, d(sigma(k, l)(f)), sigma(k, l)(d(f)), field_=True, k=k, l=l, X=X.to_json(), form=_recipe(f))


def lie_commutes_with_tau(S: Sampler, sg: FormSignature) -> Outcome:
    from .manifold import PatchMatrix, straight_ber_field

    patch = CoordinatePatch(sg.n, sg.m)
    X = VectorField.random(patch, S.rng, _parities(S))
    frame = PatchMatrix.random(patch, S.rng, sig(sg.n, sg.m), sig(sg.r, sg.s))
    L = straight_ber_field(frame, sg.n, sg.m)
    d = lie_derivative(X)
    return compare(S, d(tau()(L)), tau()(d(L)), field_=True, X=X.to_json(), form=_recipe(L))


# -- registry -------------------------------------------------------------------------------

def properties(config: SuiteConfig) -> list[Property]:
    budget = lambda: config.pde_equations  # noqa: E731
    small = _small(field_grid, 4)
    return [
        Property("defining_eqs", "homogeneity_straight", straight_grid, homogeneity),
        Property("defining_eqs", "homogeneity_mixed", mixed_grid, homogeneity),
        Property("defining_eqs", "symmetry_pde_straight", straight_grid, make_pde_check(budget)),
        Property("defining_eqs", "symmetry_pde_mixed", mixed_grid, make_pde_check(budget)),
        Property("sigma_tau", "sigma_inv_sigma", mixed_grid, sigma_inverse_left),
        Property("sigma_tau", "sigma_sigma_inv", mixed_grid, sigma_inverse_right),
        Property("sigma_tau", "sigma_composition", mixed_grid, sigma_composition),
        Property("sigma_tau", "tau_inv_tau", straight_grid, tau_inverse_left),
        Property("sigma_tau", "tau_tau_inv", top_codegree_grid, tau_inverse_right),
        Property("stability", "e_cov_sigma", mixed_grid, e_cov_commutes_with_sigma),
        Property("stability", "e_vec_sigma", mixed_grid, e_vec_commutes_with_sigma),
        Property("stability", "commuting_square", top_codegree_grid_positive, commuting_square),
        Property("stability", "e_alpha_tau", straight_grid, e_alpha_matches_tau),
        Property("clifford", "e_vec_anticommute", mixed_grid, e_vec_anticommute),
        Property("clifford", "e_cov_anticommute", mixed_grid, e_cov_anticommute),
        Property("clifford", "central_term", mixed_grid, clifford_central),
        Property("clifford", "sigma_alternative", mixed_grid, sigma_alternative),
        Property("clifford", "i_u_anticommute", straight_grid_two, contraction_anticommute),
        Property("leibniz", "dbar_squared", field_grid, dbar_squared),
        Property("leibniz", "leibniz_f", small, make_leibniz("f")),
        Property("leibniz", "leibniz_df", small, make_leibniz("df")),
        Property("leibniz", "leibniz_f_dg", small, make_leibniz("fdg")),
        Property("leibniz", "leibniz_df_dg", small, make_leibniz("dfdg")),
        Property("cartan", "cartan_even", field_grid, make_cartan(0)),
        Property("cartan", "cartan_odd", field_grid, make_cartan(1)),
        Property("cartan", "lie_sigma", field_grid, lie_commutes_with_sigma),
        Property("cartan", "lie_tau", straight_grid, lie_commutes_with_tau),
    ]


def find_property(config: SuiteConfig, suite: str, name: str) -> Property:
    for prop in properties(config):
        if prop.suite == suite and prop.name == name:
            return prop
    raise ConfigurationError(f"unknown property {suite}/{name}")


def run_trial(config: SuiteConfig, prop: Property, sg: FormSignature, seed: int) -> Outcome:
    """One trial; resamples (deterministically) when a draw leaves every domain empty."""
    S = Sampler(seed, pool=config.pool)
    with mutations(**config.mutation_flags()):
        last: Exception | None = None
        for _ in range(MAX_ATTEMPTS):
            try:
                return prop.check(S, sg)
            except (DomainError, NotInvertible) as exc:
                last = exc
    return Outcome(False, {"error": f"no admissible instance: {last}"})


def grid_for(config: SuiteConfig, prop: Property, dims: tuple[int, int]) -> list[FormSignature]:
    sgs = prop.grid(dims[0], dims[1], config.max_deg)
    if config.grid == "full":
        return sgs
    return [sg for sg in sgs if sg.kind == STRAIGHT or (sg.p, sg.q) == (sg.n, sg.m) or (sg.p, sg.q, sg.r, sg.s) in DESK_MIXED]


def run_property(config: SuiteConfig, prop: Property) -> PropertyResult:
    result = PropertyResult(prop.suite, prop.name)
    start = time.perf_counter()
    for dims in config.dims:
        for sg in grid_for(config, prop, dims):
            for t in range(config.trials):
                seed = trial_seed(config.seed, prop.suite, prop.name, dims, sg, t)
                outcome = run_trial(config, prop, sg, seed)
                result.trials += 1
                if not outcome.ok and result.counterexample is None:
                    result.status = "fail"
                    result.counterexample = {
                        "suite": prop.suite,
                        "property": prop.name,
                        "dims": f"{dims[0]}|{dims[1]}",
                        "signature": sg.to_json(),
                        "signature_str": str(sg),
                        "trial": t,
                        "trial_seed": seed,
                        "pde_equations": config.pde_equations,
                        "grid": config.grid,
                        "pool": config.pool,
                        "mutations": config.mutation_flags(),
                        "instance": outcome.instance,
                    }
    result.wall_time = time.perf_counter() - start
    return result


def run_suites(config: SuiteConfig, progress: Optional[Callable[[PropertyResult], None]] = None) -> SuiteReport:
    report = SuiteReport(config)
    for prop in properties(config):
        if prop.suite not in config.suites:
            continue
        res = run_property(config, prop)
        report.results.append(res)
        if progress:
            progress(res)
    return report


def replay(counterexample: dict) -> tuple[bool, bool]:
    """Re-run a recorded failing trial.

    Returns ``(still_fails, same_instance)``: whether the identity fails again,
    and whether the regenerated instance serializes identically.
    """
    flags = counterexample.get("mutations", {})
    config = SuiteConfig(
        suites=(counterexample["suite"],),
        pde_equations=counterexample.get("pde_equations", 8),
        grid=counterexample.get("grid", "desk"),
        pool=counterexample.get("pool", 4),
        **flags,
    )
    prop = find_property(config, counterexample["suite"], counterexample["property"])
    sg = FormSignature.from_json(counterexample["signature"])
    outcome = run_trial(config, prop, sg, counterexample["trial_seed"])
    return (not outcome.ok, outcome.instance == counterexample["instance"])


def parse_dims(text: str) -> tuple[tuple[int, int], ...]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            n, m = part.split("|")
            out.append((int(n), int(m)))
        except ValueError:
            raise ConfigurationError(f"cannot parse dimension {part!r}; expected n|m") from None
    if not out:
        raise ConfigurationError("no dimensions given")
    return tuple(out)


def parse_suites(text: str) -> tuple[str, ...]:
    names = tuple(s.strip() for s in text.split(",") if s.strip())
    if names == ("all",):
        return SUITES
    return names


def selected(names: Sequence[str]) -> tuple[str, ...]:
    return tuple(s for s in SUITES if s in names)
