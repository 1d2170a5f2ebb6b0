"""Acceptance criteria, checked exactly on the desk grid.

Dimensions 1|1, 2|1, 2|2; degrees up to 2; 10 trials per (property,
signature), 20 for the Clifford relations.  Each criterion records one
PASS/FAIL line, printed in the terminal summary.
"""

import random
from fractions import Fraction

import pytest

from classical_oracle import at, column, contract, evaluate, one_form, random_omega, random_vectors, row, to_form, wedge
from conftest import ACCEPTANCE_LINES
from superforms.operators import e_alpha_straight, i_u_straight
from superforms.suites import SuiteConfig, grid_for, properties, replay, run_suites

SEED = 20240611
DIMS = ((1, 1), (2, 1), (2, 2))
TRIALS = 10
CLIFFORD_TRIALS = 20


def record(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES[number] = line
    print(line)
    return ok


@pytest.fixture(scope="module")
def report():
    main = SuiteConfig(dims=DIMS, max_deg=2, trials=TRIALS, seed=SEED,
                       suites=("defining_eqs", "sigma_tau", "stability", "leibniz", "cartan"))
    clifford = SuiteConfig(dims=DIMS, max_deg=2, trials=CLIFFORD_TRIALS, seed=SEED, suites=("clifford",))
    results = {}
    for config in (main, clifford):
        for r in run_suites(config).results:
            results[r.suite, r.property] = (r, config)
    return results


def expected_trials(config, suite, name):
    prop = next(p for p in properties(config) if (p.suite, p.name) == (suite, name))
    return config.trials * sum(len(grid_for(config, prop, d)) for d in config.dims)


def check(report, number, title, names):
    failures, counts = [], []
    for suite, name in names:
        r, config = report[suite, name]
        want = expected_trials(config, suite, name)
        counts.append(r.trials)
        if r.status != "pass" or r.trials != want or r.trials == 0:
            ce = r.counterexample or {}
            failures.append(f"{suite}/{name}: {r.status}, {r.trials}/{want} trials {ce.get('signature_str', '')}")
    detail = "; ".join(failures) if failures else f"{len(names)} properties, {sum(counts)} exact trials"
    assert record(number, title, not failures, detail), detail


def test_criterion_1_defining_equations(report):
    check(report, 1, "defining equations (homogeneity and symmetry systems)", [
        ("defining_eqs", "homogeneity_straight"),
        ("defining_eqs", "homogeneity_mixed"),
        ("defining_eqs", "symmetry_pde_straight"),
        ("defining_eqs", "symmetry_pde_mixed"),
    ])


def test_criterion_2_sigma_isomorphisms(report):
    check(report, 2, "σ⁻¹σ = id, σσ⁻¹ = id, σσ' = σ''", [
        ("sigma_tau", "sigma_inv_sigma"),
        ("sigma_tau", "sigma_sigma_inv"),
        ("sigma_tau", "sigma_composition"),
    ])


def test_criterion_3_tau_isomorphisms(report):
    check(report, 3, "τ⁻¹τ = id, ττ⁻¹ = id", [
        ("sigma_tau", "tau_inv_tau"),
        ("sigma_tau", "tau_tau_inv"),
    ])


def test_criterion_4_stability(report):
    check(report, 4, "e(α), e(u) commute with σ; commuting square; e(α)τ = τe_α", [
        ("stability", "e_cov_sigma"),
        ("stability", "e_vec_sigma"),
        ("stability", "commuting_square"),
        ("stability", "e_alpha_tau"),
    ])


def test_criterion_5_clifford(report):
    check(report, 5, "Clifford relations, central term, alternative σ", [
        ("clifford", "e_vec_anticommute"),
        ("clifford", "e_cov_anticommute"),
        ("clifford", "central_term"),
        ("clifford", "sigma_alternative"),
        ("clifford", "i_u_anticommute"),
    ])


def test_criterion_6_classical_degeneration():
    failures = 0
    cases = 0
    for n in range(1, 5):
        for r in range(0, n + 1):
            for trial in range(TRIALS):
                rng = random.Random(f"{SEED}:{n}:{r}:{trial}")
                omega = random_omega(rng, n, r)
                alpha = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
                u = [Fraction(rng.randint(-3, 3)) for _ in range(n)]
                L = to_form(omega, n, r)
                if r < n:
                    vs = random_vectors(rng, r + 1, n)
                    cases += 1
                    failures += at(e_alpha_straight(column(alpha))(L), vs, n) != evaluate(wedge(one_form(alpha), omega), vs)
                if r > 0:
                    vs = random_vectors(rng, r - 1, n)
                    cases += 1
                    failures += at(i_u_straight(row(u))(L), vs, n) != evaluate(contract(omega, u), vs)
    ok = failures == 0
    assert record(6, "e_α = α∧ and i_u = u⌟ for m = s = 0 against the exterior-algebra oracle", ok,
                  f"{cases - failures}/{cases} cases"), failures


def test_criterion_7_complex_and_leibniz(report):
    check(report, 7, "d̄² = 0 and the Leibniz formula for f, df, f dg, df dg", [
        ("leibniz", "dbar_squared"),
        ("leibniz", "leibniz_f"),
        ("leibniz", "leibniz_df"),
        ("leibniz", "leibniz_f_dg"),
        ("leibniz", "leibniz_df_dg"),
    ])


def test_criterion_8_cartan(report):
    check(report, 8, "d̄e(X) + e(X)d̄ = δ_Xσ for even and odd X; δ_Xσ = σδ_X", [
        ("cartan", "cartan_even"),
        ("cartan", "cartan_odd"),
        ("cartan", "lie_sigma"),
        ("cartan", "lie_tau"),
    ])


def test_criterion_9_harness_integrity():
    problems, replayed = [], 0
    for flag in ("flip_e_cov_sign", "drop_e_vec_third_term"):
        config = SuiteConfig(dims=DIMS, trials=1, seed=SEED, suites=("stability", "clifford", "cartan"), **{flag: True})
        report = run_suites(config)
        for suite in config.suites:
            failed = [r for r in report.results if r.suite == suite and r.status == "fail"]
            if not failed:
                problems.append(f"{flag}: {suite} did not fail")
            for r in failed:
                still_fails, same = replay(r.counterexample)
                replayed += 1
                if not (still_fails and same):
                    problems.append(f"{flag}: {suite}/{r.property} counterexample does not replay")
    ok = not problems
    record(9, "both mutation flags make suites 4, 5, 8 fail with replayable counterexamples", ok,
           "; ".join(problems) or f"{replayed} counterexamples replayed")
    assert ok, problems
