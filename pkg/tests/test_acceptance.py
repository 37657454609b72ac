"""The eight acceptance criteria, one test each.

Every test records a ``criterion <k> ...: PASS|FAIL`` line that is printed in
the terminal summary.  Tolerances and time limits are pinned below.
"""

import time
from fractions import Fraction

import numpy as np

from conftest import ACCEPTANCE_LINES
from gtring.markov import empirical_generator, intertwining_rows, simulate
from gtring.operators import (
    ParameterQuadruple,
    apply_D,
    degree2_closed_form,
    linear_cancellation,
    quadratic_cancellation,
    shift_components,
    verify_main_identity,
)
from gtring.ring import Window, phi_monomial
from gtring.signatures import signatures_in_window
from gtring.suites import DEFAULT_QUADRUPLES, SuiteConfig, run_suite

F = Fraction
RATIONAL_QUADRUPLES = tuple(q for q in DEFAULT_QUADRUPLES if all(isinstance(x, Fraction) for x in q.as_tuple()))

MAIN_IDENTITY_SECONDS = 120
INTERTWINING_SECONDS = 60
SIMULATION_SECONDS = 120
STANDARD_ERRORS = 3
JOBS = 4


def record(k, name, ok, detail=""):
    line = f"criterion {k} {name}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def test_criterion_1_main_identity():
    assert len(DEFAULT_QUADRUPLES) == 7 and len(RATIONAL_QUADRUPLES) == 5
    start = time.perf_counter()
    w = Window(-5, 5)
    failures, count = [], 0
    for p in DEFAULT_QUADRUPLES:
        for N in range(0, 4):
            for mu in signatures_in_window(N, -2, 2):
                count += 1
                check = verify_main_identity(p, mu, w)
                if not check.ok:
                    failures.append(check.to_json())
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < MAIN_IDENTITY_SECONDS
    assert record(1, "main identity", ok, f"{count} instances, {elapsed:.1f}s"), failures[:1]


def test_criterion_2_degree_two_closed_forms():
    w = Window(-6, 6)
    kappas = [(k1, k2) for k1 in range(-2, 3) for k2 in range(-2, k1 + 1)]
    bad = []
    for p in RATIONAL_QUADRUPLES:
        for kappa in kappas:
            direct = apply_D(p, phi_monomial(*kappa), w)
            built = degree2_closed_form(p, kappa, w)
            lowering_ok = shift_components(built, sum(kappa)).get(-1) == shift_components(direct, sum(kappa)).get(-1)
            if built != direct or not lowering_ok:
                bad.append((str(p), kappa))
    ok = not bad
    assert record(2, "degree-two closed forms", ok, f"{len(kappas) * len(RATIONAL_QUADRUPLES)} cases"), bad[:1]


def test_criterion_3_cancellations():
    w = Window(-8, 8)
    quad = all(not quadratic_cancellation(n, w) for n in range(-2, 3))
    lin = all(not linear_cancellation(p, w) for p in DEFAULT_QUADRUPLES)
    assert record(3, "coefficient cancellations", quad and lin)


def test_criterion_4_intertwining():
    start = time.perf_counter()
    bad, count = [], 0
    for p in RATIONAL_QUADRUPLES:
        for N in range(1, 4):
            targets = signatures_in_window(N, -3, 3)
            for lam in signatures_in_window(N + 1, -3, 3):
                lhs, rhs = intertwining_rows(p, N, lam)
                for mu in targets:
                    count += 1
                    if lhs.get(mu, 0) != rhs.get(mu, 0):
                        bad.append((str(p), lam, mu))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < INTERTWINING_SECONDS
    assert record(4, "intertwining", ok, f"{count} entries, {elapsed:.1f}s"), bad[:1]


def _suite_criterion(k, name, suite):
    report = run_suite(suite, SuiteConfig(jobs=JOBS))
    assert record(k, name, report.ok, f"{report.passed} passed, {report.failed} failed"), report.first_failure()


def test_criterion_5_hahn_jacobi_chain():
    _suite_criterion(5, "Hahn-Jacobi chain", "hahn-jacobi")


def test_criterion_6_ring_consistency():
    _suite_criterion(6, "ring consistency", "ring")


def test_criterion_7_boundary_consistency():
    _suite_criterion(7, "boundary consistency", "boundary")


def test_criterion_8_simulation():
    start = time.perf_counter()
    p = ParameterQuadruple.of(F(1, 2), F(7, 10), F(1, 2), F(7, 10))
    f = lambda nu: int(nu[0] in (1, -1))
    est, se, exact = empirical_generator(p, (0,), 0.01, 2024, 10**5, f)
    generator_ok = abs(est - float(exact)) <= STANDARD_ERRORS * se

    degenerate = ParameterQuadruple.of(2, F(5, 2), 1, F(3, 2))
    confined = True
    for i in range(10**3):
        traj = simulate(degenerate, 2, (1, 0), 2.0, 99, index=i)
        confined &= bool(traj.states.max() <= 2 and traj.states.min() >= -1)

    a = simulate(p, 3, (0, 0, 0), 5.0, 7, index=2)
    b = simulate(p, 3, (0, 0, 0), 5.0, 7, index=2)
    identical = np.array_equal(a.times, b.times) and np.array_equal(a.states, b.states)

    elapsed = time.perf_counter() - start
    ok = generator_ok and confined and identical and elapsed < SIMULATION_SECONDS
    detail = f"estimate {est:.4f} vs {float(exact)} (se {se:.4f}), confined={confined}, identical={identical}, {elapsed:.1f}s"
    assert record(8, "simulation", ok, detail)
