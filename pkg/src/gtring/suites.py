"""Named identity suites behind ``gtring verify``.

Each suite is a list of independent tasks; a task returns a list of report
entries ``(id, params, ok, detail)``.  Tasks run in a process pool when
``jobs > 1`` and the report is assembled in submission order.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .boundary import (
    link_infinity,
    make_simplex_point,
    phi_hat,
    phi_hat_table,
    point_from_t,
    sigma_hat,
    vertex_point,
)
from .markov import generator_row, intertwining_rows, link_row
from .operators import (
    ParameterQuadruple,
    apply_D,
    degree2_closed_form,
    jump_rate,
    linear_cancellation,
    quadratic_cancellation,
    shift_components,
    verify_main_identity,
    verify_phi_commutation,
)
from .orthopoly import (
    HahnJacobiParams,
    apply_multivariate_operator,
    apply_one_var_operator,
    hahn_link_row,
    hahn_poly,
    hahn_rates,
    hahn_to_jacobi_constant,
    jacobi_poly,
    multivariate_eigenvalue,
    multivariate_poly,
    quotient_operator_A,
    triple_commutator,
    verify_jacobi_quotient_D,
    verify_link_intertwining,
    verify_jacobi_quotient_A,
)
from .polynomials import Poly1, SymPolyM
from .report import SuiteReport
from .ring import (
    PHI,
    SIGMA,
    RingElement,
    Window,
    lr_coefficient,
    multiply,
    norm,
    phi_monomial,
    phi_to_sigma_window,
    sigma_element,
    sigma_element_to_phi,
    sigma_to_phi,
)
from .scalars import GaussianRational
from .signatures import (
    UsageError,
    complement_in_rectangle,
    signatures_in_window,
    vandermonde,
    weyl_dimension,
)

__all__ = ["SUITES", "SuiteConfig", "DEFAULT_QUADRUPLES", "DEFAULT_HAHN_JACOBI_PAIRS", "run_suite"]

_F = Fraction

DEFAULT_QUADRUPLES = (
    ParameterQuadruple.of(_F(1, 2), _F(7, 10), _F(1, 2), _F(7, 10)),
    ParameterQuadruple.of(_F(1, 3), _F(1, 4), _F(-1, 5), _F(2, 7)),
    ParameterQuadruple.of(_F(3, 2), _F(5, 3), _F(-1, 2), _F(-2, 5)),
    ParameterQuadruple.of(2, 3, 1, _F(1, 2)),
    ParameterQuadruple.of(_F(-7, 3), _F(1, 6), _F(5, 4), _F(-3, 8)),
    ParameterQuadruple.of(
        GaussianRational(_F(1, 2), 1), GaussianRational(_F(1, 2), -1),
        GaussianRational(_F(1, 3), _F(1, 2)), GaussianRational(_F(1, 3), _F(-1, 2)),
    ),
    ParameterQuadruple.of(GaussianRational(0, _F(2, 3)), _F(1, 5), GaussianRational(_F(-1, 4), 1), _F(3, 7)),
)

DEFAULT_HAHN_JACOBI_PAIRS = ((_F(0), _F(0)), (_F(1, 2), _F(1, 3)), (_F(-1, 2), _F(2)), (_F(3, 4), _F(-2, 3)), (_F(5), _F(1, 7)))


@dataclass
class SuiteConfig:
    quadruples: tuple = DEFAULT_QUADRUPLES
    N: int | None = None
    m: int | None = None
    window: Window | None = None
    mode: str = "exact"
    tol: float = 1e-12
    jobs: int = 1
    corrupt_rate: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def rational_quadruples(self) -> tuple:
        real = tuple(q for q in self.quadruples if all(isinstance(x, Fraction) for x in q.as_tuple()))
        return real or self.quadruples


def corrupted_jump_rate(p, N, nu, mu):
    """Test hook: the genuine rate with the diagonal shifted by one."""
    return jump_rate(p, N, nu, mu) + (1 if nu == mu else 0)


def _entry(ident, params, ok, detail=None):
    return (ident, params, bool(ok), None if ok else detail)


def _check_entry(ident, check):
    return _entry(ident, check.instance, check.ok, check.first_discrepancy)


# main identity ----------------------------------------------------------------------


def _task_main_identity(p, N, lo, hi, corrupt):
    w = Window(lo, hi)
    rate = corrupted_jump_rate if corrupt else jump_rate
    return [
        _check_entry(f"main:{p}:{mu}", verify_main_identity(p, mu, w, rate=rate))
        for mu in signatures_in_window(N, -2, 2)
    ]


def _task_cancellations(p, lo, hi):
    w = Window(lo, hi)
    out = []
    for n in range(-2, 3):
        residue = quadratic_cancellation(n, w)
        out.append(_entry(f"quadratic-cancellation:{n}", {"n": n, "window": [lo, hi]}, not residue, str(residue)))
    residue = linear_cancellation(p, w)
    out.append(_entry(f"linear-cancellation:{p}", {"params": p.to_json(), "window": [lo, hi]}, not residue, str(residue)))
    return out


def _task_phi_commutation(p, lo, hi):
    w = Window(lo, hi)
    elements = [sigma_element((1,)), sigma_element((1, -1)), phi_monomial(0, 0) + phi_monomial(1, -1).scale(2)]
    return [_check_entry(f"phi-commutation:{p}:{e}", verify_phi_commutation(p, e, w)) for e in elements]


def _main_identity_tasks(cfg: SuiteConfig):
    w = cfg.window or Window(-5, 5)
    top = cfg.N or 3
    tasks = []
    for p in cfg.quadruples:
        for N in range(1, top + 1):
            tasks.append((_task_main_identity, (p, N, w.lo, w.hi, cfg.corrupt_rate)))
        tasks.append((_task_cancellations, (p, -8, 8)))
        tasks.append((_task_phi_commutation, (p, -4, 4)))
    return tasks


# intertwining ----------------------------------------------------------------------


def _task_intertwining(p, N, lo, hi):
    out = []
    for lam in signatures_in_window(N + 1, lo, hi):
        lhs, rhs = intertwining_rows(p, N, lam)
        diff = next((mu for mu in sorted(set(lhs) | set(rhs)) if lhs.get(mu, 0) != rhs.get(mu, 0)), None)
        detail = None
        if diff is not None:
            detail = {"mu": list(diff), "lhs": str(lhs.get(diff, 0)), "rhs": str(rhs.get(diff, 0))}
        out.append(_entry(f"intertwine:{p}:{lam}", {"N": N, "lambda": list(lam), "params": p.to_json()}, diff is None, detail))
    return out


def _intertwine_tasks(cfg: SuiteConfig):
    w = cfg.window or Window(-3, 3)
    top = cfg.N or 3
    return [(_task_intertwining, (p, N, w.lo, w.hi)) for p in cfg.rational_quadruples for N in range(1, top + 1)]


# degree two closed forms ----------------------------------------------------------------


def _task_degree2(p, lo, hi):
    w = Window(lo, hi)
    out = []
    for k1 in range(-2, 3):
        for k2 in range(-2, k1 + 1):
            direct = apply_D(p, phi_monomial(k1, k2), w)
            closed = degree2_closed_form(p, (k1, k2), w)
            ok = direct == closed
            out.append(_entry(f"degree2:{p}:{(k1, k2)}", {"kappa": [k1, k2], "params": p.to_json()}, ok, str(direct - closed)))
    # the lowering component is built by mirroring; compare it alone with the direct expansion
    kappa = (1, -1)
    direct = shift_components(apply_D(p, phi_monomial(*kappa), w), sum(kappa)).get(-1, RingElement(PHI, {}))
    mirrored = shift_components(degree2_closed_form(p, kappa, w), sum(kappa)).get(-1, RingElement(PHI, {}))
    out.append(_entry(f"mirror-component:{p}", {"kappa": list(kappa), "params": p.to_json()}, direct == mirrored, str(direct - mirrored)))
    return out


def _closed_form_tasks(cfg: SuiteConfig):
    w = cfg.window or Window(-6, 6)
    return [(_task_degree2, (p, w.lo, w.hi)) for p in cfg.quadruples]


# Hahn and Jacobi chain ---------------------------------------------------------------


def _task_maya_identity(top):
    out = []
    for m in range(1, top + 1):
        for N in range(1, top + 1):
            M = N + m - 1
            base = 1
            for k in range(M + 1):
                base *= factorial(k)
            for lam in signatures_in_window(N, 0, m):
                _, L, K = complement_in_rectangle(lam, m, N)
                lhs = vandermonde(L)
                for k in K:
                    lhs *= factorial(k) * factorial(M - k)
                ok = lhs == base * vandermonde(K)
                out.append(_entry(f"maya-vandermonde:{m}x{N}:{lam}", {"m": m, "N": N, "lambda": list(lam)}, ok))
    return out


def _task_binomial_transform(a, b, top_M):
    out = []
    x = Poly1.x()
    for M in range(1, top_M + 1):
        params = HahnJacobiParams(a, b, M)
        for n in range(M + 1):
            h = hahn_poly(n, params)
            lhs = sum((comb(M, k) * x**k * (1 - x) ** (M - k) * h(k) for k in range(M + 1)), Poly1())
            ok = lhs == jacobi_poly(n, a, b)
            out.append(_entry(f"binomial-transform:{a},{b}:M={M}:n={n}", {"a": str(a), "b": str(b), "M": M, "n": n}, ok))
    return out


def _task_eigen(a, b, top_n):
    out = []
    params = HahnJacobiParams(a, b, top_n)
    for n in range(top_n + 1):
        ev = -n * (n + params.a + params.b + 1)
        for family, poly in (("hahn", hahn_poly(n, params)), ("jacobi", jacobi_poly(n, a, b))):
            ok = apply_one_var_operator(family, params, poly) == poly * ev
            out.append(_entry(f"eigen-{family}:{a},{b}:n={n}", {"a": str(a), "b": str(b), "n": n}, ok))
    return out


def _task_multivariate_eigen(a, b, m, M):
    out = []
    params = HahnJacobiParams(a, b, M)
    for nu in signatures_in_window(m, 0, M - m + 1):
        for family in ("hahn", "jacobi"):
            f = multivariate_poly(family, params, nu, m)
            ok = apply_multivariate_operator(family, params, m, f) == f * multivariate_eigenvalue(params, nu, m)
            out.append(_entry(f"eigen-{family}:{a},{b}:m={m}:{nu}", {"a": str(a), "b": str(b), "m": m, "nu": list(nu)}, ok))
    return out


def _task_transcription(a, b, top):
    out = []
    for m in range(1, top + 1):
        p = ParameterQuadruple.of(m, m + a, 0, b)
        for N in range(1, top + 1):
            M = N + m - 1
            for lam in signatures_in_window(N, 0, m):
                K = complement_in_rectangle(lam, m, N)[2]
                row = generator_row(p, N, lam).entries
                mapped = {complement_in_rectangle(mu, m, N)[2]: q for mu, q in row.items() if mu != lam and q}
                expected = hahn_rates(K, M, a, b)
                ok = mapped == expected and row[lam] == -sum(expected.values(), Fraction(0))
                out.append(_entry(f"rate-transcription:{a},{b}:{m}x{N}:{lam}", {"m": m, "N": N, "lambda": list(lam)}, ok))
    return out


T_POINTS = {
    1: ([_F(1, 2)], [_F(1, 7)], [_F(3, 4)], [_F(2, 5)], [_F(5, 9)], [_F(8, 11)]),
    2: (
        [_F(2, 3), _F(1, 5)],
        [_F(1, 2), _F(1, 7)],
        [_F(3, 4), _F(1, 3)],
        [_F(2, 5), _F(2, 5)],
        [_F(5, 9), _F(3, 11)],
        [_F(8, 11), _F(1, 13)],
    ),
}


def _task_link_constants(a, b, m, N):
    params = HahnJacobiParams(a, b, N + m - 1)
    out = []
    for nu in signatures_in_window(m, 0, N):
        consts = hahn_to_jacobi_constant(params, nu, m, T_POINTS[m])
        usable = sum(1 for t in T_POINTS[m] if multivariate_poly("jacobi", params, nu, m)(t))
        ok = len(consts) == 1 and usable >= 3
        out.append(
            _entry(
                f"hahn-to-jacobi:{a},{b}:{m}x{N}:{nu}",
                {"m": m, "N": N, "nu": list(nu), "constant": [str(c) for c in sorted(consts)]},
                ok,
                "ratio depends on t",
            )
        )
    return out


def _task_link_intertwining(a, b, m, N):
    params = HahnJacobiParams(a, b, N + m - 1)
    labels = signatures_in_window(m, 0, N)
    hahns = [multivariate_poly("hahn", params, nu, m) for nu in labels]
    combo = lambda K: sum((h(K) * (i + 1) for i, h in enumerate(hahns)), Fraction(0))
    out = []
    for nu, h in zip(labels, hahns):
        out.append(_check_entry(f"link-intertwining:{a},{b}:{m}x{N}:{nu}", verify_link_intertwining(params, m, h)))
    out.append(_check_entry(f"link-intertwining:{a},{b}:{m}x{N}:span", verify_link_intertwining(params, m, combo)))
    return out


def _symmetric_monomials(m, top_degree):
    out = []
    for d in range(top_degree + 1):
        for lam in signatures_in_window(m, 0, d):
            if sum(lam) == d:
                out.append(SymPolyM(m, {lam: 1}))
    return out


def _task_jacobi_quotient_A(a, b, m, top_degree):
    out = []
    for f in _symmetric_monomials(m, top_degree):
        out.append(_check_entry(f"quotient-A:{a},{b}:m={m}:{list(f.terms)[0]}", verify_jacobi_quotient_A(m, a, b, f)))
    return out


def _task_jacobi_quotient_D(a, b, k, l, top_degree):
    return [
        _check_entry(f"quotient-D:{a},{b}:k={k},l={l}:{list(f.terms)[0]}", verify_jacobi_quotient_D(k, l, k + a, l + b, f))
        for f in _symmetric_monomials(k + l, top_degree)
    ]


def _task_order_two(a, b, seed):
    rng = random.Random(seed)
    m = 2

    def rand_poly(deg):
        return SymPolyM(m, {lam: _F(rng.randint(-5, 5), rng.randint(1, 4)) for lam in signatures_in_window(m, 0, deg) if sum(lam) <= deg})

    op = lambda g: quotient_operator_A(m, a, b, g)
    out = []
    for trial in range(3):
        xs = [rand_poly(1) for _ in range(3)]
        f = rand_poly(1)
        value = triple_commutator(op, *xs, f)
        out.append(_entry(f"order-two:{a},{b}:{trial}", {"a": str(a), "b": str(b), "trial": trial}, not value, value.to_json()))
    return out


def _hahn_jacobi_tasks(cfg: SuiteConfig):
    pairs = cfg.extra.get("pairs", DEFAULT_HAHN_JACOBI_PAIRS)
    tasks = [(_task_maya_identity, (4,))]
    for a, b in pairs:
        tasks.append((_task_binomial_transform, (a, b, 8)))
        tasks.append((_task_eigen, (a, b, 8)))
        tasks.append((_task_transcription, (a, b, 3)))
        for m in (2, 3):
            tasks.append((_task_multivariate_eigen, (a, b, m, m + 2)))
        for m in (1, 2):
            for N in range(1, 5):
                tasks.append((_task_link_constants, (a, b, m, N)))
                tasks.append((_task_link_intertwining, (a, b, m, N)))
            tasks.append((_task_jacobi_quotient_A, (a, b, m, 4)))
        for k, l in ((1, 0), (0, 1), (2, 0), (1, 1), (0, 2)):
            tasks.append((_task_jacobi_quotient_D, (a, b, k, l, 3)))
    a, b = pairs[1]
    tasks.append((_task_order_two, (a, b, 11)))
    return tasks


# ring ------------------------------------------------------------------------------


def _task_round_trips(lo, hi, top):
    out = []
    w = Window(lo, hi)
    for N in range(1, top + 1):
        for lam in signatures_in_window(N, lo, hi):
            back = phi_to_sigma_window(sigma_to_phi(lam).filter(w.holds), w)
            ok = back == sigma_element(lam)
            out.append(_entry(f"sigma-phi-sigma:{lam}", {"lambda": list(lam), "window": [lo, hi]}, ok, str(back)))
            mono = RingElement(PHI, {lam: 1})
            again = sigma_element_to_phi(phi_to_sigma_window(mono, w)).filter(w.holds)
            out.append(_entry(f"phi-sigma-phi:{lam}", {"monomial": list(lam), "window": [lo, hi]}, again == mono, str(again)))
    return out


def _task_dimension_count(lo, hi, top):
    out = []
    for total in range(2, top + 1):
        for M in range(1, total):
            N = total - M
            for lam in signatures_in_window(total, lo, hi):
                acc = 0
                for mu in signatures_in_window(M, lam[-1], lam[0]):
                    for nu in signatures_in_window(N, lam[-1], lam[0]):
                        c = lr_coefficient(lam, mu, nu)
                        if c:
                            acc += c * weyl_dimension(mu) * weyl_dimension(nu)
                ok = acc == weyl_dimension(lam)
                out.append(_entry(f"dimension-count:{M}+{N}:{lam}", {"M": M, "N": N, "lambda": list(lam)}, ok, {"sum": acc}))
    return out


def _task_norm(seed, count):
    rng = random.Random(seed)
    w = Window(-3, 3)
    out = []

    def rand_element():
        terms = {}
        for _ in range(rng.randint(1, 3)):
            N = rng.randint(0, 2)
            lam = tuple(sorted((rng.randint(-1, 1) for _ in range(N)), reverse=True))
            terms[lam] = _F(rng.randint(-6, 6), rng.randint(1, 5))
        return RingElement(SIGMA, terms)

    for i in range(count):
        a, b = rand_element(), rand_element()
        prod = multiply(a, b, w)
        ok = norm(prod) <= norm(a) * norm(b)
        out.append(_entry(f"norm:{seed}:{i}", {"a": str(a), "b": str(b)}, ok, {"product": str(norm(prod)), "bound": str(norm(a) * norm(b))}))
    return out


def _ring_tasks(cfg: SuiteConfig):
    w = cfg.window or Window(-2, 2)
    return [
        (_task_round_trips, (w.lo, w.hi, 3)),
        (_task_dimension_count, (w.lo, w.hi, 4)),
        (_task_norm, (2024, 100)),
    ]


# boundary --------------------------------------------------------------------------


def _boundary_points():
    vals = (_F(1, 3), _F(2, 5), _F(1, 2), _F(3, 4), _F(1, 7))
    points = []
    for n_plus in range(3):
        for n_minus in range(3):
            bp = sorted(vals[:n_plus], reverse=True)
            bm = sorted(vals[n_plus : n_plus + n_minus], reverse=True)
            if bp and bm and bp[0] + bm[0] > 1:
                bm = [x / 2 for x in bm]
            points.append(make_simplex_point(bp, bm))
    return points


def _within(value, target, tol, table_bound):
    if isinstance(value, Fraction):
        return value == target
    return abs(float(value) - float(target)) <= tol + float(table_bound)


def _task_boundary_point(omega, mode, tol):
    out = []
    params = omega.to_json()
    table = phi_hat_table(omega, mode, tol)
    total = sum(table.values.values())
    out.append(_entry("phi-hat-sum", params, _within(total, 1, tol, table.bound), str(total)))
    n_plus, n_minus = len(omega.beta_plus), len(omega.beta_minus)
    for N in range(1, 4):
        rows = {lam: link_infinity(omega, N, lam, mode=mode, tol=tol) for lam in signatures_in_window(N, -n_minus, n_plus)}
        value = lambda x: x.value if hasattr(x, "bound") else x
        mass = sum(value(v) for v in rows.values())
        out.append(_entry(f"link-sum:N={N}", params, _within(mass, 1, tol * 10, table.bound * 10), str(mass)))
        nonneg = all(value(sigma_hat(omega, lam, mode=mode, tol=tol)) >= -tol for lam in rows)
        out.append(_entry(f"sigma-hat-nonnegative:N={N}", params, nonneg))
        if N < 3:
            upper = {lam: link_infinity(omega, N + 1, lam) for lam in signatures_in_window(N + 1, -n_minus, n_plus)}
            composed: dict = {}
            for lam, weight in upper.items():
                for mu, link in link_row(N, lam).entries.items():
                    composed[mu] = composed.get(mu, 0) + weight * link
            ok = all(composed.get(mu, 0) == v for mu, v in rows.items()) and all(
                v == 0 or mu in rows for mu, v in composed.items()
            )
            out.append(_entry(f"link-composition:N={N}", params, ok))
    return out


def _task_two_routes(m, top_N):
    out = []
    samples = {1: ([_F(2, 3)], [_F(1, 4)]), 2: ([_F(2, 3), _F(1, 5)], [_F(5, 6), _F(1, 2)])}[m]
    for t in samples:
        omega = point_from_t(t)
        for N in range(1, top_N + 1):
            for lam in signatures_in_window(N, 0, m):
                a = hahn_link_row(t, N, lam)
                b = link_infinity(omega, N, lam)
                out.append(_entry(f"two-routes:{t}:{lam}", {"t": [str(x) for x in t], "lambda": list(lam)}, a == b, {"hahn": str(a), "boundary": str(b)}))
    return out


def _task_vertices(m):
    ok = all(phi_hat(vertex_point(m, k), n) == (1 if n == k else 0) for k in range(m + 1) for n in range(m + 1))
    return [_entry(f"vertex-delta:m={m}", {"m": m}, ok)]


def _boundary_tasks(cfg: SuiteConfig):
    tasks = [(_task_boundary_point, (omega, "exact", cfg.tol)) for omega in _boundary_points()]
    tasks += [(_task_two_routes, (m, 4)) for m in (1, 2)]
    tasks += [(_task_vertices, (m,)) for m in (1, 2, 3)]
    return tasks


# runner ------------------------------------------------------------------------------


SUITES = {
    "main-theorem": _main_identity_tasks,
    "intertwine": _intertwine_tasks,
    "closed-forms": _closed_form_tasks,
    "hahn-jacobi": _hahn_jacobi_tasks,
    "ring": _ring_tasks,
    "boundary": _boundary_tasks,
}


def _run_task(task):
    fn, args = task
    return fn(*args)


def run_suite(name: str, cfg: SuiteConfig | None = None) -> SuiteReport:
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    cfg = cfg or SuiteConfig()
    tasks = SUITES[name](cfg)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    report = SuiteReport(name)
    for entries in results:
        for ident, params, ok, detail in entries:
            report.add(ident, params, ok, detail)
    return report
