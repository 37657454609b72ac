"""``gtring`` command line: verify identity suites, simulate chains, evaluate quantities.

Exit codes: 0 success, 1 identity failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

from .boundary import Approx, BoundaryPoint, link_infinity, phi_hat, sigma_hat
from .io import fraction_str, scalar_from_json, write_link_csv, write_trajectories_csv
from .markov import empirical_generator, link_row, simulate
from .operators import ParameterQuadruple
from .orthopoly import HahnJacobiParams, hahn_poly, jacobi_poly
from .ring import Window, lr_coefficient
from .scalars import parse_scalar
from .signatures import DomainError, UsageError, signatures_in_window
from .simcore import BACKEND
from .suites import SUITES, SuiteConfig, run_suite

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2

SHORT_HORIZON = 0.05

EVALUATORS = ("phi-hat", "sigma-hat", "link", "hahn", "jacobi", "lr")


@dataclass
class RunConfig:
    command: str
    params: ParameterQuadruple | None = None
    window: Window | None = None
    N: int | None = None
    m: int | None = None
    seed: int = 0
    out: str | None = None
    mode: str = "exact"
    tol: float = 1e-12
    jobs: int = 1


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    return tuple(int(x) for x in text.split(",")) if text else ()


def _scalar_list(text: str | None) -> tuple[Fraction, ...]:
    if not text:
        return ()
    return tuple(Fraction(x) for x in text.split(","))


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with default values for any long option")
    p.add_argument("--z")
    p.add_argument("--z2", help="z'")
    p.add_argument("--w")
    p.add_argument("--w2", help="w'")
    p.add_argument("--N", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--window", help="lo:hi (write --window=-5:5 for negative bounds)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--jobs", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gtring", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run an identity suite and print a JSON report")
    verify.add_argument("suite", choices=sorted(SUITES))
    _add_common(verify)
    verify.add_argument("--corrupt-rate", action="store_true", help=argparse.SUPPRESS)

    sim = sub.add_parser("simulate", help="simulate the jump chain and write trajectories as CSV")
    _add_common(sim)
    sim.add_argument("--start", default=None, help="comma-separated start signature (default all zeros)")
    sim.add_argument("--horizon", type=float, default=1.0)
    sim.add_argument("--trajectories", type=int, default=1)

    ev = sub.add_parser("eval", help="evaluate boundary functions, links, polynomials or LR coefficients")
    ev.add_argument("what", choices=EVALUATORS)
    _add_common(ev)
    ev.add_argument("--n", type=int)
    ev.add_argument("--a")
    ev.add_argument("--b")
    ev.add_argument("--M", type=int)
    ev.add_argument("--lambda", dest="lam")
    ev.add_argument("--mu")
    ev.add_argument("--nu")
    for side in ("plus", "minus"):
        ev.add_argument(f"--alpha-{side}")
        ev.add_argument(f"--beta-{side}")
        ev.add_argument(f"--gamma-{side}", default="0")
    ev.add_argument("--json", action="store_true", help="print JSON instead of text")
    return parser


def _load_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                defaults = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        explicit = {a.lstrip("-").split("=")[0].replace("-", "_") for a in argv if a.startswith("--")}
        for key, value in defaults.items():
            key = CONFIG_ALIASES.get(key, key).replace("-", "_")
            if key not in explicit and hasattr(args, key):
                setattr(args, key, _config_value(value))
    return args


CONFIG_ALIASES = {"z_prime": "z2", "w_prime": "w2", "nu0": "start"}


def _config_value(value):
    if isinstance(value, dict):
        return str(scalar_from_json(value)).replace(" ", "")
    if isinstance(value, list):
        return ",".join(str(x) for x in value)
    return value


def _quadruple(args, required: bool) -> ParameterQuadruple | None:
    values = [args.z, args.z2, args.w, args.w2]
    if all(v is None for v in values):
        if required:
            raise UsageError("--z, --z2, --w and --w2 are required")
        return None
    if any(v is None for v in values):
        raise UsageError("give all of --z, --z2, --w, --w2 or none of them")
    try:
        return ParameterQuadruple.of(*(parse_scalar(str(v)) for v in values))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad parameter: {exc}") from exc


def make_config(args) -> RunConfig:
    if args.N is not None and args.N < 1:
        raise UsageError("--N must be positive")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    return RunConfig(
        command=args.command,
        params=_quadruple(args, required=args.command == "simulate"),
        window=Window.parse(args.window) if args.window else None,
        N=args.N,
        m=args.m,
        seed=args.seed,
        out=args.out,
        mode=args.mode,
        tol=args.tol,
        jobs=args.jobs,
    )


@contextmanager
def _output(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


# commands ------------------------------------------------------------------------------


def cmd_verify(args, cfg: RunConfig) -> int:
    suite_cfg = SuiteConfig(N=cfg.N, m=cfg.m, window=cfg.window, mode=cfg.mode, tol=cfg.tol, jobs=cfg.jobs)
    if cfg.params is not None:
        suite_cfg.quadruples = (cfg.params,)
    suite_cfg.corrupt_rate = bool(getattr(args, "corrupt_rate", False))
    report = run_suite(args.suite, suite_cfg)
    with _output(cfg.out) as fh:
        json.dump(report.to_json(), fh, indent=1, default=str)
        fh.write("\n")
    if not report.ok:
        failure = report.first_failure()
        print(f"identity failure in {failure['id']}: {json.dumps(failure.get('detail'), default=str)}", file=sys.stderr)
        return EXIT_FAILURE
    print(f"{args.suite}: {report.passed} instances passed", file=sys.stderr)
    return EXIT_OK


def cmd_simulate(args, cfg: RunConfig) -> int:
    N = cfg.N or 1
    start = _int_list(args.start) if args.start else (0,) * N
    if len(start) != N:
        raise UsageError(f"start {start} does not have length {N}")
    if args.trajectories < 1 or args.horizon < 0:
        raise UsageError("need --trajectories >= 1 and --horizon >= 0")
    p = cfg.params
    runs = [simulate(p, N, start, args.horizon, cfg.seed, index=i) for i in range(args.trajectories)]
    header = {"params": str(p).replace(" ", ""), "N": N, "start": ",".join(map(str, start)),
              "horizon": args.horizon, "seed": cfg.seed}
    with _output(cfg.out) as fh:
        write_trajectories_csv(fh, header, N, ((r.index, r.times, r.states) for r in runs))
    jumps = sum(len(r) - 1 for r in runs)
    summary = sys.stderr if cfg.out is None else sys.stdout
    print(f"backend={BACKEND} trajectories={len(runs)} jumps={jumps} truncated={sum(r.truncated for r in runs)}", file=summary)
    finals = {}
    for r in runs:
        final = tuple(int(x) for x in r.states[-1])
        finals[final] = finals.get(final, 0) + 1
    for state, count in sorted(finals.items()):
        print(f"final {','.join(map(str, state))}: {count}", file=summary)
    # (P(moved by t) / t) approximates the total jump rate only for short horizons
    if 0 < args.horizon <= SHORT_HORIZON and args.trajectories >= 2:
        moved = lambda nu: float(tuple(nu) != start)
        est, se, exact = empirical_generator(p, start, args.horizon, cfg.seed, args.trajectories, moved)
        print(f"generator check: empirical={est:.6g} se={se:.3g} exact={float(exact):.6g}", file=summary)
    return EXIT_OK


def _boundary_point(args) -> BoundaryPoint:
    ap, am = _scalar_list(args.alpha_plus), _scalar_list(args.alpha_minus)
    bp, bm = _scalar_list(args.beta_plus), _scalar_list(args.beta_minus)
    gp, gm = Fraction(args.gamma_plus), Fraction(args.gamma_minus)
    return BoundaryPoint(ap, bp, am, bm, sum(ap + bp, Fraction(0)) + gp, sum(am + bm, Fraction(0)) + gm)


def _has_boundary(args) -> bool:
    return any(getattr(args, name) for name in ("alpha_plus", "alpha_minus", "beta_plus", "beta_minus")) or any(
        Fraction(getattr(args, name)) for name in ("gamma_plus", "gamma_minus")
    )


def _format(value) -> str:
    if isinstance(value, Approx):
        return f"{float(value.value)!r} +- {float(value.bound):.3g}"
    return fraction_str(value)


def _require(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required")
    return value


def cmd_eval(args, cfg: RunConfig) -> int:
    what = args.what
    if what == "lr":
        lam, mu, nu = (_int_list(_require(x, f)) for x, f in ((args.lam, "--lambda"), (args.mu, "--mu"), (args.nu, "--nu")))
        print(lr_coefficient(lam, mu, nu))
        return EXIT_OK
    if what in ("hahn", "jacobi"):
        n = _require(args.n, "--n")
        a, b = Fraction(_require(args.a, "--a")), Fraction(_require(args.b, "--b"))
        if what == "jacobi":
            poly, var = jacobi_poly(n, a, b), "t"
        else:
            poly, var = hahn_poly(n, HahnJacobiParams(a, b, _require(args.M, "--M"))), "y"
        print(json.dumps(poly.to_json()) if args.json else poly.format(var))
        return EXIT_OK
    if what == "link" and not _has_boundary(args):
        N = _require(cfg.N, "--N")
        lam = _int_list(_require(args.lam, "--lambda"))
        if len(lam) != N:
            raise UsageError("--lambda must have length --N")
        row = link_row(N - 1, lam).entries
        with _output(cfg.out) as fh:
            write_link_csv(fh, row)
        return EXIT_OK
    omega = _boundary_point(args)
    if what == "phi-hat":
        value = phi_hat(omega, _require(args.n, "--n"), cfg.window, cfg.mode, cfg.tol)
        print(_format(value))
        return EXIT_OK
    if what == "sigma-hat":
        value = sigma_hat(omega, _int_list(_require(args.lam, "--lambda")), cfg.window, cfg.mode, cfg.tol)
        print(_format(value))
        return EXIT_OK
    # link from the boundary point to level N
    N = _require(cfg.N, "--N")
    if args.lam:
        targets = [_int_list(args.lam)]
    else:
        targets = signatures_in_window(N, -len(omega.beta_minus), len(omega.beta_plus))
    rows = {lam: link_infinity(omega, N, lam, mode=cfg.mode, tol=cfg.tol) for lam in targets}
    with _output(cfg.out) as fh:
        fh.write("lambda,value\n")
        for lam, value in rows.items():
            fh.write(f"{' '.join(map(str, lam))},{_format(value)}\n")
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "simulate": cmd_simulate, "eval": cmd_eval}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = _load_config(parser, argv)
        cfg = make_config(args)
        return COMMANDS[args.command](args, cfg)
    except SystemExit as exc:  # argparse reports usage errors this way
        return EXIT_USAGE if exc.code else EXIT_OK
    except (UsageError, DomainError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
