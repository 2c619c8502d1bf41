"""Command-line front end: single computations, benchmark table, resultant.

Subcommands: fpt, joint, gaver, mc, bench, resultant.  Output formats are
text (7 significant digits, no timing line so repeated runs are
byte-identical), json (full precision, includes config_echo for round-trip
reruns) and csv (header: method,quantity,value,err_estimate,ci_low,ci_high,
elapsed_ms).

Exit codes: 0 success, 2 usage or argument-domain error, 3 numerical failure,
4 diverged Gaver-Stehfest result.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from functools import partial

from .inversion import (
    Estimate,
    EulerConfig,
    GaverConfig,
    InversionError,
    euler_invert,
    gaver_stehfest,
)
from .model import KouParams, validate_params
from .montecarlo import McConfig, estimate_probabilities
from .quartic import ClassificationError, RootSolveError, resultant_in_alpha, singular_points
from .transforms import (
    DegenerateRootsError,
    TransformInputs,
    fpt_transform,
    joint_transform,
    make_fpt_mp,
)

_NUMERICAL_ERRORS = (
    ClassificationError,
    RootSolveError,
    InversionError,
    DegenerateRootsError,
    ArithmeticError,
)

CSV_HEADER = "method,quantity,value,err_estimate,ci_low,ci_high,elapsed_ms"


@dataclass
class OutputRecord:
    method: str
    quantity: str
    value: float
    err_estimate: float
    ci: tuple[float, float] | None
    elapsed_ms: float
    config_echo: dict
    diverged: bool = False

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "quantity": self.quantity,
            "value": self.value,
            "err_estimate": self.err_estimate,
            "ci": list(self.ci) if self.ci is not None else None,
            "elapsed_ms": self.elapsed_ms,
            "diverged": self.diverged,
            "config_echo": self.config_echo,
        }

    def to_text(self) -> str:
        lines = [
            f"method: {self.method}",
            f"quantity: {self.quantity}",
            f"value: {self.value:.7g}",
            f"err_estimate: {self.err_estimate:.7g}",
        ]
        if self.ci is not None:
            lines.append(f"ci: [{self.ci[0]:.7g}, {self.ci[1]:.7g}]")
        if self.diverged:
            lines.append("diverged: true")
        return "\n".join(lines)

    def to_csv_row(self) -> str:
        lo = f"{self.ci[0]!r}" if self.ci is not None else ""
        hi = f"{self.ci[1]!r}" if self.ci is not None else ""
        return (
            f"{self.method},{self.quantity},{self.value!r},{self.err_estimate!r},"
            f"{lo},{hi},{self.elapsed_ms:.3f}"
        )


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mu", type=float, required=True, help="drift per unit time")
    p.add_argument("--sigma", type=float, required=True, help="diffusion volatility")
    p.add_argument("--lambda", dest="lam", type=float, required=True, help="jump intensity")
    p.add_argument("--eta1", type=float, required=True, help="positive-jump rate")
    p.add_argument("--eta2", type=float, required=True, help="negative-jump rate")
    p.add_argument("--p", type=float, required=True, help="probability of a positive jump")


def _add_output_flags(p: argparse.ArgumentParser, formats=("text", "json", "csv")) -> None:
    p.add_argument("--format", choices=formats, default="text")
    p.add_argument("--out", type=str, default=None, help="also write the output to a file")


def _add_euler_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t", type=float, required=True, help="time horizon")
    p.add_argument("--b", type=float, required=True, help="barrier level, b > 0")
    p.add_argument("--A", type=float, default=14.0, help="discretization parameter A = 2tu")
    p.add_argument("--n", type=int, default=12, help="Euler average length")
    p.add_argument("--B", type=int, default=4, help="burn-in partial-sum index")
    p.add_argument("--u", type=float, default=None, help="override the contour abscissa (sets A = 2tu)")
    p.add_argument("--compat", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("positional", nargs="*", type=float, help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="koufpt",
        description="First-passage-time probabilities for the Kou jump-diffusion",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fpt = sub.add_parser("fpt", help="P(tau_b <= t) by Euler-accelerated Bromwich inversion")
    _add_model_flags(p_fpt)
    _add_euler_flags(p_fpt)
    _add_output_flags(p_fpt)

    p_joint = sub.add_parser("joint", help="P(X_t >= a, tau_b <= t) by Bromwich inversion")
    _add_model_flags(p_joint)
    p_joint.add_argument("--a", type=float, required=True, help="terminal threshold, a <= b")
    _add_euler_flags(p_joint)
    _add_output_flags(p_joint)

    p_gaver = sub.add_parser("gaver", help="P(tau_b <= t) by Gaver-Stehfest (real axis)")
    _add_model_flags(p_gaver)
    p_gaver.add_argument("--t", type=float, required=True)
    p_gaver.add_argument("--b", type=float, required=True)
    p_gaver.add_argument("--n", type=int, default=10, help="Stehfest order")
    p_gaver.add_argument("--B", type=int, default=2, help="burn-in")
    p_gaver.add_argument("--digits", type=int, default=30, help="decimal working precision")
    _add_output_flags(p_gaver)

    p_mc = sub.add_parser("mc", help="both probabilities by grid Monte Carlo")
    _add_model_flags(p_mc)
    p_mc.add_argument("--t", type=float, required=True)
    p_mc.add_argument("--a", type=float, required=True)
    p_mc.add_argument("--b", type=float, required=True)
    p_mc.add_argument("--grid", type=int, default=2000, help="time steps per path")
    p_mc.add_argument("--reps", type=int, default=20000, help="independent replications")
    p_mc.add_argument("--seed", type=int, default=0)
    p_mc.add_argument("--ci", type=float, default=0.95, help="confidence level")
    _add_output_flags(p_mc)

    p_bench = sub.add_parser("bench", help="Euler + Gaver sweep + Monte Carlo comparison table")
    _add_model_flags(p_bench)
    p_bench.add_argument("--t", type=float, required=True)
    p_bench.add_argument("--a", type=float, required=True)
    p_bench.add_argument("--b", type=float, required=True)
    p_bench.add_argument("--A", type=float, default=14.0)
    p_bench.add_argument("--n", type=int, default=12)
    p_bench.add_argument("--B", type=int, default=4)
    p_bench.add_argument("--grid", type=int, default=2000)
    p_bench.add_argument("--reps", type=int, default=20000)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--ci", type=float, default=0.95)
    _add_output_flags(p_bench, formats=("csv", "json"))
    p_bench.set_defaults(format="csv")

    p_res = sub.add_parser("resultant", help="removable singularities: roots of R(alpha)")
    _add_model_flags(p_res)
    p_res.add_argument("--scale", type=float, default=1.0, help=argparse.SUPPRESS)
    _add_output_flags(p_res, formats=("text", "json"))

    return parser


def _params_from(args: argparse.Namespace) -> KouParams:
    params = KouParams(
        mu=args.mu, sigma=args.sigma, lam=args.lam, eta1=args.eta1, eta2=args.eta2, p=args.p
    )
    validate_params(params)
    return params


def _model_echo(params: KouParams) -> dict:
    return {
        "mu": params.mu,
        "sigma": params.sigma,
        "lambda": params.lam,
        "eta1": params.eta1,
        "eta2": params.eta2,
        "p": params.p,
    }


def _apply_compat(args: argparse.Namespace, with_a: bool) -> None:
    """Positional order of the reference runs: mu sigma lambda eta1 eta2 p t [a] b A n B."""
    want = 12 if with_a else 11
    vals = args.positional
    if len(vals) != want:
        raise ValueError(f"--compat expects {want} positional values, got {len(vals)}")
    (args.mu, args.sigma, args.lam, args.eta1, args.eta2, args.p) = vals[:6]
    if with_a:
        args.t, args.a, args.b = vals[6:9]
        rest = vals[9:]
    else:
        args.t, args.b = vals[6:8]
        rest = vals[8:]
    args.A, args.n, args.B = rest[0], int(rest[1]), int(rest[2])


def _euler_record(args: argparse.Namespace, quantity: str) -> OutputRecord:
    params = _params_from(args)
    a_disc = 2.0 * args.t * args.u if args.u is not None else args.A
    cfg = EulerConfig(A=a_disc, n=args.n, B=args.B)
    if quantity == "fpt":
        inputs = TransformInputs(params=params, b=args.b)
        transform = partial(fpt_transform, inputs)
    else:
        inputs = TransformInputs(params=params, b=args.b, a=args.a)
        transform = partial(joint_transform, inputs)
    start = time.perf_counter()
    est = euler_invert(transform, args.t, cfg)
    elapsed = (time.perf_counter() - start) * 1000.0
    echo = _model_echo(params) | {
        "t": args.t,
        "b": args.b,
        "A": cfg.A,
        "n": cfg.n,
        "B": cfg.B,
        "u": cfg.A / (2.0 * args.t),
    }
    if quantity == "joint":
        echo["a"] = args.a
    return OutputRecord(
        method="euler",
        quantity=quantity,
        value=est.value,
        err_estimate=est.err_estimate,
        ci=None,
        elapsed_ms=elapsed,
        config_echo=echo,
    )


def cmd_fpt(args: argparse.Namespace) -> list[OutputRecord]:
    if args.compat:
        _apply_compat(args, with_a=False)
    return [_euler_record(args, "fpt")]


def cmd_joint(args: argparse.Namespace) -> list[OutputRecord]:
    if args.compat:
        _apply_compat(args, with_a=True)
    return [_euler_record(args, "joint")]


def cmd_gaver(args: argparse.Namespace) -> list[OutputRecord]:
    params = _params_from(args)
    if args.digits < 30 and args.n > 7:
        print(
            f"warning: n = {args.n} at {args.digits} digits is prone to oscillation; "
            "use >= 30 digits or n <= 7",
            file=sys.stderr,
        )
    cfg = GaverConfig(n=args.n, B=args.B, precision_digits=args.digits)
    inputs = TransformInputs(params=params, b=args.b)
    start = time.perf_counter()
    est = gaver_stehfest(make_fpt_mp(inputs), args.t, cfg)
    elapsed = (time.perf_counter() - start) * 1000.0
    echo = _model_echo(params) | {
        "t": args.t,
        "b": args.b,
        "n": cfg.n,
        "B": cfg.B,
        "digits": cfg.precision_digits,
    }
    return [
        OutputRecord(
            method="gaver",
            quantity="fpt",
            value=est.value,
            err_estimate=est.err_estimate,
            ci=None,
            elapsed_ms=elapsed,
            config_echo=echo,
            diverged=est.diverged,
        )
    ]


def cmd_mc(args: argparse.Namespace) -> list[OutputRecord]:
    params = _params_from(args)
    cfg = McConfig(grid_points=args.grid, replications=args.reps, seed=args.seed, ci_level=args.ci)
    start = time.perf_counter()
    res = estimate_probabilities(params, args.t, args.a, args.b, cfg)
    elapsed = (time.perf_counter() - start) * 1000.0
    echo = _model_echo(params) | {
        "t": args.t,
        "a": args.a,
        "b": args.b,
        "grid": cfg.grid_points,
        "reps": cfg.replications,
        "seed": cfg.seed,
        "ci": cfg.ci_level,
    }
    half_fpt = (res.ci_fpt[1] - res.ci_fpt[0]) / 2.0
    half_joint = (res.ci_joint[1] - res.ci_joint[0]) / 2.0
    return [
        OutputRecord("mc", "fpt", res.p_fpt, half_fpt, res.ci_fpt, elapsed, echo),
        OutputRecord("mc", "joint", res.p_joint, half_joint, res.ci_joint, elapsed, echo),
    ]


GAVER_SWEEP_N = (10, 20, 30, 40, 50, 60)
GAVER_SWEEP_DIGITS = (30, 40, 50)


def cmd_bench(args: argparse.Namespace) -> list[OutputRecord]:
    """The method-comparison table: euler fpt/joint, the Gaver (digits x n)
    sweep, and Monte Carlo, in deterministic row order.  A failing cell is
    emitted with value nan and annotated on stderr."""
    records: list[OutputRecord] = []

    def run_cell(label: str, fn) -> None:
        try:
            records.extend(fn())
        except _NUMERICAL_ERRORS as exc:
            print(f"bench: {label} failed: {exc}", file=sys.stderr)
            records.append(
                OutputRecord(
                    method=label.split()[0],
                    quantity="fpt",
                    value=float("nan"),
                    err_estimate=float("nan"),
                    ci=None,
                    elapsed_ms=0.0,
                    config_echo={"error": str(exc)},
                )
            )

    run_cell("euler fpt", lambda: [_euler_record(_ns(args, u=None, compat=False), "fpt")])
    run_cell("euler joint", lambda: [_euler_record(_ns(args, u=None, compat=False), "joint")])
    for digits in GAVER_SWEEP_DIGITS:
        for n in GAVER_SWEEP_N:
            run_cell(
                f"gaver n={n} digits={digits}",
                lambda n=n, digits=digits: cmd_gaver(_ns(args, n=n, B=2, digits=digits)),
            )
    run_cell("mc", lambda: cmd_mc(args))
    return records


def _ns(args: argparse.Namespace, **overrides) -> argparse.Namespace:
    clone = argparse.Namespace(**vars(args))
    for key, value in overrides.items():
        setattr(clone, key, value)
    return clone


def cmd_resultant(args: argparse.Namespace) -> str | dict:
    params = _params_from(args)
    poly = resultant_in_alpha(params, scale=args.scale)
    points = singular_points(params, scale=args.scale)
    lead = poly.r5
    normalized = [c / lead for c in poly.coeffs()]
    if args.format == "json":
        return {
            "singular_points": [[z.real, z.imag] for z in points],
            "normalized_coefficients": [[c.real, c.imag] for c in normalized],
            "config_echo": _model_echo(params),
        }
    lines = ["singular points (roots of R(alpha)):"]
    lines += [f"  {z.real:.7g} {z.imag:+.7g}i" for z in points]
    lines.append("coefficients of R(alpha)/r5 (alpha^5 .. alpha^0):")
    lines += [f"  {c.real:.10g}" for c in normalized]
    return "\n".join(lines)


def _emit(text: str, out: str | None) -> None:
    print(text)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")


def _render(records: list[OutputRecord], fmt: str) -> str:
    if fmt == "json":
        payload = [r.to_dict() for r in records]
        return json.dumps(payload[0] if len(payload) == 1 else payload, indent=2)
    if fmt == "csv":
        return "\n".join([CSV_HEADER] + [r.to_csv_row() for r in records])
    return "\n\n".join(r.to_text() for r in records)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "resultant":
            rendered = cmd_resultant(args)
            if isinstance(rendered, dict):
                rendered = json.dumps(rendered, indent=2)
            _emit(rendered, args.out)
            return 0
        runner = {
            "fpt": cmd_fpt,
            "joint": cmd_joint,
            "gaver": cmd_gaver,
            "mc": cmd_mc,
            "bench": cmd_bench,
        }[args.command]
        records = runner(args)
    except ValueError as exc:
        print(f"koufpt {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except _NUMERICAL_ERRORS as exc:
        print(f"koufpt {args.command}: numerical failure: {exc}", file=sys.stderr)
        return 3
    _emit(_render(records, args.format), args.out)
    # divergence is a failure of a single gaver run, but expected content
    # inside the bench sweep
    if args.command == "gaver" and any(r.diverged for r in records):
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
