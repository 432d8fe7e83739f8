"""Command-line front end.

Thin client over the service handlers: every subcommand builds the same
request models the HTTP endpoints accept, runs the shared handler, and
formats the response as JSON (stdout) or CSV (stdout or file).

Exit codes: 0 success, 1 usage or configuration error, 2 numerical
failure, 3 simulated loop divergence.
"""

import argparse
import json
import sys
from pathlib import Path

from pydantic import ValidationError

from .errors import AdrcKitError, DivergenceError
from .service import handlers, schemas

MODE_CHOICES = list(schemas.MODE_NAMES)


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _print_json(model) -> None:
    print(json.dumps(model.model_dump(), indent=2))


def _write_table(table: schemas.TableResponse, out: str | None) -> None:
    """CSV with a header row, LF endings, 12 significant digits."""
    lines = [",".join(table.columns)]
    lines += [",".join(f"{v:.12g}" for v in row) for row in table.rows]
    text = "\n".join(lines) + "\n"
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, newline="\n")


def _load_case(path: str) -> schemas.CaseConfig:
    return schemas.CaseConfig.model_validate_json(Path(path).read_text())


def _plant_and_tuning(args) -> tuple[schemas.PlantModel, schemas.TuningParams]:
    """Plant/tuning from --config, with any explicit flags overriding it."""
    if args.config:
        case = _load_case(args.config)
        plant, tuning = case.plant.model_dump(), case.tuning.model_dump()
    else:
        missing = [f for f in ("num", "den", "order", "wcl", "keso", "b0")
                   if getattr(args, f) is None]
        if missing:
            raise ValueError("without --config, flags are required: "
                             + ", ".join("--" + m for m in missing))
        plant, tuning = {"num": None, "den": None}, {}
    if args.num is not None:
        plant["num"] = [float(v) for v in args.num.split(",")]
    if args.den is not None:
        plant["den"] = [float(v) for v in args.den.split(",")]
    for flag, key in (("order", "order"), ("wcl", "omega_cl"),
                      ("keso", "k_eso"), ("b0", "b0")):
        value = getattr(args, flag)
        if value is not None:
            tuning[key] = value
    return schemas.PlantModel.model_validate(plant), schemas.TuningParams.model_validate(tuning)


def _add_plant_tuning_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="case configuration file (JSON)")
    p.add_argument("--num", help="plant numerator coefficients, descending, comma-separated")
    p.add_argument("--den", help="plant denominator coefficients, descending, comma-separated")
    p.add_argument("--order", type=int, help="design model order n")
    p.add_argument("--wcl", type=float, help="closed-loop bandwidth omega_cl [rad/s]")
    p.add_argument("--keso", type=float, help="observer bandwidth factor k_eso")
    p.add_argument("--b0", type=float, help="critical plant gain b0")


def cmd_tune(args) -> int:
    req = schemas.TuneRequest(order=args.order, omega_cl=args.wcl,
                              k_eso=args.keso, b0=args.b0, mode=args.mode)
    _print_json(handlers.run_tune(req))
    return 0


def cmd_verify_theorem(args) -> int:
    req = schemas.VerifyTheoremRequest(order=args.order, alpha=args.alpha,
                                       design=args.design)
    resp = handlers.run_verify_theorem(req)
    _print_json(resp)
    return 0 if resp.passed else 2


def cmd_bode(args) -> int:
    plant, tuning = _plant_and_tuning(args)
    target = {"cfb": "controller-feedback", "g0": "loop-gain"}[args.target]
    req = schemas.BodeRequest(
        plant=plant, tuning=tuning, modes=args.modes, target=target,
        grid=schemas.FrequencyGrid(omega_min=args.wmin, omega_max=args.wmax,
                                   points=args.points))
    _write_table(handlers.run_bode(req), args.out)
    return 0


def cmd_gangofsix(args) -> int:
    plant, tuning = _plant_and_tuning(args)
    req = schemas.GangOfSixRequest(
        plant=plant, tuning=tuning, modes=args.modes, output=args.output,
        grid=schemas.FrequencyGrid(omega_min=args.wmin, omega_max=args.wmax,
                                   points=args.points),
        t_final=args.t_final, dt=args.dt)
    _write_table(handlers.run_gang_of_six(req), args.out)
    return 0


def cmd_step(args) -> int:
    req = schemas.StepRequest(order=args.order, omega_cl=args.wcl,
                              t_final=args.t_final, dt=args.dt)
    _write_table(handlers.run_step(req), args.out)
    return 0


def cmd_simulate(args) -> int:
    case = _load_case(args.config)
    data = case.model_dump()
    if args.ts is not None:
        data["simulation"]["ts"] = args.ts
    if args.t_final is not None:
        data["simulation"]["t_final"] = args.t_final
    if args.seed is not None:
        data["simulation"]["noise"]["seed"] = args.seed
    if args.noise_std is not None:
        data["simulation"]["noise"]["noise_std"] = args.noise_std
        data["simulation"]["noise"]["kind"] = "white-noise"
    case = schemas.CaseConfig.model_validate(data)
    resp = handlers.run_simulate(case, mode=args.mode)
    _write_table(resp.trace, args.trace)
    metrics_text = json.dumps(resp.metrics.model_dump(), indent=2) + "\n"
    if args.metrics == "-":
        sys.stdout.write(metrics_text)
    else:
        Path(args.metrics).write_text(metrics_text, newline="\n")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="adrckit",
                     description="Linear ADRC tuning, verification, analysis "
                                 "and simulation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tune", help="compute controller and observer gains")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--wcl", type=float, required=True)
    p.add_argument("--keso", type=float, required=True)
    p.add_argument("--b0", type=float, required=True)
    p.add_argument("--mode", choices=MODE_CHOICES, default="bw")
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("verify-theorem",
                       help="cross-check halved bandwidth gains against the "
                            "Riccati-equation design")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--design", choices=["controller", "observer"], default="controller")
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("bode", help="frequency response of the feedback "
                                    "controller or loop gain per mode (CSV)")
    _add_plant_tuning_flags(p)
    p.add_argument("--target", choices=["cfb", "g0"], default="cfb",
                   help="cfb: y-to-u controller path; g0: loop gain")
    p.add_argument("--modes", nargs="+", choices=MODE_CHOICES, default=MODE_CHOICES)
    p.add_argument("--wmin", type=float, default=1e-2)
    p.add_argument("--wmax", type=float, default=1e3)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_bode)

    p = sub.add_parser("gangofsix", help="closed-loop maps (r,d,n)->(y,u): "
                                         "frequency or step data (CSV)")
    _add_plant_tuning_flags(p)
    p.add_argument("--output", choices=["freq", "step"], default="freq")
    p.add_argument("--modes", nargs="+", choices=MODE_CHOICES, default=MODE_CHOICES)
    p.add_argument("--wmin", type=float, default=1e-2)
    p.add_argument("--wmax", type=float, default=1e3)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--t-final", type=float, default=20.0)
    p.add_argument("--dt", type=float, default=1e-2)
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_gangofsix)

    p = sub.add_parser("step", help="normalized chain step responses, "
                                    "bandwidth vs halved gains (CSV)")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--wcl", type=float, required=True)
    p.add_argument("--t-final", type=float, default=20.0)
    p.add_argument("--dt", type=float, default=1e-2)
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.set_defaults(func=cmd_step)

    p = sub.add_parser("simulate", help="run one closed-loop case: trace CSV "
                                        "plus metrics JSON")
    p.add_argument("--config", required=True, help="case configuration file (JSON)")
    p.add_argument("--mode", choices=MODE_CHOICES, help="override the configured mode")
    p.add_argument("--seed", type=int, help="override the noise seed")
    p.add_argument("--noise-std", type=float, help="override the noise level")
    p.add_argument("--ts", type=float, help="override the sample time")
    p.add_argument("--t-final", type=float, help="override the duration")
    p.add_argument("--trace", default="trace.csv", help="trace CSV path ('-' for stdout)")
    p.add_argument("--metrics", default="metrics.json", help="metrics JSON path ('-' for stdout)")
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValidationError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AdrcKitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
