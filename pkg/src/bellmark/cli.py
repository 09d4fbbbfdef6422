"""Command-line interface.

Subcommands: devices, bounds, plan, predict, run, sweep, fit, report.
Exit codes: 0 success, 2 planning target below the violation threshold,
1 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import devices, estimation, harness, noise
from .bell import bell_bounds
from .errors import InvalidInputError, NoViolationMarginError


def _emit(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, indent=2))


def _cmd_devices(args: argparse.Namespace) -> None:
    if args.action == "list":
        rows = [
            {
                "name": p.name,
                "n_vertices": p.graph.n_vertices,
                "n_edges": len(p.graph.edges),
                "noise": {"p1": p.noise.p1, "p2": p.noise.p2, "pr": p.noise.pr},
            }
            for p in devices.list_presets()
        ]
        _emit({"devices": rows})
    else:
        _emit(devices.load_preset(args.name).to_json_dict())


def _cmd_bounds(args: argparse.Namespace) -> None:
    b = bell_bounds(args.family, args.n)
    _emit({"family": args.family, "n": args.n, "Q": b.Q, "C": b.C, "D": b.D,
           "alpha_min": b.alpha_min})


def _cmd_plan(args: argparse.Namespace) -> None:
    b = bell_bounds(args.family, args.n)
    gamma = estimation.sigma_to_confidence(args.sigma)
    t_over_m = args.alpha - 1.0 / b.D
    L = estimation.required_L_from_alpha(args.alpha, b.D, gamma)
    K = estimation.required_K(L, b.Q, t_over_m * b.Q, gamma)
    _emit({"family": args.family, "n": args.n, "M": b.Q, "D": b.D,
           "t_over_M": t_over_m, "L": L, "K": K})


def _cmd_predict(args: argparse.Namespace) -> None:
    preset = devices.load_preset(args.device)
    gamma = estimation.sigma_to_confidence(args.sigma)
    pred = noise.predict_required_L(args.family, args.n, preset.noise, gamma)
    _emit({
        "device": preset.name, "family": pred.family, "n": pred.n,
        "alpha": pred.alpha, "violation_fraction": pred.violation_fraction,
        "Q": pred.Q, "C": pred.C, "D": pred.D, "L": pred.L,
    })


def _write_record(record: harness.ExperimentRecord, fmt: str, out: str | None) -> None:
    text = harness.to_csv(record) if fmt == "csv" else harness.to_json(record)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_run(args: argparse.Namespace) -> None:
    cfg = harness.ExperimentConfig(
        device=args.device, family=args.family, n=args.n, L=args.L, K=args.K,
        repetitions=args.reps, sigma_target=args.sigma, master_seed=args.seed,
        noise=args.noise,
    )
    record = harness.run_experiment(cfg, workers=args.workers)
    _write_record(record, args.format, args.out)


def _cmd_sweep(args: argparse.Namespace) -> None:
    cfg = harness.ExperimentConfig(
        device=args.device, family=args.family, n=args.n_list[0], L=args.L, K=args.K,
        repetitions=args.reps, sigma_target=args.sigma, master_seed=args.seed,
        noise=args.noise,
    )
    result = harness.sweep_and_fit(cfg, args.n_list, workers=args.workers)
    text = json.dumps(result.to_json_dict(), sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_fit(args: argparse.Namespace) -> None:
    data = json.loads(Path(args.infile).read_text())
    records = data["records"] if "records" in data else [data]
    points = [(r["config"]["n"], r["aggregate"]["mean_over_q"]) for r in records]
    model = noise.fit_scaling(points, args.form)
    payload = {"model": asdict(model), "points": points}
    if args.extrapolate is not None:
        b = bell_bounds(records[0]["config"]["family"], args.extrapolate)
        gamma = estimation.sigma_to_confidence(args.sigma)
        payload["extrapolated_L"] = noise.extrapolate_L(model, args.extrapolate, b.D, gamma)
        payload["extrapolated_alpha"] = model.alpha(args.extrapolate)
    _emit(payload)


def _cmd_report(args: argparse.Namespace) -> None:
    record = harness.record_from_json(Path(args.infile).read_text())
    _write_record(record, args.format, args.out)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bellmark")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("devices", help="list or show bundled device presets")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.set_defaults(fn=_cmd_devices)

    p = sub.add_parser("bounds", help="closed-form Q, C, D for a family and size")
    p.add_argument("--family", required=True, choices=["ghz", "lc"])
    p.add_argument("--n", required=True, type=int)
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("plan", help="sample sizes for a target violation fraction")
    p.add_argument("--family", required=True, choices=["ghz", "lc"])
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--alpha", required=True, type=float)
    p.add_argument("--sigma", type=float, default=5.0)
    p.set_defaults(fn=_cmd_plan)

    p = sub.add_parser("predict", help="depolarization-model prediction for a device")
    p.add_argument("--device", required=True)
    p.add_argument("--family", required=True, choices=["ghz", "lc"])
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--sigma", type=float, default=5.0)
    p.set_defaults(fn=_cmd_predict)

    def run_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--device", required=True)
        p.add_argument("--family", required=True, choices=["ghz", "lc"])
        p.add_argument("--L", required=True, type=int)
        p.add_argument("--K", type=int, default=1)
        p.add_argument("--reps", type=int, default=10)
        p.add_argument("--sigma", type=float, default=5.0)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--noise", default="device")
        p.add_argument("--workers", type=int, default=None)
        p.add_argument("--out", default=None)

    p = sub.add_parser("run", help="run one experiment")
    run_args(p)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(fn=_cmd_run)

    p = sub.add_parser("sweep", help="run a size sweep and fit the decay")
    run_args(p)
    p.add_argument("--n-list", required=True,
                   type=lambda s: [int(v) for v in s.split(",")])
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("fit", help="fit a saved sweep (JSON) in the log domain")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--form", choices=["log-linear", "log-quadratic"], required=True)
    p.add_argument("--extrapolate", type=int, default=None)
    p.add_argument("--sigma", type=float, default=5.0)
    p.set_defaults(fn=_cmd_fit)

    p = sub.add_parser("report", help="reserialize a saved record as json or csv")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--format", choices=["json", "csv"], default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.fn(args)
    except NoViolationMarginError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidInputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
