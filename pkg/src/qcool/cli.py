"""Command-line entry point.

Subcommands: spectrum, cool, observable, budget, validate.
Exit codes: 0 success, 2 configuration error, 3 degenerate estimate.
"""

from __future__ import annotations

import argparse
import json
import sys

from .budget import budget_for_energy, budget_for_observable
from .cooling import KINDS, CoolingFunction, NonRealizableError
from .estimators import DegenerateRatioError
from .experiments import ConfigError, RunConfig, run_cooling_scaling, run_observable, run_spectrum
from .pauli import PauliFormatError
from .validate import validate_functions

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DEGENERATE = 3


def _add_common(sub):
    sub.add_argument("--config", required=True, help="INI run configuration")
    sub.add_argument("--seed", type=int, default=None, help="override run seed")
    sub.add_argument("--out", default=None, help="override output directory")
    sub.add_argument("--mode", choices=("shot", "expectation"), default=None)
    sub.add_argument("--json", action="store_true", help="print a JSON summary")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcool", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    for name in ("spectrum", "cool", "observable"):
        _add_common(subs.add_parser(name))

    bud = subs.add_parser("budget", help="print resource budgets for a target accuracy")
    bud.add_argument("--kind", choices=KINDS, required=True)
    bud.add_argument("--target", choices=("observable", "energy"), required=True)
    bud.add_argument("--epsilon", type=float, help="observable accuracy target")
    bud.add_argument("--kappa", type=float, help="eigenenergy accuracy target")
    bud.add_argument("--overlap", type=float, required=True, help="initial-state overlap lower bound")
    bud.add_argument("--gap", type=float, help="spectral-gap lower bound (observable target)")
    bud.add_argument("--confidence", type=float, default=32.0, help="Hoeffding constant K")
    bud.add_argument("--loose", action="store_true", help="use the headline constants instead of the proved ones")
    bud.add_argument("--json", action="store_true")

    val = subs.add_parser("validate", help="run the filter-family self-checks")
    val.add_argument("--seed", type=int, default=0)
    val.add_argument("--draws", type=int, default=100_000)
    val.add_argument("--json", action="store_true")
    return parser


def _overrides(args) -> dict:
    return {"seed": args.seed, "out_dir": args.out, "mode": args.mode}


def _cmd_run(args, runner) -> int:
    cfg = RunConfig.from_file(args.config, _overrides(args))
    result = runner(cfg)
    if args.json:
        payload = {k: v for k, v in result.items() if k in ("files", "shift", "report")}
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        for path in result.get("files", []):
            print(path)
    return EXIT_OK


def _cmd_budget(args) -> int:
    cf = CoolingFunction(args.kind)
    if args.target == "observable":
        if args.epsilon is None or args.gap is None:
            raise ConfigError("budget: observable target needs --epsilon and --gap")
        budget = budget_for_observable(cf, args.epsilon, args.overlap, args.gap,
                                       args.confidence, loose=args.loose)
    else:
        if args.kappa is None:
            raise ConfigError("budget: energy target needs --kappa")
        budget = budget_for_energy(cf, args.kappa, args.overlap, args.confidence, loose=args.loose)
    if args.json:
        print(json.dumps({
            "kind": budget.kind, "target": budget.target, "tau": budget.tau,
            "x_m": budget.x_m, "t_m": budget.t_m, "n_shots": budget.n_shots,
            "delta": budget.delta,
        }, indent=2, sort_keys=True))
    else:
        print(f"{'kind':>10} {'target':>12} {'tau':>12} {'x_m':>12} {'t_m':>12} {'N_M':>12} {'delta':>10}")
        print(f"{budget.kind:>10} {budget.target['type']:>12} {budget.tau:>12.6g} "
              f"{budget.x_m:>12.6g} {budget.t_m:>12.6g} {budget.n_shots:>12d} {budget.delta:>10.4g}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    report = validate_functions(seed=args.seed, n_draws=args.draws)
    if args.json:
        payload = [
            {
                "kind": r.kind, "realizable": bool(r.realizable), "passed": bool(r.passed),
                "closure_max_error": r.closure_max_error, "norm_error": r.norm_error,
                "tail_ok": {str(k): bool(v) for k, v in r.tail_ok.items()},
                "ks_x": r.ks_x, "ks_y": r.ks_y, "notes": r.notes,
            }
            for r in report.reports
        ]
        print(json.dumps({"seed": report.seed, "passed": report.passed, "kinds": payload},
                         indent=2, sort_keys=True))
    else:
        for line in report.lines():
            print(line)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "spectrum":
            return _cmd_run(args, run_spectrum)
        if args.command == "cool":
            return _cmd_run(args, run_cooling_scaling)
        if args.command == "observable":
            return _cmd_run(args, run_observable)
        if args.command == "budget":
            return _cmd_budget(args)
        if args.command == "validate":
            return _cmd_validate(args)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, PauliFormatError, NonRealizableError, FileNotFoundError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DegenerateRatioError as exc:
        print(f"degenerate estimate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
