import sys
import argparse
from enum import IntEnum
from typing import List, Optional

from robustpigou.config import Mode
from robustpigou.engine import EngineBuilder, summary
from robustpigou.errors import (
    ConfigError,
    RobustPigouError,
    ScenarioInvalid,
    TooLarge,
)


class ExitCode(IntEnum):
    OK = 0
    USAGE = 2
    INVALID = 3
    SWEEP_INVALID = 4
    ORACLE_FAILED = 5
    TOO_LARGE = 6


def run(args: argparse.Namespace) -> int:
    """
    Build the engine for the parsed subcommand and run it.

    Args:
        args (argparse.Namespace): Parsed command-line arguments.

    Returns:
        int: Process exit code, one of `ExitCode`.
    """
    mode = Mode[args.command.upper()]
    code = ExitCode.OK

    try:
        engine = (
            EngineBuilder(args.config, mode, output_root=args.out)
            .create_logger()
            .create_inputs(check=mode is not Mode.SWEEP)
            .build()
        )

        if mode is Mode.SOLVE:
            report = engine.solve(u0=args.u0)
        elif mode is Mode.SWEEP:
            lo, hi, steps = args.range
            if not float(steps).is_integer():
                raise ConfigError("The number of sweep steps must be an integer.")
            report, invalid = engine.sweep(args.param, lo, hi, int(steps))
            if invalid:
                code = ExitCode.SWEEP_INVALID
        elif mode is Mode.ORACLE:
            report, passed = engine.oracle(
                args.types, args.levels, corrupt=args.corrupt_guarantee
            )
            if not passed:
                code = ExitCode.ORACLE_FAILED
        else:
            report = engine.evaluate(args.schedule, u0=args.u0)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.USAGE
    except ScenarioInvalid as e:
        print("error: invalid scenario", file=sys.stderr)
        for violation in e.violations:
            print(f"  {violation}", file=sys.stderr)
        return ExitCode.INVALID
    except TooLarge as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.TOO_LARGE
    except (RobustPigouError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return ExitCode.INVALID

    print(summary(report))
    return code


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="robustpigou",
        description="Solve and verify robust externality regulation problems",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help)
        sub.add_argument(
            "--config",
            required=True,
            help="Path to the configuration file (e.g., floor.toml)",
        )
        sub.add_argument(
            "--out",
            default=None,
            help="Output root; overrides ROBUST_PIGOU_OUT and [general] output_path",
        )
        return sub

    solve = command("solve", "Compute the robustly optimal policy")
    solve.add_argument("--u0", type=float, default=0.0, help="Utility of the lowest type")

    sweep = command("sweep", "Comparative statics over one parameter")
    sweep.add_argument("--param", required=True, help="mu, cost or xi_bar")
    sweep.add_argument(
        "--range",
        required=True,
        nargs=3,
        type=float,
        metavar=("LO", "HI", "STEPS"),
        help="Evenly spaced values from LO to HI",
    )

    oracle = command("oracle", "Check the solver against brute-force minimax")
    oracle.add_argument("--types", type=int, default=6, help="Grid points")
    oracle.add_argument("--levels", type=int, default=7, help="Quantity levels")
    oracle.add_argument(
        "--corrupt-guarantee",
        type=float,
        default=0.0,
        help=argparse.SUPPRESS,
    )

    evaluate = command("eval", "Worst-case welfare of a schedule CSV")
    evaluate.add_argument("--schedule", required=True, help="CSV with a 'q' column")
    evaluate.add_argument("--u0", type=float, default=0.0, help="Utility of the lowest type")
    return parser


def main(argv: Optional[List[str]] = None):
    """
    Entry point of the `robustpigou` command.

    Example Usage:
        robustpigou solve --config example/floor.toml
        robustpigou sweep --config example/vaccines.toml --param mu --range 0 0.5 11
    """
    parser = _parser()
    args = parser.parse_args(argv)
    sys.exit(int(run(args)))


if __name__ == "__main__":
    main()
