"""Command-line interface for metricdl."""

from __future__ import annotations

import argparse
import dataclasses
import time
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Literal, TypeVar

from returns.result import Failure, Result

from metricdl.analysis import analyze, format_report
from metricdl.config import EngineConfig, MaterialisationConfig
from metricdl.engine import check_consistency, decide
from metricdl.error_handling import EXIT_BUDGET, EXIT_NEGATIVE, EXIT_POSITIVE, wrap_command
from metricdl.errors import MetricDLError
from metricdl.loading import LoadSession
from metricdl.logging import configure_logging, get_logger
from metricdl.materialise import JsonLinesTrace, Materialiser
from metricdl.syntax import Dataset, Program
from metricdl.types import MaterialisationMode, OutcomeKind, Verdict

EXIT_INTERNAL = 4

Command = Literal["decide", "materialise", "consistency", "analyze", "bench"]

T = TypeVar("T")

_logger = get_logger("cli")


@dataclasses.dataclass(frozen=True)
class CliArgs:
    """Parsed command-line arguments."""

    command: Command
    program: Path
    log_level: str
    log_file: Path | None
    debug: bool
    dataset: Path | None = None
    fact: str | None = None
    mode: str = "auto"
    max_steps: int = 10_000
    budget_states: int = 100_000
    budget_seconds: float = 60.0
    threads: int = 2
    method: Literal["automata", "materialisation"] = "automata"
    trace: Path | None = None
    drop_rules: bool = True
    filter_relevant: bool = True


def _add_inputs(parser: argparse.ArgumentParser, *, dataset: bool = True) -> None:
    parser.add_argument("--program", type=Path, required=True, help="Program file, one rule per line")
    if dataset:
        parser.add_argument("--dataset", type=Path, required=True, help="Dataset file, one fact per line")


def _add_budgets(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--max-steps",
        type=int,
        default=10_000,
        help="Materialisation step limit (default: 10000)",
    )
    parser.add_argument(
        "--budget-states",
        type=int,
        default=100_000,
        help="Automata states explored per consistency check (default: 100000)",
    )
    parser.add_argument(
        "--budget-seconds",
        type=float,
        default=60.0,
        help="Seconds per automata consistency check (default: 60)",
    )


def _add_materialisation_mode(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--mode",
        choices=[str(mode) for mode in MaterialisationMode],
        default=str(MaterialisationMode.OPTIMISED),
        help="Materialisation procedure (default: optimised)",
    )
    parser.add_argument(
        "--keep-rules",
        dest="drop_rules",
        action="store_false",
        help="Never drop rules in optimised mode",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metricdl",
        description="Fact entailment and consistency for metric temporal Datalog",
    )

    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=None,
        help="Log level (default: WARNING, or DEBUG if --debug is set)",
    )

    parser.add_argument(
        "--log-file",
        type=Path,
        default=None,
        help="Log file path (default: stderr)",
    )

    parser.add_argument(
        "-v",
        "--debug",
        action="store_true",
        help="Enable debug mode (sets log level to DEBUG unless --log-level is specified)",
    )

    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    decide_parser = commands.add_parser("decide", help="Decide whether a fact is entailed")
    _add_inputs(decide_parser)
    decide_parser.add_argument("--fact", required=True, help='Query fact, e.g. "P(a)@[0,1]"')
    decide_parser.add_argument(
        "--mode",
        choices=["auto", "naive", "seminaive", "optimised", "automata"],
        default="auto",
        help="Reasoning strategy (default: auto)",
    )
    decide_parser.add_argument("--threads", type=int, default=2, help="1 runs the strategies in turn (default: 2)")
    decide_parser.add_argument(
        "--no-filter",
        dest="filter_relevant",
        action="store_false",
        help="Reason over the whole program instead of the rules relevant to the query",
    )
    _add_budgets(decide_parser)

    materialise_parser = commands.add_parser("materialise", help="Materialise and print the store")
    _add_inputs(materialise_parser)
    _add_materialisation_mode(materialise_parser)
    materialise_parser.add_argument("--max-steps", type=int, default=10_000, help="Step limit (default: 10000)")

    consistency_parser = commands.add_parser("consistency", help="Check whether the inputs have a model")
    _add_inputs(consistency_parser)
    consistency_parser.add_argument(
        "--method",
        choices=["automata", "materialisation"],
        default="automata",
        help="Decision method (default: automata)",
    )
    _add_materialisation_mode(consistency_parser)
    _add_budgets(consistency_parser)

    analyze_parser = commands.add_parser("analyze", help="Classify predicates and print the dependency graph")
    _add_inputs(analyze_parser, dataset=False)

    bench_parser = commands.add_parser("bench", help="Compare the materialisation procedures step by step")
    _add_inputs(bench_parser)
    bench_parser.add_argument("--trace", type=Path, required=True, help="JSON-lines file receiving step records")
    bench_parser.add_argument("--max-steps", type=int, default=10, help="Steps per procedure (default: 10)")

    return parser


def parse_args(argv: Sequence[str] | None = None) -> CliArgs:
    """
    Parse command-line arguments.

    Args:
        argv: Command-line arguments. If None, uses sys.argv[1:].

    Returns:
        Parsed arguments as CliArgs dataclass.
    """
    args = _build_parser().parse_args(argv)

    # Determine log level: explicit --log-level wins, otherwise --debug sets DEBUG
    if args.log_level is not None:
        log_level = args.log_level
    elif args.debug:
        log_level = "DEBUG"
    else:
        log_level = "WARNING"

    options = vars(args)
    fields = {field.name for field in dataclasses.fields(CliArgs)}
    values = {name: value for name, value in options.items() if name in fields}
    values["log_level"] = log_level
    return CliArgs(**values)


def _value(result: Result[T, MetricDLError]) -> T:
    if isinstance(result, Failure):
        raise result.failure()
    return result.unwrap()


def _inputs(args: CliArgs, session: LoadSession) -> tuple[Program, Dataset]:
    program = _value(session.program(args.program))
    assert args.dataset is not None
    return program, _value(session.dataset(args.dataset))


def _materialisation_config(args: CliArgs) -> MaterialisationConfig:
    procedures = {str(mode) for mode in MaterialisationMode}
    return MaterialisationConfig.model_validate(
        {
            "mode": args.mode if args.mode in procedures else "optimised",
            "max_steps": args.max_steps,
            "drop_rules": args.drop_rules,
        }
    )


def _engine_config(args: CliArgs) -> EngineConfig:
    return EngineConfig.model_validate(
        {
            "mode": args.mode if args.command == "decide" else "auto",
            "threads": args.threads,
            "filter_relevant": args.filter_relevant,
            "materialisation": _materialisation_config(args),
            "automata": {"max_states": args.budget_states, "max_seconds": args.budget_seconds},
        }
    )


@wrap_command(logger=_logger, command_name="decide")
def _decide(args: CliArgs) -> int:
    session = LoadSession()
    program, dataset = _inputs(args, session)
    assert args.fact is not None
    fact = _value(session.fact(args.fact))
    decision = decide(program, dataset, fact, _engine_config(args))
    print(decision.verdict)
    _logger.info("Decided %s by %s after %d steps", decision.verdict, decision.provenance, decision.steps)
    return EXIT_NEGATIVE if decision.verdict is Verdict.NOT_ENTAILED else EXIT_POSITIVE


@wrap_command(logger=_logger, command_name="materialise")
def _materialise(args: CliArgs) -> int:
    program, dataset = _inputs(args, LoadSession())
    config = _materialisation_config(args)
    materialiser = Materialiser(program, dataset, mode=config.mode, drop_rules=config.drop_rules)
    outcome = materialiser.run(config.max_steps)
    print(outcome.store.dump(), end="")
    if outcome.kind is OutcomeKind.INCONSISTENT:
        assert outcome.violated is not None
        _logger.warning("Rule %s is violated after step %d", outcome.violated.name, outcome.step)
        return EXIT_POSITIVE
    return EXIT_NEGATIVE


@wrap_command(logger=_logger, command_name="consistency")
def _consistency(args: CliArgs) -> int:
    program, dataset = _inputs(args, LoadSession())
    decision = check_consistency(program, dataset, args.method, _engine_config(args))
    print("consistent" if decision.consistent else "inconsistent")
    return EXIT_NEGATIVE if decision.consistent else EXIT_POSITIVE


@wrap_command(logger=_logger, command_name="analyze")
def _analyze(args: CliArgs) -> int:
    program = _value(LoadSession().program(args.program))
    print(format_report(analyze(program)), end="")
    return EXIT_NEGATIVE


@wrap_command(logger=_logger, command_name="bench")
def _bench(args: CliArgs) -> int:
    program, dataset = _inputs(args, LoadSession())
    config = MaterialisationConfig.model_validate({"max_steps": args.max_steps})
    assert args.trace is not None
    rows: list[tuple[str, str, int, int, int, float]] = []
    with args.trace.open("w", encoding="utf-8") as stream:
        for mode in MaterialisationMode:
            trace = JsonLinesTrace(stream, program=args.program.name)
            materialiser = Materialiser(program, dataset, mode=mode, trace=trace, track_memory=True)
            started = time.perf_counter()
            outcome = materialiser.run(config.max_steps)
            elapsed = time.perf_counter() - started
            rows.append(
                (str(mode), str(outcome.kind), outcome.step, materialiser.instance_count, outcome.store.size(), elapsed)
            )
    print(f"{'mode':<10}  {'outcome':<12}  {'steps':>5}  {'instances':>9}  {'facts':>7}  seconds")
    for mode, kind, steps, instances, facts, elapsed in rows:
        print(f"{mode:<10}  {kind:<12}  {steps:>5}  {instances:>9}  {facts:>7}  {elapsed:.3f}")
    return EXIT_NEGATIVE


_COMMANDS: dict[str, Callable[[CliArgs], int]] = {
    "decide": _decide,
    "materialise": _materialise,
    "consistency": _consistency,
    "analyze": _analyze,
    "bench": _bench,
}


def run(argv: Sequence[str] | None = None) -> int:
    """
    Run one subcommand.

    Args:
        argv: Command-line arguments. If None, uses sys.argv[1:].

    Returns:
        Exit code: 0 for notEntailed or consistent, 1 for entailed or
        inconsistent, 2 for usage errors, 3 when the budget ran out.
    """
    args = parse_args(argv)

    configure_logging(level=args.log_level, log_file=args.log_file)
    _logger.debug("Configuration: %s", args)

    try:
        return _COMMANDS[args.command](args)

    except KeyboardInterrupt:
        _logger.info("Interrupted by user")
        return EXIT_BUDGET

    except Exception:
        _logger.critical("Fatal error in %s", args.command, exc_info=True)
        return EXIT_INTERNAL
