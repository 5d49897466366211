"""Command-line interface for coopkit."""

import os
import re
import sys
from datetime import datetime
from typing import Callable, Dict, List, Optional, Tuple

import click

from coopkit import __version__
from coopkit import almost_complete
from coopkit import config as config_module
from coopkit import controller
from coopkit import cooperation
from coopkit import demos
from coopkit import exceptions
from coopkit import logger
from coopkit.rationals import parse_rational

EXIT_ANALYSIS = 1
EXIT_VALIDATION = 2
EXIT_PARSE = 3
EXIT_USAGE = 4
EXIT_UNEXPECTED = 5

_CANDIDATE = re.compile(r"^C([12])=\{(.*)\}$")


class RationalType(click.ParamType):
    """Exact rational given as "p/q", an integer or a decimal string."""

    name = "rational"

    def convert(self, value, param, ctx):
        try:
            return parse_rational(value)
        except exceptions.ParseError as e:
            self.fail("%r is not an exact rational (%s)" % (value, e.message), param, ctx)


RATIONAL = RationalType()


class CoopkitGroup(click.Group):
    """Group whose usage errors exit with code 4."""

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            e.exit_code = EXIT_USAGE
            raise

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = EXIT_USAGE
            raise


def _parse_candidate(ctx, param, tokens: Optional[Tuple[str, str]]) -> Optional[Dict[int, List]]:
    """Parse "C1={v,...}" "C2={v,...}" into player -> discount values."""
    if not tokens:
        return None
    candidate: Dict[int, List] = {}
    for token in tokens:
        match = _CANDIDATE.match(token.replace(" ", ""))
        if match is None:
            raise click.BadParameter("Expected C1={v,...} or C2={v,...}, got %r" % token)
        player = int(match.group(1))
        if player in candidate:
            raise click.BadParameter("C%d given twice" % player)
        body = match.group(2)
        try:
            candidate[player] = [parse_rational(v) for v in body.split(",")] if body else []
        except exceptions.ParseError as e:
            raise click.BadParameter(e.message)
    return candidate


def _run(operation: Callable[[], int]) -> None:
    """Run a command body and map coopkit errors to exit codes."""
    try:
        code = operation()

    except exceptions.ValidationError as e:
        log = logger.get_logger()
        log.error("Validation error: %s", e)
        click.echo("Validation error: %s" % e, err=True)
        sys.exit(EXIT_VALIDATION)

    except exceptions.ParseError as e:
        log = logger.get_logger()
        log.error("Parse error: %s", e)
        click.echo("Parse error: %s" % e, err=True)
        sys.exit(EXIT_PARSE)

    except exceptions.UsageError as e:
        log = logger.get_logger()
        log.error("Usage error: %s", e)
        click.echo("Usage error: %s" % e, err=True)
        sys.exit(EXIT_USAGE)

    except exceptions.AnalysisError as e:
        log = logger.get_logger()
        log.error("Analysis error: %s", e)
        click.echo("Analysis error: %s" % e, err=True)
        sys.exit(EXIT_ANALYSIS)

    except exceptions.ExportError as e:
        log = logger.get_logger()
        log.error("Export error: %s", e)
        click.echo("Export error: %s" % e, err=True)
        sys.exit(EXIT_ANALYSIS)

    except exceptions.CoopkitError as e:
        log = logger.get_logger()
        log.error("Error: %s", e)
        click.echo("Error: %s" % e, err=True)
        sys.exit(EXIT_ANALYSIS)

    except Exception as e:
        log = logger.get_logger()
        log.error("Unexpected error: %s", e, exc_info=True)
        click.echo("Unexpected error: %s" % e, err=True)
        sys.exit(EXIT_UNEXPECTED)

    if code:
        sys.exit(code)


def _export(ctx: click.Context, report, title: str) -> None:
    app: controller.CoopkitController = ctx.obj["controller"]
    output_path = ctx.obj["output_path"]
    app.export(report, output_path, title)
    if output_path:
        click.echo("Report successfully exported to: %s" % output_path)
        logger.get_logger().info("Report successfully exported to: %s", output_path)


@click.group(cls=CoopkitGroup)
@click.version_option(version=__version__, prog_name="coopkit")
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=False),
    default="config.yaml",
    help="Configuration file path (default: config.yaml).",
)
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="Logging level (default: INFO, or from config file).",
)
@click.option(
    "--log-file",
    type=click.Path(),
    default=None,
    help="Log file path (optional, no file logging by default).",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(controller.OUTPUT_FORMATS, case_sensitive=False),
    default=None,
    help="Report format (default: json, or from config file).",
)
@click.option(
    "--output",
    "output_path",
    type=click.Path(),
    default=None,
    help="Output file path for JSON reports (optional).",
)
@click.pass_context
def cli(
    ctx: click.Context,
    config_path: str,
    log_level: Optional[str],
    log_file: Optional[str],
    output_format: Optional[str],
    output_path: Optional[str],
) -> None:
    """coopkit - Cooperation events in repeated games with incomplete information.

    Checks whether grim-trigger profiles are Bayesian equilibria when the
    players' discount factors are private information.

    Examples:

        \b
        # Validate a belief space file
        $ coopkit validate space.json

        \b
        # Largest cooperation pair and every pair on a built-in space
        $ coopkit analyze --space prisonerex3 --game pd --enumerate

        \b
        # Check a candidate pair and cross-check it with the payoff oracle
        $ coopkit analyze --space example6 --game g3x3:a=5 --candidate C1={3/4} C2={3/4} --oracle

        \b
        # Almost-complete information on the neighbourhood grid
        $ coopkit --format text robust --space prisonerex4 --profile --eps 1/10
    """
    config = config_module.Config.load(
        config_path=config_path if config_path != "config.yaml" or os.path.exists(config_path) else None,
        log_level=log_level.upper() if log_level is not None else None,
    )
    if log_file is not None:
        config.log_file = log_file
    if output_format is not None:
        config.output_format = output_format.lower()
    if output_path and config.output_format != "json":
        raise click.BadParameter("Output path can only be specified with JSON format.")

    log = logger.setup_logger(log_level=config.log_level, log_file=config.log_file)
    log.info("Starting coopkit at %s", datetime.now().isoformat())
    log.debug("Configuration: %s", config.to_dict())

    ctx.obj = {"controller": controller.CoopkitController(config), "output_path": output_path}


@cli.command()
@click.argument("space")
@click.option("--game", default=None, help='Game to validate too: "pd", "g3x3:a=N" or a JSON file.')
@click.pass_context
def validate(ctx: click.Context, space: str, game: Optional[str]) -> None:
    """Check every invariant of SPACE (a JSON file or a built-in name)."""

    def operation() -> int:
        report = ctx.obj["controller"].validate(space, game)
        _export(ctx, report, "Validation: %s" % space)
        return 0 if report.passed else EXIT_VALIDATION

    _run(operation)


@cli.command()
@click.option("--space", required=True, help="Belief space: JSON file or built-in name.")
@click.option("--game", default="pd", help='"pd", "g3x3:a=N" or a JSON file (default: pd).')
@click.option(
    "--mode",
    type=click.Choice(cooperation.MODES, case_sensitive=False),
    default=None,
    help="Solution concept (default: bayesian, or from config file).",
)
@click.option("--enumerate", "enumerate_all", is_flag=True, help="List every pair of cooperation events.")
@click.option("--oracle", is_flag=True, help="Cross-check examined pairs with the payoff oracle.")
@click.option("--budget", type=click.IntRange(min=1), default=None, help="Enumeration budget (candidate pairs).")
@click.option(
    "--candidate",
    nargs=2,
    default=None,
    callback=_parse_candidate,
    help="Candidate discount values, e.g. --candidate C1={3/4} C2={3/4}.",
)
@click.pass_context
def analyze(
    ctx: click.Context,
    space: str,
    game: str,
    mode: Optional[str],
    enumerate_all: bool,
    oracle: bool,
    budget: Optional[int],
    candidate: Optional[Dict[int, List]],
) -> None:
    """Largest pair of cooperation events and optional checks."""

    def operation() -> int:
        app: controller.CoopkitController = ctx.obj["controller"]
        if budget is not None:
            app.config.enumeration_budget = budget
        report = app.analyze(
            space,
            game,
            mode=mode.lower() if mode else None,
            enumerate_all=enumerate_all,
            oracle=oracle,
            candidate=candidate,
        )
        _export(ctx, report, "Analysis: %s under %s" % (space, report.game))
        return 0

    _run(operation)


@cli.command()
@click.option("--space", required=True, help="Belief space: JSON file or built-in name.")
@click.option("--game", default="pd", help='"pd", "g3x3:a=N" or a JSON file (default: pd).')
@click.option("--ms", is_flag=True, help="Common-prior almost-complete information check.")
@click.option("--strong", is_flag=True, help="Strong almost-complete information check.")
@click.option("--profile", is_flag=True, help="Robust grim-trigger profile from common (1-eps)-belief.")
@click.option("--f-epsilon", "f_epsilon", is_flag=True, help="eps'-shifted profile (2x2 games only).")
@click.option("--eps", type=RATIONAL, default=None, help="Belief tolerance eps.")
@click.option("--delta", type=RATIONAL, default=None, help="Mass tolerance delta (with --ms).")
@click.option("--eps-prime", "eps_prime", type=RATIONAL, default=None, help="Gain tolerance eps' (with --f-epsilon).")
@click.option(
    "--reading",
    type=click.Choice(almost_complete.READINGS),
    default=almost_complete.UNION,
    help="Quantifier reading of the strong check (default: union).",
)
@click.pass_context
def robust(
    ctx: click.Context,
    space: str,
    game: str,
    ms: bool,
    strong: bool,
    profile: bool,
    f_epsilon: bool,
    eps,
    delta,
    eps_prime,
    reading: str,
) -> None:
    """Almost-complete information checks and robust profiles."""

    def operation() -> int:
        report = ctx.obj["controller"].robust(
            space,
            game,
            ms=ms,
            strong=strong,
            profile=profile,
            f_epsilon=f_epsilon,
            eps=eps,
            delta=delta,
            eps_prime=eps_prime,
            reading=reading,
        )
        _export(ctx, report, "Robustness: %s" % space)
        return 0

    _run(operation)


@cli.command()
@click.argument("name", required=False)
@click.option("--list", "list_only", is_flag=True, help="List the available demos.")
@click.pass_context
def demo(ctx: click.Context, name: Optional[str], list_only: bool) -> None:
    """Run the built-in scenario NAME and check its known values."""

    def operation() -> int:
        if list_only:
            for key in demos.DEMOS:
                click.echo(key)
            return 0
        if name is None:
            raise exceptions.UsageError("Give a demo name or --list", "MISSING_DEMO")
        result = ctx.obj["controller"].demo(name)
        _export(ctx, result, "Demo: %s" % result.name)
        return 0 if result.passed else EXIT_ANALYSIS

    _run(operation)


def main() -> None:
    """Console-script entry point."""
    cli(prog_name="coopkit")


if __name__ == "__main__":
    sys.exit(main())
