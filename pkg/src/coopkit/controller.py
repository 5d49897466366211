"""Main controller for coopkit."""

from typing import Dict, Iterable, List, Optional, Sequence

from coopkit import almost_complete
from coopkit import config as config_module
from coopkit import cooperation
from coopkit import demos
from coopkit import exceptions
from coopkit import exporter
from coopkit import loader
from coopkit import logger
from coopkit import models
from coopkit import payoff_oracle
from coopkit.belief_space import PLAYERS, BeliefSpace, Event, check_invariants
from coopkit.rationals import format_rational, parse_rational
from coopkit.stage_game import build_thresholds

OUTPUT_FORMATS = ("json", "text")


def candidate_event(space: BeliefSpace, player: int, values: Iterable) -> Event:
    """States where ``player``'s discount factor is one of ``values``.

    Raises:
        UsageError: If a value is not the discount factor of any state.
    """
    wanted = {parse_rational(v) for v in values}
    present = {space.discount(player, s) for s in space.states}
    missing = sorted(wanted - present)
    if missing:
        raise exceptions.UsageError(
            "Player %d has no state with discount factor %s"
            % (player, ", ".join(format_rational(v) for v in missing)),
            "BAD_CANDIDATE",
        )
    return space.where(lambda *pair: pair[player - 1] in wanted)


class CoopkitController:
    """Main controller for coopkit.

    Loads inputs, runs the requested analysis and exports the report in the
    configured format.

    Attributes:
        config: Settings for logging, output format, mode and budget.
    """

    def __init__(self, config: Optional[config_module.Config] = None) -> None:
        """Initialize controller.

        Args:
            config: Optional Config object with settings.
        """
        self._config = config or config_module.Config()
        self._log = logger.get_logger()
        self._exporter = exporter.ReportExporter()

    @property
    def config(self) -> config_module.Config:
        return self._config

    def _space(self, spec: str, validate: bool = True) -> BeliefSpace:
        self._log.info("Loading belief space: %s", spec)
        return loader.resolve_space(spec, self._config.check_prior_consistency, validate)

    def validate(self, space_spec: str, game_spec: Optional[str] = None) -> models.ValidationReport:
        """Check every invariant of a belief space and, optionally, a game.

        Invariant failures are collected in the report rather than raised.

        Raises:
            ParseError: If an input document is malformed.
        """
        self._log.info("Starting validation")
        checks: List[models.InvariantCheck] = []
        try:
            space = self._space(space_spec, validate=False)
        except exceptions.ValidationError as e:
            self._log.warning("Belief space rejected: %s", e)
            checks.append(models.InvariantCheck("structure", False, str(e)))
        else:
            for result in check_invariants(space, self._config.check_prior_consistency):
                error = None if result.error is None else str(result.error)
                checks.append(models.InvariantCheck(result.name, result.passed, error))

        game_name = None
        if game_spec is not None:
            game_name = game_spec
            try:
                game = loader.load_game(game_spec)
            except exceptions.GameValidationError as e:
                self._log.warning("Game rejected: %s", e)
                checks.append(models.InvariantCheck("game", False, str(e)))
            else:
                game_name = game.name
                checks.append(models.InvariantCheck("game", True))

        report = models.ValidationReport(space=space_spec, checks=checks, game=game_name)
        self._log.info("Validation %s", "passed" if report.passed else "failed")
        return report

    def analyze(
        self,
        space_spec: str,
        game_spec: str,
        mode: Optional[str] = None,
        enumerate_all: bool = False,
        oracle: bool = False,
        candidate: Optional[Dict[int, Sequence]] = None,
    ) -> models.AnalysisReport:
        """Cooperation analysis of a belief space under a repeated game.

        Args:
            space_spec: Space file path or built-in fixture name.
            game_spec: "pd", "g3x3:a=<rational>" or a game file path.
            mode: "bayesian" or "icr"; defaults to the configured mode.
            enumerate_all: Also list every pair of cooperation events.
            oracle: Cross-check the examined pairs with the payoff oracle.
            candidate: Per player, discount values making up C_i; when given,
                the candidate pair built from (C1, C2) is checked too.

        Returns:
            AnalysisReport for the inputs.
        """
        mode = mode or self._config.mode
        space = self._space(space_spec)
        game = loader.load_game(game_spec)
        self._log.info("Analyzing %s under %s (%s)", space_spec, game.name, mode)

        thresholds = build_thresholds(space, game)
        regions = cooperation.lambda_regions(space, thresholds)
        pair, largest = cooperation.largest_pair(space, game, mode)
        self._log.info("Largest pair verdict: %s", largest.verdict)

        report = models.AnalysisReport(
            space=space_spec,
            game=game.name,
            lambda0=cooperation.lambda0_profile(thresholds),
            lambda_regions=regions,
            largest=largest,
        )

        examined = [pair]
        if candidate is not None:
            events = [candidate_event(space, player, candidate.get(player, ())) for player in PLAYERS]
            built = cooperation.candidate_pair(space, game, *events)
            report.candidate = cooperation.check_pair(space, game, built[0], built[1], mode)
            self._log.info("Candidate pair verdict: %s", report.candidate.verdict)
            examined.append(built)

        if enumerate_all:
            self._log.info("Enumerating cooperation pairs")
            report.pairs = cooperation.enumerate_pairs(
                space, game, mode, self._config.enumeration_budget
            )
            self._log.info("Found %d pairs", len(report.pairs))

        if oracle:
            self._log.info("Running payoff oracle on %d pair(s)", len(examined))
            report.deviations = [
                payoff_oracle.deviation_report(space, game, k1, k2) for k1, k2 in examined
            ]

        self._log.info("Analysis completed")
        return report

    def robust(
        self,
        space_spec: str,
        game_spec: str = "pd",
        ms: bool = False,
        strong: bool = False,
        profile: bool = False,
        f_epsilon: bool = False,
        eps=None,
        delta=None,
        eps_prime=None,
        reading: str = almost_complete.UNION,
    ) -> models.RobustnessRun:
        """Almost-complete-information checks and robust profiles.

        Raises:
            UsageError: If no check is selected or a needed parameter is missing.
        """
        if not (ms or strong or profile or f_epsilon):
            raise exceptions.UsageError(
                "Select at least one of --ms, --strong, --profile, --f-epsilon", "NO_CHECK"
            )
        if eps is None:
            raise exceptions.UsageError("--eps is required", "MISSING_EPS")
        if ms and delta is None:
            raise exceptions.UsageError("--ms needs --delta", "MISSING_DELTA")
        if f_epsilon and eps_prime is None:
            raise exceptions.UsageError("--f-epsilon needs --eps-prime", "MISSING_EPS_PRIME")

        space = self._space(space_spec)
        game = loader.load_game(game_spec)
        run = models.RobustnessRun(space=space_spec, game=game.name)

        if ms:
            self._log.info("Checking almost-complete information (eps=%s, delta=%s)", eps, delta)
            run.reports.append(almost_complete.ms_almost_complete(space, eps, delta))
        if strong:
            self._log.info("Checking strong almost-complete information (%s reading)", reading)
            run.reports.append(almost_complete.strong_almost_complete(space, eps, reading))
        if profile:
            self._log.info("Building robust profile (eps=%s)", eps)
            run.reports.append(almost_complete.robust_profile(space, game, eps)[1])
        if f_epsilon:
            self._log.info("Building f-epsilon profile (eps=%s, eps'=%s)", eps, eps_prime)
            run.reports.append(almost_complete.f_epsilon_profile(space, game, eps, eps_prime)[1])

        self._log.info("Robustness checks completed")
        return run

    def demo(self, name: str) -> models.DemoResult:
        """Run a built-in scenario end to end.

        Raises:
            UnknownExampleError: If no scenario has that name.
        """
        result = demos.run_demo(name)
        self._log.info("Demo %s %s", result.name, "passed" if result.passed else "failed")
        return result

    def export(self, report, output_path: Optional[str] = None, title: str = "coopkit report") -> str:
        """Export a report in the configured format.

        Raises:
            ExportError: If the format is unknown or writing fails.
        """
        output_format = self._config.output_format
        self._log.info("Exporting report in %s format", output_format)
        if output_format == "json":
            result = self._exporter.export_json(report, output_path)
            self._log.debug("Report exported to: %s", output_path or "stdout")
            return result
        if output_format == "text":
            return self._exporter.export_text(report, title)
        self._log.error("Invalid output format: %s", output_format)
        raise exceptions.ExportError(
            "Invalid output format: %s. Must be one of %s" % (output_format, ", ".join(OUTPUT_FORMATS)),
            "INVALID_FORMAT",
        )
