"""End-to-end demo scenarios on the built-in fixtures.

Each scenario compares what the engine computes with the values known for
the example and records every comparison as a DemoCheck.
"""

from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Tuple

from coopkit import almost_complete
from coopkit import cooperation
from coopkit import exceptions
from coopkit import fixtures
from coopkit import logger
from coopkit import models
from coopkit import payoff_oracle
from coopkit.belief_space import BeliefSpace, Event
from coopkit.stage_game import build_thresholds, f_function


def _values(space: BeliefSpace, player: int, event: Event) -> str:
    values = sorted({space.discount(player, s) for s in event})
    return "{%s}" % ",".join(str(v) for v in values)


def _pair(space: BeliefSpace, pair: Tuple[Event, Event]) -> str:
    return "(%s,%s)" % (_values(space, 1, pair[0]), _values(space, 2, pair[1]))


def _pairs(space: BeliefSpace, pairs: Iterable[Tuple[Event, Event]]) -> str:
    return "; ".join(_pair(space, p) for p in pairs)


def _states(event: Event) -> str:
    return "{%s}" % ",".join(sorted(event))


def _witness(report: models.CooperationReport) -> str:
    w = report.witness()
    if w is None:
        return "none"
    return "player %d at %s: %s vs %s (%s)" % (w.player, w.state, w.lhs, w.rhs, w.bound)


def _where(space: BeliefSpace, player: int, *values) -> Event:
    wanted = {Fraction(v) for v in values}
    return frozenset(s for s in space.states if space.discount(player, s) in wanted)


def _check(checks: List[models.DemoCheck], name: str, expected, actual) -> None:
    checks.append(models.DemoCheck(name, str(expected), str(actual)))


def _prisonerex1() -> models.DemoResult:
    space, game = fixtures.prisonerex1(), fixtures.pd()
    checks: List[models.DemoCheck] = []
    f = [f_function(game, 1, Fraction(n, 4)) for n in (3, 2, 1)]
    _check(checks, "f at 3/4, 1/2, 1/4", "1/6, 1/2, 3/2", ", ".join(str(v) for v in f))
    _check(checks, "lambda0", "1/3", build_thresholds(space, game)[1].lambda0)
    pair, report = cooperation.largest_pair(space, game)
    _check(checks, "largest pair", "({1/2,3/4},{1/2,3/4})", _pair(space, pair))
    _check(checks, "largest verdict", True, report.verdict)
    high = (_where(space, 1, "3/4"), _where(space, 2, "3/4"))
    _check(checks, "({3/4},{3/4}) verdict", True, cooperation.check_pair(space, game, *high).verdict)
    _check(checks, "({3/4},{3/4}) oracle", True, payoff_oracle.is_bayes_equilibrium(space, game, *high)[0])
    pairs = cooperation.enumerate_pairs(space, game)
    _check(checks, "enumeration contains ({3/4},{3/4})", True, high in pairs)
    _check(checks, "enumeration contains the trivial pair", True, (frozenset(), frozenset()) in pairs)
    ms = almost_complete.ms_almost_complete(space, Fraction(1, 10), Fraction(1, 10))
    _check(checks, "almost complete (eps = delta = 1/10)", "False with region {}", "%s with region %s" % (ms.holds, _states(ms.region)))
    return models.DemoResult("prisonerex1", "Uniform prior on {1/4,1/2,3/4}^2, prisoner's dilemma", checks)


def _prisonerex2() -> models.DemoResult:
    space, game = fixtures.prisonerex2(), fixtures.pd()
    checks: List[models.DemoCheck] = []
    _check(
        checks,
        "cooperation pairs",
        "({1/2,3/4},{1/2,3/4}); ({},{})",
        _pairs(space, cooperation.enumerate_pairs(space, game)),
    )
    high = (_where(space, 1, "3/4"), _where(space, 2, "3/4"))
    report = cooperation.check_pair(space, game, *high)
    _check(checks, "({3/4},{3/4}) verdict", False, report.verdict)
    _check(checks, "({3/4},{3/4}) witness", "player 1 at 1/2,1/2: 2/3 vs 1/2 (f)", _witness(report))
    _check(checks, "({3/4},{3/4}) oracle", False, payoff_oracle.is_bayes_equilibrium(space, game, *high)[0])
    return models.DemoResult("prisonerex2", "Each player believes the opponent is at least as patient", checks)


def _prisonerex3() -> models.DemoResult:
    space, game = fixtures.prisonerex3(), fixtures.pd()
    checks: List[models.DemoCheck] = []
    pair, report = cooperation.largest_pair(space, game)
    _check(checks, "largest pair", "({1/2},{1/2})", _pair(space, pair))
    _check(checks, "largest verdict", True, report.verdict)
    _check(
        checks,
        "cooperation pairs",
        "({1/2},{1/2}); ({},{})",
        _pairs(space, cooperation.enumerate_pairs(space, game)),
    )
    return models.DemoResult("prisonerex3", "Each player believes patience is reversed", checks)


def _example_new() -> models.DemoResult:
    space, game = fixtures.example_new(), fixtures.pd()
    checks: List[models.DemoCheck] = []
    pair, _ = cooperation.largest_pair(space, game)
    _check(checks, "largest pair", "({},{})", _pair(space, pair))
    high, low = payoff_oracle.signaling_fixture(game)
    _check(checks, "patient type: signal vs defect", "3 vs 2", "%s vs %s" % (high.conforming, high.deviation))
    _check(checks, "impatient type: defect vs mimic", "4/3 vs 13/12", "%s vs %s" % (low.conforming, low.deviation))
    _check(checks, "signalling deters deviation", True, high.deters and low.deters)
    return models.DemoResult("example_new", "No cooperation events, yet signalling sustains cooperation", checks)


def _example5() -> models.DemoResult:
    space, game = fixtures.example5grid(10), fixtures.g3x3(6)
    checks: List[models.DemoCheck] = []
    pair, report = cooperation.largest_pair(space, game)
    _check(checks, "largest pair", "({13/20,3/4,17/20,19/20},{13/20,3/4,17/20,19/20})", _pair(space, pair))
    _check(checks, "largest verdict", False, report.verdict)
    _check(checks, "largest witness", "player 1 at 1/20,1/20: 2/5 vs 1/3 (g1)", _witness(report))
    _check(checks, "cooperation pairs", "({},{})", _pairs(space, cooperation.enumerate_pairs(space, game)))
    return models.DemoResult("example5", "Three-action game (a = 6) on a 10 x 10 uniform grid", checks)


def _example6() -> models.DemoResult:
    space, game = fixtures.example6(), fixtures.g3x3(5)
    checks: List[models.DemoCheck] = []
    pair, report = cooperation.largest_pair(space, game)
    _check(checks, "largest pair", "({1/2,3/4},{1/2,3/4})", _pair(space, pair))
    _check(checks, "largest verdict", False, report.verdict)
    _check(checks, "largest witness", "player 1 at 1/4,1/2: 2/3 vs 1/2 (g1)", _witness(report))
    entry = payoff_oracle.best_deviation(space, game, pair[0], pair[1], 1, "1/4,1/2")
    _check(checks, "largest pair oracle gain at 1/4", "10/3 -> 11/3", "%s -> %s" % (entry.conforming, entry.best))
    high = (_where(space, 1, "3/4"), _where(space, 2, "3/4"))
    candidate = cooperation.candidate_pair(space, game, *high)
    _check(checks, "candidate from ({3/4},{3/4})", "({3/4},{3/4})", _pair(space, candidate))
    _check(checks, "candidate verdict", True, cooperation.check_pair(space, game, *candidate).verdict)
    _check(checks, "candidate oracle", True, payoff_oracle.is_bayes_equilibrium(space, game, *candidate)[0])
    return models.DemoResult("example6", "Three-action game (a = 5) on the uniform 3 x 3 space", checks)


def _prisonerex4() -> models.DemoResult:
    space, game = fixtures.prisonerex4_grid(), fixtures.pd()
    checks: List[models.DemoCheck] = []
    pair, report = cooperation.largest_pair(space, game)
    threshold = min((space.discount(1, s) for s in pair[0]), default=None)
    region = space.where(lambda l1, l2: threshold is not None and l1 >= threshold)
    _check(checks, "player 1 region", "lambda1 >= 12/25", "lambda1 >= %s" % threshold)
    _check(checks, "region is an upper set", True, pair[0] == region)
    _check(checks, "largest verdict", True, report.verdict)
    robust, _ = almost_complete.robust_profile(space, game, Fraction(1, 10))
    _check(checks, "robust profile (eps = 1/10)", "({},{})", _pair(space, robust))
    return models.DemoResult("prisonerex4", "Neighbourhood beliefs on a 1/100 grid, half-width 1/20", checks)


def _almost_complete() -> models.DemoResult:
    game = fixtures.pd()
    checks: List[models.DemoCheck] = []
    complete = fixtures.complete_information()
    eps = Fraction(1, 10)
    _check(checks, "complete information, strong", True, almost_complete.strong_almost_complete(complete, eps).holds)
    _check(checks, "complete information, ms", True, almost_complete.ms_almost_complete(complete, eps, eps).holds)
    pair, _ = almost_complete.robust_profile(complete, game, 0)
    regions = cooperation.lambda_regions(complete, build_thresholds(complete, game))
    lam = regions[0] & regions[1]
    _check(checks, "complete information robust profile", True, pair == (lam, lam))

    chain = fixtures.almost_complete_chain()
    for reading in almost_complete.READINGS:
        report = almost_complete.strong_almost_complete(chain, eps, reading)
        _check(checks, "chain, strong (%s)" % reading, True, report.holds)
    ms = almost_complete.ms_almost_complete(chain, eps, eps)
    _check(checks, "chain, ms region", "{1/4,1/4,3/4,3/4} with mass 99/100", "%s with mass %s" % (_states(ms.region), ms.mass))
    robust, report = almost_complete.robust_profile(chain, game, eps)
    _check(checks, "chain robust profile", "{3/4,1/4,3/4,3/4} / {3/4,3/4}", "%s / %s" % (_states(robust[0]), _states(robust[1])))
    _check(checks, "chain robust max gain", "0", report.max_gain)
    _check(checks, "chain unravelled mass", "0", report.unravelled_mass)
    return models.DemoResult("almost_complete", "Almost-complete information checks and robust profiles", checks)


DEMOS: Dict[str, Callable[[], models.DemoResult]] = {
    "prisonerex1": _prisonerex1,
    "prisonerex2": _prisonerex2,
    "prisonerex3": _prisonerex3,
    "example_new": _example_new,
    "example5": _example5,
    "example6": _example6,
    "prisonerex4": _prisonerex4,
    "almost_complete": _almost_complete,
}


def run_demo(name: str) -> models.DemoResult:
    """Run a named scenario and collect its checks.

    Raises:
        UnknownExampleError: If no scenario has that name.
    """
    key = name.replace("-", "_")
    if key not in DEMOS:
        raise exceptions.UnknownExampleError(name, tuple(DEMOS))
    log = logger.get_logger()
    log.info("Running demo: %s", key)
    result = DEMOS[key]()
    for check in result.checks:
        if not check.passed:
            log.warning("Demo %s: %s expected %s, got %s", key, check.name, check.expected, check.actual)
    return result
