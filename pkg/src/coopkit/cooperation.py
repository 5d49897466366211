"""Cooperation events for conditional grim-trigger profiles.

A pair (K1, K2) of events is a pair of cooperation events when the profile
"play tau while in K_i and the opponent has always played tau, otherwise play
sigma" is a Bayesian equilibrium. The module checks the characterizing
conditions, constructs the largest candidate pair and enumerates all pairs on
small spaces.
"""

from itertools import chain, combinations
from typing import Iterable, List, Sequence, Tuple

from coopkit import exceptions
from coopkit import logger
from coopkit import models
from coopkit.belief_operators import common_f_belief, f_belief, require_measurable
from coopkit.belief_space import PLAYERS, BeliefSpace, Event, State, other
from coopkit.config import DEFAULT_BUDGET
from coopkit.stage_game import RepeatedGame, ThresholdProfile, build_thresholds

BAYESIAN = "bayesian"
ICR = "icr"
MODES = (BAYESIAN, ICR)

EventPair = Tuple[Event, Event]


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise exceptions.UsageError("Unknown mode %r (expected one of %s)" % (mode, ", ".join(MODES)))


def lambda_region(space: BeliefSpace, thresholds: ThresholdProfile, player: int) -> Event:
    """Lambda_i: states where lambda_i is at least the cooperation threshold."""
    lambda0 = thresholds[player].lambda0
    return frozenset(s for s in space.states if space.discount(player, s) >= lambda0)


def lambda_regions(space: BeliefSpace, thresholds: ThresholdProfile) -> EventPair:
    return (lambda_region(space, thresholds, 1), lambda_region(space, thresholds, 2))


def _first(failures: List[models.Witness]) -> List[models.Witness]:
    return [min(failures, key=lambda w: w.state)] if failures else []


def _condition_a(space, thresholds, pair) -> models.ConditionResult:
    passed, witnesses = {}, []
    for player in PLAYERS:
        lambda0 = thresholds[player].lambda0
        failing = sorted(s for s in pair[player - 1] if space.discount(player, s) < lambda0)
        passed[player] = not failing
        if failing:
            witnesses.append(
                models.Witness(player, failing[0], space.discount(player, failing[0]), lambda0, "lambda0")
            )
    return models.ConditionResult("a", passed, witnesses)


def _belief_conditions(space, thresholds, pair) -> Tuple[models.ConditionResult, models.ConditionResult]:
    # Conditions (b) and (c) together; both are constant on information cells.
    passed_b, passed_c, witness_b, witness_c = {}, {}, [], []
    for player in PLAYERS:
        own, opponent = pair[player - 1], pair[other(player) - 1]
        entry = thresholds[player]
        fails_b, fails_c = [], []
        for cell in space.partition(player).cells:
            state = min(cell)
            belief = space.posterior(player, opponent, state)
            if state in own:
                if belief < entry.f(state):
                    fails_b.append(models.Witness(player, state, belief, entry.f(state), "f"))
            else:
                bound, name = thresholds.upper_bound(player, state)
                if belief > bound:
                    fails_c.append(models.Witness(player, state, belief, bound, name))
        passed_b[player], passed_c[player] = not fails_b, not fails_c
        witness_b += _first(fails_b)
        witness_c += _first(fails_c)
    return (
        models.ConditionResult("b", passed_b, witness_b),
        models.ConditionResult("c", passed_c, witness_c),
    )


def _rationalizable(space, thresholds, pair) -> dict:
    regions = lambda_regions(space, thresholds)
    evident = common_f_belief(space, thresholds.f_pair, regions[0] & regions[1])
    return {
        player: pair[player - 1] <= f_belief(space, player, thresholds[player].f, evident)
        for player in PLAYERS
    }


def evaluate_pair(
    space: BeliefSpace,
    thresholds: ThresholdProfile,
    k1: Iterable[State],
    k2: Iterable[State],
    mode: str = BAYESIAN,
) -> models.CooperationReport:
    """check_pair against precomputed thresholds."""
    _check_mode(mode)
    pair = (require_measurable(space, 1, k1), require_measurable(space, 2, k2))
    conditions = {"a": _condition_a(space, thresholds, pair)}
    condition_b, condition_c = _belief_conditions(space, thresholds, pair)
    conditions["b"] = condition_b
    rationalizable = None
    if mode == BAYESIAN:
        conditions["c"] = condition_c
    else:
        rationalizable = _rationalizable(space, thresholds, pair)
    return models.CooperationReport(
        mode=mode,
        pair=pair,
        verdict=all(c.holds for c in conditions.values()),
        conditions=conditions,
        rationalizable=rationalizable,
        bounds_consistent=thresholds.bounds_consistent,
    )


def check_pair(
    space: BeliefSpace,
    game: RepeatedGame,
    k1: Iterable[State],
    k2: Iterable[State],
    mode: str = BAYESIAN,
) -> models.CooperationReport:
    """Decide whether (K1, K2) is a pair of cooperation events.

    Conditions: (a) K_i inside Lambda_i; (b) P_i(K_j | w) >= f_i(w) on K_i;
    (c) P_i(K_j | w) <= g_i(w) off K_i, with f_i in place of g_i on 2x2 games.
    ICR mode checks (a) and (b) only.

    Raises:
        NotMeasurableError: If K_i is not a union of player i's cells.
    """
    return evaluate_pair(space, build_thresholds(space, game), k1, k2, mode)


def _candidate(space, thresholds, c1, c2) -> EventPair:
    regions = lambda_regions(space, thresholds)
    events = []
    for player, event in zip(PLAYERS, (c1, c2)):
        event = require_measurable(space, player, event)
        if not event <= regions[player - 1]:
            raise exceptions.NotContainedInLambdaError(player)
        events.append(event)
    evident = common_f_belief(space, thresholds.f_pair, events[0] & events[1])
    return tuple(f_belief(space, player, thresholds[player].f, evident) for player in PLAYERS)


def candidate_pair(
    space: BeliefSpace, game: RepeatedGame, c1: Iterable[State], c2: Iterable[State]
) -> EventPair:
    """(B_1(D^f(C1 & C2)), B_2(D^f(C1 & C2))) for C_i inside Lambda_i.

    The result satisfies conditions (a) and (b); condition (c) still has to
    be checked.

    Raises:
        NotContainedInLambdaError: If C_i is not inside Lambda_i.
        NotMeasurableError: If C_i is not measurable for player i.
    """
    return _candidate(space, build_thresholds(space, game), c1, c2)


def largest_pair(
    space: BeliefSpace, game: RepeatedGame, mode: str = BAYESIAN
) -> Tuple[EventPair, models.CooperationReport]:
    """candidate_pair with C_i = Lambda_i, followed by check_pair."""
    thresholds = build_thresholds(space, game)
    regions = lambda_regions(space, thresholds)
    pair = _candidate(space, thresholds, *regions)
    report = evaluate_pair(space, thresholds, pair[0], pair[1], mode)
    logger.get_logger().debug(
        "Largest pair has %d / %d states, verdict %s", len(pair[0]), len(pair[1]), report.verdict
    )
    return pair, report


def _unions(cells: Sequence[Event]) -> List[Event]:
    subsets = chain.from_iterable(combinations(cells, r) for r in range(len(cells) + 1))
    return [frozenset().union(*subset) for subset in subsets]


def pair_order(pair: EventPair):
    k1, k2 = pair
    return (-len(k1 & k2), -(len(k1) + len(k2)), sorted(k1), sorted(k2))


def enumerate_pairs(
    space: BeliefSpace,
    game: RepeatedGame,
    mode: str = BAYESIAN,
    budget: int = DEFAULT_BUDGET,
) -> List[EventPair]:
    """Every pair of cooperation events, largest overlap first.

    Candidates are unions of information cells inside Lambda_i; condition
    (a) rules out everything else in both modes.

    Raises:
        TooLargeError: If 2**(cells in Lambda_1 + cells in Lambda_2) exceeds
            ``budget``.
    """
    _check_mode(mode)
    log = logger.get_logger()
    thresholds = build_thresholds(space, game)
    regions = lambda_regions(space, thresholds)
    cells = [space.partition(player).cells_in(regions[player - 1]) for player in PLAYERS]
    required = 2 ** (len(cells[0]) + len(cells[1]))
    if required > budget:
        raise exceptions.TooLargeError(required, budget)
    log.info("Enumerating %d candidate pairs", required)

    found = []
    for k1 in _unions(cells[0]):
        for k2 in _unions(cells[1]):
            if evaluate_pair(space, thresholds, k1, k2, mode).verdict:
                found.append((k1, k2))
    found.sort(key=pair_order)
    log.debug("Found %d cooperation pairs", len(found))
    return found


def lambda0_profile(thresholds: ThresholdProfile) -> dict:
    return {player: thresholds[player].lambda0 for player in PLAYERS}
