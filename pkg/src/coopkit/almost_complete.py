"""Almost-complete information and robust grim-trigger profiles.

Two notions of "almost complete information about the discount factors" are
decided here: common (1 - eps)-belief of the true discount pair on a set of
prior mass at least 1 - delta, and the stronger requirement that at every
state each player (1 - eps)-believes some discount pair is common
(1 - eps)-belief. The module also builds the profiles that are approximate
equilibria under these conditions.
"""

from fractions import Fraction
from typing import Iterable, List, Tuple

from coopkit import exceptions
from coopkit import logger
from coopkit import models
from coopkit import payoff_oracle
from coopkit.belief_operators import common_f_belief, constant_pair, f_belief
from coopkit.belief_space import PLAYERS, BeliefSpace, Event
from coopkit.cooperation import lambda_regions
from coopkit.rationals import parse_rational
from coopkit.stage_game import (
    RepeatedGame,
    build_thresholds,
    payoff_bound,
    payoff_terms,
)

UNION = "union"
PER_STATE = "per_state"
READINGS = (UNION, PER_STATE)


def _probability(value, name: str) -> Fraction:
    value = parse_rational(value)
    if not 0 <= value <= 1:
        raise exceptions.UsageError("%s must lie in [0, 1], got %s" % (name, value))
    return value


def nature_event(space: BeliefSpace, nature: Iterable) -> Event:
    """States whose discount pair equals ``nature``.

    Raises:
        UnknownNatureStateError: If no state carries that pair.
    """
    target = tuple(parse_rational(v) for v in nature)
    event = space.where(lambda l1, l2: (l1, l2) == target)
    if not event:
        raise exceptions.UnknownNatureStateError(target)
    return event


def _common_regions(space: BeliefSpace, eps: Fraction) -> List[Tuple[Event, Event]]:
    # (E_s, D^{1-eps}(E_s)) for every discount pair s in the space.
    thresholds = constant_pair(space, 1 - eps)
    regions = []
    for nature in space.nature_states():
        event = nature_event(space, nature)
        regions.append((event, common_f_belief(space, thresholds, event)))
    return regions


def ms_almost_complete(space: BeliefSpace, eps, delta) -> models.RobustnessReport:
    """Common (1 - eps)-belief of the true discount pair has mass at least 1 - delta.

    Raises:
        NoPriorError: If the space has no common prior.
    """
    eps, delta = _probability(eps, "eps"), _probability(delta, "delta")
    if space.prior is None:
        raise exceptions.NoPriorError()
    region = frozenset().union(*(event & common for event, common in _common_regions(space, eps)))
    mass = space.mass(region)
    logger.get_logger().debug("Common belief region has %d states, mass %s", len(region), mass)
    return models.RobustnessReport(
        kind="ms",
        parameters={"eps": eps, "delta": delta},
        holds=mass >= 1 - delta,
        region=region,
        mass=mass,
    )


def strong_almost_complete(space: BeliefSpace, eps, reading: str = UNION) -> models.RobustnessReport:
    """Each player (1 - eps)-believes that some discount pair is common (1 - eps)-belief.

    With the union reading a player must believe the union of all the
    D^{1-eps}(E_s); with the per-state reading one D^{1-eps}(E_s) must be
    believed on its own.
    """
    eps = _probability(eps, "eps")
    if reading not in READINGS:
        raise exceptions.UsageError("Unknown reading %r (expected one of %s)" % (reading, ", ".join(READINGS)))
    thresholds = constant_pair(space, 1 - eps)
    commons = [common for _, common in _common_regions(space, eps)]
    union = frozenset().union(*commons)

    failures = []
    for player, f in zip(PLAYERS, thresholds):
        if reading == UNION:
            believed = f_belief(space, player, f, union)
        else:
            believed = frozenset().union(*(f_belief(space, player, f, c) for c in commons))
        failures.extend((state, player) for state in space.states if state not in believed)
    failures.sort()

    return models.RobustnessReport(
        kind="strong",
        parameters={"eps": eps},
        holds=not failures,
        region=union,
        mass=None if space.prior is None else space.mass(union),
        reading=reading,
        failures=failures,
    )


def payoff_scale(space: BeliefSpace, game: RepeatedGame) -> Fraction:
    """max |u| / (1 - lambda_i(w)) over players and states."""
    bound = payoff_bound(game.stage)
    return max(bound / (1 - space.discount(player, s)) for player in PLAYERS for s in space.states)


def _unravelled(space: BeliefSpace, lambda_event: Event, common: Event):
    return None if space.prior is None else space.mass(lambda_event - common)


def robust_profile(
    space: BeliefSpace, game: RepeatedGame, eps
) -> Tuple[Tuple[Event, Event], models.RobustnessReport]:
    """K_i = B_i^{1-eps}(D^{1-eps}(Lambda)), checked by the payoff oracle.

    The report carries the measured largest deviation gain next to the
    payoff scale; no bound between them is asserted.
    """
    eps = _probability(eps, "eps")
    thresholds = build_thresholds(space, game)
    regions = lambda_regions(space, thresholds)
    lambda_event = regions[0] & regions[1]
    constant = constant_pair(space, 1 - eps)
    common = common_f_belief(space, constant, lambda_event)
    pair = tuple(f_belief(space, player, f, common) for player, f in zip(PLAYERS, constant))

    oracle = payoff_oracle.deviation_report(space, game, pair[0], pair[1])
    logger.get_logger().info("Robust profile max gain: %s", oracle.max_gain)
    return pair, models.RobustnessReport(
        kind="profile",
        parameters={"eps": eps},
        holds=oracle.equilibrium,
        region=common,
        mass=None if space.prior is None else space.mass(common),
        pair=pair,
        max_gain=oracle.max_gain,
        payoff_scale=payoff_scale(space, game),
        unravelled_mass=_unravelled(space, lambda_event, common),
    )


def punishment_margin(game: RepeatedGame) -> Fraction:
    """M0 = 2 * max_i (u_i(sigma) - u_i(tau_i, sigma_j))."""
    return 2 * max(
        payoff_terms(game, player).u_sigma - payoff_terms(game, player).tau_vs_sigma
        for player in PLAYERS
    )


def f_epsilon_profile(
    space: BeliefSpace, game: RepeatedGame, eps, eps_prime
) -> Tuple[Tuple[Event, Event], models.RobustnessReport]:
    """Grim-trigger profile built from f with eps' subtracted from its numerators.

    Raises:
        NotTwoByTwoError: Unless both players have exactly two actions.
        EpsilonTooSmallError: If eps' < M0 * eps.
    """
    eps = _probability(eps, "eps")
    eps_prime = parse_rational(eps_prime)
    if not game.two_by_two:
        raise exceptions.NotTwoByTwoError(game.stage.shape)
    m0 = punishment_margin(game)
    if eps_prime < m0 * eps:
        raise exceptions.EpsilonTooSmallError(eps_prime, m0 * eps)

    thresholds = build_thresholds(space, game)
    regions = lambda_regions(space, thresholds)
    lambda_event = regions[0] & regions[1]
    shifted = build_thresholds(space, game, slack=eps_prime)
    common = common_f_belief(space, shifted.f_pair, lambda_event)
    pair = tuple(f_belief(space, player, shifted[player].f, common) for player in PLAYERS)

    oracle = payoff_oracle.deviation_report(space, game, pair[0], pair[1], tolerance=eps_prime)
    logger.get_logger().info("f-epsilon profile max gain: %s (tolerance %s)", oracle.max_gain, eps_prime)
    return pair, models.RobustnessReport(
        kind="f_epsilon",
        parameters={"eps": eps, "eps_prime": eps_prime},
        holds=oracle.equilibrium,
        region=common,
        mass=None if space.prior is None else space.mass(common),
        pair=pair,
        max_gain=oracle.max_gain,
        payoff_scale=payoff_scale(space, game),
        m0=m0,
        unravelled_mass=_unravelled(space, lambda_event, common),
    )
