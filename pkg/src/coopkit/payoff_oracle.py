"""Brute-force payoff oracle for grim-trigger profiles.

Independent of the threshold formulas: expected discounted payoffs are
written out as geometric sums over the possible opponent automata, and the
best deviation is searched over every stage-1 action followed by an optimal
continuation. After stage 1 the opponent is known to be either a
grim-trigger player (triggered or not) or a sigma player forever, so the
optimal continuation has a closed form in each case.
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, List, Tuple

from coopkit import logger
from coopkit import models
from coopkit.belief_operators import require_measurable
from coopkit.belief_space import PLAYERS, BeliefSpace, Event, State, other
from coopkit.rationals import parse_rational
from coopkit.stage_game import RepeatedGame, expected_payoff, payoff_bound

EventPair = Tuple[Event, Event]


@dataclass(frozen=True)
class _Context:
    """Stage payoffs of one player, discount and opponent cooperation probability."""

    game: RepeatedGame
    player: int
    discount: Fraction
    cooperating: Fraction

    def u(self, own, opponent) -> Fraction:
        return expected_payoff(self.game.stage, self.player, own, opponent)

    @property
    def own_tau(self) -> str:
        return self.game.tau(self.player)

    @property
    def own_sigma(self):
        return self.game.sigma(self.player)

    @property
    def opp_tau(self) -> str:
        return self.game.tau(other(self.player))

    @property
    def opp_sigma(self):
        return self.game.sigma(other(self.player))

    def forever(self, stage_payoff: Fraction) -> Fraction:
        return stage_payoff / (1 - self.discount)

    def against_punisher(self) -> Fraction:
        """Value of best-responding to sigma_j at every stage."""
        return self.forever(
            max(self.u(a, self.opp_sigma) for a in self.game.stage.actions_of(self.player))
        )

    def against_cooperator(self) -> Tuple[Fraction, str]:
        """Value and label of the best play against an untriggered grim-trigger opponent."""
        best, label = self.forever(self.u(self.own_tau, self.opp_tau)), "cooperate"
        for action in self.game.stage.actions_of(self.player):
            if action == self.own_tau:
                continue
            value = self.u(action, self.opp_tau) + self.discount * self.against_punisher()
            if value > best:
                best, label = value, "defect:%s" % action
        return best, label


def _context(space, game, pair, player, state) -> _Context:
    return _Context(
        game=game,
        player=player,
        discount=space.discount(player, state),
        cooperating=space.posterior(player, pair[other(player) - 1], state),
    )


def _pair(space: BeliefSpace, k1: Iterable[State], k2: Iterable[State]) -> EventPair:
    return (require_measurable(space, 1, k1), require_measurable(space, 2, k2))


def _conforming(ctx: _Context, cooperates: bool) -> Fraction:
    p, lam = ctx.cooperating, ctx.discount
    punishment = ctx.u(ctx.own_sigma, ctx.opp_sigma)
    if cooperates:
        both = ctx.forever(ctx.u(ctx.own_tau, ctx.opp_tau))
        exploited = ctx.u(ctx.own_tau, ctx.opp_sigma) + lam * ctx.forever(punishment)
        return p * both + (1 - p) * exploited
    triggering = ctx.u(ctx.own_sigma, ctx.opp_tau) + lam * ctx.forever(punishment)
    return p * triggering + (1 - p) * ctx.forever(punishment)


def conforming_payoff(
    space: BeliefSpace,
    game: RepeatedGame,
    k1: Iterable[State],
    k2: Iterable[State],
    player: int,
    state: State,
) -> Fraction:
    """Expected discounted payoff of following the grim-trigger profile.

    With probability P_i(K_j | state) the opponent is a grim-trigger
    cooperator, otherwise it plays sigma_j forever.

    Raises:
        NotMeasurableError: If K_i is not measurable for player i.
    """
    pair = _pair(space, k1, k2)
    return _conforming(_context(space, game, pair, player, state), state in pair[player - 1])


def _action_value(ctx: _Context, action: str) -> Tuple[Fraction, str]:
    p, lam = ctx.cooperating, ctx.discount
    if action == ctx.own_tau:
        continuation, label = ctx.against_cooperator()
    else:
        continuation, label = ctx.against_punisher(), "punish"
    value = p * (ctx.u(action, ctx.opp_tau) + lam * continuation) + (1 - p) * (
        ctx.u(action, ctx.opp_sigma) + lam * ctx.against_punisher()
    )
    return value, label


def action_deviation_value(
    space: BeliefSpace,
    game: RepeatedGame,
    k1: Iterable[State],
    k2: Iterable[State],
    player: int,
    state: State,
    action: str,
) -> Tuple[Fraction, str]:
    """Value of playing ``action`` at stage 1 and continuing optimally.

    Returns:
        The expected payoff and the continuation label against a still
        cooperating opponent ("cooperate", "defect:<b>" or "punish").
    """
    pair = _pair(space, k1, k2)
    return _action_value(_context(space, game, pair, player, state), action)


def _best(ctx: _Context, cooperates: bool, state: State) -> models.DeviationEntry:
    conforming = _conforming(ctx, cooperates)
    best_value, best_action, best_label = None, None, None
    for action in ctx.game.stage.actions_of(ctx.player):
        value, label = _action_value(ctx, action)
        if best_value is None or value > best_value:
            best_value, best_action, best_label = value, action, label
    return models.DeviationEntry(
        player=ctx.player,
        state=state,
        conforming=conforming,
        best=best_value,
        first_action=best_action,
        continuation=best_label,
        gain=best_value - conforming,
    )


def best_deviation(
    space: BeliefSpace,
    game: RepeatedGame,
    k1: Iterable[State],
    k2: Iterable[State],
    player: int,
    state: State,
) -> models.DeviationEntry:
    """Best stage-1 deviation of ``player`` at ``state`` and its gain."""
    pair = _pair(space, k1, k2)
    ctx = _context(space, game, pair, player, state)
    return _best(ctx, state in pair[player - 1], state)


def deviation_report(
    space: BeliefSpace,
    game: RepeatedGame,
    k1: Iterable[State],
    k2: Iterable[State],
    tolerance=Fraction(0),
) -> models.DeviationReport:
    """Best deviation of each player at each state.

    Payoffs depend on the state only through the player's cell, so one
    evaluation per cell is made and copied to its states.
    """
    log = logger.get_logger()
    pair = _pair(space, k1, k2)
    entries: List[models.DeviationEntry] = []
    for player in PLAYERS:
        for cell in space.partition(player).cells:
            first = min(cell)
            template = _best(_context(space, game, pair, player, first), first in pair[player - 1], first)
            entries.extend(replace(template, state=state) for state in cell)
    entries.sort(key=lambda e: (e.player, e.state))
    max_gain = max((e.gain for e in entries), default=Fraction(0))
    log.debug("Oracle max gain %s over %d entries", max_gain, len(entries))
    return models.DeviationReport(
        pair=pair, entries=entries, max_gain=max_gain, tolerance=parse_rational(tolerance)
    )


def is_bayes_equilibrium(
    space: BeliefSpace, game: RepeatedGame, k1: Iterable[State], k2: Iterable[State]
) -> Tuple[bool, Fraction]:
    """True iff no player gains by deviating at any state; also the max gain."""
    report = deviation_report(space, game, k1, k2)
    return report.equilibrium, report.max_gain


def is_epsilon_equilibrium(
    space: BeliefSpace, game: RepeatedGame, k1: Iterable[State], k2: Iterable[State], eps_prime
) -> Tuple[bool, Fraction]:
    """True iff the largest deviation gain is at most ``eps_prime``."""
    report = deviation_report(space, game, k1, k2, tolerance=eps_prime)
    return report.equilibrium, report.max_gain


def delayed_deviation_gain(
    space: BeliefSpace,
    game: RepeatedGame,
    k1: Iterable[State],
    k2: Iterable[State],
    player: int,
    state: State,
    action: str,
    stage: int,
) -> Fraction:
    """Gain of conforming until ``stage`` and then playing ``action`` once.

    The deviation only differs from conforming play when the opponent is
    still cooperating at ``stage``, which requires state in K_i; elsewhere
    the gain is 0.
    """
    if stage < 2:
        raise ValueError("Delayed deviations start at stage 2, got %d" % stage)
    pair = _pair(space, k1, k2)
    ctx = _context(space, game, pair, player, state)
    if state not in pair[player - 1] or action == ctx.own_tau:
        return Fraction(0)
    lam = ctx.discount
    deviation = ctx.u(action, ctx.opp_tau) + lam * ctx.against_punisher()
    staying = ctx.forever(ctx.u(ctx.own_tau, ctx.opp_tau))
    return ctx.cooperating * lam ** (stage - 1) * (deviation - staying)


def _stream(ctx: _Context, cooperates: bool, opponent_cooperates: bool, t: int) -> Fraction:
    if cooperates and opponent_cooperates:
        return ctx.u(ctx.own_tau, ctx.opp_tau)
    if t == 0 and cooperates:
        return ctx.u(ctx.own_tau, ctx.opp_sigma)
    if t == 0 and opponent_cooperates:
        return ctx.u(ctx.own_sigma, ctx.opp_tau)
    return ctx.u(ctx.own_sigma, ctx.opp_sigma)


def truncated_payoff(
    space: BeliefSpace,
    game: RepeatedGame,
    k1: Iterable[State],
    k2: Iterable[State],
    player: int,
    state: State,
    horizon: int,
) -> Tuple[Fraction, Fraction]:
    """Conforming payoff summed stage by stage over ``horizon`` stages.

    A debugging aid only; verdicts never use it.

    Returns:
        The truncated sum and the tail bound max|u| * lambda**T / (1 - lambda).
    """
    pair = _pair(space, k1, k2)
    ctx = _context(space, game, pair, player, state)
    cooperates = state in pair[player - 1]
    total = Fraction(0)
    for t in range(horizon):
        weight = ctx.discount ** t
        total += weight * (
            ctx.cooperating * _stream(ctx, cooperates, True, t)
            + (1 - ctx.cooperating) * _stream(ctx, cooperates, False, t)
        )
    tail = payoff_bound(game.stage) * ctx.discount ** horizon / (1 - ctx.discount)
    return total, tail


@dataclass(frozen=True)
class SignalingComparison:
    """Payoff of the signalling profile against a first-stage deviation."""

    state: str
    discount: Fraction
    conforming: Fraction
    deviation: Fraction

    @property
    def deters(self) -> bool:
        return self.conforming >= self.deviation


def signaling_fixture(
    game: RepeatedGame,
    high=Fraction(1, 2),
    low=Fraction(1, 4),
    player: int = 2,
) -> List[SignalingComparison]:
    """Payoff comparisons for a player who signals a high discount factor.

    The high type plays tau at stage 1 while the opponent plays sigma, then
    both cooperate by grim trigger; the low type plays sigma forever. Each
    type's conforming payoff is compared with mimicking the other type.
    """
    high, low = parse_rational(high), parse_rational(low)
    comparisons = []
    for label, discount in (("high", high), ("low", low)):
        ctx = _Context(game=game, player=player, discount=discount, cooperating=Fraction(1))
        punishment = ctx.forever(ctx.u(ctx.own_sigma, ctx.opp_sigma))
        signal = ctx.u(ctx.own_tau, ctx.opp_sigma)
        if label == "high":
            conforming = signal + discount * ctx.forever(ctx.u(ctx.own_tau, ctx.opp_tau))
            deviation = punishment
        else:
            conforming = punishment
            deviation = signal + discount * ctx.against_cooperator()[0]
        comparisons.append(SignalingComparison(label, discount, conforming, deviation))
    return comparisons
