"""f-belief operators and their fixed points.

For a threshold function f_i, the f-belief operator of player i maps an event A
to the states where player i assigns A probability at least f_i. Common
f-belief and the iterated pair belief are computed by monotone iteration on
the finite lattice of events; every intermediate set is kept in a trace.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Tuple

from coopkit import exceptions
from coopkit import logger
from coopkit.belief_space import PLAYERS, BeliefSpace, Event, State
from coopkit.rationals import Extended, parse_extended


@dataclass(frozen=True)
class ThresholdFunction:
    """Per-state threshold of one player (an extended rational per state).

    Attributes:
        player: Player whose beliefs are compared against the values.
        values: State -> Fraction, ``POS_INF`` or ``NEG_INF``.
    """

    player: int
    values: Mapping[State, Extended]

    def __call__(self, state: State) -> Extended:
        return self.values[state]


ThresholdPair = Tuple[ThresholdFunction, ThresholdFunction]


def constant_threshold(space: BeliefSpace, player: int, value) -> ThresholdFunction:
    """Threshold equal to ``value`` everywhere (always measurable)."""
    value = parse_extended(value)
    return ThresholdFunction(player, {state: value for state in space.states})


def constant_pair(space: BeliefSpace, value) -> ThresholdPair:
    return (constant_threshold(space, 1, value), constant_threshold(space, 2, value))


def threshold_from_discount(
    space: BeliefSpace, player: int, fn: Callable[[Fraction], Extended]
) -> ThresholdFunction:
    """Threshold ``fn(lambda_player(state))``, evaluated once per distinct discount."""
    cache = {}
    values = {}
    for state in space.states:
        own = space.discount(player, state)
        if own not in cache:
            cache[own] = fn(own)
        values[state] = cache[own]
    return ThresholdFunction(player, values)


def require_measurable_threshold(space: BeliefSpace, f: ThresholdFunction) -> None:
    """Raise NotMeasurableThresholdError unless f is constant on every cell."""
    for cell in space.partition(f.player).cells:
        first = None
        for state in cell:
            if first is None:
                first = f(state)
            elif f(state) != first:
                raise exceptions.NotMeasurableThresholdError(f.player, state)


def require_measurable(space: BeliefSpace, player: int, event: Iterable[State]) -> Event:
    event = space.event(event)
    if not space.partition(player).is_measurable(event):
        raise exceptions.NotMeasurableError(player)
    return event


def _belief(space: BeliefSpace, f: ThresholdFunction, event: Event) -> Event:
    # Rows are constant on cells, so one posterior per cell suffices.
    result = set()
    for cell in space.partition(f.player).cells:
        representative = next(iter(cell))
        if space.posterior(f.player, event, representative) >= f(representative):
            result.update(cell)
    return frozenset(result)


def f_belief(space: BeliefSpace, player: int, f: ThresholdFunction, event: Iterable[State]) -> Event:
    """B_i^f(A): states where player i assigns A probability at least f_i.

    Raises:
        NotMeasurableThresholdError: If f is not constant on player cells.
    """
    if f.player != player:
        raise ValueError("Threshold belongs to player %s, not %s" % (f.player, player))
    require_measurable_threshold(space, f)
    return _belief(space, f, space.event(event))


@dataclass(frozen=True)
class FixedPointTrace:
    """Sequence of distinct sets produced by a fixed-point iteration.

    Attributes:
        sets: First iterate, then each strictly smaller iterate; the last
            entry is the fixed point.
    """

    sets: tuple

    @property
    def result(self):
        return self.sets[-1]

    @property
    def rounds(self) -> int:
        """Number of strict shrink steps before stabilization."""
        return len(self.sets) - 1


def _check_pair(space: BeliefSpace, f_pair: ThresholdPair) -> None:
    for player, f in zip(PLAYERS, f_pair):
        if f.player != player:
            raise ValueError("Threshold pair must be ordered (player 1, player 2)")
        require_measurable_threshold(space, f)


def _bounded(trace: list, limit: int, what: str) -> None:
    if len(trace) - 1 > limit:
        raise exceptions.FixedPointError(
            "%s did not stabilize within %d rounds" % (what, limit)
        )


def common_f_belief_trace(space: BeliefSpace, f_pair: ThresholdPair, event: Iterable[State]) -> FixedPointTrace:
    """Iterate D^{n+1} = B_1(D^n) & B_2(D^n) from D^0 = C until it stabilizes.

    Raises:
        NotMeasurableThresholdError: If a threshold is not measurable.
        FixedPointError: If the sequence grows or exceeds |states| rounds.
    """
    log = logger.get_logger()
    _check_pair(space, f_pair)
    event = space.event(event)
    f1, f2 = f_pair

    current = _belief(space, f1, event) & _belief(space, f2, event)
    trace = [current]
    log.debug("common f-belief round 1: %d states %s", len(current), current)
    while True:
        following = _belief(space, f1, current) & _belief(space, f2, current)
        if following == current:
            break
        if not following <= current:
            raise exceptions.FixedPointError("common f-belief iteration is not decreasing")
        trace.append(following)
        current = following
        log.debug("common f-belief round %d: %d states %s", len(trace), len(current), current)
        _bounded(trace, len(space.states), "common f-belief")
    return FixedPointTrace(tuple(trace))


def common_f_belief(space: BeliefSpace, f_pair: ThresholdPair, event: Iterable[State]) -> Event:
    """D^f(C): the states where C is common f-belief."""
    return common_f_belief_trace(space, f_pair, event).result


def iterated_pair_trace(
    space: BeliefSpace, f_pair: ThresholdPair, c1: Iterable[State], c2: Iterable[State]
) -> FixedPointTrace:
    """Iterate D_i^{n} = B_i(D_j^{n-1}) & D_i^{n-1} from D_i^1 = B_i(C_j) & C_i.

    Both players are updated from the previous round's pair. Each entry of
    the trace is a pair ``(D_1^n, D_2^n)``.

    Raises:
        NotMeasurableError: If C_i is not measurable for player i.
    """
    log = logger.get_logger()
    _check_pair(space, f_pair)
    c1 = require_measurable(space, 1, c1)
    c2 = require_measurable(space, 2, c2)
    f1, f2 = f_pair

    # Every strict round drops at least one cell of one player.
    limit = len(space.partition(1).cells) + len(space.partition(2).cells)
    current = (_belief(space, f1, c2) & c1, _belief(space, f2, c1) & c2)
    trace = [current]
    while True:
        d1, d2 = current
        following = (_belief(space, f1, d2) & d1, _belief(space, f2, d1) & d2)
        if following == current:
            break
        trace.append(following)
        current = following
        log.debug(
            "iterated pair belief round %d: %d / %d states",
            len(trace),
            len(following[0]),
            len(following[1]),
        )
        _bounded(trace, limit, "iterated pair belief")
    return FixedPointTrace(tuple(trace))


def iterated_pair_belief(
    space: BeliefSpace, f_pair: ThresholdPair, c1: Iterable[State], c2: Iterable[State]
) -> Tuple[Event, Event]:
    """(D_1^f(C_1, C_2), D_2^f(C_2, C_1))."""
    return iterated_pair_trace(space, f_pair, c1, c2).result


def evident_witness(
    space: BeliefSpace, f_pair: ThresholdPair, event: Iterable[State], state: State
) -> Optional[Event]:
    """Return D^f(C) when ``state`` lies in it, after checking it is evident.

    The returned event D contains ``state`` and satisfies D <= B_i(C) and
    D <= B_i(D) for both players.
    """
    event = space.event(event)
    evident = common_f_belief(space, f_pair, event)
    if state not in evident:
        return None
    for f in f_pair:
        if not evident <= _belief(space, f, event):
            raise exceptions.FixedPointError("witness is not contained in B_%d(C)" % f.player)
        if not evident <= _belief(space, f, evident):
            raise exceptions.FixedPointError("witness is not evident for player %d" % f.player)
    return evident


def common_p_belief(space: BeliefSpace, p, event: Iterable[State]) -> Event:
    """Common p-belief as the largest event E that is evident and inside B^p(C).

    Computed as the greatest fixed point of E -> B_1(C) & B_2(C) & B_1(E) & B_2(E)
    starting from all states, with the belief operators evaluated state by
    state.
    """
    p = parse_extended(p)
    event = space.event(event)

    def believes(target: Event) -> Event:
        return frozenset(
            s
            for s in space.states
            if all(space.posterior(player, target, s) >= p for player in PLAYERS)
        )

    inside = believes(event)
    current = space.omega
    while True:
        following = inside & believes(current) & current
        if following == current:
            return current
        current = following
