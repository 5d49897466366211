"""Finite two-player belief spaces with incomplete information on discount factors.

A belief space holds the states of the world, the discount-factor pair at each
state, each player's belief kernel and an optional common prior. Events are
``frozenset`` objects of state identifiers; players are numbered 1 and 2.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from coopkit import exceptions
from coopkit import logger
from coopkit.rationals import parse_rational

State = str
Event = frozenset
Row = Mapping[State, Fraction]
Kernel = Mapping[State, Row]

PLAYERS = (1, 2)


def other(player: int) -> int:
    """Return the opponent of ``player``."""
    _check_player(player)
    return 3 - player


def _check_player(player: int) -> None:
    if player not in PLAYERS:
        raise ValueError("Player must be 1 or 2, got %r" % (player,))


@dataclass(frozen=True)
class Partition:
    """Disjoint cells covering the states; the information partition of a player.

    Attributes:
        cells: Cells in order of first appearance in the state list.
    """

    cells: Tuple[Event, ...]

    @cached_property
    def _index(self) -> Dict[State, Event]:
        return {state: cell for cell in self.cells for state in cell}

    def cell_of(self, state: State) -> Event:
        return self._index[state]

    def is_measurable(self, event: Iterable[State]) -> bool:
        """True iff ``event`` is a union of cells."""
        event = frozenset(event)
        return all(self._index[state] <= event for state in event)

    def cells_in(self, event: Iterable[State]) -> List[Event]:
        """Cells entirely contained in ``event``."""
        event = frozenset(event)
        return [cell for cell in self.cells if cell <= event]


@dataclass(frozen=True, eq=False)
class BeliefSpace:
    """A finite two-player belief space.

    Instances should be created through :func:`build`, which validates every
    invariant. Kernel rows are stored sparsely: absent entries are 0.

    Attributes:
        states: Ordered state identifiers.
        discounts: Per state, the pair of discount factors.
        kernels: Kernel of player 1 and kernel of player 2.
        prior: Optional common prior over the states.
    """

    states: Tuple[State, ...]
    discounts: Mapping[State, Tuple[Fraction, Fraction]]
    kernels: Tuple[Kernel, Kernel]
    prior: Optional[Mapping[State, Fraction]] = field(default=None)

    @cached_property
    def omega(self) -> Event:
        return frozenset(self.states)

    def discount(self, player: int, state: State) -> Fraction:
        _check_player(player)
        return self.discounts[state][player - 1]

    def row(self, player: int, state: State) -> Row:
        _check_player(player)
        return self.kernels[player - 1][state]

    def posterior(self, player: int, event: Iterable[State], state: State) -> Fraction:
        """Probability player ``player`` assigns to ``event`` at ``state``."""
        if not isinstance(event, (frozenset, set)):
            event = frozenset(event)
        return sum(
            (p for target, p in self.row(player, state).items() if target in event),
            Fraction(0),
        )

    def partition(self, player: int) -> Partition:
        _check_player(player)
        return self._partitions[player - 1]

    @cached_property
    def _partitions(self) -> Tuple[Partition, Partition]:
        return tuple(self._group_rows(player) for player in PLAYERS)

    def _group_rows(self, player: int) -> Partition:
        groups: Dict[frozenset, List[State]] = {}
        for state in self.states:
            key = frozenset(self.row(player, state).items())
            groups.setdefault(key, []).append(state)
        return Partition(cells=tuple(frozenset(members) for members in groups.values()))

    def mass(self, event: Iterable[State]) -> Fraction:
        """Prior probability of ``event``.

        Raises:
            NoPriorError: If the space has no common prior.
        """
        if self.prior is None:
            raise exceptions.NoPriorError()
        event = frozenset(event)
        return sum((self.prior.get(state, Fraction(0)) for state in event), Fraction(0))

    def nature_states(self) -> List[Tuple[Fraction, Fraction]]:
        """Distinct discount-factor pairs, in order of first appearance."""
        return list(dict.fromkeys(self.discounts[state] for state in self.states))

    def event(self, states: Iterable[State]) -> Event:
        """Turn an iterable of states into an event, checking membership."""
        result = frozenset(states)
        unknown = result - self.omega
        if unknown:
            raise exceptions.UnknownStateError(sorted(unknown)[0])
        return result

    def where(self, predicate) -> Event:
        """Event of the states whose discount pair satisfies ``predicate``."""
        return frozenset(s for s in self.states if predicate(*self.discounts[s]))


@dataclass(frozen=True)
class InvariantResult:
    """Outcome of checking one belief-space invariant."""

    name: str
    passed: bool
    error: Optional[exceptions.ValidationError] = None

    def to_dict(self) -> dict:
        result = {"invariant": self.name, "passed": self.passed}
        if self.error is not None:
            result["error"] = str(self.error)
        return result


def _check_rows(space: BeliefSpace) -> Optional[exceptions.ValidationError]:
    for player in PLAYERS:
        for state in space.states:
            row = space.row(player, state)
            if any(p < 0 for p in row.values()):
                return exceptions.RowNotStochasticError(player, state)
            total = sum(row.values(), Fraction(0))
            if total != 1:
                return exceptions.RowNotStochasticError(player, state, total)
    return None


def _check_own_belief(space: BeliefSpace) -> Optional[exceptions.ValidationError]:
    for player in PLAYERS:
        partition = space.partition(player)
        for state in space.states:
            if space.posterior(player, partition.cell_of(state), state) != 1:
                return exceptions.InconsistentBeliefError(player, state)
    return None


def _check_own_discount(space: BeliefSpace) -> Optional[exceptions.ValidationError]:
    for player in PLAYERS:
        for state in space.states:
            own = space.discount(player, state)
            same = (s for s in space.row(player, state) if space.discount(player, s) == own)
            if space.posterior(player, frozenset(same), state) != 1:
                return exceptions.UnknownOwnDiscountError(player, state)
    return None


def _check_prior(space: BeliefSpace) -> Optional[exceptions.ValidationError]:
    if any(p < 0 for p in space.prior.values()):
        return exceptions.BadPriorError("Prior has negative entries")
    total = sum(space.prior.values(), Fraction(0))
    if total != 1:
        return exceptions.BadPriorError("Prior sums to %s, expected 1" % total)
    return None


def _check_prior_consistency(space: BeliefSpace) -> Optional[exceptions.ValidationError]:
    for player in PLAYERS:
        for cell in space.partition(player).cells:
            weight = space.mass(cell)
            if weight == 0:
                continue
            for state in cell:
                row = space.row(player, state)
                expected = {
                    s: space.prior[s] / weight for s in cell if space.prior.get(s, 0) != 0
                }
                actual = {s: p for s, p in row.items() if p != 0}
                if actual != expected:
                    return exceptions.PriorInconsistencyError(player, state)
    return None


def check_invariants(
    space: BeliefSpace, check_prior_consistency: bool = False
) -> List[InvariantResult]:
    """Evaluate every belief-space invariant.

    Args:
        space: Space to check (possibly unvalidated).
        check_prior_consistency: Also check kernels against the prior.

    Returns:
        One result per invariant, in evaluation order.
    """
    checks = [("row_stochastic", _check_rows)]
    checks.append(("knowledge_of_own_belief", _check_own_belief))
    checks.append(("knowledge_of_own_discount", _check_own_discount))
    if space.prior is not None:
        checks.append(("prior", _check_prior))
        if check_prior_consistency:
            checks.append(("prior_consistency", _check_prior_consistency))

    results = []
    for name, check in checks:
        error = check(space)
        results.append(InvariantResult(name, error is None, error))
    return results


def _normalize_rows(
    states: Sequence[State], player: int, rows: Mapping[State, Mapping[State, object]]
) -> Dict[State, Dict[State, Fraction]]:
    known = set(states)
    kernel = {}
    for state in states:
        if state not in rows:
            raise exceptions.ParseError(
                "Kernel of player %s has no row for state %s" % (player, state),
                "MISSING_ROW",
            )
        row = {}
        for target, value in rows[state].items():
            if target not in known:
                raise exceptions.UnknownStateError(target)
            p = parse_rational(value)
            if p != 0:
                row[target] = p
        kernel[state] = row
    extra = set(rows) - known
    if extra:
        raise exceptions.UnknownStateError(sorted(extra)[0])
    return kernel


def build(
    states: Sequence[State],
    discounts: Mapping[State, Sequence[object]],
    kernels: Sequence[Mapping[State, Mapping[State, object]]],
    prior: Optional[Mapping[State, object]] = None,
    check_prior_consistency: bool = False,
    validate: bool = True,
) -> BeliefSpace:
    """Build and validate a belief space.

    Args:
        states: Ordered, distinct state identifiers.
        discounts: Per state, the pair (lambda_1, lambda_2), each in [0, 1).
        kernels: Kernel of player 1 and of player 2 (state -> state -> prob);
            omitted entries are 0.
        prior: Optional common prior.
        check_prior_consistency: Require kernels to be the conditioned prior.
        validate: Set to False to skip invariant checks (used by the validate
            command, which reports every invariant instead of the first).

    Returns:
        The belief space.

    Raises:
        ParseError: For structurally malformed input.
        ValidationError: The first failing invariant.
    """
    log = logger.get_logger()
    states = tuple(states)
    if not states:
        raise exceptions.ParseError("A belief space needs at least one state", "NO_STATES")
    if any(not isinstance(s, str) for s in states):
        raise exceptions.ParseError("State identifiers must be strings", "BAD_STATE_ID")
    if len(set(states)) != len(states):
        raise exceptions.ParseError("Duplicate state identifiers", "DUPLICATE_STATE")
    if len(kernels) != 2:
        raise exceptions.ParseError("Expected kernels for exactly two players", "BAD_KERNELS")

    pairs = {}
    for state in states:
        if state not in discounts:
            raise exceptions.ParseError("No discount factors for state %s" % state, "MISSING_DISCOUNT")
        pair = tuple(discounts[state])
        if len(pair) != 2:
            raise exceptions.ParseError(
                "Discount entry of state %s must be a pair" % state, "BAD_DISCOUNT_PAIR"
            )
        pair = (parse_rational(pair[0]), parse_rational(pair[1]))
        for player, value in zip(PLAYERS, pair):
            if not 0 <= value < 1:
                raise exceptions.BadDiscountError(player, state, value)
        pairs[state] = pair

    normalized = tuple(_normalize_rows(states, player, rows) for player, rows in zip(PLAYERS, kernels))

    parsed_prior = None
    if prior is not None:
        unknown = set(prior) - set(states)
        if unknown:
            raise exceptions.UnknownStateError(sorted(unknown)[0])
        parsed_prior = {s: parse_rational(prior.get(s, 0)) for s in states}

    space = BeliefSpace(states=states, discounts=pairs, kernels=normalized, prior=parsed_prior)
    if validate:
        for result in check_invariants(space, check_prior_consistency):
            if not result.passed:
                log.debug("Invariant %s failed: %s", result.name, result.error)
                raise result.error
    log.debug("Built belief space with %d states", len(states))
    return space


def information_partition(space: BeliefSpace, player: int) -> Partition:
    """Group states with identical belief rows of ``player``."""
    return space.partition(player)


def is_measurable(space: BeliefSpace, player: int, event: Iterable[State]) -> bool:
    """True iff ``event`` is a union of cells of the player's partition."""
    return space.partition(player).is_measurable(space.event(event))


def posterior(space: BeliefSpace, player: int, event: Iterable[State], state: State) -> Fraction:
    """P_player(event | state), exact."""
    return space.posterior(player, event, state)


def prior_consistency(space: BeliefSpace) -> bool:
    """True iff the space has a prior and every kernel is that prior conditioned on types."""
    if space.prior is None:
        raise exceptions.NoPriorError()
    return _check_prior(space) is None and _check_prior_consistency(space) is None


def from_common_prior(
    states: Sequence[State],
    discounts: Mapping[State, Sequence[object]],
    prior: Mapping[State, object],
    types: Sequence[Mapping[State, object]],
) -> BeliefSpace:
    """Build a space whose kernels are a common prior conditioned on player types.

    Args:
        states: Ordered state identifiers.
        discounts: Per state, the discount pair.
        prior: Common prior; every type must have positive mass.
        types: Per player, a labelling of states by type; states sharing a
            label are indistinguishable to that player.
    """
    weights = {s: parse_rational(prior.get(s, 0)) for s in states}
    kernels = []
    for labels in types:
        groups: Dict[object, List[State]] = {}
        for state in states:
            groups.setdefault(labels[state], []).append(state)
        kernel = {}
        for members in groups.values():
            total = sum((weights[s] for s in members), Fraction(0))
            if total == 0:
                raise exceptions.BadPriorError("A type has zero prior mass")
            row = {s: weights[s] / total for s in members if weights[s] != 0}
            for state in members:
                kernel[state] = row
        kernels.append(kernel)
    return build(states, discounts, kernels, prior=weights)
