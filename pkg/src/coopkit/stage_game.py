"""Stage games, the designated profiles (sigma, tau) and cooperation thresholds.

sigma is a one-shot Nash equilibrium used as punishment, tau a pure profile
the players try to sustain. For each player the module computes the discount
threshold lambda0, the lower belief bound f and the upper belief bound
g = min(g1, g2, g3) that characterize cooperation events.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from coopkit import exceptions
from coopkit import logger
from coopkit.belief_operators import ThresholdFunction, threshold_from_discount
from coopkit.belief_space import PLAYERS, BeliefSpace, State, other
from coopkit.rationals import POS_INF, Extended, parse_rational

MixedAction = Mapping[str, Fraction]
Play = Union[str, MixedAction]


@dataclass(frozen=True)
class StageGame:
    """Finite two-player bimatrix game.

    Attributes:
        actions: Action labels of player 1 and of player 2.
        payoffs: Per player, payoff of each action pair ``(a1, a2)``.
    """

    actions: Tuple[Tuple[str, ...], Tuple[str, ...]]
    payoffs: Tuple[Mapping[Tuple[str, str], Fraction], Mapping[Tuple[str, str], Fraction]]

    def actions_of(self, player: int) -> Tuple[str, ...]:
        return self.actions[player - 1]

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.actions[0]), len(self.actions[1]))

    def payoff(self, player: int, own: str, opponent: str) -> Fraction:
        """u_player when the player plays ``own`` and the opponent ``opponent``."""
        profile = (own, opponent) if player == 1 else (opponent, own)
        return self.payoffs[player - 1][profile]


@dataclass(frozen=True)
class ProfilePair:
    """Punishment equilibrium sigma (mixed) and cooperation target tau (pure)."""

    sigma: Tuple[MixedAction, MixedAction]
    tau: Tuple[str, str]


@dataclass(frozen=True)
class RepeatedGame:
    """A validated stage game together with its (sigma, tau) profiles."""

    stage: StageGame
    profile: ProfilePair
    name: str = "custom"

    @property
    def two_by_two(self) -> bool:
        return self.stage.shape == (2, 2)

    def sigma(self, player: int) -> MixedAction:
        return self.profile.sigma[player - 1]

    def tau(self, player: int) -> str:
        return self.profile.tau[player - 1]


def _as_mixed(play: Play) -> MixedAction:
    if isinstance(play, str):
        return {play: Fraction(1)}
    return play


def pure_action(play: Play) -> Optional[str]:
    """The action a degenerate mixed action puts all weight on, else None."""
    support = [a for a, p in _as_mixed(play).items() if p != 0]
    return support[0] if len(support) == 1 else None


def expected_payoff(stage: StageGame, player: int, own: Play, opponent: Play) -> Fraction:
    """Multilinear extension of u_player to mixed actions."""
    own, opponent = _as_mixed(own), _as_mixed(opponent)
    return sum(
        (
            p * q * stage.payoff(player, a, b)
            for a, p in own.items()
            if p != 0
            for b, q in opponent.items()
            if q != 0
        ),
        Fraction(0),
    )


def payoff_bound(stage: StageGame) -> Fraction:
    """max |u_i(a)| over players and action pairs."""
    return max(abs(u) for table in stage.payoffs for u in table.values())


def best_responses(stage: StageGame, player: int, opponent: Play) -> Tuple[str, ...]:
    values = {a: expected_payoff(stage, player, a, opponent) for a in stage.actions_of(player)}
    top = max(values.values())
    return tuple(a for a, v in values.items() if v == top)


def verify_nash(stage: StageGame, sigma: Sequence[MixedAction]) -> bool:
    """True iff sigma is a Nash equilibrium of the stage game (exact)."""
    for player in PLAYERS:
        own, opponent = sigma[player - 1], sigma[other(player) - 1]
        value = expected_payoff(stage, player, own, opponent)
        for action in stage.actions_of(player):
            deviation = expected_payoff(stage, player, action, opponent)
            if deviation > value:
                return False
            if own.get(action, 0) != 0 and deviation != value:
                return False
    return True


def validate_tau(stage: StageGame, sigma: Sequence[MixedAction], tau: Sequence[str]) -> bool:
    """True iff u_i(tau) > u_i(sigma) and tau_i is no best response to sigma_j, for both i."""
    for player in PLAYERS:
        own_tau, other_tau = tau[player - 1], tau[other(player) - 1]
        opponent_sigma = sigma[other(player) - 1]
        u_tau = stage.payoff(player, own_tau, other_tau)
        u_sigma = expected_payoff(stage, player, sigma[player - 1], opponent_sigma)
        if u_tau <= u_sigma:
            return False
        if own_tau in best_responses(stage, player, opponent_sigma):
            return False
    return True


def make_stage_game(
    actions: Sequence[Sequence[str]],
    payoffs: Sequence[Mapping[Tuple[str, str], object]],
) -> StageGame:
    """Build a stage game, checking the payoff tables are complete.

    Raises:
        GameValidationError: On duplicate actions or missing payoffs.
    """
    if len(actions) != 2 or len(payoffs) != 2:
        raise exceptions.GameValidationError("A stage game has exactly two players")
    actions = tuple(tuple(a) for a in actions)
    for labels in actions:
        if not labels or len(set(labels)) != len(labels):
            raise exceptions.GameValidationError("Action lists must be non-empty and distinct")
    tables = []
    for player, raw in zip(PLAYERS, payoffs):
        table = {}
        for a1 in actions[0]:
            for a2 in actions[1]:
                if (a1, a2) not in raw:
                    raise exceptions.GameValidationError(
                        "Missing payoff of player %d at (%s, %s)" % (player, a1, a2)
                    )
                table[(a1, a2)] = parse_rational(raw[(a1, a2)])
        tables.append(table)
    return StageGame(actions=actions, payoffs=tuple(tables))


def build_game(
    stage: StageGame,
    sigma: Sequence[Mapping[str, object]],
    tau: Sequence[str],
    name: str = "custom",
) -> RepeatedGame:
    """Validate (sigma, tau) against the stage game.

    Besides the equilibrium and improvement conditions, tau_j must lie outside
    the support of sigma_j so that cooperation and punishment are discernible.

    Raises:
        GameValidationError: If any condition fails.
    """
    if len(sigma) != 2 or len(tau) != 2:
        raise exceptions.GameValidationError("sigma and tau need one entry per player")
    mixed = []
    for player in PLAYERS:
        raw = sigma[player - 1]
        entry = {}
        for action, weight in raw.items():
            if action not in stage.actions_of(player):
                raise exceptions.GameValidationError(
                    "sigma of player %d uses unknown action %s" % (player, action)
                )
            entry[action] = parse_rational(weight)
        if any(p < 0 for p in entry.values()) or sum(entry.values(), Fraction(0)) != 1:
            raise exceptions.GameValidationError("sigma of player %d is not a probability vector" % player)
        mixed.append({a: p for a, p in entry.items() if p != 0})
        if tau[player - 1] not in stage.actions_of(player):
            raise exceptions.GameValidationError(
                "tau of player %d is not an action: %s" % (player, tau[player - 1])
            )
    mixed = tuple(mixed)
    tau = tuple(tau)
    if not verify_nash(stage, mixed):
        raise exceptions.GameValidationError("sigma is not a Nash equilibrium of the stage game")
    if not validate_tau(stage, mixed, tau):
        raise exceptions.GameValidationError(
            "tau must improve on sigma and must not be a best response to sigma"
        )
    for player in PLAYERS:
        if mixed[player - 1].get(tau[player - 1], 0) != 0:
            raise exceptions.GameValidationError(
                "tau of player %d lies in the support of sigma" % player
            )
    return RepeatedGame(stage=stage, profile=ProfilePair(sigma=mixed, tau=tau), name=name)


@dataclass(frozen=True)
class PayoffTerms:
    """Stage payoffs of one player that enter the threshold formulas."""

    player: int
    actions: Tuple[str, ...]
    tau_own: str
    sigma_own: MixedAction
    u_tau: Fraction
    u_sigma: Fraction
    against_tau: Mapping[str, Fraction]
    against_sigma: Mapping[str, Fraction]
    tau_vs_sigma: Fraction
    sigma_vs_tau: Fraction


def payoff_terms(game: RepeatedGame, player: int) -> PayoffTerms:
    stage = game.stage
    opponent = other(player)
    tau_j, sigma_j = game.tau(opponent), game.sigma(opponent)
    return PayoffTerms(
        player=player,
        actions=stage.actions_of(player),
        tau_own=game.tau(player),
        sigma_own=game.sigma(player),
        u_tau=stage.payoff(player, game.tau(player), tau_j),
        u_sigma=expected_payoff(stage, player, game.sigma(player), sigma_j),
        against_tau={a: stage.payoff(player, a, tau_j) for a in stage.actions_of(player)},
        against_sigma={a: expected_payoff(stage, player, a, sigma_j) for a in stage.actions_of(player)},
        tau_vs_sigma=expected_payoff(stage, player, game.tau(player), sigma_j),
        sigma_vs_tau=expected_payoff(stage, player, game.sigma(player), tau_j),
    )


def _cooperation_margin(terms: PayoffTerms, stage_one: Fraction, discount: Fraction) -> Fraction:
    # Value of tau forever minus (stage_one now, sigma forever after).
    return (
        terms.u_tau / (1 - discount)
        - stage_one
        - terms.u_sigma * discount / (1 - discount)
    )


def cooperation_threshold(game: RepeatedGame, player: int) -> Fraction:
    """lambda0_i: least discount factor at which no one-shot deviation from tau pays.

    Each deviation a gives the linear condition c + lambda * d >= 0 with
    c = u(tau) - u(a, tau_j) and d = u(a, tau_j) - u(sigma).

    Raises:
        NoThresholdError: If no discount factor below 1 works.
    """
    terms = payoff_terms(game, player)
    threshold = Fraction(0)
    for action in terms.actions:
        if action == terms.tau_own:
            continue
        c = terms.u_tau - terms.against_tau[action]
        d = terms.against_tau[action] - terms.u_sigma
        if d > 0:
            threshold = max(threshold, -c / d)
        elif c < 0:
            raise exceptions.NoThresholdError(player)
    if threshold >= 1:
        raise exceptions.NoThresholdError(player)
    return threshold


@dataclass(frozen=True)
class BoundValue:
    """A threshold value and the actions attaining it."""

    value: Extended
    witnesses: Tuple[str, ...]


def f_detail(game: RepeatedGame, player: int, discount, slack=Fraction(0)) -> BoundValue:
    """f_i at the given discount factor, with its maximizing deviations.

    The max runs over F_i, the actions beating tau_i against sigma_j; an empty
    F_i gives 0. A non-positive denominator gives +inf. ``slack`` is subtracted
    from every numerator.
    """
    terms = payoff_terms(game, player)
    discount = parse_rational(discount)
    slack = parse_rational(slack)
    best: Extended = Fraction(0)
    witnesses: Tuple[str, ...] = ()
    for action in terms.actions:
        gain = terms.against_sigma[action] - terms.tau_vs_sigma
        if gain <= 0:
            continue
        denominator = _cooperation_margin(terms, terms.against_tau[action], discount) + gain
        value = POS_INF if denominator <= 0 else (gain - slack) / denominator
        if not witnesses or value > best:
            best, witnesses = value, (action,)
        elif value == best:
            witnesses += (action,)
    return BoundValue(best, witnesses)


def f_function(game: RepeatedGame, player: int, discount, slack=Fraction(0)) -> Extended:
    return f_detail(game, player, discount, slack).value


@dataclass(frozen=True)
class GValue:
    """Components of the upper bound g_i = min(g1, g2, g3) at one discount factor."""

    g1: BoundValue
    g2: Extended
    g3: BoundValue

    @property
    def value(self) -> Extended:
        return min(self.g1.value, self.g2, self.g3.value)

    @property
    def binding(self) -> Tuple[str, ...]:
        components = (("g1", self.g1.value), ("g2", self.g2), ("g3", self.g3.value))
        return tuple(name for name, v in components if v == self.value)


def _minimum(candidates: Dict[str, Fraction]) -> BoundValue:
    if not candidates:
        return BoundValue(Fraction(1), ())
    low = min(candidates.values())
    return BoundValue(low, tuple(a for a, v in candidates.items() if v == low))


def g1_value(game: RepeatedGame, player: int) -> BoundValue:
    """g1: deviations from sigma_i (other than tau_i) that exploit a cooperating opponent."""
    terms = payoff_terms(game, player)
    excluded = {terms.tau_own, pure_action(terms.sigma_own)}
    candidates = {}
    for action in terms.actions:
        if action in excluded or terms.against_tau[action] <= terms.sigma_vs_tau:
            continue
        loss = terms.u_sigma - terms.against_sigma[action]
        candidates[action] = loss / (loss + terms.against_tau[action] - terms.sigma_vs_tau)
    return _minimum(candidates)


def g_function(game: RepeatedGame, player: int, discount) -> GValue:
    """g_i components at the given discount factor.

    g2 covers switching to tau_i and cooperating for good; it is 1 unless that
    beats punishment against a cooperating opponent. g3 covers switching to
    tau_i once and defecting with b at the next stage; only actions b for
    which this pays against a cooperating opponent constrain it. Empty sets
    give 1.
    """
    terms = payoff_terms(game, player)
    discount = parse_rational(discount)
    loss = terms.u_sigma - terms.tau_vs_sigma

    margin = _cooperation_margin(terms, terms.sigma_vs_tau, discount)
    g2 = loss / (loss + margin) if margin > 0 else Fraction(1)

    candidates = {}
    for action in terms.actions:
        if action == terms.tau_own:
            continue
        reward = (
            terms.u_tau
            - terms.sigma_vs_tau
            + (terms.against_tau[action] - terms.u_sigma) * discount
        )
        if reward > 0:
            candidates[action] = loss / (loss + reward)
    return GValue(g1=g1_value(game, player), g2=g2, g3=_minimum(candidates))


@dataclass(frozen=True)
class PlayerThresholds:
    """lambda0, f and g of one player realized over a belief space."""

    player: int
    lambda0: Fraction
    f: ThresholdFunction
    g: ThresholdFunction
    g1: Extended
    g2: ThresholdFunction
    g3: ThresholdFunction
    g_binding: Mapping[State, Tuple[str, ...]]


@dataclass(frozen=True)
class ThresholdProfile:
    """Thresholds of both players; condition (c) uses f on 2x2 games and g otherwise."""

    players: Tuple[PlayerThresholds, PlayerThresholds]
    two_by_two: bool
    bounds_consistent: Optional[bool] = None

    def __getitem__(self, player: int) -> PlayerThresholds:
        return self.players[player - 1]

    @property
    def f_pair(self) -> Tuple[ThresholdFunction, ThresholdFunction]:
        return (self.players[0].f, self.players[1].f)

    def upper_bound(self, player: int, state: State) -> Tuple[Extended, str]:
        """Bound of condition (c) at ``state`` and the name of the binding term."""
        entry = self[player]
        if self.two_by_two:
            return entry.f(state), "f"
        return entry.g(state), entry.g_binding[state][0]


def build_thresholds(space: BeliefSpace, game: RepeatedGame, slack=Fraction(0)) -> ThresholdProfile:
    """Evaluate lambda0, f (optionally shifted by ``slack``) and g on every state."""
    log = logger.get_logger()
    entries = []
    for player in PLAYERS:
        lambda0 = cooperation_threshold(game, player)
        f = threshold_from_discount(space, player, lambda d: f_function(game, player, d, slack))
        g_cache: Dict[Fraction, GValue] = {}

        def g_at(d: Fraction) -> GValue:
            if d not in g_cache:
                g_cache[d] = g_function(game, player, d)
            return g_cache[d]

        g = threshold_from_discount(space, player, lambda d: g_at(d).value)
        g2 = threshold_from_discount(space, player, lambda d: g_at(d).g2)
        g3 = threshold_from_discount(space, player, lambda d: g_at(d).g3.value)
        binding = {s: g_at(space.discount(player, s)).binding for s in space.states}
        entries.append(
            PlayerThresholds(
                player=player,
                lambda0=lambda0,
                f=f,
                g=g,
                g1=g1_value(game, player).value,
                g2=g2,
                g3=g3,
                g_binding=binding,
            )
        )
        log.debug("Player %d: lambda0 = %s", player, lambda0)

    consistent = None
    if game.two_by_two and parse_rational(slack) == 0:
        # On 2x2 games condition (c) is read with f; g must agree up to the cap at 1.
        consistent = True
        for entry in entries:
            for state in space.states:
                if min(entry.g(state), 1) != min(entry.f(state), 1):
                    log.warning(
                        "min(g, 1) differs from min(f, 1) for player %d at state %s",
                        entry.player,
                        state,
                    )
                    consistent = False
                    break
    return ThresholdProfile(
        players=tuple(entries), two_by_two=game.two_by_two, bounds_consistent=consistent
    )
