"""Built-in belief spaces and games.

State identifiers are the discount pair written "l1,l2" with canonical
rationals, e.g. "1/4,3/4".
"""

from fractions import Fraction
from typing import Callable, Dict, Mapping, Sequence

from coopkit import exceptions
from coopkit import stage_game
from coopkit.belief_space import BeliefSpace, build, from_common_prior
from coopkit.rationals import format_rational, parse_rational

QUARTERS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


def state_id(lambda1, lambda2) -> str:
    return "%s,%s" % (format_rational(lambda1), format_rational(lambda2))


def _grid(values1: Sequence[Fraction], values2: Sequence[Fraction]):
    states = [state_id(x, y) for x in values1 for y in values2]
    discounts = {state_id(x, y): (x, y) for x in values1 for y in values2}
    return states, discounts


def _by_own_discount(states, discounts) -> list:
    # Each player's type is their own discount factor.
    return [{s: discounts[s][player] for s in states} for player in (0, 1)]


def uniform_product(values: Sequence[Fraction]) -> BeliefSpace:
    """Uniform common prior on values x values; each player knows their own discount."""
    states, discounts = _grid(values, values)
    prior = {s: Fraction(1, len(states)) for s in states}
    return from_common_prior(states, discounts, prior, _by_own_discount(states, discounts))


def own_discount_beliefs(
    values: Sequence[Fraction], table: Mapping[Fraction, Mapping[Fraction, Fraction]]
) -> BeliefSpace:
    """Symmetric beliefs: ``table[own][other]`` is the probability of the opponent's discount."""
    states, discounts = _grid(values, values)
    kernels = []
    for player in (1, 2):
        kernel = {}
        for x in values:
            for y in values:
                own = x if player == 1 else y
                row = {}
                for opponent, p in table[own].items():
                    target = state_id(own, opponent) if player == 1 else state_id(opponent, own)
                    row[target] = p
                kernel[state_id(x, y)] = row
        kernels.append(kernel)
    return build(states, discounts, kernels)


def prisonerex1() -> BeliefSpace:
    """Uniform prior on {1/4, 1/2, 3/4}^2."""
    return uniform_product(QUARTERS)


def prisonerex2() -> BeliefSpace:
    """Each player believes the opponent is at least as patient."""
    q, h, t = QUARTERS
    third = Fraction(1, 3)
    return own_discount_beliefs(
        QUARTERS,
        {
            q: {q: third, h: third, t: third},
            h: {h: third, t: 2 * third},
            t: {t: Fraction(1)},
        },
    )


def prisonerex3() -> BeliefSpace:
    """Each player believes the opponent is patient exactly when they are not."""
    q, h, t = QUARTERS
    return own_discount_beliefs(QUARTERS, {t: {q: Fraction(1)}, h: {h: Fraction(1)}, q: {t: Fraction(1)}})


def example_new(p=Fraction(1, 3)) -> BeliefSpace:
    """Player 1 is patient; player 2 is patient with probability p < 1/2."""
    p = parse_rational(p)
    high, low = state_id(Fraction(1, 2), Fraction(1, 2)), state_id(Fraction(1, 2), Fraction(1, 4))
    discounts = {high: (Fraction(1, 2), Fraction(1, 2)), low: (Fraction(1, 2), Fraction(1, 4))}
    prior = {high: p, low: 1 - p}
    types = [{high: 0, low: 0}, {high: "high", low: "low"}]
    return from_common_prior([high, low], discounts, prior, types)


def example5grid(n: int = 20) -> BeliefSpace:
    """Uniform prior on the n x n grid of cell midpoints (2k+1)/(2n) of (0, 1)^2."""
    values = [Fraction(2 * k + 1, 2 * n) for k in range(n)]
    return uniform_product(values)


def example6() -> BeliefSpace:
    return prisonerex1()


def prisonerex4_grid(step=Fraction(1, 100), half_width=Fraction(1, 20)) -> BeliefSpace:
    """Grid version of neighbourhood beliefs.

    Discount factors range over the multiples of ``step`` in (0, 1). A
    player with discount x believes the opponent's discount is uniform over
    the grid points y with |y - x| < half_width. Only states inside that
    band are kept; every belief is supported on the band.
    """
    step, half_width = parse_rational(step), parse_rational(half_width)
    count = int(1 / step)
    values = [step * k for k in range(1, count) if 0 < step * k < 1]
    window = {x: [y for y in values if abs(y - x) < half_width] for x in values}
    states, discounts = [], {}
    for x in values:
        for y in window[x]:
            states.append(state_id(x, y))
            discounts[state_id(x, y)] = (x, y)
    kernels = []
    for player in (1, 2):
        kernel = {}
        for state in states:
            own = discounts[state][player - 1]
            weight = Fraction(1, len(window[own]))
            if player == 1:
                kernel[state] = {state_id(own, y): weight for y in window[own]}
            else:
                kernel[state] = {state_id(y, own): weight for y in window[own]}
        kernels.append(kernel)
    return build(states, discounts, kernels)


def complete_information(values: Sequence = QUARTERS) -> BeliefSpace:
    """Every state is common knowledge: point-mass kernels, uniform prior."""
    values = [parse_rational(v) for v in values]
    states, discounts = _grid(values, values)
    kernels = [{s: {s: Fraction(1)} for s in states} for _ in (1, 2)]
    prior = {s: Fraction(1, len(states)) for s in states}
    return build(states, discounts, kernels, prior=prior)


def almost_complete_chain(eta=Fraction(1, 10)) -> BeliefSpace:
    """Three-state common-prior space that is almost complete in the strong sense.

    States A = (3/4, 3/4), B = (3/4, 1/4) and C = (1/4, 1/4) have prior
    1 - eta - eta^2, eta^2 and eta. Player 1 cannot tell A from B and
    player 2 cannot tell B from C.
    """
    eta = parse_rational(eta)
    high, low = Fraction(3, 4), Fraction(1, 4)
    a, b, c = state_id(high, high), state_id(high, low), state_id(low, low)
    discounts = {a: (high, high), b: (high, low), c: (low, low)}
    prior = {a: 1 - eta - eta ** 2, b: eta ** 2, c: eta}
    types = [{a: "high", b: "high", c: "low"}, {a: "high", b: "low", c: "low"}]
    return from_common_prior([a, b, c], discounts, prior, types)


def empty_lambda() -> BeliefSpace:
    """Uniform prior on discounts all below the prisoner's dilemma threshold 1/3."""
    return uniform_product((Fraction(1, 10), Fraction(1, 5), Fraction(1, 4)))


SPACES: Dict[str, Callable[[], BeliefSpace]] = {
    "prisonerex1": prisonerex1,
    "prisonerex2": prisonerex2,
    "prisonerex3": prisonerex3,
    "example_new": example_new,
    "example5grid": example5grid,
    "example6": example6,
    "prisonerex4": prisonerex4_grid,
    "complete_information": complete_information,
    "almost_complete_chain": almost_complete_chain,
    "empty_lambda": empty_lambda,
}


def space_fixture(name: str) -> BeliefSpace:
    """Built-in space by name; "-" and "_" are interchangeable.

    Raises:
        UnknownExampleError: If the name is unknown.
    """
    key = name.replace("-", "_")
    if key not in SPACES:
        raise exceptions.UnknownExampleError(name, tuple(SPACES))
    return SPACES[key]()


def pd() -> stage_game.RepeatedGame:
    """Prisoner's dilemma with sigma = (D, D) and tau = (C, C)."""
    stage = stage_game.make_stage_game(
        [("C", "D"), ("C", "D")],
        [
            {("C", "C"): 3, ("C", "D"): 0, ("D", "C"): 4, ("D", "D"): 1},
            {("C", "C"): 3, ("C", "D"): 4, ("D", "C"): 0, ("D", "D"): 1},
        ],
    )
    return stage_game.build_game(stage, [{"D": 1}, {"D": 1}], ["C", "C"], name="pd")


def g3x3(a=5) -> stage_game.RepeatedGame:
    """Prisoner's dilemma with a third action N that exploits cooperation.

    N earns ``a`` (> 4) against C; payoffs left open in the family are 0.
    """
    a = parse_rational(a)
    actions = ("D", "C", "N")
    player1 = {
        ("D", "D"): 1, ("D", "C"): 4, ("D", "N"): 0,
        ("C", "D"): 0, ("C", "C"): 3, ("C", "N"): 0,
        ("N", "D"): 0, ("N", "C"): a, ("N", "N"): 0,
    }
    player2 = {(x, y): player1[(y, x)] for (x, y) in player1}
    stage = stage_game.make_stage_game([actions, actions], [player1, player2])
    return stage_game.build_game(
        stage, [{"D": 1}, {"D": 1}], ["C", "C"], name="g3x3:a=%s" % a
    )
