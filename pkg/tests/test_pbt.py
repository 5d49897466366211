"""Property-based tests for coopkit.

This module contains property-based tests using Hypothesis to verify
invariants of the belief operators, the cooperation conditions and the
payoff oracle on randomly generated belief spaces, with and without a
common prior.
"""

from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from coopkit import almost_complete
from coopkit import belief_operators
from coopkit import cooperation
from coopkit import exceptions
from coopkit import fixtures
from coopkit import payoff_oracle
from coopkit import rationals
from coopkit.belief_operators import ThresholdFunction
from coopkit.belief_space import PLAYERS, build, from_common_prior
from coopkit.rationals import NEG_INF, POS_INF
from coopkit.stage_game import build_game, build_thresholds, f_function, make_stage_game

PD = fixtures.pd()


def mixed_punishment_game():
    """Symmetric 3 x 3 game whose punishment mixes A (2/3) and B (1/3); tau = (C, C)."""
    u1 = {
        ("A", "A"): 0, ("A", "B"): 3, ("A", "C"): 4,
        ("B", "A"): 1, ("B", "B"): 1, ("B", "C"): 2,
        ("C", "A"): 0, ("C", "B"): 0, ("C", "C"): 3,
    }
    u2 = {(a1, a2): u1[(a2, a1)] for a1, a2 in u1}
    stage = make_stage_game([["A", "B", "C"], ["A", "B", "C"]], [u1, u2])
    sigma = {"A": Fraction(2, 3), "B": Fraction(1, 3)}
    return build_game(stage, [sigma, sigma], ["C", "C"], name="mixed3x3")


GAMES = [PD, fixtures.g3x3(5), fixtures.g3x3(6), fixtures.g3x3(8), mixed_punishment_game()]

# Custom strategies for domain-specific types
discounts = st.integers(min_value=1, max_value=19).map(lambda k: Fraction(k, 20))
discount_sets = st.lists(discounts, min_size=1, max_size=3, unique=True).map(sorted)
probabilities = st.integers(min_value=0, max_value=20).map(lambda k: Fraction(k, 20))
coarse_discounts = st.sampled_from([Fraction(1, 5), Fraction(2, 5), Fraction(3, 4), Fraction(9, 10)])
threshold_values = st.sampled_from(
    [NEG_INF, Fraction(-1, 2), Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(3, 2), POS_INF]
)
games = st.sampled_from(GAMES)
eps_grid = [Fraction(k, 20) for k in range(1, 10)]


@st.composite
def common_prior_spaces(draw):
    """Grid of discount pairs with a random positive prior; each player knows their own discount."""
    values1 = draw(discount_sets)
    values2 = draw(discount_sets)
    states = [fixtures.state_id(x, y) for x in values1 for y in values2]
    pairs = {fixtures.state_id(x, y): (x, y) for x in values1 for y in values2}
    weights = draw(st.lists(st.integers(min_value=1, max_value=5), min_size=len(states), max_size=len(states)))
    total = sum(weights)
    prior = {s: Fraction(w, total) for s, w in zip(states, weights)}
    types = [{s: pairs[s][player - 1] for s in states} for player in PLAYERS]
    return from_common_prior(states, pairs, prior, types)


def _measurable(draw, space, player):
    cells = space.partition(player).cells
    chosen = draw(st.lists(st.booleans(), min_size=len(cells), max_size=len(cells)))
    return frozenset().union(*(cell for cell, keep in zip(cells, chosen) if keep))


@st.composite
def partitioned_spaces(draw, common_prior=False):
    """States with repeated discount values; each player may split a discount level into several types.

    Without a common prior every type gets its own random posterior over its
    cell, so beliefs need not come from any prior.
    """
    size = draw(st.integers(min_value=2, max_value=5))
    states = ["s%d" % k for k in range(size)]
    pairs = {s: (draw(coarse_discounts), draw(coarse_discounts)) for s in states}
    types = [
        {s: (pairs[s][player - 1], draw(st.integers(min_value=0, max_value=1))) for s in states}
        for player in PLAYERS
    ]
    if common_prior:
        weights = [draw(st.integers(min_value=1, max_value=5)) for _ in states]
        prior = {s: Fraction(w, sum(weights)) for s, w in zip(states, weights)}
        return from_common_prior(states, pairs, prior, types)

    kernels = []
    for labels in types:
        kernel = {}
        for label in sorted(set(labels.values())):
            members = [s for s in states if labels[s] == label]
            weights = draw(st.lists(st.integers(min_value=1, max_value=4), min_size=len(members), max_size=len(members)))
            row = {s: Fraction(w, sum(weights)) for s, w in zip(members, weights)}
            for state in members:
                kernel[state] = row
        kernels.append(kernel)
    return build(states, pairs, kernels)


any_spaces = st.one_of(common_prior_spaces(), partitioned_spaces(), partitioned_spaces(common_prior=True))


@st.composite
def spaces_with_thresholds(draw):
    """A space, a player, a measurable threshold, an arbitrary event and a measurable event."""
    space = draw(any_spaces)
    player = draw(st.sampled_from(PLAYERS))
    values = {}
    for cell in space.partition(player).cells:
        value = draw(threshold_values)
        values.update((state, value) for state in cell)
    event = frozenset(draw(st.lists(st.sampled_from(sorted(space.states)), unique=True)))
    return space, player, ThresholdFunction(player, values), event, _measurable(draw, space, player)


@st.composite
def spaces_with_subpairs(draw):
    """A space, measurable (C1, C2) and random measurable (K1, K2) inside them."""
    space = draw(any_spaces)
    c1, c2 = _measurable(draw, space, 1), _measurable(draw, space, 2)
    k1, k2 = c1 & _measurable(draw, space, 1), c2 & _measurable(draw, space, 2)
    return space, (c1, c2), (k1, k2)


@st.composite
def spaces_with_pairs(draw):
    """A space together with a measurable event for each player."""
    space = draw(any_spaces)
    return space, (_measurable(draw, space, 1), _measurable(draw, space, 2))


@st.composite
def spaces_with_events(draw):
    """A space with two nested events A <= B."""
    space = draw(common_prior_spaces())
    states = sorted(space.states)
    larger = frozenset(draw(st.lists(st.sampled_from(states), unique=True)))
    smaller = frozenset(s for s in larger if draw(st.booleans()))
    return space, smaller, larger


# =============================================================================
# Belief Operator Properties
# =============================================================================

@given(data=spaces_with_events(), p=probabilities, player=st.sampled_from(PLAYERS))
@settings(max_examples=200, deadline=None)
def test_f_belief_is_monotone(data, p, player):
    """Property: A <= B implies B_i^p(A) <= B_i^p(B)."""
    space, smaller, larger = data
    f = belief_operators.constant_threshold(space, player, p)

    assert belief_operators.f_belief(space, player, f, smaller) <= belief_operators.f_belief(space, player, f, larger)


@given(data=spaces_with_events(), p=probabilities)
@settings(max_examples=200, deadline=None)
def test_common_p_belief_matches_iteration(data, p):
    """Property: the evident-event construction equals the iterated common f-belief."""
    space, _, event = data

    iterated = belief_operators.common_f_belief(space, belief_operators.constant_pair(space, p), event)
    assert belief_operators.common_p_belief(space, p, event) == iterated


@given(data=spaces_with_events(), p=probabilities.filter(lambda p: p > 0))
@settings(max_examples=200, deadline=None)
def test_common_f_belief_is_evident(data, p):
    """Property: D^p(C) is believed by both players and inside B^p(C)."""
    space, _, event = data
    f_pair = belief_operators.constant_pair(space, p)
    evident = belief_operators.common_f_belief(space, f_pair, event)

    for player, f in zip(PLAYERS, f_pair):
        assert evident <= belief_operators.f_belief(space, player, f, evident)
        assert evident <= belief_operators.f_belief(space, player, f, event)


@given(data=spaces_with_thresholds())
@settings(max_examples=200, deadline=None)
def test_f_belief_is_idempotent(data):
    """Property: B_i^f(B_i^f(A)) = B_i^f(A) for a measurable threshold."""
    space, player, f, event, _ = data
    believed = belief_operators.f_belief(space, player, f, event)

    assert belief_operators.f_belief(space, player, f, believed) == believed


@given(data=spaces_with_thresholds())
@settings(max_examples=200, deadline=None)
def test_f_belief_of_measurable_event(data):
    """Property: for C measurable by player i, B_i^f(C) = (C minus {f > 1}) union {f <= 0}."""
    space, player, f, _, measurable = data
    above_one = frozenset(s for s in space.states if f(s) > 1)
    non_positive = frozenset(s for s in space.states if f(s) <= 0)

    assert belief_operators.f_belief(space, player, f, measurable) == (measurable - above_one) | non_positive


@given(data=spaces_with_thresholds())
@settings(max_examples=200, deadline=None)
def test_f_belief_conditioning(data):
    """Property: B_i^f(A) & C = B_i^f(A & C) for measurable C when {f <= 0} lies inside C."""
    space, player, f, event, measurable = data
    values = {s: Fraction(1, 2) if s not in measurable and f(s) <= 0 else f(s) for s in space.states}
    f = ThresholdFunction(player, values)

    conditioned = belief_operators.f_belief(space, player, f, event) & measurable
    assert conditioned == belief_operators.f_belief(space, player, f, event & measurable)


@given(data=spaces_with_subpairs(), game=games)
@settings(max_examples=200, deadline=None)
def test_iterated_pair_belief_is_largest(data, game):
    """Property: D_i^f(C_i, C_j) satisfies the belief inequality and contains every self-justified pair inside (C_1, C_2)."""
    space, (c1, c2), (k1, k2) = data
    f1, f2 = build_thresholds(space, game).f_pair
    d1, d2 = belief_operators.iterated_pair_belief(space, (f1, f2), c1, c2)

    assert all(space.posterior(1, d2, s) >= f1(s) for s in d1)
    assert all(space.posterior(2, d1, s) >= f2(s) for s in d2)

    # shrink the random sub-pair until K_i <= B_i^f(K_j)
    while True:
        n1 = k1 & belief_operators.f_belief(space, 1, f1, k2)
        n2 = k2 & belief_operators.f_belief(space, 2, f2, k1)
        if (n1, n2) == (k1, k2):
            break
        k1, k2 = n1, n2
    assert k1 <= d1
    assert k2 <= d2


@given(data=spaces_with_subpairs(), game=games)
@settings(max_examples=200, deadline=None)
def test_iterated_pair_belief_decomposes(data, game):
    """Property: D_1^f & D_2^f = D^f(C_1 & C_2) and D_i^f = B_i^f(D^f(C_1 & C_2))."""
    space, (c1, c2), _ = data
    f_pair = build_thresholds(space, game).f_pair
    for f, c in zip(f_pair, (c1, c2)):
        assume(all(s in c for s in space.states if f(s) <= 0))

    d1, d2 = belief_operators.iterated_pair_belief(space, f_pair, c1, c2)
    common = belief_operators.common_f_belief(space, f_pair, c1 & c2)
    assert d1 & d2 == common
    assert d1 == belief_operators.f_belief(space, 1, f_pair[0], common)
    assert d2 == belief_operators.f_belief(space, 2, f_pair[1], common)


# =============================================================================
# Threshold Properties
# =============================================================================

@given(numerator=st.integers(min_value=1, max_value=999))
@settings(max_examples=1000, deadline=None)
def test_pd_f_closed_form(numerator):
    """Property: the general f on the prisoner's dilemma is (1 - lambda) / (2 lambda)."""
    discount = Fraction(numerator, 1000)

    for player in PLAYERS:
        assert f_function(PD, player, discount) == (1 - discount) / (2 * discount)


@given(discount=discounts, player=st.sampled_from(PLAYERS))
def test_pd_threshold_matches_f_at_most_one(discount, player):
    """Property: in the prisoner's dilemma, lambda >= 1/3 exactly when f(lambda) <= 1."""
    assert (discount >= Fraction(1, 3)) == (f_function(PD, player, discount) <= 1)


@given(discount=discounts)
def test_f_decreases_with_slack(discount):
    """Property: a positive slack never raises f."""
    assert f_function(PD, 1, discount, Fraction(1, 10)) <= f_function(PD, 1, discount)


# =============================================================================
# Cooperation Properties
# =============================================================================

@given(data=spaces_with_pairs(), game=games)
@settings(max_examples=500, deadline=None)
def test_check_pair_agrees_with_oracle(data, game):
    """Property: the conditions hold exactly when nobody gains by deviating, for 2 x 2 and 3 x 3 games with pure or mixed punishment."""
    space, pair = data

    verdict = cooperation.check_pair(space, game, *pair).verdict
    equilibrium, max_gain = payoff_oracle.is_bayes_equilibrium(space, game, *pair)
    assert verdict == equilibrium
    assert max_gain >= 0


@given(data=spaces_with_pairs())
@settings(max_examples=100, deadline=None)
def test_bayesian_pairs_pass_icr(data):
    """Property: every Bayesian pair of cooperation events passes the ICR check."""
    space, pair = data

    if cooperation.check_pair(space, PD, *pair).verdict:
        assert cooperation.check_pair(space, PD, *pair, mode=cooperation.ICR).verdict


@given(data=spaces_with_pairs())
@settings(max_examples=100, deadline=None)
def test_candidate_pair_passes_icr(data):
    """Property: candidate pairs from C_i inside Lambda_i satisfy (a) and (b), hence pass ICR."""
    space, chosen = data
    regions = cooperation.lambda_regions(space, cooperation.build_thresholds(space, PD))
    c1, c2 = chosen[0] & regions[0], chosen[1] & regions[1]

    k1, k2 = cooperation.candidate_pair(space, PD, c1, c2)
    report = cooperation.check_pair(space, PD, k1, k2)
    assert report.conditions["a"].holds
    assert report.conditions["b"].holds
    assert cooperation.check_pair(space, PD, k1, k2, mode=cooperation.ICR).verdict


@given(space=common_prior_spaces())
@settings(max_examples=100, deadline=None)
def test_enumerated_pairs_are_cooperation_pairs(space):
    """Property: every enumerated pair passes check_pair and the empty pair is always found."""
    pairs = cooperation.enumerate_pairs(space, PD)

    assert (frozenset(), frozenset()) in pairs
    for k1, k2 in pairs:
        assert cooperation.check_pair(space, PD, k1, k2).verdict


@given(space=any_spaces, game=st.sampled_from(GAMES[:3]))
@settings(max_examples=100, deadline=None)
def test_largest_pair_contains_every_pair(space, game):
    """Property: every enumerated pair lies component-wise inside the largest pair."""
    (k1, k2), _ = cooperation.largest_pair(space, game)

    for p1, p2 in cooperation.enumerate_pairs(space, game):
        assert p1 <= k1
        assert p2 <= k2


# =============================================================================
# Almost-Complete Information Properties
# =============================================================================

@given(space=st.one_of(common_prior_spaces(), partitioned_spaces(common_prior=True)))
@settings(max_examples=100, deadline=None)
def test_almost_complete_checks_monotone_in_eps(space):
    """Property: raising eps never shrinks the common-belief region nor adds strong-check failures."""
    previous_ms = previous_strong = None
    for eps in eps_grid:
        ms = almost_complete.ms_almost_complete(space, eps, 0)
        strong = almost_complete.strong_almost_complete(space, eps)
        if previous_ms is not None:
            assert previous_ms.region <= ms.region
            assert previous_ms.mass <= ms.mass
            assert set(strong.failures) <= set(previous_strong.failures)
            assert previous_strong.region <= strong.region
        previous_ms, previous_strong = ms, strong


@given(space=st.one_of(common_prior_spaces(), partitioned_spaces(common_prior=True)))
@settings(max_examples=100, deadline=None)
def test_strong_almost_complete_bounds(space):
    """Property: under a common prior, the strong check at eps < 1/2 gives the ms check with delta = 2 eps and P(Lambda minus D(Lambda)) < 3 eps."""
    for eps in eps_grid:
        if not almost_complete.strong_almost_complete(space, eps).holds:
            continue
        assert almost_complete.ms_almost_complete(space, eps, 2 * eps).holds
        _, report = almost_complete.robust_profile(space, PD, eps)
        assert report.unravelled_mass < 3 * eps


# =============================================================================
# Rational Properties
# =============================================================================

@given(numerator=st.integers(min_value=-1000, max_value=1000), denominator=st.integers(min_value=1, max_value=1000))
def test_format_rational_is_canonical(numerator, denominator):
    """Property: format_rational writes lowest terms that parse back exactly."""
    value = Fraction(numerator, denominator)
    text = rationals.format_rational(value)

    assert rationals.parse_rational(text) == value
    assert text == "%d/%d" % (value.numerator, value.denominator)


@given(value=st.floats(allow_nan=False, allow_infinity=False))
def test_floats_are_rejected(value):
    """Property: floating-point numbers are never accepted as probabilities."""
    try:
        rationals.parse_rational(value)
        assert False, "Should have raised ParseError"
    except exceptions.ParseError as e:
        assert e.error_code == "NOT_RATIONAL"


if __name__ == "__main__":
    print("Running property-based tests...\n")

    test_f_belief_is_monotone()
    print("✓ test_f_belief_is_monotone passed")

    test_common_p_belief_matches_iteration()
    print("✓ test_common_p_belief_matches_iteration passed")

    test_common_f_belief_is_evident()
    print("✓ test_common_f_belief_is_evident passed")

    test_f_belief_is_idempotent()
    print("✓ test_f_belief_is_idempotent passed")

    test_f_belief_of_measurable_event()
    print("✓ test_f_belief_of_measurable_event passed")

    test_f_belief_conditioning()
    print("✓ test_f_belief_conditioning passed")

    test_iterated_pair_belief_is_largest()
    print("✓ test_iterated_pair_belief_is_largest passed")

    test_iterated_pair_belief_decomposes()
    print("✓ test_iterated_pair_belief_decomposes passed")

    test_pd_f_closed_form()
    print("✓ test_pd_f_closed_form passed")

    test_pd_threshold_matches_f_at_most_one()
    print("✓ test_pd_threshold_matches_f_at_most_one passed")

    test_f_decreases_with_slack()
    print("✓ test_f_decreases_with_slack passed")

    test_check_pair_agrees_with_oracle()
    print("✓ test_check_pair_agrees_with_oracle passed")

    test_bayesian_pairs_pass_icr()
    print("✓ test_bayesian_pairs_pass_icr passed")

    test_candidate_pair_passes_icr()
    print("✓ test_candidate_pair_passes_icr passed")

    test_enumerated_pairs_are_cooperation_pairs()
    print("✓ test_enumerated_pairs_are_cooperation_pairs passed")

    test_largest_pair_contains_every_pair()
    print("✓ test_largest_pair_contains_every_pair passed")

    test_almost_complete_checks_monotone_in_eps()
    print("✓ test_almost_complete_checks_monotone_in_eps passed")

    test_strong_almost_complete_bounds()
    print("✓ test_strong_almost_complete_bounds passed")

    test_format_rational_is_canonical()
    print("✓ test_format_rational_is_canonical passed")

    test_floats_are_rejected()
    print("✓ test_floats_are_rejected passed")

    print("\n✓ All property-based tests passed!")
