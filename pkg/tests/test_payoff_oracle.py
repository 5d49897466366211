"""Tests for the payoff oracle."""

from fractions import Fraction

from coopkit import belief_space
from coopkit import cooperation
from coopkit import exceptions
from coopkit import fixtures
from coopkit import payoff_oracle


def _where(space, player, *values):
    """States where the player's discount is one of values."""
    wanted = {Fraction(v) for v in values}
    return space.where(lambda *pair: pair[player - 1] in wanted)


def _boundary_space():
    """Player 1 (discount 1/2) is unsure whether player 2 is patient; player 2 knows the state."""
    return belief_space.build(
        ["h,h", "h,l"],
        {"h,h": ["1/2", "3/4"], "h,l": ["1/2", "1/4"]},
        [
            {"h,h": {"h,h": "1/2", "h,l": "1/2"}, "h,l": {"h,h": "1/2", "h,l": "1/2"}},
            {"h,h": {"h,h": 1}, "h,l": {"h,l": 1}},
        ],
    )


def test_conforming_payoff_cooperator():
    """Test the conforming payoff of a cooperating type."""
    space = fixtures.prisonerex1()
    k1, k2 = _where(space, 1, "1/2", "3/4"), _where(space, 2, "1/2", "3/4")

    # 2/3 * 3/(1 - 3/4) + 1/3 * (0 + 3/4 * 1/(1 - 3/4))
    assert payoff_oracle.conforming_payoff(space, fixtures.pd(), k1, k2, 1, "3/4,3/4") == 9
    print("✓ Conforming payoff of a cooperator test passed")


def test_conforming_payoff_defector():
    """Test the conforming payoff of a type outside K_i."""
    space = fixtures.prisonerex1()
    k1, k2 = _where(space, 1, "1/2", "3/4"), _where(space, 2, "1/2", "3/4")

    assert payoff_oracle.conforming_payoff(space, fixtures.pd(), k1, k2, 1, "1/4,1/4") == Fraction(10, 3)
    print("✓ Conforming payoff of a defector test passed")


def test_best_deviation_no_gain():
    """Test that nobody gains on the largest pair of the uniform space."""
    space = fixtures.prisonerex1()
    k1, k2 = _where(space, 1, "1/2", "3/4"), _where(space, 2, "1/2", "3/4")

    entry = payoff_oracle.best_deviation(space, fixtures.pd(), k1, k2, 1, "3/4,3/4")
    assert entry.best == 9
    assert entry.gain == 0
    assert entry.first_action == "C"
    assert entry.continuation == "cooperate"

    entry = payoff_oracle.best_deviation(space, fixtures.pd(), k1, k2, 1, "1/4,1/4")
    assert entry.first_action == "D"
    assert entry.continuation == "punish"
    assert entry.gain == 0
    print("✓ Best deviation without gain test passed")


def test_deviation_report():
    """Test the per-state oracle report."""
    space = fixtures.prisonerex1()
    pair, _ = cooperation.largest_pair(space, fixtures.pd())
    report = payoff_oracle.deviation_report(space, fixtures.pd(), *pair)

    assert len(report.entries) == 18
    assert report.entries[0].player == 1
    assert report.entries[-1].player == 2
    assert report.max_gain == 0
    assert report.equilibrium
    assert all(e.gain >= 0 for e in report.entries)
    print("✓ Deviation report test passed")


def test_profitable_deviation():
    """Test the gain of a type that should have cooperated."""
    space = fixtures.prisonerex2()
    high = (_where(space, 1, "3/4"), _where(space, 2, "3/4"))

    entry = payoff_oracle.best_deviation(space, fixtures.pd(), *high, 1, "1/2,1/2")
    assert entry.conforming == 4
    assert entry.best == Fraction(13, 3)
    assert entry.gain == Fraction(1, 3)
    assert entry.first_action == "C"
    assert entry.continuation == "cooperate"

    assert payoff_oracle.is_bayes_equilibrium(space, fixtures.pd(), *high) == (False, Fraction(1, 3))
    assert payoff_oracle.is_epsilon_equilibrium(space, fixtures.pd(), *high, "1/3") == (True, Fraction(1, 3))
    print("✓ Profitable deviation test passed")


def test_third_action_deviation():
    """Test the exploiting action of the three-action game."""
    space = fixtures.example6()
    game = fixtures.g3x3(5)
    pair, _ = cooperation.largest_pair(space, game)

    entry = payoff_oracle.best_deviation(space, game, *pair, 1, "1/4,1/2")
    assert entry.conforming == Fraction(10, 3)
    assert entry.best == Fraction(11, 3)
    assert entry.first_action == "N"
    assert entry.continuation == "punish"
    print("✓ Third action deviation test passed")


def test_boundary_indifference():
    """Test a pair where condition (b) holds with equality."""
    space = _boundary_space()
    game = fixtures.pd()
    k1, k2 = space.omega, frozenset({"h,h"})

    assert cooperation.check_pair(space, game, k1, k2).verdict
    assert payoff_oracle.conforming_payoff(space, game, k1, k2, 1, "h,h") == Fraction(7, 2)
    assert payoff_oracle.action_deviation_value(space, game, k1, k2, 1, "h,h", "D") == (
        Fraction(7, 2),
        "punish",
    )
    assert payoff_oracle.is_bayes_equilibrium(space, game, k1, k2) == (True, Fraction(0))
    print("✓ Boundary indifference test passed")


def test_delayed_deviation_gain():
    """Test deviations postponed to a later stage."""
    space = fixtures.prisonerex1()
    k1, k2 = _where(space, 1, "1/2", "3/4"), _where(space, 2, "1/2", "3/4")
    game = fixtures.pd()

    # 2/3 * 3/4 * ((4 + 3/4 * 4) - 12)
    assert payoff_oracle.delayed_deviation_gain(space, game, k1, k2, 1, "3/4,3/4", "D", 2) == Fraction(-5, 2)
    assert payoff_oracle.delayed_deviation_gain(space, game, k1, k2, 1, "1/4,1/4", "D", 3) == 0
    assert payoff_oracle.delayed_deviation_gain(space, game, k1, k2, 1, "3/4,3/4", "C", 3) == 0
    try:
        payoff_oracle.delayed_deviation_gain(space, game, k1, k2, 1, "3/4,3/4", "D", 1)
        assert False, "Should have raised ValueError"
    except ValueError:
        pass
    print("✓ Delayed deviation gain test passed")


def test_truncated_payoff():
    """Test the truncated sum against the closed form."""
    space = fixtures.prisonerex1()
    k1, k2 = _where(space, 1, "1/2", "3/4"), _where(space, 2, "1/2", "3/4")
    game = fixtures.pd()
    exact = payoff_oracle.conforming_payoff(space, game, k1, k2, 1, "1/4,1/4")

    total, tail = payoff_oracle.truncated_payoff(space, game, k1, k2, 1, "1/4,1/4", 1)
    assert total == 3
    for horizon in (1, 5, 20):
        total, tail = payoff_oracle.truncated_payoff(space, game, k1, k2, 1, "1/4,1/4", horizon)
        assert total <= exact <= total + tail
    print("✓ Truncated payoff test passed")


def test_not_measurable_events():
    """Test that the oracle rejects non-measurable events."""
    space = fixtures.prisonerex1()

    try:
        payoff_oracle.deviation_report(space, fixtures.pd(), {"3/4,3/4"}, frozenset())
        assert False, "Should have raised NotMeasurableError"
    except exceptions.NotMeasurableError:
        pass
    print("✓ Oracle measurability test passed")


def test_signaling_fixture():
    """Test the two-type signalling comparisons."""
    high, low = payoff_oracle.signaling_fixture(fixtures.pd())

    assert (high.state, high.conforming, high.deviation) == ("high", 3, 2)
    assert (low.state, low.conforming, low.deviation) == ("low", Fraction(4, 3), Fraction(13, 12))
    assert high.deters and low.deters
    print("✓ Signalling fixture test passed")


if __name__ == "__main__":
    print("Running payoff oracle tests...\n")

    test_conforming_payoff_cooperator()
    test_conforming_payoff_defector()
    test_best_deviation_no_gain()
    test_deviation_report()
    test_profitable_deviation()
    test_third_action_deviation()
    test_boundary_indifference()
    test_delayed_deviation_gain()
    test_truncated_payoff()
    test_not_measurable_events()
    test_signaling_fixture()

    print("\n✓ All payoff oracle tests passed!")
