"""Tests for exact rational helpers."""

from fractions import Fraction

from coopkit import exceptions
from coopkit import rationals


def test_parse_rational_forms():
    """Test every accepted input form."""
    assert rationals.parse_rational(3) == 3
    assert rationals.parse_rational(Fraction(2, 6)) == Fraction(1, 3)
    assert rationals.parse_rational("2/6") == Fraction(1, 3)
    assert rationals.parse_rational(" 3/4 ") == Fraction(3, 4)
    assert rationals.parse_rational("0.25") == Fraction(1, 4)
    assert rationals.parse_rational([1, 3]) == Fraction(1, 3)
    assert rationals.parse_rational(["1/2", 2]) == Fraction(1, 4)
    print("✓ Parse rational forms test passed")


def test_parse_rational_rejects():
    """Test that floats, booleans and garbage are rejected."""
    for value in (0.5, True, "abc", "1/0", [1, 0], None, {"p": 1}):
        try:
            rationals.parse_rational(value)
            assert False, "Should have raised ParseError for %r" % (value,)
        except exceptions.ParseError as e:
            assert e.error_code == "NOT_RATIONAL"
    print("✓ Parse rational rejects test passed")


def test_parse_extended():
    """Test infinite values."""
    assert rationals.parse_extended("inf") == rationals.POS_INF
    assert rationals.parse_extended("-inf") == rationals.NEG_INF
    assert rationals.parse_extended(rationals.POS_INF) == rationals.POS_INF
    assert rationals.parse_extended("1/2") == Fraction(1, 2)
    print("✓ Parse extended test passed")


def test_format_rational():
    """Test the canonical p/q rendering."""
    assert rationals.format_rational(Fraction(2, 4)) == "1/2"
    assert rationals.format_rational(Fraction(-3, 6)) == "-1/2"
    assert rationals.format_rational(3) == "3/1"
    assert rationals.format_rational(0) == "0/1"
    assert rationals.format_rational(rationals.POS_INF) == "inf"
    assert rationals.format_rational(rationals.NEG_INF) == "-inf"
    try:
        rationals.format_rational(0.5)
        assert False, "Should have raised TypeError"
    except TypeError:
        pass
    print("✓ Format rational test passed")


def test_extended_comparisons():
    """Test that infinities compare exactly with fractions."""
    assert Fraction(10 ** 9) < rationals.POS_INF
    assert rationals.NEG_INF < Fraction(-(10 ** 9))
    assert rationals.is_finite(Fraction(1, 3))
    assert not rationals.is_finite(rationals.POS_INF)
    print("✓ Extended comparisons test passed")


def test_loads_exact():
    """Test JSON decoding without floats."""
    assert rationals.loads_exact('{"p": "1/3", "n": 2}') == {"p": "1/3", "n": 2}

    for text, code in (('{"p": 0.5}', "FLOAT_REJECTED"), ('{"p": NaN}', "FLOAT_REJECTED"), ("{oops", "MALFORMED_JSON")):
        try:
            rationals.loads_exact(text)
            assert False, "Should have raised ParseError for %s" % text
        except exceptions.ParseError as e:
            assert e.error_code == code
    print("✓ Exact JSON loading test passed")


if __name__ == "__main__":
    print("Running rational tests...\n")

    test_parse_rational_forms()
    test_parse_rational_rejects()
    test_parse_extended()
    test_format_rational()
    test_extended_comparisons()
    test_loads_exact()

    print("\n✓ All rational tests passed!")
