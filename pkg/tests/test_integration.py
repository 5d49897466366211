"""Integration tests for coopkit.

This module contains end-to-end tests that run the controller and the
command line on the built-in scenarios.
"""

import json
import tempfile
from fractions import Fraction
from pathlib import Path

from click.testing import CliRunner

from coopkit import cli
from coopkit import config
from coopkit import controller
from coopkit import demos
from coopkit import exceptions
from coopkit import fixtures
from coopkit import loader


def test_all_demos_pass():
    """Test every built-in scenario against its known values."""
    print("\n=== Testing built-in demos ===")

    for name in demos.DEMOS:
        result = demos.run_demo(name)
        failed = [c.to_dict() for c in result.checks if not c.passed]
        assert result.checks, name
        assert not failed, (name, failed)

    print("✓ All demos pass")


def test_controller_analyze_file_end_to_end():
    """Test analyzing a space written to disk."""
    print("\n=== Testing controller on a space file ===")

    app = controller.CoopkitController(config.Config(log_level="ERROR"))
    with tempfile.TemporaryDirectory() as tmpdir:
        space_path = Path(tmpdir) / "prisonerex2.json"
        space_path.write_text(json.dumps(loader.space_to_dict(fixtures.prisonerex2())), encoding="utf-8")
        game_path = Path(tmpdir) / "pd.json"
        game_path.write_text(json.dumps(loader.game_to_dict(fixtures.pd())), encoding="utf-8")

        report = app.analyze(
            str(space_path),
            str(game_path),
            oracle=True,
            candidate={1: ["3/4"], 2: ["3/4"]},
        )

    assert report.game == "pd"
    assert report.candidate.verdict is False
    witness = report.candidate.witness()
    assert (witness.player, witness.state, witness.lhs, witness.rhs, witness.bound) == (
        1,
        "1/2,1/2",
        Fraction(2, 3),
        Fraction(1, 2),
        "f",
    )
    candidate_oracle = report.deviations[1]
    assert candidate_oracle.max_gain == Fraction(1, 3)
    assert not candidate_oracle.equilibrium

    print("✓ Controller analyze on file works")


def test_controller_icr_mode():
    """Test that ICR mode accepts the pair the Bayesian check rejects."""
    app = controller.CoopkitController(config.Config(mode="icr"))
    report = app.analyze("prisonerex2", "pd", candidate={1: ["3/4"], 2: ["3/4"]})

    assert report.candidate.mode == "icr"
    assert report.candidate.verdict is True
    assert report.candidate.rationalizable == {1: True, 2: True}
    assert "c" not in report.candidate.conditions

    print("✓ Controller ICR mode works")


def test_controller_enumeration_on_uniform_space():
    """Test the full list of pairs on the uniform 3 x 3 space."""
    app = controller.CoopkitController()
    report = app.analyze("prisonerex1", "pd", enumerate_all=True)
    high = fixtures.prisonerex1().where(lambda l1, l2: l1 == Fraction(3, 4))
    high2 = fixtures.prisonerex1().where(lambda l1, l2: l2 == Fraction(3, 4))

    assert report.pairs[0] == report.largest.pair
    assert report.pairs[1] == (high, high2)
    assert report.pairs[-1] == (frozenset(), frozenset())
    assert len(report.pairs) == 3

    print("✓ Controller enumeration works")


def test_controller_budget_from_config():
    """Test that the configured budget limits enumeration."""
    app = controller.CoopkitController(config.Config(enumeration_budget=15))

    try:
        app.analyze("prisonerex1", "pd", enumerate_all=True)
        assert False, "Should have raised TooLargeError"
    except exceptions.TooLargeError as e:
        assert e.required == 16
        assert e.budget == 15

    print("✓ Controller budget from config works")


def test_controller_validate_collects_failures():
    """Test that validation reports failures instead of raising."""
    document = loader.space_to_dict(fixtures.example_new())
    document["lambda"]["1/2,1/4"] = ["1/4", "1/4"]

    app = controller.CoopkitController()
    with tempfile.TemporaryDirectory() as tmpdir:
        path = Path(tmpdir) / "space.json"
        path.write_text(json.dumps(document), encoding="utf-8")
        report = app.validate(str(path), "g3x3:a=5")

    assert not report.passed
    failed = [c.name for c in report.checks if not c.passed]
    assert failed == ["knowledge_of_own_discount"]
    assert report.game == "g3x3:a=5"

    print("✓ Controller validation collects failures")


def test_controller_robust_run():
    """Test the robustness bundle on complete information."""
    app = controller.CoopkitController()
    run = app.robust("complete_information", "pd", ms=True, profile=True, eps="1/10", delta="1/10")

    assert [r.kind for r in run.reports] == ["ms", "profile"]
    assert run.reports[0].holds
    assert run.reports[0].mass == 1
    assert run.reports[1].holds

    print("✓ Controller robust run works")


def test_controller_export_formats():
    """Test export in every format and an unknown one."""
    app = controller.CoopkitController()
    result = app.demo("prisonerex3")

    with tempfile.TemporaryDirectory() as tmpdir:
        path = Path(tmpdir) / "demo.json"
        app.export(result, str(path))
        assert json.loads(path.read_text(encoding="utf-8"))["passed"] is True

    app.config.output_format = "text"
    assert "prisonerex3" in app.export(result, title="Demo: prisonerex3")

    app.config.output_format = "xml"
    try:
        app.export(result)
        assert False, "Should have raised ExportError"
    except exceptions.ExportError as e:
        assert e.error_code == "INVALID_FORMAT"

    print("✓ Controller export formats work")


def test_cli_end_to_end_text_output():
    """Test the command line writing a text report of the largest pair."""
    runner = CliRunner()
    result = runner.invoke(cli.cli, ["--log-level", "ERROR", "--format", "text", "analyze", "--space", "prisonerex1"])

    assert result.exit_code == 0, result.output
    assert "Analysis: prisonerex1 under pd" in result.stdout
    assert "verdict: True" in result.stdout

    print("✓ CLI end-to-end text output works")


def test_cli_end_to_end_example5():
    """Test the three-action game on the 10 x 10 grid through the command line."""
    runner = CliRunner()
    with runner.isolated_filesystem():
        Path("grid.json").write_text(
            json.dumps(loader.space_to_dict(fixtures.example5grid(10))), encoding="utf-8"
        )
        result = runner.invoke(
            cli.cli, ["--log-level", "ERROR", "analyze", "--space", "grid.json", "--game", "g3x3:a=6"]
        )

    assert result.exit_code == 0, result.output
    data = json.loads(result.stdout)
    assert data["lambda0"]["1"] == "3/5"
    assert data["largest"]["verdict"] is False
    assert data["largest"]["conditions"]["c"]["witnesses"][0]["bound"] == "g1"

    print("✓ CLI end-to-end example5 works")


if __name__ == "__main__":
    print("Running integration tests...\n")

    test_all_demos_pass()
    test_controller_analyze_file_end_to_end()
    test_controller_icr_mode()
    test_controller_enumeration_on_uniform_space()
    test_controller_budget_from_config()
    test_controller_validate_collects_failures()
    test_controller_robust_run()
    test_controller_export_formats()
    test_cli_end_to_end_text_output()
    test_cli_end_to_end_example5()

    print("\n✓ All integration tests passed!")
