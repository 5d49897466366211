"""Tests for report exporter."""

import contextlib
import io
import json
import tempfile
from fractions import Fraction
from pathlib import Path

from coopkit import exceptions
from coopkit import exporter
from coopkit import models


def _report():
    return models.RobustnessReport(
        kind="ms",
        parameters={"eps": Fraction(1, 10), "delta": Fraction(1, 10)},
        holds=True,
        region=frozenset({"3/4,3/4", "1/4,1/4"}),
        mass=Fraction(99, 100),
    )


class _Unserializable:
    def to_dict(self):
        return {"value": Fraction(1, 2)}


def test_export_json_to_stdout():
    """Test JSON export to stdout."""
    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer):
        json_str = exporter.ReportExporter().export_json(_report())

    assert buffer.getvalue() == json_str + "\n"
    data = json.loads(json_str)
    assert data["region"] == ["1/4,1/4", "3/4,3/4"]
    assert data["mass"] == "99/100"
    print("✓ JSON export to stdout test passed")


def test_export_json_sorted_keys():
    """Test that JSON output is deterministic."""
    json_str = exporter.ReportExporter().export_json(_report(), output_path=None)
    keys = [line.split('"')[1] for line in json_str.splitlines() if line.startswith('  "')]

    assert keys == sorted(keys)
    assert json_str == exporter.ReportExporter().export_json(_report())
    print("✓ JSON sorted keys test passed")


def test_export_json_to_file():
    """Test JSON export into a new directory."""
    with tempfile.TemporaryDirectory() as tmpdir:
        output_path = Path(tmpdir) / "reports" / "ms.json"
        json_str = exporter.ReportExporter().export_json(_report(), str(output_path))

        assert output_path.exists()
        content = output_path.read_text(encoding="utf-8")
        assert content == json_str + "\n"
        assert json.loads(content)["kind"] == "ms"
    print("✓ JSON export to file test passed")


def test_export_json_unserializable():
    """Test that values JSON cannot encode raise ExportError."""
    try:
        exporter.ReportExporter().export_json(_Unserializable())
        assert False, "Should have raised ExportError"
    except exceptions.ExportError as e:
        assert "serialize" in e.message
    print("✓ JSON unserializable test passed")


def test_export_json_unwritable():
    """Test that an unwritable path raises ExportError."""
    with tempfile.TemporaryDirectory() as tmpdir:
        blocker = Path(tmpdir) / "file"
        blocker.write_text("", encoding="utf-8")
        try:
            exporter.ReportExporter().export_json(_report(), str(blocker / "report.json"))
            assert False, "Should have raised ExportError"
        except exceptions.ExportError as e:
            assert "Failed to export JSON" in e.message
    print("✓ JSON unwritable path test passed")


def test_export_text():
    """Test console rendering of nested reports."""
    text = exporter.ReportExporter().export_text(_report(), title="ms check")
    lines = text.splitlines()

    assert lines[1] == "ms check"
    assert "holds: True" in lines
    assert "mass: 99/100" in lines
    assert "pair: -" in lines
    assert "region: {1/4,1/4, 3/4,3/4}" in lines
    assert "parameters:" in lines
    assert "  delta: 1/10" in lines
    print("✓ Text export test passed")


def test_export_text_nested_lists():
    """Test rendering lists of dictionaries."""
    report = models.RobustnessReport(
        kind="strong",
        parameters={"eps": Fraction(1, 10)},
        holds=False,
        failures=[("1/2,1/2", 1)],
    )
    lines = exporter.ReportExporter().export_text(report).splitlines()

    index = lines.index("failures:")
    assert lines[index + 1] == "  -"
    assert lines[index + 2] == "    player: 1"
    assert lines[index + 3] == "    state: 1/2,1/2"
    print("✓ Text export nested lists test passed")


if __name__ == "__main__":
    test_export_json_to_stdout()
    test_export_json_sorted_keys()
    test_export_json_to_file()
    test_export_json_unserializable()
    test_export_json_unwritable()
    test_export_text()
    test_export_text_nested_lists()

    print("\n✓ All exporter tests passed!")
