"""Report exporter for coopkit."""

import json
import sys
from pathlib import Path
from typing import Any, Optional

from coopkit import exceptions
from coopkit import logger


class ReportExporter:
    """Exporter for analysis reports.

    Handles exporting any report with a ``to_dict`` method as JSON or as
    console text. JSON output is deterministic: keys sorted, states sorted
    and rationals in canonical "p/q" form.
    """

    def __init__(self):
        """Initialize exporter."""
        self._log = logger.get_logger()

    def export_json(self, report: Any, output_path: Optional[str] = None) -> str:
        """Export a report as JSON.

        Args:
            report: Report object to export.
            output_path: Optional file path to save JSON. If None, the JSON is
                printed to stdout.

        Returns:
            JSON string representation of the report.

        Raises:
            ExportError: If serialization or file writing fails.
        """
        try:
            self._log.debug("Converting report to dictionary")
            report_dict = report.to_dict()

            self._log.debug("Serializing report to JSON")
            json_str = json.dumps(report_dict, ensure_ascii=False, indent=2, sort_keys=True)

            if output_path:
                self._log.info("Writing JSON to file: %s", output_path)
                output_file = Path(output_path)
                output_file.parent.mkdir(parents=True, exist_ok=True)
                output_file.write_text(json_str + "\n", encoding="utf-8")
                self._log.debug("JSON successfully written to: %s", output_path)
            else:
                self._log.debug("Outputting JSON to stdout")
                print(json_str)

            return json_str

        except (OSError, IOError) as e:
            self._log.error("Failed to export JSON: %s", e, exc_info=True)
            raise exceptions.ExportError("Failed to export JSON: %s" % e) from e
        except (TypeError, ValueError) as e:
            self._log.error("Failed to serialize report to JSON: %s", e, exc_info=True)
            raise exceptions.ExportError("Failed to serialize report to JSON: %s" % e) from e

    def export_text(self, report: Any, title: str = "coopkit report") -> str:
        """Display a report in the console.

        Nested dictionaries are indented; lists of scalars are joined on one
        line.

        Args:
            report: Report object to display.
            title: Banner title.

        Returns:
            The rendered text.
        """
        self._log.info("Exporting report to console")
        lines = ["=" * 40, title, "=" * 40, ""]
        self._render(report.to_dict(), 0, lines)
        lines += ["", "=" * 40]
        text = "\n".join(lines)
        print(text)

        # Flush output to ensure immediate display
        sys.stdout.flush()

        self._log.debug("Console export completed")
        return text

    def _render(self, value: Any, depth: int, lines: list) -> None:
        indent = "  " * depth
        if isinstance(value, dict):
            for key in sorted(value):
                item = value[key]
                if isinstance(item, (dict, list)) and not _flat(item):
                    lines.append("%s%s:" % (indent, key))
                    self._render(item, depth + 1, lines)
                else:
                    lines.append("%s%s: %s" % (indent, key, _scalar(item)))
        elif isinstance(value, list):
            for item in value:
                if isinstance(item, (dict, list)) and not _flat(item):
                    lines.append("%s-" % indent)
                    self._render(item, depth + 1, lines)
                else:
                    lines.append("%s- %s" % (indent, _scalar(item)))
        else:
            lines.append("%s%s" % (indent, _scalar(value)))


def _flat(value: Any) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value)


def _scalar(value: Any) -> str:
    if isinstance(value, list):
        return "{%s}" % ", ".join(str(v) for v in value)
    if value is None:
        return "-"
    return str(value)
