"""Output formatters for verdicts, structure lists and harness runs.

Every subcommand collects its results into a :class:`Report`; a formatter
turns the report into text. JSON output is deterministic for a fixed input
so that identical runs produce byte-identical files. DOT export renders a
Hasse diagram with covers pointing upward.
"""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, TextIO, Union

from .axioms import AxiomReport
from .certify import AuditReport, Certificate
from .exceptions import OutputFormatError
from .harness import ConjectureReport, ImplicationResult
from .poset import Poset
from .structures import DkMinusSet, Vee, structure_to_dict

SYMBOL_SUCCESS = "[+]"
SYMBOL_FAILURE = "[X]"
SYMBOL_SKIPPED = "[-]"

HIGHLIGHT_COLORS = ("lightblue", "lightsalmon", "palegreen", "khaki", "plum", "lightgrey")


@dataclass
class Report:
    """Results of one subcommand, in named sections.

    Section values may be any result object with a ``to_dict`` method,
    lists of such objects, or plain JSON data.
    """

    command: str
    source: Optional[str] = None
    sections: Dict[str, Any] = field(default_factory=dict)
    ok: bool = True

    def add(self, name: str, value: Any) -> None:
        self.sections[name] = value

    def to_dict(self) -> Dict[str, Any]:
        output: Dict[str, Any] = {"command": self.command, "ok": self.ok}
        if self.source is not None:
            output["source"] = self.source
        for name, value in self.sections.items():
            output[name] = to_jsonable(value)
        return output


def to_jsonable(value: Any) -> Any:
    """Recursively convert result objects to JSON-ready data."""
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, Poset):
        return value.to_dict()
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    if isinstance(value, Vee) or (
        isinstance(value, tuple) and len(value) == 2 and isinstance(value[0], DkMinusSet)
    ):
        return structure_to_dict(value)
    if isinstance(value, dict):
        return {str(to_jsonable(k)): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (set, frozenset)):
        return sorted(to_jsonable(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return str(value)


class Formatter(ABC):
    """Base class for output formatters."""

    @abstractmethod
    def format(self, report: Report) -> str:
        """Format a report to string."""
        pass

    def write(self, report: Report, output: Union[Path, TextIO]) -> None:
        """Write formatted output to file or stream."""
        content = self.format(report)
        if isinstance(output, Path):
            output.write_text(content, encoding="utf-8")
        else:
            output.write(content)


class JsonFormatter(Formatter):
    """JSON output formatter."""

    def __init__(self, indent: int = 2, ensure_ascii: bool = False):
        """Initialize JSON formatter.

        Args:
            indent: Indentation level (0 for compact).
            ensure_ascii: If True, escape non-ASCII characters.
        """
        self.indent = indent if indent > 0 else None
        self.ensure_ascii = ensure_ascii

    def format(self, report: Report) -> str:
        return (
            json.dumps(
                report.to_dict(),
                indent=self.indent,
                ensure_ascii=self.ensure_ascii,
                default=self._json_default,
            )
            + "\n"
        )

    @staticmethod
    def _json_default(obj: Any) -> Any:
        """Handle non-serializable types."""
        if isinstance(obj, Path):
            return str(obj)
        if isinstance(obj, (set, frozenset)):
            return sorted(obj)
        raise TypeError(f"Object of type {type(obj)} is not JSON serializable")


class TextFormatter(Formatter):
    """Human-readable verdict lines using the [+] / [X] / [-] markers."""

    def __init__(self, width: int = 60, show_witnesses: bool = True):
        self.width = width
        self.show_witnesses = show_witnesses

    def format(self, report: Report) -> str:
        lines: List[str] = []
        header = report.command.upper()
        if report.source:
            header += f": {report.source}"
        lines += ["=" * self.width, header, "=" * self.width]
        for name, value in report.sections.items():
            lines.append(f"{name}:")
            lines += ["  " + line for line in self._render(value)]
        lines.append("=" * self.width)
        symbol = SYMBOL_SUCCESS if report.ok else SYMBOL_FAILURE
        lines.append(f"{symbol} {'OK' if report.ok else 'FAILED'}")
        return "\n".join(lines) + "\n"

    def _render(self, value: Any) -> List[str]:
        if isinstance(value, Certificate):
            return self._certificate(value)
        if isinstance(value, AxiomReport):
            return self._axiom_report(value)
        if isinstance(value, ImplicationResult):
            return [self._implication(value)]
        if isinstance(value, AuditReport):
            return self._audit(value)
        if isinstance(value, ConjectureReport):
            return self._conjecture(value)
        if isinstance(value, Vee) or (
            isinstance(value, tuple) and len(value) == 2 and isinstance(value[0], DkMinusSet)
        ):
            return [self._compact(value)]
        if isinstance(value, (list, tuple)):
            if not value:
                return ["(none)"]
            lines: List[str] = []
            for item in value:
                lines += self._render(item)
            return lines
        if isinstance(value, dict):
            return [f"{k}: {self._compact(v)}" for k, v in value.items()]
        if isinstance(value, (str, int, float, bool)) or value is None:
            return [str(value)]
        return [self._compact(value)]

    def _compact(self, value: Any) -> str:
        return json.dumps(to_jsonable(value), separators=(",", ":"), sort_keys=False)

    def _axiom_report(self, report: AxiomReport) -> List[str]:
        symbol = SYMBOL_SUCCESS if report.verdict else SYMBOL_FAILURE
        lines = [f"{symbol} {report.label}"]
        if not report.verdict and report.witness and self.show_witnesses:
            lines.append(f"    witness: {self._compact(report.witness)}")
        return lines

    def _certificate(self, certificate: Certificate) -> List[str]:
        symbol = SYMBOL_SUCCESS if certificate.d_complete else SYMBOL_FAILURE
        verdict = "d-complete" if certificate.d_complete else "not d-complete"
        lines = [
            f"{symbol} {verdict} (k_max={certificate.k_max})",
            f"poset: {certificate.poset_hash}",
        ]
        for criterion, result in certificate.per_criterion.items():
            mark = SYMBOL_SUCCESS if result.verdict else SYMBOL_FAILURE
            lines.append(f"{mark} {criterion.value}")
            if result.counterexample and self.show_witnesses:
                lines.append(f"    counterexample: {self._compact(result.counterexample)}")
        if not certificate.agreement:
            lines.append(f"{SYMBOL_FAILURE} criteria disagree")
        return lines

    def _implication(self, result: ImplicationResult) -> str:
        if result.status == "VACUOUS":
            symbol = SYMBOL_SKIPPED
        else:
            symbol = SYMBOL_SUCCESS if result.ok else SYMBOL_FAILURE
        return (
            f"{symbol} {result.row.tag:<20} {result.status:<11} "
            f"hits={result.hypothesis_hits} violations={result.violation_count}"
        )

    def _audit(self, audit: AuditReport) -> List[str]:
        symbol = SYMBOL_SUCCESS if audit.ok else SYMBOL_FAILURE
        total = sum(audit.checks.values())
        lines = [f"{symbol} {audit.name}: {total} check(s), {len(audit.failures)} failure(s)"]
        for failure in audit.failures[:5]:
            lines.append(f"    {self._compact(failure)}")
        return lines

    def _conjecture(self, report: ConjectureReport) -> List[str]:
        if report.counterexamples:
            lines = [
                f"{SYMBOL_FAILURE} DISCOVERY: {len(report.counterexamples)} D3mC poset(s) "
                "failing SS"
            ] + [f"    {self._compact(hit)}" for hit in report.counterexamples]
        else:
            lines = [
                f"{SYMBOL_SUCCESS} consistent: no D3mC poset fails SS "
                f"({report.d3mc_posets} D3mC of {report.posets_scanned} scanned)"
            ]
        if report.vt_breaches:
            lines.append(
                f"{SYMBOL_FAILURE} checker fault: {len(report.vt_breaches)} D3mC poset(s) fail VT"
            )
        return lines


def get_formatter(format_name: str, **kwargs: Any) -> Formatter:
    """Get formatter instance by name.

    Args:
        format_name: One of 'json', 'text'.
        **kwargs: Passed to the formatter constructor.

    Raises:
        OutputFormatError: If the format is unknown.
    """
    formatters = {
        "json": JsonFormatter,
        "text": TextFormatter,
    }
    formatter_class = formatters.get(format_name.lower())
    if not formatter_class:
        raise OutputFormatError(
            f"Unknown format: {format_name}. Use: {', '.join(formatters)}", format_name
        )
    return formatter_class(**kwargs)


# ----------------------------------------------------------------------
# DOT


def _quote(element: str) -> str:
    return '"' + element.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _hit_members(hit: Any) -> List[str]:
    if isinstance(hit, tuple) and len(hit) == 2 and hasattr(hit[0], "members"):
        return sorted(hit[0].members | hit[1].members)
    return sorted(hit.members)


def export_dot(p: Poset, highlights: Optional[Sequence[Any]] = None) -> str:
    """Render the Hasse diagram as a DOT digraph, maximal elements on top.

    Each highlighted structure gets its own fill colour; an element in
    several structures takes the colour of the first. Covers inside a
    highlighted structure are drawn bold.
    """
    if not p.n:
        return "digraph poset {\n}\n"

    colors: Dict[str, str] = {}
    for number, hit in enumerate(highlights or ()):
        color = HIGHLIGHT_COLORS[number % len(HIGHLIGHT_COLORS)]
        for element in _hit_members(hit):
            colors.setdefault(element, color)

    lines = ["digraph poset {", "  rankdir=BT;", "  node [shape=circle];"]
    for element in p.elements:
        if element in colors:
            lines.append(
                f'  {_quote(element)} [style=filled, fillcolor="{colors[element]}"];'
            )
        else:
            lines.append(f"  {_quote(element)};")
    for i, j in p.cover_pairs():
        lower, upper = p.elements[i], p.elements[j]
        edge = f"  {_quote(lower)} -> {_quote(upper)}"
        if lower in colors and colors.get(upper) == colors[lower]:
            edge += " [penwidth=2]"
        lines.append(edge + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"
