import io
import json
from pathlib import Path

import pytest

from dcomplete.axioms import Axiom, AxiomId, check_axiom
from dcomplete.certify import certify
from dcomplete.exceptions import OutputFormatError
from dcomplete.formatters import (
    JsonFormatter,
    Report,
    TextFormatter,
    export_dot,
    get_formatter,
    to_jsonable,
)
from dcomplete.generators import gen_boolean_lattice, gen_dtd
from dcomplete.harness import ConjectureReport, TABLES, verify_row
from dcomplete.poset import build_poset
from dcomplete.structures import Vee, find_structures


def cube_report() -> Report:
    cube = gen_boolean_lattice(3)
    report = Report("check", source="cube.json", ok=False)
    report.add("certificate", certify(cube))
    report.add("failed_axioms", [check_axiom(cube, AxiomId(Axiom.D3MF))])
    return report


def test_report_to_dict() -> None:
    data = cube_report().to_dict()
    assert data["command"] == "check"
    assert data["ok"] is False
    assert data["source"] == "cube.json"
    assert data["certificate"]["d_complete"] is False
    assert data["failed_axioms"][0]["id"] == "D3MF"


def test_to_jsonable_handles_structures() -> None:
    assert to_jsonable(Vee("w", ("x", "y"))) == {
        "kind": "vee",
        "bottom": "w",
        "elbows": ["x", "y"],
    }
    assert to_jsonable({"b", "a"}) == ["a", "b"]
    assert to_jsonable(Path("x.json")) == "x.json"
    hits = find_structures(gen_dtd(4), "dk", 4)
    assert to_jsonable(hits)[0]["tail"] == ["a4", "a3"]


def test_json_formatter_is_deterministic() -> None:
    formatter = JsonFormatter()
    first = formatter.format(cube_report())
    assert first == formatter.format(cube_report())
    assert first.endswith("\n")
    assert json.loads(first)["certificate"]["k_max"] == 5


def test_json_formatter_compact() -> None:
    text = JsonFormatter(indent=0).format(Report("structures"))
    assert text == '{"command": "structures", "ok": true}\n'


def test_text_formatter_marks_failures() -> None:
    text = TextFormatter().format(cube_report())
    assert "CHECK: cube.json" in text
    assert "[X] not d-complete (k_max=5)" in text
    assert "[X] D3MF" in text
    assert "witness:" in text
    assert text.rstrip().endswith("[X] FAILED")


def test_text_formatter_hides_witnesses() -> None:
    text = TextFormatter(show_witnesses=False).format(cube_report())
    assert "witness:" not in text
    assert "counterexample:" not in text


def test_text_formatter_implication_and_conjecture_lines() -> None:
    report = Report("verify-theorems")
    report.add("table_1", [verify_row(TABLES["1"][0], [])])
    report.add("conjecture", ConjectureReport(posets_scanned=3, d3mc_posets=2))
    report.add("empty", [])
    text = TextFormatter().format(report)
    assert "[-] 1a" in text
    assert "VACUOUS" in text
    assert "consistent: no D3mC poset fails SS (2 D3mC of 3 scanned)" in text
    assert "(none)" in text
    assert text.rstrip().endswith("[+] OK")


def test_text_formatter_reports_vt_breaches() -> None:
    report = Report("verify-theorems", ok=False)
    search = ConjectureReport(posets_scanned=4, d3mc_posets=1, vt_breaches=[{}])
    report.add("conjecture", search)
    text = TextFormatter().format(report)
    assert "consistent: no D3mC poset fails SS" in text
    assert "[X] checker fault: 1 D3mC poset(s) fail VT" in text
    assert JsonFormatter().format(report).count('"vt_breaches"') == 1


def test_formatter_write(tmp_path: Path) -> None:
    formatter = JsonFormatter()
    path = tmp_path / "report.json"
    formatter.write(Report("check"), path)
    stream = io.StringIO()
    formatter.write(Report("check"), stream)
    assert path.read_text(encoding="utf-8") == stream.getvalue()


def test_get_formatter() -> None:
    assert isinstance(get_formatter("json"), JsonFormatter)
    assert isinstance(get_formatter("TEXT"), TextFormatter)
    with pytest.raises(OutputFormatError):
        get_formatter("csv")


def test_export_dot_layout() -> None:
    dot = export_dot(gen_dtd(3))
    assert dot == (
        "digraph poset {\n"
        "  rankdir=BT;\n"
        "  node [shape=circle];\n"
        '  "a3";\n'
        '  "b";\n'
        '  "c";\n'
        '  "f3";\n'
        '  "a3" -> "b";\n'
        '  "a3" -> "c";\n'
        '  "b" -> "f3";\n'
        '  "c" -> "f3";\n'
        "}\n"
    )


def test_export_dot_highlights_structures() -> None:
    p = gen_dtd(4)
    dot = export_dot(p, find_structures(p, "dk", 3))
    assert '"b" [style=filled, fillcolor="lightblue"];' in dot
    assert '"a4";' in dot
    assert '"a3" -> "b" [penwidth=2];' in dot
    assert '"a4" -> "a3";' in dot


def test_export_dot_empty_and_quoted_ids() -> None:
    assert export_dot(build_poset([], [])) == "digraph poset {\n}\n"
    dot = export_dot(build_poset(['say "hi"'], []))
    assert '"say \\"hi\\"";' in dot
