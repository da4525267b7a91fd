import json
from pathlib import Path

import pytest

from dcomplete.cli import RunConfig, main
from dcomplete.exceptions import ConfigurationError, InvalidKError
from dcomplete.generators import gen_boolean_lattice, gen_dtd
from dcomplete.parser import parse_json_text, posets_from_json, write_poset

DIAMOND_EDGES = "w x\nw y\nx z\ny z\n"


@pytest.fixture
def cache_dir(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    path = tmp_path / "cache"
    path.mkdir()
    monkeypatch.setenv("DCOMPLETE_CACHE_DIR", str(path))
    monkeypatch.setenv("DCOMPLETE_WORKERS", "1")
    return path


def write_cube(tmp_path: Path) -> Path:
    path = tmp_path / "cube.json"
    write_poset(gen_boolean_lattice(3), path)
    return path


def write_diamond(tmp_path: Path) -> Path:
    path = tmp_path / "diamond.edges"
    path.write_text(DIAMOND_EDGES, encoding="utf-8")
    return path


def test_cli_help_exits_zero() -> None:
    with pytest.raises(SystemExit) as excinfo:
        main(["--help"])
    assert excinfo.value.code == 0


def test_cli_version_exits_zero() -> None:
    with pytest.raises(SystemExit) as excinfo:
        main(["--version"])
    assert excinfo.value.code == 0


def test_cli_without_command_prints_help(capsys: pytest.CaptureFixture[str]) -> None:
    assert main([]) == 2
    assert "verify-theorems" in capsys.readouterr().out


def test_run_config_validation() -> None:
    RunConfig("check", input_file="x.json").validate()
    with pytest.raises(ConfigurationError):
        RunConfig("check", verbose=True, quiet=True).validate()
    with pytest.raises(InvalidKError):
        RunConfig("check", k_min=2, k_max=2).validate()
    with pytest.raises(ConfigurationError):
        RunConfig("axioms", k_min=5, k_max=3).validate()
    with pytest.raises(ConfigurationError):
        RunConfig("verify-theorems", rows=("a",)).validate()
    with pytest.raises(ConfigurationError):
        RunConfig("check", criterion="ComboZ").validate()
    with pytest.raises(ConfigurationError):
        RunConfig("axioms", axiom="D9XY").validate()


def test_run_config_k_range() -> None:
    assert RunConfig("axioms").k_range == range(3, 4)
    assert RunConfig("axioms", k_min=4).k_range == range(4, 5)
    assert RunConfig("axioms", k_max=5).k_range == range(3, 6)
    assert RunConfig("axioms", k_min=4, k_max=6).k_range == range(4, 7)


def test_check_d_complete_poset(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    assert main(["check", str(write_diamond(tmp_path)), "-q"]) == 0
    out = capsys.readouterr().out
    assert "[+]" in out
    assert out.rstrip().endswith("[+] OK")


def test_check_cube_fails_with_witness(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    assert main(["check", str(write_cube(tmp_path)), "-q"]) == 1
    out = capsys.readouterr().out
    assert "[X] D3MF" in out
    assert "witness:" in out


def test_check_json_certificate(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    assert main(["check", str(write_cube(tmp_path)), "--json", "-q"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["certificate"]["d_complete"] is False
    assert data["certificate"]["k_max"] == 5
    assert data["certificate"]["agreement"] is True
    assert "D3MF" in [r["id"] for r in data["failed_axioms"]]


def test_check_single_criterion(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    path = write_cube(tmp_path)
    assert main(["check", str(path), "--criterion", "ComboA", "--json", "-q"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"]["verdict"] is False

    dtd = tmp_path / "dtd4.json"
    write_poset(gen_dtd(4), dtd)
    assert main(["check", str(dtd), "--criterion", "C", "--k", "4", "-q"]) == 0


def test_check_rejects_cyclic_input(tmp_path: Path) -> None:
    path = tmp_path / "cycle.json"
    path.write_text(
        '{"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}',
        encoding="utf-8",
    )
    assert main(["check", str(path), "-q"]) == 2


def test_check_rejects_missing_file(tmp_path: Path) -> None:
    assert main(["check", str(tmp_path / "missing.json"), "-q"]) == 2


def test_check_rejects_verbose_and_quiet(tmp_path: Path) -> None:
    assert main(["check", str(write_diamond(tmp_path)), "-v", "-q"]) == 2


def test_check_writes_output_file(tmp_path: Path) -> None:
    out = tmp_path / "certificate.json"
    code = main(["check", str(write_diamond(tmp_path)), "--json", "-o", str(out), "-q"])
    assert code == 0
    assert json.loads(out.read_text(encoding="utf-8"))["ok"] is True


def test_axioms_single_and_all(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    path = write_cube(tmp_path)
    assert main(["axioms", str(path), "--axiom", "UT", "-q"]) == 0
    capsys.readouterr()

    assert main(["axioms", str(path), "--axiom", "d3mf", "--json", "-q"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["reports"][0]["id"] == "D3MF"

    assert main(["axioms", str(path), "--all", "--json", "-q"]) == 1
    data = json.loads(capsys.readouterr().out)
    by_id = {r["id"]: r["verdict"] for r in data["reports"]}
    assert by_id["D3MF"] is False
    assert by_id["UT"] is True


def test_axioms_requires_selection(tmp_path: Path) -> None:
    with pytest.raises(SystemExit) as excinfo:
        main(["axioms", str(write_cube(tmp_path))])
    assert excinfo.value.code == 2


def test_structures_json(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "dtd4.json"
    write_poset(gen_dtd(4), path)
    assert main(["structures", str(path), "--kind", "dk", "--k", "4", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["kind"] == "dk"
    assert data["k_min"] == data["k_max"] == 4
    assert data["counts"] == {"4": 1}
    assert data["count"] == len(data["structures"]) >= 1
    assert data["structures"][0]["tail"] == ["a4", "a3"]


def test_structures_over_k_range(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    path = tmp_path / "dtd5.json"
    write_poset(gen_dtd(5), path)
    args = ["structures", str(path), "--kind", "dk", "--k-min", "3", "--k-max", "5"]
    assert main(args + ["--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["counts"] == {"3": 1, "4": 1, "5": 1}
    assert [hit["k"] for hit in data["structures"]] == [3, 4, 5]


def test_axioms_over_k_range(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = write_cube(tmp_path)
    args = ["axioms", str(path), "--all", "--k-min", "3", "--k-max", "5", "--json", "-q"]
    assert main(args) == 1
    ids = [r["id"] for r in json.loads(capsys.readouterr().out)["reports"]]
    assert {"DkMF[k=3]", "DkMF[k=4]", "DkMF[k=5]"} <= set(ids)
    assert ids.count("D3MF") == 1
    assert len(ids) == len(set(ids))


def test_k_range_rejects_bad_bounds(tmp_path: Path) -> None:
    path = str(write_cube(tmp_path))
    assert main(["axioms", path, "--all", "--k-min", "5", "--k-max", "3", "-q"]) == 2
    assert main(["axioms", path, "--all", "--k-min", "2", "-q"]) == 2
    assert main(["axioms", path, "--all", "--k", "4", "--k-min", "3", "-q"]) == 2


def test_generate_dtd_to_file(tmp_path: Path) -> None:
    out = tmp_path / "dtd4.json"
    assert main(["generate", "dtd", "4", "-o", str(out), "-q"]) == 0
    assert parse_json_text(out.read_text(encoding="utf-8")) == gen_dtd(4)


def test_generate_shifted_to_stdout(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["generate", "shifted", "3,1", "-q"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["elements"]) == 4


def test_generate_rejects_bad_arguments() -> None:
    assert main(["generate", "dtd", "2", "-q"]) == 2
    assert main(["generate", "dtd", "four", "-q"]) == 2
    assert main(["generate", "shape", "1,3", "-q"]) == 2


def test_generate_enum_to_directory(tmp_path: Path, cache_dir: Path) -> None:
    out_dir = tmp_path / "corpus"
    assert main(["generate", "enum", "3", "-O", str(out_dir), "-q"]) == 0
    names = sorted(p.name for p in out_dir.iterdir())
    assert names == [f"enum-{i:04d}.json" for i in range(5)]


def test_generate_random_corpus(capsys: pytest.CaptureFixture[str]) -> None:
    args = ["generate", "random", "6", "--count", "3", "--seed", "7", "-q"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert len(posets_from_json(first)) == 3
    assert main(args) == 0
    assert capsys.readouterr().out == first


def test_export_dot(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "dtd3.json"
    write_poset(gen_dtd(3), path)
    assert main(["export-dot", str(path), "--highlight", "diamond"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph poset {")
    assert "fillcolor" in out


def test_verify_theorems_table(
    cache_dir: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    code = main(["verify-theorems", "--table", "1", "--n-max", "3", "--json", "-q"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["ok"] is True
    assert data["n_max"] == 3
    assert data["corpus_size"] == 1 + 1 + 2 + 5
    assert all(row["status"] != "VIOLATED" for row in data["table_1"])
    assert "lemmas" not in data
    assert (cache_dir / "posets-n3.json").is_file()


def test_verify_theorems_sections(
    cache_dir: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    code = main(
        ["verify-theorems", "--agreement", "--conjecture", "--n-max", "4", "--json", "-q"]
    )
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["agreement"]["ok"] is True
    assert data["conjecture"]["status"] == "consistent"
    assert not any(key.startswith("table_") for key in data)


def test_verify_theorems_rejects_unknown_rows(cache_dir: Path) -> None:
    args = ["verify-theorems", "--table", "3", "--rows", "z", "--n-max", "2", "-q"]
    assert main(args) == 2


def test_verify_theorems_rows_need_one_table(cache_dir: Path) -> None:
    assert main(["verify-theorems", "--rows", "a", "--n-max", "2", "-q"]) == 2
