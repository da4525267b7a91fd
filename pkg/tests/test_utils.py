import logging
from pathlib import Path

import pytest

from dcomplete.exceptions import (
    ConfigurationError,
    EnumerationCapError,
    FileValidationError,
)
from dcomplete.generators import gen_chain
from dcomplete.parser import posets_from_json, posets_to_json
from dcomplete.utils import (
    cache_dir_from_env,
    corpus_cache_path,
    detect_format,
    enum_cap_from_env,
    load_corpus,
    load_level,
    progress_bar,
    validate_output_dir,
    validate_poset_file,
    workers_from_env,
)


def test_validate_poset_file_rejects_missing_input(tmp_path: Path) -> None:
    with pytest.raises(FileValidationError):
        validate_poset_file(tmp_path / "missing.json")


def test_validate_poset_file_rejects_directory(tmp_path: Path) -> None:
    with pytest.raises(FileValidationError):
        validate_poset_file(tmp_path)


def test_detect_format() -> None:
    assert detect_format(Path("diamond.json")) == "json"
    assert detect_format(Path("cube.EDGES")) == "edgelist"
    assert detect_format(Path("poset.txt")) == "edgelist"
    with pytest.raises(FileValidationError):
        detect_format(Path("poset.csv"))


def test_validate_output_dir_creates_directory(tmp_path: Path) -> None:
    out_dir = tmp_path / "nested" / "out"
    validate_output_dir(out_dir)
    assert out_dir.is_dir()


def test_validate_output_dir_rejects_file(tmp_path: Path) -> None:
    p = tmp_path / "file.txt"
    p.write_text("x", encoding="utf-8")
    with pytest.raises(FileValidationError):
        validate_output_dir(p)


def test_env_defaults(monkeypatch: pytest.MonkeyPatch) -> None:
    for name in ("DCOMPLETE_ENUM_CAP", "DCOMPLETE_WORKERS", "DCOMPLETE_CACHE_DIR"):
        monkeypatch.delenv(name, raising=False)
    assert enum_cap_from_env() == 8
    assert workers_from_env() == 1
    assert cache_dir_from_env() is None


def test_env_overrides(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    monkeypatch.setenv("DCOMPLETE_ENUM_CAP", "5")
    monkeypatch.setenv("DCOMPLETE_WORKERS", "3")
    monkeypatch.setenv("DCOMPLETE_CACHE_DIR", str(tmp_path))
    assert enum_cap_from_env() == 5
    assert workers_from_env() == 3
    assert cache_dir_from_env() == tmp_path


@pytest.mark.parametrize(
    "name,value",
    [
        ("DCOMPLETE_ENUM_CAP", "eight"),
        ("DCOMPLETE_ENUM_CAP", "-1"),
        ("DCOMPLETE_WORKERS", "0"),
    ],
)
def test_env_rejects_bad_values(
    monkeypatch: pytest.MonkeyPatch, name: str, value: str
) -> None:
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigurationError):
        enum_cap_from_env() if name == "DCOMPLETE_ENUM_CAP" else workers_from_env()


def test_load_level_writes_and_reuses_cache(tmp_path: Path) -> None:
    posets = load_level(3, cap=8, cache_dir=tmp_path)
    path = corpus_cache_path(tmp_path, 3)
    assert path.name == "posets-n3.json"
    assert path.is_file()
    assert len(posets) == 5
    assert load_level(3, cap=8, cache_dir=tmp_path) == posets


def test_load_level_rebuilds_bad_cache(tmp_path: Path) -> None:
    corpus_cache_path(tmp_path, 2).write_text("not json", encoding="utf-8")
    assert len(load_level(2, cap=8, cache_dir=tmp_path)) == 2

    corpus_cache_path(tmp_path, 3).write_text(
        posets_to_json([gen_chain(2)]), encoding="utf-8"
    )
    assert len(load_level(3, cap=8, cache_dir=tmp_path)) == 5


def test_load_level_rebuilds_short_cache(
    tmp_path: Path, caplog: pytest.LogCaptureFixture
) -> None:
    posets = load_level(3, cap=8, cache_dir=tmp_path)
    path = corpus_cache_path(tmp_path, 3)
    path.write_text(posets_to_json(posets[:2]), encoding="utf-8")
    with caplog.at_level(logging.WARNING, logger="dcomplete.utils"):
        assert load_level(3, cap=8, cache_dir=tmp_path) == posets
    assert "holds 2 poset(s), expected 5" in caplog.text
    assert len(posets_from_json(path.read_text(encoding="utf-8"))) == 5
    assert [p.name for p in tmp_path.iterdir()] == ["posets-n3.json"]


def test_load_level_respects_cap(tmp_path: Path) -> None:
    with pytest.raises(EnumerationCapError):
        load_level(5, cap=4, cache_dir=tmp_path)


def test_load_level_reads_cap_from_env(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv("DCOMPLETE_CACHE_DIR", raising=False)
    monkeypatch.setenv("DCOMPLETE_ENUM_CAP", "2")
    with pytest.raises(EnumerationCapError):
        load_level(3)


def test_load_corpus(tmp_path: Path) -> None:
    corpus = load_corpus(4, cap=8, cache_dir=tmp_path)
    assert len(corpus) == 1 + 1 + 2 + 5 + 16
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        f"posets-n{n}.json" for n in range(5)
    ]


def test_progress_bar(capsys: pytest.CaptureFixture[str]) -> None:
    progress_bar(1, 4, "posets", width=8)
    progress_bar(4, 4, "posets", width=8)
    err = capsys.readouterr().err
    assert "[==------] 25.0% (1/4) posets" in err
    assert "[========] 100.0% (4/4) posets" in err
    assert err.endswith("\n")
