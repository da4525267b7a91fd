from pathlib import Path

import pytest

from dcomplete.axioms import Axiom, AxiomReport, Property, check_axiom
from dcomplete.enumeration import exhaustive_corpus
from dcomplete.generators import gen_boolean_lattice, gen_dtd
from dcomplete.harness import (
    LEMMA_ROWS,
    NEGATIVE_CONTROLS,
    TABLES,
    ImplicationRow,
    Realm,
    Term,
    at_k_truth_table,
    search_conjecture1,
    search_ss_counterexamples,
    select_rows,
    verify_agreement,
    verify_consequences,
    verify_corollaries,
    verify_lemmas,
    verify_row,
    verify_rows,
    verify_table,
)
from dcomplete.poset import build_poset


def crowded_diamond():
    return build_poset(
        ["w", "x", "y", "u", "z"],
        [("w", "x"), ("w", "y"), ("w", "u"), ("x", "z"), ("y", "z"), ("u", "z")],
    )


def test_term_and_row_labels() -> None:
    assert Term(Axiom.DkmCF, Realm.ALL_H).label == "DkmCF(h<=k)"
    assert Term(Axiom.NODkm, offset=1).label == "NODkm[k+1]"
    row = ImplicationRow("x", (Term(Axiom.VT),), (Term(Property.UPUE),))
    assert row.label == "VT => UPUE"


def test_select_rows() -> None:
    assert [row.tag for row in select_rows("3", ["a", "3c"])] == ["3a", "3c"]
    assert select_rows("1") == TABLES["1"]
    with pytest.raises(KeyError):
        select_rows("3", ["z"])


def test_negative_controls_are_falsified() -> None:
    corpus = [crowded_diamond(), gen_dtd(3)]
    for row in NEGATIVE_CONTROLS:
        result = verify_row(row, corpus)
        assert result.status == "FALSIFIED", row.tag
        assert result.ok
        assert result.violations[0].poset == crowded_diamond().to_dict()


def test_empty_corpus_is_vacuous() -> None:
    result = verify_row(TABLES["1"][0], [])
    assert result.status == "VACUOUS"
    assert result.ok


def test_violated_row_is_reported() -> None:
    row = ImplicationRow("bogus", (Term(Axiom.D3mC),), (Term(Property.NTC),))
    result = verify_row(row, [gen_boolean_lattice(3)])
    assert result.status == "VIOLATED"
    assert not result.ok
    assert result.violations[0].failed == ["NTC"]


@pytest.mark.parametrize("table", sorted(TABLES))
def test_tables_hold_on_small_posets(table: str) -> None:
    corpus = exhaustive_corpus(5) + [gen_dtd(4), gen_dtd(5)]
    for result in verify_table(table, corpus):
        assert result.ok, (result.row.tag, result.violations[:1])


def test_lemmas_and_corollaries_hold_on_small_posets() -> None:
    corpus = exhaustive_corpus(5) + [gen_dtd(5)]
    for result in verify_lemmas(corpus) + verify_corollaries(corpus):
        assert result.ok, (result.row.tag, result.status)


def test_parallel_verification_matches_serial() -> None:
    corpus = exhaustive_corpus(4)
    rows = TABLES["1"]
    serial = verify_rows(rows, corpus, workers=1)
    parallel = verify_rows(rows, corpus, workers=2)
    assert [r.to_dict() for r in serial] == [r.to_dict() for r in parallel]


def test_progress_callback_reaches_total() -> None:
    calls = []
    verify_rows(TABLES["2"], exhaustive_corpus(3), progress=lambda *a: calls.append(a))
    assert calls
    done, total, label = calls[-1]
    assert done == total
    assert label == "chunks"


def test_agreement_and_consequences_on_small_posets() -> None:
    corpus = exhaustive_corpus(4)
    assert verify_agreement(corpus).ok
    audit = verify_consequences(corpus + [gen_dtd(4)])
    assert audit.ok, audit.failures[:1]
    assert audit.checks["d_complete_posets"] > 0


def test_ss_search_is_consistent_on_small_posets() -> None:
    report = search_ss_counterexamples(exhaustive_corpus(5))
    assert report.status == "consistent"
    assert report.d3mc_posets > 0
    assert report.to_dict()["counterexamples"] == []


def test_vt_failure_is_kept_apart_from_discoveries(monkeypatch: pytest.MonkeyPatch) -> None:
    def broken_vt(p, axiom_id):
        if axiom_id.name is Axiom.VT:
            return AxiomReport(axiom_id, False)
        return check_axiom(p, axiom_id)

    monkeypatch.setattr("dcomplete.harness.check_axiom", broken_vt)
    report = search_ss_counterexamples([gen_dtd(3)])
    assert report.status == "consistent"
    assert report.counterexamples == []
    assert len(report.vt_breaches) == 1
    assert not report.ok


def test_search_conjecture1_loads_the_corpus(tmp_path: Path) -> None:
    report = search_conjecture1(4, cap=8, cache_dir=tmp_path)
    assert report.status == "consistent"
    assert report.ok
    assert report.posets_scanned == 1 + 1 + 2 + 5 + 16


def test_verify_lemmas_caps_k() -> None:
    (att1,) = [row for row in LEMMA_ROWS if row.tag == "ATT1"]
    corpus = [gen_dtd(5)]
    assert verify_row(att1, corpus).hypothesis_hits == 3
    capped = {r.row.tag: r for r in verify_lemmas(corpus, k_max=3)}
    assert capped["ATT1"].hypothesis_hits == 1
    assert capped["ATT1"].ok


def test_at_k_truth_table_respects_single_k_implications() -> None:
    table = at_k_truth_table(exhaustive_corpus(5), 3)
    assert table["Kokyuroku"]["ComboC"] == 0
    assert table["ComboA"]["ComboC"] == 0
    assert table["ComboB"]["ComboD"] == 0
    assert table["ComboD"]["Kokyuroku"] == 0
    assert "ComboA" not in table["ComboA"]


@pytest.mark.slow
def test_tables_hold_on_seven_elements() -> None:
    corpus = exhaustive_corpus(7)
    for table in sorted(TABLES):
        for result in verify_table(table, corpus, workers=2):
            assert result.ok, result.row.tag
