import pytest

from dcomplete.certify import (
    Criterion,
    CriterionAt,
    certify,
    combo_holds_at,
    consequence_suite,
    filter_closure_check,
    is_d_complete,
    is_dk_complete_kokyuroku,
    is_dleqk_complete,
    iter_filters,
    k_max,
    neck_tail_audit,
)
from dcomplete.exceptions import NotDCompleteError
from dcomplete.generators import (
    Partition,
    gen_antichain,
    gen_boolean_lattice,
    gen_chain,
    gen_dtd,
    gen_random_tree,
    gen_shape,
    gen_shifted_shape,
)
from dcomplete.poset import build_poset, disjoint_union


def diamond():
    return build_poset(
        ["w", "x", "y", "z"], [("w", "x"), ("w", "y"), ("x", "z"), ("y", "z")]
    )


def criss_cross_with_top():
    return build_poset(
        ["a", "b", "x", "y", "t"],
        [("a", "x"), ("a", "y"), ("b", "x"), ("b", "y"), ("x", "t"), ("y", "t")],
    )


def forked_diamond():
    return build_poset(
        ["w", "v", "u", "x", "y", "z"],
        [("w", "u"), ("v", "u"), ("u", "x"), ("u", "y"), ("x", "z"), ("y", "z")],
    )


def test_criterion_parse() -> None:
    assert Criterion.parse("Kokyuroku") is Criterion.KOKYUROKU
    assert Criterion.parse("comboc") is Criterion.COMBO_C
    assert Criterion.parse("B") is Criterion.COMBO_B
    with pytest.raises(ValueError):
        Criterion.parse("ComboE")


def test_k_max() -> None:
    assert k_max(build_poset([], [])) == 3
    assert k_max(diamond()) == 3
    assert k_max(gen_dtd(5)) == 5


def test_criterion_labels() -> None:
    assert CriterionAt(Criterion.COMBO_A, 4).label == "ComboA[k=4]"
    assert CriterionAt(Criterion.COMBO_A, 5, upto=True).label == "ComboA[k<=5]"


def test_diamond_is_d_complete_under_every_criterion() -> None:
    certificate = certify(diamond())
    assert certificate.d_complete
    assert certificate.agreement
    assert certificate.k_max == 3
    assert certificate.per_k == {3: {c: True for c in Criterion}}
    assert all(certificate.verdict_for(c) for c in Criterion)


def test_cube_is_rejected_with_max_free_witness() -> None:
    certificate = certify(gen_boolean_lattice(3), strict=True)
    assert not certificate.d_complete
    assert certificate.agreement

    combo_a = certificate.per_criterion[Criterion.COMBO_A].counterexample
    assert combo_a["k"] == 3
    assert combo_a["violation"]["axiom"] == "DkMF[k=3]"
    assert combo_a["violation"]["violation"]["extra_covered"] == ["bc"]

    kokyuroku = certificate.per_criterion[Criterion.KOKYUROKU].counterexample
    assert kokyuroku["violation"]["kind"] == "uncompleted"
    assert kokyuroku["violation"]["set"]["tail"] == ["a"]


def test_criss_cross_with_top_fails_on_overlap_and_shared_max() -> None:
    p = criss_cross_with_top()
    assert combo_holds_at(p, Criterion.COMBO_A, 3).witness["axiom"] == "NODkm[k=3]"
    assert combo_holds_at(p, Criterion.COMBO_B, 3).witness["axiom"] == "DkMD[k=3]"
    report = is_dk_complete_kokyuroku(p, 3)
    assert report.witness["kind"] == "shared_cover"
    assert report.witness["z"] == "t"
    assert certify(p, strict=True).agreement


def test_failure_at_k4_only() -> None:
    p = forked_diamond()
    for criterion in Criterion:
        assert combo_holds_at(p, criterion, 3).verdict
        report = is_d_complete(p, criterion)
        assert not report.verdict
        assert report.witness["k"] == 4


def test_dtd_is_dleqk_complete() -> None:
    p = gen_dtd(4)
    report = is_dleqk_complete(p, 4, Criterion.COMBO_C)
    assert report.verdict
    assert report.label == "ComboC[k<=4]"
    assert is_d_complete(p).verdict


def test_families_are_d_complete() -> None:
    family = [
        gen_chain(0),
        gen_chain(5),
        gen_antichain(3),
        gen_dtd(6),
        gen_shape(Partition.of(4, 2, 1)),
        gen_shape(Partition.of(3, 3)),
        gen_shifted_shape(Partition.of(5, 3, 1)),
        gen_random_tree(12, seed=4),
    ]
    for p in family:
        certificate = certify(p, strict=True)
        assert certificate.d_complete, p.to_dict()


def test_certificate_to_dict() -> None:
    data = certify(diamond()).to_dict()
    assert data["d_complete"] is True
    assert data["per_k"] == {"3": {c.value: True for c in Criterion}}
    assert set(data["per_criterion"]) == {c.value for c in Criterion}
    assert len(data["poset_hash"]) == 64


def test_iter_filters_enumerates_all_filters() -> None:
    assert len(list(iter_filters(diamond()))) == 6
    assert len(list(iter_filters(gen_chain(3)))) == 4


def test_audits_hold_on_shapes() -> None:
    p = gen_shape(Partition.of(3, 2))
    assert consequence_suite(p).ok
    assert neck_tail_audit(p).ok
    assert filter_closure_check(p).ok


def test_audits_hold_on_dtd() -> None:
    p = gen_dtd(5)
    audit = neck_tail_audit(p)
    assert audit.ok
    assert audit.checks["neck_free"] > 0
    assert consequence_suite(p).ok


def test_consequences_skip_connectivity_on_disconnected_posets() -> None:
    p = disjoint_union(gen_dtd(3), gen_chain(2))
    audit = consequence_suite(p)
    assert audit.ok
    assert "UM" not in audit.checks


def test_audits_require_d_complete_poset() -> None:
    cube = gen_boolean_lattice(3)
    for audit in (consequence_suite, neck_tail_audit, filter_closure_check):
        with pytest.raises(NotDCompleteError):
            audit(cube)
