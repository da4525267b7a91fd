import pytest

from dcomplete.exceptions import InvalidKError
from dcomplete.generators import gen_boolean_lattice, gen_dtd
from dcomplete.poset import build_poset
from dcomplete.structures import (
    Diamond,
    DkInterval,
    DkMinusSet,
    Vee,
    YkSet,
    classify_vee_pairs,
    completion_chain,
    completions_of,
    find_diamonds,
    find_dk_intervals,
    find_dk_minus_sets,
    find_lambda_yk_sets,
    find_structures,
    find_vees,
    find_yk_sets,
    free_completions_of,
    overlapping_dk_minus_pairs,
    structure_to_dict,
)


def criss_cross():
    return build_poset(
        ["a", "b", "x", "y"], [("a", "x"), ("a", "y"), ("b", "x"), ("b", "y")]
    )


def w_poset():
    """Vees w -> {x, y} and v -> {y, u} sharing the elbow y."""
    return build_poset(
        ["w", "v", "x", "y", "u"], [("w", "x"), ("w", "y"), ("v", "y"), ("v", "u")]
    )


def forked_diamond():
    """Two bottoms under u, then a diamond u -> {x, y} -> z."""
    return build_poset(
        ["w", "v", "u", "x", "y", "z"],
        [("w", "u"), ("v", "u"), ("u", "x"), ("u", "y"), ("x", "z"), ("y", "z")],
    )


def test_find_vees_and_diamonds_on_dtd() -> None:
    p = gen_dtd(4)
    vees = find_vees(p)
    assert len(vees) == 2
    assert {v.bottom for v in vees} == {"w", "v"}
    assert find_diamonds(p) == [Diamond(bottom="a3", elbows=("b", "c"), top="f3")]


def test_find_dk_intervals_on_dtd() -> None:
    p = gen_dtd(4)
    (d3,) = find_dk_intervals(p, 3)
    assert (d3.tail, d3.elbows, d3.neck) == (("a3",), ("b", "c"), ("f3",))
    (d4,) = find_dk_intervals(p, 4)
    assert d4 == DkInterval(k=4, tail=("a4", "a3"), elbows=("b", "c"), neck=("f3", "f4"))
    assert d4.bottom == "a4" and d4.top == "f4"
    assert d4.members == frozenset(p.elements)
    assert find_dk_intervals(p, 5) == []


def test_find_dk_minus_sets_on_dtd() -> None:
    p = gen_dtd(4)
    (minus,) = find_dk_minus_sets(p, 4)
    assert minus == DkMinusSet(k=4, tail=("a4", "a3"), elbows=("b", "c"), neck=("f3",))
    assert minus.maxima == ("f3",)
    assert completions_of(p, minus) == ["f4"]
    assert free_completions_of(p, minus) == ["f4"]

    (vee_set,) = find_dk_minus_sets(p, 3)
    assert vee_set.maxima == ("b", "c")


def test_completion_that_covers_an_outsider_is_not_free() -> None:
    cube = gen_boolean_lattice(3)
    vee = next(s for s in find_dk_minus_sets(cube, 3) if s.tail == ("a",))
    assert vee.elbows == ("ab", "ac")
    assert completions_of(cube, vee) == ["abc"]
    assert free_completions_of(cube, vee) == []


def test_find_yk_sets() -> None:
    p = gen_dtd(4)
    assert find_yk_sets(p, 4) == [YkSet(k=4, stem=("a4", "a3"), elbows=("b", "c"))]
    assert find_yk_sets(p, 5) == []


def test_find_lambda_yk_sets() -> None:
    (hit,) = find_lambda_yk_sets(forked_diamond(), 3)
    assert hit.forks == ("w", "v")
    assert hit.y_set.stem == ("u",)
    assert hit.y_set.elbows == ("x", "y")
    assert hit.members == frozenset({"w", "v", "u", "x", "y"})


def test_overlapping_vees_share_elbows() -> None:
    (pair,) = overlapping_dk_minus_pairs(criss_cross(), 3)
    first, second = pair
    assert first.tail == ("a",) and second.tail == ("b",)
    assert first.elbows == second.elbows == ("x", "y")


def test_overlapping_dk_minus_intervals() -> None:
    (pair,) = overlapping_dk_minus_pairs(forked_diamond(), 4)
    first, second = pair
    assert first.tail == ("w", "u")
    assert second.tail == ("v", "u")
    assert first.neck == second.neck == ("z",)


def test_no_overlaps_in_dtd() -> None:
    p = gen_dtd(5)
    for k in (3, 4, 5):
        assert overlapping_dk_minus_pairs(p, k) == []


def test_classify_vee_pairs() -> None:
    assert len(classify_vee_pairs(criss_cross())["criss_cross"]) == 1
    cube = classify_vee_pairs(gen_boolean_lattice(3))
    assert len(cube["triply_covered"]) == 3
    assert cube["criss_cross"] == []


def test_w_poset_is_not_a_criss_cross() -> None:
    p = w_poset()
    vees = find_vees(p)
    assert len(vees) == 2
    assert {v.bottom for v in vees} == {"w", "v"}
    classes = classify_vee_pairs(p)
    assert len(classes["w"]) == 1
    assert classes["criss_cross"] == [] and classes["triply_covered"] == []
    assert overlapping_dk_minus_pairs(p, 3) == []


def test_completion_chain_climbs_the_neck() -> None:
    p = gen_dtd(5)
    (y_set,) = find_yk_sets(p, 5)
    assert completion_chain(p, y_set) == ("f3", "f4", "f5")
    assert completion_chain(p, y_set, free=True) == ("f3", "f4", "f5")


def test_completion_chain_none_without_top() -> None:
    p = build_poset(["w", "x", "y"], [("w", "x"), ("w", "y")])
    (y_set,) = find_yk_sets(p, 3)
    assert completion_chain(p, y_set) is None


def test_find_structures_dispatch() -> None:
    p = gen_dtd(4)
    assert len(find_structures(p, "dk", 4)) == 1
    assert len(find_structures(p, "vee")) == 1
    assert find_structures(p, "overlap", 4) == []


def test_find_structures_rejects_unknown_kind() -> None:
    with pytest.raises(ValueError):
        find_structures(gen_dtd(3), "hexagon")


def test_k_below_three_is_rejected() -> None:
    with pytest.raises(InvalidKError):
        find_dk_intervals(gen_dtd(3), 2)


def test_structure_to_dict() -> None:
    assert structure_to_dict(Vee("w", ("x", "y"))) == {
        "kind": "vee",
        "bottom": "w",
        "elbows": ["x", "y"],
    }
    (pair,) = overlapping_dk_minus_pairs(criss_cross(), 3)
    data = structure_to_dict(pair)
    assert data["kind"] == "overlap"
    assert [part["tail"] for part in data["pair"]] == [["a"], ["b"]]
