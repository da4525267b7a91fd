import pytest

from dcomplete.enumeration import enum_all_posets, exhaustive_corpus
from dcomplete.generators import gen_boolean_lattice, gen_dtd
from dcomplete.oracles import (
    brute_force_completions,
    brute_force_kokyuroku,
    has_isomorphic_duplicates,
    labeled_quotient_count,
    template_intervals,
    template_minus_sets,
    to_digraph,
    verify_oracles,
)
from dcomplete.poset import build_poset


def test_to_digraph_points_upward() -> None:
    graph = to_digraph(gen_dtd(3))
    assert set(graph.nodes) == {"a3", "b", "c", "f3"}
    assert ("a3", "b") in graph.edges
    assert ("b", "a3") not in graph.edges


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 2), (3, 5), (4, 16)])
def test_labeled_quotient_count(n: int, expected: int) -> None:
    assert labeled_quotient_count(n) == expected


def test_template_intervals_on_dtd() -> None:
    p = gen_dtd(5)
    assert template_intervals(p, 3) == {("a3", "f3")}
    assert template_intervals(p, 4) == {("a4", "f4")}
    assert template_intervals(p, 5) == {("a5", "f5")}


def test_template_minus_sets() -> None:
    p = gen_dtd(4)
    assert template_minus_sets(p, 3) == {("a3", "b", "c")}
    assert template_minus_sets(p, 4) == {tuple(sorted(["a4", "a3", "b", "c", "f3"]))}


def test_template_minus_sets_ignores_non_cover_triples() -> None:
    p = build_poset(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("a", "d")])
    assert template_minus_sets(p, 3) == {("a", "b", "d")}


def test_brute_force_completions() -> None:
    cube = gen_boolean_lattice(3)
    assert brute_force_completions(cube, ["0", "a", "b"], 3) == ["ab"]
    assert brute_force_completions(cube, ["a", "ab", "ac"], 3) == ["abc"]


def test_brute_force_kokyuroku() -> None:
    diamond = build_poset(
        ["w", "x", "y", "z"], [("w", "x"), ("w", "y"), ("x", "z"), ("y", "z")]
    )
    assert brute_force_kokyuroku(diamond, 3)
    assert not brute_force_kokyuroku(gen_boolean_lattice(3), 3)


def test_has_isomorphic_duplicates() -> None:
    assert not has_isomorphic_duplicates(enum_all_posets(4))
    relabeled = build_poset(
        ["p", "q", "r", "s"], [("s", "q"), ("s", "r"), ("q", "p"), ("r", "p")]
    )
    assert has_isomorphic_duplicates([gen_dtd(3), relabeled])


def test_scanners_agree_with_oracles_on_small_corpus() -> None:
    audit = verify_oracles(exhaustive_corpus(4) + [gen_dtd(5), gen_boolean_lattice(3)])
    assert audit.ok, audit.failures
    assert audit.checks["kokyuroku"] > 0


@pytest.mark.slow
def test_scanners_agree_with_oracles_on_six_elements() -> None:
    audit = verify_oracles(enum_all_posets(6))
    assert audit.ok, audit.failures[:3]
