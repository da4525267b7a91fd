import pickle

import pytest

from dcomplete.exceptions import (
    CycleDetectedError,
    DuplicateElementError,
    NoUniqueMaxError,
    NotComparableError,
    PosetTooLargeError,
    RedundantCoverError,
    UnknownElementError,
)
from dcomplete.generators import (
    Partition,
    gen_antichain,
    gen_boolean_lattice,
    gen_chain,
    gen_shifted_shape,
)
from dcomplete.poset import (
    NotRanked,
    RankAssignment,
    build_poset,
    components,
    disjoint_union,
    induced_subposet,
    interval,
    is_connected,
    is_convex,
    is_leq,
    is_less,
    linear_extension_count,
    rank_function,
    top_tree,
    up_closure,
)

DIAMOND_COVERS = [("w", "x"), ("w", "y"), ("x", "z"), ("y", "z")]


def diamond():
    return build_poset(["w", "x", "y", "z"], DIAMOND_COVERS)


def test_build_poset_computes_order_views() -> None:
    p = diamond()
    assert len(p) == 4
    assert p.upper_covers("w") == ("x", "y")
    assert p.lower_covers("z") == ("x", "y")
    assert p.maximal_elements() == ("z",)
    assert p.minimal_elements() == ("w",)
    assert is_less(p, "w", "z")
    assert not is_less(p, "x", "y")
    assert is_leq(p, "x", "x")
    assert not is_leq(p, "z", "w")


def test_build_poset_rejects_duplicate_element() -> None:
    with pytest.raises(DuplicateElementError):
        build_poset(["a", "a"], [])


def test_build_poset_rejects_unknown_element() -> None:
    with pytest.raises(UnknownElementError) as excinfo:
        build_poset(["a"], [("a", "b")])
    assert excinfo.value.element == "b"


def test_build_poset_reports_cycle_members() -> None:
    with pytest.raises(CycleDetectedError) as excinfo:
        build_poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
    assert set(excinfo.value.cycle) == {"a", "b", "c"}


def test_build_poset_rejects_self_loop() -> None:
    with pytest.raises(CycleDetectedError) as excinfo:
        build_poset(["a"], [("a", "a")])
    assert excinfo.value.cycle == ("a",)


def test_build_poset_rejects_redundant_cover() -> None:
    with pytest.raises(RedundantCoverError) as excinfo:
        build_poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")])
    assert (excinfo.value.lower, excinfo.value.upper) == ("a", "c")


def test_build_poset_auto_reduce_drops_implied_cover() -> None:
    p = build_poset(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")], auto_reduce=True)
    assert p.covers == frozenset({("a", "b"), ("b", "c")})
    assert is_less(p, "a", "c")


def test_build_poset_rejects_non_pair_cover() -> None:
    with pytest.raises(ValueError):
        build_poset(["a", "b"], [("a", "b", "a")])


def test_poset_equality_ignores_cover_order() -> None:
    reordered = build_poset(["w", "x", "y", "z"], list(reversed(DIAMOND_COVERS)))
    assert reordered == diamond()
    assert hash(reordered) == hash(diamond())
    assert reordered.digest() == diamond().digest()


def test_poset_pickles_with_its_order() -> None:
    p = pickle.loads(pickle.dumps(diamond()))
    assert p == diamond()
    assert is_less(p, "w", "z")


def test_interval_returns_closed_interval() -> None:
    view = interval(diamond(), "w", "z")
    assert view.members == frozenset({"w", "x", "y", "z"})
    assert len(interval(diamond(), "x", "x")) == 1
    assert "y" not in interval(diamond(), "w", "x")


def test_interval_rejects_incomparable_pair() -> None:
    with pytest.raises(NotComparableError):
        interval(diamond(), "x", "y")


def test_is_convex() -> None:
    p = diamond()
    assert is_convex(p, ["w", "x", "y", "z"])
    assert is_convex(p, ["x", "y"])
    assert not is_convex(p, ["w", "z"])


def test_components_and_connectivity() -> None:
    assert is_connected(diamond())
    assert not is_connected(gen_antichain(2))
    assert not is_connected(build_poset([], []))
    assert components(gen_antichain(3)) == [
        frozenset({"0"}),
        frozenset({"1"}),
        frozenset({"2"}),
    ]


def test_rank_function_normalizes_top_to_zero() -> None:
    ranks = rank_function(diamond())
    assert isinstance(ranks, RankAssignment)
    assert ranks.ranks == {"w": -2, "x": -1, "y": -1, "z": 0}


def test_rank_function_reports_unbalanced_cycle() -> None:
    p = build_poset(
        ["a", "b", "c", "x", "t"],
        [("a", "b"), ("b", "c"), ("c", "t"), ("a", "x"), ("x", "t")],
    )
    result = rank_function(p)
    assert isinstance(result, NotRanked)
    assert result.to_dict()["ranked"] is False


def test_top_tree_of_shifted_shape() -> None:
    p = gen_shifted_shape(Partition.of(9, 6, 3, 1))
    assert len(p) == 19
    tree = top_tree(p)
    assert len(tree) == 10
    assert "1.1" in tree
    assert "1.2" not in tree


def test_top_tree_requires_unique_maximum() -> None:
    with pytest.raises(NoUniqueMaxError):
        top_tree(gen_antichain(2))


def test_linear_extension_count() -> None:
    assert linear_extension_count(diamond()) == 2
    assert linear_extension_count(gen_chain(5)) == 1
    assert linear_extension_count(gen_antichain(3)) == 6
    assert linear_extension_count(gen_boolean_lattice(3)) == 48


def test_linear_extension_count_respects_limit() -> None:
    with pytest.raises(PosetTooLargeError):
        linear_extension_count(gen_chain(5), limit=4)


def test_up_closure_and_induced_subposet() -> None:
    cube = gen_boolean_lattice(3)
    assert up_closure(cube, ["ab"]) == frozenset({"ab", "abc"})
    sub = induced_subposet(cube, ["0", "ab", "abc"])
    assert sub.covers == frozenset({("0", "ab"), ("ab", "abc")})


def test_disjoint_union_prefixes_ids() -> None:
    union = disjoint_union(gen_chain(2), gen_chain(1))
    assert union.elements == ("0.0", "0.1", "1.0")
    assert union.covers == frozenset({("0.0", "0.1")})
    assert len(components(union)) == 2
