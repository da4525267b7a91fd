"""Immutable finite posets stored as Hasse diagrams with bitset reachability.

A :class:`Poset` keeps its elements as opaque string ids in a fixed order
(the canonical element order used for every witness and report) and indexes
them densely. Cover relations and the strict order are stored as Python
integers used as bitsets, so order queries are single ``&`` operations:

    >>> p = build_poset(["w", "x", "y", "z"],
    ...                 [("w", "x"), ("w", "y"), ("x", "z"), ("y", "z")])
    >>> is_less(p, "w", "z")
    True
    >>> sorted(interval(p, "w", "z").members)
    ['w', 'x', 'y', 'z']

All operations in this module are pure reads of an already built poset.
"""

from __future__ import annotations

import hashlib
import json
import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import (
    Any,
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from .exceptions import (
    CycleDetectedError,
    DuplicateElementError,
    NoUniqueMaxError,
    NotComparableError,
    PosetTooLargeError,
    RedundantCoverError,
    UnknownElementError,
)

logger = logging.getLogger(__name__)

# Exact linear extension counting walks the down-set lattice (up to 2^n states).
LINEAR_EXTENSION_LIMIT = 24

CoverPair = Tuple[str, str]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    """Number of set bits."""
    return bin(mask).count("1")


class Poset:
    """An immutable finite poset given by its cover relation.

    Do not call the constructor directly; use :func:`build_poset`, which
    validates the input. The bitmask views ``up``, ``down``, ``above`` and
    ``below`` are indexed by element position:

    - ``up[i]``: upper covers of element i
    - ``down[i]``: lower covers of element i
    - ``above[i]``: elements strictly greater than element i
    - ``below[i]``: elements strictly less than element i
    """

    __slots__ = (
        "elements",
        "covers",
        "up",
        "down",
        "above",
        "below",
        "_index",
        "_memo",
    )

    def __init__(
        self,
        elements: Tuple[str, ...],
        up: Sequence[int],
        above: Sequence[int],
    ) -> None:
        n = len(elements)
        down = [0] * n
        below = [0] * n
        for i in range(n):
            bit = 1 << i
            for j in iter_bits(up[i]):
                down[j] |= bit
            for j in iter_bits(above[i]):
                below[j] |= bit

        self.elements: Tuple[str, ...] = elements
        self.up: Tuple[int, ...] = tuple(up)
        self.down: Tuple[int, ...] = tuple(down)
        self.above: Tuple[int, ...] = tuple(above)
        self.below: Tuple[int, ...] = tuple(below)
        self._index: Dict[str, int] = {x: i for i, x in enumerate(elements)}
        self.covers: FrozenSet[CoverPair] = frozenset(
            (elements[i], elements[j]) for i in range(n) for j in iter_bits(up[i])
        )
        self._memo: Dict[Any, Any] = {}

    # ------------------------------------------------------------------
    # container protocol

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, element: object) -> bool:
        return element in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self.covers == other.covers

    def __hash__(self) -> int:
        return hash((self.elements, self.covers))

    def __repr__(self) -> str:
        return f"Poset(n={len(self)}, covers={len(self.covers)})"

    def __reduce__(self) -> Tuple[Callable[..., "Poset"], Tuple[Any, ...]]:
        # The memo holds derived structures only; workers rebuild it lazily.
        return (_rebuild, (self.elements, self.up, self.above))

    # ------------------------------------------------------------------
    # index plumbing

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.elements)) - 1

    def index(self, element: str) -> int:
        """Position of ``element`` in the canonical element order."""
        try:
            return self._index[element]
        except KeyError:
            raise UnknownElementError(element) from None

    def mask_of(self, elements: Iterable[str]) -> int:
        mask = 0
        for x in elements:
            mask |= 1 << self.index(x)
        return mask

    def ids_of(self, mask: int) -> Tuple[str, ...]:
        """Element ids of a bitmask, in canonical order."""
        return tuple(self.elements[i] for i in iter_bits(mask))

    def cached(self, key: Any, factory: Callable[[], Any]) -> Any:
        """Memoize a derived structure on this (immutable) poset."""
        try:
            return self._memo[key]
        except KeyError:
            value = self._memo[key] = factory()
            return value

    # ------------------------------------------------------------------
    # element-level queries

    def upper_covers(self, element: str) -> Tuple[str, ...]:
        return self.ids_of(self.up[self.index(element)])

    def lower_covers(self, element: str) -> Tuple[str, ...]:
        return self.ids_of(self.down[self.index(element)])

    def maximal_mask(self) -> int:
        return sum(1 << i for i in range(self.n) if not self.up[i])

    def minimal_mask(self) -> int:
        return sum(1 << i for i in range(self.n) if not self.down[i])

    def maximal_elements(self) -> Tuple[str, ...]:
        return self.ids_of(self.maximal_mask())

    def minimal_elements(self) -> Tuple[str, ...]:
        return self.ids_of(self.minimal_mask())

    def interval_mask(self, lo: int, hi: int) -> int:
        """Bitmask of [lo, hi] by index; empty when lo is not <= hi."""
        if lo == hi:
            return 1 << lo
        if not (self.above[lo] >> hi) & 1:
            return 0
        return (self.above[lo] & self.below[hi]) | (1 << lo) | (1 << hi)

    def cover_pairs(self) -> List[Tuple[int, int]]:
        """Cover pairs by index, sorted."""
        return [(i, j) for i in range(self.n) for j in iter_bits(self.up[i])]

    def to_dict(self) -> Dict[str, Any]:
        """Convert to the JSON interchange structure."""
        return {
            "elements": list(self.elements),
            "covers": [
                [self.elements[i], self.elements[j]] for i, j in self.cover_pairs()
            ],
        }

    def digest(self) -> str:
        """SHA-256 of the canonical JSON serialization."""
        payload = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def _rebuild(
    elements: Tuple[str, ...], up: Tuple[int, ...], above: Tuple[int, ...]
) -> Poset:
    return Poset(elements, up, above)


@dataclass(frozen=True)
class IntervalView:
    """Closed interval [lo, hi] of a poset."""

    lo: str
    hi: str
    members: FrozenSet[str]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, element: object) -> bool:
        return element in self.members


@dataclass(frozen=True)
class RankAssignment:
    """Rank function normalized so each component's maximal rank is 0."""

    ranks: Mapping[str, int]

    def __getitem__(self, element: str) -> int:
        return self.ranks[element]

    def to_dict(self) -> Dict[str, Any]:
        return {"ranked": True, "ranks": dict(self.ranks)}


@dataclass(frozen=True)
class NotRanked:
    """Witness that no rank function exists.

    The cover ``lower -> upper`` closes a cycle of the Hasse diagram on which
    the up and down steps do not balance. ``lower_walk`` and ``upper_walk``
    are the spanning-tree walks from the component root to each end; their
    signed lengths do not differ by one.
    """

    lower: str
    upper: str
    lower_walk: Tuple[str, ...]
    upper_walk: Tuple[str, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ranked": False,
            "cover": [self.lower, self.upper],
            "lower_walk": list(self.lower_walk),
            "upper_walk": list(self.upper_walk),
        }


def build_poset(
    elements: Sequence[str],
    covers: Iterable[Sequence[str]],
    auto_reduce: bool = False,
) -> Poset:
    """Validate a cover relation and build an immutable poset.

    Args:
        elements: Distinct element ids, in the canonical element order.
        covers: Pairs ``(x, y)`` meaning "y covers x".
        auto_reduce: If True, silently drop cover pairs implied by longer
            chains. If False (default), such pairs are an error.

    Returns:
        The validated Poset with reachability computed.

    Raises:
        DuplicateElementError: If an id is listed twice.
        UnknownElementError: If a cover references an unlisted id.
        CycleDetectedError: If the covers contain a directed cycle.
        RedundantCoverError: If auto_reduce is off and a cover is implied.
    """
    ids = tuple(str(x) for x in elements)
    index: Dict[str, int] = {}
    for i, x in enumerate(ids):
        if x in index:
            raise DuplicateElementError(x)
        index[x] = i

    n = len(ids)
    up = [0] * n
    indegree = [0] * n
    for pair in covers:
        if len(pair) != 2:
            raise ValueError(f"Cover must be a pair, got {pair!r}")
        x, y = str(pair[0]), str(pair[1])
        for element in (x, y):
            if element not in index:
                raise UnknownElementError(element)
        i, j = index[x], index[y]
        if i == j:
            raise CycleDetectedError([x])
        if not (up[i] >> j) & 1:
            up[i] |= 1 << j
            indegree[j] += 1

    order = _topological_order(ids, up, indegree)

    above = [0] * n
    for i in reversed(order):
        reach = 0
        for j in iter_bits(up[i]):
            reach |= (1 << j) | above[j]
        above[i] = reach

    for i in range(n):
        via_others = 0
        for j in iter_bits(up[i]):
            via_others |= above[j]
        redundant = up[i] & via_others
        if redundant:
            if not auto_reduce:
                j = next(iter_bits(redundant))
                raise RedundantCoverError(ids[i], ids[j])
            logger.debug(
                "Dropping %d implied cover(s) above %s", popcount(redundant), ids[i]
            )
            up[i] &= ~redundant

    return Poset(ids, up, above)


def _topological_order(ids: Sequence[str], up: List[int], indegree: List[int]) -> List[int]:
    """Kahn's algorithm; raises CycleDetectedError with one actual cycle."""
    remaining = list(indegree)
    queue = deque(i for i in range(len(ids)) if remaining[i] == 0)
    order: List[int] = []
    while queue:
        i = queue.popleft()
        order.append(i)
        for j in iter_bits(up[i]):
            remaining[j] -= 1
            if remaining[j] == 0:
                queue.append(j)

    if len(order) < len(ids):
        stuck = {i for i in range(len(ids)) if remaining[i] > 0}
        # Every stuck element has a stuck lower cover, so walking downward
        # inside the stuck set must revisit an element.
        down_in_stuck: Dict[int, int] = {}
        for i in stuck:
            for j in iter_bits(up[i]):
                if j in stuck:
                    down_in_stuck.setdefault(j, i)
        walk: List[int] = []
        seen: Dict[int, int] = {}
        current = min(stuck)
        while current not in seen:
            seen[current] = len(walk)
            walk.append(current)
            current = down_in_stuck[current]
        cycle = list(reversed(walk[seen[current]:]))
        raise CycleDetectedError([ids[i] for i in cycle])
    return order


# ----------------------------------------------------------------------
# order queries


def is_less(p: Poset, x: str, y: str) -> bool:
    """True iff x < y."""
    return bool((p.above[p.index(x)] >> p.index(y)) & 1)


def is_leq(p: Poset, x: str, y: str) -> bool:
    """True iff x <= y."""
    return (x == y and x in p) or is_less(p, x, y)


def interval(p: Poset, w: str, z: str) -> IntervalView:
    """Closed interval [w, z] = {u : w <= u <= z}.

    Raises:
        NotComparableError: If w is not <= z.
    """
    lo, hi = p.index(w), p.index(z)
    mask = p.interval_mask(lo, hi)
    if not mask:
        raise NotComparableError(w, z)
    return IntervalView(lo=w, hi=z, members=frozenset(p.ids_of(mask)))


def is_convex_mask(p: Poset, mask: int) -> bool:
    for i in iter_bits(mask):
        for j in iter_bits(p.above[i] & mask):
            if p.above[i] & p.below[j] & ~mask:
                return False
    return True


def is_convex(p: Poset, subset: Iterable[str]) -> bool:
    """True iff every u with x < u < z for x, z in the subset lies in it."""
    return is_convex_mask(p, p.mask_of(subset))


def component_masks(p: Poset) -> List[int]:
    """Hasse-diagram connected components as bitmasks, ordered by first element."""

    def build() -> List[int]:
        unseen = p.full_mask
        result: List[int] = []
        while unseen:
            start = unseen & -unseen
            component = frontier = start
            while frontier:
                grow = 0
                for i in iter_bits(frontier):
                    grow |= p.up[i] | p.down[i]
                frontier = grow & ~component
                component |= frontier
            result.append(component)
            unseen &= ~component
        return result

    masks: List[int] = p.cached("components", build)
    return masks


def components(p: Poset) -> List[FrozenSet[str]]:
    """Partition of the elements by Hasse-diagram connectivity."""
    return [frozenset(p.ids_of(mask)) for mask in component_masks(p)]


def is_connected(p: Poset) -> bool:
    """Exactly one component. The empty poset is not connected."""
    return len(component_masks(p)) == 1


def rank_function(p: Poset) -> Union[RankAssignment, NotRanked]:
    """Find a rank function, normalized so each component's top rank is 0.

    Returns:
        A RankAssignment, or a NotRanked witness if none exists.
    """
    rank: Dict[int, int] = {}
    parent: Dict[int, Optional[int]] = {}

    def walk(i: int) -> Tuple[str, ...]:
        path: List[str] = []
        node: Optional[int] = i
        while node is not None:
            path.append(p.elements[node])
            node = parent[node]
        return tuple(reversed(path))

    ranks: Dict[str, int] = {}
    for component in component_masks(p):
        root = next(iter_bits(component))
        rank[root] = 0
        parent[root] = None
        queue = deque([root])
        members: List[int] = []
        while queue:
            i = queue.popleft()
            members.append(i)
            for j, step in _neighbours(p, i):
                if j not in rank:
                    rank[j] = rank[i] + step
                    parent[j] = i
                    queue.append(j)
                elif rank[j] != rank[i] + step:
                    lower, upper = (i, j) if step == 1 else (j, i)
                    return NotRanked(
                        lower=p.elements[lower],
                        upper=p.elements[upper],
                        lower_walk=walk(lower),
                        upper_walk=walk(upper),
                    )
        top = max(rank[i] for i in members)
        for i in members:
            ranks[p.elements[i]] = rank[i] - top

    ordered = {x: ranks[x] for x in p.elements}
    return RankAssignment(ranks=ordered)


def _neighbours(p: Poset, i: int) -> Iterator[Tuple[int, int]]:
    for j in iter_bits(p.up[i]):
        yield j, 1
    for j in iter_bits(p.down[i]):
        yield j, -1


def top_tree(p: Poset) -> FrozenSet[str]:
    """Elements x whose up-set {y : y >= x} is a chain.

    Raises:
        NoUniqueMaxError: If the poset lacks a unique maximal element.
    """
    maximal = p.maximal_elements()
    if len(maximal) != 1:
        raise NoUniqueMaxError(maximal)
    branching = 0
    for i in range(p.n):
        if popcount(p.up[i]) > 1:
            branching |= 1 << i
    tree = [
        x for i, x in enumerate(p.elements) if not (p.above[i] | 1 << i) & branching
    ]
    return frozenset(tree)


def linear_extension_count(p: Poset, limit: int = LINEAR_EXTENSION_LIMIT) -> int:
    """Exact number of linear extensions, by dynamic programming over down-sets.

    Raises:
        PosetTooLargeError: If the poset has more than ``limit`` elements.
    """
    if p.n > limit:
        raise PosetTooLargeError(p.n, limit)
    full = p.full_mask
    below = p.below

    @lru_cache(maxsize=None)
    def completions(done: int) -> int:
        if done == full:
            return 1
        total = 0
        for i in iter_bits(full & ~done):
            if not below[i] & ~done:
                total += completions(done | (1 << i))
        return total

    return completions(0)


# ----------------------------------------------------------------------
# derived posets


def up_closure_mask(p: Poset, mask: int) -> int:
    closure = mask
    for i in iter_bits(mask):
        closure |= p.above[i]
    return closure


def up_closure(p: Poset, subset: Iterable[str]) -> FrozenSet[str]:
    """Smallest filter containing the subset."""
    return frozenset(p.ids_of(up_closure_mask(p, p.mask_of(subset))))


def induced_subposet(p: Poset, subset: Iterable[str]) -> Poset:
    """Subposet on ``subset`` with its own (re-reduced) cover relation.

    Elements keep their relative canonical order.
    """
    mask = p.mask_of(subset)
    covers: List[CoverPair] = []
    for i in iter_bits(mask):
        candidates = p.above[i] & mask
        for j in iter_bits(candidates):
            if not p.below[j] & candidates:
                covers.append((p.elements[i], p.elements[j]))
    return build_poset(p.ids_of(mask), covers)


def disjoint_union(p: Poset, q: Poset, tags: Tuple[str, str] = ("0", "1")) -> Poset:
    """Disjoint union; ids are prefixed with ``tag.`` to keep them distinct."""
    left, right = tags
    elements = [f"{left}.{x}" for x in p.elements] + [
        f"{right}.{x}" for x in q.elements
    ]
    covers = [(f"{left}.{x}", f"{left}.{y}") for x, y in _ordered_covers(p)]
    covers += [(f"{right}.{x}", f"{right}.{y}") for x, y in _ordered_covers(q)]
    return build_poset(elements, covers)


def _ordered_covers(p: Poset) -> List[CoverPair]:
    return [(p.elements[i], p.elements[j]) for i, j in p.cover_pairs()]
