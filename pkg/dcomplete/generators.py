"""Constructors for the standard d-complete families and for test corpora.

Shapes and shifted shapes are oriented with the corner cell (0, 0) as the
unique maximal element; cell (i, j) is covered by (i - 1, j) and (i, j - 1).
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .exceptions import InvalidPartitionError, InvalidTreeError, NotUpClosedError
from .poset import CoverPair, Poset, build_poset, induced_subposet
from .structures import validate_k

logger = logging.getLogger(__name__)

CORPUS_KINDS = ("exhaustive", "random")


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive parts."""

    parts: Tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        if any(not isinstance(part, int) or part <= 0 for part in parts):
            raise InvalidPartitionError(f"Partition parts must be positive integers: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidPartitionError(f"Partition parts must be weakly decreasing: {parts}")

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Read ``"3,2,1"`` (commas or spaces)."""
        try:
            parts = tuple(int(part) for part in text.replace(",", " ").split())
        except ValueError:
            raise InvalidPartitionError(f"Not a partition: {text!r}") from None
        return cls(parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def is_strict(self) -> bool:
        return all(a > b for a, b in zip(self.parts, self.parts[1:]))

    def __str__(self) -> str:
        return "(" + ",".join(str(part) for part in self.parts) + ")"


@dataclass(frozen=True)
class CorpusSpec:
    """What corpus to build: every poset of size n, or ``count`` random ones."""

    kind: str
    n: int
    count: int = 1
    seed: int = 0
    density: float = 0.3

    def __post_init__(self) -> None:
        if self.kind not in CORPUS_KINDS:
            raise ValueError(f"Unknown corpus kind: {self.kind!r}")
        if self.n < 0 or self.count < 0:
            raise ValueError("Corpus size and count must be non-negative")
        if not 0.0 <= self.density <= 1.0:
            raise ValueError(f"Density must lie in [0, 1], got {self.density}")


def partitions(n: int, largest: Optional[int] = None) -> Iterator[Partition]:
    """All partitions of n, largest parts first."""
    for parts in _partitions(n, n if largest is None else largest):
        yield Partition(parts)


def _partitions(n: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def strict_partitions(n: int) -> Iterator[Partition]:
    """All partitions of n into distinct parts."""
    for partition in partitions(n):
        if partition.is_strict:
            yield partition


def _cell(i: int, j: int) -> str:
    return f"{i}.{j}"


def _cells_poset(rows: Sequence[range]) -> Poset:
    cells = {(i, j) for i, row in enumerate(rows) for j in row}
    elements = [_cell(i, j) for i, row in enumerate(rows) for j in row]
    covers: List[CoverPair] = []
    for i, j in sorted(cells):
        if (i - 1, j) in cells:
            covers.append((_cell(i, j), _cell(i - 1, j)))
        if (i, j - 1) in cells:
            covers.append((_cell(i, j), _cell(i, j - 1)))
    return build_poset(elements, covers)


def gen_shape(partition: Partition) -> Poset:
    """Shape poset of a partition: one element per cell."""
    return _cells_poset([range(part) for part in partition.parts])


def gen_shifted_shape(partition: Partition) -> Poset:
    """Shifted shape poset: row i starts in column i.

    Raises:
        InvalidPartitionError: If the parts are not strictly decreasing.
    """
    if not partition.is_strict:
        raise InvalidPartitionError(f"Shifted shapes need a strict partition, got {partition}")
    return _cells_poset([range(i, i + part) for i, part in enumerate(partition.parts)])


def gen_dtd(k: int) -> Poset:
    """The double-tailed diamond: a_k -> ... -> a_3 -> {b, c} -> f_3 -> ... -> f_k."""
    validate_k(k)
    tail = [f"a{i}" for i in range(k, 2, -1)]
    neck = [f"f{i}" for i in range(3, k + 1)]
    covers: List[CoverPair] = list(zip(tail, tail[1:]))
    covers += [(tail[-1], "b"), (tail[-1], "c"), ("b", "f3"), ("c", "f3")]
    covers += list(zip(neck, neck[1:]))
    return build_poset(tail + ["b", "c"] + neck, covers)


def gen_rooted_tree(parents: Mapping[str, Optional[str]]) -> Poset:
    """Rooted tree from a child -> parent mapping; the root maps to None.

    Each non-root node is covered only by its parent; the root is the maximum.

    Raises:
        InvalidTreeError: Unless there is exactly one root and every node
            reaches it.
    """
    roots = [node for node, parent in parents.items() if parent is None]
    if len(roots) != 1:
        raise InvalidTreeError(f"A rooted tree needs exactly one root, found {len(roots)}")
    for node, parent in parents.items():
        if parent is not None and parent not in parents:
            raise InvalidTreeError(f"Parent {parent!r} of {node!r} is not a node")
    for node in parents:
        seen = set()
        current: Optional[str] = node
        while current is not None:
            if current in seen:
                raise InvalidTreeError(f"Parent mapping has a cycle through {node!r}")
            seen.add(current)
            current = parents[current]
    covers = [(node, parent) for node, parent in parents.items() if parent is not None]
    return build_poset(list(parents), covers)


def gen_random_tree(n: int, seed: int = 0) -> Poset:
    """Random rooted tree on n nodes t0..t{n-1}; t0 is the root."""
    if n < 1:
        raise InvalidTreeError("A rooted tree needs at least one node")
    rng = random.Random(seed)
    parents: Dict[str, Optional[str]] = {"t0": None}
    for i in range(1, n):
        parents[f"t{i}"] = f"t{rng.randrange(i)}"
    return gen_rooted_tree(parents)


def gen_filter(p: Poset, subset: Sequence[str]) -> Poset:
    """Induced subposet on an up-closed subset.

    Raises:
        NotUpClosedError: If some element of the subset lies below an
            element outside it.
    """
    mask = p.mask_of(subset)
    for i in range(p.n):
        if (mask >> i) & 1:
            outside = p.above[i] & ~mask
            if outside:
                j = (outside & -outside).bit_length() - 1
                raise NotUpClosedError(p.elements[i], p.elements[j])
    return induced_subposet(p, subset)


def gen_chain(n: int) -> Poset:
    ids = [str(i) for i in range(n)]
    return build_poset(ids, list(zip(ids, ids[1:])))


def gen_antichain(n: int) -> Poset:
    return build_poset([str(i) for i in range(n)], [])


def gen_boolean_lattice(m: int) -> Poset:
    """Subsets of the first m letters; the empty set is ``"0"``."""
    letters = "abcdefghijklmnopqrstuvwxyz"[:m]

    def name(subset: Tuple[str, ...]) -> str:
        return "".join(subset) or "0"

    subsets = [c for size in range(m + 1) for c in combinations(letters, size)]
    covers = [
        (name(s), name(tuple(sorted(s + (x,)))))
        for s in subsets
        for x in letters
        if x not in s
    ]
    return build_poset([name(s) for s in subsets], covers)


def gen_random_poset(spec: CorpusSpec) -> List[Poset]:
    """``spec.count`` random posets on p0..p{n-1}, deterministic per seed.

    Each pair taken along a shuffled order becomes a relation with
    probability ``spec.density``; the relation is then reduced to covers.
    """
    rng = random.Random(spec.seed)
    ids = [f"p{i}" for i in range(spec.n)]
    posets = []
    for _ in range(spec.count):
        order = ids[:]
        rng.shuffle(order)
        pairs = [
            (order[i], order[j])
            for i in range(spec.n)
            for j in range(i + 1, spec.n)
            if rng.random() < spec.density
        ]
        posets.append(build_poset(ids, pairs, auto_reduce=True))
    logger.debug("Generated %d random poset(s) on %d elements", len(posets), spec.n)
    return posets
