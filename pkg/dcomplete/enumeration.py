"""Exhaustive enumeration of unlabeled posets.

Posets of size n + 1 are grown from those of size n by adding a new
maximal element above every down-set; duplicates are rejected by a
canonical form computed with colour refinement and individualization.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .exceptions import EnumerationCapError
from .generators import CorpusSpec, gen_random_poset
from .poset import Poset, build_poset, iter_bits, popcount

logger = logging.getLogger(__name__)

DEFAULT_ENUM_CAP = 8

CanonicalKey = Tuple[int, Tuple[Tuple[int, int], ...]]

# Number of unlabeled posets on n elements.
KNOWN_COUNTS = (1, 1, 2, 5, 16, 63, 318, 2045, 16999, 183231)


def _refine(p: Poset, colors: List[int]) -> List[int]:
    """Split colour classes by the colours of lower and upper covers until stable."""
    cells = len(set(colors))
    while True:
        signatures = [
            (
                colors[i],
                tuple(sorted(colors[j] for j in iter_bits(p.down[i]))),
                tuple(sorted(colors[j] for j in iter_bits(p.up[i]))),
            )
            for i in range(p.n)
        ]
        ranking = {sig: rank for rank, sig in enumerate(sorted(set(signatures)))}
        colors = [ranking[sig] for sig in signatures]
        if len(ranking) == cells:
            return colors
        cells = len(ranking)


def _relabeled_key(p: Poset, colors: Sequence[int]) -> CanonicalKey:
    return (p.n, tuple(sorted((colors[i], colors[j]) for i, j in p.cover_pairs())))


def _search(p: Poset, colors: List[int]) -> Iterator[Tuple[CanonicalKey, List[int]]]:
    colors = _refine(p, colors)
    if len(set(colors)) == p.n:
        yield _relabeled_key(p, colors), colors
        return
    counts: Dict[int, int] = {}
    for color in colors:
        counts[color] = counts.get(color, 0) + 1
    target = min(color for color, count in counts.items() if count > 1)
    seen_twins = set()
    for v in range(p.n):
        if colors[v] != target:
            continue
        # swapping twins is an automorphism, so one of them suffices
        twin = (p.up[v], p.down[v])
        if twin in seen_twins:
            continue
        seen_twins.add(twin)
        individualized = [2 * c + (0 if i == v else 1) for i, c in enumerate(colors)]
        yield from _search(p, individualized)


def _canonical_labeling(p: Poset) -> Tuple[CanonicalKey, List[int]]:
    def build() -> Tuple[CanonicalKey, List[int]]:
        if p.n == 0:
            return (0, ()), []
        return min(_search(p, [0] * p.n), key=lambda leaf: leaf[0])

    result: Tuple[CanonicalKey, List[int]] = p.cached("canonical", build)
    return result


def canonical_key(p: Poset) -> CanonicalKey:
    """Isomorphism invariant: equal keys iff the posets are isomorphic."""
    return _canonical_labeling(p)[0]


def canonical_form(p: Poset) -> Poset:
    """Isomorphic copy of p on ids "0".."n-1" in canonical order."""
    key = _canonical_labeling(p)[0]
    ids = [str(i) for i in range(p.n)]
    return build_poset(ids, [(ids[i], ids[j]) for i, j in key[1]])


def is_isomorphic(p: Poset, q: Poset) -> bool:
    return len(p) == len(q) and canonical_key(p) == canonical_key(q)


def _down_sets(p: Poset) -> Iterator[int]:
    order = sorted(range(p.n), key=lambda i: popcount(p.below[i]))

    def grow(position: int, mask: int) -> Iterator[int]:
        if position == len(order):
            yield mask
            return
        i = order[position]
        yield from grow(position + 1, mask)
        if p.down[i] & ~mask == 0:
            yield from grow(position + 1, mask | (1 << i))

    return grow(0, 0)


def _extend(q: Poset) -> Iterator[Poset]:
    """Every poset obtained from q by adding one new maximal element."""
    new = str(q.n)
    ids = list(q.elements) + [new]
    base = [(q.elements[i], q.elements[j]) for i, j in q.cover_pairs()]
    for mask in _down_sets(q):
        tops = [i for i in iter_bits(mask) if not q.above[i] & mask]
        yield build_poset(ids, base + [(q.elements[i], new) for i in tops])


@lru_cache(maxsize=None)
def _level(n: int) -> Tuple[Poset, ...]:
    if n == 0:
        return (build_poset([], []),)
    found: Dict[CanonicalKey, Poset] = {}
    for q in _level(n - 1):
        for candidate in _extend(q):
            key = canonical_key(candidate)
            if key not in found:
                found[key] = canonical_form(candidate)
    logger.info("Enumerated %d poset(s) on %d element(s)", len(found), n)
    return tuple(found[key] for key in sorted(found))


def enum_all_posets(n: int, cap: Optional[int] = None) -> List[Poset]:
    """One representative of each isomorphism class of n-element posets.

    Representatives are in canonical form, sorted by canonical key.

    Raises:
        EnumerationCapError: If n exceeds the cap (default DEFAULT_ENUM_CAP).
    """
    limit = DEFAULT_ENUM_CAP if cap is None else cap
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n > limit:
        raise EnumerationCapError(n, limit)
    return list(_level(n))


def exhaustive_corpus(n_max: int, cap: Optional[int] = None) -> List[Poset]:
    """All posets with at most n_max elements, smallest first."""
    corpus: List[Poset] = []
    for n in range(n_max + 1):
        corpus.extend(enum_all_posets(n, cap))
    return corpus


def build_corpus(spec: CorpusSpec, cap: Optional[int] = None) -> List[Poset]:
    if spec.kind == "exhaustive":
        return enum_all_posets(spec.n, cap)
    return gen_random_poset(spec)
