"""Detection of the local structures that d-completeness is phrased in.

Every finder works on the bitmask views of a :class:`~dcomplete.poset.Poset`
and memoizes its raw results on the poset, so repeated axiom checks at the
same k reuse one scan. Results are returned in canonical order: by bottom
element, then elbows, then the remaining listed elements, all compared by
position in ``Poset.elements``.

Recognition is by template extension. A d_3-interval is a diamond whose
interval has exactly four elements; a d_k^- -set (k >= 4) is a d_{k-1}-
interval plus a lower cover of its bottom whose interval has exactly 2k-3
elements; a d_k-interval is a d_k^- -set plus a completing element. Y_k-sets
grow the same way from vees.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, FrozenSet, List, NamedTuple, Optional, Tuple, Union

from .exceptions import InvalidKError
from .poset import Poset, iter_bits, popcount

logger = logging.getLogger(__name__)

# Raw records used internally: (tail, x, y, neck, mask), all by index.
_Raw = Tuple[Tuple[int, ...], int, int, Tuple[int, ...], int]
# (stem, x, y, mask)
_RawY = Tuple[Tuple[int, ...], int, int, int]


def validate_k(k: Any) -> int:
    """Return k if it is an integer >= 3, else raise InvalidKError."""
    if isinstance(k, bool) or not isinstance(k, int) or k < 3:
        raise InvalidKError(k)
    return k


class Vee(NamedTuple):
    """A bottom covered by both elbows: w -> {x, y}."""

    bottom: str
    elbows: Tuple[str, str]

    @property
    def members(self) -> FrozenSet[str]:
        return frozenset((self.bottom,) + self.elbows)


@dataclass(frozen=True)
class Diamond:
    """{w; x, y; z} with w -> {x, y} -> z. Need not be an interval."""

    bottom: str
    elbows: Tuple[str, str]
    top: str

    kind = "diamond"

    @property
    def members(self) -> FrozenSet[str]:
        return frozenset((self.bottom, self.top) + self.elbows)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "bottom": self.bottom,
            "elbows": list(self.elbows),
            "top": self.top,
        }


@dataclass(frozen=True)
class DkInterval:
    """An interval isomorphic to the double-tailed diamond with 2k-2 elements.

    ``tail`` lists w_k, ..., w_3 bottom-up and ``neck`` lists z_3, ..., z_k.
    """

    k: int
    tail: Tuple[str, ...]
    elbows: Tuple[str, str]
    neck: Tuple[str, ...]
    mask: int = field(default=0, compare=False, repr=False)

    kind = "dk"

    @property
    def bottom(self) -> str:
        return self.tail[0]

    @property
    def top(self) -> str:
        return self.neck[-1]

    @property
    def members(self) -> FrozenSet[str]:
        return frozenset(self.tail + self.elbows + self.neck)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "k": self.k,
            "tail": list(self.tail),
            "elbows": list(self.elbows),
            "neck": list(self.neck),
        }


@dataclass(frozen=True)
class DkMinusSet:
    """A convex set isomorphic to the k-th double-tailed diamond minus its top.

    For k = 3 this is a vee and ``neck`` is empty; for k >= 4 it is the
    interval [w_k, z_{k-1}].
    """

    k: int
    tail: Tuple[str, ...]
    elbows: Tuple[str, str]
    neck: Tuple[str, ...]
    mask: int = field(default=0, compare=False, repr=False)

    kind = "dkminus"

    @property
    def bottom(self) -> str:
        return self.tail[0]

    @property
    def maxima(self) -> Tuple[str, ...]:
        """The maximal element(s): both elbows for k = 3, else z_{k-1}."""
        return self.elbows if not self.neck else (self.neck[-1],)

    @property
    def members(self) -> FrozenSet[str]:
        return frozenset(self.tail + self.elbows + self.neck)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "k": self.k,
            "tail": list(self.tail),
            "elbows": list(self.elbows),
            "neck": list(self.neck),
        }


@dataclass(frozen=True)
class YkSet:
    """Stem w_k -> ... -> w_3 below an incomparable elbow pair."""

    k: int
    stem: Tuple[str, ...]
    elbows: Tuple[str, str]
    mask: int = field(default=0, compare=False, repr=False)

    kind = "yk"

    @property
    def members(self) -> FrozenSet[str]:
        return frozenset(self.stem + self.elbows)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "k": self.k,
            "stem": list(self.stem),
            "elbows": list(self.elbows),
        }


@dataclass(frozen=True)
class LambdaYkSet:
    """Two forks {u, v} both covered by the bottom of a Y_k-set."""

    k: int
    forks: Tuple[str, str]
    y_set: YkSet

    kind = "lambdayk"

    @property
    def members(self) -> FrozenSet[str]:
        return self.y_set.members | frozenset(self.forks)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "k": self.k,
            "forks": list(self.forks),
            "stem": list(self.y_set.stem),
            "elbows": list(self.y_set.elbows),
        }


StructureHit = Union[Diamond, DkInterval, DkMinusSet, YkSet, LambdaYkSet]
OverlapPair = Tuple[DkMinusSet, DkMinusSet]

STRUCTURE_KINDS = ("diamond", "vee", "dk", "dkminus", "yk", "lambdayk", "overlap")
K_INDEXED_KINDS = ("dk", "dkminus", "yk", "lambdayk", "overlap")


# ----------------------------------------------------------------------
# raw, index-level scans (memoized on the poset)


def raw_vees(p: Poset) -> List[Tuple[int, int, int]]:
    """(w, x, y) with w -> {x, y} and x < y by position."""

    def build() -> List[Tuple[int, int, int]]:
        found = []
        for w in range(p.n):
            for x, y in combinations(list(iter_bits(p.up[w])), 2):
                found.append((w, x, y))
        return found

    result: List[Tuple[int, int, int]] = p.cached("vees", build)
    return result


def raw_dk_minus(p: Poset, k: int) -> List[_Raw]:
    def build() -> List[_Raw]:
        if k == 3:
            return [
                ((w,), x, y, (), (1 << w) | (1 << x) | (1 << y))
                for w, x, y in raw_vees(p)
            ]
        size = 2 * k - 3
        found: List[_Raw] = []
        for tail, x, y, neck, _ in raw_dk(p, k - 1):
            for a in iter_bits(p.down[tail[0]]):
                mask = p.interval_mask(a, neck[-1])
                if popcount(mask) == size:
                    found.append(((a,) + tail, x, y, neck, mask))
        found.sort(key=_raw_key)
        return found

    result: List[_Raw] = p.cached(("dkminus", k), build)
    return result


def raw_completions(p: Poset, raw: _Raw) -> List[int]:
    """Indices z such that the d_k^- -set plus z is a d_k-interval."""
    tail, x, y, neck, _ = raw
    w = tail[0]
    if neck:
        candidates = p.up[neck[-1]]
        size = 2 * (len(tail) + 2) - 2
    else:
        candidates = p.up[x] & p.up[y]
        size = 4
    return [z for z in iter_bits(candidates) if popcount(p.interval_mask(w, z)) == size]


def raw_dk(p: Poset, k: int) -> List[_Raw]:
    def build() -> List[_Raw]:
        found: List[_Raw] = []
        for raw in raw_dk_minus(p, k):
            tail, x, y, neck, mask = raw
            for z in raw_completions(p, raw):
                found.append((tail, x, y, neck + (z,), mask | (1 << z)))
        found.sort(key=_raw_key)
        logger.debug("Found %d d_%d-interval(s)", len(found), k)
        return found

    result: List[_Raw] = p.cached(("dk", k), build)
    return result


def raw_yk(p: Poset, k: int) -> List[_RawY]:
    def build() -> List[_RawY]:
        if k == 3:
            return [
                ((w,), x, y, (1 << w) | (1 << x) | (1 << y))
                for w, x, y in raw_vees(p)
            ]
        found: List[_RawY] = []
        for stem, x, y, _ in raw_yk(p, k - 1):
            for a in iter_bits(p.down[stem[0]]):
                mask = p.interval_mask(a, x) | p.interval_mask(a, y)
                if popcount(mask) == k:
                    found.append(((a,) + stem, x, y, mask))
        found.sort(key=lambda r: (r[0][0], r[1], r[2], r[0]))
        return found

    result: List[_RawY] = p.cached(("yk", k), build)
    return result


def _raw_key(raw: _Raw) -> Tuple[Any, ...]:
    tail, x, y, neck, _ = raw
    return (tail[0], x, y, tail, neck)


# ----------------------------------------------------------------------
# conversions


def _minus_set(p: Poset, k: int, raw: _Raw) -> DkMinusSet:
    tail, x, y, neck, mask = raw
    ids = p.elements
    return DkMinusSet(
        k=k,
        tail=tuple(ids[i] for i in tail),
        elbows=(ids[x], ids[y]),
        neck=tuple(ids[i] for i in neck),
        mask=mask,
    )


def _interval(p: Poset, k: int, raw: _Raw) -> DkInterval:
    tail, x, y, neck, mask = raw
    ids = p.elements
    return DkInterval(
        k=k,
        tail=tuple(ids[i] for i in tail),
        elbows=(ids[x], ids[y]),
        neck=tuple(ids[i] for i in neck),
        mask=mask,
    )


def _y_set(p: Poset, k: int, raw: _RawY) -> YkSet:
    stem, x, y, mask = raw
    ids = p.elements
    return YkSet(
        k=k, stem=tuple(ids[i] for i in stem), elbows=(ids[x], ids[y]), mask=mask
    )


def to_raw(p: Poset, s: Union[DkMinusSet, DkInterval]) -> _Raw:
    """Index-level record of a structure given by ids."""
    tail = tuple(p.index(x) for x in s.tail)
    neck = tuple(p.index(x) for x in s.neck)
    x, y = (p.index(e) for e in s.elbows)
    return (tail, x, y, neck, s.mask or p.mask_of(s.members))


# ----------------------------------------------------------------------
# public finders


def find_diamonds(p: Poset) -> List[Diamond]:
    """All diamonds, each unordered elbow pair reported once."""
    ids = p.elements
    return [
        Diamond(bottom=ids[w], elbows=(ids[x], ids[y]), top=ids[z])
        for w, x, y in raw_vees(p)
        for z in iter_bits(p.up[x] & p.up[y])
    ]


def find_vees(p: Poset) -> List[Vee]:
    """All configurations w -> {x, y}."""
    ids = p.elements
    return [Vee(ids[w], (ids[x], ids[y])) for w, x, y in raw_vees(p)]


def find_dk_intervals(p: Poset, k: int) -> List[DkInterval]:
    """All d_k-intervals of the poset."""
    validate_k(k)
    return [_interval(p, k, raw) for raw in raw_dk(p, k)]


def find_dk_minus_sets(p: Poset, k: int) -> List[DkMinusSet]:
    """All d_k^- -sets; for k = 3 exactly the vees."""
    validate_k(k)
    return [_minus_set(p, k, raw) for raw in raw_dk_minus(p, k)]


def completions_of(p: Poset, s: DkMinusSet) -> List[str]:
    """Every z such that s plus z is a d_k-interval (the union equals [w_k, z])."""
    return [p.elements[z] for z in raw_completions(p, to_raw(p, s))]


def free_completions_of(p: Poset, s: DkMinusSet) -> List[str]:
    """Completions z that cover only elements of s."""
    raw = to_raw(p, s)
    mask = raw[4]
    return [p.elements[z] for z in raw_completions(p, raw) if not p.down[z] & ~mask]


def find_yk_sets(p: Poset, k: int) -> List[YkSet]:
    """All Y_k-sets; for k = 3 exactly the vees."""
    validate_k(k)
    return [_y_set(p, k, raw) for raw in raw_yk(p, k)]


def raw_lambda_yk(p: Poset, k: int) -> List[Tuple[int, int, _RawY]]:
    def build() -> List[Tuple[int, int, _RawY]]:
        found = []
        for raw in raw_yk(p, k):
            stem, x, y, _ = raw
            forks = [
                u
                for u in iter_bits(p.down[stem[0]])
                if popcount(p.interval_mask(u, x) | p.interval_mask(u, y)) == k + 1
            ]
            for u, v in combinations(forks, 2):
                found.append((u, v, raw))
        return found

    result: List[Tuple[int, int, _RawY]] = p.cached(("lambdayk", k), build)
    return result


def find_lambda_yk_sets(p: Poset, k: int) -> List[LambdaYkSet]:
    """All Lambda-Y_k-sets: forks u, v covered by w_k with [u; x, y] and [v; x, y] Y_{k+1}."""
    validate_k(k)
    ids = p.elements
    return [
        LambdaYkSet(k=k, forks=(ids[u], ids[v]), y_set=_y_set(p, k, raw))
        for u, v, raw in raw_lambda_yk(p, k)
    ]


def raw_overlaps(p: Poset, k: int) -> List[Tuple[_Raw, _Raw]]:
    def build() -> List[Tuple[_Raw, _Raw]]:
        pairs: List[Tuple[_Raw, _Raw]] = []
        if k == 3:
            by_elbows: Dict[Tuple[int, int], List[_Raw]] = {}
            for raw in raw_dk_minus(p, 3):
                by_elbows.setdefault((raw[1], raw[2]), []).append(raw)
            for group in by_elbows.values():
                pairs.extend(combinations(group, 2))
        else:
            size = 2 * k - 3
            seen = set()
            for raw in raw_dk_minus(p, k):
                tail, x, y, neck, mask = raw
                w, u = tail[0], tail[1]
                # u must be the only element covering w
                if p.up[w] != 1 << u:
                    continue
                for other in iter_bits(p.down[u] & ~(1 << w)):
                    other_mask = p.interval_mask(other, neck[-1])
                    if popcount(other_mask) != size:
                        continue
                    key = (min(w, other), max(w, other), neck[-1])
                    if key in seen:
                        continue
                    seen.add(key)
                    twin = ((other,) + tail[1:], x, y, neck, other_mask)
                    first, second = sorted((raw, twin), key=_raw_key)
                    pairs.append((first, second))
        pairs.sort(key=lambda pair: (_raw_key(pair[0]), _raw_key(pair[1])))
        return pairs

    result: List[Tuple[_Raw, _Raw]] = p.cached(("overlap", k), build)
    return result


def overlapping_dk_minus_pairs(p: Poset, k: int) -> List[OverlapPair]:
    """Pairs of overlapping d_k^- -sets.

    For k = 3: vees {w; x, y} and {w'; x, y} with w != w'. For k >= 4:
    d_k^- -intervals [w, z'] and [w', z'] where w' != w is covered by the
    element u that is the unique upper cover of w.
    """
    validate_k(k)
    return [
        (_minus_set(p, k, first), _minus_set(p, k, second))
        for first, second in raw_overlaps(p, k)
    ]


def classify_vee_pairs(p: Poset) -> Dict[str, List[Tuple[Vee, Vee]]]:
    """Sort pairs of distinct vees that share a bottom or an elbow.

    ``criss_cross``: same elbows, different bottoms.
    ``triply_covered``: same bottom, so it has three or four upper covers.
    ``w``: one shared elbow and different bottoms.
    """
    vees = find_vees(p)
    classes: Dict[str, List[Tuple[Vee, Vee]]] = {
        "criss_cross": [],
        "triply_covered": [],
        "w": [],
    }
    for first, second in combinations(vees, 2):
        shared = len(set(first.elbows) & set(second.elbows))
        if shared == 2:
            classes["criss_cross"].append((first, second))
        elif first.bottom == second.bottom:
            classes["triply_covered"].append((first, second))
        elif shared == 1:
            classes["w"].append((first, second))
    return classes


def completion_chain(
    p: Poset, y_set: YkSet, free: bool = False
) -> Optional[Tuple[str, ...]]:
    """Find z_3 -> ... -> z_k with every [w_h, z_h] a d_h-interval.

    With ``free`` each z_h must also cover only elements of [w_h, z_h].
    Returns the chain or None if there is none.
    """
    stem = tuple(p.index(s) for s in y_set.stem)
    x, y = (p.index(e) for e in y_set.elbows)
    k = len(stem) + 2

    def extend(h: int, chain: Tuple[int, ...]) -> Optional[Tuple[int, ...]]:
        w = stem[k - h]
        candidates = p.up[chain[-1]] if chain else p.up[x] & p.up[y]
        for z in iter_bits(candidates):
            mask = p.interval_mask(w, z)
            if popcount(mask) != 2 * h - 2:
                continue
            if free and p.down[z] & ~mask:
                continue
            if h == k:
                return chain + (z,)
            found = extend(h + 1, chain + (z,))
            if found is not None:
                return found
        return None

    result = extend(3, ())
    if result is None:
        return None
    return tuple(p.elements[i] for i in result)


def find_structures(p: Poset, kind: str, k: int = 3) -> List[Any]:
    """Dispatch on a structure kind name (see STRUCTURE_KINDS)."""
    if kind == "diamond":
        return find_diamonds(p)
    if kind == "vee":
        return find_vees(p)
    if kind == "dk":
        return find_dk_intervals(p, k)
    if kind == "dkminus":
        return find_dk_minus_sets(p, k)
    if kind == "yk":
        return find_yk_sets(p, k)
    if kind == "lambdayk":
        return find_lambda_yk_sets(p, k)
    if kind == "overlap":
        return overlapping_dk_minus_pairs(p, k)
    raise ValueError(f"Unknown structure kind: {kind!r}")


def structure_to_dict(hit: Any) -> Any:
    """JSON-ready form of any finder result."""
    if isinstance(hit, Vee):
        return {"kind": "vee", "bottom": hit.bottom, "elbows": list(hit.elbows)}
    if isinstance(hit, tuple) and len(hit) == 2 and isinstance(hit[0], DkMinusSet):
        return {"kind": "overlap", "pair": [hit[0].to_dict(), hit[1].to_dict()]}
    return hit.to_dict()
