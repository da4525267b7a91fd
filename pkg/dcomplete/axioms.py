"""Axiom and property checkers with witnesses.

Each checker scans structures in canonical order and stops at the first
violation, so the reported witness is the least violating configuration.
Witnesses are plain dictionaries with a ``kind`` key and role-labeled
element ids; :func:`confirm_witness` re-validates one against a poset.

Verdicts are memoized on the poset, keyed by the condition id.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Set, Tuple, Union

from .poset import (
    NotRanked,
    Poset,
    component_masks,
    is_connected,
    iter_bits,
    popcount,
    rank_function,
)
from .structures import (
    raw_completions,
    raw_dk,
    raw_dk_minus,
    raw_lambda_yk,
    raw_overlaps,
    raw_vees,
    raw_yk,
    validate_k,
)

Witness = Dict[str, Any]


class Axiom(str, Enum):
    """Named axioms. The first seven are specific to k = 3."""

    VT = "VT"
    D3mC = "D3mC"
    FT = "FT"
    D3MF = "D3MF"
    D3mCF = "D3mCF"
    NCC = "NCC"
    D3MD = "D3MD"
    DkmC = "DkmC"
    DkMF = "DkMF"
    DkmCF = "DkmCF"
    NODkm = "NODkm"
    DkMD = "DkMD"

    @property
    def k_indexed(self) -> bool:
        return self in _GENERAL_AXIOMS


class Property(str, Enum):
    """Named properties. UCk, YECOI and NLYk take a k."""

    UPUE = "UPUE"
    UM = "UM"
    CLMEE = "CLMEE"
    CLE = "CLE"
    SS = "SS"
    DAI = "DAI"
    NTC = "NTC"
    UT = "UT"
    UCk = "UCk"
    YECOI = "YECOI"
    NLYk = "NLYk"
    Ranked = "Ranked"
    Conn = "Conn"

    @property
    def k_indexed(self) -> bool:
        return self in (Property.UCk, Property.YECOI, Property.NLYk)


_GENERAL_AXIOMS = frozenset(
    {Axiom.DkmC, Axiom.DkMF, Axiom.DkmCF, Axiom.NODkm, Axiom.DkMD}
)

# k = 3 names that are instances of a general axiom
K3_INSTANCES = {
    Axiom.D3mC: Axiom.DkmC,
    Axiom.D3MF: Axiom.DkMF,
    Axiom.D3mCF: Axiom.DkmCF,
    Axiom.NCC: Axiom.NODkm,
    Axiom.D3MD: Axiom.DkMD,
}


@dataclass(frozen=True)
class AxiomId:
    """An axiom at a given k. k is forced to 3 for the k = 3 names."""

    name: Axiom
    k: int = 3

    def __post_init__(self) -> None:
        object.__setattr__(self, "name", Axiom(self.name))
        if self.name.k_indexed:
            validate_k(self.k)
        else:
            object.__setattr__(self, "k", 3)

    @property
    def label(self) -> str:
        return f"{self.name.value}[k={self.k}]" if self.name.k_indexed else self.name.value


@dataclass(frozen=True)
class PropertyId:
    """A property, with k for UCk, YECOI and NLYk."""

    name: Property
    k: int = 3

    def __post_init__(self) -> None:
        object.__setattr__(self, "name", Property(self.name))
        if self.name.k_indexed:
            validate_k(self.k)
        else:
            object.__setattr__(self, "k", 3)

    @property
    def label(self) -> str:
        return f"{self.name.value}[k={self.k}]" if self.name.k_indexed else self.name.value


ConditionId = Union[AxiomId, PropertyId]


@dataclass(frozen=True)
class AxiomReport:
    """Verdict for one axiom or property, with a witness when it fails."""

    id: Any
    verdict: bool
    witness: Optional[Witness] = None

    @property
    def label(self) -> str:
        return getattr(self.id, "label", str(self.id))

    def to_dict(self) -> Dict[str, Any]:
        return {"id": self.label, "verdict": self.verdict, "witness": self.witness}


def parse_condition(name: str, k: int = 3) -> ConditionId:
    """Look up an axiom or property by name (case-insensitive)."""
    wanted = name.strip().replace("-", "m").lower()
    for axiom in Axiom:
        if axiom.value.lower() == wanted:
            return AxiomId(axiom, k)
    for prop in Property:
        if prop.value.lower() == wanted:
            return PropertyId(prop, k)
    raise ValueError(f"Unknown axiom or property: {name!r}")


ALL_AXIOMS: Tuple[Axiom, ...] = tuple(Axiom)
ALL_PROPERTIES: Tuple[Property, ...] = tuple(Property)


# ----------------------------------------------------------------------
# witness helpers


def _ids(p: Poset, indices: Any) -> List[str]:
    return [p.elements[i] for i in indices]


def _minus_witness(p: Poset, raw: Tuple[Any, ...], k: int) -> Witness:
    tail, x, y, neck, _ = raw
    return {
        "kind": "dkminus",
        "k": k,
        "tail": _ids(p, tail),
        "elbows": _ids(p, (x, y)),
        "neck": _ids(p, neck),
    }


def _interval_witness(p: Poset, raw: Tuple[Any, ...], k: int) -> Witness:
    tail, x, y, neck, _ = raw
    return {
        "kind": "dk",
        "k": k,
        "tail": _ids(p, tail),
        "elbows": _ids(p, (x, y)),
        "neck": _ids(p, neck),
    }


def _vee_witness(p: Poset, w: int, x: int, y: int) -> Witness:
    return {"kind": "vee", "bottom": p.elements[w], "elbows": _ids(p, (x, y))}


# ----------------------------------------------------------------------
# axioms


def _vt(p: Poset) -> Tuple[bool, Optional[Witness]]:
    for w, x, y in raw_vees(p):
        if not p.up[x] & p.up[y]:
            return False, _vee_witness(p, w, x, y)
    return True, None


def _ft(p: Poset) -> Tuple[bool, Optional[Witness]]:
    for w, x, y in raw_vees(p):
        elbows = (1 << x) | (1 << y)
        for z in iter_bits(p.up[x] & p.up[y]):
            extra = p.down[z] & ~elbows
            if extra:
                witness = _vee_witness(p, w, x, y)
                witness.update(
                    kind="diamond", top=p.elements[z], extra_covered=_ids(p, iter_bits(extra))
                )
                return False, witness
    return True, None


def _dk_minus_completed(p: Poset, k: int) -> Tuple[bool, Optional[Witness]]:
    for raw in raw_dk_minus(p, k):
        if not raw_completions(p, raw):
            return False, _minus_witness(p, raw, k)
    return True, None


def _dk_max_free(p: Poset, k: int) -> Tuple[bool, Optional[Witness]]:
    for raw in raw_dk(p, k):
        top, mask = raw[3][-1], raw[4]
        extra = p.down[top] & ~mask
        if extra:
            witness = _interval_witness(p, raw, k)
            witness["extra_covered"] = _ids(p, iter_bits(extra))
            return False, witness
    return True, None


def _dk_minus_completed_freely(p: Poset, k: int) -> Tuple[bool, Optional[Witness]]:
    for raw in raw_dk_minus(p, k):
        mask = raw[4]
        completions = raw_completions(p, raw)
        if not any(not p.down[z] & ~mask for z in completions):
            witness = _minus_witness(p, raw, k)
            witness["completions"] = _ids(p, completions)
            return False, witness
    return True, None


def _no_overlaps(p: Poset, k: int) -> Tuple[bool, Optional[Witness]]:
    pairs = raw_overlaps(p, k)
    if pairs:
        first, second = pairs[0]
        return False, {
            "kind": "overlap",
            "k": k,
            "pair": [_minus_witness(p, first, k), _minus_witness(p, second, k)],
        }
    return True, None


def _dk_max_distinct(p: Poset, k: int) -> Tuple[bool, Optional[Witness]]:
    by_top: Dict[int, Tuple[Any, ...]] = {}
    for raw in raw_dk(p, k):
        top = raw[3][-1]
        if top in by_top:
            return False, {
                "kind": "shared_max",
                "k": k,
                "top": p.elements[top],
                "intervals": [
                    _interval_witness(p, by_top[top], k),
                    _interval_witness(p, raw, k),
                ],
            }
        by_top[top] = raw
    return True, None


_AXIOM_CHECKS = {
    Axiom.DkmC: _dk_minus_completed,
    Axiom.DkMF: _dk_max_free,
    Axiom.DkmCF: _dk_minus_completed_freely,
    Axiom.NODkm: _no_overlaps,
    Axiom.DkMD: _dk_max_distinct,
}


def check_axiom(p: Poset, axiom_id: AxiomId) -> AxiomReport:
    """Decide one axiom on a poset.

    Axioms quantified over structures that do not occur hold vacuously.

    Raises:
        InvalidKError: If a general axiom is given k < 3.
    """

    def compute() -> AxiomReport:
        name = axiom_id.name
        if name is Axiom.VT:
            verdict, witness = _vt(p)
        elif name is Axiom.FT:
            verdict, witness = _ft(p)
        else:
            general = K3_INSTANCES.get(name, name)
            verdict, witness = _AXIOM_CHECKS[general](p, axiom_id.k)
        return AxiomReport(id=axiom_id, verdict=verdict, witness=witness)

    report: AxiomReport = p.cached(("axiom", axiom_id), compute)
    return report


# ----------------------------------------------------------------------
# properties


def _upue(p: Poset) -> Tuple[bool, Optional[Witness]]:
    for w in range(p.n):
        for x in iter_bits(p.up[w]):
            at_or_above_x = p.above[x] | (1 << x)
            for y in iter_bits(p.above[w] | (1 << w)):
                if (at_or_above_x >> y) & 1:
                    continue
                if not p.up[y] & at_or_above_x:
                    return False, {
                        "kind": "upue",
                        "w": p.elements[w],
                        "x": p.elements[x],
                        "y": p.elements[y],
                    }
    return True, None


def _unique_max(p: Poset) -> Tuple[bool, Optional[Witness]]:
    maximal = p.maximal_mask()
    if popcount(maximal) == 1:
        return True, None
    return False, {"kind": "maximal", "elements": _ids(p, iter_bits(maximal))}


def chain_lengths(p: Poset) -> List[Dict[int, Set[int]]]:
    """For each x, the lengths of saturated chains from x to each y > x."""

    def build() -> List[Dict[int, Set[int]]]:
        lengths: List[Dict[int, Set[int]]] = [dict() for _ in range(p.n)]
        for x in sorted(range(p.n), key=lambda i: popcount(p.above[i])):
            table = lengths[x]
            for c in iter_bits(p.up[x]):
                table.setdefault(c, set()).add(1)
                for y, ls in lengths[c].items():
                    table.setdefault(y, set()).update(length + 1 for length in ls)
        return lengths

    result: List[Dict[int, Set[int]]] = p.cached("chain_lengths", build)
    return result


def _clmee(p: Poset) -> Tuple[bool, Optional[Witness]]:
    verdict, witness = _unique_max(p)
    if not verdict:
        return False, witness
    top = next(iter_bits(p.maximal_mask()))
    lengths = chain_lengths(p)
    for w in range(p.n):
        ls = lengths[w].get(top)
        if ls is not None and len(ls) > 1:
            return False, {
                "kind": "chain_lengths",
                "lower": p.elements[w],
                "upper": p.elements[top],
                "lengths": sorted(ls),
            }
    return True, None


def _cle(p: Poset) -> Tuple[bool, Optional[Witness]]:
    lengths = chain_lengths(p)
    for x in range(p.n):
        for y in sorted(lengths[x]):
            if len(lengths[x][y]) > 1:
                return False, {
                    "kind": "chain_lengths",
                    "lower": p.elements[x],
                    "upper": p.elements[y],
                    "lengths": sorted(lengths[x][y]),
                }
    return True, None


def _ss(p: Poset) -> Tuple[bool, Optional[Witness]]:
    for w in range(p.n):
        reach = 0
        for u in iter_bits(p.up[w]):
            reach |= p.up[u]
        for z in iter_bits(reach):
            size = popcount(p.interval_mask(w, z))
            if size not in (3, 4):
                return False, {
                    "kind": "short_interval",
                    "lower": p.elements[w],
                    "upper": p.elements[z],
                    "size": size,
                }
    return True, None


def _dai(p: Poset) -> Tuple[bool, Optional[Witness]]:
    for w, x, y in raw_vees(p):
        for z in iter_bits(p.up[x] & p.up[y]):
            size = popcount(p.interval_mask(w, z))
            if size != 4:
                witness = _vee_witness(p, w, x, y)
                witness.update(kind="diamond", top=p.elements[z], interval_size=size)
                return False, witness
    return True, None


def _ntc(p: Poset) -> Tuple[bool, Optional[Witness]]:
    for w in range(p.n):
        if popcount(p.up[w]) >= 3:
            return False, {
                "kind": "triply_covered",
                "element": p.elements[w],
                "covers": _ids(p, iter_bits(p.up[w])),
            }
    return True, None


def _ut(p: Poset) -> Tuple[bool, Optional[Witness]]:
    for w, x, y in raw_vees(p):
        tops = p.up[x] & p.up[y]
        if popcount(tops) != 1:
            witness = _vee_witness(p, w, x, y)
            witness["tops"] = _ids(p, iter_bits(tops))
            return False, witness
    return True, None


def _unique_completion(p: Poset, k: int) -> Tuple[bool, Optional[Witness]]:
    for raw in raw_dk_minus(p, k):
        completions = raw_completions(p, raw)
        if len(completions) != 1:
            witness = _minus_witness(p, raw, k)
            witness["completions"] = _ids(p, completions)
            return False, witness
    return True, None


def _yecoi(p: Poset, k: int) -> Tuple[bool, Optional[Witness]]:
    for stem, x, y, mask in raw_yk(p, k):
        for s in stem:
            outside = p.up[s] & ~mask
            if outside:
                return False, {
                    "kind": "yk",
                    "k": k,
                    "stem": _ids(p, stem),
                    "elbows": _ids(p, (x, y)),
                    "stem_element": p.elements[s],
                    "outside_covers": _ids(p, iter_bits(outside)),
                }
    return True, None


def _no_lambda_yk(p: Poset, k: int) -> Tuple[bool, Optional[Witness]]:
    found = raw_lambda_yk(p, k)
    if found:
        u, v, (stem, x, y, _) = found[0]
        return False, {
            "kind": "lambdayk",
            "k": k,
            "forks": _ids(p, (u, v)),
            "stem": _ids(p, stem),
            "elbows": _ids(p, (x, y)),
        }
    return True, None


def _ranked(p: Poset) -> Tuple[bool, Optional[Witness]]:
    result = rank_function(p)
    if isinstance(result, NotRanked):
        witness = result.to_dict()
        del witness["ranked"]
        witness["kind"] = "not_ranked"
        return False, witness
    return True, None


def _conn(p: Poset) -> Tuple[bool, Optional[Witness]]:
    if is_connected(p):
        return True, None
    return False, {"kind": "components", "count": len(component_masks(p))}


_PROPERTY_CHECKS = {
    Property.UPUE: _upue,
    Property.UM: _unique_max,
    Property.CLMEE: _clmee,
    Property.CLE: _cle,
    Property.SS: _ss,
    Property.DAI: _dai,
    Property.NTC: _ntc,
    Property.UT: _ut,
    Property.Ranked: _ranked,
    Property.Conn: _conn,
}

_K_PROPERTY_CHECKS = {
    Property.UCk: _unique_completion,
    Property.YECOI: _yecoi,
    Property.NLYk: _no_lambda_yk,
}


def check_property(p: Poset, property_id: PropertyId) -> AxiomReport:
    """Decide one property on a poset.

    UM is false for the empty poset and for disconnected posets; CLMEE is
    false whenever UM is.
    """

    def compute() -> AxiomReport:
        name = property_id.name
        if name.k_indexed:
            verdict, witness = _K_PROPERTY_CHECKS[name](p, property_id.k)
        else:
            verdict, witness = _PROPERTY_CHECKS[name](p)
        return AxiomReport(id=property_id, verdict=verdict, witness=witness)

    report: AxiomReport = p.cached(("property", property_id), compute)
    return report


def check(p: Poset, condition: ConditionId) -> AxiomReport:
    """Dispatch to check_axiom or check_property."""
    if isinstance(condition, AxiomId):
        return check_axiom(p, condition)
    return check_property(p, condition)


def holds(p: Poset, condition: ConditionId) -> bool:
    return check(p, condition).verdict


def check_all(p: Poset, k: int) -> List[AxiomReport]:
    """Every axiom and property, general ones at k."""
    reports = [check_axiom(p, AxiomId(axiom, k)) for axiom in Axiom]
    reports += [check_property(p, PropertyId(prop, k)) for prop in Property]
    return reports


# ----------------------------------------------------------------------
# witness re-validation


def confirm_witness(p: Poset, report: AxiomReport) -> bool:
    """Re-run the violated condition on the witness elements alone.

    Returns True iff the witness still shows the violation. Reports that
    hold (or carry no witness) confirm trivially.
    """
    if report.verdict or report.witness is None:
        return True
    w = report.witness
    idx = p.index
    name = report.id.name
    kind = w["kind"]

    if kind in ("vee", "diamond"):
        bottom = idx(w["bottom"])
        x, y = (idx(e) for e in w["elbows"])
        if not (p.up[bottom] >> x) & 1 or not (p.up[bottom] >> y) & 1:
            return False
        tops = p.up[x] & p.up[y]
        if name is Axiom.VT:
            return not tops
        if name is Property.UT:
            return popcount(tops) != 1
        top = idx(w["top"])
        if not (tops >> top) & 1:
            return False
        if name is Axiom.FT:
            return bool(p.down[top] & ~((1 << x) | (1 << y)))
        return popcount(p.interval_mask(bottom, top)) != 4

    if kind in ("dkminus", "dk"):
        raw = _raw_from_witness(p, w)
        k = w["k"]
        if kind == "dk":
            raw_minus = (raw[0], raw[1], raw[2], raw[3][:-1], raw[4] & ~(1 << raw[3][-1]))
            if not _is_minus_set(p, k, raw_minus) or raw[3][-1] not in raw_completions(
                p, raw_minus
            ):
                return False
            return bool(p.down[raw[3][-1]] & ~raw[4])
        if not _is_minus_set(p, k, raw):
            return False
        completions = raw_completions(p, raw)
        general = K3_INSTANCES.get(name, name) if isinstance(name, Axiom) else name
        if general is Axiom.DkmC:
            return not completions
        if general is Axiom.DkmCF:
            return all(p.down[z] & ~raw[4] for z in completions)
        return len(completions) != 1

    if kind == "overlap":
        first, second = (_raw_from_witness(p, part) for part in w["pair"])
        k = w["k"]
        if not (_is_minus_set(p, k, first) and _is_minus_set(p, k, second)):
            return False
        if first[0][0] == second[0][0]:
            return False
        if first[0][1:] != second[0][1:] or first[1:4] != second[1:4]:
            return False
        if k == 3:
            return True
        # the unique upper cover of one bottom must cover the other
        u = first[0][1]
        return p.up[first[0][0]] == 1 << u or p.up[second[0][0]] == 1 << u

    if kind == "shared_max":
        raws = [_raw_from_witness(p, part) for part in w["intervals"]]
        k = w["k"]
        tops = {raw[3][-1] for raw in raws}
        sizes_ok = all(
            popcount(p.interval_mask(raw[0][0], raw[3][-1])) == 2 * k - 2
            and p.interval_mask(raw[0][0], raw[3][-1]) == raw[4]
            for raw in raws
        )
        return len(tops) == 1 and sizes_ok and raws[0][4] != raws[1][4]

    if kind == "upue":
        wi, x, y = idx(w["w"]), idx(w["x"]), idx(w["y"])
        at_or_above_x = p.above[x] | (1 << x)
        below_y = (y == wi) or bool((p.above[wi] >> y) & 1)
        return (
            bool((p.up[wi] >> x) & 1)
            and below_y
            and not (at_or_above_x >> y) & 1
            and not p.up[y] & at_or_above_x
        )

    if kind == "maximal":
        return popcount(p.maximal_mask()) != 1

    if kind == "chain_lengths":
        lower, upper = idx(w["lower"]), idx(w["upper"])
        return len(chain_lengths(p)[lower].get(upper, ())) > 1

    if kind == "short_interval":
        lower, upper = idx(w["lower"]), idx(w["upper"])
        middle = 0
        for u in iter_bits(p.up[lower]):
            middle |= p.up[u]
        return bool((middle >> upper) & 1) and popcount(
            p.interval_mask(lower, upper)
        ) not in (3, 4)

    if kind == "triply_covered":
        return popcount(p.up[idx(w["element"])]) >= 3

    if kind == "yk":
        stem = [idx(s) for s in w["stem"]]
        x, y = (idx(e) for e in w["elbows"])
        mask = p.interval_mask(stem[0], x) | p.interval_mask(stem[0], y)
        if popcount(mask) != len(stem) + 2:
            return False
        return bool(p.up[idx(w["stem_element"])] & ~mask)

    if kind == "lambdayk":
        stem = [idx(s) for s in w["stem"]]
        x, y = (idx(e) for e in w["elbows"])
        k = w["k"]
        if popcount(p.interval_mask(stem[0], x) | p.interval_mask(stem[0], y)) != k:
            return False
        return all(
            (p.down[stem[0]] >> u) & 1
            and popcount(p.interval_mask(u, x) | p.interval_mask(u, y)) == k + 1
            for u in (idx(f) for f in w["forks"])
        )

    if kind == "not_ranked":
        return isinstance(rank_function(p), NotRanked)

    if kind == "components":
        return not is_connected(p)

    raise ValueError(f"Unknown witness kind: {kind!r}")


def _raw_from_witness(p: Poset, w: Witness) -> Tuple[Any, ...]:
    tail = tuple(p.index(s) for s in w["tail"])
    neck = tuple(p.index(s) for s in w["neck"])
    x, y = (p.index(e) for e in w["elbows"])
    return (tail, x, y, neck, p.mask_of(list(w["tail"]) + list(w["elbows"]) + list(w["neck"])))


def _is_minus_set(p: Poset, k: int, raw: Tuple[Any, ...]) -> bool:
    tail, x, y, neck, mask = raw
    w = tail[0]
    if k == 3:
        return bool((p.up[w] >> x) & 1 and (p.up[w] >> y) & 1) and x != y
    if len(tail) != k - 2 or len(neck) != k - 3:
        return False
    return p.interval_mask(w, neck[-1]) == mask and popcount(mask) == 2 * k - 3
