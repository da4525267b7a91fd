"""d-completeness certification under five equivalent criteria.

A poset is d_k-complete under:

- ``Kokyuroku``: every d_k^- -set S has an element covering exactly the
  maximal element(s) of S and not the maximal element(s) of any other
  d_k^- -set;
- ``ComboA``..``ComboD``: conjunctions of the axioms DkmC, DkMF, DkmCF,
  NODkm and DkMD at k.

It is d_{<=k}-complete when d_h-complete for all 3 <= h <= k, and
d-complete when d_{<=k_max}-complete; no d_k^- -set (2k-3 elements) fits
beyond ``k_max``. All five criteria must agree at every k; a disagreement
is reported on the certificate and logged as an error.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Tuple

from .axioms import (
    Axiom,
    AxiomId,
    AxiomReport,
    Property,
    PropertyId,
    check_axiom,
    check_property,
)
from .exceptions import InvariantBreachError, NotDCompleteError
from .poset import (
    Poset,
    disjoint_union,
    induced_subposet,
    is_connected,
    iter_bits,
    popcount,
    up_closure_mask,
)
from .structures import raw_dk, raw_dk_minus, validate_k

logger = logging.getLogger(__name__)

FILTER_EXHAUSTIVE_LIMIT = 12
FILTER_SAMPLE_SIZE = 256

# properties that only make sense for connected posets
_CONNECTED_ONLY = frozenset({Property.UM, Property.CLMEE, Property.Conn})


class Criterion(str, Enum):
    KOKYUROKU = "Kokyuroku"
    COMBO_A = "ComboA"
    COMBO_B = "ComboB"
    COMBO_C = "ComboC"
    COMBO_D = "ComboD"

    @property
    def axioms(self) -> Tuple[Axiom, ...]:
        return COMBO_AXIOMS.get(self, ())

    @classmethod
    def parse(cls, name: str) -> "Criterion":
        wanted = name.strip().lower().replace("_", "").replace("-", "")
        for criterion in cls:
            if criterion.value.lower() in (wanted, "combo" + wanted):
                return criterion
        raise ValueError(f"Unknown criterion: {name!r}")


COMBO_AXIOMS: Dict[Criterion, Tuple[Axiom, ...]] = {
    Criterion.COMBO_A: (Axiom.DkmC, Axiom.DkMF, Axiom.NODkm),
    Criterion.COMBO_B: (Axiom.DkmC, Axiom.DkMF, Axiom.DkMD),
    Criterion.COMBO_C: (Axiom.DkmCF, Axiom.NODkm),
    Criterion.COMBO_D: (Axiom.DkmCF, Axiom.DkMD),
}


@dataclass(frozen=True)
class CriterionAt:
    """Report id for a criterion decided at k (``upto`` for d_{<=k})."""

    criterion: Criterion
    k: int
    upto: bool = False

    @property
    def label(self) -> str:
        scope = "<=" if self.upto else "="
        return f"{self.criterion.value}[k{scope}{self.k}]"


def k_max(p: Poset) -> int:
    """Largest k at which a d_k^- -set could exist (never below 3)."""
    return max(3, (len(p) + 3) // 2)


# ----------------------------------------------------------------------
# single-k criteria


def _maxima_mask(raw: Tuple[Any, ...]) -> int:
    _, x, y, neck, _ = raw
    return 1 << neck[-1] if neck else (1 << x) | (1 << y)


def _set_witness(p: Poset, raw: Tuple[Any, ...]) -> Dict[str, Any]:
    tail, x, y, neck, _ = raw
    ids = p.elements
    return {
        "tail": [ids[i] for i in tail],
        "elbows": [ids[x], ids[y]],
        "neck": [ids[i] for i in neck],
    }


def is_dk_complete_kokyuroku(p: Poset, k: int) -> AxiomReport:
    """Decide d_k-completeness directly from the cover-exactly definition.

    For k = 3 the completing element must not cover both elbows of another
    vee; for k >= 4 it must not cover the single maximal element of another
    d_k^- -set.
    """
    validate_k(k)

    def compute() -> AxiomReport:
        report_id = CriterionAt(Criterion.KOKYUROKU, k)
        sets = raw_dk_minus(p, k)
        maxima = [_maxima_mask(raw) for raw in sets]
        for index, raw in enumerate(sets):
            target = maxima[index]
            candidates = p.up[raw[3][-1]] if raw[3] else p.up[raw[1]] & p.up[raw[2]]
            exact = [z for z in iter_bits(candidates) if p.down[z] == target]
            if not exact:
                return AxiomReport(
                    report_id,
                    False,
                    {"kind": "uncompleted", "k": k, "set": _set_witness(p, raw)},
                )
            clash: Optional[Tuple[int, int]] = None
            for z in exact:
                others = [
                    j
                    for j, mask in enumerate(maxima)
                    if j != index and mask & ~p.down[z] == 0
                ]
                if not others:
                    clash = None
                    break
                if clash is None:
                    clash = (z, others[0])
            if clash is not None:
                z, other = clash
                return AxiomReport(
                    report_id,
                    False,
                    {
                        "kind": "shared_cover",
                        "k": k,
                        "z": p.elements[z],
                        "set": _set_witness(p, raw),
                        "other": _set_witness(p, sets[other]),
                    },
                )
        return AxiomReport(report_id, True, None)

    report: AxiomReport = p.cached(("kokyuroku", k), compute)
    return report


def combo_holds_at(p: Poset, criterion: Criterion, k: int) -> AxiomReport:
    """Conjunction of the criterion's axioms at k alone.

    The witness names the first failing axiom.
    """
    validate_k(k)
    if criterion is Criterion.KOKYUROKU:
        return is_dk_complete_kokyuroku(p, k)
    for axiom in criterion.axioms:
        report = check_axiom(p, AxiomId(axiom, k))
        if not report.verdict:
            witness = {"axiom": report.label, "violation": report.witness}
            return AxiomReport(CriterionAt(criterion, k), False, witness)
    return AxiomReport(CriterionAt(criterion, k), True, None)


def is_dleqk_complete(p: Poset, k: int, criterion: Criterion) -> AxiomReport:
    """d_h-complete under ``criterion`` for every 3 <= h <= k."""
    validate_k(k)
    for h in range(3, k + 1):
        report = combo_holds_at(p, criterion, h)
        if not report.verdict:
            return AxiomReport(
                CriterionAt(criterion, k, upto=True),
                False,
                {"k": h, "violation": report.witness},
            )
    return AxiomReport(CriterionAt(criterion, k, upto=True), True, None)


def is_d_complete(p: Poset, criterion: Criterion = Criterion.KOKYUROKU) -> AxiomReport:
    """d-completeness: d_{<=k_max}-complete; larger k hold vacuously."""
    return is_dleqk_complete(p, k_max(p), criterion)


# ----------------------------------------------------------------------
# certificate


@dataclass(frozen=True)
class CriterionVerdict:
    verdict: bool
    counterexample: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"verdict": self.verdict, "counterexample": self.counterexample}


@dataclass
class Certificate:
    """d-completeness decision under all five criteria.

    ``per_k`` maps each k to the d_{<=k} verdict of every criterion.
    """

    poset_hash: str
    k_max: int
    per_criterion: Dict[Criterion, CriterionVerdict]
    per_k: Dict[int, Dict[Criterion, bool]] = field(default_factory=dict)
    agreement: bool = True

    @property
    def d_complete(self) -> bool:
        return self.per_criterion[Criterion.KOKYUROKU].verdict

    def verdict_for(self, criterion: Criterion) -> bool:
        return self.per_criterion[criterion].verdict

    def to_dict(self) -> Dict[str, Any]:
        return {
            "poset_hash": self.poset_hash,
            "k_max": self.k_max,
            "d_complete": self.d_complete,
            "agreement": self.agreement,
            "per_criterion": {
                c.value: verdict.to_dict() for c, verdict in self.per_criterion.items()
            },
            "per_k": {
                str(k): {c.value: v for c, v in row.items()}
                for k, row in sorted(self.per_k.items())
            },
        }


def certify(p: Poset, strict: bool = False) -> Certificate:
    """Run all five criteria and cross-check their agreement at every k.

    Raises:
        InvariantBreachError: With ``strict``, if the criteria disagree.
    """
    top = k_max(p)
    per_k: Dict[int, Dict[Criterion, bool]] = {}
    first_failure: Dict[Criterion, Optional[Dict[str, Any]]] = {c: None for c in Criterion}
    alive = {c: True for c in Criterion}

    for k in range(3, top + 1):
        row: Dict[Criterion, bool] = {}
        for criterion in Criterion:
            if alive[criterion]:
                report = combo_holds_at(p, criterion, k)
                if not report.verdict:
                    alive[criterion] = False
                    first_failure[criterion] = {"k": k, "violation": report.witness}
            row[criterion] = alive[criterion]
        per_k[k] = row

    agreement = all(len(set(row.values())) == 1 for row in per_k.values())
    certificate = Certificate(
        poset_hash=p.digest(),
        k_max=top,
        per_criterion={
            c: CriterionVerdict(alive[c], first_failure[c]) for c in Criterion
        },
        per_k=per_k,
        agreement=agreement,
    )
    if not agreement:
        message = f"Criteria disagree on poset {certificate.poset_hash[:12]}"
        logger.error(message)
        if strict:
            raise InvariantBreachError(message)
    return certificate


# ----------------------------------------------------------------------
# audits on d-complete posets


@dataclass
class AuditReport:
    """Outcome of an audit: counts of checks run and any failures."""

    name: str
    checks: Dict[str, int] = field(default_factory=dict)
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def count(self, check: str) -> None:
        self.checks[check] = self.checks.get(check, 0) + 1

    def fail(self, check: str, **detail: Any) -> None:
        self.failures.append({"check": check, **detail})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "ok": self.ok,
            "checks": dict(sorted(self.checks.items())),
            "failures": self.failures,
        }


def _require_d_complete(p: Poset, operation: str) -> None:
    report = is_d_complete(p)
    if not report.verdict:
        raise NotDCompleteError(f"{operation} needs a d-complete poset: {report.witness}")


def _all_intervals(p: Poset) -> List[Tuple[int, Tuple[Any, ...]]]:
    return [(k, raw) for k in range(3, k_max(p) + 1) for raw in raw_dk(p, k)]


def neck_tail_audit(p: Poset) -> AuditReport:
    """Check how the necks and tails of DTD intervals may meet.

    - every neck element covers only elements of its interval;
    - with NTC, every tail element is covered only by elements of its interval;
    - intervals sharing a neck element (or, with NTC, a tail element) are
      nested, the smaller inside the larger;
    - for each k' >= k at most one d_{k'}-interval contains a d_k-interval,
      and it extends the tail downward and the neck upward.

    Raises:
        NotDCompleteError: If the poset is not d-complete.
    """
    _require_d_complete(p, "neck_tail_audit")
    audit = AuditReport("neck_tail")
    ntc = check_property(p, PropertyId(Property.NTC)).verdict
    intervals = _all_intervals(p)

    for k, (tail, x, y, neck, mask) in intervals:
        for z in neck:
            audit.count("neck_free")
            if p.down[z] & ~mask:
                audit.fail("neck_free", k=k, element=p.elements[z])
        if ntc:
            for w in tail:
                audit.count("tail_free")
                if p.up[w] & ~mask:
                    audit.fail("tail_free", k=k, element=p.elements[w])

    for (k, small), (k2, large) in _ordered_pairs(intervals):
        if k > k2:
            continue
        shares_neck = bool(set(small[3]) & set(large[3]))
        shares_tail = ntc and bool(set(small[0]) & set(large[0]))
        if shares_neck or shares_tail:
            audit.count("shared_implies_nested")
            if small[4] & ~large[4]:
                audit.fail(
                    "shared_implies_nested",
                    k=k,
                    k_prime=k2,
                    element=p.elements[small[0][0]],
                )

    for k, small in intervals:
        for k2 in range(k, k_max(p) + 1):
            containing = [raw for raw in raw_dk(p, k2) if not small[4] & ~raw[4]]
            audit.count("unique_container")
            if len(containing) > 1:
                audit.fail("unique_container", k=k, k_prime=k2, count=len(containing))
            for raw in containing:
                nested = (
                    raw[0][k2 - k :] == small[0]
                    and raw[3][: k - 2] == small[3]
                    and raw[1:3] == small[1:3]
                )
                if not nested:
                    audit.fail("nested_form", k=k, k_prime=k2)
    logger.debug("Neck/tail audit ran %d check(s)", sum(audit.checks.values()))
    return audit


def _ordered_pairs(items: List[Any]) -> Iterator[Tuple[Any, Any]]:
    for i, first in enumerate(items):
        for j, second in enumerate(items):
            if i != j:
                yield first, second


def iter_filters(p: Poset, seed: int = 0) -> Iterator[int]:
    """Yield filter masks: all of them up to FILTER_EXHAUSTIVE_LIMIT elements,
    otherwise FILTER_SAMPLE_SIZE up-closures of random subsets (plus the
    empty and full filters)."""
    if len(p) <= FILTER_EXHAUSTIVE_LIMIT:
        order = sorted(range(p.n), key=lambda i: popcount(p.above[i]))

        def grow(position: int, mask: int) -> Iterator[int]:
            if position == len(order):
                yield mask
                return
            i = order[position]
            yield from grow(position + 1, mask)
            if p.up[i] & ~mask == 0:
                yield from grow(position + 1, mask | (1 << i))

        yield from grow(0, 0)
        return

    rng = random.Random(seed)
    seen = {0, p.full_mask}
    yield 0
    yield p.full_mask
    for _ in range(FILTER_SAMPLE_SIZE):
        subset = rng.getrandbits(p.n) & rng.getrandbits(p.n)
        mask = up_closure_mask(p, subset)
        if mask not in seen:
            seen.add(mask)
            yield mask


def filter_closure_check(p: Poset, seed: int = 0) -> AuditReport:
    """Every filter of a d-complete poset is d-complete, and so is p + p.

    Raises:
        NotDCompleteError: If the poset is not d-complete.
    """
    _require_d_complete(p, "filter_closure_check")
    audit = AuditReport("filter_closure")
    for mask in iter_filters(p, seed):
        audit.count("filter")
        sub = induced_subposet(p, p.ids_of(mask))
        if not is_d_complete(sub).verdict:
            audit.fail("filter", members=list(sub.elements))
    audit.count("disjoint_union")
    if not is_d_complete(disjoint_union(p, p)).verdict:
        audit.fail("disjoint_union")
    logger.debug("Checked %d filter(s)", audit.checks.get("filter", 0))
    return audit


def consequence_suite(p: Poset) -> AuditReport:
    """All axioms at every 3 <= k <= k_max and every property.

    UM, CLMEE and Conn are exempt when the poset is not connected.

    Raises:
        NotDCompleteError: If the poset is not d-complete.
    """
    _require_d_complete(p, "consequence_suite")
    audit = AuditReport("consequences")
    connected = is_connected(p)
    reports: List[AxiomReport] = []
    for k in range(3, k_max(p) + 1):
        for axiom in Axiom:
            if axiom.k_indexed or k == 3:
                reports.append(check_axiom(p, AxiomId(axiom, k)))
        for prop in Property:
            if prop.k_indexed or k == 3:
                if prop in _CONNECTED_ONLY and not connected:
                    continue
                reports.append(check_property(p, PropertyId(prop, k)))
    for report in reports:
        audit.count(report.label)
        if not report.verdict:
            audit.fail(report.label, witness=report.witness)
    return audit
