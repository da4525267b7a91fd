"""Replay implication rows over poset corpora.

An :class:`ImplicationRow` says "on every poset where all hypotheses hold,
all conclusions hold". Rows marked ``k_indexed`` are checked at every
3 <= k <= k_max of each poset. A :class:`Term` names one condition and the
realm it is assumed in: at k alone, or for every 3 <= h <= k.

Negative controls are rows that are known to be false; the harness must
find at least one violation for each of them.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .axioms import Axiom, AxiomId, Property, PropertyId, check_axiom, check_property
from .certify import (
    AuditReport,
    Criterion,
    certify,
    combo_holds_at,
    consequence_suite,
    filter_closure_check,
    is_d_complete,
    k_max,
    neck_tail_audit,
)
from .poset import Poset, iter_bits, popcount
from .structures import completion_chain, find_yk_sets, raw_dk
from .utils import load_corpus

logger = logging.getLogger(__name__)

MAX_STORED_VIOLATIONS = 5

ProgressCallback = Callable[[int, int, str], None]


class Realm(str, Enum):
    AT_K = "at_k"
    ALL_H = "for_all_h_leq_k"


class Derived(str, Enum):
    """Per-structure conclusions of the tail-extension and Y_k lemmas."""

    ATT1 = "ATT1"
    ATT2 = "ATT2"
    YK_FREE_CHAINS = "YkFreeChains"
    YK_CHAINS = "YkChains"


Condition = Union[Axiom, Property, Criterion, Derived]


@dataclass(frozen=True)
class Term:
    condition: Condition
    realm: Realm = Realm.AT_K
    offset: int = 0

    @property
    def label(self) -> str:
        text = self.condition.value
        if self.realm is Realm.ALL_H:
            text += "(h<=k)"
        if self.offset:
            text += f"[k{self.offset:+d}]"
        return text


@dataclass(frozen=True)
class ImplicationRow:
    tag: str
    hypotheses: Tuple[Term, ...]
    conclusions: Tuple[Term, ...]
    k_indexed: bool = False
    asserted: bool = True
    finite_only: bool = False
    note: str = ""

    @property
    def label(self) -> str:
        hyps = ", ".join(t.label for t in self.hypotheses) or "(none)"
        return f"{hyps} => {', '.join(t.label for t in self.conclusions)}"


@dataclass
class Violation:
    poset: Dict[str, Any]
    k: int
    failed: List[str]

    def to_dict(self) -> Dict[str, Any]:
        return {"poset": self.poset, "k": self.k, "failed": self.failed}


@dataclass
class ImplicationResult:
    row: ImplicationRow
    posets_checked: int = 0
    hypothesis_hits: int = 0
    violation_count: int = 0
    violations: List[Violation] = field(default_factory=list)

    @property
    def status(self) -> str:
        if not self.row.asserted:
            return "FALSIFIED" if self.violation_count else "UNFALSIFIED"
        if self.violation_count:
            return "VIOLATED"
        return "VERIFIED" if self.hypothesis_hits else "VACUOUS"

    @property
    def ok(self) -> bool:
        if self.row.asserted:
            return self.violation_count == 0
        return self.violation_count > 0

    def record(self, violation: Violation) -> None:
        self.violation_count += 1
        if len(self.violations) < MAX_STORED_VIOLATIONS:
            self.violations.append(violation)

    def merge(self, other: "ImplicationResult") -> None:
        self.posets_checked += other.posets_checked
        self.hypothesis_hits += other.hypothesis_hits
        for violation in other.violations:
            if len(self.violations) < MAX_STORED_VIOLATIONS:
                self.violations.append(violation)
        self.violation_count += other.violation_count

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tag": self.row.tag,
            "row": self.row.label,
            "asserted": self.row.asserted,
            "k_indexed": self.row.k_indexed,
            "finite_only": self.row.finite_only,
            "note": self.row.note,
            "status": self.status,
            "posets_checked": self.posets_checked,
            "hypothesis_hits": self.hypothesis_hits,
            "violation_count": self.violation_count,
            "violations": [v.to_dict() for v in self.violations],
        }


# ----------------------------------------------------------------------
# term evaluation


def _att_holds(p: Poset, k: int, free_necks: bool) -> bool:
    for tail, x, y, neck, mask in raw_dk(p, k):
        if free_necks and any(p.down[z] & ~mask for z in neck):
            continue
        for a in iter_bits(p.down[tail[0]]):
            if popcount(p.interval_mask(a, x) | p.interval_mask(a, y)) != k + 1:
                continue
            if popcount(p.interval_mask(a, neck[-1])) != 2 * k - 1:
                return False
    return True


def _chains_hold(p: Poset, k: int, free: bool) -> bool:
    return all(completion_chain(p, y_set, free) is not None for y_set in find_yk_sets(p, k))


def derived_holds(p: Poset, condition: Derived, k: int) -> bool:
    """Decide a derived lemma conclusion at k."""

    def compute() -> bool:
        if condition is Derived.ATT1:
            return _att_holds(p, k, free_necks=True)
        if condition is Derived.ATT2:
            return _att_holds(p, k, free_necks=False)
        return _chains_hold(p, k, free=condition is Derived.YK_FREE_CHAINS)

    verdict: bool = p.cached(("derived", condition, k), compute)
    return verdict


def _holds_at(p: Poset, condition: Condition, k: int) -> bool:
    if isinstance(condition, Axiom):
        return check_axiom(p, AxiomId(condition, k)).verdict
    if isinstance(condition, Property):
        return check_property(p, PropertyId(condition, k)).verdict
    if isinstance(condition, Criterion):
        return combo_holds_at(p, condition, k).verdict
    return derived_holds(p, condition, k)


def term_holds(p: Poset, term: Term, k: int) -> bool:
    top = k + term.offset
    if term.realm is Realm.ALL_H:
        return all(_holds_at(p, term.condition, h) for h in range(3, top + 1))
    return _holds_at(p, term.condition, top)


# ----------------------------------------------------------------------
# row tables


def _at(*conditions: Condition) -> Tuple[Term, ...]:
    return tuple(Term(c) for c in conditions)


def _all_h(*conditions: Condition) -> Tuple[Term, ...]:
    return tuple(Term(c, Realm.ALL_H) for c in conditions)


A, P = Axiom, Property
_K3_ALL = (A.VT, A.D3mC, A.FT, A.D3MF, A.D3mCF, A.NCC, A.D3MD)
_D3_COMPLETE = _K3_ALL + (P.DAI, P.UT, P.UCk)
_D3_COMPLETE_NOTE = (
    "etc.: d_3-complete posets satisfy all k = 3 axioms and have DAI, UT and UC3"
)

TABLE_1: Tuple[ImplicationRow, ...] = (
    ImplicationRow("1a", _at(A.VT, A.NCC), _at(P.UT)),
    ImplicationRow("1b", _at(A.VT, P.DAI), _at(A.D3mC)),
    ImplicationRow("1c", _at(A.VT, P.NTC), _at(A.D3mC)),
    ImplicationRow("1d", _at(A.VT, P.SS), _at(A.D3mC)),
    ImplicationRow("1e", _at(A.VT, A.FT), _at(A.D3mC, A.D3MF)),
    ImplicationRow("1f", _at(A.D3mC, P.UT), _at(P.DAI)),
    ImplicationRow("1g", _at(A.D3mC, A.NCC), _at(P.UT, P.DAI, P.UCk)),
    ImplicationRow(
        "1h",
        _at(A.D3mC, A.D3MD, P.NTC),
        _at(A.NCC, P.UT, P.DAI, P.UCk),
        note="etc.: NCC, then the conclusions of row (g)",
    ),
    ImplicationRow("1i", _at(A.D3MF, A.NCC), _at(A.D3MD)),
    ImplicationRow("1j", _at(A.D3MF, P.DAI), _at(A.FT)),
    ImplicationRow("1k", _at(A.D3mCF, P.UCk), _at(A.D3mC, A.D3MF)),
    ImplicationRow("1l", _at(A.D3mCF, A.NCC), _at(*_D3_COMPLETE), note=_D3_COMPLETE_NOTE),
    ImplicationRow("1m", _at(A.D3mCF, A.D3MD), _at(*_D3_COMPLETE), note=_D3_COMPLETE_NOTE),
    ImplicationRow(
        "1n", _at(A.D3mC, A.D3MF, A.NCC), _at(*_D3_COMPLETE), note=_D3_COMPLETE_NOTE
    ),
    ImplicationRow("1o", _at(A.VT), _at(P.UPUE), note="checked on finite posets only"),
)

TABLE_2: Tuple[ImplicationRow, ...] = (
    ImplicationRow("2a", _at(A.VT, P.Conn), _at(P.UM, P.CLMEE), finite_only=True),
    ImplicationRow("2b", _at(A.VT), _at(P.Ranked, P.CLE), finite_only=True),
    ImplicationRow("2c", _at(A.VT, P.NTC), _at(P.SS), finite_only=True),
    ImplicationRow("2d", _at(A.D3mCF), _at(P.NTC), finite_only=True),
    ImplicationRow("2e", _at(A.D3mC, A.D3MF), _at(A.VT, A.FT), finite_only=True),
    ImplicationRow(
        "2f",
        _at(A.D3mC, A.D3MD),
        _at(A.NCC, P.NTC, P.UCk, P.UT, P.DAI, P.SS),
        finite_only=True,
        note="etc.: NTC brings in the conclusions of Table 1 row (h) and Table 2 row (c)",
    ),
)

TABLE_3: Tuple[ImplicationRow, ...] = (
    ImplicationRow("3a", _at(A.VT, A.DkmC, A.DkMD, P.NTC), _at(A.NODkm), k_indexed=True),
    ImplicationRow("3b", _at(A.DkmCF, P.UCk), _at(A.DkmC, A.DkMF), k_indexed=True),
    ImplicationRow("3c", _at(A.DkmCF, A.DkMD), _at(A.NODkm), k_indexed=True),
    ImplicationRow("3d", _all_h(A.DkmCF, A.NODkm), _at(A.DkMD), k_indexed=True),
    ImplicationRow("3e", _all_h(A.DkMF, A.NODkm), _at(A.DkMD), k_indexed=True),
    ImplicationRow(
        "3f", _all_h(A.DkmCF) + _at(A.NODkm), _at(P.UCk, A.DkMF), k_indexed=True
    ),
)

C = Criterion
TABLE_5: Tuple[ImplicationRow, ...] = (
    ImplicationRow("5a=>c", _at(C.COMBO_A), _at(C.COMBO_C), k_indexed=True),
    ImplicationRow("5c=>a", _all_h(C.COMBO_C), _at(C.COMBO_A), k_indexed=True),
    ImplicationRow("5d=>c", _at(C.COMBO_D), _at(C.COMBO_C), k_indexed=True),
    ImplicationRow("5c=>d", _all_h(C.COMBO_C), _at(C.COMBO_D), k_indexed=True),
    ImplicationRow("5b=>d", _at(C.COMBO_B), _at(C.COMBO_D), k_indexed=True),
    ImplicationRow("5a=>b", _all_h(C.COMBO_A), _at(C.COMBO_B), k_indexed=True),
    ImplicationRow("5d=>K", _at(C.COMBO_D), _at(C.KOKYUROKU), k_indexed=True),
    ImplicationRow("5K=>c", _at(C.KOKYUROKU), _at(C.COMBO_C), k_indexed=True),
)

TABLES: Dict[str, Tuple[ImplicationRow, ...]] = {
    "1": TABLE_1,
    "2": TABLE_2,
    "3": TABLE_3,
    "5": TABLE_5,
}

LEMMA_ROWS: Tuple[ImplicationRow, ...] = (
    ImplicationRow("YECOI", _at(A.VT, P.NTC), _at(P.YECOI), k_indexed=True),
    ImplicationRow("ATT1", (), _at(Derived.ATT1), k_indexed=True),
    ImplicationRow("YkCF", _all_h(A.DkmCF), _at(Derived.YK_FREE_CHAINS), k_indexed=True),
    ImplicationRow("ATT2", _at(A.VT, P.NTC), _at(Derived.ATT2), k_indexed=True),
    ImplicationRow(
        "YkC", _all_h(A.DkmC) + _at(P.NTC), _at(Derived.YK_CHAINS), k_indexed=True
    ),
    ImplicationRow(
        "NLYk",
        (Term(A.NODkm, offset=1),) + _all_h(A.DkmCF),
        _at(P.NLYk),
        k_indexed=True,
    ),
    ImplicationRow(
        "UCk#2", _all_h(A.DkmC) + _at(P.NTC, A.DkMD), _at(P.UCk), k_indexed=True
    ),
)

COROLLARY_ROWS: Tuple[ImplicationRow, ...] = (
    ImplicationRow("FT=>D3MF+DAI", _at(A.FT), _at(A.D3MF, P.DAI)),
    ImplicationRow("D3MF+DAI=>FT", _at(A.D3MF, P.DAI), _at(A.FT)),
    ImplicationRow("DiamondI+II=>NTC", _at(A.VT, A.FT), _at(P.NTC), finite_only=True),
    ImplicationRow("ClassicI+II=>NTC", _at(A.D3mC, A.D3MF), _at(P.NTC), finite_only=True),
    ImplicationRow("D3mC=>VT", _at(A.D3mC), _at(A.VT)),
    ImplicationRow("D3mCF=>D3mC", _at(A.D3mCF), _at(A.D3mC)),
    ImplicationRow("FT=>D3MF", _at(A.FT), _at(A.D3MF)),
    ImplicationRow("D3mC+D3MF=>D3mCF", _at(A.D3mC, A.D3MF), _at(A.D3mCF)),
    ImplicationRow("DkmCF=>DkmC", _at(A.DkmCF), _at(A.DkmC), k_indexed=True),
    ImplicationRow("DkmC+DkMF=>DkmCF", _at(A.DkmC, A.DkMF), _at(A.DkmCF), k_indexed=True),
    ImplicationRow("FT=>DAI", _at(A.FT), _at(P.DAI)),
    ImplicationRow("NTC=>DAI", _at(P.NTC), _at(P.DAI)),
    ImplicationRow("SS=>DAI", _at(P.SS), _at(P.DAI)),
)

NEGATIVE_CONTROLS: Tuple[ImplicationRow, ...] = (
    ImplicationRow("control:VT=>D3mC", _at(A.VT), _at(A.D3mC), asserted=False),
    ImplicationRow("control:D3MF=>FT", _at(A.D3MF), _at(A.FT), asserted=False),
)


def select_rows(table: str, tags: Optional[Sequence[str]] = None) -> Tuple[ImplicationRow, ...]:
    """Rows of a table, optionally filtered by row letter (``a``) or full tag (``1a``).

    Raises:
        KeyError: For an unknown table or row.
    """
    rows = TABLES[table]
    if not tags:
        return rows
    wanted = {t if t.startswith(table) else table + t for t in tags}
    unknown = wanted - {row.tag for row in rows}
    if unknown:
        raise KeyError(f"Unknown row(s) in table {table}: {', '.join(sorted(unknown))}")
    return tuple(row for row in rows if row.tag in wanted)


# ----------------------------------------------------------------------
# verification


def _k_values(
    p: Poset, row: ImplicationRow, k: Optional[int], k_limit: Optional[int] = None
) -> Sequence[int]:
    if k is not None:
        return (k,)
    if row.k_indexed:
        top = k_max(p) if k_limit is None else min(k_max(p), k_limit)
        return range(3, top + 1)
    return (3,)


def verify_row(
    row: ImplicationRow,
    corpus: Iterable[Poset],
    k: Optional[int] = None,
    k_limit: Optional[int] = None,
) -> ImplicationResult:
    """Check one row on every poset of the corpus.

    With ``k`` given the row is evaluated at that k only; otherwise k-indexed
    rows run at every k up to each poset's k_max, or up to ``k_limit``.
    """
    result = ImplicationResult(row)
    for p in corpus:
        result.posets_checked += 1
        for kk in _k_values(p, row, k, k_limit):
            if not all(term_holds(p, term, kk) for term in row.hypotheses):
                continue
            result.hypothesis_hits += 1
            failed = [t.label for t in row.conclusions if not term_holds(p, t, kk)]
            if failed:
                result.record(Violation(p.to_dict(), kk, failed))
    return result


_Chunk = Tuple[Tuple[ImplicationRow, ...], List[Poset], Optional[int]]


def _verify_chunk(args: _Chunk) -> List[ImplicationResult]:
    rows, chunk, k_limit = args
    return [verify_row(row, chunk, k_limit=k_limit) for row in rows]


def _chunks(items: List[Poset], size: int) -> List[List[Poset]]:
    return [items[i : i + size] for i in range(0, len(items), size)]


def verify_rows(
    rows: Sequence[ImplicationRow],
    corpus: Iterable[Poset],
    workers: int = 1,
    progress: Optional[ProgressCallback] = None,
    k_limit: Optional[int] = None,
) -> List[ImplicationResult]:
    """Verify several rows over a corpus, fanning out over a process pool.

    Chunk results are merged in chunk order, so the output does not depend
    on the number of workers.
    """
    posets = list(corpus)
    rows = tuple(rows)
    merged = [ImplicationResult(row) for row in rows]
    chunk_size = max(1, len(posets) // (max(workers, 1) * 8)) if posets else 1
    chunks = _chunks(posets, chunk_size)

    if workers > 1 and len(chunks) > 1:
        with mp.Pool(processes=workers) as pool:
            for done, partial in enumerate(
                pool.imap(_verify_chunk, [(rows, chunk, k_limit) for chunk in chunks]), start=1
            ):
                for total, part in zip(merged, partial):
                    total.merge(part)
                if progress:
                    progress(done, len(chunks), "chunks")
    else:
        for done, chunk in enumerate(chunks, start=1):
            for total, part in zip(merged, _verify_chunk((rows, chunk, k_limit))):
                total.merge(part)
            if progress:
                progress(done, len(chunks), "chunks")

    for result in merged:
        if result.status == "VACUOUS":
            logger.warning("Row %s is vacuous on this corpus", result.row.tag)
        elif not result.ok:
            logger.error("Row %s: %s", result.row.tag, result.status)
    logger.info("Verified %d row(s) over %d poset(s)", len(rows), len(posets))
    return merged


def verify_table(
    table: str,
    corpus: Iterable[Poset],
    tags: Optional[Sequence[str]] = None,
    workers: int = 1,
    progress: Optional[ProgressCallback] = None,
) -> List[ImplicationResult]:
    return verify_rows(select_rows(table, tags), corpus, workers, progress)


def verify_lemmas(
    corpus: Iterable[Poset],
    k_max: Optional[int] = None,
    workers: int = 1,
    progress: Optional[ProgressCallback] = None,
) -> List[ImplicationResult]:
    """Lemma and proposition rows at every k of every poset, up to ``k_max``
    when given."""
    return verify_rows(LEMMA_ROWS, corpus, workers, progress, k_limit=k_max)


def verify_corollaries(
    corpus: Iterable[Poset], workers: int = 1, progress: Optional[ProgressCallback] = None
) -> List[ImplicationResult]:
    """Corollary, remark and fact rows, plus the negative controls."""
    return verify_rows(COROLLARY_ROWS + NEGATIVE_CONTROLS, corpus, workers, progress)


def verify_agreement(corpus: Iterable[Poset]) -> AuditReport:
    """The five criteria agree at every k on every poset."""
    audit = AuditReport("agreement")
    for p in corpus:
        audit.count("certificate")
        certificate = certify(p)
        if not certificate.agreement:
            audit.fail("certificate", poset=p.to_dict(), certificate=certificate.to_dict())
    return audit


def verify_consequences(
    corpus: Iterable[Poset], progress: Optional[ProgressCallback] = None
) -> AuditReport:
    """Consequence suite, neck/tail audit and filter closure on every
    d-complete poset of the corpus."""
    audit = AuditReport("d_complete_consequences")
    posets = list(corpus)
    for done, p in enumerate(posets, start=1):
        if is_d_complete(p).verdict:
            audit.count("d_complete_posets")
            for report in (consequence_suite(p), neck_tail_audit(p), filter_closure_check(p)):
                for check, count in report.checks.items():
                    audit.checks[f"{report.name}.{check}"] = (
                        audit.checks.get(f"{report.name}.{check}", 0) + count
                    )
                for failure in report.failures:
                    audit.fail(report.name, poset=p.to_dict(), detail=failure)
        if progress:
            progress(done, len(posets), "posets")
    return audit


@dataclass
class ConjectureReport:
    """Search for finite D3mC posets that fail SS.

    ``vt_breaches`` holds D3mC posets that fail VT. D3mC implies VT, so any
    entry there is a checker fault and not a discovery.
    """

    posets_scanned: int = 0
    d3mc_posets: int = 0
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)
    vt_breaches: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "discovery" if self.counterexamples else "consistent"

    @property
    def ok(self) -> bool:
        return not self.vt_breaches

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status,
            "posets_scanned": self.posets_scanned,
            "d3mc_posets": self.d3mc_posets,
            "counterexamples": self.counterexamples,
            "vt_breaches": self.vt_breaches,
        }


def search_ss_counterexamples(corpus: Iterable[Poset]) -> ConjectureReport:
    """Scan for a D3mC poset that fails SS. Never raises on a hit."""
    report = ConjectureReport()
    for p in corpus:
        report.posets_scanned += 1
        if not check_axiom(p, AxiomId(Axiom.D3mC)).verdict:
            continue
        report.d3mc_posets += 1
        if not check_property(p, PropertyId(Property.SS)).verdict:
            report.counterexamples.append({"poset": p.to_dict(), "failed": ["SS"]})
            logger.warning("D3mC poset on %d elements fails SS: %s", len(p), p.to_dict())
        if not check_axiom(p, AxiomId(Axiom.VT)).verdict:
            report.vt_breaches.append(p.to_dict())
            logger.error("D3mC poset on %d elements fails VT: %s", len(p), p.to_dict())
    return report


def search_conjecture1(
    n_max: int, cap: Optional[int] = None, cache_dir: Optional[Path] = None
) -> ConjectureReport:
    """SS search over every poset with at most n_max elements."""
    return search_ss_counterexamples(load_corpus(n_max, cap, cache_dir))


def at_k_truth_table(corpus: Iterable[Poset], k: int) -> Dict[str, Dict[str, int]]:
    """For each ordered pair of criteria, count posets where the first holds
    at k alone and the second fails at k alone."""
    counts = {a.value: {b.value: 0 for b in Criterion if b is not a} for a in Criterion}
    for p in corpus:
        verdicts = {c: combo_holds_at(p, c, k).verdict for c in Criterion}
        for a in Criterion:
            if not verdicts[a]:
                continue
            for b in Criterion:
                if b is not a and not verdicts[b]:
                    counts[a.value][b.value] += 1
    return counts
