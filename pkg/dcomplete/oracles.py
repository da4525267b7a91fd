"""Independent oracles built on networkx graph isomorphism.

These re-derive what the structure scanners and the enumerator compute, by
brute force over small posets, and report any mismatch:

- d_k-intervals: every interval [w, z] isomorphic to the double-tailed
  diamond template;
- completions: every z for which a d_k^- -set plus z is such an interval;
- d_k-completeness: the cover-exactly definition scanned over all elements;
- poset counts: naturally labeled posets quotiented by isomorphism.
"""

from __future__ import annotations

import logging
from itertools import combinations
from typing import Dict, Iterable, List, Set, Tuple

import networkx as nx

from .certify import AuditReport, is_dk_complete_kokyuroku, k_max
from .generators import gen_dtd
from .poset import Poset, iter_bits, popcount
from .structures import find_dk_intervals, raw_completions, raw_dk_minus, validate_k

logger = logging.getLogger(__name__)


def to_digraph(p: Poset) -> nx.DiGraph:
    """Hasse diagram as a directed graph (edges point upward)."""
    graph = nx.DiGraph()
    graph.add_nodes_from(p.elements)
    graph.add_edges_from((p.elements[i], p.elements[j]) for i, j in p.cover_pairs())
    return graph


def _mask_digraph(p: Poset, mask: int) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(iter_bits(mask))
    graph.add_edges_from(
        (i, j) for i in iter_bits(mask) for j in iter_bits(p.up[i] & mask)
    )
    return graph


def _templates(k: int) -> Tuple[nx.DiGraph, nx.DiGraph]:
    """Cover graphs of the d_k template and of the template minus its top."""
    dtd = to_digraph(gen_dtd(k))
    truncated = dtd.copy()
    truncated.remove_node(f"f{k}")
    return dtd, truncated


def template_intervals(p: Poset, k: int) -> Set[Tuple[str, str]]:
    """(bottom, top) of every interval whose cover graph matches the d_k template."""
    validate_k(k)
    dtd, _ = _templates(k)
    found = set()
    for w in range(p.n):
        for z in iter_bits(p.above[w]):
            mask = p.interval_mask(w, z)
            if popcount(mask) == 2 * k - 2 and nx.is_isomorphic(_mask_digraph(p, mask), dtd):
                found.add((p.elements[w], p.elements[z]))
    return found


def template_minus_sets(p: Poset, k: int) -> Set[Tuple[str, ...]]:
    """Sorted member tuples of every d_k^- -set found by isomorphism.

    For k = 3 the template minus its maximum is a vee, which is not an
    interval, so every triple {w, x, y} with x, y above w is matched; for
    k >= 4 the intervals matching the template minus its maximum.
    """
    validate_k(k)
    found: Set[Tuple[str, ...]] = set()
    _, truncated = _templates(k)
    if k == 3:
        for w in range(p.n):
            for x, y in combinations(iter_bits(p.above[w]), 2):
                mask = (1 << w) | (1 << x) | (1 << y)
                if nx.is_isomorphic(_mask_digraph(p, mask), truncated):
                    found.add(tuple(sorted(p.ids_of(mask))))
        return found
    for w in range(p.n):
        for t in iter_bits(p.above[w]):
            mask = p.interval_mask(w, t)
            if popcount(mask) == 2 * k - 3 and nx.is_isomorphic(
                _mask_digraph(p, mask), truncated
            ):
                found.add(tuple(sorted(p.ids_of(mask))))
    return found


def brute_force_completions(p: Poset, members: Iterable[str], k: int) -> List[str]:
    """Every z outside the set whose interval from the set's bottom is the set plus z
    and matches the d_k template."""
    mask = p.mask_of(members)
    bottoms = [i for i in iter_bits(mask) if not p.below[i] & mask]
    dtd, _ = _templates(k)
    found = []
    for z in range(p.n):
        if (mask >> z) & 1:
            continue
        for w in bottoms:
            if p.interval_mask(w, z) == mask | (1 << z) and nx.is_isomorphic(
                _mask_digraph(p, mask | (1 << z)), dtd
            ):
                found.append(p.elements[z])
    return found


def brute_force_kokyuroku(p: Poset, k: int) -> bool:
    """Scan every element for one covering exactly the maximal element(s)
    of each d_k^- -set and no other set's maximal element(s)."""
    sets = [p.mask_of(members) for members in sorted(template_minus_sets(p, k))]
    maxima = [sum(1 << i for i in iter_bits(s) if not p.above[i] & s) for s in sets]
    for index, target in enumerate(maxima):
        if not any(
            p.down[z] == target
            and all(m & ~p.down[z] for j, m in enumerate(maxima) if j != index)
            for z in range(p.n)
        ):
            return False
    return True


def labeled_quotient_count(n: int) -> int:
    """Isomorphism classes of n-element posets, by brute force.

    Every poset has a natural labeling, so it suffices to close every set
    of pairs i < j transitively and quotient the distinct results.
    """
    pairs = list(combinations(range(n), 2))
    closures: Set[frozenset] = set()
    for size in range(len(pairs) + 1):
        for chosen in combinations(pairs, size):
            graph = nx.DiGraph()
            graph.add_nodes_from(range(n))
            graph.add_edges_from(chosen)
            closures.add(frozenset(nx.transitive_closure_dag(graph).edges()))

    buckets: Dict[str, List[nx.DiGraph]] = {}
    classes = 0
    for edges in closures:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(n))
        graph.add_edges_from(edges)
        bucket = buckets.setdefault(nx.weisfeiler_lehman_graph_hash(graph), [])
        if not any(nx.is_isomorphic(graph, other) for other in bucket):
            bucket.append(graph)
            classes += 1
    return classes


def has_isomorphic_duplicates(posets: List[Poset]) -> bool:
    """Pairwise isomorphism test over a corpus (quadratic; small corpora only)."""
    graphs = [to_digraph(p) for p in posets]
    buckets: Dict[str, List[nx.DiGraph]] = {}
    for graph in graphs:
        bucket = buckets.setdefault(nx.weisfeiler_lehman_graph_hash(graph), [])
        if any(nx.is_isomorphic(graph, other) for other in bucket):
            return True
        bucket.append(graph)
    return False


def verify_oracles(corpus: Iterable[Poset]) -> AuditReport:
    """Compare every scanner against its oracle on each poset of the corpus."""
    audit = AuditReport("oracles")
    for p in corpus:
        for k in range(3, k_max(p) + 1):
            audit.count("dk_intervals")
            scanned = {(d.bottom, d.top) for d in find_dk_intervals(p, k)}
            expected = template_intervals(p, k)
            if scanned != expected:
                audit.fail(
                    "dk_intervals",
                    poset=p.to_dict(),
                    k=k,
                    scanned=sorted(scanned),
                    expected=sorted(expected),
                )

            audit.count("dk_minus_sets")
            raws = raw_dk_minus(p, k)
            scanned_sets = {tuple(sorted(p.ids_of(raw[4]))) for raw in raws}
            if scanned_sets != template_minus_sets(p, k):
                audit.fail("dk_minus_sets", poset=p.to_dict(), k=k)

            for raw in raws:
                audit.count("completions")
                fast = sorted(p.elements[z] for z in raw_completions(p, raw))
                slow = sorted(brute_force_completions(p, p.ids_of(raw[4]), k))
                if fast != slow:
                    audit.fail(
                        "completions",
                        poset=p.to_dict(),
                        k=k,
                        members=list(p.ids_of(raw[4])),
                        scanned=fast,
                        expected=slow,
                    )

            audit.count("kokyuroku")
            if is_dk_complete_kokyuroku(p, k).verdict != brute_force_kokyuroku(p, k):
                audit.fail("kokyuroku", poset=p.to_dict(), k=k)
    logger.info(
        "Oracle sweep: %d check(s), %d mismatch(es)",
        sum(audit.checks.values()),
        len(audit.failures),
    )
    return audit
