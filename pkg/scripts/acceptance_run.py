#!/usr/bin/env python3
"""
Acceptance sweep for the dcomplete toolkit.

Runs the long exhaustive checks that are too slow for the unit test suite:
criterion agreement, family positivity, named fixtures, the implication
tables, the consequence suite, the SS counterexample search and the
networkx oracle sweep.

Usage:
    python scripts/acceptance_run.py [--n-max N] [--workers W] [--skip-oracles]

Set DCOMPLETE_CACHE_DIR to reuse enumerated corpora between runs.
"""

import argparse
import random
import sys
import time

# Color codes for terminal output
GREEN = "\033[92m"
RED = "\033[91m"
YELLOW = "\033[93m"
BLUE = "\033[94m"
RESET = "\033[0m"
BOLD = "\033[1m"


def print_header(text):
    """Print a formatted header."""
    print(f"\n{BOLD}{BLUE}{'=' * 70}{RESET}")
    print(f"{BOLD}{BLUE}{text}{RESET}")
    print(f"{BOLD}{BLUE}{'=' * 70}{RESET}\n")


def print_success(text):
    print(f"{GREEN}[+] {text}{RESET}")


def print_error(text):
    print(f"{RED}[X] {text}{RESET}")


def print_warning(text):
    print(f"{YELLOW}[!] {text}{RESET}")


def print_info(text):
    print(f"{BLUE}[i] {text}{RESET}")


def check_agreement(corpus):
    """Criterion agreement at every k, plus the corpus count self-check."""
    print_header("Check 1: Five-criterion agreement")

    from dcomplete.enumeration import enum_all_posets
    from dcomplete.harness import verify_agreement
    from dcomplete.oracles import labeled_quotient_count

    ok = True
    for n, expected in ((3, 5), (5, 63)):
        enumerated = len(enum_all_posets(n))
        brute = labeled_quotient_count(n)
        if enumerated == brute == expected:
            print_success(f"n={n}: {enumerated} posets (oracle agrees)")
        else:
            print_error(f"n={n}: enumerated {enumerated}, oracle {brute}, expected {expected}")
            ok = False

    started = time.perf_counter()
    audit = verify_agreement(corpus)
    elapsed = time.perf_counter() - started
    print_info(f"{audit.checks.get('certificate', 0)} certificates in {elapsed:.1f}s")
    if audit.ok:
        print_success("All five criteria agree at every k")
    else:
        print_error(f"{len(audit.failures)} disagreement(s)")
        ok = False
    return ok


def check_families():
    """Every member of the standard families is d-complete."""
    print_header("Check 2: Family positivity")

    from dcomplete.certify import is_d_complete
    from dcomplete.generators import (
        gen_dtd,
        gen_random_tree,
        gen_shape,
        gen_shifted_shape,
        partitions,
        strict_partitions,
    )

    failures = 0
    checked = 0
    families = []
    for n in range(1, 13):
        families += [(f"shape {q}", gen_shape(q)) for q in partitions(n)]
        families += [(f"shifted {q}", gen_shifted_shape(q)) for q in strict_partitions(n)]
    families += [(f"dtd {k}", gen_dtd(k)) for k in range(3, 9)]
    rng = random.Random(2024)
    for seed in range(100):
        size = rng.randint(1, 15)
        families.append((f"tree n={size} seed={seed}", gen_random_tree(size, seed)))

    for name, p in families:
        checked += 1
        if not is_d_complete(p).verdict:
            print_error(f"{name} is not d-complete")
            failures += 1

    if failures == 0:
        print_success(f"{checked} family members are d-complete")
        return True
    print_error(f"{failures}/{checked} family members failed")
    return False


def check_fixtures():
    """Named fixtures: shifted (9,6,3,1), the 3-cube, diamond and chains."""
    print_header("Check 3: Named fixtures")

    from dcomplete.certify import certify
    from dcomplete.generators import (
        Partition,
        gen_boolean_lattice,
        gen_chain,
        gen_shifted_shape,
    )
    from dcomplete.parser import parse_edgelist_text
    from dcomplete.poset import top_tree

    ok = True
    shifted = gen_shifted_shape(Partition.of(9, 6, 3, 1))
    size, tree = len(shifted), len(top_tree(shifted))
    if (size, tree) == (19, 10):
        print_success("shifted (9,6,3,1): 19 elements, top tree of 10")
    else:
        print_error(f"shifted (9,6,3,1): {size} elements, top tree of {tree}")
        ok = False

    cube = certify(gen_boolean_lattice(3))
    named = any("MF" in str(v.counterexample) for v in cube.per_criterion.values())
    if not cube.d_complete and named:
        print_success("3-cube rejected with a max-free witness")
    else:
        print_error("3-cube was not rejected with a max-free witness")
        ok = False

    diamond = parse_edgelist_text("w x\nw y\nx z\ny z")
    if certify(diamond).d_complete and all(
        certify(gen_chain(n)).d_complete for n in range(0, 10)
    ):
        print_success("diamond and chains are d-complete")
    else:
        print_error("diamond or a chain was rejected")
        ok = False
    return ok


def check_tables(corpus, workers):
    """Asserted rows hold and negative controls are falsified."""
    print_header("Check 4: Implication tables")

    from dcomplete.harness import TABLES, verify_corollaries, verify_lemmas, verify_table

    ok = True
    results = []
    for table in TABLES:
        results += verify_table(table, corpus, workers=workers)
    results += verify_lemmas(corpus, workers=workers)
    results += verify_corollaries(corpus, workers=workers)

    for result in results:
        line = f"{result.row.tag:<22} {result.status:<11} hits={result.hypothesis_hits}"
        if not result.ok:
            print_error(line)
            ok = False
        elif result.status == "VACUOUS":
            print_warning(line)
        else:
            print_success(line)
    return ok


def check_consequences(corpus):
    print_header("Check 5: Consequences on d-complete posets")

    from dcomplete.harness import verify_consequences

    audit = verify_consequences(corpus)
    print_info(f"{audit.checks.get('d_complete_posets', 0)} d-complete posets audited")
    if audit.ok:
        print_success("All consequences, filters and neck/tail audits hold")
        return True
    print_error(f"{len(audit.failures)} failure(s)")
    return False


def check_ss_search(corpus):
    """An SS hit is a discovery, not a failure; a VT hit is a checker fault."""
    print_header("Check 6: Search for D3mC posets without SS")

    from dcomplete.harness import search_ss_counterexamples

    report = search_ss_counterexamples(corpus)
    print_info(f"{report.d3mc_posets} D3mC posets among {report.posets_scanned}")
    if report.counterexamples:
        print_warning(f"DISCOVERY: {len(report.counterexamples)} counterexample(s)")
        for hit in report.counterexamples:
            print_warning(str(hit))
    else:
        print_success("No D3mC poset fails SS")
    if report.vt_breaches:
        print_error(f"{len(report.vt_breaches)} D3mC poset(s) fail VT")
        return False
    return True


def check_oracles(corpus):
    print_header("Check 7: Oracle equivalence")

    from dcomplete.oracles import verify_oracles

    audit = verify_oracles(corpus)
    for check, count in sorted(audit.checks.items()):
        print_info(f"{check}: {count} comparison(s)")
    if audit.ok:
        print_success("Scanners match the networkx and brute-force oracles")
        return True
    print_error(f"{len(audit.failures)} mismatch(es)")
    return False


def main():
    """Run all checks."""
    parser = argparse.ArgumentParser(description="dcomplete acceptance sweep")
    parser.add_argument("--n-max", type=int, default=7, help="Corpus bound (default: 7)")
    parser.add_argument("--workers", type=int, default=1, help="Worker processes")
    parser.add_argument(
        "--skip-oracles", action="store_true", help="Skip the slow oracle sweep"
    )
    args = parser.parse_args()

    print(f"\n{BOLD}dcomplete - Acceptance Sweep{RESET}")
    print(
        f"{BOLD}Python {sys.version_info.major}.{sys.version_info.minor}.{sys.version_info.micro}{RESET}"
    )

    try:
        from dcomplete.utils import load_corpus, load_level
    except ImportError as e:
        print_error(f"Import failed: {e}")
        print_warning("Make sure the package is installed:")
        print_warning("  pip install -e .")
        return 1

    corpus = load_corpus(args.n_max)
    print_info(f"Corpus n <= {args.n_max}: {len(corpus)} posets")
    wider = corpus + load_level(args.n_max + 1)

    results = {}
    results["agreement"] = check_agreement(corpus)
    results["families"] = check_families()
    results["fixtures"] = check_fixtures()
    results["tables"] = check_tables(corpus, args.workers)
    results["consequences"] = check_consequences(corpus)
    results["ss_search"] = check_ss_search(wider)
    results["oracles"] = None if args.skip_oracles else check_oracles(wider)

    print_header("Summary")

    passed = sum(1 for v in results.values() if v is True)
    failed = sum(1 for v in results.values() if v is False)
    skipped = sum(1 for v in results.values() if v is None)
    total = len(results)

    print(f"\n{BOLD}Results:{RESET}")
    print(f"  {GREEN}Passed:  {passed}/{total}{RESET}")
    print(f"  {RED}Failed:  {failed}/{total}{RESET}")
    print(f"  {YELLOW}Skipped: {skipped}/{total}{RESET}")

    if failed == 0:
        print(f"\n{GREEN}{BOLD}All checks passed.{RESET}")
        return 0
    print(f"\n{RED}{BOLD}{failed} check(s) failed.{RESET}")
    return 1


if __name__ == "__main__":
    sys.exit(main())
