"""Command-line interface for the d-complete poset toolkit.

This module provides the ``dcomplete`` CLI tool for:
- Certifying d-completeness of a poset file under the five criteria
- Checking individual axioms and properties, with witnesses
- Listing local structures and rendering Hasse diagrams as DOT
- Generating the standard families and exhaustive corpora
- Replaying the theorem tables over exhaustive corpora

Exit codes: 0 success / property holds, 1 property fails, 2 usage or input
error, 3 internal invariant breach.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import __version__
from .axioms import (
    Axiom,
    AxiomId,
    AxiomReport,
    check,
    check_all,
    check_axiom,
    parse_condition,
)
from .certify import Criterion, certify, is_d_complete, is_dleqk_complete, k_max
from .exceptions import (
    ConfigurationError,
    DCompleteError,
    FileValidationError,
    InvalidKError,
    InvariantBreachError,
    OutputFormatError,
    ParseError,
)
from .formatters import (
    SYMBOL_FAILURE,
    SYMBOL_SUCCESS,
    Report,
    export_dot,
    get_formatter,
)
from .generators import (
    CorpusSpec,
    Partition,
    gen_dtd,
    gen_random_poset,
    gen_random_tree,
    gen_shape,
    gen_shifted_shape,
)
from .harness import (
    TABLES,
    search_ss_counterexamples,
    verify_agreement,
    verify_consequences,
    verify_corollaries,
    verify_lemmas,
    verify_table,
)
from .oracles import verify_oracles
from .parser import POSET_FORMATS, parse_poset_file, posets_to_json, serialize_poset
from .poset import Poset
from .structures import K_INDEXED_KINDS, STRUCTURE_KINDS, find_structures
from .utils import (
    enum_cap_from_env,
    load_corpus,
    load_level,
    progress_bar,
    validate_output_dir,
    workers_from_env,
)

EXIT_OK = 0
EXIT_FAILS = 1
EXIT_USAGE = 2
EXIT_BREACH = 3

DEFAULT_N_MAX = 6
LONG_N_MAX = 7

GENERATE_FAMILIES = ("shape", "shifted", "dtd", "tree", "enum", "random")
VERIFY_SECTIONS = ("lemmas", "corollaries", "agreement", "consequences", "conjecture")

logger = logging.getLogger(__name__)


def setup_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Configure logging based on verbosity level.

    Args:
        verbose: If True, enable DEBUG level logging.
        quiet: If True, suppress all logging except errors.
    """
    if quiet:
        level = logging.ERROR
    elif verbose:
        level = logging.DEBUG
    else:
        level = logging.INFO

    logging.basicConfig(
        level=level, format="%(levelname)s: %(message)s", stream=sys.stderr
    )


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs, validated before any work starts."""

    command: str
    input_file: Optional[str] = None
    input_format: Optional[str] = None
    output: Optional[str] = None
    output_dir: Optional[str] = None
    output_format: str = "text"
    k_min: Optional[int] = None
    k_max: Optional[int] = None
    criterion: Optional[str] = None
    axiom: Optional[str] = None
    all_axioms: bool = False
    kind: Optional[str] = None
    family: Optional[str] = None
    family_arg: Optional[str] = None
    count: int = 1
    density: float = 0.3
    seed: int = 0
    n_max: int = DEFAULT_N_MAX
    tables: Tuple[str, ...] = ()
    rows: Tuple[str, ...] = ()
    sections: FrozenSet[str] = field(default_factory=frozenset)
    oracles: bool = False
    long: bool = False
    workers: int = 1
    verbose: bool = False
    quiet: bool = False

    def validate(self) -> None:
        """Reject inconsistent option combinations.

        Raises:
            ConfigurationError: On conflicting or out-of-range options.
            InvalidKError: If either end of the k range is below 3.
        """
        if self.verbose and self.quiet:
            raise ConfigurationError("Cannot use --verbose and --quiet together")
        for bound in (self.k_min, self.k_max):
            if bound is not None and bound < 3:
                raise InvalidKError(bound)
        if self.k_min is not None and self.k_max is not None and self.k_min > self.k_max:
            raise ConfigurationError(
                f"--k-min ({self.k_min}) must not exceed --k-max ({self.k_max})"
            )
        if self.output and self.output_dir:
            raise ConfigurationError("Use either -o/--output or -O/--output-dir, not both")
        if self.output_dir and self.command != "generate":
            raise ConfigurationError("-O/--output-dir is only valid for generate")
        if self.n_max < 0:
            raise ConfigurationError(f"--n-max must be non-negative, got {self.n_max}")
        if self.workers < 1:
            raise ConfigurationError(f"--workers must be positive, got {self.workers}")
        if self.rows and len(self.tables) != 1:
            raise ConfigurationError("--rows requires exactly one --table")
        if self.count < 1:
            raise ConfigurationError(f"--count must be positive, got {self.count}")
        if not 0.0 <= self.density <= 1.0:
            raise ConfigurationError(f"--density must lie in [0, 1], got {self.density}")
        if self.criterion is not None:
            try:
                Criterion.parse(self.criterion)
            except ValueError as e:
                raise ConfigurationError(str(e)) from None
        if self.axiom is not None:
            try:
                parse_condition(self.axiom, self.k_min or 3)
            except ValueError as e:
                raise ConfigurationError(str(e)) from None

    @property
    def k_range(self) -> range:
        """k_min..k_max; k_min defaults to 3 and k_max to k_min."""
        low = self.k_min if self.k_min is not None else 3
        high = self.k_max if self.k_max is not None else low
        return range(low, high + 1)


# ----------------------------------------------------------------------
# output


def _emit(content: str, output: Optional[str]) -> None:
    """Single writer for everything the user asked to see."""
    if output:
        output_path = Path(output)
        if output_path.is_dir():
            raise FileValidationError(f"Output path is a directory: {output_path}")
        output_path.write_text(content, encoding="utf-8")
        print(f"{SYMBOL_SUCCESS} Wrote {output_path}", file=sys.stderr)
    else:
        sys.stdout.write(content)
        sys.stdout.flush()


def _emit_report(config: RunConfig, report: Report) -> None:
    formatter = get_formatter(config.output_format)
    _emit(formatter.format(report), config.output)


def _load(config: RunConfig) -> Poset:
    assert config.input_file is not None
    return parse_poset_file(config.input_file, config.input_format)


# ----------------------------------------------------------------------
# subcommands


def check_poset(config: RunConfig) -> int:
    """Certify d-completeness (all criteria) or decide one criterion."""
    p = _load(config)
    report = Report("check", source=config.input_file)

    bounded = config.k_min is not None or config.k_max is not None
    if config.criterion is None and not bounded:
        certificate = certify(p, strict=True)
        report.add("certificate", certificate)
        report.ok = certificate.d_complete
        if not certificate.d_complete:
            failed = []
            for h in range(3, k_max(p) + 1):
                for axiom in Axiom:
                    if h == 3 or axiom.k_indexed:
                        axiom_report = check_axiom(p, AxiomId(axiom, h))
                        if not axiom_report.verdict:
                            failed.append(axiom_report)
            report.add("failed_axioms", failed)
    else:
        criterion = Criterion.parse(config.criterion or Criterion.KOKYUROKU.value)
        if bounded:
            verdict = is_dleqk_complete(p, config.k_range[-1], criterion)
        else:
            verdict = is_d_complete(p, criterion)
        report.add("verdict", verdict)
        report.ok = verdict.verdict

    _emit_report(config, report)
    logger.info(f"{config.input_file}: {'holds' if report.ok else 'fails'}")
    return EXIT_OK if report.ok else EXIT_FAILS


def check_axioms(config: RunConfig) -> int:
    """Check every axiom and property, or a single named one, over the k range.

    Conditions that do not depend on k are reported once.
    """
    p = _load(config)
    reports: List[AxiomReport] = []
    seen = set()
    for k in config.k_range:
        if config.all_axioms:
            batch = check_all(p, k)
        else:
            assert config.axiom is not None
            batch = [check(p, parse_condition(config.axiom, k))]
        for axiom_report in batch:
            if axiom_report.label not in seen:
                seen.add(axiom_report.label)
                reports.append(axiom_report)

    report = Report("axioms", source=config.input_file)
    report.add("reports", reports)
    report.ok = all(r.verdict for r in reports)
    _emit_report(config, report)
    return EXIT_OK if report.ok else EXIT_FAILS


def _structures_by_k(p: Poset, kind: str, config: RunConfig) -> Dict[int, List[Any]]:
    ks = config.k_range if kind in K_INDEXED_KINDS else range(3, 4)
    return {k: find_structures(p, kind, k) for k in ks}


def list_structures(config: RunConfig) -> int:
    p = _load(config)
    assert config.kind is not None
    by_k = _structures_by_k(p, config.kind, config)
    hits = [hit for found in by_k.values() for hit in found]
    logger.debug(f"Found {len(hits)} {config.kind} structure(s)")

    report = Report("structures", source=config.input_file)
    report.add("kind", config.kind)
    report.add("k_min", min(by_k))
    report.add("k_max", max(by_k))
    report.add("count", len(hits))
    if config.kind in K_INDEXED_KINDS:
        report.add("counts", {str(k): len(found) for k, found in by_k.items()})
    report.add("structures", hits)
    _emit_report(config, report)
    return EXIT_OK


def _require_int(value: Optional[str], what: str) -> int:
    try:
        return int(value or "")
    except ValueError:
        raise ConfigurationError(f"{what} must be an integer, got {value!r}") from None


def _generate_posets(config: RunConfig) -> List[Poset]:
    family = config.family
    if family == "shape":
        return [gen_shape(Partition.parse(config.family_arg or ""))]
    if family == "shifted":
        return [gen_shifted_shape(Partition.parse(config.family_arg or ""))]
    if family == "dtd":
        return [gen_dtd(_require_int(config.family_arg, "k"))]
    if family == "tree":
        return [gen_random_tree(_require_int(config.family_arg, "n"), config.seed)]
    if family == "enum":
        return load_level(_require_int(config.family_arg, "n"), enum_cap_from_env())
    if family == "random":
        spec = CorpusSpec(
            "random",
            _require_int(config.family_arg, "n"),
            count=config.count,
            seed=config.seed,
            density=config.density,
        )
        return gen_random_poset(spec)
    raise ConfigurationError(f"Unknown family: {family!r}")


def generate(config: RunConfig) -> int:
    """Write generated posets as canonical JSON."""
    posets = _generate_posets(config)

    if config.output_dir:
        out_dir = Path(config.output_dir)
        validate_output_dir(out_dir)
        for i, p in enumerate(posets):
            (out_dir / f"{config.family}-{i:04d}.json").write_text(
                serialize_poset(p), encoding="utf-8"
            )
        print(
            f"{SYMBOL_SUCCESS} Wrote {len(posets)} poset(s) to {out_dir}", file=sys.stderr
        )
        return EXIT_OK

    if len(posets) == 1 and config.family != "enum":
        _emit(serialize_poset(posets[0]), config.output)
    else:
        _emit(posets_to_json(posets), config.output)
    return EXIT_OK


def verify_theorems(config: RunConfig) -> int:
    """Replay the selected tables and audits over the exhaustive corpus."""
    progress = None if config.quiet else progress_bar
    everything = not config.tables and not config.sections and not config.oracles
    tables = config.tables or (tuple(TABLES) if everything else ())
    sections = set(VERIFY_SECTIONS) if everything else set(config.sections)

    corpus = load_corpus(config.n_max, enum_cap_from_env())
    report = Report("verify-theorems")
    report.add("n_max", config.n_max)
    report.add("corpus_size", len(corpus))

    for table in tables:
        logger.info(f"Table {table}: {len(TABLES[table])} row(s)")
        results = verify_table(table, corpus, config.rows or None, config.workers, progress)
        report.add(f"table_{table}", results)
        report.ok &= all(r.ok for r in results)

    if "lemmas" in sections:
        results = verify_lemmas(corpus, workers=config.workers, progress=progress)
        report.add("lemmas", results)
        report.ok &= all(r.ok for r in results)
    if "corollaries" in sections:
        results = verify_corollaries(corpus, config.workers, progress)
        report.add("corollaries", results)
        report.ok &= all(r.ok for r in results)
    if "agreement" in sections:
        audit = verify_agreement(corpus)
        report.add("agreement", audit)
        report.ok &= audit.ok
    if "consequences" in sections:
        audit = verify_consequences(corpus, progress)
        report.add("consequences", audit)
        report.ok &= audit.ok
    if "conjecture" in sections:
        search_corpus = corpus
        if config.long:
            search_corpus = corpus + load_level(config.n_max + 1, enum_cap_from_env())
        search = search_ss_counterexamples(search_corpus)
        if search.counterexamples:
            logger.warning(
                f"DISCOVERY: {len(search.counterexamples)} D3mC poset(s) failing SS"
            )
        report.add("conjecture", search)
        report.ok &= search.ok
    if config.oracles:
        audit = verify_oracles(corpus)
        report.add("oracles", audit)
        report.ok &= audit.ok

    _emit_report(config, report)
    if not report.ok:
        logger.error("Theorem verification found invariant breaches")
        return EXIT_BREACH
    return EXIT_OK


def dot(config: RunConfig) -> int:
    p = _load(config)
    highlights = None
    if config.kind:
        by_k = _structures_by_k(p, config.kind, config)
        highlights = [hit for found in by_k.values() for hit in found]
    _emit(export_dot(p, highlights), config.output)
    return EXIT_OK


HANDLERS: Dict[str, Callable[[RunConfig], int]] = {
    "check": check_poset,
    "axioms": check_axioms,
    "structures": list_structures,
    "generate": generate,
    "verify-theorems": verify_theorems,
    "export-dot": dot,
}


def run(config: RunConfig, handler: Callable[[RunConfig], int]) -> int:
    """Run a subcommand handler and map exceptions to exit codes."""
    try:
        return handler(config)
    except InvariantBreachError as e:
        print(f"{SYMBOL_FAILURE} Invariant breach: {e}", file=sys.stderr)
        logger.error(f"Invariant breach: {e}")
        return EXIT_BREACH
    except FileValidationError as e:
        print(f"{SYMBOL_FAILURE} Error: {e}", file=sys.stderr)
        logger.error(f"File validation failed: {e}")
        return EXIT_USAGE
    except ParseError as e:
        print(f"{SYMBOL_FAILURE} Parse error: {e}", file=sys.stderr)
        logger.error(f"Parser error: {e}")
        return EXIT_USAGE
    except OutputFormatError as e:
        print(f"{SYMBOL_FAILURE} Format error: {e}", file=sys.stderr)
        logger.error(f"Output format error: {e}")
        return EXIT_USAGE
    except DCompleteError as e:
        print(f"{SYMBOL_FAILURE} Error: {e}", file=sys.stderr)
        logger.error(f"{config.command} failed: {e}")
        return EXIT_USAGE
    except (OSError, ValueError, KeyError) as e:
        print(f"{SYMBOL_FAILURE} Error: {e}", file=sys.stderr)
        logger.error(f"{config.command} failed: {e}")
        return EXIT_USAGE
    except Exception as e:
        print(f"{SYMBOL_FAILURE} Unexpected error: {e}", file=sys.stderr)
        logger.exception(f"Unexpected error during {config.command}")
        return EXIT_USAGE


# ----------------------------------------------------------------------
# argument parsing


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("-v", "--verbose", action="store_true", help="Enable verbose output")
    sub.add_argument(
        "-q", "--quiet", action="store_true", help="Suppress progress output"
    )


def _add_input(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("input_file", metavar="FILE", help="Poset file (.json, .txt, .edges)")
    sub.add_argument(
        "--format",
        dest="input_format",
        choices=POSET_FORMATS,
        help="Input format (default: detected from the extension)",
    )


def _add_k(sub: argparse.ArgumentParser, help_text: str) -> None:
    sub.add_argument("--k", type=int, metavar="K", help=help_text)
    sub.add_argument("--k-min", type=int, metavar="K", help="Lowest k of a range (default: 3)")
    sub.add_argument(
        "--k-max", type=int, metavar="K", help="Highest k of a range (default: --k-min)"
    )


def _add_json(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--json", action="store_true", help="Write the report as JSON")
    sub.add_argument("-o", "--output", metavar="FILE", help="Output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcomplete",
        description="Analyse finite posets for d-completeness",
        epilog="""
Commands:
  check            Certify d-completeness under all five criteria
  axioms           Check axioms and properties, with witnesses
  structures       List diamonds, vees, d_k-intervals and related sets
  generate         Write shapes, trees, double-tailed diamonds or corpora
  verify-theorems  Replay the implication tables over small posets
  export-dot       Render the Hasse diagram as Graphviz DOT

Examples:
  %(prog)s check diamond.json
  %(prog)s axioms cube.json --all --json
  %(prog)s generate shifted 9,6,3,1 -o shifted.json
  %(prog)s verify-theorems --table 1 --n-max 6
        """,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    # ========== CHECK ==========
    check_parser = subparsers.add_parser(
        "check",
        help="Certify d-completeness",
        description="Decide d-completeness. Without --criterion or --k all five "
        "criteria run and must agree.",
        epilog="""
Examples:
  %(prog)s diamond.json                      # certificate, exit 0 if d-complete
  %(prog)s cube.json --json                  # JSON certificate with witnesses
  %(prog)s poset.edges --criterion ComboC --k 4
        """,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    _add_input(check_parser)
    check_parser.add_argument(
        "--criterion",
        metavar="NAME",
        help="Kokyuroku, ComboA, ComboB, ComboC or ComboD",
    )
    _add_k(check_parser, "Decide d_{<=K}-completeness instead")
    _add_json(check_parser)
    _add_common(check_parser)

    # ========== AXIOMS ==========
    axioms_parser = subparsers.add_parser(
        "axioms",
        help="Check axioms and properties",
        description="Check one axiom or property, or all of them, at k.",
        epilog="""
Examples:
  %(prog)s cube.json --all
  %(prog)s cube.json --axiom D3MF --json
  %(prog)s poset.json --axiom DkmC --k 4
        """,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    _add_input(axioms_parser)
    which = axioms_parser.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true", help="Check every axiom and property")
    which.add_argument("--axiom", metavar="NAME", help="Axiom or property name")
    _add_k(axioms_parser, "k for the general axioms (default: 3)")
    _add_json(axioms_parser)
    _add_common(axioms_parser)

    # ========== STRUCTURES ==========
    structures_parser = subparsers.add_parser(
        "structures",
        help="List local structures",
        description="List every structure of one kind.",
    )
    _add_input(structures_parser)
    structures_parser.add_argument(
        "--kind", required=True, choices=STRUCTURE_KINDS, help="Structure kind"
    )
    _add_k(structures_parser, "k for k-indexed kinds (default: 3)")
    _add_json(structures_parser)
    _add_common(structures_parser)

    # ========== GENERATE ==========
    generate_parser = subparsers.add_parser(
        "generate",
        help="Generate posets",
        description="Generate a poset family member or a corpus as JSON.",
        epilog="""
Examples:
  %(prog)s shape 4,2,1                       # shape poset of a partition
  %(prog)s shifted 9,6,3,1 -o shifted.json   # shifted shape poset
  %(prog)s dtd 5                             # double-tailed diamond d_5
  %(prog)s tree 12 --seed 7                  # random rooted tree
  %(prog)s enum 5 -O corpus                  # all 63 posets on 5 elements
  %(prog)s random 9 --count 20 --density 0.25
        """,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    generate_parser.add_argument("family", choices=GENERATE_FAMILIES, help="Family")
    generate_parser.add_argument(
        "family_arg", metavar="ARG", help="Partition (e.g. 3,2,1), k or n"
    )
    generate_parser.add_argument("--seed", type=int, default=0, help="Random seed")
    generate_parser.add_argument(
        "--count", type=int, default=1, help="Number of random posets (default: 1)"
    )
    generate_parser.add_argument(
        "--density", type=float, default=0.3, help="Relation density (default: 0.3)"
    )
    generate_parser.add_argument("-o", "--output", metavar="FILE", help="Output file")
    generate_parser.add_argument(
        "-O", "--output-dir", metavar="DIR", help="Write one file per poset"
    )
    _add_common(generate_parser)

    # ========== VERIFY-THEOREMS ==========
    verify_parser = subparsers.add_parser(
        "verify-theorems",
        help="Replay implication tables",
        description="Verify implication rows and audits over every poset up to "
        "--n-max elements. Without a selection everything except the oracle "
        "sweep runs.",
        epilog="""
Examples:
  %(prog)s --n-max 6                         # everything, exit 0 when all hold
  %(prog)s --table 3 --rows a,c --n-max 7
  %(prog)s --oracles --n-max 6 --json
  %(prog)s --long --workers 4
        """,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    verify_parser.add_argument(
        "--table", action="append", choices=sorted(TABLES), help="Table to verify"
    )
    verify_parser.add_argument("--rows", metavar="a,b", help="Row letters or tags")
    verify_parser.add_argument(
        "--n-max", type=int, metavar="N", help=f"Corpus size bound (default: {DEFAULT_N_MAX})"
    )
    for section in VERIFY_SECTIONS:
        verify_parser.add_argument(
            f"--{section}", action="store_true", help=f"Run the {section} checks"
        )
    verify_parser.add_argument(
        "--oracles", action="store_true", help="Cross-check scanners against networkx"
    )
    verify_parser.add_argument(
        "--long",
        action="store_true",
        help=f"Acceptance run: n <= {LONG_N_MAX}, SS search one size further",
    )
    verify_parser.add_argument("--workers", type=int, metavar="W", help="Worker processes")
    _add_json(verify_parser)
    _add_common(verify_parser)

    # ========== EXPORT-DOT ==========
    dot_parser = subparsers.add_parser(
        "export-dot",
        help="Render a Hasse diagram as DOT",
        description="Write a Graphviz digraph with maximal elements on top.",
    )
    _add_input(dot_parser)
    dot_parser.add_argument(
        "--highlight", choices=STRUCTURE_KINDS, help="Fill every structure of this kind"
    )
    _add_k(dot_parser, "k for k-indexed kinds (default: 3)")
    dot_parser.add_argument("-o", "--output", metavar="FILE", help="Output .dot file")
    _add_common(dot_parser)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    command = args.command
    if command == "export-dot":
        output_format = "dot"
    else:
        output_format = "json" if getattr(args, "json", False) else "text"

    n_max = getattr(args, "n_max", None)
    if n_max is None:
        n_max = LONG_N_MAX if getattr(args, "long", False) else DEFAULT_N_MAX
    workers = getattr(args, "workers", None)
    rows = getattr(args, "rows", None)
    k_low = getattr(args, "k_min", None)
    k_high = getattr(args, "k_max", None)
    k = getattr(args, "k", None)
    if k is not None:
        if k_low is not None or k_high is not None:
            raise ConfigurationError("Use either --k or --k-min/--k-max, not both")
        k_low = k_high = k

    return RunConfig(
        command=command,
        input_file=getattr(args, "input_file", None),
        input_format=getattr(args, "input_format", None),
        output=getattr(args, "output", None),
        output_dir=getattr(args, "output_dir", None),
        output_format=output_format,
        k_min=k_low,
        k_max=k_high,
        criterion=getattr(args, "criterion", None),
        axiom=getattr(args, "axiom", None),
        all_axioms=getattr(args, "all", False),
        kind=getattr(args, "kind", None) or getattr(args, "highlight", None),
        family=getattr(args, "family", None),
        family_arg=getattr(args, "family_arg", None),
        count=getattr(args, "count", 1),
        density=getattr(args, "density", 0.3),
        seed=getattr(args, "seed", 0),
        n_max=n_max,
        tables=tuple(getattr(args, "table", None) or ()),
        rows=tuple(r.strip() for r in rows.split(",") if r.strip()) if rows else (),
        sections=frozenset(s for s in VERIFY_SECTIONS if getattr(args, s, False)),
        oracles=getattr(args, "oracles", False),
        long=getattr(args, "long", False),
        workers=workers if workers is not None else workers_from_env(),
        verbose=getattr(args, "verbose", False),
        quiet=getattr(args, "quiet", False),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the CLI tool.

    Args:
        argv: Optional argument list to parse instead of sys.argv.

    Returns:
        Exit code: 0 success, 1 property fails, 2 usage or input error,
        3 invariant breach.
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    verbose = getattr(args, "verbose", False)
    quiet = getattr(args, "quiet", False)
    setup_logging(verbose=verbose, quiet=quiet)

    try:
        config = config_from_args(args)
        config.validate()
    except DCompleteError as e:
        print(f"{SYMBOL_FAILURE} Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if config.command == "verify-theorems" and config.workers > 1:
        logger.info(f"Using {config.workers} worker process(es)")

    return run(config, HANDLERS[config.command])


if __name__ == "__main__":
    sys.exit(main())
