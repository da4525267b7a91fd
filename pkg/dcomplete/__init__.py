"""dcomplete - d-complete poset analysis for finite posets.

This library provides functionality to:
- Build immutable finite posets from cover relations and query their order
- Detect diamonds, vees, double-tailed diamond intervals, d_k^- -sets,
  Y_k-sets and Lambda-Y_k-sets
- Check the local axioms and properties, each failure with a witness
- Certify d-completeness under five equivalent criteria
- Generate shapes, shifted shapes, rooted trees, double-tailed diamonds
  and exhaustive corpora of unlabeled posets
- Replay the implication tables over exhaustive corpora

Basic Usage:
    Certify a poset:
        >>> from dcomplete import build_poset, certify
        >>> diamond = build_poset("wxyz", [("w", "x"), ("w", "y"), ("x", "z"), ("y", "z")])
        >>> certify(diamond).d_complete
        True

    Check one axiom:
        >>> from dcomplete import AxiomId, Axiom, check_axiom, gen_boolean_lattice
        >>> check_axiom(gen_boolean_lattice(3), AxiomId(Axiom.D3MF)).verdict
        False

    Verify a table:
        >>> from dcomplete import exhaustive_corpus, verify_table
        >>> results = verify_table("1", exhaustive_corpus(5))
        >>> all(r.ok for r in results)
        True
"""

__version__ = "1.0.0"
__license__ = "MIT"

from .exceptions import (
    DCompleteError,
    PosetError,
    CycleDetectedError,
    RedundantCoverError,
    UnknownElementError,
    DuplicateElementError,
    NotComparableError,
    NoUniqueMaxError,
    PosetTooLargeError,
    InvalidKError,
    NotDCompleteError,
    GeneratorError,
    InvalidPartitionError,
    InvalidTreeError,
    NotUpClosedError,
    EnumerationCapError,
    FileValidationError,
    ParseError,
    OutputFormatError,
    InvariantBreachError,
    ConfigurationError,
)

from .poset import (
    Poset,
    IntervalView,
    RankAssignment,
    NotRanked,
    build_poset,
    is_less,
    is_leq,
    interval,
    is_convex,
    components,
    is_connected,
    rank_function,
    top_tree,
    linear_extension_count,
    up_closure,
    induced_subposet,
    disjoint_union,
)

from .structures import (
    Vee,
    Diamond,
    DkInterval,
    DkMinusSet,
    YkSet,
    LambdaYkSet,
    find_diamonds,
    find_vees,
    find_dk_intervals,
    find_dk_minus_sets,
    completions_of,
    free_completions_of,
    find_yk_sets,
    find_lambda_yk_sets,
    overlapping_dk_minus_pairs,
    classify_vee_pairs,
    find_structures,
)

from .axioms import (
    Axiom,
    Property,
    AxiomId,
    PropertyId,
    AxiomReport,
    check_axiom,
    check_property,
    check_all,
    confirm_witness,
)

from .certify import (
    Criterion,
    Certificate,
    certify,
    is_dk_complete_kokyuroku,
    is_dleqk_complete,
    is_d_complete,
    consequence_suite,
    neck_tail_audit,
    filter_closure_check,
)

from .generators import (
    Partition,
    CorpusSpec,
    gen_shape,
    gen_shifted_shape,
    gen_dtd,
    gen_rooted_tree,
    gen_random_tree,
    gen_filter,
    gen_chain,
    gen_antichain,
    gen_boolean_lattice,
    gen_random_poset,
)

from .enumeration import (
    canonical_form,
    is_isomorphic,
    enum_all_posets,
    exhaustive_corpus,
    build_corpus,
)

from .harness import (
    ImplicationRow,
    ImplicationResult,
    verify_row,
    verify_table,
    verify_lemmas,
    verify_corollaries,
    search_conjecture1,
    search_ss_counterexamples,
    at_k_truth_table,
)

from .parser import parse_poset_file, serialize_poset

from .formatters import (
    Report,
    Formatter,
    JsonFormatter,
    TextFormatter,
    get_formatter,
    export_dot,
)

__all__ = [
    # Poset core
    "Poset",
    "IntervalView",
    "RankAssignment",
    "NotRanked",
    "build_poset",
    "is_less",
    "is_leq",
    "interval",
    "is_convex",
    "components",
    "is_connected",
    "rank_function",
    "top_tree",
    "linear_extension_count",
    "up_closure",
    "induced_subposet",
    "disjoint_union",
    # Structures
    "Vee",
    "Diamond",
    "DkInterval",
    "DkMinusSet",
    "YkSet",
    "LambdaYkSet",
    "find_diamonds",
    "find_vees",
    "find_dk_intervals",
    "find_dk_minus_sets",
    "completions_of",
    "free_completions_of",
    "find_yk_sets",
    "find_lambda_yk_sets",
    "overlapping_dk_minus_pairs",
    "classify_vee_pairs",
    "find_structures",
    # Axioms and properties
    "Axiom",
    "Property",
    "AxiomId",
    "PropertyId",
    "AxiomReport",
    "check_axiom",
    "check_property",
    "check_all",
    "confirm_witness",
    # Certification
    "Criterion",
    "Certificate",
    "certify",
    "is_dk_complete_kokyuroku",
    "is_dleqk_complete",
    "is_d_complete",
    "consequence_suite",
    "neck_tail_audit",
    "filter_closure_check",
    # Generators and enumeration
    "Partition",
    "CorpusSpec",
    "gen_shape",
    "gen_shifted_shape",
    "gen_dtd",
    "gen_rooted_tree",
    "gen_random_tree",
    "gen_filter",
    "gen_chain",
    "gen_antichain",
    "gen_boolean_lattice",
    "gen_random_poset",
    "canonical_form",
    "is_isomorphic",
    "enum_all_posets",
    "exhaustive_corpus",
    "build_corpus",
    # Theorem harness
    "ImplicationRow",
    "ImplicationResult",
    "verify_row",
    "verify_table",
    "verify_lemmas",
    "verify_corollaries",
    "search_conjecture1",
    "search_ss_counterexamples",
    "at_k_truth_table",
    # I/O
    "parse_poset_file",
    "serialize_poset",
    "Report",
    "Formatter",
    "JsonFormatter",
    "TextFormatter",
    "get_formatter",
    "export_dot",
    # Exceptions
    "DCompleteError",
    "PosetError",
    "CycleDetectedError",
    "RedundantCoverError",
    "UnknownElementError",
    "DuplicateElementError",
    "NotComparableError",
    "NoUniqueMaxError",
    "PosetTooLargeError",
    "InvalidKError",
    "NotDCompleteError",
    "GeneratorError",
    "InvalidPartitionError",
    "InvalidTreeError",
    "NotUpClosedError",
    "EnumerationCapError",
    "FileValidationError",
    "ParseError",
    "OutputFormatError",
    "InvariantBreachError",
    "ConfigurationError",
    # Metadata
    "__version__",
    "__license__",
]
