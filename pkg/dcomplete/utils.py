"""Utility functions for file validation, environment configuration and corpora.

This module provides helpers used by the CLI and the acceptance script:
poset file checks, input format detection, the environment-variable
configuration layer, a cached loader for exhaustive corpora and the
stderr progress bar.
"""

from __future__ import annotations

import logging
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional

from .enumeration import DEFAULT_ENUM_CAP, KNOWN_COUNTS, enum_all_posets
from .exceptions import (
    ConfigurationError,
    EnumerationCapError,
    FileValidationError,
    ParseError,
)
from .parser import posets_from_json, posets_to_json
from .poset import Poset

logger = logging.getLogger(__name__)

ENV_CACHE_DIR = "DCOMPLETE_CACHE_DIR"
ENV_ENUM_CAP = "DCOMPLETE_ENUM_CAP"
ENV_WORKERS = "DCOMPLETE_WORKERS"

FORMAT_BY_SUFFIX: Dict[str, str] = {
    ".json": "json",
    ".txt": "edgelist",
    ".edges": "edgelist",
}


def validate_poset_file(input_file: Path) -> None:
    """Validate that a poset input file exists and is a regular file.

    Raises:
        FileValidationError: If the path is missing or is a directory.
    """
    if not input_file.exists():
        raise FileValidationError(f"Input file does not exist: {input_file}")

    if not input_file.is_file():
        raise FileValidationError(f"Input path is not a file: {input_file}")


def detect_format(input_file: Path) -> str:
    """Map a file extension to a poset format name.

    Example:
        >>> detect_format(Path("diamond.json"))
        'json'
        >>> detect_format(Path("cube.edges"))
        'edgelist'

    Raises:
        FileValidationError: If the extension is not one of .json, .txt, .edges.
    """
    fmt = FORMAT_BY_SUFFIX.get(input_file.suffix.lower())
    if fmt is None:
        raise FileValidationError(
            f"Cannot detect poset format from extension {input_file.suffix!r}; "
            f"use one of {', '.join(FORMAT_BY_SUFFIX)} or pass --format"
        )
    return fmt


def validate_output_dir(output_dir: Path) -> None:
    """Create the output directory if needed; refuse a path that is a file."""
    if output_dir.exists() and not output_dir.is_dir():
        raise FileValidationError(f"Output path is not a directory: {output_dir}")
    output_dir.mkdir(parents=True, exist_ok=True)


def _env_int(name: str, default: int, minimum: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from None
    if value < minimum:
        raise ConfigurationError(f"{name} must be >= {minimum}, got {value}")
    return value


def enum_cap_from_env() -> int:
    """Exhaustive enumeration cap (DCOMPLETE_ENUM_CAP, default 8)."""
    return _env_int(ENV_ENUM_CAP, DEFAULT_ENUM_CAP, 0)


def workers_from_env() -> int:
    """Default worker count (DCOMPLETE_WORKERS, default 1)."""
    return _env_int(ENV_WORKERS, 1, 1)


def cache_dir_from_env() -> Optional[Path]:
    raw = os.environ.get(ENV_CACHE_DIR)
    return Path(raw) if raw else None


def corpus_cache_path(cache_dir: Path, n: int) -> Path:
    return cache_dir / f"posets-n{n}.json"


def load_level(
    n: int, cap: Optional[int] = None, cache_dir: Optional[Path] = None
) -> List[Poset]:
    """All posets on n elements, read from or written to the corpus cache.

    A cache file that cannot be parsed, that holds posets of another size,
    or whose poset count differs from the known count for n, is rebuilt.
    """
    limit = enum_cap_from_env() if cap is None else cap
    if n > limit:
        raise EnumerationCapError(n, limit)
    if cache_dir is None:
        cache_dir = cache_dir_from_env()
    if cache_dir is None:
        return enum_all_posets(n, limit)

    path = corpus_cache_path(cache_dir, n)
    if path.is_file():
        try:
            posets = posets_from_json(path.read_text(encoding="utf-8"), str(path))
        except (OSError, ParseError) as e:
            logger.warning("Ignoring unreadable corpus cache %s: %s", path, e)
        else:
            expected = KNOWN_COUNTS[n] if n < len(KNOWN_COUNTS) else None
            if not all(len(p) == n for p in posets):
                logger.warning("Corpus cache %s has posets of the wrong size; rebuilding", path)
            elif expected is not None and len(posets) != expected:
                logger.warning(
                    "Corpus cache %s holds %d poset(s), expected %d; rebuilding",
                    path,
                    len(posets),
                    expected,
                )
            else:
                logger.debug("Loaded %d poset(s) from %s", len(posets), path)
                return posets

    posets = enum_all_posets(n, limit)
    try:
        validate_output_dir(cache_dir)
        partial = path.with_name(path.name + ".tmp")
        partial.write_text(posets_to_json(posets), encoding="utf-8")
        partial.replace(path)
        logger.debug("Cached %d poset(s) at %s", len(posets), path)
    except (OSError, FileValidationError) as e:
        logger.warning("Could not write corpus cache %s: %s", path, e)
    return posets


def load_corpus(
    n_max: int, cap: Optional[int] = None, cache_dir: Optional[Path] = None
) -> List[Poset]:
    """Every poset with at most n_max elements, smallest first."""
    corpus: List[Poset] = []
    for n in range(n_max + 1):
        corpus.extend(load_level(n, cap, cache_dir))
    logger.info("Corpus n <= %d: %d poset(s)", n_max, len(corpus))
    return corpus


def progress_bar(current: int, total: int, label: str, width: int = 40) -> None:
    """Display a simple progress bar on stderr.

    Args:
        current: Items done (1-indexed).
        total: Total number of items.
        label: Trailing text, e.g. what is being counted.
        width: Width of the progress bar in characters.
    """
    percent = (current / total) * 100 if total > 0 else 0
    filled = int(width * current / total) if total > 0 else 0
    bar = "=" * filled + "-" * (width - filled)

    sys.stderr.write(f"\r[{bar}] {percent:.1f}% ({current}/{total}) {label}")
    sys.stderr.flush()

    if current == total:
        sys.stderr.write("\n")
        sys.stderr.flush()
