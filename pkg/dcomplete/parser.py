"""Readers and writers for poset files.

Two input formats are supported:

- ``json`` (canonical): ``{"elements": [...], "covers": [[lower, upper], ...]}``.
  Element order in the file is the canonical element order of the poset.
- ``edgelist``: one cover per line as ``lower upper``, separated by
  whitespace. A line with a single token declares an isolated element.
  Blank lines and ``#`` comments are ignored. Elements are ordered by first
  appearance.

Only JSON is written back; the edge list is an input convenience.
"""

from __future__ import annotations

import json
import logging
import re
from pathlib import Path
from typing import Any, List, Optional, TextIO, Tuple, Union

from .exceptions import FileValidationError, ParseError, PosetError
from .poset import Poset, build_poset

logger = logging.getLogger(__name__)

POSET_FORMATS = ("json", "edgelist")


def _build(
    elements: List[str], covers: List[Tuple[str, str]], source: Optional[str]
) -> Poset:
    try:
        return build_poset(elements, covers)
    except PosetError as err:
        raise ParseError(str(err), source) from err


def parse_json_text(text: str, source: Optional[str] = None) -> Poset:
    """Parse the canonical JSON poset format.

    Raises:
        ParseError: On malformed JSON, a missing key, a malformed cover or
            any error from build_poset (chained as ``__cause__``).
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, source, err.lineno, err.colno) from err

    if not isinstance(data, dict):
        raise ParseError("Top-level JSON value must be an object", source)
    for key in ("elements", "covers"):
        if key not in data:
            raise ParseError(f"Missing key {key!r}", source)
        if not isinstance(data[key], list):
            raise ParseError(f"{key!r} must be a list", source)

    elements = data["elements"]
    for element in elements:
        if not isinstance(element, (str, int)) or isinstance(element, bool):
            raise ParseError(f"Element ids must be strings, got {element!r}", source)

    covers: List[Tuple[str, str]] = []
    for position, pair in enumerate(data["covers"]):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(
                f"Cover #{position} must be a [lower, upper] pair, got {pair!r}", source
            )
        covers.append((str(pair[0]), str(pair[1])))

    return _build([str(element) for element in elements], covers, source)


def parse_edgelist_text(text: str, source: Optional[str] = None) -> Poset:
    """Parse the whitespace-separated edge-list format.

    Raises:
        ParseError: On a line with more than two tokens, or any error from
            build_poset.
    """
    elements: List[str] = []
    seen = set()
    covers: List[Tuple[str, str]] = []

    for line_number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        spans = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        tokens = [token for token, _ in spans]
        if not tokens:
            continue
        if len(tokens) > 2:
            raise ParseError(
                f"Expected 'lower upper', got {len(tokens)} tokens",
                source,
                line_number,
                spans[2][1],
            )
        for token in tokens:
            if token not in seen:
                seen.add(token)
                elements.append(token)
        if len(tokens) == 2:
            if tokens[0] == tokens[1]:
                raise ParseError(
                    f"Element {tokens[0]!r} cannot cover itself",
                    source,
                    line_number,
                    spans[0][1],
                )
            covers.append((tokens[0], tokens[1]))

    return _build(elements, covers, source)


def parse_poset_text(text: str, format_name: str, source: Optional[str] = None) -> Poset:
    if format_name == "json":
        return parse_json_text(text, source)
    if format_name == "edgelist":
        return parse_edgelist_text(text, source)
    raise ParseError(f"Unknown poset format: {format_name!r}", source)


def parse_poset_file(path: Union[str, Path], format_name: Optional[str] = None) -> Poset:
    """Read a poset from disk.

    Args:
        path: File to read.
        format_name: ``"json"`` or ``"edgelist"``; detected from the file
            extension when omitted.

    Returns:
        The validated Poset.

    Raises:
        FileValidationError: If the file is missing, a directory, or has an
            extension that maps to no format.
        ParseError: If the contents are malformed.
    """
    from .utils import detect_format, validate_poset_file

    path = Path(path)
    validate_poset_file(path)
    fmt = format_name or detect_format(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as err:
        raise FileValidationError(f"Cannot read poset file: {path} ({err})") from err

    poset = parse_poset_text(text, fmt, str(path))
    logger.debug("Parsed %s as %s: %d element(s)", path, fmt, len(poset))
    return poset


def serialize_poset(p: Poset, indent: Optional[int] = 2) -> str:
    """Canonical JSON text; ``parse_json_text`` inverts it exactly."""
    return json.dumps(p.to_dict(), indent=indent) + "\n"


def write_poset(p: Poset, output: Union[Path, TextIO]) -> None:
    content = serialize_poset(p)
    if isinstance(output, Path):
        output.write_text(content, encoding="utf-8")
    else:
        output.write(content)


def posets_to_json(posets: List[Poset]) -> str:
    """Compact JSON list of posets, one per line, used by the corpus cache."""
    lines = [json.dumps(p.to_dict(), separators=(",", ":")) for p in posets]
    return "[\n" + ",\n".join(lines) + "\n]\n"


def posets_from_json(text: str, source: Optional[str] = None) -> List[Poset]:
    try:
        data: Any = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(err.msg, source, err.lineno, err.colno) from err
    if not isinstance(data, list):
        raise ParseError("Expected a JSON list of posets", source)
    return [parse_json_text(json.dumps(entry), source) for entry in data]
