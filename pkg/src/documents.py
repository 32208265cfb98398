"""
JSON documents for monoids, morphisms and push-out diagrams.

Every document is an envelope {"kind", "format_version", "payload"}.
Integers in files are limited to the signed 64-bit range; arithmetic in
memory is unbounded.
"""

import json
import logging
from pathlib import Path

from .errors import DocumentError, DocumentIOError
from .monoid import AffineMonoid, LatticeMap, new_map, new_monoid
from .pushout import PushoutData

logger = logging.getLogger(__name__)

FORMAT_VERSION = "1"
KINDS = ("monoid", "morphism", "pushout")
INT64_MIN, INT64_MAX = -(2 ** 63), 2 ** 63 - 1


# ---------------- Writing ----------------

def _checked_int(x):
    if not INT64_MIN <= x <= INT64_MAX:
        raise DocumentError(f"integer {x} does not fit in 64 bits")
    return int(x)


def monoid_body(M):
    return {
        "ambient_dim": M.ambient_dim,
        "generators": [[_checked_int(x) for x in g] for g in M.generators],
    }


def morphism_body(phi):
    return {
        "source": monoid_body(phi.source),
        "target": monoid_body(phi.target),
        "matrix": [[_checked_int(x) for x in phi.matrix.row(i)] for i in range(phi.matrix.rows)],
    }


def pushout_body(data):
    return {"f": morphism_body(data.f), "g": morphism_body(data.g)}


def to_document(value):
    if isinstance(value, AffineMonoid):
        return {"kind": "monoid", "format_version": FORMAT_VERSION, "payload": monoid_body(value)}
    if isinstance(value, LatticeMap):
        return {"kind": "morphism", "format_version": FORMAT_VERSION, "payload": morphism_body(value)}
    if isinstance(value, PushoutData):
        return {"kind": "pushout", "format_version": FORMAT_VERSION, "payload": pushout_body(value)}
    raise TypeError(f"no document kind for {type(value).__name__}")


def dumps(document):
    """Canonical text: sorted keys, so equal documents print byte-identically."""
    return json.dumps(document, sort_keys=True)


def write_document(value, path):
    try:
        Path(path).write_text(dumps(to_document(value)) + "\n", encoding="utf-8")
    except OSError as e:
        raise DocumentIOError(f"cannot write {path}: {e}") from e


# ---------------- Reading ----------------

def _require(mapping, key, where):
    if not isinstance(mapping, dict):
        raise DocumentError(f"{where} must be an object")
    if key not in mapping:
        raise DocumentError(f"{where} is missing '{key}'")
    return mapping[key]


def _int(x, where):
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"{where}: expected an integer, got {x!r}")
    return _checked_int(x)


def _int_rows(rows, where):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise DocumentError(f"{where} must be a list of integer lists")
    return [[_int(x, where) for x in r] for r in rows]


def parse_monoid(body, where="monoid"):
    d = _int(_require(body, "ambient_dim", where), f"{where}.ambient_dim")
    if d < 0:
        raise DocumentError(f"{where}.ambient_dim must be non-negative")
    generators = _int_rows(_require(body, "generators", where), f"{where}.generators")
    for g in generators:
        if len(g) != d:
            raise DocumentError(f"{where}: generator {g} has length {len(g)}, expected {d}")
    return new_monoid(d, generators)


def parse_morphism(body, where="morphism"):
    source = parse_monoid(_require(body, "source", where), f"{where}.source")
    target = parse_monoid(_require(body, "target", where), f"{where}.target")
    rows = _int_rows(_require(body, "matrix", where), f"{where}.matrix")
    if len(rows) != target.ambient_dim or any(len(r) != source.ambient_dim for r in rows):
        raise DocumentError(
            f"{where}.matrix must be {target.ambient_dim}x{source.ambient_dim} (rows = target dimension)"
        )
    return new_map(source, target, rows)


def parse_pushout(body, where="pushout"):
    return PushoutData(
        parse_morphism(_require(body, "f", where), f"{where}.f"),
        parse_morphism(_require(body, "g", where), f"{where}.g"),
    )


_PARSERS = {"monoid": parse_monoid, "morphism": parse_morphism, "pushout": parse_pushout}


def parse_document(document, expected=None):
    """Validate an envelope and build its value; expected restricts the kind."""
    kind = _require(document, "kind", "document")
    version = _require(document, "format_version", "document")
    if kind not in KINDS:
        raise DocumentError(f"unknown document kind {kind!r}")
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {version!r}")
    if expected is not None and kind != expected:
        raise DocumentError(f"expected a {expected} document, got {kind}")
    return _PARSERS[kind](_require(document, "payload", "document"), kind)


def loads(text, expected=None):
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e}") from e
    return parse_document(document, expected)


def load_document(path, expected=None):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentIOError(f"cannot read {path}: {e}") from e
    logger.debug("loaded %d bytes from %s", len(text), path)
    return loads(text, expected)
