"""Structured-text (JSON) files for pre-Lie algebras and braces.

All indices in files are 0-based; scalars are exact "num/den" strings
(bare integers when the denominator is 1, residues over a prime field).
Serialization is deterministic: sorted keys, sorted entries, a trailing
newline.  Unknown fields are rejected on read.

pre-Lie file entries:  [i, j, k, value]   meaning  e_i * e_j += value e_k
brace file entries:    [k, [i_1 <= ... <= i_k], j, out, value]
                       the degree-k graded map on (e_{i_1}..e_{i_k}; e_j)
"""

import json
import re

from .brace import GradedBrace, SymmetricMap
from .errors import AlgebraFileError
from .linalg import Vec
from .prelie import PreLieAlgebra
from .scalars import GF, Q

FORMAT_VERSION = 1

_PRELIE_KEYS = {"format_version", "kind", "field", "dim", "basis", "entries"}
_BRACE_KEYS = _PRELIE_KEYS | {"class_bound"}


def _field_to_json(field):
    return "Q" if field.characteristic == 0 else {"p": field.characteristic}


def _field_from_json(spec):
    if spec == "Q":
        return Q
    if isinstance(spec, dict) and set(spec) == {"p"} and isinstance(spec["p"], int):
        try:
            return GF(spec["p"])
        except ValueError as exc:
            raise AlgebraFileError(str(exc)) from None
    raise AlgebraFileError(f"bad field spec {spec!r}")


def algebra_to_json(alg):
    entries = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k, c in enumerate(alg.products[i][j]):
                if c:
                    entries.append([i, j, k, alg.field.to_str(c)])
    return {
        "format_version": FORMAT_VERSION,
        "kind": "prelie",
        "field": _field_to_json(alg.field),
        "dim": alg.dim,
        "basis": list(alg.basis_names),
        "entries": entries,
    }


def brace_to_json(B):
    entries = []
    for k in sorted(B.lambdas):
        lam = B.lambdas[k]
        for (tup, j) in sorted(lam.table):
            val = lam.table[(tup, j)]
            for out, c in enumerate(val.entries):
                if c:
                    entries.append([k, list(tup), j, out, B.field.to_str(c)])
    return {
        "format_version": FORMAT_VERSION,
        "kind": "brace",
        "field": _field_to_json(B.field),
        "dim": B.dim,
        "class_bound": B.class_bound,
        "basis": list(B.basis_names),
        "entries": entries,
    }


def dumps(obj):
    if isinstance(obj, PreLieAlgebra):
        doc = algebra_to_json(obj)
    elif isinstance(obj, GradedBrace):
        doc = brace_to_json(obj)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def write_file(obj, path):
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps(obj))


def _require(cond, message):
    if not cond:
        raise AlgebraFileError(message)


def _common_header(doc, allowed):
    _require(isinstance(doc, dict), "top level must be an object")
    unknown = set(doc) - allowed
    _require(not unknown, f"unknown fields {sorted(unknown)}")
    for key in ("format_version", "kind", "field", "dim", "entries"):
        _require(key in doc, f"missing field {key!r}")
    _require(doc["format_version"] == FORMAT_VERSION,
             f"unsupported format_version {doc['format_version']!r}")
    field = _field_from_json(doc["field"])
    dim = doc["dim"]
    _require(isinstance(dim, int) and dim >= 1, "dim must be a positive integer")
    basis = doc.get("basis")
    if basis is not None:
        _require(isinstance(basis, list) and len(basis) == dim
                 and all(isinstance(b, str) for b in basis),
                 "basis must list dim names")
    _require(isinstance(doc["entries"], list), "entries must be a list")
    return field, dim, basis


_SCALAR_RE = re.compile(r"-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?\Z")


def _parse_scalar(field, s):
    _require(isinstance(s, str), f"values must be strings, got {s!r}")
    if not _SCALAR_RE.match(s):
        raise AlgebraFileError(f"bad scalar {s!r}")
    try:
        return field.of(s)
    except (ValueError, ZeroDivisionError, TypeError):
        raise AlgebraFileError(f"bad scalar {s!r}") from None


def loads(text, validate=True):
    """Parse a pre-Lie or brace file; structural errors raise
    AlgebraFileError, mathematical validation (unless disabled) raises
    ValidationFailure as usual."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"not valid JSON: {exc}") from None
    _require(isinstance(doc, dict) and "kind" in doc, "missing field 'kind'")
    kind = doc["kind"]
    if kind == "prelie":
        field, dim, basis = _common_header(doc, _PRELIE_KEYS)
        structure = {}
        for entry in doc["entries"]:
            _require(isinstance(entry, list) and len(entry) == 4,
                     f"bad pre-Lie entry {entry!r}")
            i, j, k, val = entry
            _require(all(isinstance(n, int) and 0 <= n < dim for n in (i, j, k)),
                     f"index out of range in {entry!r}")
            row = structure.setdefault((i, j), {})
            _require(k not in row, f"duplicate entry for ({i},{j},{k})")
            row[k] = _parse_scalar(field, val)
        return PreLieAlgebra(field, dim, structure, basis_names=basis,
                             validate=validate)
    if kind == "brace":
        field, dim, basis = _common_header(doc, _BRACE_KEYS)
        class_bound = doc.get("class_bound")
        _require(class_bound is None or (isinstance(class_bound, int) and class_bound >= 2),
                 "class_bound must be an integer >= 2")
        tables = {}
        for entry in doc["entries"]:
            _require(isinstance(entry, list) and len(entry) == 5,
                     f"bad brace entry {entry!r}")
            k, tup, j, out, val = entry
            _require(isinstance(k, int) and k >= 1, f"bad degree in {entry!r}")
            _require(isinstance(tup, list) and len(tup) == k
                     and all(isinstance(n, int) and 0 <= n < dim for n in tup)
                     and list(tup) == sorted(tup),
                     f"bad left multi-index in {entry!r}")
            _require(isinstance(j, int) and 0 <= j < dim
                     and isinstance(out, int) and 0 <= out < dim,
                     f"index out of range in {entry!r}")
            key = (tuple(tup), j)
            vec = tables.setdefault(k, {}).setdefault(key, [field.zero] * dim)
            _require(not vec[out], f"duplicate entry for {entry!r}")
            vec[out] = _parse_scalar(field, val)
        lambdas = {
            k: SymmetricMap(field, dim, k,
                            {key: Vec(field, ent) for key, ent in table.items()})
            for k, table in tables.items()}
        return GradedBrace(field, dim, lambdas, class_bound=class_bound,
                           basis_names=basis, validate=validate)
    raise AlgebraFileError(f"unknown kind {kind!r}")


def read_file(path, validate=True):
    try:
        with open(path, "r", encoding="ascii") as fh:
            text = fh.read()
    except OSError as exc:
        raise AlgebraFileError(f"cannot read {path}: {exc}") from None
    return loads(text, validate=validate)
