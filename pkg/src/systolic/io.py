"""JSON schemas shared by the CLI and batch users.

Lattice files carry exact data: ``{"dim": b, "basis": [[...], ...]}`` or
``{"dim": b, "gram": [[...], ...]}`` with every entry a bare integer or a
``"p/q"`` string.  Metric spaces carry binary64 data:
``{"n": k, "dist": [[...], ...]}``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import SchemaError
from .filling import FiniteMetricSpace
from .lattice import GramMatrix, LatticeBasis

__all__ = [
    "LatticeInput",
    "parse_rational",
    "rational_str",
    "lattice_from_obj",
    "load_lattice",
    "basis_to_obj",
    "gram_to_obj",
    "metric_from_obj",
    "load_metric",
]


_RATIONAL_RE = re.compile(r"[+-]?\d+(\s*/\s*\d+)?")


def parse_rational(value) -> Fraction:
    """Accept a bare int or a 'p/q' string; floats and booleans are rejected."""
    if isinstance(value, bool):
        raise SchemaError("rational entries must be ints or 'p/q' strings, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not _RATIONAL_RE.fullmatch(value.strip()):
            raise SchemaError(
                f"cannot parse rational {value!r}: use 'p/q' or an integer string"
            )
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"cannot parse rational {value!r}") from exc
    raise SchemaError(
        f"rational entries must be ints or 'p/q' strings, got {type(value).__name__}"
    )


def rational_str(value: Fraction) -> str:
    return str(Fraction(value))


@dataclass(frozen=True)
class LatticeInput:
    """Parsed lattice file: always a Gram matrix, plus the basis if one was given."""

    gram: GramMatrix
    basis: Optional[LatticeBasis] = None


def lattice_from_obj(obj) -> LatticeInput:
    if not isinstance(obj, dict):
        raise SchemaError("lattice JSON must be an object")
    unknown = set(obj) - {"dim", "basis", "gram"}
    if unknown:
        raise SchemaError(f"unknown lattice keys: {sorted(unknown)}")
    dim = obj.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise SchemaError("'dim' must be an integer")
    has_basis, has_gram = "basis" in obj, "gram" in obj
    if has_basis == has_gram:
        raise SchemaError("provide exactly one of 'basis' or 'gram'")
    rows = obj["basis"] if has_basis else obj["gram"]
    if (
        not isinstance(rows, list)
        or len(rows) != dim
        or any(not isinstance(r, list) or len(r) != dim for r in rows)
    ):
        raise SchemaError(f"'{'basis' if has_basis else 'gram'}' must be a {dim}x{dim} array")
    parsed = [[parse_rational(x) for x in row] for row in rows]
    if has_basis:
        basis = LatticeBasis(parsed)
        return LatticeInput(gram=basis.gram(), basis=basis)
    return LatticeInput(gram=GramMatrix(parsed))


def load_lattice(path) -> LatticeInput:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {path}: {exc}") from exc
    return lattice_from_obj(obj)


def basis_to_obj(basis: LatticeBasis) -> dict:
    return {
        "dim": basis.dim,
        "basis": [[rational_str(x) for x in row] for row in basis.rows],
    }


def gram_to_obj(gram: GramMatrix) -> dict:
    return {
        "dim": gram.dim,
        "gram": [[rational_str(x) for x in row] for row in gram.entries],
    }


def metric_from_obj(obj) -> FiniteMetricSpace:
    if not isinstance(obj, dict):
        raise SchemaError("metric JSON must be an object")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise SchemaError("'n' must be an integer")
    dist = obj.get("dist")
    if (
        not isinstance(dist, list)
        or len(dist) != n
        or any(not isinstance(r, list) or len(r) != n for r in dist)
    ):
        raise SchemaError(f"'dist' must be an {n}x{n} array")
    for row in dist:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise SchemaError(f"distances must be numbers, got {x!r}")
    return FiniteMetricSpace(dist)


def load_metric(path) -> FiniteMetricSpace:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {path}: {exc}") from exc
    return metric_from_obj(obj)
