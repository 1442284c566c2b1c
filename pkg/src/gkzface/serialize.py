"""Canonical JSON forms: sorted keys, compact separators, exact scalars.

Rational scalars print as "p" or "p/q" with positive denominator in lowest
terms; Gaussian rationals as {"re": ..., "im": ...}; column index sets as
sorted integer lists.  Identical inputs therefore produce identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .rationals import GaussRat, as_parameter, format_rat


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def encode_scalar(x):
    if isinstance(x, GaussRat):
        return x.to_json()
    if isinstance(x, Fraction):
        return format_rat(x)
    return x


def encode_parameter(param) -> list:
    return [g.to_json() for g in as_parameter(param)]


def encode_int_vectors(vectors) -> list:
    return [list(int(x) for x in v) for v in vectors]


def parse_instance(payload: dict) -> dict:
    """Validate and normalize a problem instance dictionary."""
    if not isinstance(payload, dict):
        raise ValueError("instance must be a JSON object")
    if "matrix" not in payload:
        raise ValueError("instance is missing 'matrix'")
    matrix = payload["matrix"]
    if (
        not isinstance(matrix, list)
        or not matrix
        or not all(isinstance(r, list) and r for r in matrix)
        or len({len(r) for r in matrix}) != 1
        or not all(isinstance(x, int) for r in matrix for x in r)
    ):
        raise ValueError("'matrix' must be a nonempty rectangular list of integer rows")
    out = {"matrix": matrix}
    if "beta" in payload:
        beta = payload["beta"]
        if not isinstance(beta, list) or len(beta) != len(matrix):
            raise ValueError("'beta' must be a list with one entry per matrix row")
        out["beta"] = as_parameter(beta)
    if "face" in payload:
        face = payload["face"]
        if not isinstance(face, list) or not all(isinstance(i, int) for i in face):
            raise ValueError("'face' must be a list of column indices")
        out["face"] = face
    if "open_set" in payload:
        u = payload["open_set"]
        if not isinstance(u, list) or not all(
            isinstance(f, list) and all(isinstance(i, int) for i in f) for f in u
        ):
            raise ValueError("'open_set' must be a list of column index lists")
        out["open_set"] = u
    out["options"] = payload.get("options", {})
    if not isinstance(out["options"], dict):
        raise ValueError("'options' must be an object")
    return out
