"""JSON exchange format for matrix polynomials, pencils and parameter sets.

Scalars are rational strings "p/q" (or "p").  Matrices are row-major lists
of lists; empty matrices are written as [] and get their shape from context.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import linalg
from .ansatz import AnsatzParams
from .blocksym import BGParams
from .classical import L1Params
from .double import DGParams, ShiftResult
from .matpoly import (DimensionError, MatrixPolynomial, Partition, Pencil,
                      from_coeffs)


class MalformedInput(ValueError):
    """Input that is not valid JSON or does not follow the exchange format."""


def scalar_str(x) -> str:
    x = linalg.to_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_scalar(x) -> Fraction:
    if isinstance(x, float) or isinstance(x, bool):
        raise MalformedInput(f"scalars must be rational strings or integers, got {x!r}")
    try:
        return linalg.to_fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise MalformedInput(f"not a rational scalar: {x!r}") from None


def matrix_to_json(a: np.ndarray) -> list:
    if a.size == 0:
        return []
    return [[scalar_str(x) for x in row] for row in a]


def matrix_from_json(data, shape: tuple[int, int] | None = None,
                     name: str = "matrix") -> np.ndarray:
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise MalformedInput(f"{name} must be a list of rows")
    if data and len({len(r) for r in data}) != 1:
        raise MalformedInput(f"{name} has rows of different lengths")
    rows = [[parse_scalar(x) for x in r] for r in data]
    if not rows or not rows[0]:
        return linalg.zeros(*(shape or (len(rows), 0)))
    out = linalg.matrix(rows)
    if shape is not None and out.shape != tuple(shape):
        raise DimensionError(f"{name}: expected shape {tuple(shape)}, got {out.shape}")
    return out


def _require(data: dict, keys, what: str):
    if not isinstance(data, dict):
        raise MalformedInput(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in data]
    if missing:
        raise MalformedInput(f"{what} is missing {', '.join(missing)}")


def _int(data: dict, key: str) -> int:
    v = data[key]
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise MalformedInput(f"{key} must be a nonnegative integer")
    return v


def poly_to_json(P: MatrixPolynomial) -> dict:
    out = {"rows": P.rows, "cols": P.cols, "grade": P.grade,
           "coeffs": [matrix_to_json(c) for c in P.coeffs]}
    part = getattr(P, "partition", None)
    if part is not None:
        out["partition"] = {"eta": part.eta, "eps": part.eps, "m": part.m, "n": part.n}
    return out


def poly_from_json(data) -> MatrixPolynomial:
    _require(data, ("rows", "cols", "grade", "coeffs"), "matrix polynomial")
    m, n, k = _int(data, "rows"), _int(data, "cols"), _int(data, "grade")
    coeffs = data["coeffs"]
    if not isinstance(coeffs, list):
        raise MalformedInput("coeffs must be a list")
    if len(coeffs) != k + 1:
        raise DimensionError(f"grade {k} needs {k + 1} coefficients, got {len(coeffs)}")
    mats = [matrix_from_json(c, (m, n), f"coefficient {i}") for i, c in enumerate(coeffs)]
    P = from_coeffs(mats, shape=(m, n))
    if "partition" in data:
        if k != 1:
            raise DimensionError("only pencils carry a partition")
        p = data["partition"]
        _require(p, ("eta", "eps", "m", "n"), "partition")
        part = Partition(*(_int(p, x) for x in ("eta", "eps", "m", "n")))
        if part.shape != (m, n):
            raise DimensionError(f"partition {part} does not fit shape {(m, n)}")
        return Pencil(mats[1], mats[0], partition=part, shape=(m, n))
    return P


def _matrices(obj, names) -> dict:
    return {x: matrix_to_json(getattr(obj, x)) for x in names}


def params_to_json(params) -> dict:
    if isinstance(params, AnsatzParams):
        out = {"alpha": scalar_str(params.alpha), **_matrices(params, ("B1", "B2", "C1", "C2"))}
    elif isinstance(params, BGParams):
        out = {"alpha": scalar_str(params.alpha), **_matrices(params, ("B11", "C11", "C21"))}
    elif isinstance(params, (DGParams, ShiftResult)):
        out = {"alpha": scalar_str(params.alpha),
               **_matrices(params, ("B11", "C11", "C21", "B2", "C2"))}
    elif isinstance(params, L1Params):
        return {"v": [scalar_str(x) for x in params.v], "Z": matrix_to_json(params.Z)}
    else:
        raise TypeError(f"no JSON form for {type(params).__name__}")
    out["eta"], out["eps"] = params.eta, params.eps
    return out


def params_from_json(data, family: str, P: MatrixPolynomial):
    """Parameters for ``family`` (g, dg, bg, l1, l2 or dl) sized against P."""
    m, n = P.rows, P.cols
    if family in ("l1", "l2", "dl"):
        _require(data, ("v",) if family == "dl" else ("v", "Z"), f"{family} parameters")
        v = data["v"]
        if not isinstance(v, list):
            raise MalformedInput("v must be a list")
        v = [parse_scalar(x) for x in v]
        if family == "dl":
            return v
        k = P.grade
        shape = (k * n, (k - 1) * n) if family == "l1" else ((k - 1) * n, k * n)
        return L1Params(v, matrix_from_json(data["Z"], shape, "Z"))
    names = {"g": ("B1", "B2", "C1", "C2"), "bg": ("B11", "C11", "C21"),
             "dg": ("B11", "C11", "C21", "B2", "C2")}
    if family not in names:
        raise ValueError(f"unknown parameter family {family!r}")
    _require(data, ("alpha", "eta", "eps") + names[family], f"{family} parameters")
    eta, eps = _int(data, "eta"), _int(data, "eps")
    if eta + eps + 1 != P.grade:
        raise DimensionError(f"split ({eta}, {eps}) does not match grade {P.grade}")
    alpha = parse_scalar(data["alpha"])
    mats = {x: matrix_from_json(data[x], None, x) for x in names[family]}
    try:
        if family == "g":
            mats = _fill_empty(mats, {"B1": ((eta + 1) * m, eps * n), "B2": (eta * m, (eps + 1) * n),
                                      "C1": (eps * n, eps * n), "C2": (eta * m, eta * m)})
            return AnsatzParams(alpha, mats["B1"], mats["B2"], mats["C1"], mats["C2"],
                                eta, eps, m, n)
        if m != n:
            raise DimensionError("double ansatz spaces need a square polynomial")
        shapes = {"B11": ((eta + 1) * n, eta * n), "C11": ((eps - eta) * n, eta * n),
                  "C21": (eta * n, eta * n), "B2": (eta * n, (eps + 1) * n),
                  "C2": (eta * n, eta * n)}
        mats = _fill_empty(mats, shapes)
        if family == "bg":
            return BGParams(alpha, mats["B11"], mats["C11"], mats["C21"], eta, eps, n)
        return DGParams(alpha, mats["B11"], mats["C11"], mats["C21"], mats["B2"], mats["C2"],
                        eta, eps, n)
    except ValueError as exc:
        if isinstance(exc, (DimensionError, MalformedInput)):
            raise
        raise DimensionError(str(exc)) from None


def _fill_empty(mats: dict, shapes: dict) -> dict:
    """Give [] entries their contextual shape."""
    return {x: linalg.zeros(*shapes[x]) if a.size == 0 else a for x, a in mats.items()}


def load_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
