"""Reading and writing matrices as JSON documents.

The document shape is::

    {"field": "real" | "complex",
     "rows": n, "cols": m,
     "data": row-major entries}

Real entries are plain numbers; complex entries are two-element [re, im]
arrays (always, even for a zero imaginary part).  ``data`` may be given
either flat (length n*m) or as a list of n rows of length m; files are
written flat.  All floats are serialized with 17 significant digits so a
write/read round trip reproduces the doubles exactly.
"""

from __future__ import annotations

import json
import math
from typing import IO, Union

import numpy as np

from .induced_norms import COMPLEX, MatrixValue, REAL, as_matrix

__all__ = [
    "MatrixFileError",
    "format_float",
    "matrix_to_obj",
    "matrix_from_obj",
    "dumps_matrix",
    "loads_matrix",
    "save_matrix",
    "load_matrix",
]


class MatrixFileError(ValueError):
    """The document does not satisfy the matrix-file schema."""


def format_float(x: float) -> str:
    """17-significant-digit decimal form, losslessly round-trippable."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(float(x), ".17g")


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def matrix_to_obj(M: MatrixValue) -> dict:
    """The document for M, with data flat in row-major order."""
    arr = M.entries
    if M.is_complex:
        data = [[float(z.real), float(z.imag)] for z in arr.reshape(-1)]
    else:
        data = [float(x) for x in arr.reshape(-1)]
    return {"field": M.field, "rows": M.n, "cols": M.m, "data": data}


def _entry_real(x, where: str) -> float:
    if not _is_number(x):
        raise MatrixFileError(f"real entry expected at {where}, got {x!r}")
    return float(x)


def _entry_complex(x, where: str) -> complex:
    if (
        not isinstance(x, (list, tuple))
        or len(x) != 2
        or not all(_is_number(t) for t in x)
    ):
        raise MatrixFileError(f"complex entry expected as [re, im] at {where}, got {x!r}")
    return complex(float(x[0]), float(x[1]))


def matrix_from_obj(obj) -> MatrixValue:
    """Validate a parsed document and build the matrix it describes."""
    if not isinstance(obj, dict):
        raise MatrixFileError("top-level JSON object expected")
    missing = [k for k in ("field", "rows", "cols", "data") if k not in obj]
    if missing:
        raise MatrixFileError(f"missing keys: {', '.join(missing)}")
    field = obj["field"]
    if field not in (REAL, COMPLEX):
        raise MatrixFileError(f'field must be "{REAL}" or "{COMPLEX}", got {field!r}')
    rows, cols = obj["rows"], obj["cols"]
    for name, val in (("rows", rows), ("cols", cols)):
        if not isinstance(val, int) or isinstance(val, bool) or val < 1:
            raise MatrixFileError(f"{name} must be a positive integer, got {val!r}")
    data = obj["data"]
    if not isinstance(data, list):
        raise MatrixFileError("data must be an array")
    entry = _entry_complex if field == COMPLEX else _entry_real
    # accept either a flat array of entries or a list of row arrays; the
    # field tag disambiguates [re, im] pairs from two-element real rows
    nested = bool(data) and all(isinstance(rw, list) for rw in data)
    if field == COMPLEX and nested:
        nested = all(
            bool(rw) and all(isinstance(e, (list, tuple)) for e in rw) for rw in data
        )
    if nested:
        if len(data) != rows:
            raise MatrixFileError(f"expected {rows} rows, got {len(data)}")
        flat = []
        for i, rw in enumerate(data):
            if len(rw) != cols:
                raise MatrixFileError(f"row {i} has {len(rw)} entries, expected {cols}")
            flat.extend(entry(e, f"row {i}") for e in rw)
    else:
        if len(data) != rows * cols:
            raise MatrixFileError(
                f"flat data length {len(data)} != rows*cols = {rows * cols}"
            )
        flat = [entry(e, f"index {t}") for t, e in enumerate(data)]
    dtype = complex if field == COMPLEX else float
    arr = np.array(flat, dtype=dtype).reshape(rows, cols)
    return as_matrix(arr, field=field)


def _dump_value(x, out: list) -> None:
    if isinstance(x, dict):
        out.append("{")
        for t, (k, v) in enumerate(x.items()):
            if t:
                out.append(", ")
            out.append(json.dumps(k))
            out.append(": ")
            _dump_value(v, out)
        out.append("}")
    elif isinstance(x, (list, tuple)):
        out.append("[")
        for t, v in enumerate(x):
            if t:
                out.append(", ")
            _dump_value(v, out)
        out.append("]")
    elif isinstance(x, bool) or x is None:
        out.append(json.dumps(x))
    elif isinstance(x, float):
        out.append(format_float(x))
    elif isinstance(x, int):
        out.append(str(x))
    else:
        out.append(json.dumps(x))


def dumps_json(obj) -> str:
    """json.dumps with floats rendered at 17 significant digits."""
    out: list = []
    _dump_value(obj, out)
    return "".join(out)


def dumps_matrix(M: MatrixValue) -> str:
    return dumps_json(matrix_to_obj(M))


def loads_matrix(text: str) -> MatrixValue:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise MatrixFileError(f"not valid JSON: {e}") from None
    return matrix_from_obj(obj)


def save_matrix(M: MatrixValue, path: Union[str, IO[str]]) -> None:
    text = dumps_matrix(M) + "\n"
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fp:
            fp.write(text)


def load_matrix(path: Union[str, IO[str]]) -> MatrixValue:
    if hasattr(path, "read"):
        return loads_matrix(path.read())
    try:
        with open(path, "r", encoding="utf-8") as fp:
            return loads_matrix(fp.read())
    except OSError as e:
        raise MatrixFileError(f"cannot read {path}: {e}") from None
