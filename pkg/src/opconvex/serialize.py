"""Matrix and operand (de)serialization for reports and operand files.

Matrices are nested row-major arrays of [re, im] pairs; scalars are plain
numbers; vectors are lists of numbers.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError


def encode_matrix(m) -> list:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise InputError(f"expected a 2-d matrix, got ndim={a.ndim}")
    return [[[float(v.real), float(v.imag)] for v in row] for row in a]


def decode_matrix(data) -> np.ndarray:
    try:
        rows = [[complex(cell[0], cell[1]) for cell in row] for row in data]
    except (TypeError, IndexError) as exc:
        raise InputError(f"malformed matrix payload: {exc}") from exc
    return np.asarray(rows, dtype=complex)


def encode_value(value):
    """Encode one operand: ndarray -> matrix, list of ndarray -> matrix list,
    numbers/bools/strings pass through."""
    if isinstance(value, np.ndarray):
        return {"matrix": encode_matrix(value)}
    if isinstance(value, (list, tuple)):
        if value and isinstance(value[0], np.ndarray):
            return [{"matrix": encode_matrix(v)} for v in value]
        return [encode_value(v) for v in value]
    if isinstance(value, dict):
        return {k: encode_value(v) for k, v in value.items()}
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    return value


def decode_value(value):
    """Inverse of encode_value; {"matrix": ...} payloads become ndarrays."""
    if isinstance(value, dict):
        if set(value.keys()) == {"matrix"}:
            return decode_matrix(value["matrix"])
        return {k: decode_value(v) for k, v in value.items()}
    if isinstance(value, list):
        return [decode_value(v) for v in value]
    return value


def encode_operands(operands: dict) -> dict:
    return {k: encode_value(v) for k, v in operands.items()}


def decode_operands(payload: dict) -> dict:
    return {k: decode_value(v) for k, v in payload.items()}
