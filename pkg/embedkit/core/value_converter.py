#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Value conversion utilities for embedkit.

This module converts values between their YAML form (as found in operator spec
files and written to report files) and the Python/numpy objects used by the
numerical code. Complex scalars are serialized as ``[re, im]`` pairs, cardinal
dimensions as an integer or the string ``infinite``, matrices as lists of rows.

本模块提供 YAML 值与 Python/numpy 对象之间的转换（复数、基数维度、矩阵）。
"""

import enum
import math
from typing import Any, List

import numpy as np

from .cardinal import CardinalDim, INFINITE
from .errors import SpecParseError

_INFINITE_WORDS = ("infinite", "inf", "infinity")


def value_format_yaml2complex(value: Any, field: str = "") -> complex:
    """
    Convert a YAML scalar or ``[re, im]`` pair to a Python complex.

    Args:
        value: A real number or a two-element list of real numbers
        field: Field name used in error messages

    Returns:
        The complex value

    Raises:
        SpecParseError: If the value is neither a number nor a pair of numbers
    """
    if isinstance(value, bool):
        raise SpecParseError(f"expected a number or [re, im] pair, got {value!r}", field=field)
    if isinstance(value, (int, float)):
        return complex(float(value), 0.0)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re_part, im_part = value
        if all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in (re_part, im_part)):
            result = complex(float(re_part), float(im_part))
            if not (math.isfinite(result.real) and math.isfinite(result.imag)):
                raise SpecParseError("complex entries must be finite", field=field)
            return result
    raise SpecParseError(f"expected a number or [re, im] pair, got {value!r}", field=field)


def value_format_yaml2cardinal(value: Any, field: str = "") -> CardinalDim:
    """
    Convert a YAML value to a CardinalDim.

    Args:
        value: A nonnegative integer or one of "infinite", "inf", "infinity"

    Returns:
        The cardinal dimension
    """
    if isinstance(value, str) and value.strip().lower() in _INFINITE_WORDS:
        return INFINITE
    if isinstance(value, int) and not isinstance(value, bool) and value >= 0:
        return CardinalDim(value)
    raise SpecParseError(f"expected a nonnegative integer or 'infinite', got {value!r}", field=field)


def value_format_yaml2matrix(rows: Any, field: str = "") -> np.ndarray:
    """
    Convert a list of rows (entries are numbers or ``[re, im]`` pairs) to a square complex array.

    Raises:
        SpecParseError: If the rows are ragged, empty or not square
    """
    if not isinstance(rows, (list, tuple)) or not rows:
        raise SpecParseError("expected a non-empty list of rows", field=field)
    size = len(rows)
    data = np.zeros((size, size), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, (list, tuple)) or len(row) != size:
            raise SpecParseError(f"row {i} must have {size} entries (square matrix)", field=field)
        for j, entry in enumerate(row):
            data[i, j] = value_format_yaml2complex(entry, field=f"{field}[{i}][{j}]")
    return data


def value_format_complex2yaml(value: complex) -> List[float]:
    """Convert a complex scalar to its ``[re, im]`` pair."""
    value = complex(value)
    return [float(value.real), float(value.imag)]


def value_format_py2yaml(value: Any) -> Any:
    """
    Convert a Python/numpy value to something ``yaml.safe_dump`` writes faithfully.

    Args:
        value: Python value to convert (nested lists/dicts are converted recursively)

    Returns:
        Plain YAML-safe representation of the value
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, CardinalDim):
        return value.to_value()
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return value_format_complex2yaml(value)
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            if np.all(value.imag == 0):
                return value_format_py2yaml(value.real)
            return _complex_array2yaml(value)
        return value.tolist()
    if isinstance(value, dict):
        return {str(value_format_py2yaml(k)): value_format_py2yaml(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [value_format_py2yaml(v) for v in value]
    return str(value)


def _complex_array2yaml(value: np.ndarray) -> Any:
    if value.ndim == 0:
        return value_format_complex2yaml(value.item())
    return [_complex_array2yaml(v) for v in value]
