#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Numerical rank, kernel/cokernel and spectrum analysis.

本模块提供数值秩、核/余核维数以及谱的计算。
"""

import logging
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
import scipy.linalg

from .cardinal import CardinalDim, cardinal_sum
from .errors import NumericalError
from .operators import DirectSum, Dense, MatrixOperator, StructuredOperator, as_array, materialize

logger = logging.getLogger(__name__)

Tolerance = Union[float, str]


@dataclass(frozen=True)
class RankReport:
    rank: int
    kernel_dim: CardinalDim
    cokernel_dim: CardinalDim
    singular_values: Tuple[float, ...]
    tolerance_used: float


def _singular_values(arr: np.ndarray) -> np.ndarray:
    try:
        return scipy.linalg.svdvals(arr)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericalError(f"singular value computation failed: {e}") from e


def _rank_report(arr: np.ndarray, tol: Tolerance = 'auto') -> RankReport:
    rows, cols = arr.shape
    s = _singular_values(arr) if arr.size else np.zeros(0)
    if tol == 'auto':
        largest = float(s[0]) if s.size else 0.0
        tol_used = np.finfo(float).eps * max(rows, cols) * largest
        tol_used = max(tol_used, np.finfo(float).tiny)
    else:
        tol_used = float(tol)
        if not tol_used > 0:
            raise ValueError(f"rank tolerance must be positive, got {tol}")
    rank = int(np.count_nonzero(s > tol_used))
    return RankReport(rank=rank,
                      kernel_dim=CardinalDim(cols - rank),
                      cokernel_dim=CardinalDim(rows - rank),
                      singular_values=tuple(float(v) for v in s),
                      tolerance_used=float(tol_used))


def rank_analysis(m: MatrixOperator, tol: Tolerance = 'auto') -> RankReport:
    """
    Numerical rank of a square matrix from its singular values.

    Args:
        m: The matrix
        tol: Positive threshold, or 'auto' for eps·dim·σ_max

    Returns:
        RankReport; singular values at or below the tolerance are the ones counted
        into the kernel dimension

    Raises:
        NumericalError: If the SVD does not converge
    """
    return _rank_report(as_array(m), tol)


def kernel_defect(op: StructuredOperator, tol: Tolerance = 'auto') -> Tuple[CardinalDim, CardinalDim]:
    """
    Kernel dimension and range codimension of an operator, as cardinals.

    Dense parts are measured with rank_analysis; symbolic variants return their
    declared cardinals; a DirectSum adds up its parts.
    """
    if isinstance(op, MatrixOperator):
        op = Dense(op)
    if isinstance(op, Dense):
        report = rank_analysis(op.matrix, tol)
        return report.kernel_dim, report.cokernel_dim
    if isinstance(op, DirectSum):
        defects = [kernel_defect(part, tol) for part in op.parts]
        return cardinal_sum(*[d[0] for d in defects]), cardinal_sum(*[d[1] for d in defects])
    declared = op.declared_defect()
    if declared is None:
        report = rank_analysis(materialize(op), tol)
        return report.kernel_dim, report.cokernel_dim
    return declared


def observed_defect(op: StructuredOperator, tol: Tolerance = 'auto') -> Tuple[CardinalDim, CardinalDim]:
    """
    Kernel and cokernel dimensions read off the truncation itself.

    The materialized matrix is restricted to interior rows and columns before
    the rank analysis, so the boundary block of a truncated shift does not
    show up as a spurious kernel (right shift) or cokernel (left shift).
    """
    arr = materialize(op).data
    sub = arr[np.ix_(op.interior_rows(), op.interior_columns())]
    report = _rank_report(sub, tol)
    return report.kernel_dim, report.cokernel_dim


def spectrum(m: MatrixOperator) -> np.ndarray:
    """
    Eigenvalues of the truncation with multiplicity.

    Ordered by descending modulus, then by phase in [0, 2π).

    Raises:
        NumericalError: If the eigenvalue iteration does not converge
    """
    arr = as_array(m)
    try:
        values = scipy.linalg.eigvals(arr)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericalError(f"eigenvalue computation failed: {e}") from e
    values = np.where(np.abs(values) == 0, 0.0, values).astype(complex)
    modulus = np.round(np.abs(values), 12)
    phase = np.round(np.mod(np.angle(values), 2 * np.pi), 12)
    order = np.lexsort((phase, -modulus))
    return values[order]


def operator_norm(m) -> float:
    """Spectral norm (largest singular value); 0 for an empty matrix."""
    arr = as_array(m)
    if arr.size == 0:
        return 0.0
    return float(_singular_values(arr)[0])


def is_invertible(m: MatrixOperator, tol: Tolerance = 'auto') -> bool:
    report = rank_analysis(m, tol)
    return report.kernel_dim.is_zero
