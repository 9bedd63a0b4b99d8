#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Wold decomposition of truncated isometries.

An isometry V splits as H = H₀ ⊕ H₁ where V is unitary on H₀ and a unilateral
shift on H₁ = ⊕ₙ VⁿY with wandering subspace Y = (rg V)⊥. On a truncation the
last block of a shift is pushed out of the space, so every check runs on the
interior columns only and the part of the orbit beyond the requested depth is
kept apart as the tail.

本模块提供截断等距算子的 Wold 分解（酉部分与单边移位部分）及其残差检验。
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg

from .cardinal import CardinalDim
from .errors import HypothesisError
from .operators import BlockRightShift, Dense, DirectSum, MatrixOperator, StructuredOperator, materialize
from .rank import kernel_defect, operator_norm

logger = logging.getLogger(__name__)

_SUPPORT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class WoldDecomposition:
    """Bases of the two Wold parts of a truncated isometry.

    Attributes:
        unitary_basis: Orthonormal columns spanning H₀
        wandering_basis: Orthonormal columns spanning Y = (rg V)⊥
        multiplicity: Dimension of Y in the untruncated operator
        depth_used: Number of orbit blocks VⁿY accumulated into H₁
        residuals: (orthogonality defect, invariance defect)
        shift_basis: Orthonormal columns of H₁ = span{VⁿY : n < depth_used}
        tail_basis: Orthonormal columns of the orbit beyond the depth horizon
    """

    unitary_basis: np.ndarray
    wandering_basis: np.ndarray
    multiplicity: CardinalDim
    depth_used: int
    residuals: Tuple[float, float]
    shift_basis: np.ndarray
    tail_basis: np.ndarray

    @property
    def unitary_dim(self) -> int:
        return self.unitary_basis.shape[1]

    @property
    def wandering_dim(self) -> int:
        return self.wandering_basis.shape[1]


@dataclass(frozen=True)
class WoldResiduals:
    orthogonality: float
    invariance: float
    unitarity_left: float
    unitarity_right: float
    basis_orthonormality: float
    part_orthogonality: float

    @property
    def max_residual(self) -> float:
        return max(self.orthogonality, self.invariance, self.unitarity_left,
                   self.unitarity_right, self.basis_orthonormality, self.part_orthogonality)

    def to_dict(self):
        return {"orthogonality": self.orthogonality, "invariance": self.invariance,
                "unitarity_left": self.unitarity_left, "unitarity_right": self.unitarity_right,
                "basis_orthonormality": self.basis_orthonormality,
                "part_orthogonality": self.part_orthogonality}


def orthonormality(basis: np.ndarray) -> float:
    """‖I − BᴴB‖ for a column basis B (0 for an empty basis)."""
    if basis.shape[1] == 0:
        return 0.0
    return operator_norm(np.eye(basis.shape[1]) - basis.conj().T @ basis)


def _cross(first: np.ndarray, second: np.ndarray) -> float:
    if first.shape[1] == 0 or second.shape[1] == 0:
        return 0.0
    return operator_norm(first.conj().T @ second)


def interior_isometry_defect(op: StructuredOperator) -> float:
    """‖V*V − I‖ restricted to the interior columns of the truncation."""
    if isinstance(op, MatrixOperator):
        op = Dense(op)
    arr = materialize(op).data
    columns = arr[:, op.interior_columns()]
    return orthonormality(columns)


def _shift_lengths(op: StructuredOperator):
    if isinstance(op, BlockRightShift):
        yield op.block_truncation
    elif isinstance(op, DirectSum):
        for part in op.parts:
            yield from _shift_lengths(part)


def orbit_depth(v: StructuredOperator, depth: int) -> int:
    """
    ``depth`` capped at the number of blocks of the shortest block shift in v.

    A dense input has no known orbit length and keeps ``depth``.
    """
    lengths = list(_shift_lengths(v))
    if not lengths or min(lengths) >= depth:
        return depth
    logger.debug("Wold depth %d capped at the orbit length %d", depth, min(lengths))
    return min(lengths)


def wold_decompose(v: StructuredOperator, depth: int = 8, isometry_tol: float = 1e-8,
                   tol='auto') -> WoldDecomposition:
    """
    Split a truncated isometry into its unitary part and its shift part.

    Args:
        v: Operator that is isometric on the interior of its truncation
        depth: Number of orbit blocks VⁿY accumulated into H₁
        isometry_tol: Accepted ‖V*V − I‖ on the interior columns
        tol: Rank tolerance for the cokernel cardinal of dense inputs

    Returns:
        WoldDecomposition with H₀ computed as the orthogonal complement of the whole orbit of Y

    Raises:
        HypothesisError: If v is not an interior isometry or the orbit reaches the
            truncation boundary before ``depth`` blocks
    """
    if isinstance(v, MatrixOperator):
        v = Dense(v)
    if depth < 1:
        raise ValueError(f"depth must be a positive integer, got {depth}")
    arr = materialize(v).data
    size = arr.shape[0]
    interior = v.interior_columns()

    defect = orthonormality(arr[:, interior])
    if defect > isometry_tol:
        raise HypothesisError(f"not an isometry on the interior: ‖V*V − I‖ = {defect:.3g}")

    wandering = scipy.linalg.null_space(arr[:, interior].conj().T)
    blocks = []
    if wandering.shape[1]:
        block = wandering
        for k in range(size):
            if block.shape[1] == 0:
                break
            blocks.append(block)
            boundary_weight = np.linalg.norm(block[~interior]) if np.any(~interior) else 0.0
            if k <= depth - 2 and boundary_weight > _SUPPORT_TOL:
                raise HypothesisError(f"depth {depth} is too large for the truncation: "
                                      f"orbit block {k} reaches the boundary")
            image = arr @ block
            # re-orthonormalize every step; columns lost at the boundary drop out here
            block = scipy.linalg.orth(image) if np.linalg.norm(image) > _SUPPORT_TOL \
                else np.zeros((size, 0), dtype=complex)
        if len(blocks) < depth:
            raise HypothesisError(f"the orbit of the wandering subspace dies after {len(blocks)} "
                                  f"blocks, fewer than depth {depth}")

    empty = np.zeros((size, 0), dtype=complex)
    shift_basis = np.hstack(blocks[:depth]) if blocks else empty
    tail = np.hstack(blocks[depth:]) if len(blocks) > depth else empty
    orbit = np.hstack([shift_basis, tail])
    if orbit.shape[1]:
        orbit = scipy.linalg.orth(orbit)
        unitary_basis = scipy.linalg.null_space(orbit.conj().T)
        if tail.shape[1]:
            tail = scipy.linalg.orth(tail - shift_basis @ (shift_basis.conj().T @ tail))
    else:
        unitary_basis = np.eye(size, dtype=complex)

    orthogonality = max((_cross(blocks[i], blocks[j]) for i in range(len(blocks[:depth]))
                         for j in range(i + 1, len(blocks[:depth]))), default=0.0)
    invariance = _invariance_defect(arr, unitary_basis)

    multiplicity = kernel_defect(v, tol)[1]
    logger.debug("Wold decomposition: dim H0=%d, dim Y=%d, depth=%d, tail=%d, multiplicity %s",
                 unitary_basis.shape[1], wandering.shape[1], depth, tail.shape[1], multiplicity)
    return WoldDecomposition(unitary_basis=unitary_basis, wandering_basis=wandering,
                             multiplicity=multiplicity, depth_used=depth,
                             residuals=(float(orthogonality), float(invariance)),
                             shift_basis=shift_basis, tail_basis=tail)


def _invariance_defect(arr: np.ndarray, basis: np.ndarray) -> float:
    if basis.shape[1] == 0:
        return 0.0
    image = arr @ basis
    return operator_norm(image - basis @ (basis.conj().T @ image))


def wold_verify(v: StructuredOperator, w: WoldDecomposition) -> WoldResiduals:
    """
    Residuals of a Wold decomposition against the operator it came from.

    The orbit VⁿY is recomputed by plain powers of V (no re-orthonormalization),
    so a corrupted wandering basis shows up in the pairwise orthogonality.

    Returns:
        WoldResiduals: pairwise orthogonality of VⁿY for n < m < depth, invariance of H₀,
        unitarity of V on H₀ in both directions, orthonormality of both bases and H₀ ⟂ Y
    """
    if isinstance(v, MatrixOperator):
        v = Dense(v)
    arr = materialize(v).data
    orbit = [w.wandering_basis]
    for _ in range(1, w.depth_used):
        orbit.append(arr @ orbit[-1])
    orthogonality = max((_cross(orbit[i], orbit[j]) for i in range(len(orbit))
                         for j in range(i + 1, len(orbit))), default=0.0)

    basis = w.unitary_basis
    if basis.shape[1]:
        restricted = basis.conj().T @ arr @ basis
        identity = np.eye(basis.shape[1])
        unitarity_left = operator_norm(restricted.conj().T @ restricted - identity)
        unitarity_right = operator_norm(restricted @ restricted.conj().T - identity)
    else:
        unitarity_left = unitarity_right = 0.0

    return WoldResiduals(orthogonality=float(orthogonality),
                         invariance=_invariance_defect(arr, basis),
                         unitarity_left=float(unitarity_left),
                         unitarity_right=float(unitarity_right),
                         basis_orthonormality=max(orthonormality(basis), orthonormality(w.wandering_basis)),
                         part_orthogonality=_cross(basis, w.wandering_basis))
