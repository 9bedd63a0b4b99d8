#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Operator representations for embedkit.

An operator is either a dense matrix (MatrixOperator) or a StructuredOperator:
a symbolic description of an operator on an infinite-dimensional Hilbert space
together with truncation parameters. Every structured variant can materialize a
dense truncation, and carries the exact kernel/cokernel cardinals that a finite
truncation cannot express on its own.

本模块提供算子表示：稠密矩阵以及带截断参数的结构化（符号）算子。
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from .cardinal import CardinalDim, INFINITE, ZERO, cardinal_sum
from .errors import ResourceLimitError
from .settings import DEFAULT_SETTINGS

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class MatrixOperator:
    """An immutable square complex matrix, the finite truncation of an operator.

    Attributes:
        data: Read-only ``(dim, dim)`` complex array
        metadata: Free-form provenance (variant kind, symbolic tags)
    """

    data: np.ndarray
    metadata: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        arr = np.array(self.data, dtype=complex, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise ValueError(f"MatrixOperator must be a non-empty square matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("MatrixOperator entries must be finite (no NaN/inf)")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "metadata", dict(self.metadata))

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @classmethod
    def identity(cls, dim: int) -> "MatrixOperator":
        return cls(np.eye(dim, dtype=complex))

    def adjoint(self) -> "MatrixOperator":
        return MatrixOperator(self.data.conj().T, self.metadata)

    def __repr__(self) -> str:
        return f"MatrixOperator(dim={self.dim})"


def as_array(m) -> np.ndarray:
    """The complex array behind a MatrixOperator (or an array-like)."""
    if isinstance(m, MatrixOperator):
        return m.data
    return np.asarray(m, dtype=complex)


class StructuredOperator(ABC):
    """Base class of the symbolic operator variants."""

    kind: str = "structured"

    @abstractmethod
    def size(self) -> int:
        """Dimension of the dense truncation."""

    @abstractmethod
    def _materialize(self) -> np.ndarray:
        """The dense truncation as a fresh complex array."""

    def declared_defect(self) -> Optional[Tuple[CardinalDim, CardinalDim]]:
        """Exact (kernel, cokernel) cardinals, or None when they must be computed."""
        return None

    def interior_columns(self) -> np.ndarray:
        """Columns of the truncation that are not an artifact of cutting the space off."""
        return np.ones(self.size(), dtype=bool)

    def interior_rows(self) -> np.ndarray:
        return np.ones(self.size(), dtype=bool)

    def tags(self) -> Dict[str, Any]:
        """Symbolic facts carried into the materialized metadata."""
        return {}

    @abstractmethod
    def adjoint(self) -> "StructuredOperator":
        """Hilbert adjoint at the structured level."""


@dataclass(frozen=True, eq=False)
class Dense(StructuredOperator):
    matrix: MatrixOperator
    kind = "dense"

    def __post_init__(self):
        if not isinstance(self.matrix, MatrixOperator):
            object.__setattr__(self, "matrix", MatrixOperator(self.matrix))

    def size(self) -> int:
        return self.matrix.dim

    def _materialize(self) -> np.ndarray:
        return self.matrix.data.copy()

    def adjoint(self) -> "Dense":
        return Dense(self.matrix.adjoint())


def _check_diagonal_cardinals(values: np.ndarray, kernel_dim: Optional[CardinalDim],
                              cokernel_dim: Optional[CardinalDim]) -> Tuple[CardinalDim, CardinalDim]:
    zeros = int(np.count_nonzero(values == 0))
    kernel_dim = CardinalDim(zeros) if kernel_dim is None else kernel_dim
    cokernel_dim = kernel_dim if cokernel_dim is None else cokernel_dim
    if kernel_dim.is_infinite:
        if zeros == 0:
            raise ValueError("an Infinite kernel needs at least one zero entry to represent it")
    elif kernel_dim.count != zeros:
        raise ValueError(f"declared kernel {kernel_dim} but the truncation has {zeros} zero entries")
    if not cokernel_dim.is_infinite and cokernel_dim.count != zeros:
        raise ValueError(f"declared cokernel {cokernel_dim} but the truncation has {zeros} zero entries")
    return kernel_dim, cokernel_dim


@dataclass(frozen=True, eq=False)
class Diagonal(StructuredOperator):
    """Truncation of the multiplication operator diag(λ₁, λ₂, ...) on l².

    Zero entries stand for the kernel; declaring ``kernel_dim`` Infinite says the
    zero eigenvalue has infinite multiplicity in the untruncated operator.
    """

    eigenvalues: Tuple[complex, ...]
    kernel_dim: Optional[CardinalDim] = None
    cokernel_dim: Optional[CardinalDim] = None
    kind = "diagonal"

    def __post_init__(self):
        values = np.asarray(self.eigenvalues, dtype=complex).ravel()
        if values.size == 0:
            raise ValueError("Diagonal needs at least one eigenvalue")
        if not np.all(np.isfinite(values)):
            raise ValueError("Diagonal eigenvalues must be finite")
        kernel_dim, cokernel_dim = _check_diagonal_cardinals(values, self.kernel_dim, self.cokernel_dim)
        object.__setattr__(self, "eigenvalues", tuple(complex(v) for v in values))
        object.__setattr__(self, "kernel_dim", kernel_dim)
        object.__setattr__(self, "cokernel_dim", cokernel_dim)

    def size(self) -> int:
        return len(self.eigenvalues)

    def _materialize(self) -> np.ndarray:
        return np.diag(np.asarray(self.eigenvalues, dtype=complex))

    def declared_defect(self):
        return self.kernel_dim, self.cokernel_dim

    def tags(self):
        return {"kernel_dim": str(self.kernel_dim), "cokernel_dim": str(self.cokernel_dim)}

    def adjoint(self) -> "Diagonal":
        # diagonal operators are normal: ker T* = ker T
        return Diagonal(tuple(np.conj(self.eigenvalues)), self.kernel_dim, self.cokernel_dim)


def _check_block_shift(fiber_dim: CardinalDim, fiber_truncation: int, block_truncation: int) -> None:
    if fiber_truncation < 1 or block_truncation < 1:
        raise ValueError("fiber_truncation and block_truncation must be positive")
    if not fiber_dim.is_infinite:
        if fiber_dim.count < 1:
            raise ValueError("a shift needs a fiber of dimension at least 1")
        if fiber_truncation != fiber_dim.count:
            raise ValueError(f"a finite fiber {fiber_dim} is truncated exactly: "
                             f"fiber_truncation must be {fiber_dim.count}")


@dataclass(frozen=True, eq=False)
class BlockRightShift(StructuredOperator):
    """Truncation of the right shift (x₁, x₂, ...) ↦ (0, x₁, x₂, ...) on l²(Y).

    The last block of columns is the truncation boundary: the shift pushes it
    out of the truncated space.
    """

    fiber_dim: CardinalDim
    fiber_truncation: int
    block_truncation: int
    kind = "block_right_shift"

    def __post_init__(self):
        _check_block_shift(self.fiber_dim, self.fiber_truncation, self.block_truncation)

    def size(self) -> int:
        return self.fiber_truncation * self.block_truncation

    def _materialize(self) -> np.ndarray:
        return np.eye(self.size(), k=-self.fiber_truncation, dtype=complex)

    def declared_defect(self):
        return ZERO, self.fiber_dim

    def interior_columns(self) -> np.ndarray:
        mask = np.ones(self.size(), dtype=bool)
        mask[self.size() - self.fiber_truncation:] = False
        return mask

    def tags(self):
        return {"fiber_dim": str(self.fiber_dim), "fiber_truncation": self.fiber_truncation,
                "block_truncation": self.block_truncation}

    def adjoint(self) -> "BlockLeftShift":
        return BlockLeftShift(self.fiber_dim, self.fiber_truncation, self.block_truncation)


@dataclass(frozen=True, eq=False)
class BlockLeftShift(StructuredOperator):
    """Truncation of the left shift (x₁, x₂, ...) ↦ (x₂, x₃, ...) on l²(Y), the adjoint of the right shift.

    The last block of rows is the truncation boundary (its input block lies outside the truncation).
    """

    fiber_dim: CardinalDim
    fiber_truncation: int
    block_truncation: int
    kind = "block_left_shift"

    def __post_init__(self):
        _check_block_shift(self.fiber_dim, self.fiber_truncation, self.block_truncation)

    def size(self) -> int:
        return self.fiber_truncation * self.block_truncation

    def _materialize(self) -> np.ndarray:
        return np.eye(self.size(), k=self.fiber_truncation, dtype=complex)

    def declared_defect(self):
        return self.fiber_dim, ZERO

    def interior_rows(self) -> np.ndarray:
        mask = np.ones(self.size(), dtype=bool)
        mask[self.size() - self.fiber_truncation:] = False
        return mask

    def tags(self):
        return {"fiber_dim": str(self.fiber_dim), "fiber_truncation": self.fiber_truncation,
                "block_truncation": self.block_truncation}

    def adjoint(self) -> BlockRightShift:
        return BlockRightShift(self.fiber_dim, self.fiber_truncation, self.block_truncation)


@dataclass(frozen=True, eq=False)
class Multiplication(StructuredOperator):
    """Truncation of a normal operator in spectral form: (Tf)(z) = z f(z) on L²(μ).

    ``sample_points`` are atoms of μ and ``sample_weights`` their masses. In the
    orthonormal basis of normalized indicator functions the operator is diagonal,
    so the weights never enter the matrix; they weight test vectors only.
    """

    sample_points: Tuple[complex, ...]
    sample_weights: Optional[Tuple[float, ...]] = None
    kernel_dim: Optional[CardinalDim] = None
    kind = "multiplication"

    def __post_init__(self):
        points = np.asarray(self.sample_points, dtype=complex).ravel()
        if points.size == 0:
            raise ValueError("Multiplication needs at least one sample point")
        if not np.all(np.isfinite(points)):
            raise ValueError("sample points must be finite")
        weights = np.ones(points.size) if self.sample_weights is None \
            else np.asarray(self.sample_weights, dtype=float).ravel()
        if weights.shape != points.shape:
            raise ValueError("sample_weights must have one entry per sample point")
        if np.any(weights <= 0) or not np.all(np.isfinite(weights)):
            raise ValueError("sample weights must be positive reals")
        kernel_dim, _ = _check_diagonal_cardinals(points, self.kernel_dim, None)
        object.__setattr__(self, "sample_points", tuple(complex(p) for p in points))
        object.__setattr__(self, "sample_weights", tuple(float(w) for w in weights))
        object.__setattr__(self, "kernel_dim", kernel_dim)

    def size(self) -> int:
        return len(self.sample_points)

    def _materialize(self) -> np.ndarray:
        return np.diag(np.asarray(self.sample_points, dtype=complex))

    def declared_defect(self):
        # kernel of a normal operator reduces it: ker T = ker T*
        return self.kernel_dim, self.kernel_dim

    def tags(self):
        return {"kernel_dim": str(self.kernel_dim)}

    def adjoint(self) -> "Multiplication":
        return Multiplication(tuple(np.conj(self.sample_points)), self.sample_weights, self.kernel_dim)


def volterra_matrix(grid_size: int) -> np.ndarray:
    """Midpoint product-integration matrix of (Vf)(τ) = ∫₀^τ f(s) ds on [0, 1].

    f is taken piecewise constant on ``grid_size`` cells and (Vf) is sampled at
    the cell midpoints: h·(strictly lower ones + ½·I) with h = 1/grid_size.
    """
    h = 1.0 / grid_size
    return h * (np.tril(np.ones((grid_size, grid_size)), k=-1) + 0.5 * np.eye(grid_size)).astype(complex)


@dataclass(frozen=True, eq=False)
class Volterra(StructuredOperator):
    """Discretized Volterra operator on L²[0, 1]: injective, dense range of infinite codimension."""

    grid_size: int
    kind = "volterra"

    def __post_init__(self):
        if self.grid_size < 1:
            raise ValueError("grid_size must be positive")

    def size(self) -> int:
        return self.grid_size

    def _materialize(self) -> np.ndarray:
        return volterra_matrix(self.grid_size)

    def declared_defect(self):
        return ZERO, INFINITE

    def tags(self):
        return {"quadrature": "midpoint product integration", "grid_size": self.grid_size}

    def adjoint(self) -> Dense:
        return Dense(MatrixOperator(volterra_matrix(self.grid_size).conj().T))


@dataclass(frozen=True, eq=False)
class Zero(StructuredOperator):
    """The zero operator on a space of dimension ``space_dim``, truncated to ``truncation`` coordinates."""

    space_dim: CardinalDim
    truncation: int
    kind = "zero"

    def __post_init__(self):
        if self.truncation < 1:
            raise ValueError("truncation must be positive")
        if not self.space_dim.is_infinite:
            if self.space_dim.count < 1:
                raise ValueError("the zero operator needs a space of dimension at least 1")
            if self.truncation != self.space_dim.count:
                raise ValueError(f"a finite space {self.space_dim} is truncated exactly: "
                                 f"truncation must be {self.space_dim.count}")

    def size(self) -> int:
        return self.truncation

    def _materialize(self) -> np.ndarray:
        return np.zeros((self.truncation, self.truncation), dtype=complex)

    def declared_defect(self):
        return self.space_dim, self.space_dim

    def tags(self):
        return {"space_dim": str(self.space_dim)}

    def adjoint(self) -> "Zero":
        return self


@dataclass(frozen=True, eq=False)
class Compact(StructuredOperator):
    """Dense truncation of a compact operator on an infinite-dimensional space.

    A compact operator on an infinite-dimensional space is never surjective,
    so the cokernel cardinal is always Infinite; ``dense_range`` records
    whether the range is nevertheless dense.

    ``kernel_dim`` is a declaration about the untruncated operator, not a
    measurement. Infinite is accepted for any truncation; a finite declaration
    must equal the numerical kernel dimension of the matrix.
    """

    matrix: MatrixOperator
    kernel_dim: CardinalDim = ZERO
    dense_range: bool = True
    kind = "compact"

    def __post_init__(self):
        if not isinstance(self.matrix, MatrixOperator):
            object.__setattr__(self, "matrix", MatrixOperator(self.matrix))
        if not self.kernel_dim.is_infinite:
            # deferred: rank builds on this module
            from .rank import rank_analysis
            observed = rank_analysis(self.matrix).kernel_dim
            if observed != self.kernel_dim:
                raise ValueError(f"declared kernel {self.kernel_dim} but the truncation has numerical "
                                 f"kernel {observed}")

    def size(self) -> int:
        return self.matrix.dim

    def _materialize(self) -> np.ndarray:
        return self.matrix.data.copy()

    def declared_defect(self):
        return self.kernel_dim, INFINITE

    def tags(self):
        return {"kernel_dim": str(self.kernel_dim), "dense_range": self.dense_range}

    def adjoint(self) -> "Compact":
        return Compact(self.matrix.adjoint(), ZERO if self.dense_range else INFINITE,
                       self.kernel_dim.is_zero)


@dataclass(frozen=True, eq=False)
class DirectSum(StructuredOperator):
    parts: Tuple[StructuredOperator, ...]
    kind = "direct_sum"

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise ValueError("DirectSum needs at least one part")
        for part in parts:
            if not isinstance(part, StructuredOperator):
                raise TypeError(f"DirectSum parts must be StructuredOperator, got {type(part).__name__}")
        object.__setattr__(self, "parts", parts)

    def size(self) -> int:
        return sum(part.size() for part in self.parts)

    def _materialize(self) -> np.ndarray:
        return scipy.linalg.block_diag(*[part._materialize() for part in self.parts]).astype(complex)

    def declared_defect(self):
        defects = [part.declared_defect() for part in self.parts]
        if any(d is None for d in defects):
            return None
        return cardinal_sum(*[d[0] for d in defects]), cardinal_sum(*[d[1] for d in defects])

    def interior_columns(self) -> np.ndarray:
        return np.concatenate([part.interior_columns() for part in self.parts])

    def interior_rows(self) -> np.ndarray:
        return np.concatenate([part.interior_rows() for part in self.parts])

    def offsets(self) -> Tuple[int, ...]:
        """Start index of every part inside the materialized matrix."""
        return tuple(np.cumsum([0] + [part.size() for part in self.parts[:-1]]).tolist())

    def tags(self):
        return {"parts": [part.kind for part in self.parts]}

    def adjoint(self) -> "DirectSum":
        return DirectSum(tuple(part.adjoint() for part in self.parts))


def materialize(op: StructuredOperator, max_dim: Optional[int] = None) -> MatrixOperator:
    """
    Materialize the dense truncation of a structured operator.

    Args:
        op: The structured operator
        max_dim: Cap on the dense dimension (defaults to ``limits.max_dense_dim``)

    Returns:
        MatrixOperator whose metadata carries the variant kind and its symbolic tags
        (for instance an Infinite fiber dimension)

    Raises:
        ResourceLimitError: If the truncation is larger than the cap
    """
    if isinstance(op, MatrixOperator):
        return op
    cap = DEFAULT_SETTINGS['limits']['max_dense_dim'] if max_dim is None else max_dim
    size = op.size()
    if size > cap:
        raise ResourceLimitError(f"{op.kind} truncation of size {size} exceeds the dense cap {cap}")
    metadata = {"kind": op.kind}
    metadata.update(op.tags())
    return MatrixOperator(op._materialize(), metadata)


def adjoint(op: StructuredOperator) -> StructuredOperator:
    """Hilbert adjoint of a structured operator: materialize(adjoint(op)) = materialize(op)ᴴ."""
    return op.adjoint()


def interior_mask(op: StructuredOperator) -> np.ndarray:
    """Boolean mask of interior (non-boundary) columns of the truncation."""
    return op.interior_columns()


# Generated dense operators used by spec files and the demo corpus.

def identity_operator(dim: int) -> MatrixOperator:
    return MatrixOperator.identity(dim)


def jordan_block(dim: int, eigenvalue: complex = 0.0) -> MatrixOperator:
    return MatrixOperator(eigenvalue * np.eye(dim) + np.eye(dim, k=1))


def rotation(theta: float) -> MatrixOperator:
    """Planar rotation by ``theta`` as a real 2×2 matrix."""
    c, s = np.cos(theta), np.sin(theta)
    return MatrixOperator(np.array([[c, -s], [s, c]]))


def random_unitary(dim: int, seed: int = 0) -> MatrixOperator:
    """Haar-distributed unitary: QR of a complex Gaussian draw with the phases of R divided out."""
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = scipy.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return MatrixOperator(q * phases)


def random_dense(dim: int, rank: Optional[int] = None, seed: int = 0, scale: float = 1.0) -> MatrixOperator:
    """Real Gaussian matrix of the given rank (full rank by default)."""
    rng = np.random.default_rng(seed)
    rank = dim if rank is None else rank
    if not 0 <= rank <= dim:
        raise ValueError(f"rank must lie in [0, {dim}], got {rank}")
    if rank == dim:
        return MatrixOperator(scale * rng.standard_normal((dim, dim)))
    left = rng.standard_normal((dim, rank))
    right = rng.standard_normal((rank, dim))
    return MatrixOperator(scale * left @ right)


def direct_sum_matrix(blocks: Sequence[np.ndarray]) -> np.ndarray:
    """Block-diagonal complex array of the given square blocks."""
    return scipy.linalg.block_diag(*[np.asarray(b, dtype=complex) for b in blocks]).astype(complex)
