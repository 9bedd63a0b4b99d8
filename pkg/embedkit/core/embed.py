#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Embeddability classification and semigroup constructions.

classify() decides whether an operator T is T(1) for some strongly continuous
semigroup. A non-bijective operator with finite nonzero kernel or cokernel
never is; for the structured classes below a construction exists and the
matching constructor builds it:

- invertible matrices: exp(t·log T) with a contour logarithm
- diagonal and multiplication (normal) operators: spectral formulas with a
  free choice of logarithm branch per eigenvalue
- unitaries: exp(t·iΦ) in a Schur basis; isometries: Wold decomposition, the
  shift part realized as translation on a grid
- co-isometries: adjoints of the isometric constructions
- injective compact operators with dense range: Riesz splitting into
  invertible blocks
- the Volterra operator: fractional integration
- the zero operator on an infinite-dimensional space: nilpotent translation

本模块实现可嵌入性判定以及各类算子的半群构造。
"""

import enum
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from .cardinal import CardinalDim, ZERO
from .errors import ContourError, HypothesisError, NumericalError
from .funcalc import (Contour, cluster_eigenvalues, design_contour, dunford_log,
                      principal_log_oracle, matrix_exp, riesz_projection)
from .operators import (BlockLeftShift, BlockRightShift, Compact, Dense, Diagonal, DirectSum,
                        MatrixOperator, Multiplication, StructuredOperator, Volterra, Zero,
                        adjoint, as_array, materialize, volterra_matrix)
from .rank import is_invertible, kernel_defect, operator_norm, spectrum
from .semigroup import (AdmissibleTimes, SemigroupRealization, adjoint_realization, direct_sum,
                        permuted, rescale, similar)
from .settings import DEFAULT_SETTINGS
from .wold import interior_isometry_defect, orbit_depth, wold_decompose

logger = logging.getLogger(__name__)


class EmbeddingMethod(str, enum.Enum):
    DUNFORD_LOG = "dunford_log"
    DIAGONAL_BRANCH = "diagonal_branch"
    UNITARY_SPECTRAL = "unitary_spectral"
    NORMAL_SPECTRAL = "normal_spectral"
    ISOMETRY_WOLD = "isometry_wold"
    SHIFT_TRANSLATION = "shift_translation"
    COMPACT_RIESZ = "compact_riesz"
    VOLTERRA_FRACTIONAL = "volterra_fractional"
    NILPOTENT_SHIFT = "nilpotent_shift"
    COISOMETRY_ADJOINT = "coisometry_adjoint"
    DIRECT_SUM = "direct_sum"


class VerdictStatus(str, enum.Enum):
    EMBEDDABLE = "embeddable"
    NOT_EMBEDDABLE = "not_embeddable"
    UNKNOWN = "unknown"


class OpenCase(str, enum.Enum):
    COMPACT_INFINITE_KERNEL = "compact_infinite_kernel"
    UNCLASSIFIED_STRUCTURE = "unclassified_structure"


@dataclass(frozen=True)
class EmbeddabilityVerdict:
    status: VerdictStatus
    method: Optional[EmbeddingMethod] = None
    kernel_dim: Optional[CardinalDim] = None
    cokernel_dim: Optional[CardinalDim] = None
    open_case: Optional[OpenCase] = None
    detail: str = ""

    @classmethod
    def embeddable(cls, method: EmbeddingMethod, detail: str = "") -> "EmbeddabilityVerdict":
        return cls(VerdictStatus.EMBEDDABLE, method=method, detail=detail)

    @classmethod
    def not_embeddable(cls, kernel_dim: CardinalDim, cokernel_dim: CardinalDim,
                       detail: str = "") -> "EmbeddabilityVerdict":
        if not (kernel_dim.is_finite_nonzero or cokernel_dim.is_finite_nonzero):
            raise ValueError("NotEmbeddable needs a finite nonzero kernel or cokernel")
        return cls(VerdictStatus.NOT_EMBEDDABLE, kernel_dim=kernel_dim, cokernel_dim=cokernel_dim,
                   detail=detail)

    @classmethod
    def unknown(cls, open_case: OpenCase, detail: str = "") -> "EmbeddabilityVerdict":
        return cls(VerdictStatus.UNKNOWN, open_case=open_case, detail=detail)

    @property
    def is_embeddable(self) -> bool:
        return self.status is VerdictStatus.EMBEDDABLE

    @property
    def reason(self) -> str:
        if self.status is VerdictStatus.NOT_EMBEDDABLE:
            return (f"necessary condition violated: kernel {self.kernel_dim}, "
                    f"cokernel {self.cokernel_dim}")
        if self.status is VerdictStatus.UNKNOWN:
            return self.open_case.value
        return self.method.value

    def to_dict(self) -> Dict[str, Any]:
        result = {"status": self.status.value}
        if self.method is not None:
            result["method"] = self.method.value
        if self.status is VerdictStatus.NOT_EMBEDDABLE:
            result["reason"] = {"necessary_condition_violated": {
                "kernel_dim": str(self.kernel_dim), "cokernel_dim": str(self.cokernel_dim)}}
        if self.open_case is not None:
            result["open_case"] = self.open_case.value
        if self.detail:
            result["detail"] = self.detail
        return result


def _section(settings: Optional[Dict], name: str) -> Dict:
    return (settings or DEFAULT_SETTINGS)[name]


def _as_structured(op) -> StructuredOperator:
    return Dense(op) if isinstance(op, MatrixOperator) else op


def classify(op: StructuredOperator, settings: Optional[Dict] = None) -> EmbeddabilityVerdict:
    """
    Decide whether an operator is embeddable into a C0-semigroup.

    Args:
        op: A structured operator (a bare MatrixOperator is taken as Dense)
        settings: Effective settings (DEFAULT_SETTINGS when omitted)

    Returns:
        EmbeddabilityVerdict. NotEmbeddable is returned exactly when the kernel or
        the cokernel is finite and nonzero; structures without a known construction
        come back as Unknown, never as an error.
    """
    op = _as_structured(op)
    tol = _section(settings, 'rank')['tol']
    kernel_dim, cokernel_dim = kernel_defect(op, tol)
    if kernel_dim.is_finite_nonzero or cokernel_dim.is_finite_nonzero:
        verdict = EmbeddabilityVerdict.not_embeddable(kernel_dim, cokernel_dim, detail=op.kind)
    else:
        verdict = _classify_structure(op, kernel_dim, settings)
    logger.debug("classify(%s): %s", op.kind, verdict.reason)
    return verdict


def _classify_structure(op: StructuredOperator, kernel_dim: CardinalDim,
                        settings: Optional[Dict]) -> EmbeddabilityVerdict:
    isometry_tol = _section(settings, 'wold')['isometry_tol']
    if isinstance(op, Dense):
        # square with trivial kernel: invertible
        return EmbeddabilityVerdict.embeddable(EmbeddingMethod.DUNFORD_LOG)
    if isinstance(op, Diagonal):
        return EmbeddabilityVerdict.embeddable(EmbeddingMethod.DIAGONAL_BRANCH)
    if isinstance(op, BlockRightShift):
        return EmbeddabilityVerdict.embeddable(EmbeddingMethod.SHIFT_TRANSLATION,
                                               detail="isometry with infinite multiplicity")
    if isinstance(op, BlockLeftShift):
        return EmbeddabilityVerdict.embeddable(EmbeddingMethod.COISOMETRY_ADJOINT,
                                               detail="co-isometry with infinite-dimensional kernel")
    if isinstance(op, Multiplication):
        return EmbeddabilityVerdict.embeddable(EmbeddingMethod.NORMAL_SPECTRAL)
    if isinstance(op, Volterra):
        return EmbeddabilityVerdict.embeddable(EmbeddingMethod.VOLTERRA_FRACTIONAL)
    if isinstance(op, Zero):
        return EmbeddabilityVerdict.embeddable(EmbeddingMethod.NILPOTENT_SHIFT)
    if isinstance(op, Compact):
        if kernel_dim.is_infinite:
            return EmbeddabilityVerdict.unknown(OpenCase.COMPACT_INFINITE_KERNEL)
        if op.dense_range and is_invertible(op.matrix, _section(settings, 'rank')['tol']):
            return EmbeddabilityVerdict.embeddable(EmbeddingMethod.COMPACT_RIESZ)
        return EmbeddabilityVerdict.unknown(OpenCase.UNCLASSIFIED_STRUCTURE,
                                            detail="injective compact operator without dense range "
                                                   "or with a singular truncation")
    if isinstance(op, DirectSum):
        if interior_isometry_defect(op) <= isometry_tol:
            return EmbeddabilityVerdict.embeddable(EmbeddingMethod.ISOMETRY_WOLD)
        if interior_isometry_defect(adjoint(op)) <= isometry_tol:
            return EmbeddabilityVerdict.embeddable(EmbeddingMethod.COISOMETRY_ADJOINT)
        if all(classify(part, settings).is_embeddable for part in op.parts):
            return EmbeddabilityVerdict.embeddable(EmbeddingMethod.DIRECT_SUM)
    return EmbeddabilityVerdict.unknown(OpenCase.UNCLASSIFIED_STRUCTURE, detail=op.kind)


def _principal_phases(values: np.ndarray) -> np.ndarray:
    """Arguments in [0, 2π); values a rounding error below 2π are taken as 0."""
    phases = np.mod(np.angle(values), 2 * np.pi)
    return np.where(phases > 2 * np.pi - 1e-12, 0.0, phases)


def _diagonal_realization(logs: np.ndarray, method: EmbeddingMethod,
                          offsets: Optional[Tuple[int, ...]], **metadata) -> SemigroupRealization:
    logs = np.asarray(logs, dtype=complex)

    def kernel(t):
        return np.diag(np.exp(t * logs))

    return SemigroupRealization(dim=logs.size, method=method, times=AdmissibleTimes.continuous(),
                                kernel=kernel, generator=MatrixOperator(np.diag(logs)),
                                branch_offsets=offsets, allow_negative=True, metadata=metadata)


def embed_dense_invertible(m: MatrixOperator, settings: Optional[Dict] = None,
                           branch_angle: Optional[float] = None) -> SemigroupRealization:
    """
    exp(t·A) with A the contour logarithm of an invertible matrix.

    The branch cut is the negative real axis unless an eigenvalue lies on it; then it
    is rotated by the smallest angle that clears the spectrum. With the default cut
    the result is cross-checked against the Schur-based principal logarithm.

    Raises:
        HypothesisError: If m is singular
        ContourError: If no contour can be fitted around the spectrum
        NumericalError: If the contour and Schur logarithms disagree beyond ``oracle_tol``
    """
    contour_cfg = _section(settings, 'contour')
    embed_cfg = _section(settings, 'embed')
    if not is_invertible(m, _section(settings, 'rank')['tol']):
        raise HypothesisError("embed_dense_invertible needs an invertible matrix")
    angle = contour_cfg['branch_angle'] if branch_angle is None else branch_angle
    contour = design_contour(spectrum(m), nodes=contour_cfg['nodes'], clearance=contour_cfg['clearance'],
                             branch_angle=angle, cluster_tol=contour_cfg['cluster_tol'], matrix=m,
                             coincidence_radius=contour_cfg['coincidence_radius'],
                             coincidence_tol=contour_cfg['coincidence_tol'])
    generator = dunford_log(m, contour, clearance=contour_cfg['clearance'])

    metadata = {"branch_angle": contour.branch_angle, "nodes": contour.nodes,
                "circles": len(contour.circles)}
    if contour.branch_angle == math.pi:
        try:
            oracle = principal_log_oracle(m)
        except ContourError:
            oracle = None
        if oracle is not None:
            gap = operator_norm(generator.data - oracle.data)
            metadata["oracle_residual"] = gap
            if gap > embed_cfg['oracle_tol']:
                raise NumericalError(f"contour logarithm and Schur logarithm differ by {gap:.3g} "
                                     f"(tolerance {embed_cfg['oracle_tol']:g})")

    def kernel(t):
        return matrix_exp(generator, t).data

    return SemigroupRealization(dim=as_array(m).shape[0], method=EmbeddingMethod.DUNFORD_LOG,
                                times=AdmissibleTimes.continuous(), kernel=kernel, generator=generator,
                                allow_negative=True, metadata=metadata)


def _check_offsets(offsets, count: int) -> Tuple[int, ...]:
    if offsets is None:
        return (0,) * count
    offsets = tuple(int(k) for k in offsets)
    if len(offsets) != count:
        raise ValueError(f"expected {count} branch offsets, got {len(offsets)}")
    return offsets


def embed_diagonal(eigs: Sequence[complex], branch_offsets: Optional[Sequence[int]] = None) -> SemigroupRealization:
    """
    diag(exp(t·(Log λⱼ + 2πi·kⱼ))) for nonzero eigenvalues λⱼ.

    Log is the principal logarithm (Log(−1) = iπ). Every choice of offsets gives the
    same operator at t = 1 and different ones in between.

    Raises:
        HypothesisError: If an eigenvalue is 0
    """
    values = np.asarray(eigs, dtype=complex).ravel()
    if np.any(values == 0):
        raise HypothesisError("embed_diagonal needs nonzero eigenvalues")
    offsets = _check_offsets(branch_offsets, values.size)
    values = np.where(values.imag == 0, values.real + 0j, values)
    logs = np.log(values) + 2j * np.pi * np.asarray(offsets)
    return _diagonal_realization(logs, EmbeddingMethod.DIAGONAL_BRANCH, offsets)


def embed_unitary(u: MatrixOperator, tol: float = 1e-8) -> SemigroupRealization:
    """
    Unitary group Q·diag(e^{itφⱼ})·Q* with phases φⱼ in [0, 2π).

    Raises:
        HypothesisError: If ‖u*u − I‖ exceeds ``tol``
    """
    arr = as_array(u)
    dim = arr.shape[0]
    defect = operator_norm(arr.conj().T @ arr - np.eye(dim))
    if defect > tol:
        raise HypothesisError(f"not unitary: ‖u*u − I‖ = {defect:.3g}")
    upper, basis = scipy.linalg.schur(arr, output='complex')
    phases = _principal_phases(np.diag(upper))

    def kernel(t):
        return (basis * np.exp(1j * t * phases)) @ basis.conj().T

    generator = MatrixOperator((basis * (1j * phases)) @ basis.conj().T)
    return SemigroupRealization(dim=dim, method=EmbeddingMethod.UNITARY_SPECTRAL,
                                times=AdmissibleTimes.continuous(), kernel=kernel, generator=generator,
                                allow_negative=True, metadata={"unitarity_defect": defect})


def embed_normal(sample_points: Sequence[complex], sample_weights: Optional[Sequence[float]] = None,
                 branch_offsets: Optional[Sequence[int]] = None) -> SemigroupRealization:
    """
    diag(|z|ᵗ·e^{itφ(z)}) over the sample points, φ(z) in [0, 2π).

    The weights do not change the operator (the basis of normalized indicators is
    orthonormal); they are recorded for the report.

    Raises:
        HypothesisError: If a sample point is 0 (the kernel has to be split off first)
    """
    points = np.asarray(sample_points, dtype=complex).ravel()
    if np.any(points == 0):
        raise HypothesisError("embed_normal needs an injective operator: split the kernel off first")
    offsets = _check_offsets(branch_offsets, points.size)
    logs = np.log(np.abs(points)) + 1j * (_principal_phases(points) + 2 * np.pi * np.asarray(offsets))
    metadata = {}
    if sample_weights is not None:
        metadata["sample_weights"] = [float(w) for w in sample_weights]
    if np.all(np.abs(points) <= 1):
        metadata["contractive"] = True
    return _diagonal_realization(logs, EmbeddingMethod.NORMAL_SPECTRAL, offsets, **metadata)


def embed_shift_translation(fiber_truncation: int, block_truncation: int,
                            grid_per_block: Optional[int] = None) -> SemigroupRealization:
    """
    Right shift on l²(Y), dim Y infinite, as translation on a grid.

    A fiber block of ``fiber_truncation`` coordinates is read as ``grid_per_block``
    cells of [0, 1) with equally many slots each, so l²(Y) becomes L² of a half line
    sampled on cells. T(k/m) translates by k cells and fills the first k cells with 0;
    T(1) is the block right shift. Mass translated beyond the last cell is lost at
    the truncation tail.

    Raises:
        ValueError: If the block size is not a multiple of ``grid_per_block``
    """
    cells = fiber_truncation if grid_per_block is None else int(grid_per_block)
    if fiber_truncation < 1 or block_truncation < 1 or cells < 1:
        raise ValueError("fiber_truncation, block_truncation and grid_per_block must be positive")
    if fiber_truncation % cells:
        raise ValueError(f"grid_per_block={cells} must divide fiber_truncation={fiber_truncation}")
    slot = fiber_truncation // cells
    size = fiber_truncation * block_truncation

    def kernel(steps):
        return np.eye(size, k=-steps * slot, dtype=complex)

    metadata = {"slot_size": slot, "cells": cells * block_truncation,
                "boundary": "zero fill; mass translated past the last cell is lost"}
    return SemigroupRealization(dim=size, method=EmbeddingMethod.SHIFT_TRANSLATION,
                                times=AdmissibleTimes.grid(cells), kernel=kernel, metadata=metadata)


def embed_isometry(v: StructuredOperator, settings: Optional[Dict] = None,
                   depth: Optional[int] = None) -> Union[SemigroupRealization, EmbeddabilityVerdict]:
    """
    Embed an interior isometry through its Wold decomposition.

    V restricted to H₀ is unitary and gets embed_unitary; the shift part is read in
    the orbit basis [Y, VY, V²Y, ...], where V is a block right shift, and gets
    embed_shift_translation. A shift part of finite multiplicity is not embeddable.

    Returns:
        The realization, or a NotEmbeddable verdict for finite nonzero multiplicity

    Raises:
        HypothesisError: If v is not an interior isometry or the orbit does not close on the truncation
    """
    wold_cfg = _section(settings, 'wold')
    embed_cfg = _section(settings, 'embed')
    v = _as_structured(v)
    if depth is None:
        depth = orbit_depth(v, wold_cfg['depth'])
    decomposition = wold_decompose(v, depth, isometry_tol=wold_cfg['isometry_tol'],
                                   tol=_section(settings, 'rank')['tol'])
    if decomposition.multiplicity.is_finite_nonzero:
        return EmbeddabilityVerdict.not_embeddable(ZERO, decomposition.multiplicity,
                                                   detail="shift part of finite multiplicity")
    arr = materialize(v).data
    if decomposition.wandering_dim == 0:
        return embed_unitary(arr, tol=embed_cfg['unitary_tol'])

    # orbit basis without re-orthonormalization: V maps block k onto block k+1 exactly
    blocks = [decomposition.wandering_basis]
    while True:
        image = arr @ blocks[-1]
        if np.linalg.norm(image) <= 1e-8:
            break
        blocks.append(image)
        if len(blocks) * decomposition.wandering_dim > arr.shape[0]:
            raise HypothesisError("the orbit of the wandering subspace does not close on the truncation")
    orbit = np.hstack(blocks)
    basis = np.hstack([decomposition.unitary_basis, orbit])
    defect = operator_norm(basis.conj().T @ basis - np.eye(arr.shape[0])) if basis.shape[1] == arr.shape[0] \
        else math.inf
    if defect > wold_cfg['isometry_tol'] * 100:
        raise HypothesisError("unitary part and shift orbit do not form an orthonormal basis "
                              f"of the truncation (defect {defect:.3g})")

    parts = []
    if decomposition.unitary_dim:
        restricted = decomposition.unitary_basis.conj().T @ arr @ decomposition.unitary_basis
        parts.append(embed_unitary(restricted, tol=embed_cfg['unitary_tol']))
    fiber = decomposition.wandering_dim
    parts.append(embed_shift_translation(fiber, len(blocks), embed_cfg['grid_per_block']))
    combined = direct_sum(parts, method=EmbeddingMethod.ISOMETRY_WOLD)
    realization = similar(combined, basis, unitary=True, method=EmbeddingMethod.ISOMETRY_WOLD)
    metadata = dict(realization.metadata)
    metadata.update({"unitary_dim": decomposition.unitary_dim, "wandering_dim": fiber,
                     "multiplicity": str(decomposition.multiplicity), "depth": decomposition.depth_used,
                     "wold_residuals": list(decomposition.residuals)})
    return SemigroupRealization(dim=realization.dim, method=realization.method, times=realization.times,
                                kernel=realization.kernel, generator=realization.generator,
                                metadata=metadata)


def _embed_isometric(op: StructuredOperator, settings: Optional[Dict]):
    if isinstance(op, BlockRightShift) and op.fiber_dim.is_infinite:
        return embed_shift_translation(op.fiber_truncation, op.block_truncation,
                                       _section(settings, 'embed')['grid_per_block'])
    return embed_isometry(op, settings)


def embed_coisometry(op: StructuredOperator, settings: Optional[Dict] = None
                     ) -> Union[SemigroupRealization, EmbeddabilityVerdict]:
    """Adjoint of the isometric embedding of op*: T embeds iff T* does."""
    result = _embed_isometric(adjoint(_as_structured(op)), settings)
    if isinstance(result, EmbeddabilityVerdict):
        return EmbeddabilityVerdict.not_embeddable(result.cokernel_dim, result.kernel_dim,
                                                   detail="co-isometry with finite-dimensional kernel")
    realization = adjoint_realization(result)
    return SemigroupRealization(dim=realization.dim, method=EmbeddingMethod.COISOMETRY_ADJOINT,
                                times=realization.times, kernel=realization.kernel,
                                generator=realization.generator, allow_negative=realization.allow_negative,
                                metadata=dict(realization.metadata))


def embed_compact_injective(m: MatrixOperator, cluster_radius: Optional[float] = None,
                            settings: Optional[Dict] = None) -> SemigroupRealization:
    """
    Split an invertible truncation of a compact operator along eigenvalue clusters.

    Each cluster gets a Riesz projection; its range is an invariant subspace and the
    restriction of m to it is embedded with embed_dense_invertible (each block picks
    its own branch cut). The blocks are recombined through the basis S of those
    ranges, which need not be orthogonal: T(t) = S·diag(T_j(t))·S⁻¹.

    Args:
        m: Invertible matrix
        cluster_radius: Linkage distance for the clusters, also the padding of
            their circles (default: 0.1 · smallest eigenvalue modulus)

    Raises:
        HypothesisError: If m is singular, a cluster sits too close to 0 or the
            basis of cluster ranges is worse conditioned than ``embed.max_condition``
    """
    contour_cfg = _section(settings, 'contour')
    embed_cfg = _section(settings, 'embed')
    arr = as_array(m)
    if not is_invertible(m, _section(settings, 'rank')['tol']):
        raise HypothesisError("embed_compact_injective needs an invertible truncation")
    values = spectrum(m)
    radius = cluster_radius if cluster_radius is not None else embed_cfg['cluster_radius']
    if radius is None:
        radius = 0.1 * float(np.min(np.abs(values)))
    labels = cluster_eigenvalues(values, radius)

    bases, parts, summary = [], [], []
    for label in range(labels.max() + 1):
        members = values[labels == label]
        others = values[labels != label]
        center = complex(np.mean(members))
        spread = float(np.max(np.abs(members - center)))
        if abs(center) - spread < 2 * radius:
            raise HypothesisError(f"eigenvalue cluster at {center:.4g} is within twice the cluster "
                                  f"radius {radius:.3g} of 0")
        pad = min(radius, 0.5 * (abs(center) - spread))
        if others.size:
            pad = min(pad, 0.45 * (float(np.min(np.abs(others - center))) - spread))
        contour = Contour.circle(center, spread + pad, nodes=contour_cfg['nodes'])
        projection = riesz_projection(m, contour, clearance=min(contour_cfg['clearance'], 0.5 * pad))
        left, _, _ = scipy.linalg.svd(projection.data)
        bases.append(left[:, :members.size])
        summary.append({"center": [center.real, center.imag], "size": int(members.size)})

    basis = np.hstack(bases)
    condition = float(np.linalg.cond(basis))
    if condition > embed_cfg['max_condition']:
        raise HypothesisError(f"cluster basis condition number {condition:.3g} exceeds "
                              f"{embed_cfg['max_condition']:.3g}")
    if condition > 1e-2 * embed_cfg['max_condition']:
        logger.warning("Cluster basis is poorly conditioned (cond %.3g)", condition)

    reduced = scipy.linalg.solve(basis, arr @ basis)
    start = 0
    for part_basis in bases:
        size = part_basis.shape[1]
        block = reduced[start:start + size, start:start + size]
        parts.append(embed_dense_invertible(MatrixOperator(block), settings))
        start += size

    combined = direct_sum(parts, method=EmbeddingMethod.COMPACT_RIESZ)
    realization = similar(combined, basis, method=EmbeddingMethod.COMPACT_RIESZ)
    logger.debug("Riesz splitting: %d cluster(s), basis condition %.3g", len(bases), condition)
    metadata = {"clusters": summary, "cluster_radius": radius, "basis_condition": condition}
    return SemigroupRealization(dim=realization.dim, method=EmbeddingMethod.COMPACT_RIESZ,
                                times=realization.times, kernel=realization.kernel,
                                generator=realization.generator, allow_negative=True, metadata=metadata)


def fractional_integration_matrix(grid_size: int, order: float) -> np.ndarray:
    """
    Riemann–Liouville integral of the given order ≥ 0 on ``grid_size`` cells of [0, 1].

    Convolution quadrature generated by the Volterra matrix: V is lower triangular
    Toeplitz with symbol h(1 + z)/(2(1 − z)), and I^r is the Toeplitz matrix with
    symbol hʳ((1 + z)/2)ʳ(1 − z)⁻ʳ. The symbols multiply, so I^s·I^t = I^{s+t} up to
    rounding, and I¹ is the Volterra matrix exactly. Away from τ = 0 the matrix maps
    f ≡ 1 to τᵗ/Γ(t+1) at the cell midpoints with an O(h²) error.
    """
    if order < 0:
        raise ValueError(f"fractional order must be non-negative, got {order}")
    h = 1.0 / grid_size
    k = np.arange(1, grid_size, dtype=float)
    # series coefficients of (1 − z)^(−r) and of ((1 + z)/2)^r
    growth = np.cumprod(np.concatenate([[1.0], (k - 1 + order) / k]))
    average = np.cumprod(np.concatenate([[0.5 ** order], (order - k + 1) / k]))
    column = h ** order * np.convolve(growth, average)[:grid_size]
    return scipy.linalg.toeplitz(column, np.zeros(grid_size)).astype(complex)


def embed_volterra(grid_size: int, min_grid: int = 16) -> SemigroupRealization:
    """
    Fractional integration semigroup of the Volterra operator on a grid of [0, 1].

    T(t) = Vⁿ·I^r for t = n + r with n an integer and r in [0, 1), I^r the discretized
    Riemann–Liouville integral; T(0) = I and T(1) is the Volterra matrix.

    Raises:
        HypothesisError: If ``grid_size`` is below ``min_grid``
    """
    if grid_size < min_grid:
        raise HypothesisError(f"Volterra grid must have at least {min_grid} cells, got {grid_size}")
    volterra = volterra_matrix(grid_size)
    identity = np.eye(grid_size, dtype=complex)

    def kernel(t):
        whole = int(math.floor(t))
        remainder = t - whole
        result = np.linalg.matrix_power(volterra, whole) if whole else identity.copy()
        if remainder > 0:
            result = result @ fractional_integration_matrix(grid_size, remainder)
        return result

    return SemigroupRealization(dim=grid_size, method=EmbeddingMethod.VOLTERRA_FRACTIONAL,
                                times=AdmissibleTimes.continuous(), kernel=kernel,
                                metadata={"quadrature": "convolution quadrature generated by the Volterra matrix",
                                          "grid_size": grid_size})


def embed_zero_infinite(truncation: int) -> SemigroupRealization:
    """
    Nilpotent translation on L²[0, 1] with ``truncation`` cells: T(j/k) shifts by j cells, T(1) = 0.
    """
    if truncation < 1:
        raise ValueError("truncation must be positive")

    def kernel(steps):
        return np.eye(truncation, k=-steps, dtype=complex)

    return SemigroupRealization(dim=truncation, method=EmbeddingMethod.NILPOTENT_SHIFT,
                                times=AdmissibleTimes.grid(truncation), kernel=kernel,
                                metadata={"cells": truncation})


def _split_kernel(values: np.ndarray, build, method: EmbeddingMethod) -> SemigroupRealization:
    nonzero = np.flatnonzero(values != 0)
    zero = np.flatnonzero(values == 0)
    parts, positions = [], []
    if nonzero.size:
        parts.append(build(values[nonzero], nonzero))
        positions.extend(nonzero.tolist())
    parts.append(embed_zero_infinite(zero.size))
    positions.extend(zero.tolist())
    logger.debug("Split off a kernel of %d coordinate(s)", zero.size)
    return permuted(direct_sum(parts, method=method), positions)


def _offsets_for(settings: Optional[Dict]) -> Optional[Tuple[int, ...]]:
    offsets = _section(settings, 'embed')['branch_offsets']
    return None if offsets is None else tuple(int(k) for k in offsets)


def realize(op: StructuredOperator, verdict: EmbeddabilityVerdict,
            settings: Optional[Dict] = None) -> Optional[SemigroupRealization]:
    """Run the constructor designated by an Embeddable verdict (None for other verdicts)."""
    if not verdict.is_embeddable:
        return None
    op = _as_structured(op)
    method = verdict.method
    offsets = _offsets_for(settings)
    per_entry = method in (EmbeddingMethod.DIAGONAL_BRANCH, EmbeddingMethod.NORMAL_SPECTRAL)
    if offsets is not None and not per_entry and len(offsets) != 1:
        raise ValueError("per-eigenvalue branch offsets apply to diagonal and multiplication operators; "
                         "give a single offset to rescale other realizations")

    if method is EmbeddingMethod.DUNFORD_LOG:
        realization = embed_dense_invertible(materialize(op), settings)
    elif method is EmbeddingMethod.DIAGONAL_BRANCH or method is EmbeddingMethod.NORMAL_SPECTRAL:
        if isinstance(op, Diagonal):
            values = np.asarray(op.eigenvalues)
            build = lambda v, index: embed_diagonal(v, None if offsets is None else
                                                    [_check_offsets(offsets, values.size)[i] for i in index])
        else:
            values = np.asarray(op.sample_points)
            weights = np.asarray(op.sample_weights)
            build = lambda v, index: embed_normal(v, weights[index], None if offsets is None else
                                                  [_check_offsets(offsets, values.size)[i] for i in index])
        if np.any(values == 0):
            realization = _split_kernel(values, build, method)
        else:
            realization = build(values, np.arange(values.size))
        offsets = None
    elif method is EmbeddingMethod.SHIFT_TRANSLATION or method is EmbeddingMethod.ISOMETRY_WOLD:
        realization = _embed_isometric(op, settings)
    elif method is EmbeddingMethod.COISOMETRY_ADJOINT:
        realization = embed_coisometry(op, settings)
    elif method is EmbeddingMethod.VOLTERRA_FRACTIONAL:
        realization = embed_volterra(op.grid_size, _section(settings, 'embed')['volterra_min_grid'])
    elif method is EmbeddingMethod.NILPOTENT_SHIFT:
        realization = embed_zero_infinite(op.truncation)
    elif method is EmbeddingMethod.COMPACT_RIESZ:
        realization = embed_compact_injective(op.matrix, settings=settings)
    elif method is EmbeddingMethod.DIRECT_SUM:
        realization = direct_sum([realize(part, classify(part, settings), settings) for part in op.parts],
                                 method=EmbeddingMethod.DIRECT_SUM)
    else:
        raise ValueError(f"no constructor for method {method}")

    if isinstance(realization, EmbeddabilityVerdict):
        raise HypothesisError(f"construction for {method.value} found the operator not embeddable: "
                              f"{realization.reason}")
    if offsets is not None:
        realization = rescale(realization, offsets[0])
    return realization


def embed(op: StructuredOperator, settings: Optional[Dict] = None
          ) -> Tuple[EmbeddabilityVerdict, Optional[SemigroupRealization]]:
    """
    Classify an operator and, when it is embeddable, construct the semigroup.

    Returns:
        (verdict, realization); the realization is None for NotEmbeddable and Unknown verdicts
    """
    verdict = classify(op, settings)
    return verdict, realize(op, verdict, settings)
