#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Holomorphic functional calculus for matrices.

f(T) = (1/2πi)∮ f(λ)(λI − T)⁻¹ dλ is evaluated with the trapezoidal rule on
circles, which converges geometrically for integrands analytic in an annulus
around the circle. On top of that quadrature sit the logarithm, the Riesz
projections and the fractional powers; the matrix exponential and an
independent principal logarithm come from scipy.

本模块提供基于围道积分的全纯函数演算（对数、Riesz 投影、分数幂）以及矩阵指数。
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from scipy.cluster.hierarchy import fcluster, linkage

from .errors import ContourError, NumericalError
from .operators import MatrixOperator, as_array
from .rank import spectrum

logger = logging.getLogger(__name__)

# Angular margins (radians) tried in turn when the branch ray has to be rotated off the spectrum.
BRANCH_MARGINS = (0.05, 1e-2, 1e-3, 1e-4)


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"circle radius must be a positive real, got {self.radius}")

    def encloses(self, z: complex) -> bool:
        return abs(z - self.center) < self.radius

    def boundary_distance(self, z: complex) -> float:
        return abs(abs(z - self.center) - self.radius)


@dataclass(frozen=True)
class Contour:
    """One or more disjoint circles with ``nodes`` quadrature points each.

    ``branch_angle`` is the direction of the ray from 0 along which the
    logarithm and the fractional powers are cut (π: the negative real axis).
    """

    circles: Tuple[Circle, ...]
    nodes: int = 256
    branch_angle: float = math.pi

    def __post_init__(self):
        circles = (self.circles,) if isinstance(self.circles, Circle) else tuple(self.circles)
        if not circles:
            raise ValueError("a contour needs at least one circle")
        if int(self.nodes) != self.nodes or self.nodes < 1:
            raise ValueError(f"nodes must be a positive integer, got {self.nodes}")
        for i, first in enumerate(circles):
            for second in circles[i + 1:]:
                if abs(first.center - second.center) <= first.radius + second.radius:
                    raise ContourError("circles of a contour must bound disjoint discs", kind="overlap")
        object.__setattr__(self, "circles", circles)
        object.__setattr__(self, "nodes", int(self.nodes))
        object.__setattr__(self, "branch_angle", float(self.branch_angle))

    @classmethod
    def circle(cls, center: complex, radius: float, nodes: int = 256, branch_angle: float = math.pi) -> "Contour":
        return cls((Circle(center, radius),), nodes, branch_angle)

    def quadrature(self) -> Tuple[np.ndarray, np.ndarray]:
        """Nodes z_k and weights w_k with (1/2πi)∮ g ≈ Σ g(z_k)·w_k, in ascending node order."""
        theta = 2 * np.pi * np.arange(self.nodes) / self.nodes
        unit = np.exp(1j * theta)
        points = [c.center + c.radius * unit for c in self.circles]
        weights = [c.radius * unit / self.nodes for c in self.circles]
        return np.concatenate(points), np.concatenate(weights)


@dataclass(frozen=True)
class SectorSample:
    point: complex
    resolvent_norm: float
    bound: float


@dataclass(frozen=True)
class SectorReport:
    best_angle: Optional[float]
    constant_estimate: float
    samples: Tuple[SectorSample, ...]


def ray_distance(z: complex, angle: float) -> float:
    """Euclidean distance from z to the ray {ρ·e^{i·angle} : ρ ≥ 0}."""
    rotated = complex(z) * np.exp(-1j * angle)
    if rotated.real <= 0:
        return abs(rotated)
    return abs(rotated.imag)


def log_branch(z, branch_angle: float = math.pi):
    """Logarithm with arguments in (branch_angle − 2π, branch_angle]; principal for branch_angle = π."""
    z = _positive_zero_imag(np.asarray(z, dtype=complex))
    shift = branch_angle - math.pi
    rotated = z if shift == 0 else _positive_zero_imag(z * np.exp(-1j * shift))
    return np.log(np.abs(z)) + 1j * (np.angle(rotated) + shift)


def _positive_zero_imag(z: np.ndarray) -> np.ndarray:
    # -0.0 imaginary parts would put negative reals on the wrong side of the cut
    return np.where(z.imag == 0, z.real + 0j, z)


def power_branch(z, t: float, branch_angle: float = math.pi):
    return np.exp(t * log_branch(z, branch_angle))


def _check_clearance(eigenvalues: Iterable[complex], contour: Contour, clearance: float) -> None:
    for circle in contour.circles:
        for value in eigenvalues:
            if circle.boundary_distance(value) < clearance:
                raise ContourError(f"eigenvalue {value:.6g} lies within {clearance:g} of the circle "
                                   f"centered at {circle.center:.6g} with radius {circle.radius:.6g}",
                                   kind="clearance")


def _check_enclosed(eigenvalues: Iterable[complex], contour: Contour) -> None:
    for value in eigenvalues:
        if not any(circle.encloses(value) for circle in contour.circles):
            raise ContourError(f"eigenvalue {value:.6g} is not enclosed by the contour", kind="not_enclosed")


def _check_log_region(contour: Contour) -> None:
    for circle in contour.circles:
        if abs(circle.center) <= circle.radius:
            raise ContourError("the enclosed region contains 0 (it would wind around the branch point)",
                               kind="encloses_zero")
        if ray_distance(circle.center, contour.branch_angle) <= circle.radius:
            raise ContourError(f"the enclosed region crosses the branch cut at angle {contour.branch_angle:.6g}",
                               kind="branch_cut")


def contour_integral(m: MatrixOperator, contour: Contour,
                     f: Callable[[complex], complex] = None) -> np.ndarray:
    """
    Trapezoidal approximation of (1/2πi)∮ f(λ)(λI − m)⁻¹ dλ.

    One dense LU factorization per node; contributions are summed in ascending
    node order so the result is reproducible bit for bit.

    Raises:
        NumericalError: If the resolvent is singular at a node
    """
    arr = as_array(m)
    dim = arr.shape[0]
    identity = np.eye(dim, dtype=complex)
    points, weights = contour.quadrature()
    result = np.zeros((dim, dim), dtype=complex)
    for point, weight in zip(points, weights):
        try:
            lu, piv = scipy.linalg.lu_factor(point * identity - arr, check_finite=False)
        except (np.linalg.LinAlgError, ValueError) as e:
            raise NumericalError(f"LU factorization failed at node {point:.6g}: {e}") from e
        if np.any(np.diag(lu) == 0):
            raise NumericalError(f"resolvent is singular at node {point:.6g}")
        resolvent = scipy.linalg.lu_solve((lu, piv), identity, check_finite=False)
        scale = weight if f is None else f(point) * weight
        result += scale * resolvent
    return result


def dunford_log(m: MatrixOperator, contour: Contour, clearance: float = 1e-6) -> MatrixOperator:
    """
    Logarithm of m by the Dunford integral of log(λ) along the contour.

    Args:
        m: The matrix
        contour: Circles enclosing the spectrum, away from 0 and from the branch ray
        clearance: Minimal distance between any eigenvalue and any circle

    Returns:
        A with exp(A) = m up to the quadrature error

    Raises:
        ContourError: If an eigenvalue is too close to or outside the contour, or the
            enclosed region meets 0 or the branch cut
        NumericalError: If a node solve fails
    """
    eigenvalues = spectrum(m)
    _check_clearance(eigenvalues, contour, clearance)
    _check_enclosed(eigenvalues, contour)
    _check_log_region(contour)
    angle = contour.branch_angle
    data = contour_integral(m, contour, lambda z: log_branch(z, angle))
    return MatrixOperator(data, {"branch_angle": angle, "nodes": contour.nodes,
                                 "circles": len(contour.circles)})


def fractional_power(m: MatrixOperator, t: float, contour: Contour, clearance: float = 1e-6) -> MatrixOperator:
    """
    m^t for t in (0, 1] by the Dunford integral of λ^t, branch fixed by the contour's cut.

    Raises:
        ValueError: If t is outside (0, 1]
        ContourError: As for dunford_log
    """
    if not 0 < t <= 1:
        raise ValueError(f"fractional power order must lie in (0, 1], got {t}")
    eigenvalues = spectrum(m)
    _check_clearance(eigenvalues, contour, clearance)
    _check_enclosed(eigenvalues, contour)
    _check_log_region(contour)
    angle = contour.branch_angle
    data = contour_integral(m, contour, lambda z: power_branch(z, t, angle))
    return MatrixOperator(data, {"order": t, "branch_angle": angle, "nodes": contour.nodes})


def riesz_projection(m: MatrixOperator, contour: Contour, clearance: float = 1e-6) -> MatrixOperator:
    """
    Spectral projection onto the eigenvalues enclosed by the contour.

    Raises:
        ContourError: If an eigenvalue is within ``clearance`` of a circle
    """
    _check_clearance(spectrum(m), contour, clearance)
    return MatrixOperator(contour_integral(m, contour), {"nodes": contour.nodes})


def principal_log_oracle(m: MatrixOperator, tol: float = 1e-14) -> MatrixOperator:
    """
    Principal matrix logarithm through the complex Schur form.

    The triangular factor is handed to scipy's inverse scaling and squaring
    logarithm, then transformed back.

    Raises:
        ContourError: If an eigenvalue is 0 or lies on the closed negative real axis
    """
    arr = as_array(m)
    try:
        upper, unitary = scipy.linalg.schur(arr, output='complex')
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericalError(f"Schur decomposition failed: {e}") from e
    diagonal = np.diag(upper)
    on_cut = (np.abs(diagonal.imag) <= tol * np.abs(diagonal)) & (diagonal.real <= 0)
    if np.any(on_cut) or np.any(diagonal == 0):
        raise ContourError("an eigenvalue lies on the closed negative real axis", kind="branch_cut")
    log_upper = scipy.linalg.logm(upper)
    return MatrixOperator(unitary @ log_upper @ unitary.conj().T)


def matrix_exp(m: MatrixOperator, t: float = 1.0) -> MatrixOperator:
    """
    exp(t·m) by scaling and squaring (scipy.linalg.expm).

    Raises:
        NumericalError: If the result overflows
    """
    arr = as_array(m)
    if t == 0:
        return MatrixOperator.identity(arr.shape[0])
    with np.errstate(over='ignore', invalid='ignore'):
        try:
            result = scipy.linalg.expm(t * arr)
        except (OverflowError, FloatingPointError) as e:
            raise NumericalError(f"matrix exponential overflowed for t={t}: {e}") from e
    if not np.all(np.isfinite(result)):
        raise NumericalError(f"matrix exponential overflowed for t={t}")
    return MatrixOperator(result)


def _in_sector(value: complex, angle: float) -> bool:
    return abs(value) == 0 or abs(np.angle(value)) <= angle + 1e-12


def sectoriality_probe(m: MatrixOperator, angles: Sequence[float], radii: Sequence[float],
                       rays: int = 8, max_constant: float = 1e8, direction: float = 0.0) -> SectorReport:
    """
    Look for the smallest sector {|arg z| ≤ δ} that contains the spectrum and outside which
    ‖R(λ, m)‖ ≤ M/|λ| holds on the sampled rays.

    Args:
        m: The matrix
        angles: Candidate half-opening angles δ in (0, π)
        radii: Moduli sampled on every ray
        rays: Number of ray angles between δ and π (each taken with both signs)
        max_constant: Largest fitted M still accepted as a bound
        direction: Axis of the sector; δ is measured from this direction

    Returns:
        SectorReport with ``best_angle`` None when no candidate sector works
    """
    arr = np.exp(-1j * direction) * as_array(m)
    eigenvalues = spectrum(arr)
    identity = np.eye(arr.shape[0], dtype=complex)
    fallback: Tuple[float, Tuple[SectorSample, ...]] = (math.inf, ())

    for delta in sorted(float(a) for a in angles):
        if not 0 < delta < math.pi:
            raise ValueError(f"sector angles must lie in (0, π), got {delta}")
        if not all(_in_sector(v, delta) for v in eigenvalues):
            continue
        raw = []
        for j in range(1, rays + 1):
            omega = delta + (math.pi - delta) * j / rays
            signs = (1.0,) if j == rays else (1.0, -1.0)
            for sign in signs:
                for radius in radii:
                    point = radius * np.exp(1j * sign * omega)
                    smallest = scipy.linalg.svdvals(point * identity - arr)[-1]
                    norm = math.inf if smallest == 0 else 1.0 / smallest
                    raw.append((point, norm))
        constant = max(abs(p) * norm for p, norm in raw)
        samples = tuple(SectorSample(complex(p * np.exp(1j * direction)), float(norm),
                                     constant / abs(p)) for p, norm in raw)
        if math.isfinite(constant) and constant <= max_constant:
            logger.debug("Sector of half-angle %.4g is feasible with M=%.4g", delta, constant)
            return SectorReport(best_angle=delta, constant_estimate=float(constant), samples=samples)
        fallback = (constant, samples)

    return SectorReport(best_angle=None, constant_estimate=float(fallback[0]), samples=fallback[1])


def choose_branch_angle(eigenvalues: Sequence[complex], preferred: float = math.pi) -> float:
    """
    Direction of a branch ray that clears every eigenvalue, as close as possible to ``preferred``.

    Each eigenvalue blocks the directions within an angular margin of its argument; the
    margin shrinks through BRANCH_MARGINS until some direction is free.

    Raises:
        ContourError: If 0 is an eigenvalue or no direction clears the spectrum
    """
    values = np.asarray(eigenvalues, dtype=complex)
    if values.size and np.any(values == 0):
        raise ContourError("0 is an eigenvalue: no logarithm exists", kind="encloses_zero")
    args = np.mod(np.angle(values), 2 * np.pi)

    def circular(a, b):
        d = abs(np.mod(a - b, 2 * np.pi))
        return min(d, 2 * np.pi - d)

    for margin in BRANCH_MARGINS:
        if all(circular(preferred, a) > margin for a in args):
            return float(preferred)
        candidates = sorted({float(np.mod(a + s * 1.5 * margin, 2 * np.pi)) for a in args for s in (-1, 1)},
                            key=lambda c: (circular(c, preferred), c))
        for candidate in candidates:
            if all(circular(candidate, a) > margin for a in args):
                logger.debug("Rotated branch cut from %.6g to %.6g (margin %g)", preferred, candidate, margin)
                return candidate
    raise ContourError("no branch ray clears the spectrum", kind="branch_cut")


def _relabel(labels: np.ndarray) -> np.ndarray:
    # number by first occurrence so the contour does not depend on scipy's numbering
    _, first = np.unique(labels, return_index=True)
    order = {labels[i]: rank for rank, i in enumerate(sorted(first))}
    return np.array([order[label] for label in labels])


def cluster_eigenvalues(values: np.ndarray, threshold: float) -> np.ndarray:
    """Single-linkage cluster labels (0, 1, ... in order of first appearance) at the given distance."""
    if values.size == 1:
        return np.zeros(1, dtype=int)
    points = np.column_stack([values.real, values.imag])
    return _relabel(fcluster(linkage(points, method='single'), t=threshold, criterion='distance'))


def _merge_coincident(values: np.ndarray, labels: np.ndarray, arr: np.ndarray, radius: float,
                      tol: float) -> np.ndarray:
    """
    Join clusters holding a pair of eigenvalues whose midpoint is numerically in the spectrum.

    A defective eigenvalue of multiplicity k comes back from the eigensolver as k
    points spread over a radius of order eps^(1/k); the resolvent is numerically
    singular between them, while it stays invertible between distinct eigenvalues.
    """
    floor = tol * max(1.0, float(np.linalg.norm(arr, 2)))
    identity = np.eye(arr.shape[0], dtype=complex)
    labels = labels.copy()
    for i in range(values.size):
        for j in range(i + 1, values.size):
            if labels[i] == labels[j] or abs(values[i] - values[j]) > radius:
                continue
            midpoint = 0.5 * (values[i] + values[j])
            if scipy.linalg.svdvals(midpoint * identity - arr)[-1] <= floor:
                labels[labels == labels[j]] = labels[i]
    return _relabel(labels)


def design_contour(eigenvalues: Sequence[complex], nodes: int = 256, clearance: float = 1e-6,
                   branch_angle: Optional[float] = None, cluster_tol: float = 1e-6,
                   matrix: Optional[MatrixOperator] = None, coincidence_radius: float = 5e-2,
                   coincidence_tol: float = 1e-8) -> Contour:
    """
    Enclosing-circle heuristic: one circle per eigenvalue cluster.

    The branch ray is the negative real axis unless an eigenvalue sits near it, in which
    case it is rotated by the smallest angle that clears the spectrum. Each circle is
    padded by at most half the distance to the ray and 0.45 of the gap to every
    other cluster, so the circles bound disjoint discs that avoid the cut.

    When the matrix is given, eigenvalues closer than ``coincidence_radius``·scale whose
    midpoint has σ_min(λI − m) ≤ ``coincidence_tol``·‖m‖ are treated as one (split)
    defective eigenvalue and share a circle.

    Raises:
        ContourError: If 0 is an eigenvalue or a cluster cannot be padded by ``clearance``
    """
    values = np.asarray(eigenvalues, dtype=complex).ravel()
    if values.size == 0:
        raise ValueError("design_contour needs at least one eigenvalue")
    angle = choose_branch_angle(values) if branch_angle is None else float(branch_angle)
    scale = max(1.0, float(np.max(np.abs(values))))
    labels = cluster_eigenvalues(values, cluster_tol * scale)
    if matrix is not None and values.size > 1:
        labels = _merge_coincident(values, labels, as_array(matrix), coincidence_radius * scale,
                                   coincidence_tol)

    groups = [values[labels == k] for k in range(labels.max() + 1)]
    while True:
        centers = [complex(np.mean(g)) for g in groups]
        spreads = [float(np.max(np.abs(g - c))) for g, c in zip(groups, centers)]
        merged = False
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                if abs(centers[i] - centers[j]) - spreads[i] - spreads[j] <= 2 * clearance:
                    groups[i] = np.concatenate([groups[i], groups[j]])
                    del groups[j]
                    merged = True
                    break
            if merged:
                break
        if not merged:
            break

    circles = []
    for i, (center, spread) in enumerate(zip(centers, spreads)):
        room = ray_distance(center, angle) - spread
        pad = 0.5 * room
        for j, (other, other_spread) in enumerate(zip(centers, spreads)):
            if j != i:
                pad = min(pad, 0.45 * (abs(center - other) - spread - other_spread))
        if not pad > clearance:
            raise ContourError(f"cannot fit a circle around the eigenvalue cluster at {center:.6g}",
                               kind="clearance")
        circles.append(Circle(center, spread + pad))

    logger.debug("Designed contour: %d circle(s), branch angle %.6g", len(circles), angle)
    return Contour(tuple(circles), nodes, angle)
