#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Semigroup realizations and the algebra on them.

A SemigroupRealization is a map t ↦ T(t) together with the set of times at
which it is defined: every t ≥ 0 (continuous), or the lattice {0, h, 2h, ...}
with h = 1/m (grid). Grid realizations are evaluated by step count so that
translations compose exactly.

本模块定义半群实现（连续或格点时间）以及重标度、数乘、伴随、直和、置换、相似变换与开方等运算。
"""

import logging
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import reduce
from typing import Any, Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.linalg

from .errors import HypothesisError, InadmissibleTimeError
from .operators import MatrixOperator, as_array

logger = logging.getLogger(__name__)

Time = Union[float, int, Fraction]

# relative distance to the lattice accepted for a float time sample
_LATTICE_TOL = 1e-9


@dataclass(frozen=True)
class AdmissibleTimes:
    """Continuous times (``cells_per_unit`` None) or the lattice with step 1/cells_per_unit."""

    cells_per_unit: Optional[int] = None

    def __post_init__(self):
        if self.cells_per_unit is not None and self.cells_per_unit < 1:
            raise ValueError(f"a grid needs a positive number of cells per unit time, got {self.cells_per_unit}")

    @classmethod
    def continuous(cls) -> "AdmissibleTimes":
        return cls(None)

    @classmethod
    def grid(cls, cells_per_unit: int) -> "AdmissibleTimes":
        return cls(int(cells_per_unit))

    @property
    def is_grid(self) -> bool:
        return self.cells_per_unit is not None

    @property
    def step(self) -> Optional[float]:
        return None if self.cells_per_unit is None else 1.0 / self.cells_per_unit

    def steps(self, t: Time) -> int:
        """Number of lattice steps in t. Raises InadmissibleTimeError off the lattice."""
        scaled = t * self.cells_per_unit
        count = int(round(float(scaled)))
        if abs(float(scaled) - count) > _LATTICE_TOL * max(1.0, abs(float(scaled))):
            raise InadmissibleTimeError(f"t={t} is not a multiple of the grid step 1/{self.cells_per_unit}")
        return count

    def snap(self, t: Time) -> Time:
        """Nearest admissible time (the identity for continuous times)."""
        if not self.is_grid:
            return t
        return Fraction(int(round(float(t) * self.cells_per_unit)), self.cells_per_unit)

    def describe(self) -> str:
        return "Continuous" if not self.is_grid else f"Grid(1/{self.cells_per_unit})"


@dataclass(frozen=True, eq=False)
class SemigroupRealization:
    """
    A one-parameter family T(t) of matrices.

    Attributes:
        dim: Size of the matrices
        method: Construction tag
        times: Admissible time set
        kernel: t ↦ array for continuous realizations, step count ↦ array for grid ones
        generator: Bounded generator A with T(t) = exp(tA), when known
        branch_offsets: Per-eigenvalue 2πik shifts used by the construction
        allow_negative: Whether T(t) is defined for t < 0 (groups)
        metadata: Provenance recorded in reports
    """

    dim: int
    method: str
    times: AdmissibleTimes
    kernel: Callable[[Any], np.ndarray]
    generator: Optional[MatrixOperator] = None
    branch_offsets: Optional[Tuple[int, ...]] = None
    allow_negative: bool = False
    metadata: Dict[str, Any] = field(default_factory=dict)

    def _argument(self, t: Time):
        if isinstance(t, bool) or not math.isfinite(float(t)):
            raise InadmissibleTimeError(f"time must be a finite real, got {t!r}")
        if t < 0 and not self.allow_negative:
            raise InadmissibleTimeError(f"t={t} is negative; this realization is a semigroup, not a group")
        if self.times.is_grid:
            return self.times.steps(t)
        return float(t)

    def evaluate(self, t: Time) -> MatrixOperator:
        """
        T(t) as a MatrixOperator.

        Raises:
            InadmissibleTimeError: If t is negative (for semigroups) or off the lattice (grid realizations)
        """
        return MatrixOperator(self.kernel(self._argument(t)))

    def evaluate_array(self, t: Time) -> np.ndarray:
        return np.asarray(self.kernel(self._argument(t)), dtype=complex)

    def describe(self) -> Dict[str, Any]:
        info = {"method": str(getattr(self.method, "value", self.method)),
                "dim": self.dim,
                "admissible_times": self.times.describe(),
                "has_generator": self.generator is not None,
                "branch_offsets": None if self.branch_offsets is None else list(self.branch_offsets)}
        if self.times.is_grid:
            info["grid_step"] = self.times.step
        info.update(self.metadata)
        return info


def _time_of(s: SemigroupRealization, argument) -> float:
    return argument / s.times.cells_per_unit if s.times.is_grid else argument


def rescale(s: SemigroupRealization, n_offset: int) -> SemigroupRealization:
    """
    e^{2πi·n·t}·T(t): another semigroup with the same value at t = 1.

    The phase is taken of (n·t mod 1) so that T_n(1) = T(1) holds exactly.
    """
    n_offset = int(n_offset)
    if n_offset == 0:
        return s
    cells = s.times.cells_per_unit

    def kernel(argument):
        if cells is not None:
            fractional = Fraction(n_offset * argument % cells, cells)
        else:
            fractional = math.fmod(n_offset * argument, 1.0)
        return np.exp(2j * np.pi * float(fractional)) * s.kernel(argument)

    generator = None
    if s.generator is not None:
        generator = MatrixOperator(s.generator.data + 2j * np.pi * n_offset * np.eye(s.dim))
    offsets = None if s.branch_offsets is None else tuple(k + n_offset for k in s.branch_offsets)
    metadata = dict(s.metadata)
    metadata["rescale_offset"] = metadata.get("rescale_offset", 0) + n_offset
    return replace(s, kernel=kernel, generator=generator, branch_offsets=offsets, metadata=metadata)


def scale(s: SemigroupRealization, c: complex, branch_offset: int = 0) -> SemigroupRealization:
    """
    Realization for c·T: t ↦ e^{t·(Log c + 2πik)}·T(t).

    Raises:
        HypothesisError: If c is 0
    """
    c = complex(c)
    if c == 0:
        raise HypothesisError("cannot scale a semigroup by 0")
    log_c = complex(np.log(c)) + 2j * np.pi * branch_offset

    def kernel(argument):
        return np.exp(_time_of(s, argument) * log_c) * s.kernel(argument)

    generator = None if s.generator is None else MatrixOperator(s.generator.data + log_c * np.eye(s.dim))
    metadata = dict(s.metadata)
    metadata["scale"] = [c.real, c.imag]
    return replace(s, kernel=kernel, generator=generator, metadata=metadata)


def adjoint_realization(s: SemigroupRealization) -> SemigroupRealization:
    """t ↦ T(t)ᴴ, the adjoint semigroup; it embeds T(1)ᴴ."""

    def kernel(argument):
        return np.asarray(s.kernel(argument)).conj().T

    generator = None if s.generator is None else s.generator.adjoint()
    return replace(s, kernel=kernel, generator=generator)


def _common_times(parts: Sequence[SemigroupRealization]) -> AdmissibleTimes:
    grids = [p.times.cells_per_unit for p in parts if p.times.is_grid]
    if not grids:
        return AdmissibleTimes.continuous()
    # the coarsest lattice on which every part is defined
    return AdmissibleTimes.grid(reduce(math.gcd, grids))


def direct_sum(realizations: Sequence[SemigroupRealization], method: str = "direct_sum") -> SemigroupRealization:
    """
    Block-diagonal realization of several realizations.

    A sum involving a grid realization lives on the coarsest common lattice
    (cells per unit = gcd of the parts' cells); continuous parts are sampled on it.
    """
    parts = list(realizations)
    if not parts:
        raise ValueError("direct_sum needs at least one realization")
    if len(parts) == 1:
        return parts[0]
    times = _common_times(parts)

    def part_argument(part, argument):
        if not times.is_grid:
            return argument
        if part.times.is_grid:
            return argument * (part.times.cells_per_unit // times.cells_per_unit)
        return argument / times.cells_per_unit

    def kernel(argument):
        return scipy.linalg.block_diag(*[np.asarray(p.kernel(part_argument(p, argument)), dtype=complex)
                                         for p in parts])

    generator = None
    if not times.is_grid and all(p.generator is not None for p in parts):
        generator = MatrixOperator(scipy.linalg.block_diag(*[p.generator.data for p in parts]))
    offsets = None
    if all(p.branch_offsets is not None for p in parts):
        offsets = tuple(k for p in parts for k in p.branch_offsets)
    if times.is_grid and any(not p.times.is_grid for p in parts):
        logger.debug("Direct sum downgraded to %s", times.describe())
    metadata = {"parts": [p.describe() for p in parts]}
    return SemigroupRealization(dim=sum(p.dim for p in parts), method=method, times=times,
                                kernel=kernel, generator=generator, branch_offsets=offsets,
                                allow_negative=all(p.allow_negative for p in parts),
                                metadata=metadata)


def permuted(s: SemigroupRealization, positions: Sequence[int]) -> SemigroupRealization:
    """
    The same realization in other coordinates: coordinate i of ``s`` becomes coordinate positions[i].
    """
    positions = np.asarray(positions, dtype=int)
    if sorted(positions.tolist()) != list(range(s.dim)):
        raise ValueError("positions must be a permutation of range(dim)")
    index = np.ix_(positions, positions)

    def place(arr):
        out = np.zeros((s.dim, s.dim), dtype=complex)
        out[index] = arr
        return out

    def kernel(argument):
        return place(np.asarray(s.kernel(argument)))

    generator = None if s.generator is None else MatrixOperator(place(s.generator.data))
    offsets = s.branch_offsets
    if offsets is not None:
        reordered = [0] * s.dim
        for i, p in enumerate(positions):
            reordered[p] = offsets[i]
        offsets = tuple(reordered)
    return replace(s, kernel=kernel, generator=generator, branch_offsets=offsets)


def similar(s: SemigroupRealization, basis, unitary: bool = False,
            method: Optional[str] = None) -> SemigroupRealization:
    """
    t ↦ S·T(t)·S⁻¹ for an invertible basis matrix S (S⁻¹ = Sᴴ when ``unitary``).
    """
    basis = as_array(basis)
    inverse = basis.conj().T if unitary else scipy.linalg.inv(basis)

    def kernel(argument):
        return basis @ np.asarray(s.kernel(argument)) @ inverse

    generator = None if s.generator is None else MatrixOperator(basis @ s.generator.data @ inverse)
    return replace(s, kernel=kernel, generator=generator, method=method or s.method)


def root(s: SemigroupRealization, n: int) -> MatrixOperator:
    """T(1/n): an n-th root of T(1)."""
    if n < 1:
        raise ValueError(f"root order must be a positive integer, got {n}")
    return s.evaluate(Fraction(1, n))


def constant_identity(dim: int) -> SemigroupRealization:
    """The trivial semigroup T(t) = I."""
    identity = np.eye(dim, dtype=complex)
    return SemigroupRealization(dim=dim, method="identity", times=AdmissibleTimes.continuous(),
                                kernel=lambda argument: identity.copy(),
                                generator=MatrixOperator(np.zeros((dim, dim))), branch_offsets=None,
                                allow_negative=True)
