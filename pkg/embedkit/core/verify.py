#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Numerical verification of semigroup realizations.

check_embedding() measures how far a realization is from being a semigroup
through a target operator: T(0) = I, T(1) = target, T(s)T(t) = T(s+t) on a
sample grid, a strong-continuity profile sup‖T(h)x − x‖ for decreasing h and,
when a bounded generator is known, the finite-difference generator residual.
All norms are spectral norms. Strong continuity cannot be proven this way; a
decreasing profile is evidence only.

本模块对半群实现做数值验证：单位元、端点、半群律、强连续性剖面与生成元残差。
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import InadmissibleTimeError
from .operators import MatrixOperator, StructuredOperator, as_array, materialize
from .rank import operator_norm
from .semigroup import SemigroupRealization
from .settings import DEFAULT_SETTINGS, method_tolerances

logger = logging.getLogger(__name__)

# largest argument of math.exp that stays finite, rounded down
_EXP_LIMIT = 709.0


@dataclass(frozen=True)
class VerificationReport:
    endpoint_residual: float
    cocycle_residual_max: float
    identity_residual: float
    continuity_profile: Tuple[Tuple[float, float], ...]
    generator_residual: Optional[float]
    samples_used: Dict[str, Any]
    tolerances: Dict[str, float]
    failures: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {"pass": self.passed,
                "endpoint_residual": self.endpoint_residual,
                "cocycle_residual_max": self.cocycle_residual_max,
                "identity_residual": self.identity_residual,
                "generator_residual": self.generator_residual,
                "continuity_profile": [{"h": h, "continuity_sup": value} for h, value in self.continuity_profile],
                "tolerances": dict(self.tolerances),
                "samples_used": dict(self.samples_used),
                "failures": list(self.failures)}


def probe_vectors(dim: int, random_count: int = 4, seed: int = 0) -> np.ndarray:
    """Columns: the standard basis followed by seeded random complex unit vectors."""
    rng = np.random.default_rng(seed)
    draws = rng.standard_normal((dim, random_count)) + 1j * rng.standard_normal((dim, random_count))
    if random_count:
        draws /= np.linalg.norm(draws, axis=0)
    return np.hstack([np.eye(dim, dtype=complex), draws])


def _lattice(s: SemigroupRealization, values: Sequence[float], positive: bool = False) -> List:
    """Admissible versions of ``values`` in their order, duplicates dropped."""
    result = []
    for value in values:
        snapped = s.times.snap(value)
        if positive and snapped <= 0:
            continue
        if snapped not in result:
            result.append(snapped)
    return result


def default_h_list(s: SemigroupRealization, settings: Optional[Dict] = None) -> List:
    """2⁻¹, ..., 2⁻¹⁰ (configurable), or the nonzero lattice points nearest to them."""
    exponents = (settings or DEFAULT_SETTINGS)['verify']['h_exponents']
    return _lattice(s, [2.0 ** -p for p in exponents], positive=True)


def estimate_generator(s: SemigroupRealization, h: float) -> MatrixOperator:
    """
    Forward difference (T(h) − I)/h.

    Raises:
        InadmissibleTimeError: If h is not positive or not admissible
    """
    if not h > 0:
        raise InadmissibleTimeError(f"generator step must be positive, got {h}")
    value = s.evaluate_array(h)
    return MatrixOperator((value - np.eye(s.dim)) / float(h))


def continuity_sweep(s: SemigroupRealization, vectors, h_list: Sequence) -> Tuple[Tuple[float, float], ...]:
    """
    sup over the columns x of ``vectors`` of ‖T(h)x − x‖, for every h in ``h_list``.
    """
    vectors = as_array(vectors)
    profile = []
    identity = np.eye(s.dim)
    for h in h_list:
        moved = (s.evaluate_array(h) - identity) @ vectors
        profile.append((float(h), float(np.max(np.linalg.norm(moved, axis=0)))))
    return tuple(profile)


def generator_convergence(s: SemigroupRealization, h_list: Sequence[float]) -> List[Tuple[float, float, Optional[float]]]:
    """
    ‖(T(h) − I)/h − A‖ for each h with the ratio to the previous residual.

    A forward difference converges at first order, so halving h should roughly
    halve the residual.

    Raises:
        ValueError: If the realization has no generator
    """
    if s.generator is None:
        raise ValueError("generator_convergence needs a realization with a bounded generator")
    table = []
    previous = None
    for h in h_list:
        residual = operator_norm(estimate_generator(s, h).data - s.generator.data)
        ratio = previous / residual if previous is not None and residual > 0 else None
        table.append((float(h), residual, ratio))
        previous = residual
    return table


def check_embedding(s: SemigroupRealization, target, tolerances: Optional[Dict[str, float]] = None,
                    time_samples: Optional[Sequence[float]] = None,
                    settings: Optional[Dict] = None) -> VerificationReport:
    """
    Verify that a realization is a semigroup through ``target``.

    Args:
        s: The realization
        target: MatrixOperator or StructuredOperator expected at t = 1
        tolerances: ``endpoint``/``cocycle``/``identity`` thresholds (method defaults otherwise)
        time_samples: Times in [0, 1] for the cocycle grid (10 equispaced points by
            default, snapped to the lattice for grid realizations)
        settings: Effective settings

    Returns:
        VerificationReport; ``failures`` names every violated check

    Raises:
        InadmissibleTimeError: If an explicit time sample is not admissible
    """
    settings = settings or DEFAULT_SETTINGS
    verify_cfg = settings['verify']
    method = str(getattr(s.method, "value", s.method))
    tol = {"identity": settings['tolerances']['identity']}
    try:
        tol.update(method_tolerances(settings, method))
    except KeyError:
        tol.update(method_tolerances(settings, "direct_sum"))
    if tolerances:
        tol.update(tolerances)

    target = materialize(target) if isinstance(target, StructuredOperator) else target
    target_arr = as_array(target)
    if target_arr.shape != (s.dim, s.dim):
        raise ValueError(f"target has shape {target_arr.shape}, realization has dimension {s.dim}")
    identity = np.eye(s.dim)

    if time_samples is None:
        samples = _lattice(s, np.linspace(0.0, 1.0, verify_cfg['samples']))
    else:
        samples = list(time_samples)
        for t in samples:
            s.evaluate_array(t)

    cache: Dict[Any, np.ndarray] = {}

    def value(t):
        key = Fraction(t).limit_denominator(10 ** 9) if s.times.is_grid else float(t)
        if key not in cache:
            cache[key] = s.evaluate_array(t)
        return cache[key]

    identity_residual = operator_norm(value(0) - identity)
    endpoint_residual = operator_norm(value(1) - target_arr)
    cocycle = 0.0
    for first in samples:
        for second in samples:
            cocycle = max(cocycle, operator_norm(value(first) @ value(second) - value(first + second)))

    vectors = probe_vectors(s.dim, verify_cfg['random_vectors'], verify_cfg['seed'])
    h_list = default_h_list(s, settings)
    profile = continuity_sweep(s, vectors, h_list)

    failures = []
    if identity_residual > tol["identity"]:
        failures.append(f"identity residual {identity_residual:.3g} > {tol['identity']:.3g}")
    if endpoint_residual > tol["endpoint"]:
        failures.append(f"endpoint residual {endpoint_residual:.3g} > {tol['endpoint']:.3g}")
    if cocycle > tol["cocycle"]:
        failures.append(f"cocycle residual {cocycle:.3g} > {tol['cocycle']:.3g}")

    slack = verify_cfg['monotone_slack']
    for (h_big, big), (h_small, small) in zip(profile, profile[1:]):
        if h_small <= verify_cfg['monotone_below'] and small > big * (1 + slack) + verify_cfg['floor']:
            failures.append(f"continuity profile increases from {big:.3g} at h={h_big:g} "
                            f"to {small:.3g} at h={h_small:g}")

    generator_residual = None
    if s.generator is not None and not s.times.is_grid:
        h = verify_cfg['generator_h']
        generator_residual = operator_norm(estimate_generator(s, h).data - s.generator.data)
        norm = operator_norm(s.generator)
        # exp(h·‖G‖) beyond the float range leaves the check vacuous
        growth = math.exp(h * norm) if h * norm < _EXP_LIMIT else math.inf
        bound = h * norm * norm * growth / 2 + 1e-8
        tol["generator"] = bound
        if generator_residual > bound:
            failures.append(f"generator residual {generator_residual:.3g} > {bound:.3g}")

    samples_used = {"time_samples": [float(t) for t in samples],
                    "cocycle_pairs": len(samples) ** 2,
                    "basis_vectors": s.dim,
                    "random_vectors": verify_cfg['random_vectors'],
                    "seed": verify_cfg['seed'],
                    "h_list": [float(h) for h in h_list]}
    report = VerificationReport(endpoint_residual=float(endpoint_residual),
                                cocycle_residual_max=float(cocycle),
                                identity_residual=float(identity_residual),
                                continuity_profile=profile,
                                generator_residual=None if generator_residual is None else float(generator_residual),
                                samples_used=samples_used,
                                tolerances={k: float(v) for k, v in tol.items()},
                                failures=tuple(failures))
    if failures:
        logger.info("Verification of %s failed: %s", method, "; ".join(failures))
    return report
