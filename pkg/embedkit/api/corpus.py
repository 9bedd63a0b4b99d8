#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Built-in demo corpus for embedkit.

A fixed, seeded set of operators covering every construction method plus the
negative controls (operators with a finite nonzero kernel or cokernel) and one
open case. The ``demo`` command classifies, embeds and verifies each of them.

本模块提供内置演示算子集合，覆盖所有构造方法以及反例。
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from ..core.cardinal import CardinalDim, INFINITE
from ..core.operators import (
    BlockLeftShift, BlockRightShift, Compact, Dense, Diagonal, DirectSum, MatrixOperator,
    Multiplication, StructuredOperator, Volterra, Zero, jordan_block, random_dense, random_unitary
)


@dataclass(frozen=True)
class DemoCase:
    """One corpus entry: operator, settings overrides and the expected verdict status."""

    name: str
    operator: StructuredOperator
    expected_status: str
    overrides: Dict[str, Any] = field(default_factory=dict)


def clustered_compact(seed: int = 7) -> MatrixOperator:
    """Non-normal matrix with eigenvalue clusters near 1, 0.5 and 0.25."""
    rng = np.random.default_rng(seed)
    basis = np.eye(5) + 0.1 * rng.standard_normal((5, 5))
    values = np.diag([1.0, 1.02, 0.5, 0.51, 0.25])
    return MatrixOperator(basis @ values @ np.linalg.inv(basis))


def demo_corpus() -> List[DemoCase]:
    """The demo corpus, in report order."""
    annulus = (2.0, 0.5j, -1.0, 1.5 * np.exp(1j), 0.75 * np.exp(-2j))
    return [
        # finite-dimensional dichotomy
        DemoCase("jordan-nilpotent", Dense(jordan_block(4, 0.0)), "not_embeddable"),
        DemoCase("jordan-invertible", Dense(jordan_block(3, 2.0)), "embeddable"),
        DemoCase("random-dense", Dense(random_dense(6, seed=3)), "embeddable"),
        DemoCase("random-dense-singular", Dense(random_dense(6, rank=4, seed=3)), "not_embeddable"),
        DemoCase("random-unitary", Dense(random_unitary(6, seed=1)), "embeddable"),
        DemoCase("random-unitary-rescaled", Dense(random_unitary(6, seed=1)), "embeddable",
                 {"embed": {"branch_offsets": [1]}}),

        # normal operators
        DemoCase("annulus-diagonal", Diagonal(annulus), "embeddable"),
        DemoCase("annulus-diagonal-rescaled", Diagonal(annulus), "embeddable",
                 {"embed": {"branch_offsets": [1, -1, 2, 0, -2]}}),
        DemoCase("diagonal-infinite-kernel", Diagonal((2.0, 0, 0, 0, 0, 1j), INFINITE), "embeddable"),
        DemoCase("diagonal-finite-kernel", Diagonal((0, 1.0)), "not_embeddable"),
        DemoCase("multiplication-disc", Multiplication((0.9, 0.5j, -0.3, 0.2 + 0.2j), (1.0, 2.0, 0.5, 1.0)),
                 "embeddable"),

        # isometries and co-isometries
        DemoCase("shift-multiplicity-1", BlockRightShift(CardinalDim(1), 1, 16), "not_embeddable"),
        DemoCase("shift-multiplicity-2", BlockRightShift(CardinalDim(2), 2, 16), "not_embeddable"),
        DemoCase("shift-infinite", BlockRightShift(INFINITE, 4, 16), "embeddable"),
        DemoCase("unitary-plus-shift-infinite",
                 DirectSum((Dense(random_unitary(3, seed=2)), BlockRightShift(INFINITE, 2, 8))), "embeddable"),
        DemoCase("unitary-plus-shift-2",
                 DirectSum((Dense(random_unitary(2, seed=2)), BlockRightShift(CardinalDim(2), 2, 8))),
                 "not_embeddable"),
        DemoCase("unitary-as-isometry", DirectSum((Dense(random_unitary(4, seed=5)),)), "embeddable"),
        DemoCase("coisometry-infinite-kernel", BlockLeftShift(INFINITE, 4, 8), "embeddable"),

        # quasinilpotent and zero
        DemoCase("volterra", Volterra(128), "embeddable"),
        DemoCase("zero-infinite", Zero(INFINITE, 16), "embeddable"),
        DemoCase("zero-one-dimensional", Zero(CardinalDim(1), 1), "not_embeddable"),

        # compact operators
        DemoCase("compact-clusters", Compact(clustered_compact()), "embeddable"),
        DemoCase("compact-infinite-kernel", Compact(clustered_compact(), INFINITE), "unknown"),

        # direct sums
        DemoCase("jordan-plus-zero-infinite", DirectSum((Dense(jordan_block(2, 2.0)), Zero(INFINITE, 4))),
                 "embeddable"),
    ]
