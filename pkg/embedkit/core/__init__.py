#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Core modules for embedkit.

This package contains the numerical substrate:
- cardinal, operators, rank: operator representations, materialization, kernel/cokernel cardinals
- funcalc: contour functional calculus, matrix exponential, sectoriality probe
- wold: Wold decomposition of isometries
- semigroup: semigroup realizations and their algebra
- embed: classification and semigroup constructions
- verify: numerical verification of realizations
- settings, value_converter, errors: configuration, YAML value conversion, exceptions
"""

from .cardinal import CardinalDim, INFINITE, ZERO, cardinal_sum
from .errors import (
    EmbedkitError, SpecParseError, ResourceLimitError, NumericalError,
    ContourError, HypothesisError, InadmissibleTimeError
)
from .settings import DEFAULT_SETTINGS, merge_dict, load_settings, load_yaml_tree, method_tolerances
from .value_converter import (
    value_format_yaml2complex, value_format_yaml2cardinal, value_format_yaml2matrix,
    value_format_complex2yaml, value_format_py2yaml
)
from .operators import (
    MatrixOperator, StructuredOperator, Dense, Diagonal, BlockRightShift, BlockLeftShift,
    Multiplication, Volterra, Zero, Compact, DirectSum, materialize, adjoint, interior_mask,
    identity_operator, jordan_block, rotation, random_unitary, random_dense
)
from .rank import RankReport, rank_analysis, kernel_defect, observed_defect, spectrum, operator_norm
from .funcalc import (
    Circle, Contour, SectorReport, contour_integral, design_contour, dunford_log,
    principal_log_oracle, matrix_exp, riesz_projection, sectoriality_probe, fractional_power
)
from .wold import WoldDecomposition, WoldResiduals, orbit_depth, wold_decompose, wold_verify
from .semigroup import (
    AdmissibleTimes, SemigroupRealization, rescale, scale, adjoint_realization,
    direct_sum, permuted, similar, root
)
from .embed import (
    EmbeddingMethod, VerdictStatus, OpenCase, EmbeddabilityVerdict, classify, embed, realize,
    embed_dense_invertible, embed_diagonal, embed_unitary, embed_normal, embed_shift_translation,
    embed_isometry, embed_coisometry, embed_compact_injective, embed_volterra, embed_zero_infinite
)
from .verify import (
    VerificationReport, check_embedding, estimate_generator, continuity_sweep, generator_convergence
)

__all__ = [
    # Cardinals and errors
    'CardinalDim', 'INFINITE', 'ZERO', 'cardinal_sum',
    'EmbedkitError', 'SpecParseError', 'ResourceLimitError', 'NumericalError',
    'ContourError', 'HypothesisError', 'InadmissibleTimeError',

    # Settings and value conversion
    'DEFAULT_SETTINGS', 'merge_dict', 'load_settings', 'load_yaml_tree', 'method_tolerances',
    'value_format_yaml2complex', 'value_format_yaml2cardinal', 'value_format_yaml2matrix',
    'value_format_complex2yaml', 'value_format_py2yaml',

    # Operators
    'MatrixOperator', 'StructuredOperator', 'Dense', 'Diagonal', 'BlockRightShift', 'BlockLeftShift',
    'Multiplication', 'Volterra', 'Zero', 'Compact', 'DirectSum', 'materialize', 'adjoint',
    'interior_mask', 'identity_operator', 'jordan_block', 'rotation', 'random_unitary', 'random_dense',
    'RankReport', 'rank_analysis', 'kernel_defect', 'observed_defect', 'spectrum', 'operator_norm',

    # Functional calculus
    'Circle', 'Contour', 'SectorReport', 'contour_integral', 'design_contour', 'dunford_log',
    'principal_log_oracle', 'matrix_exp', 'riesz_projection', 'sectoriality_probe', 'fractional_power',

    # Wold decomposition
    'WoldDecomposition', 'WoldResiduals', 'orbit_depth', 'wold_decompose', 'wold_verify',

    # Semigroups
    'AdmissibleTimes', 'SemigroupRealization', 'rescale', 'scale', 'adjoint_realization',
    'direct_sum', 'permuted', 'similar', 'root',

    # Classification and constructions
    'EmbeddingMethod', 'VerdictStatus', 'OpenCase', 'EmbeddabilityVerdict', 'classify', 'embed', 'realize',
    'embed_dense_invertible', 'embed_diagonal', 'embed_unitary', 'embed_normal', 'embed_shift_translation',
    'embed_isometry', 'embed_coisometry', 'embed_compact_injective', 'embed_volterra', 'embed_zero_infinite',

    # Verification
    'VerificationReport', 'check_embedding', 'estimate_generator', 'continuity_sweep', 'generator_convergence',
]
