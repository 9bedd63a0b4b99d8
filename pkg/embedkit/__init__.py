#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
embedkit - Embedding operators into C0-semigroups
embedkit - 将算子嵌入 C0 半群的工具库

This library decides whether a bounded operator T is the time-one value T(1)
of a strongly continuous semigroup, constructs such a semigroup for the
classes where one is known (invertible matrices, normal operators, isometries
and co-isometries, injective compact operators, the Volterra operator, the
zero operator on an infinite-dimensional space) and verifies it numerically.

这个库判定有界算子能否嵌入强连续半群，为已知的算子类构造半群，并做数值验证。

Main functions (主要功能):

- Classification and construction (判定与构造):
  - classify: Embeddable / NotEmbeddable / Unknown verdict
              返回可嵌入 / 不可嵌入 / 未知 的判定
  - embed: Classify and build the semigroup realization
           判定并构造半群实现

- Verification (验证):
  - check_embedding: Identity, endpoint, semigroup law, continuity and generator residuals
                     单位元、端点、半群律、连续性与生成元残差

- File operations (文件操作):
  - specfiles2operator: Load one or more operator spec files
                        读取一个或多个算子描述文件
  - load_settings: Defaults, settings files and overrides merged in order
                   按顺序合并默认设置、设置文件和覆盖项
  - report2yamlfile: Write a verification report
                     写出验证报告
"""

import logging

__version__ = '0.1.0'

logging.getLogger(__name__).addHandler(logging.NullHandler())

# Import from core modules
from .core import (
    # Errors (异常)
    EmbedkitError, SpecParseError, ResourceLimitError, NumericalError,
    ContourError, HypothesisError, InadmissibleTimeError,

    # Operators (算子)
    CardinalDim, INFINITE, ZERO, MatrixOperator, StructuredOperator, Dense, Diagonal,
    BlockRightShift, BlockLeftShift, Multiplication, Volterra, Zero, Compact, DirectSum,
    materialize, kernel_defect, rank_analysis,

    # Functional calculus (函数演算)
    Contour, design_contour, dunford_log, matrix_exp, riesz_projection, sectoriality_probe,

    # Wold decomposition (Wold 分解)
    wold_decompose, wold_verify,

    # Semigroups (半群)
    AdmissibleTimes, SemigroupRealization, rescale, scale, direct_sum, root,

    # Classification and construction (判定与构造)
    EmbeddingMethod, EmbeddabilityVerdict, classify, embed,

    # Verification (验证)
    VerificationReport, check_embedding,

    # Settings (设置)
    DEFAULT_SETTINGS, load_settings, merge_dict,
)

# Import from API modules
from .api import (
    specfiles2operator,  # Load one or more operator spec files (读取一个或多个算子描述文件)
    specfiles2job,       # Operator, name and settings overrides of spec files (描述文件中的算子、名称和设置)
    verdict2yamlfile,    # Write a verdict file (写出判定文件)
    report2yamlfile,     # Write a verification report (写出验证报告)
    profile2csvfile,     # Write a continuity profile (写出连续性剖面)
    demo_corpus,         # Built-in demo operators (内置演示算子)
)

__all__ = [
    # Errors (异常)
    'EmbedkitError', 'SpecParseError', 'ResourceLimitError', 'NumericalError',
    'ContourError', 'HypothesisError', 'InadmissibleTimeError',

    # Operators (算子)
    'CardinalDim', 'INFINITE', 'ZERO', 'MatrixOperator', 'StructuredOperator', 'Dense', 'Diagonal',
    'BlockRightShift', 'BlockLeftShift', 'Multiplication', 'Volterra', 'Zero', 'Compact', 'DirectSum',
    'materialize', 'kernel_defect', 'rank_analysis',

    # Functional calculus (函数演算)
    'Contour', 'design_contour', 'dunford_log', 'matrix_exp', 'riesz_projection', 'sectoriality_probe',

    # Wold decomposition (Wold 分解)
    'wold_decompose', 'wold_verify',

    # Semigroups (半群)
    'AdmissibleTimes', 'SemigroupRealization', 'rescale', 'scale', 'direct_sum', 'root',

    # Classification and construction (判定与构造)
    'EmbeddingMethod', 'EmbeddabilityVerdict', 'classify', 'embed',

    # Verification (验证)
    'VerificationReport', 'check_embedding',

    # Settings and files (设置与文件)
    'DEFAULT_SETTINGS', 'load_settings', 'merge_dict',
    'specfiles2operator', 'specfiles2job', 'verdict2yamlfile', 'report2yamlfile', 'profile2csvfile',
    'demo_corpus',
]
