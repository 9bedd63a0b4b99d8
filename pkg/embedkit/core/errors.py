#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Exception hierarchy for embedkit.

Every error raised on purpose by the package derives from EmbedkitError, so
callers (and the CLI) can separate "the input file is wrong" from "the
numerics failed" from "the operator does not satisfy the hypothesis".

本模块定义 embedkit 的异常层次结构。
"""

import numpy as np


class EmbedkitError(Exception):
    """Base class for all embedkit errors."""


class SpecParseError(EmbedkitError, ValueError):
    """A spec or settings file could not be turned into a valid object.

    Args:
        message: What is wrong
        path: File the value came from, if known
        line: 1-based line number of the offending key, if known
        field: Dotted name of the offending field, if known
    """

    def __init__(self, message: str, path: str = None, line: int = None, field: str = None):
        self.path = path
        self.line = line
        self.field = field
        location = ""
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "
        elif line is not None:
            location = f"line {line}: "
        if field:
            location += f"{field}: "
        super().__init__(f"{location}{message}")


class ResourceLimitError(EmbedkitError):
    """A requested dense truncation is larger than the configured cap."""


class NumericalError(EmbedkitError, np.linalg.LinAlgError):
    """A factorization did not converge, a solve was singular or a result overflowed."""


class ContourError(EmbedkitError, ValueError):
    """A contour does not satisfy the hypotheses of the functional calculus.

    ``kind`` is one of ``clearance``, ``not_enclosed``, ``encloses_zero``,
    ``branch_cut`` or ``overlap``.
    """

    def __init__(self, message: str, kind: str):
        self.kind = kind
        super().__init__(message)


class HypothesisError(EmbedkitError, ValueError):
    """An operator violates the precondition of a construction."""


class InadmissibleTimeError(EmbedkitError, ValueError):
    """A time sample lies outside the admissible time set of a realization."""
