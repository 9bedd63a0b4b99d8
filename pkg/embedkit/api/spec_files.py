#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Operator spec files for embedkit.

An operator spec file is a YAML document with an ``operator`` mapping (the
structured operator, selected by ``kind``), an optional ``settings`` block and
optional ``name`` / ``description`` strings. Parsing is strict: an unknown key
is reported with its file, line and dotted field name.

Example:

    name: shift-infinite
    operator:
      kind: block_right_shift
      fiber_dim: infinite
      fiber_truncation: 4
      block_truncation: 16
    settings:
      wold:
        depth: 8

本模块负责读取算子描述文件（YAML），严格校验键名并构造结构化算子。
"""

import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Tuple

from ..core.cardinal import CardinalDim, ZERO
from ..core.errors import SpecParseError
from ..core.operators import (
    BlockLeftShift, BlockRightShift, Compact, Dense, Diagonal, DirectSum, Multiplication,
    StructuredOperator, Volterra, Zero, identity_operator, jordan_block, random_dense,
    random_unitary, rotation
)
from ..core.settings import DEFAULT_SETTINGS, MarkedDict, check_keys, load_yaml_tree, merge_dict
from ..core.value_converter import (
    value_format_yaml2cardinal, value_format_yaml2complex, value_format_yaml2matrix
)

logger = logging.getLogger(__name__)

TOP_LEVEL_KEYS = ('name', 'description', 'operator', 'settings')

# kind -> (required fields, optional fields)
OPERATOR_FIELDS: Dict[str, Tuple[Tuple[str, ...], Tuple[str, ...]]] = {
    'dense': (('matrix',), ()),
    'identity': (('dim',), ()),
    'jordan': (('dim',), ('eigenvalue',)),
    'rotation': (('theta',), ()),
    'random_unitary': (('dim',), ('seed',)),
    'random_dense': (('dim',), ('rank', 'seed', 'scale')),
    'diagonal': (('eigenvalues',), ('kernel_dim', 'cokernel_dim')),
    'block_right_shift': (('fiber_dim', 'block_truncation'), ('fiber_truncation',)),
    'block_left_shift': (('fiber_dim', 'block_truncation'), ('fiber_truncation',)),
    'multiplication': (('sample_points',), ('sample_weights', 'kernel_dim')),
    'volterra': (('grid_size',), ()),
    'zero': (('space_dim',), ('truncation',)),
    'compact': (('matrix',), ('kernel_dim', 'dense_range')),
    'direct_sum': (('parts',), ()),
}


@dataclass
class OperatorSpec:
    """A parsed spec file set: the operator plus what the files say about the job."""

    operator: StructuredOperator
    name: str
    description: str = ""
    settings: Dict[str, Any] = field(default_factory=dict)
    sources: Tuple[str, ...] = ()


class _Where:
    """Source position helper: path plus the mapping a field lives in."""

    def __init__(self, path: Optional[str], node: Mapping, prefix: str):
        self.path = path
        self.node = node
        self.prefix = prefix

    def line(self, key: str) -> Optional[int]:
        return self.node.line_of(key) if isinstance(self.node, MarkedDict) else None

    def field(self, key: str) -> str:
        return f"{self.prefix}.{key}" if self.prefix else key

    def error(self, key: str, message: str) -> SpecParseError:
        return SpecParseError(message, path=self.path, line=self.line(key), field=self.field(key))

    def rethrow(self, key: str, error: SpecParseError) -> SpecParseError:
        # value converters only know the field name, not the position
        inner = error.field or key
        message = str(error)
        if message.startswith(f"{inner}: "):
            message = message[len(inner) + 2:]
        return SpecParseError(message, path=self.path, line=self.line(key.split('[')[0]),
                              field=self.field(inner))


def _integer(where: _Where, node: Mapping, key: str, minimum: int = None) -> int:
    value = node[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise where.error(key, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise where.error(key, f"must be at least {minimum}, got {value}")
    return value


def _real(where: _Where, node: Mapping, key: str) -> float:
    value = node[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise where.error(key, f"expected a real number, got {value!r}")
    return float(value)


def _convert(where: _Where, key: str, converter, value):
    try:
        return converter(value, field=key)
    except SpecParseError as e:
        raise where.rethrow(key, e) from None


def _complex_list(where: _Where, node: Mapping, key: str) -> Tuple[complex, ...]:
    values = node[key]
    if not isinstance(values, list) or not values:
        raise where.error(key, "expected a non-empty list")
    return tuple(_convert(where, f"{key}[{i}]", value_format_yaml2complex, v) for i, v in enumerate(values))


def _cardinal(where: _Where, node: Mapping, key: str, default=None) -> Optional[CardinalDim]:
    if key not in node:
        return default
    return _convert(where, key, value_format_yaml2cardinal, node[key])


def _truncation(where: _Where, node: Mapping, dim: CardinalDim, key: str) -> int:
    if key in node:
        return _integer(where, node, key, minimum=1)
    if dim.is_infinite:
        raise where.error(key, "required when the dimension is infinite")
    return dim.count


def operator_from_dict(node: Mapping, path: Optional[str] = None, prefix: str = "operator") -> StructuredOperator:
    """
    Build a StructuredOperator from an ``operator`` mapping.

    Args:
        node: The mapping (MarkedDict when it comes from a file, for line numbers)
        path: File the mapping was read from, for diagnostics
        prefix: Dotted name of the mapping, for diagnostics

    Returns:
        The structured operator; generated kinds (identity, jordan, rotation,
        random_unitary, random_dense) come back as Dense

    Raises:
        SpecParseError: On unknown kinds or keys, missing or malformed fields
    """
    where = _Where(path, node, prefix)
    if not isinstance(node, Mapping):
        raise SpecParseError("expected a mapping", path=path, field=prefix)
    if 'kind' not in node:
        raise SpecParseError("missing 'kind'", path=path, field=prefix)
    kind = node['kind']
    if kind not in OPERATOR_FIELDS:
        raise where.error('kind', f"unknown operator kind {kind!r} (expected one of: "
                                  f"{', '.join(OPERATOR_FIELDS)})")
    required, optional = OPERATOR_FIELDS[kind]
    for key in node:
        if key != 'kind' and key not in required and key not in optional:
            raise where.error(key, f"unknown key for kind {kind!r}")
    for key in required:
        if key not in node:
            raise SpecParseError(f"missing required key for kind {kind!r}", path=path,
                                 field=where.field(key))

    try:
        return _build(kind, node, where)
    except SpecParseError:
        raise
    except (ValueError, TypeError) as e:
        # constructor invariants (cardinal consistency, truncation bounds)
        raise SpecParseError(str(e), path=path, line=where.line('kind'), field=prefix) from None


def _build(kind: str, node: Mapping, where: _Where) -> StructuredOperator:
    if kind == 'dense':
        return Dense(_convert(where, 'matrix', value_format_yaml2matrix, node['matrix']))
    if kind == 'identity':
        return Dense(identity_operator(_integer(where, node, 'dim', minimum=1)))
    if kind == 'jordan':
        eigenvalue = _convert(where, 'eigenvalue', value_format_yaml2complex, node.get('eigenvalue', 0))
        return Dense(jordan_block(_integer(where, node, 'dim', minimum=1), eigenvalue))
    if kind == 'rotation':
        return Dense(rotation(_real(where, node, 'theta')))
    if kind == 'random_unitary':
        seed = _integer(where, node, 'seed') if 'seed' in node else 0
        return Dense(random_unitary(_integer(where, node, 'dim', minimum=1), seed))
    if kind == 'random_dense':
        dim = _integer(where, node, 'dim', minimum=1)
        rank = _integer(where, node, 'rank', minimum=0) if 'rank' in node else None
        seed = _integer(where, node, 'seed') if 'seed' in node else 0
        scale = _real(where, node, 'scale') if 'scale' in node else 1.0
        return Dense(random_dense(dim, rank, seed, scale))
    if kind == 'diagonal':
        return Diagonal(_complex_list(where, node, 'eigenvalues'),
                        _cardinal(where, node, 'kernel_dim'), _cardinal(where, node, 'cokernel_dim'))
    if kind in ('block_right_shift', 'block_left_shift'):
        fiber = _cardinal(where, node, 'fiber_dim')
        truncation = _truncation(where, node, fiber, 'fiber_truncation')
        blocks = _integer(where, node, 'block_truncation', minimum=1)
        cls = BlockRightShift if kind == 'block_right_shift' else BlockLeftShift
        return cls(fiber, truncation, blocks)
    if kind == 'multiplication':
        weights = None
        if 'sample_weights' in node:
            raw = node['sample_weights']
            if not isinstance(raw, list) or any(isinstance(w, bool) or not isinstance(w, (int, float))
                                                for w in raw):
                raise where.error('sample_weights', "expected a list of real numbers")
            weights = tuple(float(w) for w in raw)
        return Multiplication(_complex_list(where, node, 'sample_points'), weights,
                              _cardinal(where, node, 'kernel_dim'))
    if kind == 'volterra':
        return Volterra(_integer(where, node, 'grid_size', minimum=1))
    if kind == 'zero':
        space = _cardinal(where, node, 'space_dim')
        return Zero(space, _truncation(where, node, space, 'truncation'))
    if kind == 'compact':
        dense_range = node.get('dense_range', True)
        if not isinstance(dense_range, bool):
            raise where.error('dense_range', f"expected true or false, got {dense_range!r}")
        return Compact(_convert(where, 'matrix', value_format_yaml2matrix, node['matrix']),
                       _cardinal(where, node, 'kernel_dim', ZERO), dense_range)
    # direct_sum
    parts = node['parts']
    if not isinstance(parts, list) or not parts:
        raise where.error('parts', "expected a non-empty list of operators")
    return DirectSum(tuple(operator_from_dict(part, where.path, f"{where.field('parts')}[{i}]")
                           for i, part in enumerate(parts)))


def specfiles2dict(*spec_files: str) -> Tuple[Dict[str, Any], Dict[str, str]]:
    """
    Load and merge one or more spec files, in order.

    ``settings`` blocks are merged key by key with merge_dict; ``operator``,
    ``name`` and ``description`` are taken whole from the last file that has them.

    Returns:
        (merged tree, map from top-level key to the file it came from)

    Raises:
        FileNotFoundError: If a file doesn't exist
        ValueError: If no files are given
        SpecParseError: If a file has an unknown top-level or settings key
    """
    if not spec_files:
        raise ValueError("At least one spec file must be provided")

    result: Dict[str, Any] = {}
    origin: Dict[str, str] = {}
    for spec_file in spec_files:
        tree = load_yaml_tree(spec_file)
        for key in tree:
            if key not in TOP_LEVEL_KEYS:
                raise SpecParseError(f"unknown key (expected one of: {', '.join(TOP_LEVEL_KEYS)})",
                                     path=spec_file, line=tree.line_of(key), field=str(key))
        if 'settings' in tree:
            check_keys(tree['settings'] or {}, DEFAULT_SETTINGS, path=spec_file, prefix="settings.")
            result['settings'] = merge_dict(result.get('settings', {}), tree['settings'] or {})
        for key in ('operator', 'name', 'description'):
            if key in tree:
                result[key] = tree[key]
                origin[key] = spec_file
        logger.debug("Loaded spec file %s", spec_file)
    return result, origin


def specfiles2operator(*spec_files: str) -> StructuredOperator:
    """
    Read the structured operator described by one or more spec files.

    Raises:
        FileNotFoundError: If a file doesn't exist
        SpecParseError: If no file defines ``operator`` or the definition is invalid
    """
    return specfiles2job(*spec_files).operator


def specfiles2job(*spec_files: str) -> OperatorSpec:
    """
    Read operator, name, description and settings overrides from spec files.

    The name defaults to the stem of the first file.
    """
    tree, origin = specfiles2dict(*spec_files)
    if 'operator' not in tree:
        raise SpecParseError("no file defines 'operator'", path=spec_files[-1])
    operator = operator_from_dict(tree['operator'], path=origin['operator'])
    name = tree.get('name') or os.path.splitext(os.path.basename(spec_files[0]))[0]
    return OperatorSpec(operator=operator, name=str(name), description=str(tree.get('description') or ""),
                        settings=tree.get('settings', {}), sources=tuple(spec_files))
