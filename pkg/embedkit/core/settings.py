#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Settings handling for embedkit.

This module holds the default settings tree, the recursive dictionary merge
used to layer overrides on top of it, and the YAML loading helpers shared by
settings files and operator spec files. Loaded mappings remember the line
number of every key so strict parsing can point at the offending line.

本模块提供默认设置、字典合并以及带行号信息的 YAML 加载功能。
"""

import copy
import logging
import math
import os
from typing import Any, Dict, Mapping, Optional

import yaml

from .errors import SpecParseError

logger = logging.getLogger(__name__)


DEFAULT_SETTINGS: Dict[str, Any] = {
    'rank': {
        'tol': 'auto',
    },
    'contour': {
        'nodes': 256,
        'clearance': 1e-6,
        'branch_angle': None,
        'cluster_tol': 1e-6,
        'coincidence_radius': 5e-2,
        'coincidence_tol': 1e-8,
    },
    'sector': {
        'angles': [k * math.pi / 16 for k in range(1, 16)],
        'radii': [0.01, 0.1, 1.0, 10.0, 100.0],
        'rays': 8,
        'max_constant': 1e8,
    },
    'wold': {
        'depth': 8,
        'isometry_tol': 1e-8,
    },
    'embed': {
        'branch_offsets': None,
        'grid_per_block': None,
        'cluster_radius': None,
        'max_condition': 1e8,
        'volterra_min_grid': 16,
        'unitary_tol': 1e-8,
        'oracle_tol': 1e-6,
    },
    'tolerances': {
        'identity': 1e-10,
        'methods': {
            'dunford_log': {'endpoint': 1e-6, 'cocycle': 1e-6},
            'diagonal_branch': {'endpoint': 1e-6, 'cocycle': 1e-6},
            'unitary_spectral': {'endpoint': 1e-6, 'cocycle': 1e-6},
            'normal_spectral': {'endpoint': 1e-6, 'cocycle': 1e-6},
            'isometry_wold': {'endpoint': 1e-6, 'cocycle': 1e-6},
            'coisometry_adjoint': {'endpoint': 1e-6, 'cocycle': 1e-6},
            'shift_translation': {'endpoint': 1e-12, 'cocycle': 1e-12},
            'compact_riesz': {'endpoint': 1e-5, 'cocycle': 1e-5},
            'volterra_fractional': {'endpoint': 1e-12, 'cocycle': 1e-10},
            'nilpotent_shift': {'endpoint': 1e-12, 'cocycle': 1e-12},
            'direct_sum': {'endpoint': 1e-6, 'cocycle': 1e-6},
        },
    },
    'verify': {
        'samples': 10,
        'h_exponents': list(range(1, 11)),
        'random_vectors': 4,
        'seed': 0,
        'monotone_below': 2.0 ** -5,
        'monotone_slack': 0.25,
        'floor': 1e-12,
        'generator_h': 2.0 ** -10,
    },
    'limits': {
        'max_dense_dim': 4096,
    },
}


class MarkedDict(dict):
    """A dict that remembers the 1-based source line of each key."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.lines: Dict[Any, int] = {}

    def line_of(self, key: Any) -> Optional[int]:
        return self.lines.get(key)


class _MarkedLoader(yaml.SafeLoader):
    """SafeLoader producing MarkedDict mappings."""


def _construct_marked_mapping(loader: _MarkedLoader, node: yaml.MappingNode) -> MarkedDict:
    loader.flatten_mapping(node)
    mapping = MarkedDict()
    for key_node, value_node in node.value:
        key = loader.construct_object(key_node, deep=True)
        if key in mapping:
            raise SpecParseError(f"duplicate key {key!r}", line=key_node.start_mark.line + 1)
        mapping[key] = loader.construct_object(value_node, deep=True)
        mapping.lines[key] = key_node.start_mark.line + 1
    return mapping


_MarkedLoader.add_constructor(yaml.resolver.BaseResolver.DEFAULT_MAPPING_TAG, _construct_marked_mapping)


def merge_dict(dict1: Dict, dict2: Dict) -> Dict:
    """
    Recursively merge two dictionaries. If there are conflicts, values from dict2 will override dict1.
    Lists are replaced, not appended: a settings list such as the sector angles is one value.

    Args:
        dict1: First dictionary
        dict2: Second dictionary to merge into dict1

    Returns:
        Merged dictionary (dict1 and dict2 are left untouched)
    """
    result = copy.deepcopy(dict(dict1))

    for key, value in dict2.items():
        if key in result and isinstance(result[key], dict) and isinstance(value, dict):
            result[key] = merge_dict(result[key], value)
        else:
            result[key] = copy.deepcopy(value)

    return result


def load_yaml_tree(yaml_file: str) -> MarkedDict:
    """
    Load a YAML file into a MarkedDict tree.

    Args:
        yaml_file: Path to the YAML file

    Returns:
        Top-level mapping of the file (empty for an empty file)

    Raises:
        FileNotFoundError: If the file doesn't exist
        yaml.YAMLError: If the file is not valid YAML
        SpecParseError: If the top level is not a mapping or a key is duplicated
    """
    if not os.path.exists(yaml_file):
        raise FileNotFoundError(f"YAML file not found: {yaml_file}")

    with open(yaml_file, 'r', encoding='utf-8') as f:
        try:
            tree = yaml.load(f, Loader=_MarkedLoader)
        except SpecParseError as e:
            raise SpecParseError(str(e), path=yaml_file) from None

    if tree is None:
        return MarkedDict()
    if not isinstance(tree, dict):
        raise SpecParseError("top level must be a mapping", path=yaml_file, line=1)
    return tree


def check_keys(tree: Mapping, schema: Mapping, path: str = None, prefix: str = "") -> None:
    """
    Reject keys of ``tree`` that ``schema`` does not know, recursing into sub-mappings.

    A schema value that is itself a dict describes a nested section; anything else
    accepts an arbitrary value.

    Raises:
        SpecParseError: Naming the file, line and dotted field of the first unknown key
    """
    for key, value in tree.items():
        field = f"{prefix}{key}"
        line = tree.line_of(key) if isinstance(tree, MarkedDict) else None
        if key not in schema:
            raise SpecParseError(f"unknown key (expected one of: {', '.join(map(str, schema))})",
                                 path=path, line=line, field=field)
        expected = schema[key]
        if isinstance(expected, dict) and expected:
            if not isinstance(value, dict):
                raise SpecParseError("expected a mapping", path=path, line=line, field=field)
            check_keys(value, expected, path=path, prefix=f"{field}.")


def load_settings(*yaml_files: str, overrides: Optional[Dict] = None) -> Dict:
    """
    Build the effective settings: defaults, then each settings file, then overrides.

    A settings file either is a settings tree itself or carries one under a
    top-level ``settings`` key (so an operator spec file can be passed as well).

    Args:
        *yaml_files: Zero or more settings files, applied in order
        overrides: Optional dictionary applied last (CLI flags)

    Returns:
        Settings dictionary with the same shape as DEFAULT_SETTINGS

    Raises:
        FileNotFoundError: If any of the files doesn't exist
        SpecParseError: If a file contains an unknown settings key
    """
    result = copy.deepcopy(DEFAULT_SETTINGS)
    for yaml_file in yaml_files:
        tree = load_yaml_tree(yaml_file)
        if 'settings' in tree or 'operator' in tree:
            tree = tree.get('settings') or MarkedDict()
        check_keys(tree, DEFAULT_SETTINGS, path=yaml_file)
        result = merge_dict(result, tree)
        logger.debug("Applied settings from %s", yaml_file)

    if overrides:
        check_keys(overrides, DEFAULT_SETTINGS, prefix="")
        result = merge_dict(result, overrides)
    return result


def method_tolerances(settings: Dict, method: str) -> Dict[str, float]:
    """Endpoint/cocycle tolerances for a construction method tag."""
    methods = settings['tolerances']['methods']
    if method not in methods:
        raise KeyError(f"No tolerances configured for method '{method}'")
    return dict(methods[method])
