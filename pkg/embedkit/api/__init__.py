#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
High-level API for embedkit.

This package contains the file-level API:
- spec_files: operator spec files in
- report_files: verdict, report, profile and summary files out
- corpus: the built-in demo corpus
"""

from .spec_files import OperatorSpec, operator_from_dict, specfiles2dict, specfiles2operator, specfiles2job
from .report_files import (
    verdict2yamlfile, report2yamlfile, profile2csvfile, convergence2csvfile, summary2csvfile,
    summary_row
)
from .corpus import DemoCase, demo_corpus

__all__ = [
    # Spec files
    'OperatorSpec',
    'operator_from_dict',
    'specfiles2dict',
    'specfiles2operator',
    'specfiles2job',

    # Report files
    'verdict2yamlfile',
    'report2yamlfile',
    'profile2csvfile',
    'convergence2csvfile',
    'summary2csvfile',
    'summary_row',

    # Demo corpus
    'DemoCase',
    'demo_corpus',
]
