#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Report file API for embedkit.

This module writes the results of a job to disk: the verdict file, the full
report (YAML body followed by a second YAML document with the machine-readable
summary), the strong-continuity profile and the generator convergence table as
CSV, and the demo summary table. Output is deterministic: no timestamps, keys
in a fixed order, floats written with full precision.

本模块负责将判定结果、验证报告以及连续性剖面等写入文件。
"""

import csv
import logging
import os
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import yaml

from ..core.embed import EmbeddabilityVerdict
from ..core.operators import StructuredOperator
from ..core.semigroup import SemigroupRealization
from ..core.value_converter import value_format_py2yaml
from ..core.verify import VerificationReport
from ..core.wold import WoldDecomposition, WoldResiduals

logger = logging.getLogger(__name__)

HEADER = "# Generated by embedkit\n"

SUMMARY_COLUMNS = ('name', 'operator', 'status', 'method', 'realization', 'endpoint_residual',
                   'cocycle_residual_max', 'identity_residual', 'pass')


def _dump(data: Any, f) -> None:
    yaml.safe_dump(value_format_py2yaml(data), f, default_flow_style=False, sort_keys=False,
                   allow_unicode=True)


def _ensure_parent(output_file: str) -> None:
    parent = os.path.dirname(os.path.abspath(output_file))
    os.makedirs(parent, exist_ok=True)


def operator_section(op: StructuredOperator) -> Dict[str, Any]:
    """Kind, size, symbolic tags and declared cardinals of an operator."""
    section = {"kind": op.kind, "size": op.size()}
    section.update(op.tags())
    defect = op.declared_defect()
    if defect is not None:
        section["declared_kernel_dim"] = str(defect[0])
        section["declared_cokernel_dim"] = str(defect[1])
    return section


def wold_section(decomposition: WoldDecomposition, residuals: Optional[WoldResiduals] = None) -> Dict[str, Any]:
    """Dimensions, residuals and the basis bundle (as columns) of a Wold decomposition."""
    orthogonality, invariance = decomposition.residuals
    section = {"unitary_dim": decomposition.unitary_dim,
               "wandering_dim": decomposition.wandering_dim,
               "multiplicity": str(decomposition.multiplicity),
               "depth_used": decomposition.depth_used,
               "residuals": {"orthogonality": orthogonality, "invariance": invariance},
               "bases": {"unitary": decomposition.unitary_basis,
                         "wandering": decomposition.wandering_basis}}
    if residuals is not None:
        section["residuals"] = residuals.to_dict()
    return section


def summary_row(name: str, op: StructuredOperator, verdict: EmbeddabilityVerdict,
                report: Optional[VerificationReport] = None,
                realization: Optional[SemigroupRealization] = None) -> Dict[str, Any]:
    """One row of the demo summary table."""
    built = ""
    if realization is not None:
        built = str(getattr(realization.method, "value", realization.method))
    row = {"name": name, "operator": op.kind, "status": verdict.status.value,
           "method": verdict.method.value if verdict.method is not None else "",
           "realization": built,
           "endpoint_residual": "", "cocycle_residual_max": "", "identity_residual": "", "pass": ""}
    if report is not None:
        row.update({"endpoint_residual": repr(report.endpoint_residual),
                    "cocycle_residual_max": repr(report.cocycle_residual_max),
                    "identity_residual": repr(report.identity_residual),
                    "pass": "true" if report.passed else "false"})
    return row


def verdict2yamlfile(verdict: EmbeddabilityVerdict, op: StructuredOperator, output_file: str,
                     name: str = "", sources: Sequence[str] = ()) -> None:
    """
    Write the verdict file of a classification.

    Args:
        verdict: The classification result
        op: The classified operator
        output_file: Path to the output YAML file
        name: Job name recorded in the file
        sources: Spec files the operator was read from
    """
    _ensure_parent(output_file)
    data = {"name": name, "sources": [os.path.basename(s) for s in sources],
            "operator": operator_section(op), "verdict": verdict.to_dict()}
    with open(output_file, 'w', encoding='utf-8') as f:
        f.write(HEADER)
        _dump(data, f)
    logger.info("Wrote verdict file %s", output_file)


def report2yamlfile(output_file: str, name: str, op: StructuredOperator, verdict: EmbeddabilityVerdict,
                    realization: Optional[SemigroupRealization] = None,
                    report: Optional[VerificationReport] = None,
                    wold: Optional[WoldDecomposition] = None,
                    wold_residuals: Optional[WoldResiduals] = None,
                    settings: Optional[Dict] = None) -> None:
    """
    Write the full report of an embed/verify job.

    The first YAML document holds operator, verdict, realization metadata,
    verification residuals and the effective settings; the second one is a flat
    summary for scripts (``yaml.safe_load_all`` reads both).
    """
    _ensure_parent(output_file)
    body: Dict[str, Any] = {"name": name, "operator": operator_section(op), "verdict": verdict.to_dict()}
    if realization is not None:
        body["realization"] = realization.describe()
    if wold is not None:
        body["wold"] = wold_section(wold, wold_residuals)
    if report is not None:
        body["verification"] = report.to_dict()
    if settings is not None:
        body["settings"] = settings

    footer = summary_row(name, op, verdict, report, realization)
    with open(output_file, 'w', encoding='utf-8') as f:
        f.write(HEADER)
        _dump(body, f)
        f.write("---\n")
        _dump({"summary": footer}, f)
    logger.info("Wrote report file %s", output_file)


def profile2csvfile(profile: Iterable[Tuple[float, float]], output_file: str) -> None:
    """Write a strong-continuity profile as ``h,continuity_sup`` rows."""
    _ensure_parent(output_file)
    with open(output_file, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(['h', 'continuity_sup'])
        for h, value in profile:
            writer.writerow([repr(float(h)), repr(float(value))])
    logger.info("Wrote continuity profile %s", output_file)


def convergence2csvfile(table: Iterable[Tuple[float, float, Optional[float]]], output_file: str) -> None:
    """Write a generator convergence table as ``h,residual,ratio`` rows (empty ratio on the first row)."""
    _ensure_parent(output_file)
    with open(output_file, 'w', encoding='utf-8', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(['h', 'residual', 'ratio'])
        for h, residual, ratio in table:
            writer.writerow([repr(float(h)), repr(float(residual)), "" if ratio is None else repr(float(ratio))])
    logger.info("Wrote generator convergence table %s", output_file)


def summary2csvfile(rows: List[Dict[str, Any]], output_file: str) -> None:
    """Write the demo summary table."""
    _ensure_parent(output_file)
    with open(output_file, 'w', encoding='utf-8', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=SUMMARY_COLUMNS, lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    logger.info("Wrote summary table %s (%d rows)", output_file, len(rows))
