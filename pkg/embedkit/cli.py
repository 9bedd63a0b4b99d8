#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Command-line interface for embedkit.

Subcommands:

    embedkit classify SPEC [SPEC ...]   verdict file
    embedkit embed SPEC [SPEC ...]      verdict + report (always verified)
    embedkit verify SPEC [SPEC ...]     report + continuity profile + generator convergence table
    embedkit sweep SPEC [SPEC ...]      continuity profile only
    embedkit demo                       built-in corpus, summary table

Exit status: 0 when every requested verification passes (a NotEmbeddable
verdict is a successful classification), 1 when a verification fails, 2 for
input errors, 3 for numerical failures and violated construction hypotheses.

命令行接口：分类、嵌入、验证、连续性扫描以及内置演示。
"""

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import yaml

from .api.corpus import demo_corpus
from .api.report_files import (
    convergence2csvfile, profile2csvfile, report2yamlfile, summary2csvfile, summary_row, verdict2yamlfile
)
from .api.spec_files import specfiles2job
from .core.embed import EmbeddabilityVerdict, EmbeddingMethod, classify, embed
from .core.errors import (
    ContourError, HypothesisError, InadmissibleTimeError, NumericalError, ResourceLimitError, SpecParseError
)
from .core.operators import StructuredOperator, materialize
from .core.semigroup import SemigroupRealization
from .core.settings import load_settings, merge_dict
from .core.verify import VerificationReport, check_embedding, default_h_list, generator_convergence
from .core.wold import orbit_depth, wold_decompose, wold_verify

logger = logging.getLogger(__name__)

COMMANDS = ('classify', 'embed', 'verify', 'sweep', 'demo')

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_NUMERICAL_ERROR = 3


@dataclass
class JobConfig:
    """One CLI invocation. ``None`` leaves the corresponding setting alone."""

    command: str
    inputs: Tuple[str, ...] = ()
    output_dir: str = "."
    config_files: Tuple[str, ...] = ()
    tolerance: Optional[float] = None
    rank_tol: Optional[float] = None
    nodes: Optional[int] = None
    grid: Optional[int] = None
    branch_offsets: Optional[Tuple[int, ...]] = None
    depth: Optional[int] = None
    seed: Optional[int] = None

    def overrides(self) -> Dict[str, Any]:
        """Settings overrides for the flags that were given."""
        result: Dict[str, Any] = {}
        if self.rank_tol is not None:
            result['rank'] = {'tol': self.rank_tol}
        if self.nodes is not None:
            result['contour'] = {'nodes': self.nodes}
        embed_cfg = {}
        if self.grid is not None:
            embed_cfg['grid_per_block'] = self.grid
        if self.branch_offsets is not None:
            embed_cfg['branch_offsets'] = list(self.branch_offsets)
        if embed_cfg:
            result['embed'] = embed_cfg
        if self.depth is not None:
            result['wold'] = {'depth': self.depth}
        if self.seed is not None:
            result['verify'] = {'seed': self.seed}
        return result

    def tolerances(self) -> Optional[Dict[str, float]]:
        """Endpoint/cocycle thresholds from ``--tol``, replacing the method defaults."""
        if self.tolerance is None:
            return None
        return {'endpoint': self.tolerance, 'cocycle': self.tolerance}


@dataclass
class _Outcome:
    verdict: EmbeddabilityVerdict
    realization: Optional[SemigroupRealization] = None
    report: Optional[VerificationReport] = None


def _effective_settings(config: JobConfig, spec_settings: Dict) -> Dict:
    return load_settings(*config.config_files, overrides=merge_dict(spec_settings, config.overrides()))


def _wold_parts(op: StructuredOperator, verdict: EmbeddabilityVerdict, settings: Dict):
    if verdict.method is not EmbeddingMethod.ISOMETRY_WOLD:
        return None, None
    depth = orbit_depth(op, settings['wold']['depth'])
    decomposition = wold_decompose(op, depth, isometry_tol=settings['wold']['isometry_tol'],
                                   tol=settings['rank']['tol'])
    return decomposition, wold_verify(op, decomposition)


def _embed_and_verify(op: StructuredOperator, settings: Dict, config: JobConfig) -> _Outcome:
    verdict, realization = embed(op, settings)
    if realization is None:
        return _Outcome(verdict)
    target = materialize(op, settings['limits']['max_dense_dim'])
    report = check_embedding(realization, target, tolerances=config.tolerances(), settings=settings)
    return _Outcome(verdict, realization, report)


def _print(line: str) -> None:
    sys.stdout.write(line + "\n")


def _describe(name: str, outcome: _Outcome) -> str:
    text = f"{name}: {outcome.verdict.status.value} ({outcome.verdict.reason})"
    if outcome.report is not None:
        text += ", verification " + ("passed" if outcome.report.passed else "FAILED")
    return text


def _run_spec(config: JobConfig) -> int:
    job = specfiles2job(*config.inputs)
    settings = _effective_settings(config, job.settings)
    stem = os.path.join(config.output_dir, job.name)
    op = job.operator

    if config.command == 'classify':
        verdict = classify(op, settings)
        verdict2yamlfile(verdict, op, f"{stem}.verdict.yaml", name=job.name, sources=job.sources)
        _print(_describe(job.name, _Outcome(verdict)))
        return EXIT_OK

    outcome = _embed_and_verify(op, settings, config)
    verdict2yamlfile(outcome.verdict, op, f"{stem}.verdict.yaml", name=job.name, sources=job.sources)
    _print(_describe(job.name, outcome))
    if outcome.realization is None:
        return EXIT_OK

    if config.command in ('embed', 'verify'):
        wold, wold_residuals = _wold_parts(op, outcome.verdict, settings)
        report2yamlfile(f"{stem}.report.yaml", job.name, op, outcome.verdict, outcome.realization,
                        outcome.report, wold=wold, wold_residuals=wold_residuals, settings=settings)
    if config.command in ('verify', 'sweep'):
        profile2csvfile(outcome.report.continuity_profile, f"{stem}.continuity.csv")
    if config.command == 'verify' and outcome.realization.generator is not None \
            and not outcome.realization.times.is_grid:
        h_list = default_h_list(outcome.realization, settings)
        convergence2csvfile(generator_convergence(outcome.realization, h_list), f"{stem}.generator.csv")
    if config.command == 'sweep':
        return EXIT_OK
    return EXIT_OK if outcome.report.passed else EXIT_VERIFICATION_FAILED


def _run_demo(config: JobConfig) -> int:
    rows: List[Dict[str, Any]] = []
    failed = 0
    for case in demo_corpus():
        settings = _effective_settings(config, case.overrides)
        outcome = _embed_and_verify(case.operator, settings, config)
        rows.append(summary_row(case.name, case.operator, outcome.verdict, outcome.report, outcome.realization))
        report2yamlfile(os.path.join(config.output_dir, "demo", f"{case.name}.report.yaml"), case.name,
                        case.operator, outcome.verdict, outcome.realization, outcome.report)
        _print(_describe(case.name, outcome))
        if outcome.verdict.status.value != case.expected_status:
            logger.error("%s: expected %s, got %s", case.name, case.expected_status, outcome.verdict.status.value)
            failed += 1
        elif outcome.report is not None and not outcome.report.passed:
            failed += 1
    summary2csvfile(rows, os.path.join(config.output_dir, "demo_summary.csv"))
    if failed:
        logger.error("%d of %d demo case(s) failed", failed, len(rows))
        return EXIT_VERIFICATION_FAILED
    return EXIT_OK


def run(config: JobConfig) -> int:
    """
    Run one job and write its files under ``config.output_dir``.

    Returns:
        Exit status (see the module docstring)
    """
    if config.command not in COMMANDS:
        raise ValueError(f"unknown command {config.command!r} (expected one of: {', '.join(COMMANDS)})")
    try:
        os.makedirs(config.output_dir, exist_ok=True)
        if config.command == 'demo':
            return _run_demo(config)
        return _run_spec(config)
    except (NumericalError, ContourError, HypothesisError, ResourceLimitError, InadmissibleTimeError,
            np.linalg.LinAlgError, OverflowError) as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_NUMERICAL_ERROR
    except (SpecParseError, FileNotFoundError, yaml.YAMLError, ValueError) as e:
        # ValueError: inconsistent settings, such as branch offsets that do not fit the operator
        logger.error("%s", e)
        return EXIT_INPUT_ERROR


def _branch_offsets(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(',') if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--out', dest='output_dir', default='.', help='output directory (created if missing)')
    common.add_argument('--config', dest='config_files', action='append', default=[],
                        help='settings file applied before the spec files (repeatable)')
    common.add_argument('--tol', dest='tolerance', type=float,
                        help='endpoint and cocycle tolerance, replacing the method defaults')
    common.add_argument('--rank-tol', dest='rank_tol', type=float, help='absolute rank tolerance')
    common.add_argument('--nodes', type=int, help='quadrature nodes per contour circle')
    common.add_argument('--grid', type=int, help='grid cells per block for shift translations')
    common.add_argument('--branch', dest='branch_offsets', type=_branch_offsets,
                        help='branch offsets k1,k2,... (one per eigenvalue, or a single rescaling offset)')
    common.add_argument('--depth', type=int, help='Wold decomposition depth')
    common.add_argument('--seed', type=int, help='seed of the random test vectors')
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO, -vv for DEBUG')

    parser = argparse.ArgumentParser(
        prog='embedkit',
        description='Classify operators by embeddability into C0-semigroups, construct and verify the embeddings.'
    )
    subparsers = parser.add_subparsers(dest='command', required=True)
    helps = {'classify': 'write the embeddability verdict',
             'embed': 'construct the semigroup and verify it',
             'verify': 'construct, verify and write continuity and generator tables',
             'sweep': 'write the strong-continuity profile'}
    for command, help_text in helps.items():
        sub = subparsers.add_parser(command, parents=[common], help=help_text)
        sub.add_argument('inputs', nargs='+', metavar='SPEC', help='operator spec file(s), merged in order')
    subparsers.add_parser('demo', parents=[common], help='run the built-in corpus')
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')
    config = JobConfig(command=args.command, inputs=tuple(getattr(args, 'inputs', ()) or ()),
                       output_dir=args.output_dir, config_files=tuple(args.config_files),
                       tolerance=args.tolerance, rank_tol=args.rank_tol, nodes=args.nodes, grid=args.grid,
                       branch_offsets=args.branch_offsets, depth=args.depth, seed=args.seed)
    return run(config)


if __name__ == '__main__':
    sys.exit(main())
