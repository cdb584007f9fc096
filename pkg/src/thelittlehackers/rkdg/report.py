# MIT License
#
# Copyright (C) 2026 The Little Hackers.  All rights reserved.
#
# Permission is hereby granted, free of charge, to any person obtaining
# a copy of this software and associated documentation files (the
# "Software"), to deal in the Software without restriction, including
# without limitation the rights to use, copy, modify, merge, publish,
# distribute, sublicense, and/or sell copies of the Software, and to
# permit persons to whom the Software is furnished to do so, subject to
# the following conditions:
#
# The above copyright notice and this permission notice shall be
# included in all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND,
# EXPRESS OR IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF
# MERCHANTABILITY, FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT.
# IN NO EVENT SHALL THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY
# CLAIM, DAMAGES OR OTHER LIABILITY, WHETHER IN AN ACTION OF CONTRACT,
# TORT OR OTHERWISE, ARISING FROM, OUT OF OR IN CONNECTION WITH THE
# SOFTWARE OR THE USE OR OTHER DEALINGS IN THE SOFTWARE.

from __future__ import annotations

import hashlib
import json
import logging
import math
from os import PathLike
from pathlib import Path

import numpy as np

from thelittlehackers.rkdg.exception import InvalidInputError
from thelittlehackers.rkdg.mesh_basis import node_values
from thelittlehackers.rkdg.mesh_basis import quadrature_points
from thelittlehackers.rkdg.model.problem import RunArtifact
from thelittlehackers.rkdg.model.problem import RunComparison
from thelittlehackers.rkdg.model.problem import Snapshot
from thelittlehackers.rkdg.model.run_config import RunConfig
from thelittlehackers.rkdg.model.summary import RunSummary
from thelittlehackers.rkdg.model.summary import SnapshotSummary
from thelittlehackers.rkdg.model.version import get_package_version
from thelittlehackers.rkdg.utils.csv_utils import format_time
from thelittlehackers.rkdg.utils.csv_utils import log_h
from thelittlehackers.rkdg.utils.csv_utils import write_csv


SUMMARY_FILE_NAME = 'summary.json'
ERROR_BUDGET_FILE_NAME = 'error_budget.csv'

ERROR_BUDGET_HEADER = ('n', 't', 'tau', 'F', 'G', 'local_space', 'local_time', 'E_global', 'trusted')


def spatial_file_name(t: float) -> str:
    return f"indicators_spatial_{format_time(t)}.csv"


def temporal_file_name(t: float) -> str:
    return f"indicators_temporal_{format_time(t)}.csv"


def solution_file_name(t: float) -> str:
    return f"solution_{format_time(t)}.csv"


def spatial_header(p: int) -> list[str]:
    orders = range(p + 1)
    return (
        ['t', 'j']
        + [f"M{l}" for l in orders]
        + [f"J{l}" for l in orders]
        + [f"D{l}" for l in orders]
        + [f"loghJ{l}" for l in orders]
        + [f"signJ{l}" for l in orders]
    )


def temporal_header(k: int) -> list[str]:
    return ['t', 'j', 'node'] + [f"d{l}" for l in range(1, k + 2)]


def config_hash(cfg: RunConfig) -> str:
    canonical = json.dumps(cfg.model_dump(mode='json'), sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def _write_spatial(snapshot: Snapshot, path: Path) -> None:
    S = snapshot.spatial
    rows = (
        [snapshot.t, j]
        + list(S.M[j])
        + list(S.J[j])
        + list(S.D[j])
        + [log_h(value, S.h) for value in S.J[j]]
        + [int(np.sign(value)) for value in S.J[j]]
        for j in range(S.m)
    )
    write_csv(path, spatial_header(S.p), rows)


def _write_temporal(snapshot: Snapshot, path: Path) -> None:
    u = snapshot.solution
    T = snapshot.temporal
    fields = [node_values(u, field) for field in T.derivatives]
    rows = (
        [snapshot.t, j, node] + [field[j, node] for field in fields]
        for j in range(u.m)
        for node in range(u.basis.node_count)
    )
    write_csv(path, temporal_header(T.k), rows)


def _write_solution(snapshot: Snapshot, path: Path) -> None:
    u = snapshot.solution
    x = quadrature_points(u.mesh, u.basis)
    values = node_values(u)
    rows = (
        [snapshot.t, j, x[j, node], values[j, node]]
        for j in range(u.m)
        for node in range(u.basis.node_count)
    )
    write_csv(path, ['t', 'j', 'x', 'u'], rows)


def _write_error_budget(artifact: RunArtifact, path: Path) -> None:
    budget = artifact.budget
    rows = [[0, 0.0, None, None, None, 0.0, 0.0, budget.E_0, True]]
    rows += [
        [step.n, step.t, step.tau, step.F, step.G, step.local_space, step.local_time, step.E_global, step.trusted]
        for step in budget.steps
    ]
    write_csv(path, ERROR_BUDGET_HEADER, rows)


def summarize(artifact: RunArtifact) -> RunSummary:
    """
    Return the structured metadata of a run.
    """
    records = artifact.records
    order_count = artifact.config.k + 2
    max_d = [
        max((record.d_max[l] for record in records), default=0.0)
        for l in range(order_count)
    ]

    return RunSummary(
        package_version=get_package_version(),
        policy=artifact.policy,
        problem=artifact.problem_name,
        config=artifact.config.model_dump(mode='json'),
        config_hash=config_hash(artifact.config),
        step_count=artifact.step_count,
        aborted=artifact.aborted,
        abort_reason=artifact.abort_reason,
        E_0=artifact.budget.E_0,
        E_global=artifact.budget.E_global,
        trusted=artifact.budget.trusted,
        untrusted_step_count=sum(1 for step in artifact.budget.steps if not step.trusted),
        max_D_tilde=max((record.D_tilde for record in records), default=0.0),
        max_d=max_d,
        snapshots=[
            SnapshotSummary(
                t=snapshot.t,
                last_good=snapshot.last_good,
                D_tilde=snapshot.spatial.D_tilde,
                M_max=[float(value) for value in snapshot.spatial.M_max],
                J_max=[float(value) for value in snapshot.spatial.J_max],
                D_max=[float(value) for value in snapshot.spatial.D_max],
                d_max=list(snapshot.temporal.d_max)
            )
            for snapshot in artifact.snapshots
        ],
        elapsed_seconds=artifact.elapsed_seconds
    )


def emit_reports(artifact: RunArtifact, out_dir: PathLike | str) -> list[Path]:
    """
    Write the reports of a run into a directory:

    * ``indicators_spatial_<t>.csv``, ``indicators_temporal_<t>.csv`` and
      ``solution_<t>.csv`` for every snapshot;
    * ``error_budget.csv``, starting with the row of ``E_0``;
    * ``summary.json``.


    :param artifact: The run artifact, possibly of an aborted run.

    :param out_dir: The output directory, created if needed.


    :return: The paths of the written files.


    :raise InvalidInputError: If the directory can't be written.
    """
    out_path = Path(out_dir)
    try:
        out_path.mkdir(parents=True, exist_ok=True)
        paths = []
        for snapshot in artifact.snapshots:
            for file_name, writer in (
                    (spatial_file_name(snapshot.t), _write_spatial),
                    (temporal_file_name(snapshot.t), _write_temporal),
                    (solution_file_name(snapshot.t), _write_solution)
            ):
                writer(snapshot, out_path / file_name)
                paths.append(out_path / file_name)

        _write_error_budget(artifact, out_path / ERROR_BUDGET_FILE_NAME)
        paths.append(out_path / ERROR_BUDGET_FILE_NAME)

        summary_path = out_path / SUMMARY_FILE_NAME
        summary_path.write_text(summarize(artifact).model_dump_json(indent=2), encoding='utf-8')
        paths.append(summary_path)
    except OSError as error:
        raise InvalidInputError(f"Can't write the reports into {out_path}: {error}") from error

    logging.info(f"Wrote {len(paths)} report files into {out_path}")
    return paths


def load_summary(run_dir: PathLike | str) -> RunSummary:
    """
    Read the ``summary.json`` file of a run directory.


    :raise InvalidInputError: If the file is missing or malformed.
    """
    path = Path(run_dir) / SUMMARY_FILE_NAME
    try:
        return RunSummary.model_validate_json(path.read_text(encoding='utf-8'))
    except (OSError, ValueError) as error:
        raise InvalidInputError(f"Can't read the run summary {path}: {error}") from error


def compare_summaries(reference: RunSummary, other: RunSummary, t: float) -> RunComparison:
    """
    Compare the high-order indicators of two written runs at a common
    snapshot time.


    :raise InvalidInputError: If one of the runs has no snapshot at ``t``.
    """
    reference_snapshot = reference.snapshot_at(t)
    other_snapshot = other.snapshot_at(t)
    if reference_snapshot is None or other_snapshot is None:
        raise InvalidInputError(f"Both runs must have a snapshot at t={t}")

    return RunComparison(
        t=t,
        reference_temporal=reference_snapshot.d_max[-1],
        temporal=other_snapshot.d_max[-1],
        reference_jump=reference_snapshot.J_max[-1],
        jump=other_snapshot.J_max[-1]
    )


def format_summary(summary: RunSummary) -> str:
    """
    Return a human-readable table of a run summary.
    """
    lines = [
        f"problem            {summary.problem}",
        f"config hash        {summary.config_hash[:16]}",
        f"steps              {summary.step_count}",
        f"status             {'aborted: ' + summary.abort_reason if summary.aborted else 'completed'}",
        f"E_0                {summary.E_0:.6e}",
        f"E_global           {summary.E_global:.6e}",
        f"trusted            {'yes' if summary.trusted else f'no ({summary.untrusted_step_count} steps)'}",
        f"max D̃              {summary.max_D_tilde:.6e}",
    ]
    lines += [
        f"max |d{l}|{' ' * (11 - len(str(l)))}{value:.6e}"
        for l, value in enumerate(summary.max_d)
        if l > 0
    ]
    for snapshot in summary.snapshots:
        marker = ' (last good)' if snapshot.last_good else ''
        jumps = ' '.join(f"{value:.3e}" for value in snapshot.J_max)
        lines.append(f"t={snapshot.t:<8g}{marker} max|J^l| = {jumps}")
    return '\n'.join(lines)


def format_comparison(comparison: RunComparison) -> str:
    def ratio(value: float) -> str:
        return 'inf' if math.isinf(value) else f"{value:.3f}"

    return '\n'.join([
        f"t                         {comparison.t:g}",
        f"max |∂_t^(k+1) u| ratio   {ratio(comparison.temporal_ratio)}",
        f"max |J^p| ratio           {ratio(comparison.jump_ratio)}",
    ])
