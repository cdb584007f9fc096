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

import json

import pytest

from thelittlehackers.rkdg.exception import InvalidInputError
from thelittlehackers.rkdg.experiments import build_config
from thelittlehackers.rkdg.experiments import example_1
from thelittlehackers.rkdg.experiments import run_simulation
from thelittlehackers.rkdg.model.version import Version
from thelittlehackers.rkdg.report import ERROR_BUDGET_FILE_NAME
from thelittlehackers.rkdg.report import ERROR_BUDGET_HEADER
from thelittlehackers.rkdg.report import SUMMARY_FILE_NAME
from thelittlehackers.rkdg.report import compare_summaries
from thelittlehackers.rkdg.report import config_hash
from thelittlehackers.rkdg.report import emit_reports
from thelittlehackers.rkdg.report import format_comparison
from thelittlehackers.rkdg.report import format_summary
from thelittlehackers.rkdg.report import load_summary
from thelittlehackers.rkdg.report import solution_file_name
from thelittlehackers.rkdg.report import spatial_file_name
from thelittlehackers.rkdg.report import spatial_header
from thelittlehackers.rkdg.report import summarize
from thelittlehackers.rkdg.report import temporal_file_name
from thelittlehackers.rkdg.report import temporal_header
from thelittlehackers.rkdg.utils.csv_utils import read_columns
from thelittlehackers.rkdg.utils.csv_utils import read_csv


@pytest.fixture(scope='module')
def short_run():
    problem = example_1()
    return run_simulation(problem, build_config(problem, T_final=0.05))


def test_file_names():
    assert spatial_file_name(0.05) == 'indicators_spatial_0.05.csv'
    assert temporal_file_name(2.0) == 'indicators_temporal_2.0.csv'
    assert solution_file_name(1.05) == 'solution_1.05.csv'


def test_headers():
    assert spatial_header(1) == [
        't', 'j', 'M0', 'M1', 'J0', 'J1', 'D0', 'D1', 'loghJ0', 'loghJ1', 'signJ0', 'signJ1'
    ]
    assert temporal_header(3) == ['t', 'j', 'node', 'd1', 'd2', 'd3', 'd4']


def test_emit_reports_writes_every_file(short_run, tmp_path):
    paths = emit_reports(short_run, tmp_path / 'run')

    assert sorted(path.name for path in paths) == sorted([
        'indicators_spatial_0.05.csv',
        'indicators_temporal_0.05.csv',
        'solution_0.05.csv',
        ERROR_BUDGET_FILE_NAME,
        SUMMARY_FILE_NAME,
    ])
    assert all(path.is_file() for path in paths)


def test_snapshot_files_have_a_row_per_cell_and_node(short_run, tmp_path):
    emit_reports(short_run, tmp_path)
    u = short_run.final_snapshot.solution
    node_count = u.basis.node_count

    header, rows = read_csv(tmp_path / 'indicators_spatial_0.05.csv')
    assert header == spatial_header(3)
    assert len(rows) == 200

    header, rows = read_csv(tmp_path / 'indicators_temporal_0.05.csv')
    assert header == temporal_header(3)
    assert len(rows) == 200 * node_count

    header, rows = read_csv(tmp_path / 'solution_0.05.csv')
    assert header == ['t', 'j', 'x', 'u']
    assert len(rows) == 200 * node_count
    assert all(0.0 < float(row[2]) < 10.0 for row in rows)


def test_spatial_indicators_are_written_exactly(short_run, tmp_path):
    emit_reports(short_run, tmp_path)
    S = short_run.final_snapshot.spatial
    jumps = read_columns(tmp_path / 'indicators_spatial_0.05.csv', 'J')
    assert len(jumps) == S.m
    for j in (0, 57, S.m - 1):
        assert jumps[j] == [float(value) for value in S.J[j]]


def test_error_budget_file(short_run, tmp_path):
    emit_reports(short_run, tmp_path)
    header, rows = read_csv(tmp_path / ERROR_BUDGET_FILE_NAME)

    assert header == list(ERROR_BUDGET_HEADER)
    assert len(rows) == short_run.step_count + 1
    assert float(rows[0][7]) == short_run.budget.E_0
    assert rows[0][2] == ''
    assert float(rows[-1][7]) == short_run.budget.E_global
    assert all(row[8] == 'true' for row in rows)

    E_global = [float(row[7]) for row in rows]
    assert E_global == sorted(E_global)


def test_reports_of_identical_runs_are_identical(tmp_path):
    problem = example_1()
    cfg = build_config(problem, T_final=0.05)
    first = emit_reports(run_simulation(problem, cfg), tmp_path / 'first')
    second = emit_reports(run_simulation(problem, cfg), tmp_path / 'second')

    assert [path.name for path in first] == [path.name for path in second]
    for first_path, second_path in zip(first, second):
        if first_path.name == SUMMARY_FILE_NAME:
            first_summary = json.loads(first_path.read_text(encoding='utf-8'))
            second_summary = json.loads(second_path.read_text(encoding='utf-8'))
            del first_summary['elapsed_seconds'], second_summary['elapsed_seconds']
            assert first_summary == second_summary
        else:
            assert first_path.read_bytes() == second_path.read_bytes()


def test_aborted_run_still_writes_its_reports(tmp_path):
    problem = example_1()
    artifact = run_simulation(problem, build_config(problem, tau_fixed=0.5, output_times=()))
    assert artifact.aborted

    emit_reports(artifact, tmp_path)
    summary = load_summary(tmp_path)
    assert summary.aborted
    assert summary.abort_reason
    assert [snapshot.last_good for snapshot in summary.snapshots] == [True]
    assert (tmp_path / ERROR_BUDGET_FILE_NAME).is_file()
    assert 'aborted' in format_summary(summary)


def test_summary(short_run):
    summary = summarize(short_run)

    Version.from_string(summary.package_version)
    assert summary.problem == 'example_1'
    assert summary.config_hash == config_hash(short_run.config)
    assert len(summary.config_hash) == 64
    assert summary.step_count == 10
    assert not summary.aborted
    assert summary.trusted
    assert summary.untrusted_step_count == 0
    assert len(summary.max_d) == short_run.config.k + 2
    assert summary.snapshot_at(0.05) is not None
    assert summary.snapshot_at(0.5) is None


def test_config_hash_is_deterministic():
    problem = example_1()
    assert config_hash(build_config(problem)) == config_hash(build_config(problem))
    assert config_hash(build_config(problem)) != config_hash(build_config(problem, T_final=1.0))


def test_summary_is_written_as_json(short_run, tmp_path):
    emit_reports(short_run, tmp_path)
    data = json.loads((tmp_path / SUMMARY_FILE_NAME).read_text(encoding='utf-8'))
    assert data['config']['p'] == 3
    assert data['E_global'] == short_run.budget.E_global

    summary = load_summary(tmp_path)
    assert summary == summarize(short_run).model_copy(update={'package_version': summary.package_version})


def test_emit_reports_into_an_unwritable_path(short_run, tmp_path):
    path = tmp_path / 'file'
    path.write_text('', encoding='utf-8')
    with pytest.raises(InvalidInputError):
        emit_reports(short_run, path)


def test_load_summary_errors(tmp_path):
    with pytest.raises(InvalidInputError):
        load_summary(tmp_path)

    (tmp_path / SUMMARY_FILE_NAME).write_text('{"problem": ', encoding='utf-8')
    with pytest.raises(InvalidInputError):
        load_summary(tmp_path)


def test_compare_summaries(short_run):
    summary = summarize(short_run)
    comparison = compare_summaries(summary, summary, 0.05)
    assert comparison.temporal_ratio == pytest.approx(1.0)
    assert comparison.jump_ratio == pytest.approx(1.0)
    assert '1.000' in format_comparison(comparison)

    with pytest.raises(InvalidInputError):
        compare_summaries(summary, summary, 1.0)


def test_format_summary(short_run):
    text = format_summary(summarize(short_run))
    assert 'example_1' in text
    assert 'completed' in text
    assert 't=0.05' in text
