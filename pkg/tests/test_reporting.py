"""Tests for report generation functions."""

import csv

import pytest

from sdgkernel import (
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_SKIPPED,
    Scenario,
    SuiteResult,
    VerificationRecord,
    envelope_outcomes,
    generate_json_report,
    generate_report,
    read_jsonl,
    report_lines,
    run_suite,
    sample_sphere,
    write_envelope_csv,
    write_jsonl,
)
from sdgkernel.reporting import ENVELOPE_FIELDS


@pytest.fixture
def mixed_result():
    """Two passing records, one failure and one skipped scene record."""
    scenario = Scenario(name='mixed', dim=2, seed=7, trials=2)
    records = [
        VerificationRecord('obtuse-triangle', 0, STATUS_PASS, seed=7, witness={'attempt': 0}, elapsed_ms=1.5),
        VerificationRecord('obtuse-triangle', 1, STATUS_PASS, seed=7, witness={'attempt': 0}, elapsed_ms=2.0),
        VerificationRecord(
            'external-touching', 0, STATUS_FAIL, seed=7,
            witness={'attempt': 0, 'error': 'CheckFailure', 'message': 'negative control accepted',
                     'inputs': {'bad': 'S((3), (2))'}},
            elapsed_ms=4.25,
        ),
        VerificationRecord('scene:triangle', 0, STATUS_SKIPPED, witness={'error': 'UsageError'}),
    ]
    return SuiteResult(scenario, records)


class TestSummary:
    """Summary counts and exit codes."""

    def test_counts(self, mixed_result):
        s = mixed_result.summary()
        assert s['total'] == 4
        assert s['passed'] == 2
        assert s['failed'] == 1
        assert s['skipped_degenerate'] == 1
        assert s['exit_code'] == 1

    def test_skipped_does_not_fail(self):
        result = SuiteResult(Scenario(), [VerificationRecord('scene:triangle', 0, STATUS_SKIPPED)])
        assert result.exit_code == 0


class TestGenerateReport:
    """Tests for text report generation."""

    def test_report_contains_header(self, mixed_result):
        report = generate_report(mixed_result)
        assert 'SDG VERIFICATION REPORT' in report
        assert 'Scenario: mixed' in report
        assert 'Seed: 7' in report

    def test_report_lists_checks(self, mixed_result):
        report = generate_report(mixed_result)
        assert '1. CHECKS' in report
        assert 'obtuse-triangle' in report
        assert '[FAIL]' in report

    def test_report_shows_witness(self, mixed_result):
        report = generate_report(mixed_result)
        assert '2. FAILURES' in report
        assert 'CheckFailure: negative control accepted' in report
        assert 'bad = S((3), (2))' in report
        assert 'SUMMARY: FAIL' in report

    def test_clean_report(self):
        report = generate_report(SuiteResult(Scenario(trials=0)))
        assert 'No records.' in report
        assert '[GOOD] No failing records.' in report
        assert 'SUMMARY: PASS' in report


class TestJsonReport:
    """JSON lines output."""

    def test_field_order(self, mixed_result):
        row = generate_json_report(mixed_result)['records'][0]
        assert list(row) == ['check_id', 'trial', 'status', 'dim', 'seed', 'witness', 'elapsed_ms']

    def test_summary_is_last_line(self, mixed_result, tmp_path):
        path = write_jsonl(tmp_path / 'out.jsonl', mixed_result)
        rows = read_jsonl(path)
        assert len(rows) == 5
        assert rows[-1]['summary'] is True
        assert rows[-1]['exit_code'] == 1
        assert rows[2]['witness']['inputs'] == {'bad': 'S((3), (2))'}

    def test_timing_can_be_dropped(self, mixed_result):
        assert all('elapsed_ms' not in line for line in report_lines(mixed_result, timing=False))

    def test_identical_runs_give_identical_bytes(self, tmp_path):
        scenario = Scenario(trials=2, seed=3, checks=['obtuse-triangle', 'ray-semigroup'])
        first = write_jsonl(tmp_path / 'a.jsonl', SuiteResult(scenario, run_suite(scenario)), timing=False)
        second = write_jsonl(tmp_path / 'b.jsonl', SuiteResult(scenario, run_suite(scenario)), timing=False)
        assert first.read_bytes() == second.read_bytes()


class TestEnvelopeCsv:
    """Per-sample envelope dumps."""

    def test_rows(self, origin, tmp_path):
        outcomes = envelope_outcomes(sample_sphere(origin, 2, 4), 1)
        path = write_envelope_csv(tmp_path / 'env.csv', [('circle', '1', outcomes)])
        with open(path, newline='', encoding='utf-8') as f:
            rows = list(csv.reader(f))
        assert tuple(rows[0]) == ENVELOPE_FIELDS
        assert len(rows) == 5
        assert rows[1][0] == 'circle'
        assert rows[1][-1] == 'True'
