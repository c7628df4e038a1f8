"""Report generation: JSON lines, a text report and envelope CSV dumps.

The JSONL report is the diffable artifact: one record per line in stable
field order, then the summary object. The text report is for the console.
"""

import csv
import json
import logging
from collections import OrderedDict
from pathlib import Path

from .models import STATUS_FAIL, STATUS_PASS, STATUS_SKIPPED, SuiteResult

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# JSON lines
# ---------------------------------------------------------------------------

def report_lines(result: SuiteResult, timing: bool = True) -> list[str]:
    """One JSON document per record plus the trailing summary."""
    lines = [json.dumps(r.to_dict(timing), ensure_ascii=False) for r in result.records]
    lines.append(json.dumps(result.summary(), ensure_ascii=False))
    return lines


def generate_json_report(result: SuiteResult, timing: bool = True) -> dict:
    return {
        'records': [r.to_dict(timing) for r in result.records],
        'summary': result.summary(),
    }


def write_jsonl(path, result: SuiteResult, timing: bool = True) -> Path:
    path = Path(path)
    path.write_text('\n'.join(report_lines(result, timing)) + '\n', encoding='utf-8')
    log.info('Report saved to: %s', path)
    return path


def read_jsonl(path) -> list[dict]:
    rows = []
    with open(path, encoding='utf-8') as f:
        for line in f:
            line = line.strip()
            if line:
                rows.append(json.loads(line))
    return rows


# ---------------------------------------------------------------------------
# Text report sections
# ---------------------------------------------------------------------------

def _per_check(result: SuiteResult) -> 'OrderedDict[str, dict]':
    table: OrderedDict = OrderedDict()
    for r in result.records:
        row = table.setdefault(r.check_id, {STATUS_PASS: 0, STATUS_FAIL: 0, STATUS_SKIPPED: 0, 'ms': 0.0})
        row[r.status] += 1
        row['ms'] += r.elapsed_ms
    return table


def _section_header(result: SuiteResult) -> list[str]:
    s = result.scenario
    return [
        '=' * 65,
        '              SDG VERIFICATION REPORT',
        '=' * 65,
        f'Scenario: {s.name}',
        f'Dimension: {s.dim}',
        f'Seed: {s.seed}',
        f'Trials per check: {s.trials}',
        f'Negative controls asserted: {"yes" if s.corrupt else "no"}',
        '',
    ]


def _section_checks(result: SuiteResult) -> list[str]:
    lines = [
        '-' * 65,
        '1. CHECKS',
        '-' * 65,
    ]
    table = _per_check(result)
    if not table:
        lines += ['No records.', '']
        return lines
    width = max(len(k) for k in table)
    lines.append(f'  {"check".ljust(width)}  pass  fail  skip     ms')
    for check_id, row in table.items():
        mark = '[OK]' if not row[STATUS_FAIL] else '[FAIL]'
        lines.append(
            f'  {check_id.ljust(width)}  {row[STATUS_PASS]:4d}  {row[STATUS_FAIL]:4d}'
            f'  {row[STATUS_SKIPPED]:4d}  {row["ms"]:7.0f}  {mark}'
        )
    lines.append('')
    return lines


def _section_failures(result: SuiteResult, limit: int = 10) -> list[str]:
    failures = result.failures
    lines = [
        '-' * 65,
        '2. FAILURES',
        '-' * 65,
    ]
    if not failures:
        lines += ['[GOOD] No failing records.', '']
        return lines
    for r in failures[:limit]:
        w = r.witness
        lines.append(f'  {r.check_id} trial {r.trial} (dim {r.dim}, seed {r.seed})')
        lines.append(f'     -> {w.get("error", "?")}: {w.get("message", "")}')
        for key, value in (w.get('inputs') or {}).items():
            lines.append(f'        {key} = {value}')
        lines.append('')
    if len(failures) > limit:
        lines.append(f'  ... and {len(failures) - limit} more failing records')
        lines.append('')
    return lines


def _section_summary(result: SuiteResult) -> list[str]:
    s = result.summary()
    verdict = 'PASS' if s['exit_code'] == 0 else 'FAIL'
    return [
        '=' * 65,
        f'              SUMMARY: {verdict}',
        '=' * 65,
        f'Total records: {s["total"]}',
        f'Passed: {s["passed"]}',
        f'Failed: {s["failed"]}',
        f'Skipped (degenerate scene input): {s["skipped_degenerate"]}',
        f'Exit code: {s["exit_code"]}',
    ]


def generate_report(result: SuiteResult) -> str:
    """Human-readable report for the console."""
    lines: list[str] = []
    lines += _section_header(result)
    lines += _section_checks(result)
    lines += _section_failures(result)
    lines += _section_summary(result)
    return '\n'.join(lines)


# ---------------------------------------------------------------------------
# CSV
# ---------------------------------------------------------------------------

ENVELOPE_FIELDS = ('surface', 's', 'index', 'base', 'stepped', 'feet', 'touches', 'passed')


def write_envelope_csv(path, groups: list) -> Path:
    """Per-sample envelope outcomes, ``groups`` being (surface, s, outcomes) triples."""
    path = Path(path)
    with open(path, 'w', newline='', encoding='utf-8') as f:
        writer = csv.writer(f)
        writer.writerow(ENVELOPE_FIELDS)
        for surface, s, outcomes in groups:
            for o in outcomes:
                writer.writerow([surface, s, o.index, o.base, o.stepped, ' '.join(map(str, o.feet)), o.touches, o.passed])
    log.info('Envelope CSV saved to: %s', path)
    return path
