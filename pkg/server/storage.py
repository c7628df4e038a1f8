"""SQLite storage for run metadata and JSONL reports."""

import json
import sqlite3
from datetime import datetime, timezone
from pathlib import Path
from uuid import uuid4


BASE_DIR = Path(__file__).resolve().parents[1]
DATA_DIR = BASE_DIR / 'data'
REPORTS_DIR = DATA_DIR / 'reports'
DB_PATH = DATA_DIR / 'sdgverify.db'


def ensure_dirs() -> None:
    """Ensure data directories exist."""
    DATA_DIR.mkdir(exist_ok=True)
    REPORTS_DIR.mkdir(exist_ok=True)


def get_connection() -> sqlite3.Connection:
    """Get a DB connection."""
    ensure_dirs()
    conn = sqlite3.connect(DB_PATH)
    conn.row_factory = sqlite3.Row
    return conn


def init_db() -> None:
    """Initialize DB schema."""
    with get_connection() as conn:
        conn.execute(
            """
            CREATE TABLE IF NOT EXISTS runs (
                id TEXT PRIMARY KEY,
                created_at TEXT NOT NULL,
                scenario_json TEXT NOT NULL,
                summary_json TEXT NOT NULL,
                exit_code INTEGER NOT NULL,
                report_path TEXT
            )
            """
        )
        conn.commit()


def report_path_for(run_id: str) -> Path:
    return REPORTS_DIR / f'{run_id}.jsonl'


def create_run(scenario: dict, summary: dict) -> str:
    """Insert a finished run and return its ID."""
    run_id = str(uuid4())
    created_at = datetime.now(timezone.utc).isoformat()
    with get_connection() as conn:
        conn.execute(
            """
            INSERT INTO runs (id, created_at, scenario_json, summary_json, exit_code)
            VALUES (?, ?, ?, ?, ?)
            """,
            (run_id, created_at, json.dumps(scenario), json.dumps(summary), summary['exit_code'])
        )
        conn.commit()
    return run_id


def attach_report(run_id: str, report_path: str) -> None:
    """Attach the JSONL report path."""
    with get_connection() as conn:
        conn.execute(
            "UPDATE runs SET report_path = ? WHERE id = ?",
            (report_path, run_id)
        )
        conn.commit()


def _decode(row: sqlite3.Row) -> dict:
    d = dict(row)
    d['scenario'] = json.loads(d.pop('scenario_json'))
    d['summary'] = json.loads(d.pop('summary_json'))
    return d


def get_run(run_id: str) -> dict | None:
    """Fetch run by ID."""
    with get_connection() as conn:
        row = conn.execute(
            "SELECT * FROM runs WHERE id = ?",
            (run_id,)
        ).fetchone()
        if not row:
            return None
        return _decode(row)


def list_runs(limit: int = 50) -> list:
    """List recent runs."""
    with get_connection() as conn:
        rows = conn.execute(
            "SELECT * FROM runs ORDER BY created_at DESC LIMIT ?",
            (limit,)
        ).fetchall()
        return [_decode(r) for r in rows]
