"""Data classes used by the verification harness.

Scenarios describe a run, records describe the outcome of one trial of one
check, and SuiteResult bundles them with the summary the CLI and the API
report.
"""

from dataclasses import dataclass, field
from typing import Optional

STATUS_PASS = 'pass'
STATUS_FAIL = 'fail'
STATUS_SKIPPED = 'skipped-degenerate'


@dataclass
class Scenario:
    """Config for one verification run."""
    name: str = 'axioms'
    dim: int = 2
    seed: int = 0
    trials: int = 25
    checks: list = field(default_factory=list)  # empty means every registered check
    corrupt: bool = False                       # run negative controls as assertions
    scene: Optional[dict] = None                # explicit scene for scene-driven runs


@dataclass
class VerificationRecord:
    """Outcome of one trial of one check."""
    check_id: str
    trial: int
    status: str                                  # pass, fail, skipped-degenerate (scene inputs only)
    dim: int = 2
    seed: int = 0
    witness: dict = field(default_factory=dict)  # inputs and failure detail
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == STATUS_PASS

    def to_dict(self, timing: bool = True) -> dict:
        """Stable field order; ``timing=False`` drops elapsed_ms for comparisons."""
        d = {
            'check_id': self.check_id,
            'trial': self.trial,
            'status': self.status,
            'dim': self.dim,
            'seed': self.seed,
            'witness': self.witness,
        }
        if timing:
            d['elapsed_ms'] = round(self.elapsed_ms, 3)
        return d


@dataclass
class SuiteResult:
    """Records for a scenario, sorted by (check id order, trial)."""
    scenario: Scenario
    records: list = field(default_factory=list)  # List[VerificationRecord]

    @property
    def failures(self) -> list:
        return [r for r in self.records if r.status == STATUS_FAIL]

    @property
    def exit_code(self) -> int:
        return 1 if self.failures else 0

    def summary(self) -> dict:
        counts = {STATUS_PASS: 0, STATUS_FAIL: 0, STATUS_SKIPPED: 0}
        for r in self.records:
            counts[r.status] = counts.get(r.status, 0) + 1
        return {
            'summary': True,
            'scenario': self.scenario.name,
            'dim': self.scenario.dim,
            'seed': self.scenario.seed,
            'trials': self.scenario.trials,
            'corrupt': self.scenario.corrupt,
            'total': len(self.records),
            'passed': counts[STATUS_PASS],
            'failed': counts[STATUS_FAIL],
            'skipped_degenerate': counts[STATUS_SKIPPED],
            'exit_code': self.exit_code,
        }
