"""Run registered checks over seeded trials, and scene-driven checks."""

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from typing import Optional

from .config import settings
from .contactwave import feet_on_surface, huygens_sphere_envelope, parallel_surface
from .errors import (
    AssumptionViolationError,
    DegenerateConfigurationError,
    NotTouchingError,
    SceneParseError,
    SDGError,
    UsageError,
)
from .geomcore import Sphere, touches
from .models import STATUS_FAIL, STATUS_PASS, STATUS_SKIPPED, Scenario, VerificationRecord
from .nilalg import nil
from .scene import Scene, parse_coordinate, parse_point, parse_scene
from .suites import CHECKS, CheckFailure, Trial, resolve_checks, run_check
from .synthops import aligned, collinear, touching_point, triangle_equality

log = logging.getLogger(__name__)

MAX_DIM = 6
SCENE_CHECKS = ('collinear', 'aligned', 'triangle', 'touching', 'huygens', 'feet', 'parallel')


# ---------------------------------------------------------------------------
# Seeded trials
# ---------------------------------------------------------------------------

def trial_rng(seed: int, check_id: str, trial: int, attempt: int) -> random.Random:
    """Independent stream per (seed, check, trial, attempt)."""
    return random.Random(f'{seed}:{check_id}:{trial}:{attempt}')


def validate_scenario(scenario: Scenario) -> list:
    """The checks a scenario selects; raises UsageError on bad parameters."""
    if not 1 <= scenario.dim <= MAX_DIM:
        raise UsageError(f'dimension must be between 1 and {MAX_DIM}, got {scenario.dim}')
    if scenario.trials < 0:
        raise UsageError(f'trial count must be non-negative, got {scenario.trials}')
    if scenario.scene is not None:
        return []
    return resolve_checks(scenario.checks)


def _failure_witness(exc: Exception) -> dict:
    witness = {'error': type(exc).__name__, 'message': str(exc)}
    if isinstance(exc, AssumptionViolationError):
        witness['indices'] = exc.indices
    return witness


def run_trial(check_id: str, index: int, dim: int, seed: int, corrupt: bool = False) -> VerificationRecord:
    """One trial of one check, regenerating degenerate configurations."""
    check = CHECKS[check_id]
    if check.dim is None and dim < check.min_dim:
        log.debug('%s needs R^%d; lifting from R^%d', check_id, check.min_dim, dim)
    dim = check.dim or max(dim, check.min_dim)
    start = time.perf_counter()
    attempt = 0
    while True:
        trial = Trial(check_id, index, dim, seed, trial_rng(seed, check_id, index, attempt), corrupt)
        witness = {'attempt': attempt}
        try:
            run_check(check, trial)
            status = STATUS_PASS
        except DegenerateConfigurationError as exc:
            attempt += 1
            log.debug('Regenerating %s trial %d (attempt %d): %s', check_id, index, attempt, exc)
            if attempt == settings.max_retries // 2:
                log.warning('%s trial %d: %d degenerate configurations so far', check_id, index, attempt)
            if attempt < settings.max_retries:
                continue
            log.error('%s trial %d: retry cap of %d exhausted', check_id, index, settings.max_retries)
            status = STATUS_FAIL
            witness.update({'error': 'RetryExhausted', 'message': str(exc), 'attempt': attempt})
        except CheckFailure as exc:
            status = STATUS_FAIL
            witness.update({'error': 'CheckFailure', 'message': str(exc)})
        except SDGError as exc:
            status = STATUS_FAIL
            witness.update(_failure_witness(exc))
        except Exception as exc:
            log.warning('%s trial %d crashed: %s', check_id, index, exc)
            status = STATUS_FAIL
            witness.update({'error': type(exc).__name__, 'message': str(exc)})
        break
    witness['inputs'] = trial.inputs
    return VerificationRecord(
        check_id=check_id,
        trial=index,
        status=status,
        dim=dim,
        seed=seed,
        witness=witness,
        elapsed_ms=(time.perf_counter() - start) * 1000,
    )


def _run_job(job: tuple) -> VerificationRecord:
    return run_trial(*job)


def _apply_settings(values: dict):
    for key, value in values.items():
        setattr(settings, key, value)


def run_suite(scenario: Scenario, workers: Optional[int] = None) -> list:
    """Records for every (check, trial) of the scenario, sorted by (check, trial)."""
    checks = validate_scenario(scenario)
    if scenario.scene is not None:
        return run_scene(parse_scene(scenario.scene), scenario.checks)
    workers = workers or settings.workers
    jobs = [
        (check.check_id, i, scenario.dim, scenario.seed, scenario.corrupt)
        for check in checks
        for i in range(scenario.trials)
    ]
    log.info('Running %d checks x %d trials (dim %d, seed %d, %d workers)',
             len(checks), scenario.trials, scenario.dim, scenario.seed, workers)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers, initializer=_apply_settings,
                                 initargs=(asdict(settings),)) as pool:
            records = list(pool.map(_run_job, jobs, chunksize=4))
    else:
        records = [_run_job(job) for job in jobs]
    order = {check.check_id: k for k, check in enumerate(checks)}
    records.sort(key=lambda r: (order[r.check_id], r.trial))
    _log_check_summaries(checks, records)
    return records


def _log_check_summaries(checks: list, records: list):
    for check in checks:
        mine = [r for r in records if r.check_id == check.check_id]
        failed = [r for r in mine if r.status == STATUS_FAIL]
        if failed:
            log.warning('%s: %d/%d trials failed (first: %s)', check.check_id, len(failed), len(mine),
                        failed[0].witness.get('message', ''))
        else:
            log.info('%s: %d trials passed', check.check_id, len(mine))


# ---------------------------------------------------------------------------
# Scene-driven checks
# ---------------------------------------------------------------------------

def _record(check: str, index: int, scene: Scene, status: str, witness: dict, start: float) -> VerificationRecord:
    return VerificationRecord(
        check_id=f'scene:{check}',
        trial=index,
        status=status,
        dim=scene.dim,
        seed=0,
        witness=witness,
        elapsed_ms=(time.perf_counter() - start) * 1000,
    )


def _verdict(value, expected) -> str:
    return STATUS_PASS if value == expected else STATUS_FAIL


def _triple_check(scene: Scene, check: str) -> list:
    predicate = {'collinear': collinear, 'aligned': aligned, 'triangle': triangle_equality}[check]
    out = []
    for i, spec in enumerate(scene.model.triples):
        start = time.perf_counter()
        loc = f'triples[{i}].points'
        a, b, c = (scene.point(name, loc) for name in spec.points)
        expected = spec.expect.get(check, True)
        witness = {'points': spec.points, 'expected': expected}
        try:
            value = predicate(a, b, c)
        except UsageError as exc:
            witness.update(_failure_witness(exc))
            out.append(_record(check, i, scene, STATUS_SKIPPED, witness, start))
            continue
        witness['value'] = value
        out.append(_record(check, i, scene, _verdict(value, expected), witness, start))
    return out


def _touching_check(scene: Scene) -> list:
    out = []
    for i, spec in enumerate(scene.model.touching):
        start = time.perf_counter()
        loc = f'touching[{i}]'
        A, B = (scene.figure(name, f'{loc}.figures') for name in spec.figures)
        if spec.at is None and not (isinstance(A, Sphere) and isinstance(B, Sphere)):
            raise SceneParseError('give "at" unless both figures are spheres', f'{loc}.at')
        witness = {'figures': spec.figures, 'expected': spec.expect}
        try:
            if spec.at is not None:
                at = scene.point(spec.at, f'{loc}.at')
            else:
                witness['kind'], at = touching_point(A, B)
            witness['at'] = str(at)
            value = touches(A, B, at)
        except NotTouchingError as exc:
            witness.update(_failure_witness(exc))
            value = False
        except UsageError as exc:
            # the point is not on both figures
            witness.update(_failure_witness(exc))
            value = False
        except DegenerateConfigurationError as exc:
            witness.update(_failure_witness(exc))
            out.append(_record('touching', i, scene, STATUS_SKIPPED, witness, start))
            continue
        witness['value'] = value
        out.append(_record('touching', i, scene, _verdict(value, spec.expect), witness, start))
    return out


def _huygens_check(scene: Scene) -> list:
    spec = scene.model.huygens
    if spec is None:
        return []
    if isinstance(spec.center, str):
        center = scene.point(spec.center, 'huygens.center')
    else:
        center = parse_point(spec.center, scene.ctx, scene.dim, 'huygens.center')
    r = parse_coordinate(spec.r, scene.ctx, 'huygens.r')
    out = []
    for i, s_data in enumerate(spec.s):
        start = time.perf_counter()
        s = parse_coordinate(s_data, scene.ctx, f'huygens.s[{i}]')
        rec = huygens_sphere_envelope(center, r, s, spec.m)
        witness = {
            'r': str(r), 's': str(s), 'm': spec.m,
            'forward_passed': sum(rec.forward), 'converse_passed': sum(rec.converse),
            'checks': rec.check_count,
        }
        out.append(_record('huygens', i, scene, STATUS_PASS if rec.passed else STATUS_FAIL, witness, start))
    return out


def _feet_check(scene: Scene) -> list:
    out = []
    for i, spec in enumerate(scene.model.feet):
        start = time.perf_counter()
        loc = f'feet[{i}]'
        x = scene.point(spec.point, f'{loc}.point')
        B = scene.surface(spec.surface, f'{loc}.surface')
        witness = {'point': spec.point, 'surface': spec.surface, 'expected': spec.expect}
        try:
            feet = feet_on_surface(x, B)
        except UsageError as exc:
            witness.update(_failure_witness(exc))
            out.append(_record('feet', i, scene, STATUS_SKIPPED, witness, start))
            continue
        witness['value'] = feet
        status = STATUS_PASS if spec.expect is None else _verdict(feet, spec.expect)
        out.append(_record('feet', i, scene, status, witness, start))
    return out


def _parallel_check(scene: Scene) -> list:
    out = []
    for i, spec in enumerate(scene.model.parallel):
        start = time.perf_counter()
        loc = f'parallel[{i}]'
        B = scene.surface(spec.surface, f'{loc}.surface')
        s = parse_coordinate(spec.s, scene.ctx, f'{loc}.s')
        witness = {'surface': spec.surface, 's': str(s)}
        try:
            once = parallel_surface(B, s)
            status = STATUS_PASS
            if spec.t is not None:
                t = parse_coordinate(spec.t, scene.ctx, f'{loc}.t')
                witness['t'] = str(t)
                twice = parallel_surface(once, t)
                direct = parallel_surface(B, nil(s) + t)
                composes = len(twice) == len(direct) and all(p == q for p, q in zip(twice, direct))
                witness['semigroup'] = composes
                status = STATUS_PASS if composes else STATUS_FAIL
        except SDGError as exc:
            witness.update(_failure_witness(exc))
            status = STATUS_FAIL
        out.append(_record('parallel', i, scene, status, witness, start))
    return out


def run_scene(scene: Scene, checks=None) -> list:
    """Scene-driven checks in SCENE_CHECKS order; empty selects all."""
    checks = [c for c in (checks or []) if c]
    if not checks or checks == ['all']:
        checks = list(SCENE_CHECKS)
    unknown = [c for c in checks if c not in SCENE_CHECKS]
    if unknown:
        raise UsageError(f'unknown scene checks: {", ".join(unknown)}; expected {", ".join(SCENE_CHECKS)}')
    log.info('Running scene %s: %s', scene.name, ', '.join(checks))
    records = []
    for check in SCENE_CHECKS:
        if check not in checks:
            continue
        if check in ('collinear', 'aligned', 'triangle'):
            records.extend(_triple_check(scene, check))
        elif check == 'touching':
            records.extend(_touching_check(scene))
        elif check == 'huygens':
            records.extend(_huygens_check(scene))
        elif check == 'feet':
            records.extend(_feet_check(scene))
        else:
            records.extend(_parallel_check(scene))
    return records
