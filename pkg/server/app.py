"""FastAPI app for running verification suites and rendering scenes."""

import logging
from dataclasses import asdict

from fastapi import FastAPI, HTTPException
from fastapi.responses import FileResponse, Response

from sdgkernel import (
    SceneParseError,
    Scenario,
    SDGError,
    SuiteResult,
    UsageError,
    generate_json_report,
    list_checks,
    parse_scene,
    render_svg,
    run_suite,
    write_jsonl,
)

from .config import settings
from .schemas import PlotRequest, RunRequest
from .storage import attach_report, create_run, get_run, init_db, list_runs, report_path_for

log = logging.getLogger(__name__)

app = FastAPI(title='SDG Verify')


def _bad_request(exc: SDGError) -> HTTPException:
    if isinstance(exc, SceneParseError):
        return HTTPException(status_code=422, detail={'error': str(exc), 'location': exc.location})
    return HTTPException(status_code=400, detail=str(exc))


@app.on_event('startup')
def on_startup() -> None:
    """Initialize DB on startup."""
    init_db()


@app.get('/health')
def health() -> dict:
    """Health check."""
    return {'status': 'ok'}


@app.get('/api/checks')
def api_checks() -> list:
    return [{'id': c.check_id, 'summary': c.summary, 'dim': c.dim} for c in list_checks()]


@app.post('/api/runs')
def api_create_run(payload: RunRequest) -> dict:
    """Run a scenario synchronously and store its JSONL report."""
    if payload.trials > settings.max_trials:
        raise HTTPException(
            status_code=400,
            detail=f'trials {payload.trials} exceeds the server cap of {settings.max_trials}',
        )
    scenario = Scenario(**payload.model_dump())
    try:
        result = SuiteResult(scenario, run_suite(scenario))
    except UsageError as exc:
        raise _bad_request(exc)
    report = generate_json_report(result)
    run_id = create_run(asdict(scenario), report['summary'])
    path = write_jsonl(report_path_for(run_id), result)
    attach_report(run_id, str(path))
    log.info('Run %s finished with exit code %d', run_id, result.exit_code)
    return {'id': run_id, **report}


@app.get('/api/runs')
def api_list_runs() -> list:
    return list_runs()


@app.get('/api/runs/{run_id}')
def api_get_run(run_id: str) -> dict:
    run = get_run(run_id)
    if not run:
        raise HTTPException(status_code=404, detail='Run not found')
    return run


@app.get('/api/runs/{run_id}/report')
def api_get_report(run_id: str):
    """Download the JSONL report."""
    run = get_run(run_id)
    if not run or not run.get('report_path'):
        raise HTTPException(status_code=404, detail='Report not found')
    return FileResponse(run['report_path'], media_type='application/x-ndjson')


@app.post('/api/plot')
def api_plot(payload: PlotRequest) -> Response:
    try:
        svg = render_svg(parse_scene(payload.scene), payload.overlays)
    except UsageError as exc:
        raise _bad_request(exc)
    return Response(content=svg, media_type='image/svg+xml')
