#!/usr/bin/env python3
"""
sdgverify
Exact synthetic-geometry kernel with a verification harness.

This module is the public entry-point and CLI. All core logic lives in the
``sdgkernel`` package and is re-exported here:

    from sdgverify import run_suite, Scenario, Point, extrapolate

Exit codes: 0 all checks pass, 1 some check failed, 2 usage or parse error.
"""

import argparse
import json
import logging
import sys

# ---------------------------------------------------------------------------
# Logging (configured once, here; library modules only create loggers)
# ---------------------------------------------------------------------------
logging.basicConfig(
    level=logging.INFO,
    format='[%(levelname)s] %(message)s',
)
log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Re-export the public kernel API.
# ---------------------------------------------------------------------------
from sdgkernel import (  # noqa: F401, E402
    # Errors
    SDGError,
    UsageError,
    SceneParseError,
    # Config
    settings,
    # Algebra
    Scalar,
    NilElement,
    BatchTable,
    nil,
    nil_inverse,
    nil_sqrt,
    # Geometry
    Point,
    Sphere,
    Hyperplane,
    dist,
    touches,
    foot,
    touching_point_external,
    touching_point_internal,
    # Synthetic operations
    triangle_equality,
    collinear,
    aligned,
    interpolate,
    extrapolate,
    touching_point,
    # Contact elements
    ContactElement,
    front_step,
    flow_step,
    sample_sphere,
    parallel_surface,
    envelope_outcomes,
    huygens_sphere_envelope,
    # Harness
    Scenario,
    SuiteResult,
    VerificationRecord,
    list_checks,
    run_suite,
    run_scene,
    load_scene,
    parse_scene,
    generate_report,
    write_jsonl,
    write_envelope_csv,
    render_svg,
    write_svg,
)
from sdgkernel.scene import parse_coordinate, parse_point  # noqa: E402


# ---------------------------------------------------------------------------
# Single operations
# ---------------------------------------------------------------------------

def _scene_object(kind: str, text: str, scene):
    """A named point or figure of the scene, or None."""
    if scene is None:
        return None
    if kind == 'point' and text in scene.points:
        return scene.points[text]
    if kind == 'sphere' and text in scene.spheres:
        return scene.spheres[text]
    if kind == 'hyperplane' and text in scene.hyperplanes:
        return scene.hyperplanes[text]
    return None


def _parse_arg(kind: str, text: str, ctx: BatchTable, dim: int, location: str, scene=None):
    named = _scene_object(kind, text, scene)
    if named is not None:
        return named
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = text  # bare rationals like 3/4
    if kind == 'scalar':
        return parse_coordinate(data, ctx, location)
    if kind == 'point':
        return parse_point(data, ctx, dim, location)
    if kind == 'sphere':
        if not isinstance(data, dict) or set(data) != {'center', 'radius'}:
            raise SceneParseError('sphere must be {"center": [...], "radius": ...}', location)
        return Sphere(parse_point(data['center'], ctx, dim, f'{location}.center'),
                      parse_coordinate(data['radius'], ctx, f'{location}.radius'))
    if kind == 'hyperplane':
        if not isinstance(data, dict) or set(data) != {'basepoint', 'normal'}:
            raise SceneParseError('hyperplane must be {"basepoint": [...], "normal": [...]}', location)
        return Hyperplane(parse_point(data['basepoint'], ctx, dim, f'{location}.basepoint'),
                          parse_point(data['normal'], ctx, dim, f'{location}.normal'))
    raise UsageError(f'unknown argument kind {kind!r}')


OPS = {
    'sqrt': (nil_sqrt, ('scalar',)),
    'inverse': (nil_inverse, ('scalar',)),
    'dist': (dist, ('point', 'point')),
    'triangle': (triangle_equality, ('point', 'point', 'point')),
    'collinear': (collinear, ('point', 'point', 'point')),
    'aligned': (aligned, ('point', 'point', 'point')),
    'interpolate': (interpolate, ('point', 'point', 'scalar')),
    'extrapolate': (extrapolate, ('point', 'point', 'scalar')),
    'touching-point': (touching_point, ('sphere', 'sphere')),
    'touches': (touches, ('sphere', 'sphere', 'point')),
    'foot': (foot, ('point', 'hyperplane')),
}


def _first_dim(args: list) -> int:
    """Dimension of the first point-like argument."""
    for text in args:
        try:
            data = json.loads(text)
        except json.JSONDecodeError:
            continue
        if isinstance(data, list):
            return len(data)
        if isinstance(data, dict):
            inner = data.get('center') or data.get('basepoint')
            if isinstance(inner, list):
                return len(inner)
    return 2


def run_op(name: str, args: list, scene=None, s=None):
    """Evaluate one operation; with a scene, arguments may name its points and figures."""
    if s is not None:
        args = list(args) + [s]
    if name not in OPS:
        raise UsageError(f'unknown op {name!r}; expected one of {", ".join(OPS)}')
    fn, kinds = OPS[name]
    if len(args) != len(kinds):
        raise UsageError(f'{name} takes {len(kinds)} arguments ({", ".join(kinds)}), got {len(args)}')
    ctx = scene.ctx if scene is not None else BatchTable()
    dim = scene.dim if scene is not None else _first_dim(args)
    values = [_parse_arg(k, a, ctx, dim, f'arg[{i}]', scene) for i, (k, a) in enumerate(zip(kinds, args))]
    return fn(*values)


def _format_value(value):
    if isinstance(value, tuple):
        return [_format_value(v) for v in value]
    if isinstance(value, Point):
        return [_format_value(c) for c in value.coords]
    if isinstance(value, NilElement) and value.is_pure():
        return str(value.pure_part())
    if isinstance(value, bool):
        return value
    return str(value)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _emit(result: SuiteResult, args) -> int:
    print('\n' + generate_report(result))
    if args.report:
        write_jsonl(args.report, result, timing=not args.no_timing)
    return result.exit_code


def cmd_axioms(args) -> int:
    checks = [c for c in (args.checks or '').split(',') if c]
    scenario = Scenario(
        name='axioms', dim=args.dim, seed=args.seed, trials=args.trials,
        checks=checks, corrupt=args.corrupt,
    )
    return _emit(SuiteResult(scenario, run_suite(scenario, workers=args.workers)), args)


TRIPLE_PREDICATES = {
    'collinear': collinear,
    'aligned': aligned,
    'triangle': triangle_equality,
}


def check_triple(check_id: str, scene, names: list) -> bool:
    """Evaluate a triple predicate on three named points of a scene."""
    if check_id not in TRIPLE_PREDICATES:
        raise UsageError(f'{check_id!r} is not a triple predicate; expected one of {", ".join(TRIPLE_PREDICATES)}')
    points = [scene.point(name, '--triple') for name in names]
    return TRIPLE_PREDICATES[check_id](*points)


def cmd_check(args) -> int:
    if args.scene or args.triple:
        if not (args.scene and args.triple):
            raise UsageError('--scene and --triple go together')
        value = check_triple(args.check_id, load_scene(args.scene), args.triple)
        print(json.dumps({'check': args.check_id, 'points': args.triple, 'value': value}))
        return 0 if value else 1
    scenario = Scenario(
        name=args.check_id, dim=args.dim, seed=args.seed, trials=args.trials,
        checks=[args.check_id], corrupt=args.corrupt,
    )
    return _emit(SuiteResult(scenario, run_suite(scenario, workers=args.workers)), args)


def cmd_scene_run(args) -> int:
    scene = load_scene(args.scene)
    checks = [c for c in (args.checks or '').split(',') if c]
    scenario = Scenario(name=scene.name, dim=scene.dim, trials=0, checks=checks)
    result = SuiteResult(scenario, run_scene(scene, checks))
    if args.csv:
        groups = []
        for i, spec in enumerate(scene.model.parallel):
            s = parse_coordinate(spec.s, scene.ctx, f'parallel[{i}].s')
            groups.append((spec.surface, str(s), envelope_outcomes(scene.surface(spec.surface), s)))
        write_envelope_csv(args.csv, groups)
    return _emit(result, args)


def cmd_op(args) -> int:
    scene = load_scene(args.scene) if args.scene else None
    value = run_op(args.name, args.args, scene=scene, s=args.s)
    print(json.dumps({'op': args.name, 'value': _format_value(value)}))
    return 0


def cmd_plot(args) -> int:
    scene = load_scene(args.scene)
    overlays = None if args.overlays is None else [o for o in args.overlays.split(',') if o]
    if args.svg:
        write_svg(args.svg, scene, overlays)
    else:
        sys.stdout.write(render_svg(scene, overlays))
    return 0


def cmd_list_checks(args) -> int:
    for check in list_checks():
        fixed = f' [dim {check.dim}]' if check.dim else ''
        print(f'{check.check_id:28s} {check.summary}{fixed}')
    return 0


def cmd_serve(args) -> int:
    import uvicorn
    from server.config import settings as server_settings
    uvicorn.run('server.app:app', host=args.host or server_settings.host, port=args.port or server_settings.port)
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _add_run_options(p: argparse.ArgumentParser):
    p.add_argument('--dim', type=int, default=2, help='dimension n (1..6)')
    p.add_argument('--trials', type=int, default=25)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--corrupt', action='store_true',
                   help='assert every negative control (every check must fail)')
    _add_report_options(p)


def _add_report_options(p: argparse.ArgumentParser):
    p.add_argument('--report', help='write JSON lines to this path')
    p.add_argument('--no-timing', action='store_true', help='omit elapsed_ms from the JSON report')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='sdgverify', description=__doc__.strip().splitlines()[0])
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    parser.add_argument('--workers', type=int, default=None, help='process pool size')
    parser.add_argument('--sqrt-depth-cap', type=int, default=None, help='nested sqrt depth cap')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('axioms', help='run the registered checks')
    _add_run_options(p)
    p.add_argument('--checks', help='comma separated check ids (default: all)')
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser('check', help='run one registered check, or a triple predicate on a scene')
    p.add_argument('check_id')
    p.add_argument('--scene', help='scene file holding the points named by --triple')
    p.add_argument('--triple', nargs=3, metavar='POINT', help='collinear, aligned or triangle on three scene points')
    _add_run_options(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser('scene', help='scene-driven checks')
    scene_sub = p.add_subparsers(dest='scene_command', required=True)
    run = scene_sub.add_parser('run', help='run checks over a scene file')
    run.add_argument('scene')
    run.add_argument('--checks', help='comma separated: collinear,aligned,triangle,touching,huygens,feet,parallel')
    run.add_argument('--csv', help='write per-sample envelope outcomes of the parallel entries')
    _add_report_options(run)
    run.set_defaults(func=cmd_scene_run)

    p = sub.add_parser('op', help='evaluate one kernel operation on JSON arguments')
    p.add_argument('name', choices=sorted(OPS))
    p.add_argument('args', nargs='*', help='JSON values, or names of scene points and figures')
    p.add_argument('--scene', help='resolve names in this scene file')
    p.add_argument('--s', help='scalar parameter appended to the arguments')
    p.set_defaults(func=cmd_op)

    p = sub.add_parser('plot', help='render a planar scene as SVG')
    p.add_argument('scene')
    p.add_argument('--svg', help='output path (default: stdout)')
    p.add_argument('--overlays', help='comma separated: labels,touching,huygens,surfaces')
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser('list-checks', help='list registered check ids')
    p.set_defaults(func=cmd_list_checks)

    p = sub.add_parser('serve', help='start the hosted JSON API')
    p.add_argument('--host')
    p.add_argument('--port', type=int)
    p.set_defaults(func=cmd_serve)
    return parser


# ---------------------------------------------------------------------------
# CLI entry point
# ---------------------------------------------------------------------------

def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    if args.sqrt_depth_cap is not None:
        settings.sqrt_depth_cap = args.sqrt_depth_cap
    if args.workers is not None:
        settings.workers = args.workers
    try:
        return args.func(args)
    except UsageError as exc:
        log.error('%s', exc)
        return 2
    except SDGError as exc:
        log.error('%s: %s', type(exc).__name__, exc)
        return 1


if __name__ == '__main__':
    sys.exit(main())
