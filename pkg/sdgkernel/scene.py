"""Build kernel objects from a validated scene file.

Coordinates are scalar JSON (see ``Scalar.from_json``) or nilpotent
expressions::

    {"gen": "eps"}                       generator of a one-element batch
    {"gen": ["d", 1]}                    second generator of batch d
    {"terms": [{"coef": "1/2", "gens": ["eps", ["d", 0]]}, ...]}
    {"add": [1, {"mul": ["1/2", {"gen": ["d", 0]}]}]}   expressions over generators
"""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .contactwave import OrientedHypersurface, sample_hyperplane, sample_sphere
from .errors import DomainError, SceneParseError, UsageError
from .geomcore import Hyperplane, Point, Sphere
from .nilalg import BatchTable, NilElement, nil_inverse, nil_sqrt
from .scalars import Scalar
from .schemas import SceneModel, validate_scene

log = logging.getLogger(__name__)


@dataclass
class Scene:
    """Named points, figures and sampled surfaces sharing one batch context."""
    model: SceneModel
    ctx: BatchTable
    points: dict = field(default_factory=dict)
    spheres: dict = field(default_factory=dict)
    hyperplanes: dict = field(default_factory=dict)
    surfaces: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.model.name

    @property
    def dim(self) -> int:
        return self.model.dim

    def point(self, name: str, location: str = '') -> Point:
        if name not in self.points:
            raise SceneParseError(f'unknown point {name!r}', location)
        return self.points[name]

    def figure(self, name: str, location: str = ''):
        if name in self.spheres:
            return self.spheres[name]
        if name in self.hyperplanes:
            return self.hyperplanes[name]
        raise SceneParseError(f'unknown sphere or hyperplane {name!r}', location)

    def surface(self, name: str, location: str = '') -> OrientedHypersurface:
        if name not in self.surfaces:
            raise SceneParseError(f'unknown surface {name!r}', location)
        return self.surfaces[name]


# ---------------------------------------------------------------------------
# Coordinates
# ---------------------------------------------------------------------------

def _generator(ctx: BatchTable, ref, location: str) -> int:
    if isinstance(ref, str):
        name, pos = ref, 0
    elif isinstance(ref, list) and len(ref) == 2 and isinstance(ref[1], int):
        name, pos = ref
    else:
        raise SceneParseError(f'bad generator reference {ref!r}', location)
    try:
        batch = ctx.batch(name)
    except UsageError as exc:
        raise SceneParseError(str(exc), location) from exc
    if isinstance(ref, str) and batch.size != 1:
        raise SceneParseError(f'batch {name!r} has {batch.size} generators; use [name, index]', location)
    if not 0 <= pos < batch.size:
        raise SceneParseError(f'batch {name!r} has no generator {pos}', location)
    return batch.generator_ids[pos]


_NIL_OPS = ('add', 'sub', 'mul', 'div', 'neg', 'sqrt')


def _mentions_generator(data) -> bool:
    if isinstance(data, dict):
        return 'gen' in data or 'terms' in data or any(_mentions_generator(v) for v in data.values())
    if isinstance(data, list):
        return any(_mentions_generator(v) for v in data)
    return False


def _nil_expression(key: str, arg, ctx: BatchTable, location: str) -> NilElement:
    loc = f'{location}.{key}'
    if key == 'neg':
        return -parse_coordinate(arg, ctx, loc)
    if key == 'sqrt':
        return nil_sqrt(parse_coordinate(arg, ctx, loc))
    if not isinstance(arg, list) or not arg:
        raise SceneParseError(f'"{key}" takes a non-empty list', loc)
    parts = [parse_coordinate(item, ctx, f'{loc}[{i}]') for i, item in enumerate(arg)]
    result = parts[0]
    for part in parts[1:]:
        if key == 'add':
            result = result + part
        elif key == 'sub':
            result = result - part
        elif key == 'mul':
            result = result * part
        else:
            result = result * nil_inverse(part)
    return result


def parse_coordinate(data, ctx: BatchTable, location: str) -> NilElement:
    if isinstance(data, dict) and len(data) == 1 and next(iter(data)) in _NIL_OPS and _mentions_generator(data):
        (key, arg), = data.items()
        try:
            return _nil_expression(key, arg, ctx, location)
        except SceneParseError:
            raise
        except DomainError as exc:
            raise SceneParseError(str(exc), location) from exc
    if isinstance(data, dict) and 'gen' in data:
        if len(data) != 1:
            raise SceneParseError('"gen" takes no sibling keys', location)
        g = _generator(ctx, data['gen'], f'{location}.gen')
        return NilElement({(g,): 1}, ctx)
    if isinstance(data, dict) and 'terms' in data:
        terms = data['terms']
        if len(data) != 1 or not isinstance(terms, list):
            raise SceneParseError('"terms" must be the only key and hold a list', location)
        total = NilElement.constant(0, ctx)
        for i, term in enumerate(terms):
            loc = f'{location}.terms[{i}]'
            if not isinstance(term, dict) or set(term) - {'coef', 'gens'}:
                raise SceneParseError('term must be {"coef": ..., "gens": [...]}', loc)
            coef = Scalar.from_json(term.get('coef', 1), f'{loc}.coef')
            gens = tuple(_generator(ctx, ref, f'{loc}.gens[{j}]') for j, ref in enumerate(term.get('gens', [])))
            if len(set(gens)) != len(gens):
                raise SceneParseError('repeated generator in one monomial', loc)
            total = total + NilElement({gens: coef}, ctx)
        return total
    return NilElement.constant(Scalar.from_json(data, location), ctx)


def parse_point(data, ctx: BatchTable, dim: int, location: str) -> Point:
    if not isinstance(data, list):
        raise SceneParseError('point must be a coordinate list', location)
    if len(data) != dim:
        raise SceneParseError(f'expected {dim} coordinates, got {len(data)}', location)
    return Point(tuple(parse_coordinate(c, ctx, f'{location}[{i}]') for i, c in enumerate(data)))


def _ref(scene: Scene, ref, location: str) -> Point:
    if isinstance(ref, str):
        return scene.point(ref, location)
    return parse_point(ref, scene.ctx, scene.dim, location)


# ---------------------------------------------------------------------------
# Scene assembly
# ---------------------------------------------------------------------------

def build_scene(model: SceneModel) -> Scene:
    ctx = BatchTable()
    for spec in model.batches:
        ctx.new_batch(spec.size, spec.name)
    scene = Scene(model, ctx)
    for name, coords in model.points.items():
        scene.points[name] = parse_point(coords, ctx, model.dim, f'points.{name}')
    try:
        for name, spec in model.spheres.items():
            loc = f'spheres.{name}'
            scene.spheres[name] = Sphere(
                _ref(scene, spec.center, f'{loc}.center'),
                parse_coordinate(spec.radius, ctx, f'{loc}.radius'),
            )
        for name, spec in model.hyperplanes.items():
            loc = f'hyperplanes.{name}'
            scene.hyperplanes[name] = Hyperplane(
                _ref(scene, spec.basepoint, f'{loc}.basepoint'),
                _ref(scene, spec.normal, f'{loc}.normal'),
            )
    except DomainError as exc:
        raise SceneParseError(str(exc), loc) from exc
    for name, spec in model.surfaces.items():
        loc = f'surfaces.{name}'
        if spec.sphere is not None:
            if spec.sphere not in scene.spheres:
                raise SceneParseError(f'unknown sphere {spec.sphere!r}', f'{loc}.sphere')
            S = scene.spheres[spec.sphere]
            scene.surfaces[name] = sample_sphere(S.center, S.radius, spec.m, spec.orientation)
        else:
            if spec.hyperplane not in scene.hyperplanes:
                raise SceneParseError(f'unknown hyperplane {spec.hyperplane!r}', f'{loc}.hyperplane')
            spacing = parse_coordinate(spec.spacing, ctx, f'{loc}.spacing')
            scene.surfaces[name] = sample_hyperplane(
                scene.hyperplanes[spec.hyperplane], spec.m, spacing, spec.orientation,
            )
    log.debug('Built scene %s: %d points, %d spheres, %d hyperplanes',
              model.name, len(scene.points), len(scene.spheres), len(scene.hyperplanes))
    return scene


def parse_scene(data) -> Scene:
    return build_scene(validate_scene(data))


def load_scene(path) -> Scene:
    """Read and build a scene file; JSON errors become SceneParseError."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
    except OSError as exc:
        raise SceneParseError(f'cannot read scene: {exc}', str(path)) from exc
    except json.JSONDecodeError as exc:
        raise SceneParseError(f'invalid JSON: {exc.msg}', f'{path}:{exc.lineno}:{exc.colno}') from exc
    log.info('Loaded scene from %s', path)
    return parse_scene(data)
