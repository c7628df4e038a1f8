"""Deterministic SVG rendering of planar scenes.

Only pure parts are drawn, at six decimals. Points with a nilpotent part
get it in their label, so the height-eps triangle shows b' as (0, eps).
"""

import logging
import xml.etree.ElementTree as ET
from pathlib import Path

from .contactwave import sample_sphere
from .errors import NotTouchingError, UnsupportedDimensionError, UsageError
from .geomcore import Hyperplane, Point, Sphere
from .nilalg import nil
from .scene import Scene, parse_coordinate, parse_point
from .synthops import extrapolate, touching_point

log = logging.getLogger(__name__)

OVERLAYS = ('labels', 'touching', 'huygens', 'surfaces')
SVG_NS = 'http://www.w3.org/2000/svg'
CANVAS = 600


def _num(x: float) -> str:
    text = f'{x:.6f}'
    return '0.000000' if text == '-0.000000' else text


def _xy(p: Point) -> tuple:
    """Pure-part projection, y flipped for SVG."""
    return float(p[0].pure_part()), -float(p[1].pure_part())


class _Canvas:
    """Collects primitives in drawing order and tracks the bounding box."""

    def __init__(self):
        self.items: list = []
        self.xs: list = []
        self.ys: list = []

    def _extend(self, x: float, y: float, pad: float = 0.0):
        self.xs += [x - pad, x + pad]
        self.ys += [y - pad, y + pad]

    def circle(self, center: Point, r: float, cls: str):
        x, y = _xy(center)
        self._extend(x, y, r)
        self.items.append(('circle', {'cx': _num(x), 'cy': _num(y), 'r': _num(r), 'class': cls}))

    def dot(self, p: Point, cls: str):
        x, y = _xy(p)
        self._extend(x, y)
        self.items.append(('dot', {'cx': _num(x), 'cy': _num(y), 'class': cls}))

    def line(self, p: Point, q: Point, cls: str):
        (x1, y1), (x2, y2) = _xy(p), _xy(q)
        self._extend(x1, y1)
        self._extend(x2, y2)
        self.items.append(('line', {'x1': _num(x1), 'y1': _num(y1), 'x2': _num(x2), 'y2': _num(y2), 'class': cls}))

    def polyline(self, points: list, cls: str):
        coords = [_xy(p) for p in points]
        for x, y in coords:
            self._extend(x, y)
        text = ' '.join(f'{_num(x)},{_num(y)}' for x, y in coords)
        self.items.append(('polyline', {'points': text, 'class': cls}))

    def text(self, p: Point, label: str):
        x, y = _xy(p)
        self.items.append(('text', {'x': _num(x), 'y': _num(y), 'class': 'label'}, label))

    def bounds(self) -> tuple:
        if not self.xs:
            return -1.0, -1.0, 2.0, 2.0
        x0, x1, y0, y1 = min(self.xs), max(self.xs), min(self.ys), max(self.ys)
        span = max(x1 - x0, y1 - y0, 1e-6)
        pad = span * 0.08
        return x0 - pad, y0 - pad, span + 2 * pad, span + 2 * pad


def _label(name: str, p: Point) -> str:
    if all(c.is_pure() for c in p.coords):
        return name
    return f'{name} {p}'


def _hyperplane_segment(H: Hyperplane, half: float) -> tuple:
    """Endpoints (in SVG coordinates) of a piece of the line H centred at its basepoint."""
    x, y = _xy(H.basepoint)
    tx, ty = -float(H.normal[1].pure_part()), float(H.normal[0].pure_part())
    length = (tx * tx + ty * ty) ** 0.5
    tx, ty = tx / length * half, ty / length * half
    return (x - tx, y + ty), (x + tx, y - ty)


def _draw_scene(canvas: _Canvas, scene: Scene, overlays: tuple):
    for S in scene.spheres.values():
        canvas.circle(S.center, float(S.radius.pure_part()), 'sphere')
    for names in scene.model.segments:
        canvas.polyline([scene.point(n, 'segments') for n in names], 'segment')
    for spec in scene.model.triples:
        canvas.polyline([scene.point(n, 'triples') for n in spec.points], 'triple')
    if 'surfaces' in overlays:
        for B in scene.surfaces.values():
            for P in B:
                canvas.dot(P.base, 'sample')
                canvas.line(P.base, P.base + P.unit_normal().scale(nil('1/4')), 'normal')
    if 'touching' in overlays:
        for spec in scene.model.touching:
            if spec.at is not None:
                canvas.dot(scene.point(spec.at, 'touching'), 'touch')
                continue
            A, B = (scene.figure(n, 'touching') for n in spec.figures)
            if isinstance(A, Sphere) and isinstance(B, Sphere):
                try:
                    canvas.dot(touching_point(A, B)[1], 'touch')
                except NotTouchingError:
                    log.debug('Skipping touching marker for %s', spec.figures)
    if 'huygens' in overlays and scene.model.huygens is not None:
        _draw_huygens(canvas, scene)
    for name, p in scene.points.items():
        canvas.dot(p, 'point')
        if 'labels' in overlays:
            canvas.text(p, _label(name, p))


def _draw_huygens(canvas: _Canvas, scene: Scene):
    spec = scene.model.huygens
    if isinstance(spec.center, str):
        a = scene.point(spec.center, 'huygens.center')
    else:
        a = parse_point(spec.center, scene.ctx, scene.dim, 'huygens.center')
    r = parse_coordinate(spec.r, scene.ctx, 'huygens.r')
    canvas.circle(a, float(r.pure_part()), 'source')
    sources = [P.base for P in sample_sphere(a, r, spec.m)]
    for i, s_data in enumerate(spec.s):
        s = parse_coordinate(s_data, scene.ctx, f'huygens.s[{i}]')
        canvas.circle(a, float((r + s).pure_part()), 'front')
        for b in sources:
            canvas.circle(b, float(s.pure_part()), 'wave')
            canvas.dot(extrapolate(a, b, s, verify=False), 'touch')


def _draw_hyperplanes(canvas: _Canvas, scene: Scene):
    # hyperplanes are clipped to the extent of everything else
    _, _, w, _ = canvas.bounds()
    half = max(w, 2.0)
    for H in scene.hyperplanes.values():
        (x1, y1), (x2, y2) = _hyperplane_segment(H, half)
        canvas.items.insert(0, ('line', {
            'x1': _num(x1), 'y1': _num(y1), 'x2': _num(x2), 'y2': _num(y2), 'class': 'hyperplane',
        }))


STYLE = (
    '.sphere,.source,.wave,.front{fill:none;stroke:#333}'
    '.wave{stroke:#89a;stroke-dasharray:2 2}.front{stroke:#c33}'
    '.hyperplane{stroke:#363}.segment,.triple{fill:none;stroke:#000}'
    '.triple{stroke-dasharray:4 2}.normal{stroke:#36c}'
    '.point{fill:#000}.touch{fill:#c33}.sample{fill:#36c}'
    '.label{font-family:monospace}'
)


def render_svg(scene: Scene, overlays=None) -> str:
    """SVG document for a planar scene; identical input gives identical bytes."""
    if scene.dim != 2:
        raise UnsupportedDimensionError(f'plotting needs a planar scene, got dimension {scene.dim}')
    overlays = tuple(OVERLAYS if overlays is None else overlays)
    unknown = [o for o in overlays if o not in OVERLAYS]
    if unknown:
        raise UsageError(f'unknown overlays: {", ".join(unknown)}; expected {", ".join(OVERLAYS)}')
    canvas = _Canvas()
    _draw_scene(canvas, scene, overlays)
    _draw_hyperplanes(canvas, scene)
    x0, y0, w, h = canvas.bounds()
    unit = w / CANVAS

    root = ET.Element('svg', {
        'xmlns': SVG_NS,
        'width': str(CANVAS),
        'height': str(CANVAS),
        'viewBox': f'{_num(x0)} {_num(y0)} {_num(w)} {_num(h)}',
    })
    ET.SubElement(root, 'title').text = scene.name
    ET.SubElement(root, 'style').text = STYLE + f'*{{stroke-width:{_num(unit * 1.5)}}}.label{{font-size:{_num(unit * 12)}px}}'
    group = ET.SubElement(root, 'g')
    for item in canvas.items:
        kind, attrs = item[0], dict(item[1])
        if kind == 'dot':
            attrs['r'] = _num(unit * 3)
            kind = 'circle'
        el = ET.SubElement(group, kind, attrs)
        if kind == 'text':
            el.set('dx', _num(unit * 5))
            el.set('dy', _num(-unit * 5))
            el.text = item[2]
    ET.indent(root)
    return ET.tostring(root, encoding='unicode') + '\n'


def write_svg(path, scene: Scene, overlays=None) -> Path:
    path = Path(path)
    path.write_text(render_svg(scene, overlays), encoding='utf-8')
    log.info('SVG saved to: %s', path)
    return path
