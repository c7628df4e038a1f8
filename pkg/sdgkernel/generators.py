"""Random exact configurations for the property checks.

Everything is rational: unit directions come from inverse stereographic
projection, so distances along them stay rational and touching pairs can
be built to satisfy their radius relations exactly.
"""

import logging
import random
from fractions import Fraction

from .config import settings
from .contactwave import sample_sphere, stereographic_unit_vector
from .errors import DegenerateConfigurationError, UsageError
from .geomcore import Point, Sphere, apart
from .synthops import extrapolate

log = logging.getLogger(__name__)

KINDS = ('points', 'touching-spheres', 'collinear-triple', 'surface')


def random_rational(rng: random.Random, bound: int = 0, positive: bool = False) -> Fraction:
    """p/q with |p|, q <= bound (default: settings.max_numerator)."""
    bound = bound or settings.max_numerator
    q = rng.randint(1, bound)
    p = rng.randint(1, bound) if positive else rng.randint(-bound, bound)
    return Fraction(p, q)


def random_positive(rng: random.Random, bound: int = 0) -> Fraction:
    return random_rational(rng, bound, positive=True)


def random_point(rng: random.Random, n: int) -> Point:
    return Point(tuple(random_rational(rng) for _ in range(n)))


def random_unit_vector(rng: random.Random, n: int) -> Point:
    """A rational point of the unit sphere in R^n."""
    if n < 1:
        raise UsageError('dimension must be positive')
    if n == 1:
        return Point.of(rng.choice((1, -1)))
    u = tuple(random_rational(rng, 12) for _ in range(n - 1))
    coords = list(stereographic_unit_vector(u))
    rng.shuffle(coords)
    return Point(tuple(coords))


def apart_point(rng: random.Random, n: int, *others: Point) -> Point:
    p = random_point(rng, n)
    for q in others:
        if not apart(p, q):
            raise DegenerateConfigurationError(f'random point {p} coincides with {q}')
    return p


def orthogonal_offset(u: Point, v: Point) -> Point:
    """The component of v orthogonal to u, scaled by <u,u>."""
    w = v.scale(u.norm_sq()) - u.scale(v.dot(u))
    if not w.is_proper():
        raise DegenerateConfigurationError(f'{v} is parallel to {u}')
    return w


def random_orthogonal(rng: random.Random, u: Point) -> Point:
    return orthogonal_offset(u, random_point(rng, u.dim))


def touching_spheres(rng: random.Random, n: int) -> dict:
    """An externally touching pair A, C and a pair B inside A touching it."""
    a = random_point(rng, n)
    u = random_unit_vector(rng, n)
    r, s = random_positive(rng), random_positive(rng)
    c = a + u.scale(r + s)
    inner_radius = random_positive(rng)
    b = a + u.scale(r)
    return {
        'A': Sphere(a, r),
        'C': Sphere(c, s),
        'outer': Sphere(a, r + inner_radius),
        'B': Sphere(b, inner_radius),
    }


def collinear_triple(rng: random.Random, n: int) -> dict:
    """a, b on a rational line and c = a |>_s b, so [abc] holds."""
    a = random_point(rng, n)
    u = random_unit_vector(rng, n)
    b = a + u.scale(random_positive(rng))
    c = extrapolate(a, b, random_positive(rng), verify=False)
    return {'a': a, 'b': b, 'c': c}


def random_configuration(n: int, kind: str, rng: random.Random, count: int = 3) -> dict:
    """A named scene fragment of the requested kind."""
    if kind == 'points':
        points = []
        for _ in range(count):
            points.append(apart_point(rng, n, *points))
        return {f'p{i}': p for i, p in enumerate(points)}
    if kind == 'touching-spheres':
        return touching_spheres(rng, n)
    if kind == 'collinear-triple':
        return collinear_triple(rng, n)
    if kind == 'surface':
        center = random_point(rng, n)
        r = random_positive(rng)
        return {'center': center, 'r': r, 'surface': sample_sphere(center, r, max(count, 1))}
    raise UsageError(f'unknown configuration kind {kind!r}; expected one of {KINDS}')
