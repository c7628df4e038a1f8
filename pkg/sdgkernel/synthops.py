"""Interpolation, extrapolation, the collinearity bracket and rays.

``interpolate`` and ``extrapolate`` are given by their affine formulas and
then checked against their intrinsic characterisation (distance plus
collinearity). Collinearity conditions are generic implications between
sphere monads, evaluated with fresh batches.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

from .errors import DomainError, NotTouchingError, PostconditionError, UsageError
from .geomcore import (
    Point,
    Sphere,
    apart,
    dist,
    dist_sq,
    generic_slice,
    monad_contained,
    touches,
    touching_point_external,
    touching_point_internal,
    triangle_sum_matches,
    _context,
)
from .nilalg import NilElement, kl_cancel, kl_forces_zero, nil, nil_abs, nil_inverse, nil_less

log = logging.getLogger(__name__)

CONDITIONS = ('a1', 'a2', 'b1', 'b2', 'c1', 'c2')
POSITIONS = ('a', 'b', 'c')


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Triple:
    """Three mutually apart points; b is the candidate middle point."""
    a: Point
    b: Point
    c: Point

    def __post_init__(self):
        _require_mutually_apart(self.a, self.b, self.c)

    def __iter__(self):
        return iter((self.a, self.b, self.c))


@dataclass(frozen=True, eq=False)
class Ray:
    """The ray generated by director a and source b: s -> a |>_s b."""
    director: Point
    source: Point

    def __post_init__(self):
        if not apart(self.director, self.source):
            raise DomainError('ray director and source must be apart')

    def eval(self, s) -> Point:
        return extrapolate(self.director, self.source, s)


def _require_mutually_apart(*points: Point):
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if not apart(points[i], points[j]):
                raise UsageError(f'points {points[i]} and {points[j]} are not apart')


# ---------------------------------------------------------------------------
# Triangle equality and the six conditions
# ---------------------------------------------------------------------------

def triangle_equality(a: Point, b: Point, c: Point) -> bool:
    """(abc): ab + bc = ac."""
    _require_mutually_apart(a, b, c)
    return triangle_sum_matches(a, b, c)


def _condition_spheres(a: Point, b: Point, c: Point, which: str):
    """(premise sphere, conclusion sphere, point) for one generic implication."""
    ab, ac, bc = dist(a, b), dist(a, c), dist(b, c)
    table = {
        'a1': (Sphere(b, ab), Sphere(c, ac), a),
        'a2': (Sphere(c, ac), Sphere(b, ab), a),
        'b1': (Sphere(a, ab), Sphere(c, bc), b),
        'b2': (Sphere(c, bc), Sphere(a, ab), b),
        'c1': (Sphere(a, ac), Sphere(b, bc), c),
        'c2': (Sphere(b, bc), Sphere(a, ac), c),
    }
    if which not in table:
        raise UsageError(f'unknown collinearity condition {which!r}; expected one of {CONDITIONS}')
    return table[which]


def collinear_condition(a: Point, b: Point, c: Point, which: str) -> bool:
    """One of the six generic implications, e.g. b1: ab' = ab implies b'c = bc."""
    if not triangle_equality(a, b, c):
        raise UsageError(f'({a} {b} {c}) does not satisfy the triangle equality')
    premise, conclusion, at = _condition_spheres(a, b, c, which)
    return monad_contained(premise, conclusion, at)


def collinear(a: Point, b: Point, c: Point) -> bool:
    """[abc]: (abc) and condition b1."""
    if not triangle_equality(a, b, c):
        return False
    return collinear_condition(a, b, c, 'b1')


def collinear_by_touching(a: Point, b: Point, c: Point, position: str) -> bool:
    """The touching form of collinearity at one of the three points."""
    _require_mutually_apart(a, b, c)
    ab, ac, bc = dist(a, b), dist(a, c), dist(b, c)
    if position == 'a':
        return touches(Sphere(b, ab), Sphere(c, ac), a)
    if position == 'b':
        return touches(Sphere(a, ab), Sphere(c, bc), b)
    if position == 'c':
        return touches(Sphere(a, ac), Sphere(b, bc), c)
    raise UsageError(f'unknown position {position!r}; expected one of {POSITIONS}')


def aligned(a: Point, b: Point, c: Point) -> bool:
    """Some permutation of a, b, c is collinear."""
    _require_mutually_apart(a, b, c)
    return collinear(b, a, c) or collinear(a, b, c) or collinear(a, c, b)


# ---------------------------------------------------------------------------
# Interpolation and extrapolation
# ---------------------------------------------------------------------------

def interpolate(a: Point, c: Point, s, verify: bool = True) -> Point:
    """a <|_s c: the point at distance s from c towards a."""
    s = nil(s)
    if not apart(a, c):
        raise DomainError('interpolation needs apart endpoints')
    ac = dist(a, c)
    if not (nil_less(0, s) and nil_less(s, ac)):
        raise DomainError(f'interpolation parameter {s} outside (0, {ac})')
    b = c + (a - c).scale(s * nil_inverse(ac))
    if verify and not ((dist(b, c) - s).is_zero() and collinear(a, b, c)):
        raise PostconditionError(f'{b} does not satisfy bc = s and [abc]')
    return b


def extrapolate(a: Point, b: Point, s, verify: bool = True) -> Point:
    """a |>_s b: the point at distance s beyond b, away from a."""
    s = nil(s)
    if not apart(a, b):
        raise DomainError('extrapolation needs apart points')
    if not nil_less(0, s):
        raise DomainError(f'extrapolation parameter {s} is not positive')
    c = b + (b - a).scale(s * nil_inverse(dist(a, b)))
    if verify and not ((dist(b, c) - s).is_zero() and collinear(a, b, c)):
        raise PostconditionError(f'{c} does not satisfy bc = s and [abc]')
    return c


def _pinned(a: Point, q: Point, p: Point, s: NilElement, stiff: bool = True) -> bool:
    """Whether qp = s together with collinearity pins p.

    p is perturbed to p + e for a generic e in the full monad. The
    conditions on e are linear: the distance to q stays s, and either every
    q' in M(q) n S(a, aq) keeps the same distance to p + e (stiff), or only
    the distance to a is kept (the triangle equality alone).
    """
    ctx = _context(a, q, p, s)
    e_batch = ctx.new_batch(p.dim)
    moved = p + Point(tuple(e_batch.generators))
    forms = [dist_sq(q, moved) - s * s]
    if not stiff:
        forms.append(dist_sq(a, moved) - dist_sq(a, p))
        return kl_forces_zero(forms, e_batch)
    sl = generic_slice(Sphere(a, dist(a, q)), q, ctx=ctx)
    residual = dist_sq(moved, sl.point) - dist_sq(moved, q)
    dec = kl_cancel(residual, sl.batch)
    forms.extend(c for c in dec.coefficient_list() if not c.is_zero())
    return kl_forces_zero(forms, e_batch)


def extrapolation_is_unique(a: Point, b: Point, s, stiff: bool = True) -> bool:
    """a |>_s b is the only point c' near it with bc' = s and [abc'].

    With ``stiff=False`` only (abc') is imposed, which does not pin c' when n > 1.
    """
    s = nil(s)
    return _pinned(a, b, extrapolate(a, b, s), s, stiff)


def interpolation_is_unique(a: Point, c: Point, s, stiff: bool = True) -> bool:
    """a <|_s c is the only point b' near it with b'c = s and [ab'c]."""
    s = nil(s)
    return _pinned(a, c, interpolate(a, c, s), s, stiff)


def extrapolate_source_invariance(a_prime: Point, a: Point, b: Point, s) -> bool:
    """Given [a'ab], a' |>_s b = a |>_s b."""
    if not collinear(a_prime, a, b):
        raise UsageError(f'[{a_prime} {a} {b}] does not hold')
    return extrapolate(a_prime, b, s) == extrapolate(a, b, s)


# ---------------------------------------------------------------------------
# Four-point closure
# ---------------------------------------------------------------------------

# Pairs of brackets that fix the order of all four points along the line.
ORDER_FIXING_PAIRS = (
    ('abc', 'acd'),
    ('abc', 'bcd'),
    ('abd', 'bcd'),
)


@dataclass
class CollinearityClosure:
    """The four brackets [abc], [abd], [acd], [bcd] for one quadruple."""
    brackets: dict = field(default_factory=dict)

    @property
    def holding(self) -> list:
        return [k for k, v in self.brackets.items() if v]

    @property
    def triggered(self) -> bool:
        held = set(self.holding)
        return any(p <= held for p in map(set, ORDER_FIXING_PAIRS))

    @property
    def closed(self) -> bool:
        """False only when an order-fixing pair holds but some bracket fails."""
        return not self.triggered or len(self.holding) == 4


def collinearity_associativity(a: Point, b: Point, c: Point, d: Point) -> CollinearityClosure:
    _require_mutually_apart(a, b, c, d)
    named = {'a': a, 'b': b, 'c': c, 'd': d}
    result = CollinearityClosure()
    for key in ('abc', 'abd', 'acd', 'bcd'):
        x, y, z = (named[ch] for ch in key)
        result.brackets[key] = collinear(x, y, z)
    log.debug('Brackets for quadruple: %s', result.brackets)
    return result


# ---------------------------------------------------------------------------
# Rays
# ---------------------------------------------------------------------------

def ray_eval(ray: Ray, s) -> Point:
    return ray.eval(s)


def ray_compose(ray: Ray, s, t) -> bool:
    """a |>_t (a |>_s b) = a |>_(s+t) b."""
    s, t = nil(s), nil(t)
    return extrapolate(ray.director, ray.eval(s), t) == ray.eval(s + t)


def ray_isometry(ray: Ray, s, t) -> bool:
    """dist(eval(s), eval(t)) = |t - s| for s, t with t - s invertible."""
    s, t = nil(s), nil(t)
    return (dist(ray.eval(s), ray.eval(t)) - nil_abs(t - s)).is_zero()


def ray_points_aligned(ray: Ray, s, t, u) -> bool:
    return aligned(ray.eval(s), ray.eval(t), ray.eval(u))


def parabola_point(s, eps) -> Point:
    """s -> (s, eps*s^2): isometric on R>0 when eps^2 = 0, but not a ray."""
    s, eps = nil(s), nil(eps)
    return Point.of(s, eps * s * s)


@dataclass
class NonRayWitness:
    triangle: bool
    collinear: bool
    isometric: bool


def non_ray_isometry(eps, s1, s2, s3) -> NonRayWitness:
    """Evaluate the parabola map at s1 < s2 < s3."""
    x, y, z = (parabola_point(s, eps) for s in (s1, s2, s3))
    s1, s2, s3 = nil(s1), nil(s2), nil(s3)
    isometric = all(
        (dist(p, q) - (t - u)).is_zero()
        for p, q, u, t in ((x, y, s1, s2), (y, z, s2, s3), (x, z, s1, s3))
    )
    return NonRayWitness(
        triangle=triangle_equality(x, y, z),
        collinear=collinear(x, y, z),
        isometric=isometric,
    )


# ---------------------------------------------------------------------------
# Touching spheres
# ---------------------------------------------------------------------------

def touching_point(A: Sphere, C: Sphere) -> tuple:
    """(kind, point) for two touching spheres, kind 'external' or 'internal'."""
    a, c, r, s = A.center, C.center, A.radius, C.radius
    if (dist_sq(a, c) - (r + s) * (r + s)).is_zero():
        return 'external', touching_point_external(A, C)
    if nil_less(s, r):
        return 'internal', touching_point_internal(A, C)
    if nil_less(r, s):
        return 'internal', touching_point_internal(C, A)
    raise NotTouchingError(f'{A} and {C} do not touch')


def touching_centers_aligned(A: Sphere, C: Sphere, point: Optional[Point] = None) -> bool:
    """Centres and touching point of two touching spheres are aligned."""
    if point is None:
        _, point = touching_point(A, C)
    return aligned(A.center, point, C.center)
