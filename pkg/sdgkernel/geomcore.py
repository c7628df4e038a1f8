"""Points of R^n over the nilpotent algebra, and the metric structure on them.

Set-level questions (is b+d in a figure for the generic d, do two monad
intersections coincide) are reduced to linear forms in a fresh batch of
generators and settled by KL cancellation.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

from .errors import (
    DegenerateConfigurationError,
    DomainError,
    NotTouchingError,
    PostconditionError,
    UsageError,
)
from .nilalg import (
    Batch,
    BatchTable,
    NilElement,
    kl_cancel,
    kl_forces_zero,
    nil,
    nil_inverse,
    nil_sqrt,
)

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Points and figures
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Point:
    """A point (or vector) of R^n with NilElement coordinates."""
    coords: tuple

    def __post_init__(self):
        coords = tuple(nil(c) for c in self.coords)
        ctx = None
        for c in coords:
            if c.ctx is not None:
                if ctx is not None and c.ctx is not ctx:
                    raise UsageError('point coordinates come from different contexts')
                ctx = c.ctx
        object.__setattr__(self, 'coords', coords)

    @classmethod
    def of(cls, *values) -> 'Point':
        return cls(tuple(values))

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def ctx(self) -> Optional[BatchTable]:
        for c in self.coords:
            if c.ctx is not None:
                return c.ctx
        return None

    def _check_dim(self, other: 'Point'):
        if self.dim != other.dim:
            raise UsageError(f'dimension mismatch: {self.dim} vs {other.dim}')

    def __add__(self, other: 'Point') -> 'Point':
        self._check_dim(other)
        return Point(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: 'Point') -> 'Point':
        self._check_dim(other)
        return Point(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> 'Point':
        return Point(tuple(-x for x in self.coords))

    def scale(self, k) -> 'Point':
        k = nil(k)
        return Point(tuple(k * x for x in self.coords))

    def dot(self, other: 'Point') -> NilElement:
        self._check_dim(other)
        total = NilElement.constant(0)
        for x, y in zip(self.coords, other.coords):
            total = total + x * y
        return total

    def norm_sq(self) -> NilElement:
        return self.dot(self)

    def is_proper(self) -> bool:
        """Some coordinate is invertible."""
        return any(c.is_invertible() for c in self.coords)

    def pure(self) -> tuple:
        return tuple(c.pure_part() for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.dim == other.dim and all(c.is_zero() for c in (self - other).coords)

    __hash__ = None

    def __getitem__(self, i: int) -> NilElement:
        return self.coords[i]

    def __str__(self):
        return '(' + ', '.join(str(c) for c in self.coords) + ')'

    def __repr__(self):
        return f'Point{self}'


def zero_vector(n: int) -> Point:
    return Point(tuple(0 for _ in range(n)))


@dataclass(frozen=True, eq=False)
class Sphere:
    """S(center, radius) = {p | dist(center, p) = radius}."""
    center: Point
    radius: NilElement

    def __post_init__(self):
        radius = nil(self.radius)
        if radius.pure_part().sign() != 1:
            raise DomainError(f'sphere radius must have positive pure part, got {radius}')
        object.__setattr__(self, 'radius', radius)

    @property
    def dim(self) -> int:
        return self.center.dim

    def __str__(self):
        return f'S({self.center}, {self.radius})'


@dataclass(frozen=True, eq=False)
class Hyperplane:
    """Points p with <p - basepoint, normal> = 0."""
    basepoint: Point
    normal: Point

    def __post_init__(self):
        self.basepoint._check_dim(self.normal)
        if not self.normal.is_proper():
            raise DomainError(f'hyperplane normal {self.normal} is not a proper vector')

    @property
    def dim(self) -> int:
        return self.basepoint.dim

    def __str__(self):
        return f'H({self.basepoint}, n={self.normal})'


Figure = Union[Sphere, Hyperplane]


def _context(*objs) -> BatchTable:
    """The shared context of the inputs, or a private one for pure inputs."""
    ctx = None
    for obj in objs:
        if obj is None:
            continue
        if isinstance(obj, Sphere):
            found = obj.center.ctx or obj.radius.ctx
        elif isinstance(obj, Hyperplane):
            found = obj.basepoint.ctx or obj.normal.ctx
        else:
            found = obj.ctx
        if found is not None:
            if ctx is not None and found is not ctx:
                raise UsageError('inputs come from different batch contexts')
            ctx = found
    return ctx if ctx is not None else BatchTable()


# ---------------------------------------------------------------------------
# Apartness, neighbours, distance
# ---------------------------------------------------------------------------

def apart(x: Point, y: Point) -> bool:
    """x # y: some coordinate of y - x is invertible."""
    return (y - x).is_proper()


def neighbour(x: Point, y: Point) -> bool:
    """x ~ y: all pairwise products of coordinate differences vanish."""
    diff = (y - x).coords
    for i in range(len(diff)):
        for j in range(i, len(diff)):
            if not (diff[i] * diff[j]).is_zero():
                return False
    return True


def dist_sq(x: Point, y: Point) -> NilElement:
    return (y - x).norm_sq()


def dist(x: Point, y: Point) -> NilElement:
    if not apart(x, y):
        raise DomainError(f'distance needs apart points, got {x} and {y}')
    return nil_sqrt(dist_sq(x, y))


def triangle_sum_matches(a: Point, b: Point, c: Point) -> bool:
    """ab + bc = ac, exactly."""
    return (dist(a, b) + dist(b, c) - dist(a, c)).is_zero()


# ---------------------------------------------------------------------------
# Membership and monad conditions
# ---------------------------------------------------------------------------

def membership(F: Figure, p: Point) -> NilElement:
    """The residual that vanishes iff p lies on F (squared form for spheres)."""
    if isinstance(F, Sphere):
        return dist_sq(F.center, p) - F.radius * F.radius
    if isinstance(F, Hyperplane):
        return (p - F.basepoint).dot(F.normal)
    raise UsageError(f'not a sphere or hyperplane: {F!r}')


def on_sphere(S: Sphere, p: Point) -> bool:
    return membership(S, p).is_zero()


def on_hyperplane(H: Hyperplane, p: Point) -> bool:
    return membership(H, p).is_zero()


def on_figure(F: Figure, p: Point) -> bool:
    return membership(F, p).is_zero()


def generic_vector(batch: Batch) -> Point:
    return Point(tuple(batch.generators))


def monad_condition(F: Figure, b: Point, batch: Optional[Batch] = None) -> Point:
    """Coefficient vector c with b+d in F iff sum(c_i d_i) = 0 for generic d."""
    if not on_figure(F, b):
        raise UsageError(f'{b} is not on {F}')
    if batch is None:
        batch = _context(F, b).new_batch(b.dim)
    elif batch.size != b.dim:
        raise UsageError(f'batch of size {batch.size} cannot model a vector in R^{b.dim}')
    dec = kl_cancel(membership(F, b + generic_vector(batch)), batch)
    if not dec.constant.is_zero():
        raise PostconditionError(f'membership of {b} in {F} did not cancel')
    return Point(tuple(dec.coefficient_list()))


def _pivot(c: Point) -> int:
    for i, ci in enumerate(c.coords):
        if ci.is_invertible():
            return i
    raise DegenerateConfigurationError(f'linear form {c} has no invertible coefficient')


def proportional(u: Point, v: Point) -> bool:
    """u and v define the same kernel: v = lambda*u with lambda invertible."""
    u._check_dim(v)
    i = _pivot(u)
    if not v[i].is_invertible():
        return False
    for j in range(u.dim):
        for k in range(j + 1, u.dim):
            if not (u[j] * v[k] - u[k] * v[j]).is_zero():
                return False
    return True


def touches(A: Figure, B: Figure, b: Point) -> bool:
    """M(b) n A = M(b) n B, decided by proportional monad conditions."""
    if not (on_figure(A, b) and on_figure(B, b)):
        raise UsageError(f'{b} is not on both figures')
    ctx = _context(A, B, b)
    return proportional(
        monad_condition(A, b, ctx.new_batch(b.dim)),
        monad_condition(B, b, ctx.new_batch(b.dim)),
    )


@dataclass
class MonadSlice:
    """The generic element b + d of M(b) n F, parametrised by ``batch``."""
    base: Point
    point: Point
    batch: Batch

    @property
    def offset(self) -> Point:
        return self.point - self.base


def generic_slice(F: Optional[Figure], b: Point, name: Optional[str] = None,
                  ctx: Optional[BatchTable] = None) -> MonadSlice:
    """Generic element of M(b) n F; F=None gives the full monad M(b).

    Pass ``ctx`` when the slice is combined with elements of another
    context than the one of F and b.
    """
    if ctx is None:
        ctx = _context(F, b)
    n = b.dim
    if F is None:
        batch = ctx.new_batch(n, name)
        return MonadSlice(b, b + generic_vector(batch), batch)
    c = monad_condition(F, b, ctx.new_batch(n))
    i = _pivot(c)
    batch = ctx.new_batch(n - 1, name)
    free = iter(batch.generators)
    coords = [None] * n
    solved = NilElement.constant(0, ctx)
    for j in range(n):
        if j == i:
            continue
        t = next(free)
        coords[j] = t
        solved = solved - c[j] * t
    coords[i] = solved * nil_inverse(c[i])
    return MonadSlice(b, b + Point(tuple(coords)), batch)


def monad_contained(A: Figure, C: Figure, b: Point) -> bool:
    """M(b) n A is contained in C."""
    sl = generic_slice(A, b, ctx=_context(A, C, b))
    return kl_cancel(membership(C, sl.point), sl.batch).vanishes_generically()


@dataclass
class FocusResult:
    focused: bool
    focus: Optional[Point]


def is_focused(F: Optional[Figure], b: Point) -> FocusResult:
    """Whether M(b) n F (or M(b) when F is None) is focused, with focus b.

    Every element b+d neighbours b. For uniqueness a candidate x = b+e from
    the set that neighbours the generic b+d must have e = 0: the products
    (e_i - d_i)(e_j - d_j) are cancelled over d, leaving linear forms in e
    whose vanishing is tested with kl_forces_zero.
    """
    elements = generic_slice(F, b, None)
    if not neighbour(b, elements.point):
        return FocusResult(False, None)
    candidate = generic_slice(F, b, ctx=elements.batch.ctx)
    diff = (elements.point - candidate.point).coords
    forms = []
    for i in range(len(diff)):
        for j in range(i, len(diff)):
            dec = kl_cancel(diff[i] * diff[j], elements.batch)
            forms.extend(c for c in dec.coefficient_list() if not c.is_zero())
    if not kl_forces_zero(forms, candidate.batch):
        return FocusResult(False, None)
    return FocusResult(True, b)


def equidistant_over_slice(x: Point, F: Optional[Figure], b: Point) -> bool:
    """dist(x, b') = dist(x, b) for every b' in M(b) n F (squared, generic)."""
    sl = generic_slice(F, b, ctx=_context(x, F, b))
    residual = dist_sq(x, sl.point) - dist_sq(x, b)
    return kl_cancel(residual, sl.batch).vanishes_generically()


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def _check_apart_centres(A: Sphere, C: Sphere):
    A.center._check_dim(C.center)
    if not apart(A.center, C.center):
        raise DegenerateConfigurationError(f'centres of {A} and {C} are not apart')


def _verify_touching_point(A: Sphere, C: Sphere, b: Point, between: tuple):
    if not (on_sphere(A, b) and on_sphere(C, b)):
        raise PostconditionError(f'{b} is not on both {A} and {C}')
    if not touches(A, C, b):
        raise PostconditionError(f'{A} and {C} do not touch at {b}')
    if not triangle_sum_matches(*between):
        raise PostconditionError(f'triangle equality fails for {between}')


def touching_point_external(A: Sphere, C: Sphere) -> Point:
    """The point where S(a,r) and S(c,s) touch from outside, ac = r+s."""
    _check_apart_centres(A, C)
    a, c, r, s = A.center, C.center, A.radius, C.radius
    if not (dist_sq(a, c) - (r + s) * (r + s)).is_zero():
        raise NotTouchingError(f'centre distance of {A} and {C} is not r+s')
    b = a + (c - a).scale(r * nil_inverse(r + s))
    _verify_touching_point(A, C, b, (a, b, c))
    return b


def touching_point_internal(A: Sphere, B: Sphere) -> Point:
    """The point where S(b,s) touches S(a,r+s) from inside, ab = r."""
    _check_apart_centres(A, B)
    a, b, outer, s = A.center, B.center, A.radius, B.radius
    r = outer - s
    if r.pure_part().sign() != 1:
        raise NotTouchingError(f'{B} is not smaller than {A}')
    if not (dist_sq(a, b) - r * r).is_zero():
        raise NotTouchingError(f'centre distance of {A} and {B} is not the radius difference')
    c = a + (b - a).scale(outer * nil_inverse(r))
    _verify_touching_point(A, B, c, (a, b, c))
    return c


def foot(a: Point, U: Hyperplane) -> Point:
    """Orthogonal projection of a onto U, checked by generic equidistance."""
    offset = (a - U.basepoint).dot(U.normal)
    if offset.pure_part().sign() == 0:
        raise DegenerateConfigurationError(f'{a} is not apart from {U}')
    f = a - U.normal.scale(offset * nil_inverse(U.normal.norm_sq()))
    if not equidistant_over_slice(a, U, f):
        raise PostconditionError(f'{f} is not equidistant from {a} over its slice')
    return f


def sphere_hyperplane_at(A: Sphere, b: Point) -> Hyperplane:
    """The hyperplane through b orthogonal to b - centre."""
    if not on_sphere(A, b):
        raise UsageError(f'{b} is not on {A}')
    return Hyperplane(b, b - A.center)


def chord_orthogonal(A: Sphere, B: Sphere, x: Point, y: Point) -> bool:
    """<x - y, a - b> = 0 for x, y on both spheres."""
    _check_apart_centres(A, B)
    for p in (x, y):
        if not (on_sphere(A, p) and on_sphere(B, p)):
            raise UsageError(f'{p} is not on both spheres')
    return (x - y).dot(A.center - B.center).is_zero()


def sphere_touches_hyperplane_at_foot(a: Point, H: Hyperplane) -> bool:
    f = foot(a, H)
    return touches(Sphere(a, dist(a, f)), H, f)

