"""Contact elements, wavefront steps, sampled hypersurfaces and envelopes.

A contact element at b is the set M(b) n A for any sphere A through b; it
is stored as (base, normal) with the orientation sign selecting which
touching spheres count as inside. Inside spheres have their centres at
b - t*o*n for t > 0, where n is the unit normal and o the orientation, so
the wavefront moves towards +o*n.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .errors import AssumptionViolationError, DomainError, NotTouchingError, PostconditionError, UsageError
from .geomcore import (
    Hyperplane,
    Point,
    Sphere,
    apart,
    dist,
    equidistant_over_slice,
    is_focused,
    monad_contained,
    neighbour,
    on_hyperplane,
    on_sphere,
    proportional,
    touches,
    touching_point_external,
    touching_point_internal,
    _pivot,
)
from .nilalg import NilElement, nil, nil_inverse, nil_less, nil_sqrt
from .scalars import Scalar
from .synthops import Ray, collinear, extrapolate, interpolate

log = logging.getLogger(__name__)

INSIDE = 'inside'
OUTSIDE = 'outside'


# ---------------------------------------------------------------------------
# Contact elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ContactElement:
    """P = {b + d : <d, normal> = 0}, with a transversal orientation."""
    base: Point
    normal: Point
    orientation: int = 1

    def __post_init__(self):
        self.base._check_dim(self.normal)
        if not self.normal.is_proper():
            raise DomainError(f'contact normal {self.normal} is not a proper vector')
        if self.orientation not in (1, -1):
            raise UsageError(f'orientation must be +1 or -1, got {self.orientation}')

    @property
    def hyperplane(self) -> Hyperplane:
        """The hyperplane whose monad slice at base is this element."""
        return Hyperplane(self.base, self.normal)

    def unit_normal(self) -> Point:
        """The unit normal pointing to the positive side."""
        length = nil_sqrt(self.normal.norm_sq())
        return self.normal.scale(nil_inverse(length) * self.orientation)

    def same_set(self, other: 'ContactElement') -> bool:
        return self.base == other.base and proportional(self.normal, other.normal)

    def __eq__(self, other):
        if not isinstance(other, ContactElement):
            return NotImplemented
        if not self.same_set(other):
            return False
        i = _pivot(self.normal)
        ratio = other.normal[i] * nil_inverse(self.normal[i])
        return ratio.pure_part().sign() * self.orientation * other.orientation == 1

    __hash__ = None

    def __str__(self):
        return f'P({self.base}, n={self.normal}, o={self.orientation:+d})'


def contact_from_sphere(A: Sphere, b: Point, side: str = INSIDE) -> ContactElement:
    """M(b) n A, oriented so that A is an inside (or outside) representative."""
    if not on_sphere(A, b):
        raise UsageError(f'{b} is not on {A}')
    if side not in (INSIDE, OUTSIDE):
        raise UsageError(f'side must be {INSIDE!r} or {OUTSIDE!r}, got {side!r}')
    return ContactElement(b, b - A.center, 1 if side == INSIDE else -1)


def inside_sphere(P: ContactElement, t) -> Sphere:
    """The inside representative of P with radius t."""
    t = nil(t)
    return Sphere(P.base - P.unit_normal().scale(t), t)


def contact_focused(P: ContactElement) -> bool:
    result = is_focused(P.hyperplane, P.base)
    return result.focused and result.focus == P.base


def united_position(P: ContactElement, Q: ContactElement) -> bool:
    """Each base lies in the other element and the bases are neighbours."""
    return (
        on_hyperplane(P.hyperplane, Q.base)
        and on_hyperplane(Q.hyperplane, P.base)
        and neighbour(P.base, Q.base)
    )


# ---------------------------------------------------------------------------
# Orthogonality and orientation
# ---------------------------------------------------------------------------

def orthogonal(c: Point, P: ContactElement) -> bool:
    """c is orthogonal to P: every b' in P has b'c = bc."""
    if not apart(c, P.base):
        raise UsageError(f'{c} is not apart from the base of {P}')
    return equidistant_over_slice(c, P.hyperplane, P.base)


def orthogonal_iff_contained(c: Point, P: ContactElement) -> bool:
    """c is orthogonal to P exactly when P lies inside S(c, bc)."""
    contained = monad_contained(P.hyperplane, Sphere(c, dist(c, P.base)), P.base)
    return orthogonal(c, P) == contained


def positive_side(c: Point, P: ContactElement) -> bool:
    """c is orthogonal to P and lies on its positive side."""
    if not orthogonal(c, P):
        return False
    return ((c - P.base).dot(P.normal) * P.orientation).pure_part().sign() == 1


def same_orientation_class(A: Sphere, B: Sphere, b: Point) -> bool:
    """Spheres touching at b select the same orientation iff they touch internally."""
    if not touches(A, B, b):
        raise UsageError(f'{A} and {B} do not touch at {b}')
    return (A.center - b).dot(B.center - b).pure_part().sign() == 1


# ---------------------------------------------------------------------------
# Wavefront steps
# ---------------------------------------------------------------------------

def _positive(s) -> NilElement:
    s = nil(s)
    if not nil_less(0, s):
        raise DomainError(f'step {s} is not positive')
    return s


def front_step(P: ContactElement, s) -> Point:
    """P |- s: the point at distance s along the oriented normal."""
    s = _positive(s)
    return P.base + P.unit_normal().scale(s)


def _check_representative(P: ContactElement, A: Sphere):
    if not contact_from_sphere(A, P.base, INSIDE) == P:
        raise UsageError(f'{A} is not an inside representative of {P}')


def front_step_via_sphere(P: ContactElement, s, A: Sphere) -> Point:
    """P |- s computed as a |>_s b for an inside representative S(a, r)."""
    _check_representative(P, A)
    return extrapolate(A.center, P.base, _positive(s))


def flow_step(P: ContactElement, s) -> ContactElement:
    """P |= s: the contact element at P |- s with the same normal."""
    return ContactElement(front_step(P, s), P.normal, P.orientation)


def flow_step_via_sphere(P: ContactElement, s, A: Sphere) -> ContactElement:
    """P |= s as M(a |>_s b) n S(a, r+s)."""
    s = _positive(s)
    base = front_step_via_sphere(P, s, A)
    return contact_from_sphere(Sphere(A.center, A.radius + s), base, INSIDE)


def contact_ray(P: ContactElement) -> Ray:
    """s -> P |- s as a ray from an inside representative's centre."""
    return Ray(inside_sphere(P, 1).center, P.base)


def inflate(A: Sphere, t) -> Sphere:
    return Sphere(A.center, A.radius + _positive(t))


@dataclass
class InflationRecord:
    touching_point: Point
    inflated_point: Point
    chain_holds: bool


def inflate_preserves_touching(A: Sphere, B: Sphere, t) -> InflationRecord:
    """For B inside A touching at c, the t-inflations touch at a |>_(s+t) b = b |>_t c."""
    t = _positive(t)
    c = touching_point_internal(A, B)
    c_inflated = touching_point_internal(inflate(A, t), inflate(B, t))
    via_centres = extrapolate(A.center, B.center, B.radius + t)
    via_point = extrapolate(B.center, c, t)
    return InflationRecord(c, c_inflated, c_inflated == via_centres == via_point)


def external_inflation_touches(A: Sphere, C: Sphere, t) -> bool:
    """Whether inflating both externally touching spheres by t keeps them touching."""
    try:
        touching_point_external(inflate(A, t), inflate(C, t))
    except NotTouchingError:
        return False
    return True


# ---------------------------------------------------------------------------
# Sampled hypersurfaces
# ---------------------------------------------------------------------------

@dataclass
class OrientedHypersurface:
    samples: list = field(default_factory=list)  # List[ContactElement]

    def __len__(self):
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    def bases(self) -> list:
        return [P.base for P in self.samples]


def stereographic_unit_vector(u: tuple) -> tuple:
    """Rational point on the unit sphere in R^(len(u)+1) from u in Q^len(u)."""
    u = [Fraction(x) for x in u]
    q = sum(x * x for x in u)
    return ((q - 1) / (q + 1),) + tuple(2 * x / (q + 1) for x in u)


def _circle_directions(m: int) -> list:
    if 24 % m == 0:
        out = []
        for k in range(m):
            angle = 2 * sympy.pi * k / m
            out.append((Scalar(sympy.cos(angle)), Scalar(sympy.sin(angle))))
        return out
    return [tuple(Scalar(x) for x in stereographic_unit_vector((Fraction(2 * k + 1 - m, m),)))
            for k in range(m)]


def _grid_base(n: int, m: int) -> int:
    """Smallest base b with b^(n-1) >= m."""
    base = 2
    while base ** (n - 1) < m:
        base += 1
    return base


def _sphere_directions(n: int, m: int) -> list:
    if n == 1:
        if m > 2:
            raise UsageError(f'the sphere in R^1 has two points, asked for {m}')
        return [(Scalar(1),), (Scalar(-1),)][:m]
    if n == 2:
        return _circle_directions(m)
    base = _grid_base(n, m)
    out = []
    for k in range(m):
        # base-b digits of k give distinct grid points in Q^(n-1)
        u = tuple(Fraction((k // base ** j) % base - base // 2, 2) for j in range(n - 1))
        out.append(tuple(Scalar(x) for x in stereographic_unit_vector(u)))
    return out


def sample_sphere(center: Point, r, m: int, orientation: int = 1) -> OrientedHypersurface:
    """m exact samples of S(center, r); orientation +1 moves fronts outward."""
    if m < 1:
        raise UsageError('sample count must be positive')
    r = nil(r)
    samples = []
    for direction in _sphere_directions(center.dim, m):
        u = Point(direction)
        samples.append(ContactElement(center + u.scale(r), u, orientation))
    return OrientedHypersurface(samples)


def sample_hyperplane(H: Hyperplane, m: int, spacing=1, orientation: int = 1) -> OrientedHypersurface:
    """m samples spaced along one tangent direction of H."""
    if m < 1:
        raise UsageError('sample count must be positive')
    n = H.normal
    p = _pivot(n)
    q = (p + 1) % H.dim
    coords = [0] * H.dim
    coords[q], coords[p] = n[p], -n[q]
    tangent = Point(tuple(coords))
    spacing = nil(spacing)
    samples = [
        ContactElement(H.basepoint + tangent.scale(spacing * k), n, orientation)
        for k in range(m)
    ]
    return OrientedHypersurface(samples)


def feet_on_surface(x: Point, B: OrientedHypersurface) -> list:
    """Indices of samples whose contact element x is orthogonal to."""
    return [i for i, P in enumerate(B.samples) if orthogonal(x, P)]


def fronts_at(x: Point, B: OrientedHypersurface, s) -> list:
    """Indices j with x = B(j) |- s: feet at distance s on the positive side."""
    s = nil(s)
    return [
        i for i, P in enumerate(B.samples)
        if positive_side(x, P) and (dist(x, P.base) - s).is_zero()
    ]


def _check_envelope(P: ContactElement, s: NilElement, stepped: Point) -> bool:
    inner = Sphere(P.base, s)
    outer = inflate(inside_sphere(P, 1), s)
    if not (on_sphere(inner, stepped) and on_sphere(outer, stepped)):
        return False
    return touches(inner, outer, stepped)


def parallel_surface(B: OrientedHypersurface, s, check_feet: bool = True) -> OrientedHypersurface:
    """B |- s, each sample flowed by s, with envelope and foot checks."""
    s = _positive(s)
    flowed = []
    violations = []
    for i, P in enumerate(B.samples):
        Q = flow_step(P, s)
        if check_feet and fronts_at(Q.base, B, s) != [i]:
            violations.append(i)
            continue
        if not _check_envelope(P, s, Q.base):
            raise PostconditionError(f'S({P.base}, {s}) does not touch the parallel surface at sample {i}')
        flowed.append(Q)
    if violations:
        raise AssumptionViolationError(
            f'stepped points do not have a unique foot at samples {violations}', violations,
        )
    log.debug('Parallel surface at distance %s over %d samples', s, len(flowed))
    return OrientedHypersurface(flowed)


@dataclass
class SampleOutcome:
    index: int
    base: str
    stepped: str
    feet: list
    touches: bool

    @property
    def passed(self) -> bool:
        return self.feet == [self.index] and self.touches


def envelope_outcomes(B: OrientedHypersurface, s) -> list:
    """Per-sample envelope verification, without raising on failures."""
    s = _positive(s)
    out = []
    for i, P in enumerate(B.samples):
        stepped = front_step(P, s)
        out.append(SampleOutcome(
            index=i,
            base=str(P.base),
            stepped=str(stepped),
            feet=fronts_at(stepped, B, s),
            touches=_check_envelope(P, s, stepped),
        ))
    return out


# ---------------------------------------------------------------------------
# Huygens for spheres
# ---------------------------------------------------------------------------

@dataclass
class HuygensRecord:
    center: Point
    r: NilElement
    s: NilElement
    sources: list = field(default_factory=list)     # sampled b on S(a, r)
    fronts: list = field(default_factory=list)      # a |>_s b
    forward: list = field(default_factory=list)     # S(b,s) touches S(a,r+s) at a |>_s b
    converse: list = field(default_factory=list)    # sampled c on S(a,r+s) touched by S(a <|_s c, s)

    @property
    def passed(self) -> bool:
        return all(self.forward) and all(self.converse)

    @property
    def check_count(self) -> int:
        return len(self.forward) + len(self.converse)


def huygens_sphere_envelope(a: Point, r, s, m: int) -> HuygensRecord:
    """S(a, r+s) is an envelope of the S(b, s) for b on S(a, r), at m samples."""
    r, s = nil(r), nil(s)
    if not (nil_less(0, r) and nil_less(0, s)):
        raise DomainError('radii must be positive')
    outer = Sphere(a, r + s)
    source = Sphere(a, r)
    record = HuygensRecord(a, r, s)
    for P in sample_sphere(a, r, m):
        b = P.base
        c = extrapolate(a, b, s)
        wave = Sphere(b, s)
        ok = on_sphere(wave, c) and on_sphere(outer, c) and touches(wave, outer, c)
        record.sources.append(b)
        record.fronts.append(c)
        record.forward.append(ok)
    for P in sample_sphere(a, r + s, m):
        c = P.base
        b = interpolate(a, c, s)
        wave = Sphere(b, s)
        ok = (
            on_sphere(source, b)
            and extrapolate(a, b, s) == c
            and interpolate(a, extrapolate(a, b, s), s) == b
            and touches(wave, outer, c)
        )
        record.converse.append(ok)
    log.info('Huygens envelope: %d/%d checks passed',
             sum(record.forward) + sum(record.converse), record.check_count)
    return record


def orthogonality_transfers(a: Point, b: Point, c: Point, P: ContactElement) -> bool:
    """Given [abc] and P at one of the three points, the other two are both
    orthogonal to P or both not."""
    if not collinear(a, b, c):
        raise UsageError(f'[{a} {b} {c}] does not hold')
    others = [p for p in (a, b, c) if not p == P.base]
    if len(others) != 2:
        raise UsageError(f'{P} is not based at one of the three points')
    return orthogonal(others[0], P) == orthogonal(others[1], P)
