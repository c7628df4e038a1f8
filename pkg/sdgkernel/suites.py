"""Registered property checks.

Each check builds a random exact configuration, asserts the property on it,
and then runs its negative control: a deliberately violated configuration
that must be rejected. With ``corrupt`` set the control is asserted instead,
so every check fails by construction (guards against vacuous passes).
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .contactwave import (
    ContactElement,
    contact_focused,
    external_inflation_touches,
    flow_step,
    flow_step_via_sphere,
    front_step,
    front_step_via_sphere,
    huygens_sphere_envelope,
    inflate,
    inflate_preserves_touching,
    inside_sphere,
    orthogonal,
    orthogonality_transfers,
    parallel_surface,
    positive_side,
    sample_hyperplane,
    sample_sphere,
    same_orientation_class,
    united_position,
)
from .errors import AssumptionViolationError, DegenerateConfigurationError, NotTouchingError, UsageError
from .generators import (
    apart_point,
    collinear_triple,
    orthogonal_offset,
    random_orthogonal,
    random_point,
    random_positive,
    random_rational,
    random_unit_vector,
    touching_spheres,
)
from .geomcore import (
    Hyperplane,
    Point,
    Sphere,
    apart,
    chord_orthogonal,
    dist,
    equidistant_over_slice,
    foot,
    generic_slice,
    is_focused,
    monad_contained,
    neighbour,
    on_hyperplane,
    on_sphere,
    sphere_hyperplane_at,
    sphere_touches_hyperplane_at_foot,
    touches,
    touching_point_external,
    touching_point_internal,
    zero_vector,
)
from .nilalg import BatchTable, nil_less
from .synthops import (
    CONDITIONS,
    POSITIONS,
    Ray,
    aligned,
    collinear,
    collinear_by_touching,
    collinear_condition,
    collinearity_associativity,
    extrapolate,
    extrapolate_source_invariance,
    extrapolation_is_unique,
    interpolate,
    interpolation_is_unique,
    non_ray_isometry,
    ray_compose,
    ray_isometry,
    ray_points_aligned,
    touching_centers_aligned,
    triangle_equality,
)

log = logging.getLogger(__name__)


class CheckFailure(Exception):
    """A property or negative control did not hold."""


@dataclass
class Trial:
    """Everything one trial of one check may use."""
    check_id: str
    index: int
    dim: int
    seed: int
    rng: random.Random
    corrupt: bool = False
    ctx: BatchTable = field(default_factory=BatchTable)
    inputs: dict = field(default_factory=dict)

    def note(self, **named):
        for key, value in named.items():
            self.inputs[key] = str(value)

    def eps(self, name: str):
        return self.ctx.new_batch(1, name).generators[0]

    def expect(self, condition: bool, message: str):
        if not condition:
            raise CheckFailure(message)

    def reject(self, condition: bool, message: str):
        """Negative control: ``condition`` describes the violated configuration."""
        if self.corrupt:
            self.expect(condition, f'negative control asserted: {message}')
        else:
            self.expect(not condition, f'negative control accepted: {message}')


@dataclass(frozen=True)
class Check:
    check_id: str
    summary: str
    run: Callable
    dim: Optional[int] = None  # fixed dimension overriding the scenario's
    min_dim: int = 2


CHECKS: dict = {}


def register(check_id: str, summary: str, dim: Optional[int] = None, min_dim: int = 2):
    def wrap(fn):
        CHECKS[check_id] = Check(check_id, summary, fn, dim, min_dim)
        return fn
    return wrap


def list_checks() -> list:
    return list(CHECKS.values())


def resolve_checks(ids) -> list:
    """Checks for the given ids in registry order; empty or 'all' means every check."""
    ids = [i for i in (ids or []) if i]
    if not ids or ids == ['all']:
        return list_checks()
    unknown = [i for i in ids if i not in CHECKS]
    if unknown:
        raise UsageError(f'unknown check ids: {", ".join(unknown)}')
    return [c for c in CHECKS.values() if c.check_id in ids]


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _axis_point(n: int, value, axis: int = 0) -> Point:
    coords = [0] * n
    coords[axis] = value
    return Point(tuple(coords))


def _constructs(fn, *args) -> bool:
    try:
        fn(*args)
    except (NotTouchingError, DegenerateConfigurationError):
        return False
    return True


def _crossing_sphere(t: Trial, A: Sphere, b: Point) -> Sphere:
    """A sphere through b whose centre sits off the normal line of A at b."""
    q = b + random_orthogonal(t.rng, b - A.center) + (b - A.center).scale(random_rational(t.rng))
    return Sphere(q, dist(q, b))


def _tilted_hyperplane(t: Trial, normal: Point, b: Point) -> Hyperplane:
    return Hyperplane(b, normal + random_orthogonal(t.rng, normal))


def _perturbed(t: Trial, b: Point, along: Point, name: str) -> Point:
    """b moved by eps in a direction orthogonal to ``along``."""
    return b + random_orthogonal(t.rng, along).scale(t.eps(name))


def _random_contact(t: Trial) -> ContactElement:
    base = random_point(t.rng, t.dim)
    normal = random_unit_vector(t.rng, t.dim).scale(random_positive(t.rng, 9))
    return ContactElement(base, normal, t.rng.choice((1, -1)))


def _point_on_sphere(t: Trial):
    center = random_point(t.rng, t.dim)
    r = random_positive(t.rng)
    A = Sphere(center, r)
    return A, center + random_unit_vector(t.rng, t.dim).scale(r)


def _increasing(t: Trial, count: int) -> list:
    values = sorted({random_positive(t.rng) for _ in range(count)})
    if len(values) < count:
        raise DegenerateConfigurationError('repeated random parameters')
    return values


# ---------------------------------------------------------------------------
# Metric structure and touching
# ---------------------------------------------------------------------------

@register('obtuse-triangle', "height-eps triangle: (ab'c) holds while [ab'c] fails")
def _obtuse_triangle(t: Trial):
    n = t.dim
    r, s = (3, 4) if t.index == 0 else (random_positive(t.rng), random_positive(t.rng))
    eps = t.eps('eps')
    a, b, c = _axis_point(n, -r), zero_vector(n), _axis_point(n, s)
    b_prime = _axis_point(n, eps, axis=1)
    t.note(a=a, b=b, b_prime=b_prime, c=c)
    t.expect(dist(a, b_prime) == r, "ab' differs from r")
    t.expect(dist(b_prime, c) == s, "b'c differs from s")
    t.expect(triangle_equality(a, b_prime, c), "(ab'c) fails")
    t.expect(collinear(a, b, c), '[abc] fails on the axis')
    t.reject(collinear(a, b_prime, c), "[ab'c] holds for the lifted middle point")


@register('sphere-monad-containment', 'one-sided containment of sphere monads is equality')
def _sphere_monad_containment(t: Trial):
    cfg = touching_spheres(t.rng, t.dim)
    A, C = cfg['A'], cfg['C']
    b = touching_point_external(A, C)
    c = touching_point_internal(cfg['outer'], cfg['B'])
    t.note(A=A, C=C, b=b, outer=cfg['outer'], B=cfg['B'], c=c)
    t.expect(monad_contained(A, C, b) and monad_contained(C, A, b), 'external pair containment is one-sided')
    t.expect(monad_contained(cfg['outer'], cfg['B'], c) and monad_contained(cfg['B'], cfg['outer'], c),
             'internal pair containment is one-sided')
    crossing = _crossing_sphere(t, A, b)
    t.note(crossing=crossing)
    t.reject(monad_contained(A, crossing, b), 'crossing sphere contains the monad slice')


@register('touching-focused', 'touching spheres touch in a focused set at a unique point')
def _touching_focused(t: Trial):
    cfg = touching_spheres(t.rng, t.dim)
    A, C = cfg['A'], cfg['C']
    b = touching_point_external(A, C)
    t.note(A=A, C=C, b=b)
    t.expect(touches(A, C, b), 'spheres do not touch at b')
    for F in (A, C):
        result = is_focused(F, b)
        t.expect(result.focused and result.focus == b, f'M(b) n {F} is not focused at b')
    antipode = A.center.scale(2) - b
    t.expect(not on_sphere(C, antipode), 'second touching point found')
    crossing = _crossing_sphere(t, A, b)
    t.note(crossing=crossing)
    t.reject(touches(A, crossing, b), 'crossing spheres touch')


@register('external-touching', 'S(a,r), S(c,s) with ac = r+s touch at a <|_s c')
def _external_touching(t: Trial):
    cfg = touching_spheres(t.rng, t.dim)
    A, C = cfg['A'], cfg['C']
    a, c, r, s = A.center, C.center, A.radius, C.radius
    b = touching_point_external(A, C)
    t.note(A=A, C=C, b=b)
    t.expect(b == a + (c - a).scale(r / (r + s)), 'touching point differs from the affine formula')
    t.expect(b == interpolate(a, c, s), 'touching point differs from a <|_s c')
    t.expect(triangle_equality(a, b, c) and collinear(a, b, c), '[abc] fails')
    bad = Sphere(c, s + random_positive(t.rng))
    t.note(bad=bad)
    t.reject(_constructs(touching_point_external, A, bad), 'touching point built although ac != r+s')


@register('internal-touching', 'S(b,s) inside S(a,r+s) with ab = r touch at a |>_s b')
def _internal_touching(t: Trial):
    cfg = touching_spheres(t.rng, t.dim)
    outer, B = cfg['outer'], cfg['B']
    a, b = outer.center, B.center
    c = touching_point_internal(outer, B)
    t.note(outer=outer, B=B, c=c)
    r = outer.radius - B.radius
    t.expect(c == a + (b - a).scale(outer.radius / r), 'touching point differs from the affine formula')
    t.expect(c == extrapolate(a, b, B.radius), 'touching point differs from a |>_s b')
    t.expect(collinear(a, b, c), '[abc] fails')
    bad = Sphere(b, B.radius + random_positive(t.rng))
    t.note(bad=bad)
    t.reject(_constructs(touching_point_internal, outer, bad), 'touching point built although ab != r')


@register('one-sided-touching', 'one-directional generic implication upgrades to touching')
def _one_sided_touching(t: Trial):
    cfg = touching_spheres(t.rng, t.dim)
    A, C = cfg['A'], cfg['C']
    b = touching_point_external(A, C)
    t.note(A=A, C=C, b=b)
    t.expect(monad_contained(A, C, b), 'premise containment fails')
    t.expect(touches(A, C, b), 'containment did not upgrade to touching')
    tilted = _tilted_hyperplane(t, b - A.center, b)
    t.note(tilted=tilted)
    t.reject(monad_contained(A, tilted, b), 'tilted hyperplane contains the sphere slice')


# ---------------------------------------------------------------------------
# Collinearity
# ---------------------------------------------------------------------------

@register('six-conditions', 'the six generic conditions agree on collinear and perturbed triples')
def _six_conditions(t: Trial):
    tri = collinear_triple(t.rng, t.dim)
    a, b, c = tri['a'], tri['b'], tri['c']
    t.note(a=a, b=b, c=c)
    for which in CONDITIONS:
        t.expect(collinear_condition(a, b, c, which), f'condition {which} fails on a collinear triple')
    b_prime = _perturbed(t, b, c - a, 'eps')
    t.note(b_prime=b_prime)
    t.expect(triangle_equality(a, b_prime, c), "(ab'c) fails on the perturbed triple")
    t.reject(any(collinear_condition(a, b_prime, c, w) for w in CONDITIONS),
             'a collinearity condition holds on the perturbed triple')


@register('radial-round-trip', 'a <|_s (a |>_s b) = b and a |>_s (a <|_s c) = c')
def _radial_round_trip(t: Trial):
    tri = collinear_triple(t.rng, t.dim)
    a, b = tri['a'], tri['b']
    s = random_positive(t.rng)
    c = extrapolate(a, b, s)
    t.note(a=a, b=b, s=s, c=c)
    t.expect(interpolate(a, c, s) == b, 'interpolation does not undo extrapolation')
    s2 = dist(a, c) * Fraction(t.rng.randint(1, 9), 10)
    t.expect(extrapolate(a, interpolate(a, c, s2), s2) == c, 'extrapolation does not undo interpolation')
    c_prime = _perturbed(t, c, c - b, 'eps')
    t.note(c_prime=c_prime)
    t.expect(dist(b, c_prime) == s, "bc' differs from s")
    t.reject(collinear(a, b, c_prime), "[abc'] holds for the perturbed point")


@register('radial-uniqueness', 'distance and [abc] pin a |>_s b and a <|_s c')
def _radial_uniqueness(t: Trial):
    tri = collinear_triple(t.rng, t.dim)
    a, b, c = tri['a'], tri['b'], tri['c']
    s = random_positive(t.rng)
    t.note(a=a, b=b, c=c, s=s)
    t.expect(extrapolation_is_unique(a, b, s), 'extrapolation is not pinned')
    s2 = dist(b, c)
    t.expect(interpolation_is_unique(a, c, s2), 'interpolation is not pinned')
    t.reject(extrapolation_is_unique(a, b, s, stiff=False), 'the triangle equality alone pins the point')


@register('collinearity-closure', 'two order-fixing brackets of four points imply all four')
def _collinearity_closure(t: Trial):
    tri = collinear_triple(t.rng, t.dim)
    a, b, c = tri['a'], tri['b'], tri['c']
    d = extrapolate(b, c, random_positive(t.rng))
    t.note(a=a, b=b, c=c, d=d)
    rec = collinearity_associativity(a, b, c, d)
    t.expect(rec.triggered and rec.closed and len(rec.holding) == 4, f'brackets {rec.brackets}')
    d_prime = _perturbed(t, d, d - c, 'eps')
    t.note(d_prime=d_prime)
    bent = collinearity_associativity(a, b, c, d_prime)
    t.expect(bent.closed, f'closure fails on {bent.brackets}')
    t.reject(len(bent.holding) == 4, 'all brackets hold for a bent quadruple')


@register('source-invariance', "[a'ab] implies a' |>_s b = a |>_s b")
def _source_invariance(t: Trial):
    n = t.dim
    a_prime = random_point(t.rng, n)
    u = random_unit_vector(t.rng, n)
    a = a_prime + u.scale(random_positive(t.rng))
    b = a + u.scale(random_positive(t.rng))
    s = random_positive(t.rng)
    t.note(a_prime=a_prime, a=a, b=b, s=s)
    t.expect(extrapolate_source_invariance(a_prime, a, b, s), 'extrapolations differ')
    off = a + random_orthogonal(t.rng, u)
    t.note(off=off)
    t.reject(extrapolate(off, b, s) == extrapolate(a, b, s), 'off-line source gives the same point')


@register('centers-aligned', 'centres and touching point of touching spheres are aligned')
def _centers_aligned(t: Trial):
    cfg = touching_spheres(t.rng, t.dim)
    A, C = cfg['A'], cfg['C']
    t.note(A=A, C=C, outer=cfg['outer'], B=cfg['B'])
    t.expect(touching_centers_aligned(A, C), 'external pair not aligned')
    t.expect(touching_centers_aligned(cfg['outer'], cfg['B']), 'internal pair not aligned')
    b = touching_point_external(A, C)
    b_prime = _perturbed(t, b, C.center - A.center, 'eps')
    t.note(b_prime=b_prime)
    t.reject(aligned(A.center, b_prime, C.center), 'perturbed touching point is aligned')


@register('touching-collinearity', '[abc] in its three touching forms')
def _touching_collinearity(t: Trial):
    tri = collinear_triple(t.rng, t.dim)
    a, b, c = tri['a'], tri['b'], tri['c']
    t.note(a=a, b=b, c=c)
    for pos in POSITIONS:
        t.expect(collinear_by_touching(a, b, c, pos), f'touching form at {pos} fails')
    b_prime = _perturbed(t, b, c - a, 'eps')
    t.note(b_prime=b_prime)
    t.reject(any(collinear_by_touching(a, b_prime, c, pos) for pos in POSITIONS),
             'a touching form holds on the perturbed triple')


# ---------------------------------------------------------------------------
# Rays
# ---------------------------------------------------------------------------

@register('ray-semigroup', 'a |>_t (a |>_s b) = a |>_(s+t) b')
def _ray_semigroup(t: Trial):
    a = random_point(t.rng, t.dim)
    b = apart_point(t.rng, t.dim, a)
    ray = Ray(a, b)
    s, u = random_positive(t.rng), random_positive(t.rng)
    t.note(a=a, b=b, s=s, t=u)
    t.expect(ray_compose(ray, s, u), 'composition differs from the summed step')
    tilted = _perturbed(t, a, b - a, 'eps')
    t.note(tilted=tilted)
    t.reject(extrapolate(tilted, ray.eval(s), u) == ray.eval(s + u), 'tilted director composes')


@register('ray-isometry', 'dist(R(s), R(t)) = |t - s| and ray points are aligned')
def _ray_isometry(t: Trial):
    a = random_point(t.rng, t.dim)
    b = apart_point(t.rng, t.dim, a)
    ray = Ray(a, b)
    s, u, v = _increasing(t, 3)
    t.note(a=a, b=b, s=s, t=u, u=v)
    t.expect(ray_isometry(ray, s, u) and ray_isometry(ray, u, s), 'ray is not isometric')
    t.expect(ray_points_aligned(ray, s, u, v), 'ray points are not aligned')
    witness = non_ray_isometry(t.eps('eps'), s, u, v)
    t.reject(witness.collinear, 'parabola points are collinear')


@register('non-ray-isometry', 's -> (s, eps*s^2) is isometric with (xyz) but not [xyz]', dim=2)
def _non_ray_isometry(t: Trial):
    s1, s2, s3 = _increasing(t, 3)
    eps = t.eps('eps')
    t.note(s1=s1, s2=s2, s3=s3)
    witness = non_ray_isometry(eps, s1, s2, s3)
    t.expect(witness.isometric, 'parabola map is not isometric')
    t.expect(witness.triangle, '(xyz) fails')
    t.reject(witness.collinear, '[xyz] holds although eps is not zero')


# ---------------------------------------------------------------------------
# Contact elements and wavefronts
# ---------------------------------------------------------------------------

@register('orthogonality-transfer', 'orthogonality to P transfers along [abc] at all three positions')
def _orthogonality_transfer(t: Trial):
    tri = collinear_triple(t.rng, t.dim)
    a, b, c = tri['a'], tri['b'], tri['c']
    t.note(a=a, b=b, c=c)
    for base in (a, b, c):
        along = ContactElement(base, c - a)
        tilted = ContactElement(base, (c - a) + random_orthogonal(t.rng, c - a))
        t.expect(orthogonality_transfers(a, b, c, along), 'transfer fails for the normal contact element')
        t.expect(orthogonality_transfers(a, b, c, tilted), 'transfer fails for a tilted contact element')
    P = ContactElement(a, c - a)
    t.expect(orthogonal(b, P) and orthogonal(c, P), 'points on the normal line are not orthogonal')
    off = c + random_orthogonal(t.rng, c - a)
    t.note(off=off)
    t.reject(orthogonal(off, P), 'off-line point is orthogonal')


@register('front-step-independence', 'P |- s and P |= s do not depend on the inside sphere')
def _front_step_independence(t: Trial):
    P = _random_contact(t)
    s = random_positive(t.rng)
    r1, r2 = _increasing(t, 2)
    A1, A2 = inside_sphere(P, r1), inside_sphere(P, r2)
    t.note(P=P, s=s, A1=A1, A2=A2)
    step = front_step(P, s)
    t.expect(front_step_via_sphere(P, s, A1) == step, 'first representative disagrees')
    t.expect(front_step_via_sphere(P, s, A2) == step, 'second representative disagrees')
    t.expect(flow_step_via_sphere(P, s, A1) == flow_step(P, s), 'flowed element disagrees')
    t.expect(same_orientation_class(A1, A2, P.base), 'inside spheres fall in different classes')
    t.expect(positive_side(step, P) and dist(P.base, step) == s, 'front is not on the positive side at s')
    outside = Sphere(P.base + P.unit_normal().scale(r1), r1)
    t.note(outside=outside)
    t.reject(extrapolate(outside.center, P.base, s) == step, 'outside sphere gives the same front')


@register('inflation', 'inflating internally touching spheres keeps them touching')
def _inflation(t: Trial):
    cfg = touching_spheres(t.rng, t.dim)
    outer, B, A, C = cfg['outer'], cfg['B'], cfg['A'], cfg['C']
    u = random_positive(t.rng)
    t.note(outer=outer, B=B, t=u)
    rec = inflate_preserves_touching(outer, B, u)
    t.expect(rec.chain_holds, f'inflated touching point {rec.inflated_point} breaks the chain')
    t.expect(inflate(outer, u).radius == outer.radius + u, 'inflation changed the wrong radius')
    t.note(A=A, C=C)
    t.reject(external_inflation_touches(A, C, u), 'inflated external pair still touches')


@register('flow-semigroup', '(P |= s) |= t = P |= (s+t), focused at P |- s')
def _flow_semigroup(t: Trial):
    P = _random_contact(t)
    s, u = random_positive(t.rng), random_positive(t.rng)
    t.note(P=P, s=s, t=u)
    Q = flow_step(P, s)
    t.expect(flow_step(Q, u) == flow_step(P, s + u), 'flow is not a semigroup')
    t.expect(Q.base == front_step(P, s) and contact_focused(Q), 'P |= s is not focused at P |- s')
    t.expect(Q.orientation == P.orientation, 'orientation changed')
    flipped = ContactElement(P.base, P.normal, -P.orientation)
    t.reject(flow_step(flipped, s) == Q, 'flipped orientation flows to the same element')


@register('huygens-sphere', 'S(a,r+s) envelopes the S(b,s) for b on S(a,r)')
def _huygens_sphere(t: Trial):
    n = t.dim
    if t.index == 0:
        a, r, s = zero_vector(n), 2, 1
    else:
        a, r, s = random_point(t.rng, n), random_positive(t.rng), random_positive(t.rng)
    m = 12 if n == 2 else 6
    t.note(a=a, r=r, s=s, m=m)
    rec = huygens_sphere_envelope(a, r, s, m)
    t.expect(rec.passed, f'forward {rec.forward}, converse {rec.converse}')
    t.reject(on_sphere(Sphere(a, r + s), extrapolate(a, rec.sources[0], s + 1)),
             'overshooting front lies on the envelope')


def _parallel_ok(B, s) -> bool:
    try:
        parallel_surface(B, s)
    except AssumptionViolationError:
        return False
    return True


@register('parallel-surface', 'B |- (s+t) = (B |- s) |- t on sampled spheres and hyperplanes')
def _parallel_surface(t: Trial):
    n = t.dim
    center, r = random_point(t.rng, n), random_positive(t.rng)
    s, u = random_positive(t.rng), random_positive(t.rng)
    m = 6 if n == 2 else 4
    t.note(center=center, r=r, s=s, t=u, m=m)
    surfaces = [sample_sphere(center, r, m)]
    H = Hyperplane(random_point(t.rng, n), random_unit_vector(t.rng, n))
    t.note(H=H)
    surfaces.append(sample_hyperplane(H, 4, random_positive(t.rng)))
    for B in surfaces:
        once = parallel_surface(B, s + u)
        twice = parallel_surface(parallel_surface(B, s), u)
        t.expect(len(once) == len(twice) and all(p == q for p, q in zip(once, twice)),
                 'parallel surfaces do not compose')
    grown = parallel_surface(surfaces[0], s)
    t.expect(all(on_sphere(Sphere(center, r + s), p) for p in grown.bases()),
             'parallel surface of a sphere is not the concentric sphere')
    inward = sample_sphere(center, r, m, orientation=-1)
    t.reject(_parallel_ok(inward, r), 'inward step to the centre passed the foot check')


@register('united-position', 'neighbouring contact elements of a surface are in united position')
def _united_position(t: Trial):
    A, b = _point_on_sphere(t)
    P = ContactElement(b, b - A.center)
    near = generic_slice(A, b).point
    Q = ContactElement(near, near - A.center)
    t.note(A=A, b=b, near=near)
    t.expect(united_position(P, Q), 'neighbouring elements are not in united position')
    t.expect(united_position(P, P), 'element is not in united position with itself')
    antipode = A.center.scale(2) - b
    t.note(antipode=antipode)
    t.reject(united_position(P, ContactElement(antipode, antipode - A.center)),
             'apart elements are in united position')


# ---------------------------------------------------------------------------
# Model facts
# ---------------------------------------------------------------------------

@register('sphere-hyperplane-slice', 'M(b) n A = M(b) n H for the tangent hyperplane H')
def _sphere_hyperplane_slice(t: Trial):
    A, b = _point_on_sphere(t)
    H = sphere_hyperplane_at(A, b)
    t.note(A=A, b=b, H=H)
    t.expect(monad_contained(A, H, b) and monad_contained(H, A, b), 'slices differ')
    t.expect(touches(A, H, b), 'sphere does not touch its tangent hyperplane')
    tilted = _tilted_hyperplane(t, b - A.center, b)
    t.note(tilted=tilted)
    t.reject(monad_contained(A, tilted, b), 'tilted hyperplane has the same slice')


@register('hyperplane-slice-inclusion', 'inclusion of hyperplane slices forces equal slices')
def _hyperplane_slice_inclusion(t: Trial):
    b = random_point(t.rng, t.dim)
    normal = random_unit_vector(t.rng, t.dim)
    H = Hyperplane(b, normal)
    scaled = Hyperplane(b, normal.scale(random_rational(t.rng) or 1))
    tangent_sphere = Sphere(b - normal.scale(2), 2)
    t.note(H=H, scaled=scaled, sphere=tangent_sphere)
    t.expect(monad_contained(H, scaled, b) and monad_contained(scaled, H, b), 'rescaled normal changes the slice')
    t.expect(monad_contained(H, tangent_sphere, b), 'tangent sphere does not contain the slice')
    tilted = _tilted_hyperplane(t, normal, b)
    t.note(tilted=tilted)
    t.reject(monad_contained(H, tilted, b), 'tilted hyperplane contains the slice')


@register('monad-focused', 'monads and their hyperplane slices are focused; {eps*x} is not')
def _monad_focused(t: Trial):
    b = random_point(t.rng, t.dim)
    H = Hyperplane(b, random_unit_vector(t.rng, t.dim))
    t.note(b=b, H=H)
    for F in (None, H):
        result = is_focused(F, b)
        t.expect(result.focused and result.focus == b, f'slice {F} is not focused')
    eps = t.eps('eps')
    u = random_point(t.rng, t.dim)
    v = apart_point(t.rng, t.dim, u)
    w = random_point(t.rng, t.dim)
    eu, ev, ew = u.scale(eps), v.scale(eps), w.scale(eps)
    t.note(u=u, v=v, w=w)
    unique_focus = not (neighbour(eu, ew) and neighbour(ev, ew) and neighbour(eu, ev) and apart(u, v))
    t.reject(unique_focus, '{eps*x} has a unique focus')


@register('foot-equidistance', 'the foot is the point of U equidistant from a over its slice')
def _foot_equidistance(t: Trial):
    a = random_point(t.rng, t.dim)
    normal = random_unit_vector(t.rng, t.dim)
    H = Hyperplane(random_point(t.rng, t.dim), normal)
    f = foot(a, H)
    t.note(a=a, H=H, foot=f)
    t.expect(on_hyperplane(H, f), 'foot is not on U')
    t.expect(equidistant_over_slice(a, H, f), 'a is not equidistant over the slice at its foot')
    t.expect(equidistant_over_slice(zero_vector(t.dim), Hyperplane(a, a), a) if a.is_proper() else True,
             '|x| != |x + d| for d orthogonal to x')
    other = f + random_orthogonal(t.rng, normal)
    t.note(other=other)
    t.reject(equidistant_over_slice(a, H, other), 'a point other than the foot is equidistant')


@register('sphere-hyperplane-touching', 'S(a, dist(a, foot)) touches U exactly at the foot')
def _sphere_hyperplane_touching(t: Trial):
    a = random_point(t.rng, t.dim)
    H = Hyperplane(random_point(t.rng, t.dim), random_unit_vector(t.rng, t.dim))
    f = foot(a, H)
    t.note(a=a, H=H, foot=f)
    t.expect(sphere_touches_hyperplane_at_foot(a, H), 'sphere does not touch U at the foot')
    result = is_focused(H, f)
    t.expect(result.focused and result.focus == f, 'touching set is not focused')
    other = f + random_orthogonal(t.rng, H.normal)
    t.note(other=other)
    t.reject(touches(Sphere(a, dist(a, other)), H, other), 'sphere touches U away from the foot')


@register('chord-orthogonality', 'common points x, y of two spheres satisfy <x-y, a-b> = 0')
def _chord_orthogonality(t: Trial):
    x = random_point(t.rng, t.dim)
    y = apart_point(t.rng, t.dim, x)
    mid = (x + y).scale(Fraction(1, 2))
    w = random_orthogonal(t.rng, y - x)
    alpha, beta = _increasing(t, 2)
    a, b = mid + w.scale(alpha), mid + w.scale(beta)
    A, B = Sphere(a, dist(a, x)), Sphere(b, dist(b, x))
    t.note(x=x, y=y, A=A, B=B)
    t.expect(chord_orthogonal(A, B, x, y), 'chord is not orthogonal to the centre line')
    z = a.scale(2) - x
    t.note(z=z)
    t.reject((x - z).dot(a - b).is_zero(), 'chord to a point of A only is orthogonal')


@register('unclean-touching-set', 'A n H contains (e1, e2, 0) outside the touching set', dim=3)
def _unclean_touching_set(t: Trial):
    rho = 1 if t.index == 0 else random_positive(t.rng)
    origin = zero_vector(3)
    A = Sphere(Point.of(0, 0, rho), rho)
    H = Hyperplane(origin, Point.of(0, 0, 1))
    e1, e2 = t.eps('e1'), t.eps('e2')
    p = Point.of(e1, e2, 0)
    d1, d2 = t.ctx.fresh_batch(2, 'd')
    q = Point.of(d1, d2, 0)
    t.note(A=A, H=H, p=p, q=q)
    t.expect(on_sphere(A, p) and on_hyperplane(H, p), 'p is not on A n H')
    t.expect(touches(A, H, origin), 'A does not touch H at the origin')
    t.expect(neighbour(origin, q) and on_sphere(A, q) and on_hyperplane(H, q), 'D(2) x {0} is not in the touching set')
    t.reject(neighbour(origin, p), 'p is a neighbour of the origin')


@register('order-robustness', 'x < y implies x + eps < y', min_dim=1)
def _order_robustness(t: Trial):
    x, y = _increasing(t, 2)
    eps = t.eps('eps')
    t.note(x=x, y=y)
    t.expect(nil_less(x + eps, y) and nil_less(x, y + eps), 'infinitesimal shift broke the order')
    t.reject(nil_less(x, x + eps), 'x < x + eps for nilpotent eps')


@register('apartness-compatibility', 'apartness survives neighbour moves and excludes neighbourhood', min_dim=1)
def _apartness_compatibility(t: Trial):
    x = random_point(t.rng, t.dim)
    y = apart_point(t.rng, t.dim, x)
    y_near = generic_slice(None, y).point
    t.note(x=x, y=y, y_near=y_near)
    t.expect(apart(x, y) and apart(x, y_near), 'apartness lost under a neighbour move')
    t.expect(neighbour(y, y_near), 'generic monad element is not a neighbour')
    t.expect(not (apart(x, y) and neighbour(x, y)), 'points are both apart and neighbours')
    t.reject(apart(y, y_near), 'neighbours are apart')


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------

def run_check(check: Check, trial: Trial):
    """Run one trial; raises CheckFailure, or kernel errors, on failure."""
    log.debug('Running %s trial %d (dim %d)', check.check_id, trial.index, trial.dim)
    check.run(trial)
