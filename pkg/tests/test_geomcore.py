"""Tests for points, figures and the metric structure."""

import random

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from sdgkernel import (
    DegenerateConfigurationError,
    DomainError,
    Hyperplane,
    NotTouchingError,
    Point,
    Sphere,
    UsageError,
    apart,
    chord_orthogonal,
    dist,
    dist_sq,
    equidistant_over_slice,
    foot,
    generic_slice,
    is_focused,
    monad_contained,
    neighbour,
    on_hyperplane,
    on_sphere,
    random_point,
    sphere_hyperplane_at,
    sphere_touches_hyperplane_at_foot,
    touches,
    touching_point_external,
    touching_point_internal,
)


class TestApartness:
    """Apartness and the neighbour relation."""

    def test_nilpotent_offset_is_neighbour(self, origin, eps):
        p = Point.of(eps, 0)
        assert neighbour(origin, p)
        assert not apart(origin, p)

    def test_distinct_rationals_are_apart(self, origin):
        assert apart(origin, Point.of(0, 1))
        assert not neighbour(origin, Point.of(0, 1))

    def test_two_batches_are_not_neighbours(self, ctx):
        e1 = ctx.fresh_batch(1, 'e1')[0]
        e2 = ctx.fresh_batch(1, 'e2')[0]
        assert not neighbour(Point.of(0, 0, 0), Point.of(e1, e2, 0))


class TestDistance:
    """Exact distances."""

    def test_pythagorean(self, origin):
        assert dist(origin, Point.of(3, 4)) == 5

    def test_distance_ignores_squared_nilpotents(self, basic_picture):
        assert dist(basic_picture['a'], basic_picture['b_prime']) == 3
        assert dist(basic_picture['b_prime'], basic_picture['c']) == 4

    def test_non_apart_raises(self, origin, eps):
        with pytest.raises(DomainError):
            dist(origin, Point.of(eps, 0))

    def test_dimension_mismatch(self):
        with pytest.raises(UsageError):
            dist(Point.of(0, 0), Point.of(0, 0, 1))

    @hsettings(max_examples=20, deadline=None)
    @given(st.integers(0, 10_000))
    def test_symmetric(self, seed):
        rng = random.Random(seed)
        x, y = random_point(rng, 3), random_point(rng, 3)
        assert dist_sq(x, y) == dist_sq(y, x)


class TestFigures:
    """Construction checks for spheres and hyperplanes."""

    def test_radius_must_be_positive(self, origin, eps):
        with pytest.raises(DomainError):
            Sphere(origin, 0)
        with pytest.raises(DomainError):
            Sphere(origin, eps)

    def test_normal_must_be_proper(self, origin, eps):
        with pytest.raises(DomainError):
            Hyperplane(origin, Point.of(eps, 0))

    def test_membership(self, origin):
        assert on_sphere(Sphere(origin, 5), Point.of(3, 4))
        assert on_hyperplane(Hyperplane(origin, Point.of(1, 1)), Point.of(2, -2))


class TestTouching:
    """Monad-slice touching and containment."""

    def test_external_circles_touch(self):
        A, C = Sphere(Point.of(0, 0), 1), Sphere(Point.of(2, 0), 1)
        assert touches(A, C, Point.of(1, 0))

    def test_crossing_circles_do_not_touch(self):
        A, C = Sphere(Point.of(0, 0), 1), Sphere(Point.of(1, 1), 1)
        assert not touches(A, C, Point.of(1, 0))
        assert not monad_contained(A, C, Point.of(1, 0))

    def test_sphere_touches_tangent_line(self, origin):
        A = Sphere(origin, 1)
        b = Point.of(1, 0)
        H = sphere_hyperplane_at(A, b)
        assert touches(A, H, b)
        assert monad_contained(A, H, b) and monad_contained(H, A, b)

    def test_point_off_figure_raises(self):
        A, C = Sphere(Point.of(0, 0), 1), Sphere(Point.of(2, 0), 1)
        with pytest.raises(UsageError):
            touches(A, C, Point.of(0, 1))

    def test_unclean_touching_set(self, ctx):
        """(e1, e2, 0) lies on A n H without being a neighbour of the touching point."""
        e1 = ctx.fresh_batch(1, 'e1')[0]
        e2 = ctx.fresh_batch(1, 'e2')[0]
        origin = Point.of(0, 0, 0)
        A = Sphere(Point.of(0, 0, 1), 1)
        H = Hyperplane(origin, Point.of(0, 0, 1))
        p = Point.of(e1, e2, 0)
        assert on_sphere(A, p) and on_hyperplane(H, p)
        assert touches(A, H, origin)
        assert not neighbour(origin, p)


class TestFocus:
    """Focusedness of monads and their slices."""

    def test_full_monad(self):
        result = is_focused(None, Point.of(1, 2))
        assert result.focused and result.focus == Point.of(1, 2)

    def test_hyperplane_slice(self):
        b = Point.of(1, 2, 3)
        result = is_focused(Hyperplane(b, Point.of(1, 0, 2)), b)
        assert result.focused

    def test_containment_when_only_the_conclusion_is_lifted(self, origin, eps):
        A, b = Sphere(origin, 1), Point.of(1, 0)
        assert monad_contained(A, Sphere(Point.of(2, 0), 1), b)
        assert not monad_contained(A, Sphere(Point.of(2, eps), 1), b)

    def test_equidistance_from_a_lifted_point(self, eps):
        H = Hyperplane(Point.of(0, 0), Point.of(0, 1))
        assert equidistant_over_slice(Point.of(0, 2 + eps), H, Point.of(0, 0))
        assert not equidistant_over_slice(Point.of(eps, 2), H, Point.of(0, 0))

    def test_generic_slice_shares_a_given_context(self, ctx, origin):
        sl = generic_slice(Sphere(origin, 5), Point.of(3, 4), ctx=ctx)
        assert sl.batch.ctx is ctx

    def test_generic_slice_stays_on_figure(self, origin):
        A = Sphere(origin, 5)
        sl = generic_slice(A, Point.of(3, 4))
        assert on_sphere(A, sl.point)
        assert neighbour(sl.base, sl.point)


class TestConstructions:
    """Touching points and feet."""

    def test_external_touching_point(self):
        b = touching_point_external(Sphere(Point.of(0, 0), 2), Sphere(Point.of(3, 0), 1))
        assert b == Point.of(2, 0)

    def test_internal_touching_point(self):
        c = touching_point_internal(Sphere(Point.of(0, 0), 3), Sphere(Point.of(1, 0), 2))
        assert c == Point.of(3, 0)

    def test_wrong_distance_raises(self):
        with pytest.raises(NotTouchingError):
            touching_point_external(Sphere(Point.of(0, 0), 1), Sphere(Point.of(3, 0), 1))

    def test_concentric_is_degenerate(self, origin):
        with pytest.raises(DegenerateConfigurationError):
            touching_point_internal(Sphere(origin, 2), Sphere(origin, 1))

    def test_foot(self, origin):
        H = Hyperplane(origin, Point.of(0, 1))
        f = foot(Point.of(3, 5), H)
        assert f == Point.of(3, 0)
        assert equidistant_over_slice(Point.of(3, 5), H, f)
        assert not equidistant_over_slice(Point.of(3, 5), H, Point.of(2, 0))

    def test_foot_of_point_on_plane(self, origin):
        with pytest.raises(DegenerateConfigurationError):
            foot(Point.of(3, 0), Hyperplane(origin, Point.of(0, 1)))

    def test_sphere_touches_plane_at_foot(self, origin):
        assert sphere_touches_hyperplane_at_foot(Point.of(1, 2), Hyperplane(origin, Point.of(0, 1)))

    def test_chord_orthogonality(self):
        A, B = Sphere(Point.of(4, 0), 5), Sphere(Point.of(-4, 0), 5)
        assert chord_orthogonal(A, B, Point.of(0, 3), Point.of(0, -3))
