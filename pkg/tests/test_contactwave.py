"""Tests for contact elements, wavefronts and sampled surfaces."""

from fractions import Fraction
from itertools import combinations

import pytest

from sdgkernel import (
    AssumptionViolationError,
    ContactElement,
    DomainError,
    Hyperplane,
    Point,
    Sphere,
    UsageError,
    apart,
    contact_focused,
    contact_from_sphere,
    envelope_outcomes,
    external_inflation_touches,
    feet_on_surface,
    flow_step,
    flow_step_via_sphere,
    front_step,
    front_step_via_sphere,
    huygens_sphere_envelope,
    inflate_preserves_touching,
    inside_sphere,
    on_hyperplane,
    on_sphere,
    orthogonal,
    orthogonal_iff_contained,
    orthogonality_transfers,
    parallel_surface,
    positive_side,
    sample_hyperplane,
    sample_sphere,
    same_orientation_class,
    stereographic_unit_vector,
    united_position,
)


@pytest.fixture
def upward(origin):
    """Contact element at the origin with normal +y."""
    return ContactElement(origin, Point.of(0, 1))


class TestContactElement:
    """Construction and equality."""

    def test_normal_must_be_proper(self, origin, eps):
        with pytest.raises(DomainError):
            ContactElement(origin, Point.of(0, eps))

    def test_orientation_values(self, origin):
        with pytest.raises(UsageError):
            ContactElement(origin, Point.of(0, 1), 0)

    def test_rescaled_normal_is_equal(self, upward, origin):
        assert upward == ContactElement(origin, Point.of(0, 3))
        assert upward != ContactElement(origin, Point.of(0, -3))
        assert upward == ContactElement(origin, Point.of(0, -3), -1)

    def test_from_sphere(self, origin):
        P = contact_from_sphere(Sphere(Point.of(0, -2), 2), origin)
        assert P == ContactElement(origin, Point.of(0, 1))

    def test_focused(self, upward):
        assert contact_focused(upward)

    def test_united_position_with_itself(self, upward):
        assert united_position(upward, upward)
        assert not united_position(upward, ContactElement(Point.of(1, 0), Point.of(0, 1)))


class TestOrthogonality:
    """Orthogonality and the positive side."""

    def test_on_the_normal_line(self, upward):
        assert orthogonal(Point.of(0, 5), upward)
        assert not orthogonal(Point.of(1, 5), upward)

    def test_agrees_with_containment(self, upward):
        assert orthogonal_iff_contained(Point.of(0, 5), upward)
        assert orthogonal_iff_contained(Point.of(1, 5), upward)

    def test_positive_side(self, upward):
        assert positive_side(Point.of(0, 5), upward)
        assert not positive_side(Point.of(0, -5), upward)

    def test_base_is_not_apart(self, upward, origin):
        with pytest.raises(UsageError):
            orthogonal(origin, upward)

    def test_transfer_along_a_line(self):
        a, b, c = Point.of(0, 0), Point.of(1, 0), Point.of(3, 0)
        assert orthogonality_transfers(a, b, c, ContactElement(a, Point.of(1, 0)))
        assert orthogonality_transfers(a, b, c, ContactElement(b, Point.of(1, 1)))


class TestWavefronts:
    """Front and flow steps."""

    def test_front_step(self, upward, origin):
        assert front_step(upward, 2) == Point.of(0, 2)
        down = ContactElement(origin, Point.of(0, 1), -1)
        assert front_step(down, 2) == Point.of(0, -2)

    def test_step_must_be_positive(self, upward, eps):
        with pytest.raises(DomainError):
            front_step(upward, 0)
        with pytest.raises(DomainError):
            front_step(upward, eps)

    def test_representative_independence(self, upward):
        for r in (1, Fraction(7, 3)):
            A = inside_sphere(upward, r)
            assert front_step_via_sphere(upward, 2, A) == Point.of(0, 2)
            assert flow_step_via_sphere(upward, 2, A) == flow_step(upward, 2)

    def test_outside_sphere_rejected(self, upward):
        with pytest.raises(UsageError):
            front_step_via_sphere(upward, 1, Sphere(Point.of(0, 1), 1))

    def test_flow_semigroup(self, upward):
        assert flow_step(flow_step(upward, 1), 2) == flow_step(upward, 3)

    def test_same_orientation_class(self, origin):
        A = Sphere(Point.of(0, -1), 1)
        assert same_orientation_class(A, Sphere(Point.of(0, -2), 2), origin)
        assert not same_orientation_class(A, Sphere(Point.of(0, 1), 1), origin)


class TestInflation:
    """Inflating touching spheres."""

    def test_internal_pair_keeps_touching(self):
        rec = inflate_preserves_touching(Sphere(Point.of(0, 0), 3), Sphere(Point.of(1, 0), 2), 1)
        assert rec.chain_holds
        assert rec.inflated_point == Point.of(4, 0)

    def test_external_pair_stops_touching(self):
        assert not external_inflation_touches(Sphere(Point.of(0, 0), 2), Sphere(Point.of(3, 0), 1), 1)


class TestSampling:
    """Exact samplings of spheres and hyperplanes."""

    def test_stereographic(self):
        assert stereographic_unit_vector((Fraction(1, 2),)) == (Fraction(-3, 5), Fraction(4, 5))

    @pytest.mark.parametrize('m', [12, 5])
    def test_circle_samples_lie_on_circle(self, origin, m):
        B = sample_sphere(origin, 2, m)
        assert len(B) == m
        assert all(on_sphere(Sphere(origin, 2), b) for b in B.bases())

    def test_three_dimensional_samples(self):
        center = Point.of(1, 0, -1)
        B = sample_sphere(center, 3, 6)
        assert all(on_sphere(Sphere(center, 3), b) for b in B.bases())

    def test_hyperplane_samples(self, origin):
        H = Hyperplane(origin, Point.of(1, 1))
        B = sample_hyperplane(H, 4, Fraction(1, 2))
        assert len(B) == 4
        assert all(on_hyperplane(H, b) for b in B.bases())

    def test_sample_count(self, origin):
        with pytest.raises(UsageError):
            sample_sphere(origin, 1, 0)

    @pytest.mark.parametrize('center, m', [
        (Point.of(0, 0, 0), 30),
        (Point.of(1, 2, 3, 4), 20),
    ])
    def test_many_samples_are_distinct(self, center, m):
        B = sample_sphere(center, 2, m)
        assert len(B) == m
        assert all(on_sphere(Sphere(center, 2), b) for b in B.bases())
        assert all(apart(p, q) for p, q in combinations(B.bases(), 2))

    def test_line_has_two_sphere_points(self):
        B = sample_sphere(Point.of(1), 2, 2)
        assert B.bases() == [Point.of(3), Point.of(-1)]
        with pytest.raises(UsageError):
            sample_sphere(Point.of(1), 2, 3)


class TestParallelSurfaces:
    """Parallel surfaces and their envelope checks."""

    def test_circle_grows_concentrically(self, origin):
        grown = parallel_surface(sample_sphere(origin, 2, 12), 1)
        assert all(on_sphere(Sphere(origin, 3), b) for b in grown.bases())

    def test_semigroup_on_a_line(self, origin):
        B = sample_hyperplane(Hyperplane(origin, Point.of(0, 1)), 4)
        once = parallel_surface(B, 3)
        twice = parallel_surface(parallel_surface(B, 1), 2)
        assert all(p == q for p, q in zip(once, twice))

    def test_centre_is_a_foot_of_every_sample(self, origin):
        assert feet_on_surface(origin, sample_sphere(origin, 2, 12)) == list(range(12))

    def test_inward_step_to_centre_violates_unique_foot(self, origin):
        B = sample_sphere(origin, 2, 6, orientation=-1)
        with pytest.raises(AssumptionViolationError) as exc_info:
            parallel_surface(B, 2)
        assert exc_info.value.indices == list(range(6))

    def test_envelope_outcomes(self, origin):
        outcomes = envelope_outcomes(sample_sphere(origin, 2, 4), 1)
        assert [o.index for o in outcomes] == [0, 1, 2, 3]
        assert all(o.passed for o in outcomes)


class TestHuygens:
    """Spheres as envelopes of wavelets."""

    def test_twelve_samples(self, origin):
        rec = huygens_sphere_envelope(origin, 2, 1, 12)
        assert rec.passed
        assert rec.check_count == 24

    def test_radii_must_be_positive(self, origin):
        with pytest.raises(DomainError):
            huygens_sphere_envelope(origin, 2, 0, 4)
