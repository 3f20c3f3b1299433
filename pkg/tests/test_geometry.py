"""Tests for points, domains, cross-ratio, and the boundary supremum engine."""

import math

import numpy as np
import pytest

from hypmetrics.geometry import (
    BoundaryCardinalityError,
    COARSE_SAMPLES,
    DistancePairFunctional,
    DomainMembershipError,
    FiniteComplement,
    INFINITY,
    ParameterError,
    UnitBall,
    UpperHalfSpace,
    as_point,
    boundary_sup,
    circle_distance,
    circle_gauge,
    complement_in_sphere,
    cross_ratio,
    distance_to_boundary,
    is_infinity,
    require_member,
    sup_refinement,
)

E1 = np.array([1.0, 0.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])


class TestPoints:
    def test_as_point_coerces_lists(self):
        p = as_point([1, 2, 3])
        assert p.dtype == float and p.shape == (3,)

    def test_as_point_rejects_infinity(self):
        with pytest.raises(ParameterError):
            as_point(INFINITY)

    def test_as_point_rejects_scalars_and_short_vectors(self):
        with pytest.raises(ParameterError):
            as_point(1.0)
        with pytest.raises(ParameterError):
            as_point([1.0])

    def test_as_point_rejects_nan(self):
        with pytest.raises(ParameterError):
            as_point([0.0, math.nan])

    def test_as_point_dimension_check(self):
        with pytest.raises(ParameterError):
            as_point([0.0, 1.0], dim=3)

    def test_infinity_is_a_singleton(self):
        assert is_infinity(INFINITY)
        assert type(INFINITY)() is INFINITY
        assert not is_infinity(np.zeros(3))


class TestDomains:
    def test_ball_membership(self):
        b = UnitBall(3)
        assert b.contains([0.5, 0, 0])
        assert not b.contains([1.0, 0, 0])
        assert b.distance_to_boundary([0.5, 0, 0]) == pytest.approx(0.5)

    def test_halfspace_membership(self):
        h = UpperHalfSpace(3)
        assert h.contains([4, -2, 0.1])
        assert not h.contains([0, 0, 0])
        assert h.distance_to_boundary([4, -2, 0.1]) == pytest.approx(0.1)

    def test_dimension_floor(self):
        for cls in (UnitBall, UpperHalfSpace):
            with pytest.raises(ParameterError):
                cls(1)
        with pytest.raises(ParameterError):
            FiniteComplement(1, [[0.0]])

    def test_complement_membership_and_distance(self):
        d = FiniteComplement(3, [E1, -E1])
        assert d.contains([0, 0, 0])
        assert not d.contains(E1)
        assert d.distance_to_boundary([0.5, 0, 0]) == pytest.approx(0.5)

    def test_complement_needs_removed_points(self):
        with pytest.raises(BoundaryCardinalityError):
            FiniteComplement(3, [])

    def test_complement_rejects_duplicates(self):
        with pytest.raises(ParameterError):
            FiniteComplement(3, [E1, [1.0, 0.0, 0.0]])

    def test_complement_boundary_cardinality_counts_infinity(self):
        assert FiniteComplement(3, [E1]).boundary_cardinality() == 2
        assert FiniteComplement(3, [E1], includes_infinity_boundary=False).boundary_cardinality() == 1

    def test_removed_points_are_frozen(self):
        d = FiniteComplement(3, [E1])
        with pytest.raises(ValueError):
            d.removed[0][0] = 2.0

    def test_require_member(self):
        with pytest.raises(DomainMembershipError):
            require_member(UnitBall(3), [2.0, 0, 0])
        p = require_member(UnitBall(3), [0.25, 0, 0])
        assert p[0] == 0.25

    def test_distance_to_boundary_validates(self):
        with pytest.raises(DomainMembershipError):
            distance_to_boundary(UpperHalfSpace(3), [0, 0, -1.0])


class TestComplementInSphere:
    def test_few_points_always_fit(self):
        assert complement_in_sphere(FiniteComplement(3, [E1], includes_infinity_boundary=False))
        assert complement_in_sphere(FiniteComplement(3, [E1, -E1], includes_infinity_boundary=False))

    def test_flag_turns_the_test_into_a_hyperplane_test(self):
        collinear = [E1, 2 * E1, -3 * E1]
        assert complement_in_sphere(FiniteComplement(3, collinear))
        spread = [E1, E3, [0, 1, 0], [0.3, 0.4, 0.5]]
        assert not complement_in_sphere(FiniteComplement(3, spread))

    def test_unit_sphere_sample_is_detected(self):
        pts = [E1, -E1, [0, 1, 0], [0, -1, 0], E3, -E3]
        assert complement_in_sphere(FiniteComplement(3, pts, includes_infinity_boundary=False))
        pts5 = [E1, -E1, [0, 1, 0], E3, [0.5, 0.5, 0.5]]
        assert not complement_in_sphere(FiniteComplement(3, pts5, includes_infinity_boundary=False))

    def test_continuous_domains_are_never_degenerate(self):
        assert not complement_in_sphere(UnitBall(3))
        assert not complement_in_sphere(UpperHalfSpace(3))


class TestCrossRatio:
    def test_finite_value(self):
        # |p-q| |x-y| / (|p-x| |q-y|) = (2 * 0.5) / (1 * 0.5)
        assert cross_ratio(-E1, np.zeros(3), E1, 0.5 * E1) == pytest.approx(2.0, abs=1e-15)

    def test_one_point_at_infinity(self):
        assert cross_ratio(E1, np.zeros(3), INFINITY, 0.5 * E1) == pytest.approx(0.5, abs=1e-15)
        assert cross_ratio(INFINITY, np.zeros(3), E1, 0.5 * E1) == pytest.approx(1.0, abs=1e-15)

    def test_infinity_position_consistency(self):
        rng = np.random.default_rng(3)
        p, x, q, y = (rng.normal(size=3) for _ in range(4))
        # replacing either outer point by infinity drops its two factors
        assert cross_ratio(INFINITY, x, q, y) == pytest.approx(
            np.linalg.norm(x - y) / np.linalg.norm(q - y), rel=1e-14
        )
        assert cross_ratio(p, x, q, INFINITY) == pytest.approx(
            np.linalg.norm(p - q) / np.linalg.norm(p - x), rel=1e-14
        )

    def test_two_infinities_rejected(self):
        with pytest.raises(ValueError):
            cross_ratio(INFINITY, np.zeros(3), INFINITY, E1)

    def test_coincidence_raises(self):
        with pytest.raises(ZeroDivisionError):
            cross_ratio(np.zeros(3), np.zeros(3), E1, 0.5 * E1)

    def test_symmetry_pairs(self):
        rng = np.random.default_rng(4)
        p, x, q, y = (rng.normal(size=3) for _ in range(4))
        assert cross_ratio(p, x, q, y) == pytest.approx(cross_ratio(q, y, p, x), rel=1e-14)


def test_circle_distance_matches_euclidean():
    rng = np.random.default_rng(5)
    for _ in range(50):
        a, b = rng.uniform(-1, 1, 2)
        r0, t0 = circle_gauge(a, b)
        theta = rng.uniform(-math.pi, math.pi)
        p = np.array([math.cos(theta), math.sin(theta)])
        direct = np.linalg.norm(p - np.array([a, b]))
        assert float(circle_distance(r0, t0, theta)) == pytest.approx(direct, abs=1e-14)


def test_circle_distance_near_boundary_precision():
    # the factored form must not lose digits when the point hugs the circle
    r0, t0 = 1.0 - 1e-9, 0.3
    assert float(circle_distance(r0, t0, t0)) == pytest.approx(1e-9, rel=1e-12)


class TestDistancePairFunctional:
    def test_unknown_kind(self):
        with pytest.raises(ParameterError):
            DistancePairFunctional("nope", E1, -E1)

    def test_scalar_array_agreement(self):
        x, y = 0.3 * E1, -0.2 * E3
        for kind in DistancePairFunctional.KINDS:
            f = DistancePairFunctional(kind, x, y, scale=0.7)
            p = np.array([0.6, 0.8, 0.0])
            dx = float(np.linalg.norm(p - x))
            dy = float(np.linalg.norm(p - y))
            assert float(f(p)) == pytest.approx(f.scalar(dx, dy), rel=1e-15)
            assert f.scalar_form()(dx, dy) == f.scalar(dx, dy)


class TestBoundarySup:
    def test_finite_complement_exact_max(self):
        d = FiniteComplement(3, [E1, -E1], includes_infinity_boundary=False)
        x, y = np.zeros(3), 0.5 * E1
        f = DistancePairFunctional("log_dx_over_dy", x, y)
        v, w = boundary_sup(d, f, x, y)
        # per removed point: log(1/0.5) at e1, log(1/1.5) at -e1
        assert v == pytest.approx(math.log(2.0), abs=1e-15)
        assert np.array_equal(w.point, E1)

    def test_infinity_candidate_wins_when_larger(self):
        d = FiniteComplement(3, [E1])
        x, y = np.zeros(3), 0.5 * E1
        f = DistancePairFunctional("log_dx_over_dy", x, y)
        v, w = boundary_sup(d, f, x, y, value_at_infinity=5.0)
        assert v == 5.0 and is_infinity(w.point)

    def test_membership_is_enforced(self):
        b = UnitBall(3)
        f = DistancePairFunctional("inv_sum", 2.0 * E1, 0.5 * E1, scale=1.0)
        with pytest.raises(DomainMembershipError):
            boundary_sup(b, f, 2.0 * E1, 0.5 * E1)

    def test_ball_sup_against_dense_scan(self):
        b = UnitBall(3)
        rng = np.random.default_rng(9)
        for _ in range(10):
            x = rng.uniform(-0.6, 0.6, 3)
            y = rng.uniform(-0.6, 0.6, 3)
            if np.linalg.norm(x) >= 1 or np.linalg.norm(y) >= 1:
                continue
            scale = float(np.linalg.norm(x - y))
            f = DistancePairFunctional("inv_sum", x, y, scale=scale)
            v, w = boundary_sup(b, f, x, y)
            # engine must dominate a dense independent scan of the sphere
            ph = rng.uniform(0, 2 * math.pi, 4000)
            ct = rng.uniform(-1, 1, 4000)
            st = np.sqrt(1 - ct * ct)
            pts = np.stack([st * np.cos(ph), st * np.sin(ph), ct], axis=1)
            brute = float(np.max(f(pts)))
            assert v >= brute - 1e-12
            assert np.linalg.norm(w.point) == pytest.approx(1.0, abs=1e-9)
            assert float(f(w.point)) == pytest.approx(v, rel=1e-12)

    def test_halfspace_sup_against_dense_scan(self):
        h = UpperHalfSpace(3)
        rng = np.random.default_rng(10)
        for _ in range(10):
            x = np.array([rng.normal(), rng.normal(), 10 ** rng.uniform(-2, 1)])
            y = np.array([rng.normal(), rng.normal(), 10 ** rng.uniform(-2, 1)])
            f = DistancePairFunctional("abs_log_ratio", x, y)
            v, _ = boundary_sup(h, f, x, y)
            g = rng.normal(size=(4000, 2)) * 5.0
            pts = np.concatenate([g, np.zeros((4000, 1))], axis=1)
            brute = float(np.max(f(pts)))
            assert v >= brute - 1e-12

    def test_argument_order_is_immaterial(self):
        b = UnitBall(3)
        rng = np.random.default_rng(12)
        for _ in range(20):
            x = rng.uniform(-0.9, 0.9, 3)
            y = rng.uniform(-0.9, 0.9, 3)
            if np.linalg.norm(x) >= 1 or np.linalg.norm(y) >= 1:
                continue
            v1, _ = boundary_sup(b, DistancePairFunctional("abs_log_ratio", x, y), x, y)
            v2, _ = boundary_sup(b, DistancePairFunctional("abs_log_ratio", y, x), y, x)
            # both orders probe the same boundary points; the residual is
            # one ulp from the flipped division inside the log
            assert v1 == pytest.approx(v2, rel=5e-16)

    def test_generic_callable_agrees_with_fast_path(self):
        b = UnitBall(3)
        x, y = np.array([0.3, 0.1, -0.2]), np.array([-0.4, 0.2, 0.5])
        f = DistancePairFunctional("log_dx_over_dy", x, y)

        def g(p):
            p = np.asarray(p, dtype=float)
            dx = np.linalg.norm(p - x, axis=-1)
            dy = np.linalg.norm(p - y, axis=-1)
            return np.log(dx / dy)

        vf, _ = boundary_sup(b, f, x, y)
        vg, _ = boundary_sup(b, g, x, y)
        assert vf == pytest.approx(vg, abs=1e-11)

    def test_sup_refinement_swaps_and_restores_knobs(self):
        import hypmetrics.geometry as geo

        before = (geo.COARSE_SAMPLES, geo.PARAM_TOL)
        with sup_refinement(2048, 1e-10):
            assert geo.COARSE_SAMPLES == 2048 and geo.PARAM_TOL == 1e-10
        assert (geo.COARSE_SAMPLES, geo.PARAM_TOL) == before
        assert before == (COARSE_SAMPLES, 1e-12)
