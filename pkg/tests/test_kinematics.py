import math

import numpy as np
import pytest

from gerstner_waves import (
    DomainError,
    OutOfDomainError,
    PhysicalConstants,
    acceleration,
    invert_map,
    invert_x,
    jacobian,
    position,
    resolve_classical,
    resolve_geophysical_from_m,
    sample_trajectory,
    surface_from_labels,
    surface_profile,
    velocity,
)

G = 9.8
SQRT_G = math.sqrt(G)


def central_difference(fn, t, h):
    """Second-order finite-difference oracle for time derivatives."""
    fp = np.asarray(fn(t + h), dtype=float)
    fm = np.asarray(fn(t - h), dtype=float)
    return (fp - fm) / (2.0 * h)


class TestPosition:
    def test_crest_label_at_time_zero(self, gerstner):
        x, z = position(gerstner, 0.0, 0.0, 0.0)
        assert float(x) == 0.0
        assert float(z) == 1.0

    def test_trough_label_at_time_zero(self, gerstner):
        x, z = position(gerstner, 0.0, math.pi, 0.0)
        assert float(x) == pytest.approx(math.pi, abs=1e-15)
        assert float(z) == pytest.approx(-1.0, abs=1e-15)

    def test_deep_labels_barely_move(self, gerstner):
        bound = math.exp(-50.0)
        for t in (0.0, 1.7, 12.0):
            for a in (-3.0, 0.4, 9.0):
                x, z = position(gerstner, t, a, -50.0)
                assert abs(float(x) - (a + gerstner.U * t)) <= bound
                assert abs(float(z) - (-50.0)) <= bound

    def test_label_above_surface_rejected(self, gerstner_deep):
        with pytest.raises(DomainError):
            position(gerstner_deep, 0.0, 0.0, -0.25)

    def test_horizontal_periodicity(self, classical_with_current):
        p = classical_with_current
        rng = np.random.default_rng(3)
        shift = 2.0 * math.pi / p.k
        for _ in range(50):
            t = float(rng.uniform(0.0, 20.0))
            a = float(rng.uniform(-10.0, 10.0))
            b = float(rng.uniform(-5.0, p.b0))
            x1, z1 = position(p, t, a + shift, b)
            x2, z2 = position(p, t, a, b)
            assert float(x1) == pytest.approx(float(x2) + shift, abs=1e-12)
            assert float(z1) == pytest.approx(float(z2), abs=1e-12)

    def test_traveling_wave_shift_in_label_time(self, geo_from_m):
        p = geo_from_m
        rng = np.random.default_rng(4)
        for _ in range(50):
            t = float(rng.uniform(0.0, 10.0))
            a = float(rng.uniform(-10.0, 10.0))
            b = float(rng.uniform(-5.0, p.b0))
            x1, z1 = position(p, t, a, b)
            x2, z2 = position(p, 0.0, a - p.m * t, b)
            assert float(x1) - p.c * t == pytest.approx(float(x2), abs=1e-10)
            assert float(z1) == pytest.approx(float(z2), abs=1e-12)

    def test_negative_time_is_accepted(self, gerstner):
        x, z = position(gerstner, -2.5, 0.3, -1.0)
        assert math.isfinite(float(x)) and math.isfinite(float(z))

    def test_label_injectivity_on_a_grid(self, gerstner):
        a = np.linspace(-2.0, 2.0, 21)
        b = np.linspace(-2.0, 0.0, 11)
        aa, bb = np.meshgrid(a, b)
        x, z = position(gerstner, 0.7, aa, bb)
        pts = np.column_stack([np.ravel(x), np.ravel(z)])
        d2 = np.sum((pts[:, None, :] - pts[None, :, :]) ** 2, axis=-1)
        np.fill_diagonal(d2, np.inf)
        assert np.sqrt(d2.min()) > 1e-9


class TestVelocity:
    def test_stagnation_velocity_is_the_wave_speed(self, geo_constants):
        p = resolve_geophysical_from_m(geo_constants, 1.0, 0.0)
        for t, a, b in [(0.0, 0.0, 0.0), (3.0, 1.0, -2.0), (10.0, -4.0, -0.5)]:
            u, w = velocity(p, t, a, b)
            assert float(u) == p.c
            assert float(w) == 0.0

    def test_crest_particle_moves_with_the_wave(self, gerstner):
        u, w = velocity(gerstner, 0.0, 0.0, 0.0)
        assert float(u) == pytest.approx(SQRT_G, rel=1e-15)
        assert float(w) == 0.0

    def test_matches_finite_difference_of_position(self, classical_with_current):
        p = classical_with_current
        rng = np.random.default_rng(5)
        h = 1e-6
        for _ in range(100):
            t = float(rng.uniform(0.0, 10.0))
            a = float(rng.uniform(-5.0, 5.0))
            b = float(rng.uniform(-4.0, p.b0))
            u, w = velocity(p, t, a, b)
            du = central_difference(lambda s: position(p, s, a, b)[0], t, h)
            dw = central_difference(lambda s: position(p, s, a, b)[1], t, h)
            assert float(u) == pytest.approx(float(du), abs=1e-8)
            assert float(w) == pytest.approx(float(dw), abs=1e-8)

    def test_far_field_bounds(self, geo_from_m):
        p = geo_from_m
        rng = np.random.default_rng(6)
        for _ in range(200):
            t = float(rng.uniform(0.0, 10.0))
            a = float(rng.uniform(-20.0, 20.0))
            b = float(rng.uniform(-12.0, p.b0))
            u, w = velocity(p, t, a, b)
            bound = abs(p.m) * math.exp(p.k * b) * (1.0 + 1e-12)
            assert abs(float(u) - p.U) <= bound
            assert abs(float(w)) <= bound


class TestAcceleration:
    def test_zero_for_stagnation_flow(self, geo_constants):
        p = resolve_geophysical_from_m(geo_constants, 1.0, 0.0)
        ax, az = acceleration(p, 2.0, 1.0, -1.0)
        assert float(ax) == 0.0
        assert float(az) == 0.0

    def test_depth_bound(self, gerstner):
        ax, az = acceleration(gerstner, 1.0, 0.5, -40.0)
        bound = gerstner.k * gerstner.m ** 2 * math.exp(-40.0)
        assert abs(float(ax)) <= bound
        assert abs(float(az)) <= bound

    def test_matches_finite_difference_of_velocity(self, geo_from_m):
        p = geo_from_m
        rng = np.random.default_rng(8)
        h = 1e-6
        for _ in range(100):
            t = float(rng.uniform(0.0, 10.0))
            a = float(rng.uniform(-5.0, 5.0))
            b = float(rng.uniform(-4.0, p.b0))
            ax, az = acceleration(p, t, a, b)
            dax = central_difference(lambda s: velocity(p, s, a, b)[0], t, h)
            daz = central_difference(lambda s: velocity(p, s, a, b)[1], t, h)
            assert float(ax) == pytest.approx(float(dax), abs=1e-7)
            assert float(az) == pytest.approx(float(daz), abs=1e-7)


class TestJacobian:
    def test_determinant_identity(self, classical_with_current, geo_from_m):
        rng = np.random.default_rng(9)
        for p in (classical_with_current, geo_from_m):
            for _ in range(200):
                t = float(rng.uniform(0.0, 20.0))
                a = float(rng.uniform(-10.0, 10.0))
                b = float(rng.uniform(-8.0, p.b0))
                jac = jacobian(p, t, a, b)
                expected = 1.0 - math.exp(2.0 * p.k * b)
                assert float(jac.det) == pytest.approx(expected, abs=4e-16 * (1.0 + expected))

    def test_determinant_vanishes_at_the_zero_label(self, gerstner):
        jac = jacobian(gerstner, 0.3, 1.0, 0.0)
        assert float(jac.det) == pytest.approx(0.0, abs=1e-15)

    def test_frozen_value_at_unit_depth(self, gerstner):
        jac = jacobian(gerstner, 0.0, 0.0, -1.0)
        assert float(jac.det) == pytest.approx(0.8646647167633873, rel=1e-15)

    def test_det_independent_of_time_and_abscissa(self, classical_with_current):
        p = classical_with_current
        rng = np.random.default_rng(10)
        b = -0.9
        dets = []
        for _ in range(100):
            t = float(rng.uniform(0.0, 30.0))
            a = float(rng.uniform(-20.0, 20.0))
            dets.append(float(jacobian(p, t, a, b).det))
        assert max(dets) - min(dets) <= 1e-15


class TestInvertX:
    def test_deep_map_is_near_identity(self, gerstner):
        for t in (0.0, 2.0):
            for x in (-5.0, 0.0, 11.0):
                a = invert_x(gerstner, t, x, -50.0)
                assert a == pytest.approx(x - gerstner.U * t, abs=1e-20 + math.exp(-50.0))

    def test_round_trip(self, classical_with_current):
        p = classical_with_current
        rng = np.random.default_rng(12)
        for _ in range(1000):
            t = float(rng.uniform(0.0, 10.0))
            a = float(rng.uniform(-10.0, 10.0))
            b = float(rng.uniform(-6.0, min(p.b0, -1e-3)))
            x, _ = position(p, t, a, b)
            assert invert_x(p, t, float(x), b) == pytest.approx(a, abs=1e-12)

    def test_wavelength_shift(self, classical_with_current):
        p = classical_with_current
        shift = 2.0 * math.pi / p.k
        for x in (-1.0, 0.0, 2.0):
            a1 = invert_x(p, 0.0, x, p.b0)
            a2 = invert_x(p, 0.0, x + shift, p.b0)
            assert a2 == pytest.approx(a1 + shift, abs=1e-11)

    def test_converges_at_surface_cusps(self, gerstner):
        # b0 = 0: the crest of the a = 0 particle at t = 0 sits at x = 0
        a = invert_x(gerstner, 0.0, 0.0, 0.0)
        assert abs(a) <= 1e-4
        x, _ = position(gerstner, 0.0, a, 0.0)
        assert abs(float(x)) <= 1e-13


class TestInvertMap:
    def test_round_trip(self, classical_with_current):
        p = classical_with_current
        rng = np.random.default_rng(13)
        for _ in range(300):
            t = float(rng.uniform(0.0, 10.0))
            a = float(rng.uniform(-10.0, 10.0))
            b = float(rng.uniform(-6.0, p.b0 - 0.01))
            x, z = position(p, t, a, b)
            label = invert_map(p, t, float(x), float(z))
            assert label.a == pytest.approx(a, abs=1e-10)
            assert label.b == pytest.approx(b, abs=1e-10)

    def test_round_trip_near_cusped_surface(self, gerstner):
        # b0 = 0 degenerates the Jacobian at the surface; the fallback holds
        p = gerstner
        rng = np.random.default_rng(14)
        for _ in range(50):
            t = float(rng.uniform(0.0, 5.0))
            a = float(rng.uniform(-3.0, 3.0))
            b = float(rng.uniform(-0.05, -0.001))
            x, z = position(p, t, a, b)
            label = invert_map(p, t, float(x), float(z))
            assert label.a == pytest.approx(a, abs=1e-8)
            assert label.b == pytest.approx(b, abs=1e-8)

    def test_deep_limit_is_the_identity_map(self, geo_from_m):
        p = geo_from_m
        label = invert_map(p, 2.0, 1.0, -30.0)
        assert label.b == pytest.approx(-30.0, abs=1e-10)
        assert label.a == pytest.approx(1.0 - p.U * 2.0, abs=1e-8)

    def test_recovered_depth_increases_with_z(self, classical_with_current):
        p = classical_with_current
        x = 0.7
        t = 1.3
        zs = np.linspace(-5.0, surface_profile(p, t, x) - 0.05, 40)
        bs = [invert_map(p, t, x, float(z)).b for z in zs]
        assert all(b2 > b1 for b1, b2 in zip(bs, bs[1:]))

    def test_point_above_surface_rejected(self, classical_with_current):
        p = classical_with_current
        eta = surface_profile(p, 0.0, 0.0)
        with pytest.raises(OutOfDomainError):
            invert_map(p, 0.0, 0.0, eta + 0.1)


class TestSurfaceProfile:
    def test_crest_to_trough_height(self, classical_constants):
        p = resolve_classical(classical_constants, 1.0, +1, 0.0, b0=-1.0)
        t = 0.8
        crest_x = p.c * t  # label a = m*t sits at the crest
        trough_a = p.m * t + math.pi / p.k
        trough_x, _ = position(p, t, trough_a, p.b0)
        height = surface_profile(p, t, crest_x) - surface_profile(p, t, float(trough_x))
        assert height == pytest.approx(2.0 * math.exp(p.k * p.b0) / p.k, abs=1e-10)
        assert height == pytest.approx(0.7357588823428847, abs=1e-10)

    def test_profile_travels_rigidly(self, classical_with_current):
        p = classical_with_current
        rng = np.random.default_rng(15)
        for _ in range(50):
            t = float(rng.uniform(0.0, 10.0))
            x = float(rng.uniform(-10.0, 10.0))
            assert surface_profile(p, t, x) == pytest.approx(
                surface_profile(p, 0.0, x - p.c * t), abs=1e-10
            )

    def test_periodicity(self, geo_from_m):
        p = geo_from_m
        shift = 2.0 * math.pi / p.k
        for x in (-2.0, 0.3, 4.0):
            assert surface_profile(p, 0.0, x) == pytest.approx(
                surface_profile(p, 0.0, x + shift), abs=1e-10
            )

    def test_cusped_profile_is_continuous_and_peaks_at_crests(self, gerstner):
        p = gerstner  # b0 = 0: crests are cusps
        xs = np.linspace(-math.pi, math.pi, 401)
        etas = surface_profile(p, 0.0, xs)
        assert np.all(np.isfinite(etas))
        crest = p.b0 + math.exp(p.k * p.b0) / p.k
        assert etas.max() <= crest + 1e-9
        assert surface_profile(p, 0.0, 0.0) == pytest.approx(crest, abs=1e-6)

    def test_label_space_sampler_matches_the_profile(self, gerstner_deep):
        p = gerstner_deep
        a = np.linspace(-2.0, 2.0, 31)
        xs, etas = surface_from_labels(p, 0.4, a)
        for x, eta in zip(np.asarray(xs), np.asarray(etas)):
            assert surface_profile(p, 0.4, float(x)) == pytest.approx(float(eta), abs=1e-10)


class TestSampleTrajectory:
    def test_row_count_and_ordering(self, gerstner):
        samples = sample_trajectory(gerstner, 0.0, -1.0, 0.0, 4.0, 33)
        assert len(samples) == 33
        ts = [t for t, _ in samples]
        assert ts == sorted(ts)
        assert ts[0] == 0.0 and ts[-1] == 4.0

    def test_period_displacement_is_horizontal(self, classical_with_current):
        p = classical_with_current
        period = 2.0 * math.pi / (p.k * abs(p.m))
        expected_drift = 2.0 * math.pi * p.U / (p.k * abs(p.m))
        samples = sample_trajectory(p, 0.3, -1.2, 0.5, 0.5 + period, 7)
        first, last = samples[0][1], samples[-1][1]
        assert last.x - first.x == pytest.approx(expected_drift, rel=1e-12)
        assert last.z - first.z == pytest.approx(0.0, abs=1e-12)

    def test_stagnation_rows_are_straight(self, geo_constants):
        p = resolve_geophysical_from_m(geo_constants, 1.0, 0.0)
        samples = sample_trajectory(p, 0.0, -1.0, 0.0, 2.0, 9)
        zs = {s.z for _, s in samples}
        assert len(zs) == 1
        for t, s in samples:
            assert s.x == pytest.approx(p.c * t, rel=1e-12)

    def test_closed_circles_without_current(self, gerstner):
        p = gerstner
        a, b = 0.4, -0.8
        period = 2.0 * math.pi / (p.k * abs(p.m))
        samples = sample_trajectory(p, a, b, 0.0, period, 64)
        radius = math.exp(p.k * b) / p.k
        for _, s in samples:
            dist = math.hypot(s.x - a, s.z - b)
            assert dist == pytest.approx(radius, abs=1e-12)

    def test_bad_arguments_rejected(self, gerstner):
        with pytest.raises(DomainError):
            sample_trajectory(gerstner, 0.0, -1.0, 0.0, 1.0, 1)
        with pytest.raises(DomainError):
            sample_trajectory(gerstner, 0.0, -1.0, 1.0, 1.0, 8)
