import math

import numpy as np
import pytest

from orbitirl import atmosphere
from orbitirl.dynamics import (
    EnvironmentParams,
    Perturbations,
    SpacecraftParams,
    StateVector,
    drag_accel,
    j2_accel,
    julian_day,
    mass_flow_rate,
    propagate_rk4,
    shadow_nu,
    solar_ephemeris,
    srp_accel,
    sun_unit_vector,
    thrust_accel,
    total_deriv,
    total_mass,
)
from orbitirl.errors import (
    BelowSurfaceError,
    DegenerateThrustError,
    InvalidMassError,
    SingularityError,
)

ENV = EnvironmentParams(epoch_julian_day=2459031.5)
CRAFT = SpacecraftParams(payload_mass=80.0, drag_area=3.14, srp_area=3.14,
                         C_D=2.2, C_R=1.0, I_sp=300.0, max_thrust=5.0)


def craft_mass_100():
    # propellant chosen so total mass is exactly 100 kg
    return StateVector([42166.7, 0.0, 0.0], [0.0, 3.07466, 0.0], 20.0)


class TestThrustAccel:
    def test_zero_thrust(self):
        state = craft_mass_100()
        assert np.array_equal(thrust_accel(state, 0.0, CRAFT), np.zeros(3))

    def test_max_thrust_along_x(self):
        state = StateVector([42166.7, 0.0, 0.0], [7.5, 0.0, 0.0], 20.0)
        accel = thrust_accel(state, 5.0, CRAFT)
        # 5 N on 100 kg -> 0.05 m/s^2 -> 5e-5 km/s^2 along the velocity
        np.testing.assert_allclose(accel, [5e-5, 0.0, 0.0], rtol=1e-14)

    def test_direction_normalized(self):
        state = StateVector([42166.7, 0.0, 0.0], [0.0, 3.0, 4.0], 20.0)
        accel = thrust_accel(state, 5.0, CRAFT)
        np.testing.assert_allclose(accel, [0.0, 3e-5, 4e-5], rtol=1e-14)

    def test_parallel_to_velocity(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            v = rng.normal(size=3)
            state = StateVector(rng.normal(size=3) + 10.0, v, 10.0)
            accel = thrust_accel(state, 2.5, CRAFT)
            cross = np.linalg.norm(np.cross(accel, v))
            assert cross <= 1e-12 * np.linalg.norm(accel) * np.linalg.norm(v)

    def test_zero_velocity_error(self):
        state = StateVector([7000.0, 0.0, 0.0], [0.0, 0.0, 0.0], 20.0)
        with pytest.raises(DegenerateThrustError):
            thrust_accel(state, 1.0, CRAFT)

    def test_bad_mass_error(self):
        # validated constructors cannot produce nonpositive mass; exercise
        # the defensive check with a bare parameter object
        from types import SimpleNamespace

        state = StateVector([7000.0, 0.0, 0.0], [1.0, 0.0, 0.0], 0.0)
        with pytest.raises(InvalidMassError):
            thrust_accel(state, 1.0, SimpleNamespace(payload_mass=-1.0))


class TestMassFlowRate:
    def test_zero(self):
        assert mass_flow_rate(0.0, 300.0, 9.80665) == 0.0

    def test_nominal(self):
        rate = mass_flow_rate(5.0, 300.0, 9.80665)
        assert rate == pytest.approx(5.0 / (300.0 * 9.80665), rel=1e-15)
        assert rate == pytest.approx(1.6995e-3, rel=1e-4)

    def test_one_kilogram_per_second(self):
        # thrust solving T = I_sp * g0 * 1.0
        assert mass_flow_rate(2942.0, 300.0, 9.80665) == pytest.approx(1.0, rel=2e-6)

    def test_negative_thrust(self):
        with pytest.raises(ValueError):
            mass_flow_rate(-1.0, 300.0, 9.80665)


class TestAtmosphereDensity:
    def test_sea_level(self):
        assert atmosphere.density(0.0) == pytest.approx(1.225, rel=1e-12)

    def test_above_shell(self):
        assert atmosphere.density(1500.0) == 0.0
        assert atmosphere.density(1000.0001) == 0.0

    def test_anchor_values(self):
        for h, rho in zip(atmosphere.BASE_ALTITUDES_KM, atmosphere.BASE_DENSITIES_KGM3):
            assert atmosphere.density(float(h)) == pytest.approx(rho, rel=1e-12)

    def test_midpoint_exponential_interpolation(self):
        # segment [100, 110]: closed-form interpolation of the two anchors
        idx = list(atmosphere.BASE_ALTITUDES_KM).index(100.0)
        rho0 = atmosphere.BASE_DENSITIES_KGM3[idx]
        rho1 = atmosphere.BASE_DENSITIES_KGM3[idx + 1]
        H = 10.0 / math.log(rho0 / rho1)
        expected = rho0 * math.exp(-5.0 / H)
        assert atmosphere.density(105.0) == pytest.approx(expected, rel=1e-12)

    def test_monotone_nonincreasing(self):
        grid = np.arange(0.0, 1000.01, 0.5)
        values = np.array([atmosphere.density(float(h)) for h in grid])
        assert np.all(np.diff(values) <= 1e-30)

    def test_negative_altitude(self):
        with pytest.raises(BelowSurfaceError):
            atmosphere.density(-0.1)


class TestDragAccel:
    def test_geo_above_shell(self):
        state = craft_mass_100()
        assert np.array_equal(drag_accel(state, CRAFT, ENV), np.zeros(3))

    def test_corotating_state_no_drag(self):
        r = np.array([ENV.R_earth + 400.0, 0.0, 0.0])
        v = np.cross(ENV.omega_E, r)
        state = StateVector(r, v, 20.0)
        assert np.array_equal(drag_accel(state, CRAFT, ENV), np.zeros(3))

    def test_magnitude_at_400km(self):
        r = np.array([ENV.R_earth + 400.0, 0.0, 0.0])
        v = np.array([0.0, math.sqrt(ENV.mu_E / np.linalg.norm(r)), 0.0])
        state = StateVector(r, v, 20.0)
        accel = drag_accel(state, CRAFT, ENV)
        v_rel = v - np.cross(ENV.omega_E, r)
        speed = np.linalg.norm(v_rel)
        rho = atmosphere.density(400.0)
        expected = 0.5 * rho * speed**2 * CRAFT.C_D * CRAFT.drag_area / 100.0 * 1000.0
        assert np.linalg.norm(accel) == pytest.approx(expected, rel=1e-12)

    def test_antiparallel_and_dissipative(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            alt = rng.uniform(150.0, 900.0)
            direction = rng.normal(size=3)
            direction /= np.linalg.norm(direction)
            r = (ENV.R_earth + alt) * direction
            v = rng.normal(scale=4.0, size=3)
            state = StateVector(r, v, 20.0)
            accel = drag_accel(state, CRAFT, ENV)
            v_rel = v - np.cross(ENV.omega_E, r)
            assert float(accel @ v_rel) <= 0.0
            cross = np.linalg.norm(np.cross(accel, v_rel))
            if np.linalg.norm(accel) > 0:
                assert cross <= 1e-10 * np.linalg.norm(accel) * np.linalg.norm(v_rel)

    def test_below_surface(self):
        state = StateVector([ENV.R_earth - 10.0, 0.0, 0.0], [1.0, 0.0, 0.0], 20.0)
        with pytest.raises(BelowSurfaceError):
            drag_accel(state, CRAFT, ENV)


def oblateness_potential(position, env):
    # degree-2 zonal potential, used as the independent gradient oracle
    x, y, z = position
    r = math.sqrt(x * x + y * y + z * z)
    return (env.J2 * env.mu_E * env.R_earth**2 / 2.0) * (3.0 * z * z / r**5 - 1.0 / r**3)


class TestJ2Accel:
    def test_polar_axis_symmetry(self):
        accel = j2_accel([0.0, 0.0, 7000.0], ENV)
        assert accel[0] == 0.0 and accel[1] == 0.0

    def test_equatorial_closed_form(self):
        a = 10000.0
        accel = j2_accel([a, 0.0, 0.0], ENV)
        k = 1.5 * ENV.J2 * ENV.mu_E * ENV.R_earth**2 / a**4
        np.testing.assert_allclose(accel, [-k, 0.0, 0.0], rtol=1e-14)

    def test_matches_negative_potential_gradient(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            direction = rng.normal(size=3)
            direction /= np.linalg.norm(direction)
            r = rng.uniform(6600.0, 45000.0) * direction
            accel = j2_accel(r, ENV)
            grad = np.zeros(3)
            eps = 1e-5 * np.linalg.norm(r)
            for axis in range(3):
                dr = np.zeros(3)
                dr[axis] = eps
                grad[axis] = (oblateness_potential(r + dr, ENV)
                              - oblateness_potential(r - dr, ENV)) / (2.0 * eps)
            assert np.linalg.norm(accel + grad) <= 1e-6 * np.linalg.norm(accel)

    def test_zero_radius(self):
        with pytest.raises(SingularityError):
            j2_accel([0.0, 0.0, 0.0], ENV)


class TestSolarEphemeris:
    def test_reference_epoch(self):
        eph = solar_ephemeris(2451545.0)
        assert eph.obliquity_deg == pytest.approx(23.439, abs=1e-12)
        assert eph.mean_longitude_deg == pytest.approx(280.459, abs=1e-12)
        assert eph.mean_anomaly_deg == pytest.approx(357.529, abs=1e-12)

    def test_longitude_formula_at_reference(self):
        eph = solar_ephemeris(2451545.0)
        lam = (280.459 + 1.915 * math.sin(math.radians(357.529))
               + 0.0200 * math.sin(math.radians(2 * 357.529))) % 360.0
        assert eph.ecliptic_longitude_deg == pytest.approx(lam, abs=1e-12)

    def test_angles_wrap(self):
        # 150 days past the epoch the raw mean longitude exceeds 360
        eph = solar_ephemeris(2451545.0 + 150.0)
        raw = 280.459 + 0.98564736 * 150.0
        assert raw > 360.0
        assert eph.mean_longitude_deg == pytest.approx(raw - 360.0, abs=1e-9)
        for angle in eph:
            assert 0.0 <= angle < 360.0 or angle == eph.obliquity_deg


class TestShadowAndSrp:
    def test_sunlit_side(self):
        u = sun_unit_vector(ENV.epoch_julian_day)
        assert shadow_nu(42166.7 * u, u, ENV) == 1

    def test_directly_behind_earth(self):
        u = sun_unit_vector(ENV.epoch_julian_day)
        assert shadow_nu(-42166.7 * u, u, ENV) == 0

    def test_antisun_outside_cylinder(self):
        u = np.array([1.0, 0.0, 0.0])
        perp = np.array([0.0, 1.0, 0.0])
        pos = -20000.0 * u + 2.0 * ENV.R_earth * perp
        assert shadow_nu(pos, u, ENV) == 1

    def test_pressure_constant(self):
        assert ENV.S0_intensity / ENV.c_light == pytest.approx(4.56e-6, rel=2e-3)

    def test_srp_magnitude_and_direction(self):
        state = craft_mass_100()
        u = sun_unit_vector(ENV.epoch_julian_day)
        accel = srp_accel(state, ENV.epoch_julian_day, CRAFT, ENV)
        if shadow_nu(state.position, u, ENV) == 1:
            p = ENV.S0_intensity / ENV.c_light
            expected = p * CRAFT.C_R * CRAFT.srp_area / 100.0 / 1000.0
            assert np.linalg.norm(accel) == pytest.approx(expected, rel=1e-12)
            np.testing.assert_allclose(accel, -expected * u, rtol=1e-12)

    def test_srp_zero_in_shadow(self):
        u = sun_unit_vector(ENV.epoch_julian_day)
        state = StateVector(-42166.7 * u, [0.0, 3.07, 0.0], 20.0)
        assert np.array_equal(srp_accel(state, ENV.epoch_julian_day, CRAFT, ENV),
                              np.zeros(3))


class TestTotalDeriv:
    def test_kepler_limit(self):
        state = craft_mass_100()
        deriv = total_deriv(0.0, state, 0.0, CRAFT, ENV, Perturbations.none())
        r = np.linalg.norm(state.position)
        np.testing.assert_allclose(deriv[:3], state.velocity, rtol=1e-15)
        np.testing.assert_allclose(deriv[3:6], -ENV.mu_E * state.position / r**3,
                                   rtol=1e-15)
        assert deriv[6] == 0.0

    def test_propellant_component(self):
        state = craft_mass_100()
        deriv = total_deriv(0.0, state, 5.0, CRAFT, ENV, Perturbations.none())
        assert deriv[6] == pytest.approx(-5.0 / (300.0 * 9.80665), rel=1e-15)

    def test_composition_of_accelerations(self):
        state = StateVector([42166.7, 0.0, 0.0], [0.0, 3.07466, 0.0], 20.0)
        deriv = total_deriv(0.0, state, 2.0, CRAFT, ENV)
        r = np.linalg.norm(state.position)
        gravity = -ENV.mu_E * state.position / r**3
        expected = (gravity
                    + thrust_accel(state, 2.0, CRAFT)
                    + drag_accel(state, CRAFT, ENV)
                    + j2_accel(state.position, ENV)
                    + srp_accel(state, ENV.epoch_julian_day, CRAFT, ENV))
        np.testing.assert_allclose(deriv[3:6], expected, rtol=1e-14)


class TestPropagateRK4:
    def test_circular_orbit_period_return(self):
        a = 42166.7
        v = math.sqrt(ENV.mu_E / a)
        state = StateVector([a, 0.0, 0.0], [0.0, v, 0.0], 20.0)
        period = 2.0 * math.pi * math.sqrt(a**3 / ENV.mu_E)
        n_steps = int(round(period / 10.0))
        tf = n_steps * 10.0
        traj = propagate_rk4(state, 0.0, tf, 10.0, params=CRAFT, env=ENV,
                             perturbations=Perturbations.none())
        # close the orbit analytically at tf by rotating the initial state
        angle = math.sqrt(ENV.mu_E / a**3) * tf
        expected = a * np.array([math.cos(angle), math.sin(angle), 0.0])
        err = np.linalg.norm(traj.states[-1, :3] - expected) / a
        assert err < 1e-6

    def test_energy_and_momentum_conservation(self):
        a = 42166.7
        v = math.sqrt(ENV.mu_E / a)
        state = StateVector([a, 0.0, 0.0], [0.0, v, 0.0], 20.0)
        period = 2.0 * math.pi * math.sqrt(a**3 / ENV.mu_E)
        tf = int(round(period / 10.0)) * 10.0
        traj = propagate_rk4(state, 0.0, tf, 10.0, params=CRAFT, env=ENV,
                             perturbations=Perturbations.none())
        r = np.linalg.norm(traj.states[:, :3], axis=1)
        speed = np.linalg.norm(traj.states[:, 3:6], axis=1)
        energy = speed**2 / 2.0 - ENV.mu_E / r
        h = np.linalg.norm(np.cross(traj.states[:, :3], traj.states[:, 3:6]), axis=1)
        assert np.abs(energy - energy[0]).max() < 1e-6 * abs(energy[0])
        assert np.abs(h - h[0]).max() < 1e-6 * h[0]

    def test_zero_dynamics_constant_state(self):
        env0 = EnvironmentParams(mu_E=0.0, epoch_julian_day=2459031.5)
        state = StateVector([7000.0, 0.0, 0.0], [0.0, 0.0, 0.0], 5.0)
        traj = propagate_rk4(state, 0.0, 100.0, 10.0, params=CRAFT, env=env0,
                             perturbations=Perturbations.none())
        np.testing.assert_array_equal(traj.states[-1], traj.states[0])

    def test_seeded_noise_is_reproducible(self):
        state = craft_mass_100()
        kwargs = dict(params=CRAFT, env=ENV, perturbations=Perturbations.none(),
                      noise_sigma=1e-6, seed=123)
        t1 = propagate_rk4(state, 0.0, 600.0, 10.0, **kwargs)
        t2 = propagate_rk4(state, 0.0, 600.0, 10.0, **kwargs)
        assert np.array_equal(t1.states, t2.states)

    def test_propellant_nonincreasing_under_thrust(self):
        state = craft_mass_100()
        control = lambda t, s: np.array([1e-5, 0.0, 0.0])
        traj = propagate_rk4(state, 0.0, 600.0, 10.0, control=control,
                             params=CRAFT, env=ENV,
                             perturbations=Perturbations.none())
        assert np.all(np.diff(traj.states[:, 6]) <= 0.0)

    def test_step_validation(self):
        state = craft_mass_100()
        with pytest.raises(ValueError):
            propagate_rk4(state, 0.0, 100.0, -1.0, params=CRAFT, env=ENV)
        with pytest.raises(ValueError):
            propagate_rk4(state, 0.0, 95.0, 10.0, params=CRAFT, env=ENV)
        with pytest.raises(ValueError):
            propagate_rk4(state, 100.0, 0.0, 10.0, params=CRAFT, env=ENV)


class TestJulianDay:
    def test_july_2020_epoch(self):
        assert julian_day(2020, 7, 1) == 2459031.5

    def test_j2000(self):
        assert julian_day(2000, 1, 1, hour=12.0) == 2451545.0


class TestStateVector:
    def test_roundtrip(self):
        state = craft_mass_100()
        again = StateVector.from_array(state.as_array())
        np.testing.assert_array_equal(again.as_array(), state.as_array())

    def test_invariants(self):
        with pytest.raises(ValueError):
            StateVector([0.0, 0.0, 0.0], [1.0, 0.0, 0.0], 1.0)
        with pytest.raises(ValueError):
            StateVector([7000.0, 0.0, 0.0], [1.0, 0.0, 0.0], -1.0)


class TestParams:
    def test_reflectivity_range(self):
        with pytest.raises(ValueError):
            SpacecraftParams(payload_mass=80.0, drag_area=3.14, srp_area=3.14,
                             C_D=2.2, C_R=2.5, I_sp=300.0, max_thrust=5.0)

    def test_positive_fields(self):
        with pytest.raises(ValueError):
            SpacecraftParams(payload_mass=-1.0, drag_area=3.14, srp_area=3.14,
                             C_D=2.2, C_R=1.0, I_sp=300.0, max_thrust=5.0)
