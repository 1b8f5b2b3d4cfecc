"""Nonlinear propagation of a thrusting spacecraft about an oblate Earth.

State is seven-dimensional: geocentric-equatorial Cartesian position (km),
velocity (km/s), and remaining propellant mass (kg). Accelerations modeled
are two-body gravity, thrust, aerodynamic drag against a co-rotating
atmosphere, the dominant oblateness harmonic, and solar radiation pressure
with a cylindrical eclipse test. Internal units are km, km/s, kg, s;
thrust (N) and areas (m^2) are converted at the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from . import atmosphere
from .errors import (
    BelowSurfaceError,
    DegenerateThrustError,
    InvalidMassError,
    SingularityError,
)

M_PER_KM = 1000.0

# Geometric step cap for the fixed-step integrator.
MAX_PROPAGATION_STEPS = 20_000_000


def _vec3(x) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    return v


@dataclass(frozen=True)
class StateVector:
    """Position (km), velocity (km/s), and propellant mass (kg)."""

    position: np.ndarray
    velocity: np.ndarray
    propellant_mass: float

    def __post_init__(self):
        object.__setattr__(self, "position", _vec3(self.position))
        object.__setattr__(self, "velocity", _vec3(self.velocity))
        object.__setattr__(self, "propellant_mass", float(self.propellant_mass))
        if not np.linalg.norm(self.position) > 0.0:
            raise ValueError("position must be nonzero (never at Earth center)")
        if self.propellant_mass < 0.0:
            raise ValueError("propellant_mass must be nonnegative")

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.position, self.velocity, [self.propellant_mass]])

    @classmethod
    def from_array(cls, x) -> "StateVector":
        x = np.asarray(x, dtype=float)
        if x.shape != (7,):
            raise ValueError(f"expected a 7-vector, got shape {x.shape}")
        return cls(position=x[:3], velocity=x[3:6], propellant_mass=x[6])


@dataclass(frozen=True)
class SpacecraftParams:
    """Physical spacecraft parameters.

    payload_mass: dry mass excluding propellant (kg)
    drag_area: cross-sectional area for drag (m^2)
    srp_area: cross-sectional area facing the Sun, cannonball model (m^2)
    C_D: drag coefficient
    C_R: radiation pressure coefficient, 1 (absorbing) to 2 (reflecting)
    I_sp: specific impulse (s)
    max_thrust: thrust ceiling (N)
    """

    payload_mass: float
    drag_area: float
    srp_area: float
    C_D: float
    C_R: float
    I_sp: float
    max_thrust: float

    def __post_init__(self):
        for name in ("payload_mass", "drag_area", "srp_area", "C_D", "C_R",
                     "I_sp", "max_thrust"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")
        if not 1.0 <= self.C_R <= 2.0:
            raise ValueError("C_R must lie in [1, 2]")


@dataclass(frozen=True)
class EnvironmentParams:
    """Earth and solar environment constants.

    mu_E: gravitational parameter (km^3/s^2)
    R_earth: equatorial radius (km)
    J2: leading zonal harmonic coefficient
    omega_E: Earth rotation vector (rad/s)
    S0_intensity: solar radiation intensity at Earth (W/m^2)
    c_light: speed of light (m/s)
    g0: standard gravity (m/s^2)
    epoch_julian_day: Julian day of simulation start
    """

    mu_E: float = 398600.4418
    R_earth: float = 6378.137
    J2: float = 0.00108263
    omega_E: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 7.2921159e-5]))
    S0_intensity: float = 1367.0
    c_light: float = 2.998e8
    g0: float = 9.80665
    epoch_julian_day: float = 2451545.0

    def __post_init__(self):
        object.__setattr__(self, "omega_E", _vec3(self.omega_E))


@dataclass(frozen=True)
class Perturbations:
    """Which disturbance accelerations are active."""

    drag: bool = True
    j2: bool = True
    srp: bool = True

    @classmethod
    def none(cls) -> "Perturbations":
        return cls(drag=False, j2=False, srp=False)


@dataclass(frozen=True)
class PerturbationAccel:
    """Disturbance acceleration breakdown (km/s^2 each)."""

    a_c: np.ndarray
    a_ad: np.ndarray
    a_J2: np.ndarray
    a_srp: np.ndarray

    @property
    def a_d(self) -> np.ndarray:
        """Total disturbance: control + drag + oblateness + radiation pressure."""
        return self.a_c + self.a_ad + self.a_J2 + self.a_srp


@dataclass(frozen=True)
class Trajectory:
    """Time-indexed record of states and the controls applied between them.

    times has N+1 entries, states is (N+1, n), controls is (N, m): row k of
    controls is held from times[k] to times[k+1].
    """

    times: np.ndarray
    states: np.ndarray
    controls: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "times", np.asarray(self.times, dtype=float))
        object.__setattr__(self, "states", np.asarray(self.states, dtype=float))
        object.__setattr__(self, "controls", np.asarray(self.controls, dtype=float))
        if self.states.shape[0] != self.times.shape[0]:
            raise ValueError("states and times must have the same length")
        if self.controls.shape[0] != self.times.shape[0] - 1:
            raise ValueError("controls must have one fewer row than states")

    @property
    def horizon(self) -> int:
        return self.controls.shape[0]


def total_mass(state: StateVector, params: SpacecraftParams) -> float:
    """Propellant plus payload mass (kg)."""
    return state.propellant_mass + params.payload_mass


def thrust_accel(state: StateVector, thrust_n: float, params: SpacecraftParams) -> np.ndarray:
    """Acceleration (km/s^2) from a thrust of magnitude thrust_n (N).

    Thrust acts along the velocity unit vector, so the result is parallel
    to the velocity with magnitude thrust_n / m_SO.
    """
    m_so = total_mass(state, params)
    if m_so <= 0.0:
        raise InvalidMassError(f"total mass {m_so} kg is not positive")
    if thrust_n == 0.0:
        return np.zeros(3)
    speed = np.linalg.norm(state.velocity)
    if speed == 0.0:
        raise DegenerateThrustError("nonzero thrust with zero velocity has no direction")
    return (thrust_n / m_so / M_PER_KM) * (state.velocity / speed)


def mass_flow_rate(thrust_n: float, I_sp: float, g0: float) -> float:
    """Propellant consumption rate T / (I_sp * g0) in kg/s.

    The returned rate is a magnitude; propellant mass decreases at this
    rate while thrusting.
    """
    if thrust_n < 0.0:
        raise ValueError(f"thrust must be nonnegative, got {thrust_n}")
    return thrust_n / (I_sp * g0)


def atmosphere_density(altitude_km: float) -> float:
    """Shell-model USSA76 density (kg/m^3); zero above 1000 km."""
    return atmosphere.density(altitude_km)


def drag_accel(state: StateVector, params: SpacecraftParams,
               env: EnvironmentParams) -> np.ndarray:
    """Aerodynamic drag acceleration (km/s^2).

    Velocity is taken relative to an atmosphere co-rotating with Earth,
    v_rel = v - omega_E x r, and the acceleration opposes v_rel:

        a = -1/2 rho |v_rel| (C_D A / m_SO) v_rel
    """
    r = np.linalg.norm(state.position)
    altitude = r - env.R_earth
    if altitude < 0.0:
        raise BelowSurfaceError(f"altitude {altitude} km is below the surface")
    rho = atmosphere.density(altitude)
    if rho == 0.0:
        return np.zeros(3)
    v_rel = state.velocity - np.cross(env.omega_E, state.position)
    speed = np.linalg.norm(v_rel)
    if speed == 0.0:
        return np.zeros(3)
    m_so = total_mass(state, params)
    # rho [kg/m^3] * v^2 [km^2/s^2] * area [m^2] / mass [kg] -> M_PER_KM * km/s^2
    return -0.5 * rho * speed * (params.C_D * params.drag_area / m_so) * v_rel * M_PER_KM


def j2_accel(position, env: EnvironmentParams) -> np.ndarray:
    """Acceleration (km/s^2) from the leading oblateness harmonic.

    Negative gradient of the degree-2 zonal potential; the z-axis is the
    Earth's rotation axis.
    """
    position = _vec3(position)
    r = np.linalg.norm(position)
    if r == 0.0:
        raise SingularityError("oblateness acceleration undefined at zero radius")
    x, y, z = position
    z2_r2 = (z / r) ** 2
    k = 1.5 * env.J2 * env.mu_E * env.R_earth**2 / r**4
    return k * np.array([
        (x / r) * (5.0 * z2_r2 - 1.0),
        (y / r) * (5.0 * z2_r2 - 1.0),
        (z / r) * (5.0 * z2_r2 - 3.0),
    ])


class SolarEphemeris(NamedTuple):
    """Low-precision solar angles (degrees)."""

    ecliptic_longitude_deg: float
    obliquity_deg: float
    mean_longitude_deg: float
    mean_anomaly_deg: float


def solar_ephemeris(jd: float) -> SolarEphemeris:
    """Apparent solar ecliptic longitude and obliquity at a Julian day.

    Uses the standard almanac linear fits in days since J2000; the mean
    longitude, mean anomaly, and ecliptic longitude are wrapped to
    [0, 360) degrees.
    """
    n = jd - 2451545.0
    eps = 23.439 - 3.56e-7 * n
    L = (280.459 + 0.98564736 * n) % 360.0
    M = (357.529 + 0.98560023 * n) % 360.0
    lam = (L + 1.915 * math.sin(math.radians(M))
           + 0.0200 * math.sin(math.radians(2.0 * M))) % 360.0
    return SolarEphemeris(lam, eps, L, M)


def sun_unit_vector(jd: float) -> np.ndarray:
    """Earth-to-Sun unit vector in the geocentric equatorial frame.

    The Earth-to-Sun direction stands in for the spacecraft-to-Sun
    direction; the angle between them is below 0.02 degrees.
    """
    eph = solar_ephemeris(jd)
    lam = math.radians(eph.ecliptic_longitude_deg)
    eps = math.radians(eph.obliquity_deg)
    return np.array([
        math.cos(lam),
        math.cos(eps) * math.sin(lam),
        math.sin(eps) * math.sin(lam),
    ])


def shadow_nu(position, sun_unit, env: EnvironmentParams) -> int:
    """Cylindrical umbra test: 0 in Earth's shadow, 1 in sunlight.

    The spacecraft is shadowed iff it is on the anti-Sun side of Earth and
    within one Earth radius of the Earth-Sun axis.
    """
    position = _vec3(position)
    sun_unit = _vec3(sun_unit)
    along = float(position @ sun_unit)
    if along >= 0.0:
        return 1
    axis_distance = np.linalg.norm(position - along * sun_unit)
    return 0 if axis_distance < env.R_earth else 1


def srp_accel(state: StateVector, jd: float, params: SpacecraftParams,
              env: EnvironmentParams) -> np.ndarray:
    """Solar radiation pressure acceleration (km/s^2), cannonball model.

    The photon momentum flux S/c pushes the spacecraft directly away from
    the Sun; the eclipse factor zeroes it inside the umbra cylinder.
    """
    u_hat = sun_unit_vector(jd)
    nu = shadow_nu(state.position, u_hat, env)
    if nu == 0:
        return np.zeros(3)
    p_srp = env.S0_intensity / env.c_light  # N/m^2
    m_so = total_mass(state, params)
    accel_ms2 = p_srp * params.C_R * params.srp_area / m_so
    return -(accel_ms2 / M_PER_KM) * u_hat


def perturbation_accels(state: StateVector, jd: float, a_c,
                        params: SpacecraftParams, env: EnvironmentParams,
                        perturbations: Perturbations = Perturbations()) -> PerturbationAccel:
    """Assemble the disturbance breakdown for a given control acceleration."""
    a_c = _vec3(a_c)
    zero = np.zeros(3)
    a_ad = drag_accel(state, params, env) if perturbations.drag else zero
    a_j2 = j2_accel(state.position, env) if perturbations.j2 else zero
    a_srp = srp_accel(state, jd, params, env) if perturbations.srp else zero
    return PerturbationAccel(a_c=a_c, a_ad=a_ad, a_J2=a_j2, a_srp=a_srp)


def total_deriv(t: float, state: StateVector, commanded_thrust_n: float,
                params: SpacecraftParams, env: EnvironmentParams,
                perturbations: Perturbations = Perturbations()) -> np.ndarray:
    """Seven-state derivative under velocity-aligned thrust of given magnitude (N).

    Returns (velocity, two-body gravity + disturbances, propellant rate);
    propellant mass decreases while thrusting.
    """
    r = np.linalg.norm(state.position)
    gravity = -env.mu_E * state.position / r**3
    a_c = thrust_accel(state, commanded_thrust_n, params)
    jd = env.epoch_julian_day + t / 86400.0
    accels = perturbation_accels(state, jd, a_c, params, env, perturbations)
    mdot = -mass_flow_rate(commanded_thrust_n, params.I_sp, env.g0)
    return np.concatenate([state.velocity, gravity + accels.a_d, [mdot]])


ControlSchedule = Callable[[float, StateVector], np.ndarray]


def _deriv_vector_control(t: float, x: np.ndarray, a_c: np.ndarray,
                          params: SpacecraftParams, env: EnvironmentParams,
                          perturbations: Perturbations) -> np.ndarray:
    """Derivative with a commanded 3-vector control acceleration (km/s^2).

    The command magnitude is clamped to the thrust ceiling at the current
    mass, and propellant is charged at the equivalent-thrust rate. With no
    propellant left the actuator produces nothing.
    """
    position = x[:3]
    velocity = x[3:6]
    m_f = x[6]
    m_so = m_f + params.payload_mass
    r = np.linalg.norm(position)
    if r <= 0.0:
        raise SingularityError("propagated state reached zero radius")

    a_mag = np.linalg.norm(a_c)
    if m_f <= 0.0:
        a_c = np.zeros(3)
        a_mag = 0.0
    else:
        a_max = params.max_thrust / m_so / M_PER_KM
        if a_mag > a_max:
            a_c = a_c * (a_max / a_mag)
            a_mag = a_max

    state = StateVector(position, velocity, max(m_f, 0.0))
    jd = env.epoch_julian_day + t / 86400.0
    accels = perturbation_accels(state, jd, a_c, params, env, perturbations)
    gravity = -env.mu_E * position / r**3
    mdot = -mass_flow_rate(a_mag * m_so * M_PER_KM, params.I_sp, env.g0)
    return np.concatenate([velocity, gravity + accels.a_d, [mdot]])


def propagate_rk4(state0: StateVector, t0: float, tf: float, h: float,
                  control: ControlSchedule | None = None,
                  params: SpacecraftParams | None = None,
                  env: EnvironmentParams | None = None,
                  perturbations: Perturbations = Perturbations(),
                  noise_sigma: float = 0.0,
                  seed: int | None = None,
                  record_every: int = 1) -> Trajectory:
    """Fixed-step classic RK4 propagation with a zero-order-hold control.

    Args:
        state0: initial state.
        t0, tf: start and end times (s), tf > t0.
        h: integration step (s); (tf - t0) must be an integer number of steps.
        control: callable (t, state) -> commanded acceleration 3-vector
            (km/s^2), sampled at each step start and held across the step;
            None means no control.
        params, env: spacecraft and environment parameters.
        perturbations: which disturbances to apply.
        noise_sigma: per-step standard deviation (km/s) of an isotropic
            Gaussian kick added to the velocity after each step.
        seed: RNG seed; a fixed seed makes the trajectory reproducible.
        record_every: record every k-th step (controls are sampled at the
            recorded step starts).

    Returns:
        Trajectory of recorded times, 7-states, and held controls.
    """
    if params is None or env is None:
        raise ValueError("params and env are required")
    if h <= 0.0:
        raise ValueError(f"step size must be positive, got {h}")
    if tf <= t0:
        raise ValueError(f"tf must exceed t0, got t0={t0}, tf={tf}")
    n_steps_f = (tf - t0) / h
    n_steps = int(round(n_steps_f))
    if abs(n_steps_f - n_steps) > 1e-9 * max(1.0, abs(n_steps_f)):
        raise ValueError("(tf - t0) must be an integer multiple of h")
    if n_steps > MAX_PROPAGATION_STEPS:
        raise ValueError(f"step count {n_steps} exceeds cap {MAX_PROPAGATION_STEPS}")
    if record_every < 1 or n_steps % record_every != 0:
        raise ValueError("record_every must divide the step count")

    rng = np.random.default_rng(seed)
    x = state0.as_array().copy()
    n_rec = n_steps // record_every
    times = np.empty(n_rec + 1)
    states = np.empty((n_rec + 1, 7))
    controls = np.zeros((n_rec, 3))
    times[0] = t0
    states[0] = x

    def deriv(t, xv, a_c):
        return _deriv_vector_control(t, xv, a_c, params, env, perturbations)

    for step in range(n_steps):
        t = t0 + step * h
        if control is not None:
            a_c = _vec3(control(t, StateVector.from_array(x)))
        else:
            a_c = np.zeros(3)
        if step % record_every == 0:
            controls[step // record_every] = a_c

        k1 = deriv(t, x, a_c)
        k2 = deriv(t + h / 2.0, x + (h / 2.0) * k1, a_c)
        k3 = deriv(t + h / 2.0, x + (h / 2.0) * k2, a_c)
        k4 = deriv(t + h, x + h * k3, a_c)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if x[6] < 0.0:
            x[6] = 0.0

        if noise_sigma > 0.0:
            x[3:6] += rng.normal(0.0, noise_sigma, size=3)

        if np.linalg.norm(x[:3]) <= 0.0:
            raise SingularityError("propagated state reached zero radius")

        if (step + 1) % record_every == 0:
            idx = (step + 1) // record_every
            times[idx] = t0 + (step + 1) * h
            states[idx] = x

    return Trajectory(times=times, states=states, controls=controls)


def julian_day(year: int, month: int, day: int, hour: float = 0.0,
               minute: float = 0.0, second: float = 0.0) -> float:
    """Julian day of a Gregorian calendar date (UT)."""
    j0 = (367 * year - (7 * (year + (month + 9) // 12)) // 4
          + (275 * month) // 9 + day + 1721013.5)
    return j0 + (hour + minute / 60.0 + second / 3600.0) / 24.0
