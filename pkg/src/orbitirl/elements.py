"""Conversion between Cartesian states and classical orbital elements.

Angles are stored in degrees; all internal trigonometry is in radians.
The extraction handles the arccosine quadrant ambiguities through the
usual sign tests and falls back to conventional zero values for the
angles that become undefined on circular or equatorial orbits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateOrbitError

# Relative thresholds below which an orbit is treated as circular or equatorial.
ECC_SINGULAR_TOL = 1e-11
NODE_SINGULAR_TOL = 1e-11


@dataclass(frozen=True)
class OrbitalElements:
    """Classical orbital elements.

    h: specific angular momentum (km^2/s)
    e: eccentricity
    i: inclination (deg), 0 to 180
    raan: right ascension of the ascending node (deg), 0 to 360
    argp: argument of perigee (deg), 0 to 360
    theta_true: true anomaly (deg), 0 to 360
    a: semimajor axis (km), derived as h^2 / (mu (1 - e^2)); None if parabolic
    """

    h: float
    e: float
    i: float
    raan: float
    argp: float
    theta_true: float
    a: float | None = None

    def __post_init__(self):
        if self.e < 0.0:
            raise ValueError(f"eccentricity must be nonnegative, got {self.e}")
        if self.h <= 0.0:
            raise ValueError(f"angular momentum must be positive, got {self.h}")
        if not 0.0 <= self.i <= 180.0:
            raise ValueError(f"inclination must lie in [0, 180] deg, got {self.i}")

    @classmethod
    def from_semimajor_axis(cls, a: float, e: float, i: float, raan: float,
                            argp: float, theta_true: float, mu: float) -> "OrbitalElements":
        """Build elements from (a, e) by deriving h = sqrt(mu a (1 - e^2))."""
        if a <= 0.0:
            raise ValueError(f"semimajor axis must be positive, got {a}")
        h = math.sqrt(mu * a * (1.0 - e**2))
        return cls(h=h, e=e, i=i, raan=raan, argp=argp, theta_true=theta_true, a=a)


def _acos_deg(x: float) -> float:
    return math.degrees(math.acos(min(1.0, max(-1.0, x))))


def cart_to_coe(r, v, mu: float) -> OrbitalElements:
    """Classical orbital elements of a Cartesian state (km, km/s).

    Singular cases: a circular orbit leaves the argument of perigee
    undefined and it is set to 0 with the true anomaly measured from the
    node line (or the x-axis when also equatorial); an equatorial orbit
    leaves the node undefined and the RAAN is set to 0 with the argument
    of perigee measured from the x-axis.
    """
    r = np.asarray(r, dtype=float)
    v = np.asarray(v, dtype=float)
    r_mag = np.linalg.norm(r)
    v_mag = np.linalg.norm(v)
    if r_mag == 0.0:
        raise DegenerateOrbitError("zero position vector")

    h_vec = np.cross(r, v)
    h = np.linalg.norm(h_vec)
    if h <= 1e-12 * max(1.0, r_mag * v_mag):
        raise DegenerateOrbitError("rectilinear orbit: angular momentum is zero")

    incl = _acos_deg(h_vec[2] / h)

    node = np.cross([0.0, 0.0, 1.0], h_vec)
    n_mag = np.linalg.norm(node)
    equatorial = n_mag <= NODE_SINGULAR_TOL * h

    v_r = float(r @ v) / r_mag
    e_vec = ((v_mag**2 - mu / r_mag) * r - r_mag * v_r * v) / mu
    e = float(np.linalg.norm(e_vec))
    circular = e <= ECC_SINGULAR_TOL

    if equatorial:
        raan = 0.0
    else:
        raan = _acos_deg(node[0] / n_mag)
        if node[1] < 0.0:
            raan = 360.0 - raan

    if circular:
        argp = 0.0
    elif equatorial:
        # Node undefined: measure perigee from the x-axis.
        argp = _acos_deg(e_vec[0] / e)
        if e_vec[1] < 0.0:
            argp = 360.0 - argp
    else:
        argp = _acos_deg(float(node @ e_vec) / (n_mag * e))
        if e_vec[2] < 0.0:
            argp = 360.0 - argp

    if not circular:
        theta = _acos_deg(float(e_vec @ r) / (e * r_mag))
        if v_r < 0.0:
            theta = 360.0 - theta
    elif not equatorial:
        # Circular inclined: angle from the ascending node, southbound past 180.
        theta = _acos_deg(float(node @ r) / (n_mag * r_mag))
        if r[2] < 0.0:
            theta = 360.0 - theta
    else:
        # Circular equatorial: angle from the x-axis, retrograde-aware.
        theta = _acos_deg(r[0] / r_mag)
        if (r[1] >= 0.0) != (h_vec[2] >= 0.0):
            theta = 360.0 - theta

    one_minus_e2 = 1.0 - e**2
    a = h**2 / (mu * one_minus_e2) if abs(one_minus_e2) > 1e-12 else None
    return OrbitalElements(h=h, e=e, i=incl, raan=raan, argp=argp,
                           theta_true=theta, a=a)


def coe_to_cart(el: OrbitalElements, mu: float) -> tuple[np.ndarray, np.ndarray]:
    """Cartesian position (km) and velocity (km/s) of a set of elements.

    Builds the state in the perifocal frame and rotates it with
    R3(-raan) R1(-i) R3(-argp).
    """
    h, e = el.h, el.e
    incl = math.radians(el.i)
    raan = math.radians(el.raan)
    argp = math.radians(el.argp)
    theta = math.radians(el.theta_true)

    p = h**2 / mu
    r_mag = p / (1.0 + e * math.cos(theta))
    r_pf = r_mag * np.array([math.cos(theta), math.sin(theta), 0.0])
    v_pf = (mu / h) * np.array([-math.sin(theta), e + math.cos(theta), 0.0])

    cO, sO = math.cos(raan), math.sin(raan)
    ci, si = math.cos(incl), math.sin(incl)
    cw, sw = math.cos(argp), math.sin(argp)
    rot = np.array([
        [cO * cw - sO * sw * ci, -cO * sw - sO * cw * ci, sO * si],
        [sO * cw + cO * sw * ci, -sO * sw + cO * cw * ci, -cO * si],
        [sw * si, cw * si, ci],
    ])
    return rot @ r_pf, rot @ v_pf
