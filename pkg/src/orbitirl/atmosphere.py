"""Atmospheric density from the US Standard Atmosphere 1976 (USSA76).

The model treats the atmosphere as a steady, spherically symmetric shell
extending to 1000 km. Density is tabulated at 28 base altitudes sampled
from USSA76 and interpolated exponentially between adjacent anchors, so
the profile is continuous and monotone nonincreasing within every
segment. Above 1000 km the density is exactly zero.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import BelowSurfaceError

# USSA76 base altitudes (km) and densities (kg/m^3), 28 anchors, 0-1000 km.
BASE_ALTITUDES_KM = np.array([
    0.0, 25.0, 30.0, 40.0, 50.0, 60.0, 70.0,
    80.0, 90.0, 100.0, 110.0, 120.0, 130.0, 140.0,
    150.0, 180.0, 200.0, 250.0, 300.0, 350.0, 400.0,
    450.0, 500.0, 600.0, 700.0, 800.0, 900.0, 1000.0,
])

BASE_DENSITIES_KGM3 = np.array([
    1.225e+0, 4.008e-2, 1.841e-2, 3.996e-3, 1.027e-3, 3.097e-4, 8.283e-5,
    1.846e-5, 3.416e-6, 5.606e-7, 9.708e-8, 2.222e-8, 8.152e-9, 3.831e-9,
    2.076e-9, 5.194e-10, 2.541e-10, 6.073e-11, 1.916e-11, 7.014e-12, 2.803e-12,
    1.184e-12, 5.215e-13, 1.137e-13, 3.070e-14, 1.136e-14, 5.759e-15, 3.561e-15,
])

MAX_ALTITUDE_KM = float(BASE_ALTITUDES_KM[-1])

# Scale heights (km) chosen so each segment interpolates its two anchors
# exactly: rho(h) = rho_i * exp(-(h - h_i) / H_i) hits rho_{i+1} at h_{i+1}.
_SCALE_HEIGHTS_KM = np.diff(BASE_ALTITUDES_KM) / np.log(
    BASE_DENSITIES_KGM3[:-1] / BASE_DENSITIES_KGM3[1:]
)


def density(altitude_km: float) -> float:
    """Atmospheric density (kg/m^3) at a geometric altitude (km).

    Zero above 1000 km; raises BelowSurfaceError for negative altitudes.
    """
    if altitude_km < 0.0:
        raise BelowSurfaceError(f"altitude {altitude_km} km is below the surface")
    if altitude_km > MAX_ALTITUDE_KM:
        return 0.0
    i = int(np.searchsorted(BASE_ALTITUDES_KM, altitude_km, side="right")) - 1
    i = min(i, len(BASE_ALTITUDES_KM) - 2)
    rho0 = BASE_DENSITIES_KGM3[i]
    return float(rho0 * math.exp(-(altitude_km - BASE_ALTITUDES_KM[i]) / _SCALE_HEIGHTS_KM[i]))


def table_rows() -> list[tuple[float, float, float]]:
    """(base altitude km, density kg/m^3, segment scale height km) rows for audit dumps.

    The final anchor has no segment above it; its scale height is reported
    as NaN.
    """
    heights = list(_SCALE_HEIGHTS_KM) + [float("nan")]
    return [
        (float(h), float(rho), float(sh))
        for h, rho, sh in zip(BASE_ALTITUDES_KM, BASE_DENSITIES_KGM3, heights)
    ]
