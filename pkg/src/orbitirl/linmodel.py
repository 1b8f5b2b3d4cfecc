"""Linearized orbital dynamics and RK4 zero-order-hold discretization.

The seven-state dynamics are expanded to first order about an operating
point; only the two-body gravity term is linearized (disturbances are
handled as process noise downstream). Discretization applies one exact
RK4 step to the linear system with the control held constant, which
yields the degree-4 truncations of the matrix exponential series.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dynamics import StateVector, EnvironmentParams
from .errors import SingularityError

N_STATES = 7
N_CONTROLS = 3


def gravity_gradient(position, mu: float) -> np.ndarray:
    """3x3 Jacobian of two-body gravity -mu r / |r|^3 at a position (km).

    Equal to mu (3 rhat rhat' - I) / r^3; its trace vanishes because the
    point-mass potential is harmonic.
    """
    position = np.asarray(position, dtype=float)
    r = np.linalg.norm(position)
    if r == 0.0:
        raise SingularityError("gravity gradient undefined at zero radius")
    rhat = position / r
    return mu * (3.0 * np.outer(rhat, rhat) - np.eye(3)) / r**3


def control_input_matrix() -> np.ndarray:
    """7x3 input matrix: commanded acceleration drives the velocity states."""
    B = np.zeros((N_STATES, N_CONTROLS))
    B[3:6, :] = np.eye(3)
    return B


@dataclass(frozen=True)
class ContinuousLinearModel:
    """First-order model d(dx)/dt = A dx + B da about an operating point."""

    A: np.ndarray
    B: np.ndarray
    operating_state: StateVector
    operating_control: np.ndarray
    mu: float

    def __post_init__(self):
        object.__setattr__(self, "A", np.asarray(self.A, dtype=float))
        object.__setattr__(self, "B", np.asarray(self.B, dtype=float))
        object.__setattr__(self, "operating_control",
                           np.asarray(self.operating_control, dtype=float))

    def nominal_drift(self) -> np.ndarray:
        """Full state derivative at the operating point (propellant rate zero)."""
        x_bar = self.operating_state
        r = np.linalg.norm(x_bar.position)
        gravity = -self.mu * x_bar.position / r**3
        return np.concatenate([x_bar.velocity,
                               gravity + self.operating_control, [0.0]])


def linearize(x_bar: StateVector, env: EnvironmentParams,
              a_bar=None) -> ContinuousLinearModel:
    """Linearize the two-body dynamics about a state and control pair.

    The A matrix couples position into velocity-rate through the gravity
    gradient; the propellant row is uncoupled in the linear model.
    """
    if a_bar is None:
        a_bar = np.zeros(3)
    A = np.zeros((N_STATES, N_STATES))
    A[0:3, 3:6] = np.eye(3)
    A[3:6, 0:3] = gravity_gradient(x_bar.position, env.mu_E)
    return ContinuousLinearModel(A=A, B=control_input_matrix(),
                                 operating_state=x_bar, operating_control=a_bar,
                                 mu=env.mu_E)


def zoh_series(A: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Degree-4 step and input series for one RK4 step of dx/dt = A x + w.

    Returns (Ad, Gamma) with
        Ad    = I + hA + (hA)^2/2! + (hA)^3/3! + (hA)^4/4!
        Gamma = hI + h^2 A/2 + h^3 A^2/3! + h^4 A^3/4!
    so that one step maps x to Ad x + Gamma w for constant w.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    hA = h * A
    hA2 = hA @ hA
    hA3 = hA2 @ hA
    hA4 = hA3 @ hA
    Ad = np.eye(n) + hA + hA2 / 2.0 + hA3 / 6.0 + hA4 / 24.0
    Gamma = h * (np.eye(n) + hA / 2.0 + hA2 / 6.0 + hA3 / 24.0)
    return Ad, Gamma


def discretize_rk4_zoh(cm: ContinuousLinearModel, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Discrete (A_k, B_k) from one RK4 step with the control held constant."""
    if h <= 0.0:
        raise ValueError(f"step size must be positive, got {h}")
    Ad, Gamma = zoh_series(cm.A, h)
    return Ad, Gamma @ cm.B


def affine_offset(cm: ContinuousLinearModel, h: float, drift=None) -> np.ndarray:
    """Affine term g so x+ = A_k x + B_k u + g reproduces the nominal flow.

    drift is the full state derivative at the operating point in absolute
    coordinates, defaulting to the two-body derivative there. It vanishes
    whenever the operating point is an equilibrium of the linearized flow,
    and deviation-coordinate models take g = 0 by construction.
    """
    if drift is None:
        drift = cm.nominal_drift()
    drift = np.asarray(drift, dtype=float)
    _, Gamma = zoh_series(cm.A, h)
    x0 = cm.operating_state.as_array()
    return Gamma @ (drift - cm.A @ x0 - cm.B @ cm.operating_control)


@dataclass(frozen=True)
class DiscreteLinearModel:
    """Per-step affine model x_{k+1} = A_k x_k + B_k u_k + g_k + w_k.

    Arrays are stacked over the horizon: A is (N, n, n), B is (N, n, m),
    g is (N, n); process_noise is the covariance of the per-step Gaussian
    disturbance w_k.
    """

    A: np.ndarray
    B: np.ndarray
    g: np.ndarray
    process_noise: np.ndarray
    step: float
    horizon: int

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        B = np.asarray(self.B, dtype=float)
        g = np.asarray(self.g, dtype=float)
        W = np.asarray(self.process_noise, dtype=float)
        if A.shape[0] != self.horizon or B.shape[0] != self.horizon or g.shape[0] != self.horizon:
            raise ValueError("stacked matrices must have horizon rows")
        if not np.allclose(W, W.T):
            raise ValueError("process noise covariance must be symmetric")
        if np.linalg.eigvalsh(W).min() < -1e-10:
            raise ValueError("process noise covariance must be positive semidefinite")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "process_noise", W)

    @property
    def n_states(self) -> int:
        return self.A.shape[1]

    @property
    def n_controls(self) -> int:
        return self.B.shape[2]

    @classmethod
    def time_invariant(cls, Ad: np.ndarray, Bd: np.ndarray, horizon: int,
                       g: np.ndarray | None = None,
                       process_noise: np.ndarray | None = None,
                       step: float = 1.0) -> "DiscreteLinearModel":
        """Stack one (Ad, Bd, g) triple across the whole horizon."""
        Ad = np.asarray(Ad, dtype=float)
        Bd = np.asarray(Bd, dtype=float)
        n = Ad.shape[0]
        if g is None:
            g = np.zeros(n)
        if process_noise is None:
            process_noise = np.zeros((n, n))
        return cls(
            A=np.tile(Ad, (horizon, 1, 1)),
            B=np.tile(Bd, (horizon, 1, 1)),
            g=np.tile(np.asarray(g, dtype=float), (horizon, 1)),
            process_noise=process_noise,
            step=step,
            horizon=horizon,
        )
