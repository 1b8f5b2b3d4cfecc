"""Finite-horizon LQR: quadratic costs, backward Riccati recursion,
value and Q functions, and affine-policy rollouts.

The stage cost is the quadratic form

    l(x, u) = 1/2 [1, x, u]' M [1, x, u]
            = 1/2 c0 + x'q + u'r + 1/2 x'Q x + 1/2 u'R u + u'P x

with a separate terminal cost 1/2 x'Q_N x + x'q_N. The value function at
each step is 1/2 x'S x + x's + c; the optimal policy is affine,
u = K x + l. Cost convention throughout: smaller is better.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import IllPosedCostError
from .dynamics import Trajectory
from .linmodel import DiscreteLinearModel


def _sym(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.T)


@dataclass(frozen=True)
class QuadraticCost:
    """Stage and terminal weights of a quadratic cost, constant over time.

    Q (n x n) and R (m x m) weight state and control, P (m x n) is the
    control-state cross term, q and r are linear terms, const is the
    scalar corner of the block weight matrix, and (Q_N, q_N) weight the
    terminal state.
    """

    Q: np.ndarray
    R: np.ndarray
    P: np.ndarray
    q: np.ndarray
    r: np.ndarray
    Q_N: np.ndarray
    q_N: np.ndarray
    const: float = 0.0

    def __post_init__(self):
        for name in ("Q", "R", "P", "q", "r", "Q_N", "q_N"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        n, m = self.n_states, self.n_controls
        if self.Q.shape != (n, n) or self.R.shape != (m, m):
            raise ValueError("Q and R must be square")
        if self.P.shape != (m, n):
            raise ValueError(f"P must be (m, n) = ({m}, {n}), got {self.P.shape}")
        if self.q.shape != (n,) or self.r.shape != (m,):
            raise ValueError("q and r must match the state and control sizes")
        if self.Q_N.shape != (n, n) or self.q_N.shape != (n,):
            raise ValueError("terminal weights must match the state size")

    @property
    def n_states(self) -> int:
        return self.Q.shape[0]

    @property
    def n_controls(self) -> int:
        return self.R.shape[0]

    def block(self) -> np.ndarray:
        """Symmetric (1+n+m) block weight matrix over [1, x, u]."""
        n, m = self.n_states, self.n_controls
        M = np.zeros((1 + n + m, 1 + n + m))
        M[0, 0] = self.const
        M[0, 1:1 + n] = self.q
        M[1:1 + n, 0] = self.q
        M[0, 1 + n:] = self.r
        M[1 + n:, 0] = self.r
        M[1:1 + n, 1:1 + n] = self.Q
        M[1 + n:, 1 + n:] = self.R
        M[1 + n:, 1:1 + n] = self.P
        M[1:1 + n, 1 + n:] = self.P.T
        return M

    @classmethod
    def from_block(cls, M: np.ndarray, n: int, m: int,
                   Q_N: np.ndarray | None = None,
                   q_N: np.ndarray | None = None) -> "QuadraticCost":
        """Split a (1+n+m) block weight matrix into named weights.

        M is symmetrized first, so an asymmetric input contributes through
        its symmetric part only, exactly as it does in the quadratic form.
        Terminal weights default to the Q block and zero.
        """
        M = _sym(np.asarray(M, dtype=float))
        if M.shape != (1 + n + m, 1 + n + m):
            raise ValueError(f"block matrix must be {(1 + n + m,) * 2}, got {M.shape}")
        Q = M[1:1 + n, 1:1 + n]
        return cls(
            Q=Q,
            R=M[1 + n:, 1 + n:],
            P=M[1 + n:, 1:1 + n],
            q=M[0, 1:1 + n],
            r=M[0, 1 + n:],
            Q_N=Q.copy() if Q_N is None else Q_N,
            q_N=np.zeros(n) if q_N is None else q_N,
            const=float(M[0, 0]),
        )

    @classmethod
    def identity(cls, n: int, m: int) -> "QuadraticCost":
        """Unit state and control weights, no cross or linear terms."""
        return cls(Q=np.eye(n), R=np.eye(m), P=np.zeros((m, n)),
                   q=np.zeros(n), r=np.zeros(m), Q_N=np.eye(n), q_N=np.zeros(n))


@dataclass(frozen=True)
class ValueQuadratic:
    """Backward value function 1/2 x'S x + x's + c, stacked over steps 0..N."""

    S: np.ndarray
    s: np.ndarray
    c: np.ndarray

    @property
    def horizon(self) -> int:
        return self.S.shape[0] - 1

    def __call__(self, x, k: int) -> float:
        x = np.asarray(x, dtype=float)
        return float(0.5 * x @ self.S[k] @ x + x @ self.s[k] + self.c[k])


@dataclass(frozen=True)
class GaussianPolicy:
    """Affine Gaussian policy u_k ~ N(K_k x + l_k, Sigma_u[k]).

    The deterministic optimal policy is the zero-covariance limit.
    """

    K: np.ndarray
    l: np.ndarray
    Sigma_u: np.ndarray

    @property
    def horizon(self) -> int:
        return self.K.shape[0]

    def mean(self, x, k: int) -> np.ndarray:
        return self.K[k] @ np.asarray(x, dtype=float) + self.l[k]


def running_cost(x, u, cost: QuadraticCost) -> float:
    """Stage cost of a state-control pair."""
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    if x.shape != (cost.n_states,) or u.shape != (cost.n_controls,):
        raise ValueError(
            f"expected shapes {(cost.n_states,)} and {(cost.n_controls,)}, "
            f"got {x.shape} and {u.shape}")
    return float(0.5 * cost.const + x @ cost.q + u @ cost.r
                 + 0.5 * x @ cost.Q @ x + 0.5 * u @ cost.R @ u
                 + u @ cost.P @ x)


def terminal_cost(x, cost: QuadraticCost) -> float:
    x = np.asarray(x, dtype=float)
    return float(0.5 * x @ cost.Q_N @ x + x @ cost.q_N)


def total_cost(states: np.ndarray, controls: np.ndarray, cost: QuadraticCost) -> float:
    """Summed stage costs plus the terminal cost of a trajectory."""
    states = np.asarray(states, dtype=float)
    controls = np.asarray(controls, dtype=float)
    J = sum(running_cost(states[k], controls[k], cost) for k in range(controls.shape[0]))
    return J + terminal_cost(states[-1], cost)


def riccati_backward(model: DiscreteLinearModel,
                     cost: QuadraticCost) -> tuple[ValueQuadratic, GaussianPolicy]:
    """Backward Riccati recursion for the finite-horizon affine problem.

    Propagates the terminal conditions S_N = Q_N, s_N = q_N, c_N = 0
    backwards; gains follow from the completed square,

        K_k = -(R + B'S'B)^{-1} (B'S'A + P)
        l_k = -(R + B'S'B)^{-1} (B'S'g + B's' + r).

    S is re-symmetrized after each step to suppress numerical drift. The
    returned policy is deterministic (zero covariance).
    """
    N = model.horizon
    n, m = model.n_states, model.n_controls
    if cost.n_states != n or cost.n_controls != m:
        raise ValueError("cost dimensions do not match the model")

    S = np.zeros((N + 1, n, n))
    s = np.zeros((N + 1, n))
    c = np.zeros(N + 1)
    K = np.zeros((N, m, n))
    l = np.zeros((N, m))

    S[N] = _sym(cost.Q_N)
    s[N] = cost.q_N
    c[N] = 0.0

    for k in range(N - 1, -1, -1):
        A, B, g = model.A[k], model.B[k], model.g[k]
        Sn, sn, cn = S[k + 1], s[k + 1], c[k + 1]

        H = cost.R + B.T @ Sn @ B
        G = B.T @ Sn @ A + cost.P
        h_vec = B.T @ (Sn @ g + sn) + cost.r
        try:
            Hinv_G = np.linalg.solve(H, G)
            Hinv_h = np.linalg.solve(H, h_vec)
        except np.linalg.LinAlgError as exc:
            raise IllPosedCostError(
                f"R + B'SB is singular at step {k}") from exc

        K[k] = -Hinv_G
        l[k] = -Hinv_h
        S[k] = _sym(cost.Q + A.T @ Sn @ A - G.T @ Hinv_G)
        s[k] = cost.q + A.T @ (sn + Sn @ g) - G.T @ Hinv_h
        c[k] = (cn + 0.5 * g @ Sn @ g + sn @ g + 0.5 * cost.const
                - 0.5 * h_vec @ Hinv_h)

    policy = GaussianPolicy(K=K, l=l, Sigma_u=np.zeros((N, m, m)))
    return ValueQuadratic(S=S, s=s, c=c), policy


def q_block_matrix(k: int, model: DiscreteLinearModel, cost: QuadraticCost,
                   value: ValueQuadratic) -> np.ndarray:
    """Block matrix W with Q(x, u) = 1/2 [1, x, u]' W [1, x, u] at step k."""
    A, B, g = model.A[k], model.B[k], model.g[k]
    Sn, sn, cn = value.S[k + 1], value.s[k + 1], value.c[k + 1]
    n, m = model.n_states, model.n_controls
    sg = sn + Sn @ g

    W = np.zeros((1 + n + m, 1 + n + m))
    W[0, 0] = cost.const + 2.0 * cn + g @ Sn @ g + 2.0 * sn @ g
    top_x = cost.q + A.T @ sg
    top_u = cost.r + B.T @ sg
    W[0, 1:1 + n] = top_x
    W[1:1 + n, 0] = top_x
    W[0, 1 + n:] = top_u
    W[1 + n:, 0] = top_u
    W[1:1 + n, 1:1 + n] = cost.Q + A.T @ Sn @ A
    W[1 + n:, 1 + n:] = cost.R + B.T @ Sn @ B
    cross = cost.P + B.T @ Sn @ A
    W[1 + n:, 1:1 + n] = cross
    W[1:1 + n, 1 + n:] = cross.T
    return W


def q_function(x, u, k: int, model: DiscreteLinearModel, cost: QuadraticCost,
               value: ValueQuadratic) -> float:
    """State-action value: stage cost plus next-step value at A x + B u + g."""
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    x_next = model.A[k] @ x + model.B[k] @ u + model.g[k]
    return running_cost(x, u, cost) + value(x_next, k + 1)


def _psd_factor(Sigma: np.ndarray) -> np.ndarray:
    """Square root of a possibly singular PSD matrix via eigendecomposition."""
    w, V = np.linalg.eigh(_sym(Sigma))
    return V @ np.diag(np.sqrt(np.clip(w, 0.0, None)))


def rollout(model: DiscreteLinearModel, policy: GaussianPolicy, x0,
            seed: int | None = None, stochastic: bool = False) -> Trajectory:
    """Simulate the affine model under an affine (Gaussian) policy.

    With stochastic=True, actions are drawn from the policy covariance and
    states receive process noise from the model; the result is a
    deterministic function of the seed.
    """
    if policy.horizon < model.horizon:
        raise ValueError("policy horizon must cover the model horizon")
    N = model.horizon
    n, m = model.n_states, model.n_controls
    rng = np.random.default_rng(seed)
    Lw = _psd_factor(model.process_noise) if stochastic else None

    states = np.zeros((N + 1, n))
    controls = np.zeros((N, m))
    states[0] = np.asarray(x0, dtype=float)
    for k in range(N):
        u = policy.mean(states[k], k)
        if stochastic:
            Lu = _psd_factor(policy.Sigma_u[k])
            u = u + Lu @ rng.standard_normal(m)
        controls[k] = u
        x_next = model.A[k] @ states[k] + model.B[k] @ u + model.g[k]
        if stochastic:
            x_next = x_next + Lw @ rng.standard_normal(n)
        states[k + 1] = x_next
    times = model.step * np.arange(N + 1)
    return Trajectory(times=times, states=states, controls=controls)
