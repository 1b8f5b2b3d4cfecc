"""Maximum-causal-entropy inverse reinforcement learning.

The unknown object is the block weight matrix M of a quadratic stage
cost. The causally conditioned action distribution that maximizes
entropy subject to feature matching is the Gibbs policy exp(Q - V),
which for an affine-Gaussian system is itself Gaussian: its mean is the
LQR feedback law and its covariance is the inverse control-penalty
Hessian. Learning ascends the causal likelihood by matching empirical
and model feature moments, the summed second moments of [1, x, u].

A discrete-MDP branch (soft and hard value iteration) is included as
the small-scale reference implementation of the same softened Bellman
machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DivergenceError, IllPosedCostError
from .dynamics import Trajectory
from .linmodel import DiscreteLinearModel
from .lqr import GaussianPolicy, QuadraticCost, riccati_backward


def _sym(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.T)


# ---------------------------------------------------------------------------
# Discrete MDPs: soft and hard value iteration


@dataclass(frozen=True)
class DiscreteMDP:
    """Tabular MDP with transition tensor P[s, a, s'] and rewards r[s, a].

    horizon None solves the stationary infinite-horizon problem by
    fixed-point iteration; a finite horizon runs that many backward
    sweeps and reports the first-step tables.
    """

    transitions: np.ndarray
    rewards: np.ndarray
    discount: float
    horizon: int | None = None

    def __post_init__(self):
        P = np.asarray(self.transitions, dtype=float)
        r = np.asarray(self.rewards, dtype=float)
        if P.ndim != 3 or P.shape[0] != P.shape[2]:
            raise ValueError("transitions must have shape (S, A, S)")
        if r.shape != P.shape[:2]:
            raise ValueError("rewards must have shape (S, A)")
        if P.min() < 0.0:
            raise ValueError("transition probabilities must be nonnegative")
        if not np.allclose(P.sum(axis=2), 1.0, atol=1e-12):
            raise ValueError("each transition row must sum to 1")
        if not 0.0 <= self.discount < 1.0:
            raise ValueError("discount must lie in [0, 1)")
        object.__setattr__(self, "transitions", P)
        object.__setattr__(self, "rewards", r)

    @property
    def n_states(self) -> int:
        return self.transitions.shape[0]

    @property
    def n_actions(self) -> int:
        return self.transitions.shape[1]


def _logsumexp(a: np.ndarray, axis: int) -> np.ndarray:
    m = np.max(a, axis=axis, keepdims=True)
    return (m + np.log(np.sum(np.exp(a - m), axis=axis, keepdims=True))).squeeze(axis)


def soft_value_iteration_mdp(mdp: DiscreteMDP, max_iterations: int = 10_000,
                             tolerance: float = 1e-10):
    """Softened Bellman recursion: the max over actions becomes log-sum-exp.

    Returns (Q_soft, V_soft, policy) where Q_soft[s, a] is the discounted
    expected next value, V_soft[s] = logsumexp_a(r + Q_soft), and the
    stochastic policy is proportional to exp(r + Q_soft - V_soft).
    """
    V = np.zeros(mdp.n_states)
    sweeps = mdp.horizon if mdp.horizon is not None else max_iterations
    converged = mdp.horizon is not None
    for _ in range(sweeps):
        Q = mdp.discount * np.einsum("sat,t->sa", mdp.transitions, V)
        V_new = _logsumexp(mdp.rewards + Q, axis=1)
        if mdp.horizon is None and np.max(np.abs(V_new - V)) < tolerance:
            V = V_new
            converged = True
            break
        V = V_new
    if not converged:
        raise DivergenceError(
            f"soft value iteration did not converge in {max_iterations} sweeps")
    Q = mdp.discount * np.einsum("sat,t->sa", mdp.transitions, V)
    V = _logsumexp(mdp.rewards + Q, axis=1)
    logits = mdp.rewards + Q - V[:, None]
    policy = np.exp(logits)
    policy /= policy.sum(axis=1, keepdims=True)
    return Q, V, policy


def hard_value_iteration_mdp(mdp: DiscreteMDP, max_iterations: int = 10_000,
                             tolerance: float = 1e-10):
    """Bellman-optimal tables; the deterministic counterpart of the soft form.

    Returns (Q_star, V_star, policy) with policy[s] the greedy action.
    """
    V = np.zeros(mdp.n_states)
    sweeps = mdp.horizon if mdp.horizon is not None else max_iterations
    converged = mdp.horizon is not None
    for _ in range(sweeps):
        Q = mdp.discount * np.einsum("sat,t->sa", mdp.transitions, V)
        V_new = np.max(mdp.rewards + Q, axis=1)
        if mdp.horizon is None and np.max(np.abs(V_new - V)) < tolerance:
            V = V_new
            converged = True
            break
        V = V_new
    if not converged:
        raise DivergenceError(
            f"hard value iteration did not converge in {max_iterations} sweeps")
    Q = mdp.discount * np.einsum("sat,t->sa", mdp.transitions, V)
    V = np.max(mdp.rewards + Q, axis=1)
    policy = np.argmax(mdp.rewards + Q, axis=1)
    return Q, V, policy


def mdp_causal_entropy(mdp: DiscreteMDP, policy: np.ndarray,
                       initial_distribution: np.ndarray, horizon: int) -> float:
    """Causal entropy of a stationary stochastic policy over a horizon.

    Computed as the sum over steps of the expected per-state action
    entropy, with state marginals propagated forward under the policy.
    """
    p = np.asarray(initial_distribution, dtype=float)
    total = 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        log_pi = np.where(policy > 0.0, np.log(policy), 0.0)
    step_entropy = -(policy * log_pi).sum(axis=1)
    for _ in range(horizon):
        total += float(p @ step_entropy)
        # marginal over next states: sum_s p(s) sum_a pi(a|s) P(s'|s,a)
        p = np.einsum("s,sa,sat->t", p, policy, mdp.transitions)
    return total


# ---------------------------------------------------------------------------
# Feature moments and the Gibbs policy for affine-Gaussian systems


@dataclass(frozen=True)
class FeatureMoments:
    """Per-trajectory average of the summed feature outer products.

    matrix[i, j] = mean over trajectories of sum_k z_k z_k' with
    z = [1, x, u]; the corner entry therefore equals the horizon. The
    trajectory_count records the sample size (0 for analytic moments).
    """

    matrix: np.ndarray
    horizon: int
    trajectory_count: int

    def __post_init__(self):
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=float))


def gibbs_policy_lqr(model: DiscreteLinearModel, cost: QuadraticCost) -> GaussianPolicy:
    """Maximum-causal-entropy policy of a quadratic cost: exp(Q - V).

    Since Q - V is quadratic in the action, the policy is Gaussian with
    the LQR mean K x + l and covariance (R + B'S B)^{-1}, the inverse
    curvature of the state-action value in the action.
    """
    value, policy = riccati_backward(model, cost)
    N = model.horizon
    m = model.n_controls
    Sigma = np.zeros((N, m, m))
    for k in range(N):
        B = model.B[k]
        H = _sym(cost.R + B.T @ value.S[k + 1] @ B)
        w, V = np.linalg.eigh(H)
        if w.min() <= 0.0:
            raise IllPosedCostError(
                f"action precision R + B'SB not positive definite at step {k}")
        Sigma[k] = _sym(V @ np.diag(1.0 / w) @ V.T)
    return GaussianPolicy(K=policy.K, l=policy.l, Sigma_u=Sigma)


def gaussian_policy_entropy(policy: GaussianPolicy) -> float:
    """Causal entropy of an affine Gaussian policy: sum of step entropies."""
    total = 0.0
    m = policy.Sigma_u.shape[1]
    for k in range(policy.horizon):
        sign, logdet = np.linalg.slogdet(policy.Sigma_u[k])
        if sign <= 0:
            raise IllPosedCostError(f"singular policy covariance at step {k}")
        total += 0.5 * (m * math.log(2.0 * math.pi * math.e) + logdet)
    return total


def causal_log_likelihood(trajectories: list[Trajectory],
                          model: DiscreteLinearModel,
                          cost: QuadraticCost) -> float:
    """Average causal log-likelihood of trajectories under the Gibbs policy.

    Sums log N(u_k; K x_k + l, Sigma_u) over steps and averages over
    trajectories; the state-transition factors do not depend on the cost
    and are omitted.
    """
    policy = gibbs_policy_lqr(model, cost)
    m = model.n_controls
    total = 0.0
    for traj in trajectories:
        if traj.horizon != model.horizon:
            raise ValueError("trajectory horizon does not match the model")
        for k in range(traj.horizon):
            resid = traj.controls[k] - policy.mean(traj.states[k], k)
            Sigma = policy.Sigma_u[k]
            sign, logdet = np.linalg.slogdet(Sigma)
            if sign <= 0:
                raise IllPosedCostError(f"singular policy covariance at step {k}")
            maha = float(resid @ np.linalg.solve(Sigma, resid))
            total += -0.5 * (m * math.log(2.0 * math.pi) + logdet + maha)
    return total / len(trajectories)


def empirical_moments(trajectories: list[Trajectory]) -> FeatureMoments:
    """Feature moments of demonstration data, averaged per trajectory."""
    if not trajectories:
        raise ValueError("empty trajectory set")
    N = trajectories[0].horizon
    n = trajectories[0].states.shape[1]
    m = trajectories[0].controls.shape[1]
    d = 1 + n + m
    total = np.zeros((d, d))
    for traj in trajectories:
        if traj.horizon != N or traj.states.shape[1] != n or traj.controls.shape[1] != m:
            raise ValueError("all trajectories must share horizon and dimensions")
        Z = np.concatenate(
            [np.ones((N, 1)), traj.states[:N], traj.controls], axis=1)
        total += Z.T @ Z
    return FeatureMoments(matrix=total / len(trajectories), horizon=N,
                          trajectory_count=len(trajectories))


def model_moments(model: DiscreteLinearModel, policy: GaussianPolicy,
                  x0_mean, x0_cov) -> FeatureMoments:
    """Expected feature moments under the policy and model noise.

    The joint mean and covariance of (x_k, u_k) propagate in closed form
    through the affine dynamics; each step contributes
    E[z z'] = mu_z mu_z' + Sigma_z assembled blockwise.
    """
    n, m, N = model.n_states, model.n_controls, model.horizon
    mu = np.asarray(x0_mean, dtype=float)
    Sig = np.asarray(x0_cov, dtype=float)
    if mu.shape != (n,) or Sig.shape != (n, n):
        raise ValueError("initial moments must match the state dimension")
    d = 1 + n + m
    total = np.zeros((d, d))
    for k in range(N):
        K, l, Su = policy.K[k], policy.l[k], policy.Sigma_u[k]
        mu_u = K @ mu + l
        cross = Sig @ K.T  # Cov(x, u)
        uu = K @ Sig @ K.T + Su

        blk = np.zeros((d, d))
        blk[0, 0] = 1.0
        blk[0, 1:1 + n] = mu
        blk[1:1 + n, 0] = mu
        blk[0, 1 + n:] = mu_u
        blk[1 + n:, 0] = mu_u
        blk[1:1 + n, 1:1 + n] = Sig + np.outer(mu, mu)
        blk[1:1 + n, 1 + n:] = cross + np.outer(mu, mu_u)
        blk[1 + n:, 1:1 + n] = blk[1:1 + n, 1 + n:].T
        blk[1 + n:, 1 + n:] = uu + np.outer(mu_u, mu_u)
        total += blk

        A, B, g = model.A[k], model.B[k], model.g[k]
        closed = A + B @ K
        mu = A @ mu + B @ mu_u + g
        Sig = _sym(closed @ Sig @ closed.T + B @ Su @ B.T + model.process_noise)
    return FeatureMoments(matrix=total, horizon=N, trajectory_count=0)


def mce_gradient(empirical: FeatureMoments, model_m: FeatureMoments) -> np.ndarray:
    """Feature-matching gradient: empirical minus predicted moments, symmetrized."""
    if empirical.matrix.shape != model_m.matrix.shape:
        raise ValueError("moment matrices must have matching shapes")
    return _sym(empirical.matrix - model_m.matrix)


# ---------------------------------------------------------------------------
# Gradient-ascent learner


@dataclass(frozen=True)
class IrlConfig:
    """Settings for the moment-matching gradient loop.

    The preconditioner rescales gradient steps by per-feature scales
    (learning in whitened units), which makes the step size meaningful
    across features spanning many orders of magnitude. init chooses the
    starting weights: unit blocks either in raw units ("identity") or in
    whitened units ("whitened"). With init_scale_search on, the starting
    weights are multiplied by the scalar that best matches the predicted
    moments to the data: the overall scale of the weights sets the Gibbs
    policy's action covariance (its temperature) and is by far the
    stiffest direction of the likelihood, so it is solved first by a
    one-dimensional search.
    """

    learning_rate: float = 1e-3
    max_iterations: int = 2000
    tolerance: float = 1e-8
    gradient_method: str = "plain"
    momentum: float = 0.9
    seed: int = 0
    preconditioner: str = "auto"
    init: str = "whitened"
    init_scale_search: bool = True

    def __post_init__(self):
        if self.learning_rate <= 0.0:
            raise ValueError("learning_rate must be positive")
        if self.tolerance <= 0.0:
            raise ValueError("tolerance must be positive")
        if self.gradient_method not in ("plain", "momentum"):
            raise ValueError("gradient_method must be 'plain' or 'momentum'")
        if self.preconditioner not in ("auto", "none"):
            raise ValueError("preconditioner must be 'auto' or 'none'")
        if self.init not in ("whitened", "identity"):
            raise ValueError("init must be 'whitened' or 'identity'")


@dataclass(frozen=True)
class TraceRecord:
    """One learner iteration: gradient norm and optional distance to truth."""

    iteration: int
    grad_norm: float
    cost_error: float = float("nan")


MIN_BLOCK_EIGENVALUE = 1e-8


def _project_cost(M: np.ndarray, n: int, m: int) -> np.ndarray:
    """Symmetrize and floor the eigenvalues of the Q and R blocks."""
    M = _sym(M)
    for lo, hi in ((1, 1 + n), (1 + n, 1 + n + m)):
        block = _sym(M[lo:hi, lo:hi])
        w, V = np.linalg.eigh(block)
        w = np.clip(w, MIN_BLOCK_EIGENVALUE, None)
        M[lo:hi, lo:hi] = _sym(V @ np.diag(w) @ V.T)
    return M


def _normalized_weight_error(M: np.ndarray, M_true: np.ndarray) -> float:
    """Scale-free distance between weight matrices (unit Frobenius norms)."""
    a = M / np.linalg.norm(M)
    b = M_true / np.linalg.norm(M_true)
    return float(np.linalg.norm(a - b))


def _feature_scales_from_moments(emp: FeatureMoments) -> np.ndarray:
    """Root-mean-square feature magnitudes; silent features get unit scale."""
    rms = np.sqrt(np.clip(np.diag(emp.matrix), 0.0, None) / emp.horizon)
    rms[rms <= 0.0] = 1.0
    rms[0] = 1.0
    return rms


def _whitened_mismatch(empirical: FeatureMoments, predicted: FeatureMoments,
                       scales: np.ndarray) -> float:
    lam = 1.0 / scales
    diff = (empirical.matrix - predicted.matrix) / empirical.horizon
    return float(np.linalg.norm(diff * np.outer(lam, lam)))


def _match_temperature(M0: QuadraticCost, empirical: FeatureMoments,
                       x0_mean, x0_cov, model: DiscreteLinearModel,
                       scales: np.ndarray) -> QuadraticCost:
    """Scale the initial weights to the moment-matching temperature.

    Evaluates the whitened moment mismatch over a logarithmic grid of
    scale factors (with one refinement pass) and returns M0 multiplied by
    the best factor. Scaling the whole block matrix leaves the policy
    mean unchanged and divides the action covariance by the factor.
    """

    def mismatch(factor: float) -> float:
        cost = _scale_cost(M0, factor)
        policy = gibbs_policy_lqr(model, cost)
        predicted = model_moments(model, policy, x0_mean, x0_cov)
        return _whitened_mismatch(empirical, predicted, scales)

    factors = np.logspace(0.0, 6.0, 13)
    losses = [mismatch(f) for f in factors]
    best = int(np.argmin(losses))
    center = math.log10(factors[best])
    refine = np.logspace(center - 0.4, center + 0.4, 5)
    losses_r = [mismatch(f) for f in refine]
    best_factor = float(refine[int(np.argmin(losses_r))])
    return _scale_cost(M0, best_factor)


def _scale_cost(cost: QuadraticCost, factor: float) -> QuadraticCost:
    return QuadraticCost(Q=factor * cost.Q, R=factor * cost.R, P=factor * cost.P,
                         q=factor * cost.q, r=factor * cost.r,
                         Q_N=factor * cost.Q_N, q_N=factor * cost.q_N,
                         const=factor * cost.const)


def learn_cost_from_moments(empirical: FeatureMoments, x0_mean, x0_cov,
                            model: DiscreteLinearModel, config: IrlConfig,
                            M0: QuadraticCost | None = None,
                            true_cost: QuadraticCost | None = None,
                            feature_scales=None):
    """Moment-matching gradient ascent given precomputed empirical moments.

    Iterates M <- M - eta * (empirical - model) in the cost convention
    (equivalently ascent on the causal likelihood of the reward -M/2),
    projecting after each update so the state and control blocks stay
    positive definite. The step divides the gradient by the horizon, so
    the learning rate refers to per-step moment mismatch and transfers
    across horizons. Stops when the gradient Frobenius norm falls below
    the tolerance; raises DivergenceError when the norm grows tenfold
    over 50 iterations. Terminal weights are not updated by the gradient.

    Returns (estimated cost, list of TraceRecord).
    """
    n, m = model.n_states, model.n_controls
    if feature_scales is None and config.preconditioner == "auto":
        feature_scales = _feature_scales_from_moments(empirical)
    if feature_scales is not None:
        feature_scales = np.asarray(feature_scales, dtype=float)
        if feature_scales.shape != (1 + n + m,):
            raise ValueError("feature_scales must have one entry per feature")

    if M0 is None:
        if config.init == "whitened" and feature_scales is not None:
            inv_sq = 1.0 / feature_scales**2
            M0 = QuadraticCost(
                Q=np.diag(inv_sq[1:1 + n]), R=np.diag(inv_sq[1 + n:]),
                P=np.zeros((m, n)), q=np.zeros(n), r=np.zeros(m),
                Q_N=np.diag(inv_sq[1:1 + n]), q_N=np.zeros(n))
        else:
            M0 = QuadraticCost.identity(n, m)
        if config.init_scale_search:
            scales = (feature_scales if feature_scales is not None
                      else np.ones(1 + n + m))
            M0 = _match_temperature(M0, empirical, x0_mean, x0_cov, model, scales)

    if config.preconditioner == "auto" and feature_scales is not None:
        step_metric = np.outer(1.0 / feature_scales**2, 1.0 / feature_scales**2)
    else:
        step_metric = np.ones((1 + n + m, 1 + n + m))

    M = M0.block()
    Q_N, q_N = M0.Q_N, M0.q_N
    cost = M0
    velocity = np.zeros_like(M)
    trace: list[TraceRecord] = []
    M_true = true_cost.block() if true_cost is not None else None

    for it in range(config.max_iterations):
        policy = gibbs_policy_lqr(model, cost)
        predicted = model_moments(model, policy, x0_mean, x0_cov)
        grad = mce_gradient(empirical, predicted)
        gnorm = float(np.linalg.norm(grad))
        err = _normalized_weight_error(M, M_true) if M_true is not None else float("nan")
        trace.append(TraceRecord(iteration=it, grad_norm=gnorm, cost_error=err))

        if not math.isfinite(gnorm):
            raise DivergenceError("gradient norm is not finite", trace=trace)
        if gnorm < config.tolerance:
            break
        if it >= 50 and gnorm > 10.0 * trace[it - 50].grad_norm:
            raise DivergenceError(
                f"gradient norm grew tenfold over 50 iterations at iteration {it}",
                trace=trace)

        step = (grad / empirical.horizon) * step_metric
        if config.gradient_method == "momentum":
            velocity = config.momentum * velocity + step
            step = velocity
        M = _project_cost(M - config.learning_rate * step, n, m)
        cost = QuadraticCost.from_block(M, n, m, Q_N=Q_N, q_N=q_N)

    return cost, trace


def learn_cost(trajectories: list[Trajectory], model: DiscreteLinearModel,
               config: IrlConfig, M0: QuadraticCost | None = None,
               true_cost: QuadraticCost | None = None,
               feature_scales=None):
    """Recover the quadratic cost that explains demonstration trajectories.

    Computes empirical feature moments and the demonstrations' initial
    state statistics, then runs the moment-matching loop; see
    learn_cost_from_moments.
    """
    emp = empirical_moments(trajectories)
    x0s = np.stack([traj.states[0] for traj in trajectories])
    x0_mean = x0s.mean(axis=0)
    centered = x0s - x0_mean
    x0_cov = centered.T @ centered / x0s.shape[0]
    return learn_cost_from_moments(emp, x0_mean, x0_cov, model, config,
                                   M0=M0, true_cost=true_cost,
                                   feature_scales=feature_scales)
