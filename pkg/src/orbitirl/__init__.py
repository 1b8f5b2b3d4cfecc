"""Station-keeping trajectory simulation and inverse-RL cost recovery.

The package simulates space-object station-keeping under realistic
orbital perturbations and recovers the unknown quadratic control cost
from observed trajectories by maximum-causal-entropy inverse
reinforcement learning.
"""

from .dynamics import (
    EnvironmentParams,
    Perturbations,
    SpacecraftParams,
    StateVector,
    Trajectory,
    propagate_rk4,
)
from .elements import OrbitalElements, cart_to_coe, coe_to_cart
from .irl import (
    DiscreteMDP,
    FeatureMoments,
    IrlConfig,
    causal_log_likelihood,
    empirical_moments,
    gibbs_policy_lqr,
    hard_value_iteration_mdp,
    learn_cost,
    mce_gradient,
    model_moments,
    soft_value_iteration_mdp,
)
from .linmodel import (
    ContinuousLinearModel,
    DiscreteLinearModel,
    affine_offset,
    discretize_rk4_zoh,
    linearize,
)
from .lqr import (
    GaussianPolicy,
    QuadraticCost,
    ValueQuadratic,
    q_function,
    riccati_backward,
    rollout,
    running_cost,
)
from .scenario import (
    EvaluationReport,
    Scenario,
    ScenarioConfig,
    build_scenario,
    evaluate,
    generate_experts,
    geo_config,
    learn_scenario_cost,
    leo_config,
)

__version__ = "0.1.0"

__all__ = [
    "EnvironmentParams", "Perturbations", "SpacecraftParams", "StateVector",
    "Trajectory", "propagate_rk4",
    "OrbitalElements", "cart_to_coe", "coe_to_cart",
    "DiscreteMDP", "FeatureMoments", "IrlConfig", "causal_log_likelihood",
    "empirical_moments", "gibbs_policy_lqr", "hard_value_iteration_mdp",
    "learn_cost", "mce_gradient", "model_moments", "soft_value_iteration_mdp",
    "ContinuousLinearModel", "DiscreteLinearModel", "affine_offset",
    "discretize_rk4_zoh", "linearize",
    "GaussianPolicy", "QuadraticCost", "ValueQuadratic", "q_function",
    "riccati_backward", "rollout", "running_cost",
    "EvaluationReport", "Scenario", "ScenarioConfig", "build_scenario",
    "evaluate", "generate_experts", "geo_config", "learn_scenario_cost",
    "leo_config",
    "__version__",
]
