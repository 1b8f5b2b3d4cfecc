"""Config parsing and deterministic JSON/CSV output.

All floating-point output is formatted with 17 significant digits so
repeated runs are byte-identical and values round-trip exactly. CSV uses
RFC-4180 quoting and CRLF row terminators; JSON is emitted with sorted
keys and carries a schema_version field.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .dynamics import EnvironmentParams, Perturbations, SpacecraftParams
from .elements import OrbitalElements
from .errors import ConfigError
from .irl import IrlConfig, TraceRecord
from .lqr import GaussianPolicy, QuadraticCost
from .scenario import EvalGridConfig, ScenarioConfig

SCHEMA_VERSION = 1


def fmt(value: float) -> str:
    """17-significant-digit decimal form, enough to round-trip a double."""
    return format(float(value), ".17g")


def _jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def dump_json(payload: dict, path: str | Path) -> None:
    text = json.dumps(_jsonable(payload), indent=2, sort_keys=True)
    Path(path).write_text(text + "\n", encoding="utf-8")


def write_csv(path: str | Path, header: Sequence[str],
              rows: Iterable[Sequence]) -> None:
    """RFC-4180 CSV with all floats at 17 significant digits."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v
                             for v in row])


def write_matrix_csv(path: str | Path, matrix: np.ndarray,
                     column_prefix: str = "c") -> None:
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    header = [f"{column_prefix}{j}" for j in range(matrix.shape[1])]
    write_csv(path, header, matrix)


# ---------------------------------------------------------------------------
# Cost and policy serialization


def cost_to_dict(cost: QuadraticCost) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "n_states": cost.n_states,
        "n_controls": cost.n_controls,
        "Q": cost.Q,
        "R": cost.R,
        "P": cost.P,
        "q": cost.q,
        "r": cost.r,
        "const": cost.const,
        "Q_N": cost.Q_N,
        "q_N": cost.q_N,
    }


def cost_from_dict(data: dict, where: str = "cost") -> QuadraticCost:
    try:
        return QuadraticCost(
            Q=np.asarray(data["Q"], dtype=float),
            R=np.asarray(data["R"], dtype=float),
            P=np.asarray(data["P"], dtype=float),
            q=np.asarray(data["q"], dtype=float),
            r=np.asarray(data["r"], dtype=float),
            Q_N=np.asarray(data["Q_N"], dtype=float),
            q_N=np.asarray(data["q_N"], dtype=float),
            const=float(data.get("const", 0.0)),
        )
    except KeyError as exc:
        raise ConfigError(f"{where}.{exc.args[0]}: missing") from exc
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def policy_to_dict(policy: GaussianPolicy) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "horizon": policy.horizon,
        "K": policy.K,
        "l": policy.l,
        "Sigma_u": policy.Sigma_u,
    }


def trace_to_rows(trace: list[TraceRecord]) -> list[tuple]:
    return [(rec.iteration, rec.grad_norm, rec.cost_error) for rec in trace]


# ---------------------------------------------------------------------------
# Scenario config parsing


def _require(data: dict, key: str, where: str) -> Any:
    if key not in data:
        raise ConfigError(f"{where}.{key}: missing")
    return data[key]


def _build(cls, data: dict, where: str):
    try:
        return cls(**data)
    except TypeError as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def elements_from_dict(data: dict, mu: float, where: str = "initial_elements") -> OrbitalElements:
    data = dict(data)
    angles = {key: float(data.get(key, 0.0))
              for key in ("e", "i", "raan", "argp", "theta_true")}
    try:
        if data.get("h") is not None:
            return OrbitalElements(h=float(data["h"]), **angles)
        if data.get("a") is not None:
            return OrbitalElements.from_semimajor_axis(a=float(data["a"]), mu=mu, **angles)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    raise ConfigError(f"{where}: provide either 'a' or 'h'")


def config_from_dict(data: dict) -> ScenarioConfig:
    env = _build(EnvironmentParams, _require(data, "environment", "config"), "environment")
    spacecraft = _build(SpacecraftParams, _require(data, "spacecraft", "config"), "spacecraft")
    elements = elements_from_dict(_require(data, "initial_elements", "config"), env.mu_E)
    perturbations = _build(Perturbations, data.get("perturbations", {}), "perturbations")
    cost = cost_from_dict(_require(data, "true_cost", "config"), "true_cost")
    irl = _build(IrlConfig, data.get("irl", {}), "irl")
    grid = _build(EvalGridConfig, data.get("eval_grid", {}), "eval_grid")

    kwargs = {}
    for key in ("name", "initial_propellant", "ensemble_size", "duration_hours",
                "control_period_hours", "burn_duration_max_minutes",
                "deadband_box_km", "noise_sigma", "control_step_s",
                "sim_substep_s", "reference", "seed"):
        if key in data:
            kwargs[key] = data[key]
    for key in ("initial_offset_km", "initial_velocity_offset_kms"):
        if key in data:
            kwargs[key] = tuple(float(v) for v in data[key])

    return _build(
        ScenarioConfig,
        dict(initial_elements=elements, spacecraft=spacecraft, environment=env,
             perturbations=perturbations, true_cost=cost, irl=irl,
             eval_grid=grid, **kwargs),
        "config")


def load_config(path: str | Path) -> ScenarioConfig:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return config_from_dict(data)


def config_to_dict(config: ScenarioConfig) -> dict:
    el = config.initial_elements
    return {
        "schema_version": SCHEMA_VERSION,
        "name": config.name,
        "initial_elements": {
            "a": el.a, "e": el.e, "i": el.i, "raan": el.raan,
            "argp": el.argp, "theta_true": el.theta_true,
        },
        "spacecraft": {
            "payload_mass": config.spacecraft.payload_mass,
            "drag_area": config.spacecraft.drag_area,
            "srp_area": config.spacecraft.srp_area,
            "C_D": config.spacecraft.C_D,
            "C_R": config.spacecraft.C_R,
            "I_sp": config.spacecraft.I_sp,
            "max_thrust": config.spacecraft.max_thrust,
        },
        "initial_propellant": config.initial_propellant,
        "environment": {
            "mu_E": config.environment.mu_E,
            "R_earth": config.environment.R_earth,
            "J2": config.environment.J2,
            "omega_E": config.environment.omega_E,
            "S0_intensity": config.environment.S0_intensity,
            "c_light": config.environment.c_light,
            "g0": config.environment.g0,
            "epoch_julian_day": config.environment.epoch_julian_day,
        },
        "perturbations": {
            "drag": config.perturbations.drag,
            "j2": config.perturbations.j2,
            "srp": config.perturbations.srp,
        },
        "true_cost": cost_to_dict(config.true_cost),
        "ensemble_size": config.ensemble_size,
        "duration_hours": config.duration_hours,
        "control_period_hours": config.control_period_hours,
        "burn_duration_max_minutes": config.burn_duration_max_minutes,
        "deadband_box_km": config.deadband_box_km,
        "noise_sigma": config.noise_sigma,
        "control_step_s": config.control_step_s,
        "sim_substep_s": config.sim_substep_s,
        "initial_offset_km": list(config.initial_offset_km),
        "initial_velocity_offset_kms": list(config.initial_velocity_offset_kms),
        "reference": config.reference,
        "seed": config.seed,
        "irl": {
            "learning_rate": config.irl.learning_rate,
            "max_iterations": config.irl.max_iterations,
            "tolerance": config.irl.tolerance,
            "gradient_method": config.irl.gradient_method,
            "momentum": config.irl.momentum,
            "seed": config.irl.seed,
            "preconditioner": config.irl.preconditioner,
            "init": config.irl.init,
        },
        "eval_grid": {
            "axis_x": config.eval_grid.axis_x,
            "axis_y": config.eval_grid.axis_y,
            "extent_x": config.eval_grid.extent_x,
            "extent_y": config.eval_grid.extent_y,
            "points": config.eval_grid.points,
        },
    }
