"""Command-line interface.

Subcommands: simulate (expert ensemble to CSV), learn (recover the cost
from an ensemble), evaluate (compare learned and true costs, render
report figures), elements (convert between Cartesian states and orbital
elements), linmodel (dump the linearized model), and density-table
(dump the atmosphere table). Exit codes: 0 success, 1 validation or
usage error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import atmosphere, plots, serialize
from .dynamics import EnvironmentParams
from .elements import OrbitalElements, cart_to_coe, coe_to_cart
from .errors import ConfigError, NumericalError
from .linmodel import discretize_rk4_zoh, linearize
from .scenario import (
    BUILTIN_CONFIGS,
    ScenarioConfig,
    build_scenario,
    elements_history,
    evaluate,
    generate_experts,
    learn_scenario_cost,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2


class _Parser(argparse.ArgumentParser):
    """Argument parser that exits with the validation code on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_VALIDATION)


def _resolve_config(spec: str) -> ScenarioConfig:
    if spec in BUILTIN_CONFIGS:
        return BUILTIN_CONFIGS[spec]()
    return serialize.load_config(spec)


def _apply_overrides(config: ScenarioConfig, args) -> ScenarioConfig:
    from dataclasses import replace

    updates = {}
    if getattr(args, "seed", None) is not None:
        updates["seed"] = args.seed
    if getattr(args, "ensemble", None) is not None:
        updates["ensemble_size"] = args.ensemble
    return replace(config, **updates) if updates else config


def _out_dir(args) -> Path:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


TRAJECTORY_HEADER = [
    "t_s", "x_km", "y_km", "z_km", "vx_kms", "vy_kms", "vz_kms", "m_f_kg",
    "ux_kms2", "uy_kms2", "uz_kms2",
    "h_km2s", "e", "i_deg", "raan_deg", "argp_deg", "theta_true_deg",
]


def _write_trajectory_csv(path: Path, run, mu: float) -> None:
    traj = run.absolute
    elements = elements_history(traj, mu)
    rows = []
    n_rows = traj.states.shape[0]
    for k in range(n_rows):
        # The control column holds the command applied from this sample to
        # the next; the final sample has no following interval.
        u = traj.controls[k] if k < traj.horizon else np.zeros(3)
        rows.append(
            [traj.times[k], *traj.states[k], *u]
            + [elements[name][k] for name in
               ("h", "e", "i", "raan", "argp", "theta_true")])
    serialize.write_csv(path, TRAJECTORY_HEADER, rows)


def _cmd_simulate(args) -> int:
    config = _apply_overrides(_resolve_config(args.config), args)
    scenario = build_scenario(config)
    runs = generate_experts(scenario)
    out = _out_dir(args)
    files = []
    for idx, run in enumerate(runs):
        name = f"trajectory_{idx:03d}.csv"
        _write_trajectory_csv(out / name, run, config.environment.mu_E)
        files.append(name)
    serialize.dump_json(
        {"schema_version": serialize.SCHEMA_VERSION, "scenario": config.name,
         "seed": config.seed, "ensemble_size": len(runs), "files": files},
        out / "manifest.json")
    print(f"wrote {len(runs)} trajectories to {out}")
    return EXIT_OK


def _cmd_learn(args) -> int:
    config = _apply_overrides(_resolve_config(args.config), args)
    scenario = build_scenario(config)
    runs = generate_experts(scenario)
    learned, trace = learn_scenario_cost(scenario, runs, true_cost=scenario.true_cost)
    out = _out_dir(args)
    serialize.dump_json(serialize.cost_to_dict(learned), out / "learned_cost.json")
    serialize.write_csv(out / "convergence.csv",
                        ["iteration", "grad_norm", "normalized_weight_error"],
                        serialize.trace_to_rows(trace))
    if args.dump_policy:
        from .irl import gibbs_policy_lqr

        policy = gibbs_policy_lqr(scenario.model, learned)
        serialize.dump_json(serialize.policy_to_dict(policy), out / "policy.json")
    if args.figures:
        plots.save_figure(plots.convergence_figure(trace), out / "convergence.png")
    print(f"learned cost after {len(trace)} iterations "
          f"(final gradient norm {trace[-1].grad_norm:.6g}) -> {out}")
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    config = _apply_overrides(_resolve_config(args.config), args)
    scenario = build_scenario(config)
    out = _out_dir(args)

    trace = None
    if args.learned is not None:
        data = json.loads(Path(args.learned).read_text(encoding="utf-8"))
        learned = serialize.cost_from_dict(data, where=str(args.learned))
    else:
        runs = generate_experts(scenario)
        learned, trace = learn_scenario_cost(scenario, runs,
                                             true_cost=scenario.true_cost)
        serialize.dump_json(serialize.cost_to_dict(learned), out / "learned_cost.json")
        serialize.write_csv(out / "convergence.csv",
                            ["iteration", "grad_norm", "normalized_weight_error"],
                            serialize.trace_to_rows(trace))

    report = evaluate(scenario.true_cost, learned, scenario)

    surfaces = report.surfaces
    grid_rows = []
    for iy, y in enumerate(surfaces.ys):
        for ix, x in enumerate(surfaces.xs):
            grid_rows.append([x, y, surfaces.true_surface[iy, ix],
                              surfaces.learned_surface[iy, ix],
                              surfaces.error_surface[iy, ix]])
    serialize.write_csv(out / "cost_surfaces.csv",
                        ["x", "y", "true", "learned", "abs_error"], grid_rows)

    events = ([("true", t) for t in report.true_thrust_times]
              + [("learned", t) for t in report.learned_thrust_times])
    serialize.write_csv(out / "thrust_events.csv", ["policy", "time_s"], events)

    serialize.dump_json(
        {"schema_version": serialize.SCHEMA_VERSION,
         "scenario": config.name,
         "max_cost_error": report.max_cost_error,
         "element_rms": report.element_rms,
         "propellant_true_kg": report.propellant_true_kg,
         "propellant_learned_kg": report.propellant_learned_kg,
         "true_thrust_event_count": len(report.true_thrust_times),
         "learned_thrust_event_count": len(report.learned_thrust_times)},
        out / "report.json")

    if args.figures:
        grid = config.eval_grid
        fig = plots.cost_surfaces_figure(
            surfaces, f"state[{grid.axis_x}]", f"state[{grid.axis_y}]")
        plots.save_figure(fig, out / "cost_surfaces.png")

        seed = np.random.SeedSequence((config.seed, 1))
        noise = np.random.SeedSequence((config.seed, 2))
        from .lqr import riccati_backward
        from .scenario import sample_initial_state, simulate_controlled

        x0 = sample_initial_state(scenario, np.random.default_rng(seed))
        run_true = simulate_controlled(scenario, x0, scenario.true_policy,
                                       np.random.default_rng(noise))
        _, learned_policy = riccati_backward(scenario.model, learned)
        run_learned = simulate_controlled(scenario, x0, learned_policy,
                                          np.random.default_rng(noise))
        mu = config.environment.mu_E
        fig = plots.elements_figure(run_true.absolute.times,
                                    elements_history(run_true.absolute, mu),
                                    elements_history(run_learned.absolute, mu))
        plots.save_figure(fig, out / "trajectory_elements.png")
        if trace is not None:
            plots.save_figure(plots.convergence_figure(trace), out / "convergence.png")

    print(f"max normalized cost error: {report.max_cost_error:.6g} -> {out}")
    return EXIT_OK


def _cmd_elements(args) -> int:
    if args.input == "-":
        data = json.load(sys.stdin)
    else:
        data = json.loads(Path(args.input).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ConfigError("elements input: top level must be a JSON object")
    mu = float(data.get("mu", args.mu))

    if "r" in data and "v" in data:
        el = cart_to_coe(np.asarray(data["r"], dtype=float),
                         np.asarray(data["v"], dtype=float), mu)
        payload = {"schema_version": serialize.SCHEMA_VERSION, "mu": mu,
                   "h": el.h, "e": el.e, "i": el.i, "raan": el.raan,
                   "argp": el.argp, "theta_true": el.theta_true, "a": el.a}
    else:
        el = serialize.elements_from_dict(data, mu, where="elements input")
        r, v = coe_to_cart(el, mu)
        payload = {"schema_version": serialize.SCHEMA_VERSION, "mu": mu,
                   "r": r, "v": v}

    text = json.dumps(serialize._jsonable(payload), indent=2, sort_keys=True)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return EXIT_OK


def _cmd_linmodel(args) -> int:
    config = _apply_overrides(_resolve_config(args.config), args)
    scenario = build_scenario(config)
    cm = linearize(scenario.nominal_state, config.environment)
    Ad, Bd = discretize_rk4_zoh(cm, config.control_step_s)
    out = _out_dir(args)
    serialize.write_matrix_csv(out / "continuous_A.csv", cm.A)
    serialize.write_matrix_csv(out / "continuous_B.csv", cm.B)
    serialize.write_matrix_csv(out / "discrete_A.csv", Ad)
    serialize.write_matrix_csv(out / "discrete_B.csv", Bd)
    serialize.write_matrix_csv(out / "affine_g.csv", scenario.model.g[0][None, :])
    serialize.write_matrix_csv(out / "process_noise.csv", scenario.model.process_noise)
    print(f"wrote linear model matrices to {out}")
    return EXIT_OK


def _cmd_density_table(args) -> int:
    rows = atmosphere.table_rows()
    header = ["base_altitude_km", "density_kgm3", "scale_height_km"]
    if args.output:
        serialize.write_csv(args.output, header, rows)
    else:
        buf = io.StringIO()
        import csv as _csv

        writer = _csv.writer(buf, quoting=_csv.QUOTE_MINIMAL, lineterminator="\r\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([serialize.fmt(v) for v in row])
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orbitirl",
                     description="Station-keeping simulation and inverse-RL cost recovery")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p, ensemble=True):
        p.add_argument("--config", required=True,
                       help="scenario JSON path, or a built-in name (geo, leo)")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        if ensemble:
            p.add_argument("--ensemble", type=int, default=None,
                           help="override the ensemble size")
        p.add_argument("--out-dir", required=True, help="output directory")

    p = sub.add_parser("simulate", help="generate an expert trajectory ensemble")
    add_common(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("learn", help="recover the cost from an expert ensemble")
    add_common(p)
    p.add_argument("--dump-policy", action="store_true",
                   help="also write the learned Gibbs policy as JSON")
    p.add_argument("--figures", action=argparse.BooleanOptionalAction, default=True,
                   help="render convergence figure (default on)")
    p.set_defaults(func=_cmd_learn)

    p = sub.add_parser("evaluate", help="compare learned and true costs")
    add_common(p)
    p.add_argument("--learned", default=None,
                   help="learned cost JSON from a previous 'learn' run; "
                        "omitted means learn in-process")
    p.add_argument("--figures", action=argparse.BooleanOptionalAction, default=True,
                   help="render report figures (default on)")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("elements", help="orbital element conversions")
    el_sub = p.add_subparsers(dest="elements_command", required=True, parser_class=_Parser)
    pc = el_sub.add_parser("convert",
                           help="convert a JSON state between Cartesian and elements")
    pc.add_argument("--input", required=True, help="input JSON path, or - for stdin")
    pc.add_argument("--output", default=None, help="output JSON path (default stdout)")
    pc.add_argument("--mu", type=float, default=EnvironmentParams().mu_E,
                    help="gravitational parameter (km^3/s^2)")
    pc.set_defaults(func=_cmd_elements)

    p = sub.add_parser("linmodel", help="linearized model inspection")
    lm_sub = p.add_subparsers(dest="linmodel_command", required=True, parser_class=_Parser)
    pd = lm_sub.add_parser("dump", help="write the model matrices as CSV")
    pd.add_argument("--config", required=True)
    pd.add_argument("--seed", type=int, default=None)
    pd.add_argument("--out-dir", required=True)
    pd.set_defaults(func=_cmd_linmodel)

    p = sub.add_parser("density-table", help="dump the USSA76 density table")
    p.add_argument("--output", default=None, help="CSV path (default stdout)")
    p.set_defaults(func=_cmd_density_table)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (NumericalError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    raise SystemExit(main())
