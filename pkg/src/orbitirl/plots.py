"""Matplotlib figure rendering for the report path.

Figures are written next to the delimited output with fixed DPI and
stripped PNG metadata so repeated seeded runs stay byte-identical.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .irl import TraceRecord
from .scenario import ELEMENT_NAMES, CostSurfaces

_SAVE_KWARGS = {"dpi": 150, "metadata": {"Software": None}}


def save_figure(fig, path: str | Path) -> None:
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)


def cost_surfaces_figure(surfaces: CostSurfaces, x_label: str, y_label: str):
    """True, learned, and absolute-error contour panels on a shared grid."""
    fig, axes = plt.subplots(1, 3, figsize=(13.5, 4.0), constrained_layout=True)
    panels = (
        ("True cost", surfaces.true_surface, "viridis"),
        ("Estimated cost", surfaces.learned_surface, "viridis"),
        ("Absolute error", surfaces.error_surface, "magma"),
    )
    for ax, (title, values, cmap) in zip(axes, panels):
        filled = ax.contourf(surfaces.xs, surfaces.ys, values, levels=20, cmap=cmap)
        fig.colorbar(filled, ax=ax, shrink=0.9)
        ax.set_title(title)
        ax.set_xlabel(x_label)
        ax.set_ylabel(y_label)
    return fig


def elements_figure(times_s: np.ndarray, elements_true: dict, elements_learned: dict | None = None):
    """Orbital-element time histories, optionally overlaying a second policy."""
    fig, axes = plt.subplots(3, 2, figsize=(11.0, 8.5), constrained_layout=True)
    hours = times_s / 3600.0
    units = {"h": "km^2/s", "e": "", "i": "deg", "raan": "deg",
             "argp": "deg", "theta_true": "deg"}
    for ax, name in zip(axes.flat, ELEMENT_NAMES):
        ax.plot(hours, elements_true[name], label="true cost", lw=1.0)
        if elements_learned is not None:
            ax.plot(hours, elements_learned[name], label="estimated cost",
                    lw=1.0, ls="--")
        label = f"{name} [{units[name]}]" if units[name] else name
        ax.set_ylabel(label)
        ax.set_xlabel("time [h]")
    axes.flat[0].legend(loc="best", fontsize=8)
    return fig


def convergence_figure(trace: list[TraceRecord]):
    """Gradient norm (and distance to truth when known) per iteration."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0), constrained_layout=True)
    iterations = [rec.iteration for rec in trace]
    ax.semilogy(iterations, [rec.grad_norm for rec in trace], label="gradient norm")
    errors = np.array([rec.cost_error for rec in trace])
    if np.isfinite(errors).any():
        ax.semilogy(iterations, errors, label="normalized weight error", ls="--")
    ax.set_xlabel("iteration")
    ax.set_ylabel("magnitude")
    ax.legend(loc="best", fontsize=8)
    return fig
