"""Matplotlib report figures: circumplex trajectory plus affect time series."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Union

import matplotlib as mpl
from matplotlib.figure import Figure
from matplotlib.patches import Circle

from affect_engine.affect import SECTOR_WIDTH, SECTORS
from affect_engine.scenarios import TrajectoryLog

REPORT_RC = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
}


def draw_circumplex(ax, neutral_radius: float = 0.1):
    theta = [2 * math.pi * k / 360 for k in range(361)]
    ax.plot([math.cos(t) for t in theta], [math.sin(t) for t in theta], color="0.2", lw=1.2)
    ax.add_patch(Circle((0, 0), neutral_radius, color="0.9", zorder=0))
    for k in range(len(SECTORS)):
        ang = math.radians(SECTOR_WIDTH / 2 + k * SECTOR_WIDTH)
        ax.plot([0, math.cos(ang)], [0, math.sin(ang)], color="0.8", lw=0.8, ls="--", zorder=0)
    for k, name in enumerate(SECTORS):
        ang = math.radians(k * SECTOR_WIDTH)
        ax.text(1.17 * math.cos(ang), 1.17 * math.sin(ang), name, ha="center", va="center")
    ax.axhline(0, color="0.3", lw=0.8)
    ax.axvline(0, color="0.3", lw=0.8)
    ax.set_xlim(-1.5, 1.5)
    ax.set_ylim(-1.4, 1.4)
    ax.set_aspect("equal")
    ax.set_xlabel("valence")
    ax.set_ylabel("arousal")
    return ax


def plot_trajectory(ax, log: TrajectoryLog):
    v = [s.affect.valence_norm for s in log.steps]
    a = [s.affect.arousal_norm for s in log.steps]
    draw_circumplex(ax, log.config.neutral_radius)
    ax.plot(v, a, color="tab:blue", lw=1.5)
    sc = ax.scatter(v, a, c=range(len(v)), cmap="viridis", s=18, zorder=3)
    return sc


def plot_timeseries(ax, log: TrajectoryLog):
    t = [s.t for s in log.steps]
    ax.plot(t, [s.affect.valence_norm for s in log.steps], label="valence", color="tab:red")
    ax.plot(t, [s.affect.arousal_norm for s in log.steps], label="arousal", color="tab:blue")
    found = log.first_visible()
    if found is not None:
        ax.axvline(found, color="0.5", ls=":", lw=1)
    ax.set_ylim(-1.05, 1.05)
    ax.set_xlabel("step")
    ax.set_ylabel("normalized")
    ax.legend(loc="upper right", frameon=False)
    return ax


def save_report_figure(log: TrajectoryLog, path: Union[str, Path], dpi: int = 120) -> Path:
    """Write a two-panel PNG (circumplex, time series) for one episode."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with mpl.rc_context(REPORT_RC):
        fig = Figure(figsize=(9, 4.2))
        ax0, ax1 = fig.subplots(1, 2, gridspec_kw={"width_ratios": [1, 1.2]})
        sc = plot_trajectory(ax0, log)
        fig.colorbar(sc, ax=ax0, fraction=0.046, pad=0.04, label="step")
        plot_timeseries(ax1, log)
        fig.suptitle(f"scenario {log.config.scenario_id}, seed {log.config.seed}: {log.outcome}")
        fig.tight_layout()
        fig.savefig(path, dpi=dpi, metadata={"Software": None})
    return path
