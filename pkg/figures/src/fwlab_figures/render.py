"""Render the five standard figures from fwlab's file outputs.

Each figure is declared by a FigureSpec naming its input files and an
output stem; render() writes both PNG and SVG and returns the reference
lines it drew.  Reference-slope exponents are always read from the rates
JSON (or, for the slow-curve level, from the constants JSON), never
hard-coded, and the returned metadata lets callers verify that the
annotations match the reports exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import (
    read_constants,
    read_heatmap,
    read_manifest,
    read_rates,
    read_trajectory,
)

FIGURE_IDS = ("fig1", "fig2", "fig3", "fig4", "fig5")


@dataclass(frozen=True)
class ReferenceLine:
    """One plotted guide line: value(t) = scale * t^exponent (or a level)."""

    exponent: float
    scale: float
    style: str
    label: str


@dataclass
class FigureSpec:
    """What to render: a figure id, its input files, and the output stem."""

    figure_id: str
    inputs: dict
    output: str

    def __post_init__(self):
        if self.figure_id not in FIGURE_IDS:
            raise ValueError(f"unknown figure id {self.figure_id!r}; expected one of {FIGURE_IDS}")


@dataclass
class RenderResult:
    figure_id: str
    outputs: list = field(default_factory=list)
    reference_lines: list = field(default_factory=list)


def _save(fig, stem):
    paths = [f"{stem}.png", f"{stem}.svg"]
    for path in paths:
        fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    return paths


def _positive_gap_series(traj):
    mask = (traj["t"] >= 1) & (traj["h"] > 0)
    return traj["t"][mask], traj["h"][mask]


def _anchored_reference(ts, hs, t_anchor, exponent):
    """Scale so the line passes through the series value at the anchor t."""
    idx = int(np.searchsorted(ts, t_anchor))
    idx = min(max(idx, 0), len(ts) - 1)
    return hs[idx] / ts[idx] ** exponent


def _fig1(spec):
    result = RenderResult("fig1")
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    for path in spec.inputs["trajectories"]:
        traj = read_trajectory(path)
        ax.plot(traj["u"], traj["w"], marker=".", markersize=3, linewidth=0.8, alpha=0.85)
        ax.plot(traj["u"][:1], traj["w"][:1], marker="o", mfc="none", color="black",
                markersize=7, linestyle="none")
    ax.axhline(0.0, color="gray", linewidth=0.6)
    ax.set_xlabel("u = 1 - x1")
    ax.set_ylabel("w = x2")
    ax.set_title("Trajectories in the (u, w)-plane")
    result.outputs = _save(fig, spec.output)
    return result


def _fig2(spec):
    result = RenderResult("fig2")
    traj = read_trajectory(spec.inputs["trajectory"])
    constants = read_constants(spec.inputs["constants"])
    p = constants["p"]
    C_p = constants["C_p"]
    fig, axes = plt.subplots(1, 3, figsize=(12.5, 4.0))

    ax = axes[0]
    s = np.linspace(-1.0, 1.0, 600)
    boundary = (1.0 - np.abs(s) ** p) ** (1.0 / p)
    ax.plot(np.concatenate([s, s[::-1]]), np.concatenate([boundary, -boundary[::-1]]),
            linestyle="--", color="gray", linewidth=1.0)
    ax.plot(traj["x1"], traj["x2"], marker=".", markersize=3, linewidth=0.8)
    ax.plot([1.0], [0.0], marker="*", color="goldenrod", markersize=13, linestyle="none")
    ax.plot(traj["x1"][:1], traj["x2"][:1], marker="o", mfc="none", color="black",
            markersize=8, linestyle="none")
    ax.set_xlabel("x1")
    ax.set_ylabel("x2")
    ax.set_title("original coordinates")
    ax.set_aspect("equal")

    ax = axes[1]
    ax.plot(traj["u"], traj["w"], marker=".", markersize=3, linewidth=0.8)
    ax.axhline(0.0, color="gray", linewidth=0.6)
    ax.set_xlabel("u")
    ax.set_ylabel("w")
    ax.set_title("recentered coordinates")

    ax = axes[2]
    mask = traj["u"] > 0
    ax.semilogx(traj["u"][mask], traj["y"][mask], marker=".", markersize=3, linewidth=0.8)
    label = f"y = C_p = {C_p:.6f}"
    ax.axhline(C_p, color="green", linestyle=":", linewidth=1.4, label=label)
    ax.set_xlabel("u")
    ax.set_ylabel("y = |w| / u^(1+alpha)")
    ax.set_title("scaled coordinates")
    ax.legend(loc="best", fontsize=8)
    result.reference_lines.append(
        ReferenceLine(exponent=0.0, scale=C_p, style="dotted", label=label))

    fig.suptitle(f"Coordinate views, p = {p:g}")
    result.outputs = _save(fig, spec.output)
    return result


def _fig3(spec):
    result = RenderResult("fig3")
    paths = spec.inputs["heatmaps"]
    fig, axes = plt.subplots(1, len(paths), figsize=(3.6 * len(paths), 3.6),
                             squeeze=False)
    for ax, path in zip(axes[0], paths):
        heat = read_heatmap(path)
        manifest = read_manifest(path)
        xs = np.unique(heat["x1"])
        ys = np.unique(heat["x2"])
        grid = np.full((len(ys), len(xs)), np.nan)
        xi = np.searchsorted(xs, heat["x1"])
        yi = np.searchsorted(ys, heat["x2"])
        iters = heat["iters"].copy()
        capped = iters < 0
        if capped.any():
            cap = manifest["config"]["cap"] if manifest else np.nanmax(iters[~capped]) + 1
            iters[capped] = cap
        grid[yi, xi] = iters
        masked = np.ma.masked_invalid(grid)
        image = ax.imshow(masked, origin="lower", extent=(xs[0], xs[-1], ys[0], ys[-1]),
                          cmap="viridis", aspect="equal")
        title = f"p = {manifest['config']['p']:g}" if manifest else path
        ax.set_title(title)
        ax.set_xlabel("x1")
        ax.set_ylabel("x2")
        fig.colorbar(image, ax=ax, shrink=0.85, label="iterations")
    fig.suptitle("Iterations to reach the target gap")
    result.outputs = _save(fig, spec.output)
    return result


def _rate_panel(ax, panel, styles):
    """One log-log gap panel; returns the reference lines drawn."""
    rates = read_rates(panel["rates"])
    slow = read_trajectory(panel["slow"])
    ts, hs = _positive_gap_series(slow)
    ax.loglog(ts, hs, color="C0", linewidth=1.6, label="slow start")
    for path in panel.get("generic", []):
        traj = read_trajectory(path)
        gt, gh = _positive_gap_series(traj)
        ax.loglog(gt, gh, color="gray", linewidth=0.7, alpha=0.45)
    t_anchor = rates["window"][0]
    drawn = []
    for key, style in styles:
        exponent = rates[key]
        scale = _anchored_reference(ts, hs, t_anchor, exponent)
        label = f"T^{exponent:.4g} reference"
        ax.loglog(ts, scale * ts ** exponent, color="black",
                  linestyle="--" if style == "dashed" else ":",
                  linewidth=1.2, label=label)
        drawn.append(ReferenceLine(exponent=exponent, scale=scale, style=style, label=label))
    ax.set_xlabel("iteration T")
    ax.set_ylabel("primal gap")
    ax.legend(loc="lower left", fontsize=7)
    return rates, drawn


def _fig4(spec):
    result = RenderResult("fig4")
    panels = spec.inputs["panels"]
    fig, axes = plt.subplots(1, len(panels), figsize=(5.0 * len(panels), 4.0),
                             squeeze=False)
    for ax, panel in zip(axes[0], panels):
        rates, drawn = _rate_panel(ax, panel, [("expected_slope", "dashed")])
        ax.set_title(f"p = {rates['p']:g}")
        result.reference_lines.extend(drawn)
    fig.suptitle("Primal gap vs iteration, quadratic objective")
    result.outputs = _save(fig, spec.output)
    return result


def _fig5(spec):
    result = RenderResult("fig5")
    panels = spec.inputs["panels"]
    fig, axes = plt.subplots(1, len(panels), figsize=(4.2 * len(panels), 4.0),
                             squeeze=False)
    for ax, panel in zip(axes[0], panels):
        rates, drawn = _rate_panel(
            ax, panel, [("expected_slope", "dotted"), ("upper_bound_slope", "dashed")])
        ax.set_title(f"p = {rates['p']:g}, theta = {rates['theta']:.3g}")
        result.reference_lines.extend(drawn)
    fig.suptitle("Primal gap vs iteration, HEB power objective")
    result.outputs = _save(fig, spec.output)
    return result


_RENDERERS = {
    "fig1": _fig1,
    "fig2": _fig2,
    "fig3": _fig3,
    "fig4": _fig4,
    "fig5": _fig5,
}


def render(spec: FigureSpec) -> RenderResult:
    """Render one figure; writes `<output>.png` and `<output>.svg`."""
    return _RENDERERS[spec.figure_id](spec)
