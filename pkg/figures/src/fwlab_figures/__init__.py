"""Figure rendering for fwlab experiment outputs."""

__version__ = "0.1.0"

from .io import (
    SchemaMismatchError,
    read_constants,
    read_heatmap,
    read_manifest,
    read_rates,
    read_slow_curve,
    read_trajectory,
)
from .render import FIGURE_IDS, FigureSpec, ReferenceLine, RenderResult, render
