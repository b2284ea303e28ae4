"""Schema-validated readers for the fwlab CSV/JSON artifacts.

Each reader checks the file against its expected schema before touching
the data and raises SchemaMismatchError naming the offending column or
key, so a stale or foreign file fails loudly instead of plotting junk.
"""

from __future__ import annotations

import csv
import json
import os

import numpy as np

TRAJECTORY_COLUMNS = ["t", "x1", "x2", "gamma", "h", "u", "w", "y", "s"]
HEATMAP_COLUMNS = ["x1", "x2", "iters"]
SLOW_CURVE_COLUMNS = ["u", "y_star", "residual"]
RATES_KEYS = [
    "p", "theta", "mu", "u0", "T",
    "slope", "expected_slope", "upper_bound_slope",
    "constant_tail", "expected_constant", "window",
]
CONSTANTS_KEYS = ["p", "q", "alpha", "kappa", "C_p", "D_p", "a_p",
                  "rate_exponent", "thm_constant"]


class SchemaMismatchError(ValueError):
    """An input file does not conform to the expected fwlab schema."""


def _check_header(path, header, expected):
    if header != expected:
        missing = [c for c in expected if c not in header]
        unexpected = [c for c in header if c not in expected]
        if missing:
            raise SchemaMismatchError(f"{path}: missing column {missing[0]!r}")
        if unexpected:
            raise SchemaMismatchError(f"{path}: unexpected column {unexpected[0]!r}")
        raise SchemaMismatchError(f"{path}: columns out of order: {header}")


def _read_csv(path, expected_columns):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaMismatchError(f"{path}: empty file") from None
        _check_header(path, header, expected_columns)
        rows = [row for row in reader if row]
    data = np.array(rows, dtype=float) if rows else np.empty((0, len(expected_columns)))
    return {name: data[:, i] for i, name in enumerate(expected_columns)}


def read_trajectory(path):
    """Columns t,x1,x2,gamma,h,u,w,y,s as float arrays."""
    return _read_csv(path, TRAJECTORY_COLUMNS)


def read_heatmap(path):
    """Long-format heatmap columns x1,x2,iters (iters = -1 marks cap-outs)."""
    return _read_csv(path, HEATMAP_COLUMNS)


def read_slow_curve(path):
    """Fixed-point curve columns u,y_star,residual."""
    return _read_csv(path, SLOW_CURVE_COLUMNS)


def _read_json(path, required, label):
    with open(path) as fh:
        payload = json.load(fh)
    for key in required:
        if key not in payload:
            raise SchemaMismatchError(f"{path}: missing {label} field {key!r}")
    return payload


def read_rates(path):
    """Rate report JSON; reference-slope exponents are taken from here."""
    return _read_json(path, RATES_KEYS, "rate-report")


def read_constants(path):
    """Slow-dynamics constants JSON (C_p and friends)."""
    return _read_json(path, CONSTANTS_KEYS, "constants")


def read_manifest(output_path):
    """The manifest fwlab writes next to an output file, if present."""
    path = f"{output_path}.manifest.json"
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        return json.load(fh)
