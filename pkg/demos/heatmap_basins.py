"""Iteration-count heatmap over the l3 ball, rendered as ASCII.

Every feasible grid point is run to the target gap 1e-4; slow cells
concentrate in strips around the fixed-point curve w = y*(u) u^(1+alpha)
and its mirror image.
"""

import numpy as np

from fwlab import fixed_point_y, heatmap, slow_constants

P = 3.0
GRID = 48

cells = heatmap(P, grid_n=GRID, target=1e-4, cap=10**6)
counts = {(c.x1, c.x2): c.iters for c in cells}
values = np.array([c.iters for c in cells], dtype=float)
print(f"{len(cells)} feasible cells; iterations to gap <= 1e-4: "
      f"min {values.min():.0f}, median {np.median(values):.0f}, max {values.max():.0f}")

# mark cells by how slow they are relative to the grid quantiles
q50, q80, q95 = np.quantile(values, [0.5, 0.8, 0.95])
xs = np.linspace(-1.0, 1.0, GRID)
print("\n(dark = slow; columns are x1 in [-1, 1], rows are x2 in [1, -1])")
for x2 in reversed(xs):
    row = []
    for x1 in xs:
        n = counts.get((x1, x2))
        if n is None:
            row.append(" ")
        elif n > q95:
            row.append("#")
        elif n > q80:
            row.append("+")
        elif n > q50:
            row.append(".")
        else:
            row.append(" ")
    print("".join(row))

sc = slow_constants(P)
print("\nslowest strip follows w = y*(u) u^(1+alpha); along the curve:")
for u in (0.1, 0.25, 0.4):
    w = fixed_point_y(u, P, tol=1e-12).y_star * u ** (1 + sc.alpha)
    print(f"  u = {u:.2f}  ->  (x1, x2) = ({1 - u:.3f}, {w:.4f})")
