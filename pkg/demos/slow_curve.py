"""The fixed-point curve y*(u) of the scaled one-step map.

Solves Phi(u, y) = y on a geometric grid of u, shows the drift
y*(u) = C_p + D_p u + O(u^kappa), and probes the contraction of the map
in the y direction: |dPhi/dy| < 1 away from p = 3, and 1 - |dPhi/dy|
shrinking like (3/4) u in the marginal case p = 3.
"""

import numpy as np

from fwlab import fixed_point_y, phi_dy, slow_constants

for p in (3.0, 4.0):
    sc = slow_constants(p)
    print(f"\n=== p = {p:g}:  C_p = {sc.C_p:.7f},  D_p = {sc.D_p:.7f} ===")
    print(f"{'u':>10}  {'y*(u)':>12}  {'(y*-C_p)/u':>12}  {'dPhi/dy at y*':>14}")
    for u in np.geomspace(1e-6, 1e-1, 6):
        pt = fixed_point_y(float(u), p, tol=1e-12)
        der = phi_dy(float(u), pt.y_star, p)
        print(f"{u:10.1e}  {pt.y_star:12.8f}  {(pt.y_star - sc.C_p) / u:12.6f}  {der:14.6f}")
    print(f"drift slope should approach D_p = {sc.D_p:.6f} as u -> 0")
    if p == 3.0:
        print("p = 3 is marginal: dPhi/dy -> -1, with 1 - |dPhi/dy| ~ (3/4) u:")
        for u in (1e-2, 1e-3, 1e-4):
            pt = fixed_point_y(u, 3.0, tol=1e-12)
            one_minus = 1.0 - abs(phi_dy(u, pt.y_star, 3.0))
            print(f"  u = {u:.0e}:  1 - |dPhi/dy| = {one_minus:.3e}   (3/4)u = {0.75 * u:.3e}")
