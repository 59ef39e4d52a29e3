"""Trace the uniform-target domain at increasing resolution.

The domain for Uni(-1, 1) looks like a lens with small teeth cut into
the boundary at the discretization's step values.  As n grows the teeth
shrink and the outline settles toward a smooth limit shape; this script
renders the n = 5, 15, 30, 200 series side by side and tabulates how
deep the teeth still are.
"""

import os

import numpy as np

from mudk.boundary import boundary_points, export_svg
from mudk.discretize import build_measure
from mudk.distributions import Uniform


def tooth_stats(bp):
    """Center half-height plus the depth range over interior walls."""
    half = bp.points[bp.points[:, 0] > 0]
    xs, ys = half[:, 1], half[:, 2]
    center = -np.interp(0.0, xs, ys)
    depths = []
    for v in np.unique(xs)[1:-1]:
        depths.append(-ys[xs == v].min())
    return center, (min(depths), max(depths)) if depths else (0.0, 0.0)


def main(out_dir="demo_output"):
    os.makedirs(out_dir, exist_ok=True)
    target = Uniform(-1.0, 1.0)
    print(f"{'n':>5} {'half-height(0)':>15} {'deepest tooth':>14} "
          f"{'shallowest':>11}  svg")
    for n in (5, 15, 30, 200):
        bp = boundary_points(build_measure(target, n), num_points=2048)
        center, (lo, hi) = tooth_stats(bp)
        path = os.path.join(out_dir, f"uniform_n{n}.svg")
        export_svg(bp, path)
        print(f"{n:>5} {center:>15.6f} {hi:>14.6f} {lo:>11.6f}  {path}")
    # limiting odd coefficients are -8/(pi k)^2, so the height at the
    # top of the disc is their alternating sum
    j = np.arange(200_000)
    limit = 8.0 / np.pi ** 2 * np.sum((-1.0) ** j / (2 * j + 1) ** 2)
    print(f"\nThe center half-height tends to {limit:.6f} while the "
          "teeth flatten out.")


if __name__ == "__main__":
    main()
