"""Boundary tracing, scaling and export of the constructed domain.

The domain boundary is parametrized over t in (-1, 1): the point at
parameter t is (q_n(|t|), H(pi t)) where q_n is the step quantile and H
the closed-form conjugate of its even circle extension.  Only the
positive half is computed; the negative half is its mirror image across
the real axis.  Sample parameters are nudged away from the logarithmic
poles at the step breakpoints so every evaluation stays finite.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .discretize import StepQuantile
from .distributions import AffineDistribution, Distribution
from .hilbert import hilbert_step_quantile, pole_levels


@dataclass(frozen=True)
class BoundaryPolyline:
    """Sampled boundary as rows (t, x, y), ascending in t.

    `transform` records the cumulative affine map (alpha, beta) applied
    through `scale_domain` relative to the originally traced polyline.
    `cap_depth` is the smallest rendered depth among atom spikes (scaled
    along with the geometry); exits beyond it are artifacts of rendering
    the infinitely deep spikes at finite resolution.
    """

    points: np.ndarray
    transform: tuple[float, float] = (1.0, 0.0)
    cap_depth: float | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3:
            raise ValueError("points must form a (K, 3) array of (t, x, y) rows")
        if pts.shape[0] % 2 != 0:
            raise ValueError("need an even number of rows (mirrored halves)")
        k = pts.shape[0]
        if k:
            t = pts[:, 0]
            if np.any(np.diff(t) <= 0):
                raise ValueError("t must be strictly increasing")
            if np.any(t <= -1.0) or np.any(t >= 1.0):
                raise ValueError("t must lie strictly inside (-1, 1)")
            scale = 1.0 + float(np.max(np.abs(pts[:, 1:]))) if k else 1.0
            mirror = pts[::-1]
            sym = (np.max(np.abs(t + mirror[:, 0])) +
                   np.max(np.abs(pts[:, 1] - mirror[:, 1])) +
                   np.max(np.abs(pts[:, 2] + mirror[:, 2])))
            if sym > 1e-9 * scale:
                raise ValueError("rows must be mirror-symmetric about the real axis")
        pts = pts.copy()
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def t(self) -> np.ndarray:
        return self.points[:, 0]

    @property
    def x(self) -> np.ndarray:
        return self.points[:, 1]

    @property
    def y(self) -> np.ndarray:
        return self.points[:, 2]

    @property
    def num_points(self) -> int:
        return self.points.shape[0]

    def bbox(self) -> tuple[float, float, float, float]:
        if not self.num_points:
            raise ValueError("empty polyline has no bounding box")
        return (float(self.x.min()), float(self.x.max()),
                float(self.y.min()), float(self.y.max()))


def parameter_grid(sq: StepQuantile, num_points: int) -> np.ndarray:
    """Midpoint grid on (0, 1), kept clear of the transform's poles.

    A sample whose midpoint falls within a quarter cell of a pole is
    moved to the center of the widest pole-free gap of its own cell, so
    the grid stays sorted and every sample keeps a clearance far above
    the pole guard radius.  Poles can cluster densely near the levels
    of a vanishing density, which rules out per-pole nudging.
    """
    if num_points < 1:
        raise ValueError(f"num_points must be >= 1, got {num_points}")
    m = num_points
    cell = 1.0 / m
    t = (np.arange(1, m + 1) - 0.5) * cell
    poles = np.sort([s for s in pole_levels(sq) if 0.0 < s < 1.0])
    if poles.size:
        j = np.searchsorted(poles, t)
        dist = np.minimum(np.abs(t - poles[np.clip(j - 1, 0, poles.size - 1)]),
                          np.abs(poles[np.clip(j, 0, poles.size - 1)] - t))
        for i in np.nonzero(dist < 0.25 * cell)[0]:
            lo, hi = i * cell, (i + 1) * cell
            inner = poles[(poles > lo) & (poles < hi)]
            edges = np.concatenate(([lo], inner, [hi]))
            g = int(np.argmax(np.diff(edges)))
            t[i] = 0.5 * (edges[g] + edges[g + 1])
    if np.any(np.diff(t) <= 0) or t[0] <= 0 or t[-1] >= 1:
        raise ValueError("internal error: pole avoidance broke the grid")
    return t


def boundary_points(sq: StepQuantile, num_points: int = 2048) -> BoundaryPolyline:
    """Trace the domain boundary at 2*num_points parameters.

    Requires total mass 1 (c.d.f. scheme); a sub-probability step
    quantile has no complete boundary correspondence.  Recommended
    resolution is at least four points per step.
    """
    if abs(sq.total_mass - 1.0) > 1e-9:
        raise ValueError(
            f"boundary tracing needs total mass 1, got {sq.total_mass}; "
            "use the c.d.f. scheme or renormalize")
    t = parameter_grid(sq, num_points)
    x = np.asarray(sq.eval(t), dtype=float)
    y = hilbert_step_quantile(sq, np.pi * t)

    pts = np.empty((2 * num_points, 3))
    pts[:num_points, 0] = -t[::-1]
    pts[:num_points, 1] = x[::-1]
    pts[:num_points, 2] = -y[::-1]
    pts[num_points:, 0] = t
    pts[num_points:, 1] = x
    pts[num_points:, 2] = y

    cap = None
    flagged = np.flatnonzero(sq.atom_steps)
    if flagged.size:
        depths = []
        for j in flagged:
            lo, hi = sq.breakpoints[j], sq.breakpoints[j + 1]
            mask = (t > lo) & (t <= hi)
            if np.any(mask):
                depths.append(float(np.max(np.abs(y[mask]))))
        if depths:
            cap = (1.0 - 1e-9) * min(depths)
    return BoundaryPolyline(points=pts, cap_depth=cap)


def scale_domain(bp: BoundaryPolyline, alpha: float, beta: float) -> BoundaryPolyline:
    """Affine image of the domain: (x, y) -> (alpha x + beta, alpha y).

    Solves the scaled problem: if the domain embeds a law X, the image
    embeds alpha X + beta.  alpha must be nonzero.
    """
    alpha, beta = float(alpha), float(beta)
    if alpha == 0.0 or not (np.isfinite(alpha) and np.isfinite(beta)):
        raise ValueError(f"need finite alpha != 0 and finite beta, got ({alpha}, {beta})")
    pts = bp.points.copy()
    pts[:, 1] = alpha * pts[:, 1] + beta
    pts[:, 2] = alpha * pts[:, 2]
    if alpha < 0:
        # mirror in t to keep rows sorted and symmetric
        pts = pts[::-1]
        pts[:, 0] = -pts[:, 0]
    a0, b0 = bp.transform
    cap = None if bp.cap_depth is None else abs(alpha) * bp.cap_depth
    return BoundaryPolyline(points=pts, transform=(alpha * a0, alpha * b0 + beta),
                            cap_depth=cap)


def normalize_support(dist: Distribution) -> tuple[Distribution, float, float]:
    """Affinely map the support onto (0, 1).

    Returns (normalized, alpha, beta) with the original law equal in
    distribution to alpha * normalized + beta; alpha is the support
    width and beta its left edge.
    """
    a, b = dist.support()
    if not (np.isfinite(a) and np.isfinite(b) and a < b):
        raise ValueError(f"normalization needs bounded support, got ({a}, {b})")
    width = b - a
    return AffineDistribution(dist, 1.0 / width, -a / width), width, a


# ----------------------------------------------------------------- export


def export_csv(bp: BoundaryPolyline, path, header_comment: str | None = None) -> None:
    """Write rows t,x,y at full float precision with LF line endings."""
    with open(path, "w", newline="\n") as fh:
        if header_comment:
            fh.write(f"# {header_comment}\n")
        fh.write("t,x,y\n")
        for t, x, y in bp.points:
            fh.write(f"{float(t)!r},{float(x)!r},{float(y)!r}\n")


def load_csv(path) -> BoundaryPolyline:
    """Read a polyline written by export_csv (comment lines ignored)."""
    rows = []
    with open(path) as fh:
        header = None
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = line
                if header.replace(" ", "") != "t,x,y":
                    raise ValueError(f"unexpected header {header!r}, need 't,x,y'")
                continue
            rows.append([float(v) for v in line.split(",")])
    pts = np.array(rows, dtype=float) if rows else np.empty((0, 3))
    return BoundaryPolyline(points=pts)


def export_svg(bp: BoundaryPolyline, path) -> None:
    """Render the closed boundary as a single stroked SVG path.

    The drawing is scaled so the padded bounding box spans 1000 user
    units on its larger side, with the y axis flipped to keep the upper
    half of the domain on top.
    """
    if bp.num_points < 2:
        raise ValueError("SVG export needs at least two boundary points")
    xmin, xmax, ymin, ymax = bp.bbox()
    w, h = xmax - xmin, ymax - ymin
    side = max(w, h)
    if side <= 0:
        raise ValueError("SVG export needs a nondegenerate bounding box")
    pad = 0.05 * side
    scale = 1000.0 / (side + 2.0 * pad)
    width = (w + 2.0 * pad) * scale
    height = (h + 2.0 * pad) * scale
    px = (bp.x - xmin + pad) * scale
    py = (ymax - bp.y + pad) * scale
    coords = " L ".join(f"{x:.6f} {y:.6f}" for x, y in zip(px, py))
    svg = (
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width:.2f}" height="{height:.2f}" '
        f'viewBox="0 0 {width:.2f} {height:.2f}">\n'
        f'  <path d="M {coords} Z" fill="none" stroke="black" stroke-width="1.5"/>\n'
        f'</svg>\n')
    with open(path, "w", newline="\n") as fh:
        fh.write(svg)


def svg_point_count(path) -> int:
    """Number of vertices in the first path of an SVG file (test helper)."""
    with open(path) as fh:
        text = fh.read()
    match = re.search(r'd="([^"]+)"', text)
    if not match:
        raise ValueError("no path found")
    return len(re.findall(r"[ML]\s", match.group(1)))
