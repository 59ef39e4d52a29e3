"""Discretization of a target law into a step quantile, with L1 error control.

The continuous target on a bounded support (a, b) is replaced by a
finitely supported measure sitting on grid points x_k = a + (b-a)k/n
and on the original atom locations.  Two schemes are provided: the
c.d.f. scheme assigns each kept grid cell its exact probability
F(x_k) - F(x_{k-1}), while the p.d.f. scheme uses left-endpoint density
weights (b-a)/n * f(x_{k-1}) and need not carry total mass one.

The resulting quantile is a step function; `l1_distance` measures the
L1 gap to the exact quantile in level space, and `rate_bound` evaluates
the a priori estimate (b-a)/n plus the atom correction term, which
vanishes for atomless laws.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._quad import simpson_adaptive as _simpson_adaptive
from .distributions import Distribution


class UnboundedSupportError(ValueError):
    """Raised when a scheme needing bounded support receives an unbounded law."""


_WIDTH_FLOOR = 1e-15        # level widths below this are unrepresentable
_LEVEL_TOL = 1e-9           # tiling consistency tolerance in level space


@dataclass(frozen=True)
class StepQuantile:
    """Piecewise-constant quantile of a finitely supported measure.

    `breakpoints` holds the m+1 cumulative levels 0 = s_0 <= ... <= s_m,
    `values` the m step values (non-decreasing), and `atom_steps` flags
    the steps that reproduce an original atom of the target (their width
    equals the atom mass exactly).  s_m is 1 for the c.d.f. scheme but
    may differ under the p.d.f. scheme.
    """

    breakpoints: np.ndarray
    values: np.ndarray
    atom_steps: np.ndarray = field(default=None)

    def __post_init__(self):
        bp = np.asarray(self.breakpoints, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        flags = (np.zeros(vals.size, dtype=bool) if self.atom_steps is None
                 else np.asarray(self.atom_steps, dtype=bool))
        if bp.ndim != 1 or vals.ndim != 1 or bp.size != vals.size + 1:
            raise ValueError("need m+1 breakpoints for m step values")
        if vals.size == 0:
            raise ValueError("at least one step is required")
        if flags.size != vals.size:
            raise ValueError("atom_steps must align with values")
        if abs(bp[0]) > _LEVEL_TOL:
            raise ValueError(f"first breakpoint must be 0, got {bp[0]}")
        if np.any(np.diff(bp) <= 0):
            raise ValueError("breakpoints must be strictly increasing")
        if np.any(np.diff(vals) < -1e-12 * (1.0 + np.max(np.abs(vals)))):
            raise ValueError("step values must be non-decreasing")
        bp = bp.copy()
        bp[0] = 0.0
        for arr in (bp, vals, flags):
            arr.flags.writeable = False
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "atom_steps", flags)

    @property
    def num_steps(self) -> int:
        return self.values.size

    @property
    def total_mass(self) -> float:
        return float(self.breakpoints[-1])

    def eval(self, u):
        """Step value at level u; left-continuous, defined on (0, s_m]."""
        arr = np.asarray(u, dtype=float)
        scalar = arr.ndim == 0
        if arr.size and (np.any(arr <= 0.0) or np.any(arr > self.total_mass + 1e-12)):
            raise ValueError(f"levels must lie in (0, {self.total_mass}]")
        idx = np.searchsorted(self.breakpoints, np.minimum(arr, self.total_mass),
                              side="left") - 1
        idx = np.clip(idx, 0, self.num_steps - 1)
        out = self.values[idx]
        return float(out) if scalar else out

    def widths(self) -> np.ndarray:
        return np.diff(self.breakpoints)

    def l1_norm(self) -> float:
        """Integral of |value| against level width."""
        return float(np.abs(self.values) @ self.widths())

    def mean(self) -> float:
        return float(self.values @ self.widths())


def grid(a: float, b: float, n: int) -> np.ndarray:
    """Uniform grid of n+1 nodes over [a, b]."""
    if not (np.isfinite(a) and np.isfinite(b) and a < b):
        raise ValueError(f"grid needs finite a < b, got ({a}, {b})")
    if n < 1:
        raise ValueError(f"grid needs n >= 1, got {n}")
    return np.linspace(a, b, n + 1)


def _finite_support(dist: Distribution) -> tuple[float, float]:
    a, b = dist.support()
    if not (np.isfinite(a) and np.isfinite(b)):
        raise UnboundedSupportError(
            f"support ({a}, {b}) is unbounded; truncate the law first")
    if not a < b:
        raise ValueError(f"support must be a nondegenerate interval, got ({a}, {b})")
    return a, b


def _atom_layout(dist, xs, atol):
    """Atom list plus flags marking grid nodes that collide with atoms."""
    atoms = dist.atoms()
    node_hits = np.zeros(xs.size, dtype=bool)
    if atoms:
        locs = np.array([loc for loc, _ in atoms])
        node_hits = np.min(np.abs(xs[:, None] - locs[None, :]), axis=1) <= atol
    return atoms, node_hits


def build_measure_cdf(dist: Distribution, n: int) -> StepQuantile:
    """Step quantile of the c.d.f.-scheme discretization.

    Kept cells (both endpoints off the atom set) receive their exact mass
    F(x_k) - F(x_{k-1}) at the right endpoint x_k; atoms keep their exact
    mass at their exact location.  Cells touching an atom are dropped and
    the level range they covered is reassigned to the neighboring atom
    value, so the output still carries total mass one.
    """
    a, b = _finite_support(dist)
    xs = grid(a, b, n)
    atol = 1e-12 * max(1.0, b - a)
    atoms, node_hits = _atom_layout(dist, xs, atol)

    # each entry: [lo_level, hi_level, value, is_atom]
    intervals = [[float(dist.cdf_left(loc)), float(dist.cdf(loc)), loc, True]
                 for loc, _ in atoms]
    intervals = [iv for iv in intervals if iv[1] - iv[0] > _WIDTH_FLOOR]

    F = np.asarray(dist.cdf(xs), dtype=float)
    for k in range(1, n + 1):
        if node_hits[k - 1] or node_hits[k]:
            continue
        lo, hi = float(F[k - 1]), float(F[k])
        if hi - lo <= _WIDTH_FLOOR:
            continue
        inner = [loc for loc, _ in atoms if xs[k - 1] < loc < xs[k]]
        if not inner:
            intervals.append([lo, hi, float(xs[k]), False])
            continue
        # off-grid atoms inside a kept cell: split its mass around them
        cur = lo
        for loc in inner:
            fl = float(dist.cdf_left(loc))
            if fl - cur > _WIDTH_FLOOR:
                intervals.append([cur, fl, loc, False])
            cur = float(dist.cdf(loc))
        if hi - cur > _WIDTH_FLOOR:
            intervals.append([cur, hi, float(xs[k]), False])

    if not intervals:
        raise ValueError("discretization produced no mass; check the target law")
    intervals.sort(key=lambda iv: (iv[0], iv[1]))

    # fill level gaps left by dropped cells, snapping to the adjacent atom value
    tiled = []
    if intervals[0][0] > _LEVEL_TOL:
        tiled.append([0.0, intervals[0][0], intervals[0][2], False])
    for iv in intervals:
        if tiled:
            gap = iv[0] - tiled[-1][1]
            if gap < -_LEVEL_TOL:
                raise ValueError("internal error: overlapping level intervals")
            if gap > _LEVEL_TOL:
                val = iv[2] if iv[3] else (tiled[-1][2] if tiled[-1][3] else iv[2])
                tiled.append([tiled[-1][1], iv[0], val, False])
        tiled.append(iv)
    if tiled[-1][1] < 1.0 - _LEVEL_TOL:
        tiled.append([tiled[-1][1], 1.0, tiled[-1][2], False])

    bps = [0.0]
    vals, flags = [], []
    for lo, hi, val, is_atom in tiled:
        if abs(lo - bps[-1]) > _LEVEL_TOL:
            raise ValueError("internal error: level tiling is not contiguous")
        bps.append(hi)
        vals.append(val)
        flags.append(is_atom)
    total = bps[-1]
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"internal error: total mass {total} != 1")
    bps[-1] = 1.0
    return StepQuantile(np.array(bps), np.array(vals), np.array(flags))


def build_measure_pdf(dist: Distribution, n: int) -> StepQuantile:
    """Step quantile of the p.d.f.-scheme discretization.

    Cell widths are left-endpoint Riemann weights (b-a)/n * f(x_{k-1}),
    so the cumulative levels are partial sums of the density and the
    total mass is generally not one.  Atoms keep their exact mass; cells
    touching an atom are dropped as in the c.d.f. scheme.
    """
    if not dist.has_density:
        raise ValueError("the p.d.f. scheme requires a target with a density")
    a, b = _finite_support(dist)
    xs = grid(a, b, n)
    h = (b - a) / n
    atol = 1e-12 * max(1.0, b - a)
    atoms, node_hits = _atom_layout(dist, xs, atol)

    events = [(loc, mass, loc, True) for loc, mass in atoms if mass > _WIDTH_FLOOR]
    f = np.asarray(dist.pdf(xs), dtype=float)
    for k in range(1, n + 1):
        if node_hits[k - 1] or node_hits[k]:
            continue
        if not np.isfinite(f[k - 1]):
            raise ValueError(f"density is not finite at grid node {xs[k - 1]}")
        w = h * float(f[k - 1])
        if w <= _WIDTH_FLOOR:
            continue
        events.append((float(xs[k]), w, float(xs[k]), False))
    if not events:
        raise ValueError("discretization produced no mass; check the target law")
    events.sort(key=lambda ev: ev[0])

    widths = np.array([w for _, w, _, _ in events])
    bps = np.concatenate(([0.0], np.cumsum(widths)))
    vals = np.array([v for _, _, v, _ in events])
    flags = np.array([fl for _, _, _, fl in events])
    return StepQuantile(bps, vals, flags)


def build_measure(dist: Distribution, n: int, scheme: str = "cdf") -> StepQuantile:
    """Dispatch on the scheme name ('cdf' or 'pdf')."""
    if scheme == "cdf":
        return build_measure_cdf(dist, n)
    if scheme == "pdf":
        return build_measure_pdf(dist, n)
    raise ValueError(f"unknown scheme {scheme!r}; expected 'cdf' or 'pdf'")


# ------------------------------------------------------------- L1 distances


def _level_cells(extra_levels, lo, hi):
    """Sorted partition of (lo, hi) refined by the given levels."""
    levels = np.unique(np.clip(np.asarray(extra_levels, dtype=float), lo, hi))
    levels = np.concatenate(([lo], levels, [hi]))
    levels = np.unique(levels)
    return [(float(l), float(r)) for l, r in zip(levels[:-1], levels[1:])
            if r - l > 1e-14]


def _cell_gap(dist, sq, l, r, tol):
    """Integral of |q - q_n| over one level cell where q_n is constant."""
    c = sq.eval(min(0.5 * (l + r), sq.total_mass))
    # q is monotone, so {q <= c} is exactly the level set below F(c)
    u_star = min(max(float(dist.cdf(c)), l), r)
    below = c * (u_star - l) - dist.quantile_integral(l, u_star, tol=tol)
    above = dist.quantile_integral(u_star, r, tol=tol) - c * (r - u_star)
    return max(below, 0.0) + max(above, 0.0)


def _gap_on_range(dist, sq, lo, hi, tol):
    levels = np.concatenate((sq.breakpoints, dist.quantile_breaklevels()))
    return sum(_cell_gap(dist, sq, l, r, tol) for l, r in _level_cells(levels, lo, hi))


def l1_distance(dist: Distribution, sq: StepQuantile, tol: float = 1e-10) -> float:
    """L1 gap between the exact quantile and a step quantile over (0, 1).

    Levels above the step quantile's total mass (p.d.f. scheme) compare
    against its final value.  Exact for piecewise-affine quantiles, since
    the per-cell integrals use closed-form antiderivatives there.
    """
    return _gap_on_range(dist, sq, 0.0, 1.0, tol)


def tail_defect(dist: Distribution, sq: StepQuantile, delta: float,
                tol: float = 1e-10) -> float:
    """Larger of the two end-tail contributions to the L1 gap."""
    if not 0.0 < delta < 0.5:
        raise ValueError(f"delta must lie in (0, 0.5), got {delta}")
    low = _gap_on_range(dist, sq, 0.0, delta, tol)
    high = _gap_on_range(dist, sq, 1.0 - delta, 1.0, tol)
    return max(low, high)


def step_l1_distance(sq1: StepQuantile, sq2: StepQuantile) -> float:
    """Exact L1 distance between two step quantiles.

    Integrates over (0, max total mass), extending the shorter one by its
    final value.
    """
    top = max(sq1.total_mass, sq2.total_mass)
    levels = np.unique(np.concatenate((sq1.breakpoints, sq2.breakpoints, [top])))
    levels = levels[(levels >= 0.0) & (levels <= top)]
    total = 0.0
    for l, r in zip(levels[:-1], levels[1:]):
        if r - l <= 1e-15:
            continue
        mid = 0.5 * (l + r)
        v1 = sq1.eval(min(mid, sq1.total_mass))
        v2 = sq2.eval(min(mid, sq2.total_mass))
        total += abs(v1 - v2) * (r - l)
    return total


def quantile_l1(dist_a: Distribution, dist_b: Distribution,
                tol: float = 1e-10) -> float:
    """L1 distance between two exact quantiles over (0, 1)."""
    eps = 1e-12
    levels = np.concatenate((dist_a.quantile_breaklevels(),
                             dist_b.quantile_breaklevels()))
    cells = _level_cells(levels, eps, 1.0 - eps)

    def f(u):
        return abs(float(dist_a.quantile(u)) - float(dist_b.quantile(u)))

    return sum(_simpson_adaptive(f, l, r, tol) for l, r in cells)


# ------------------------------------------------------------- rate bounds


@dataclass(frozen=True)
class RateBound:
    """A priori L1 error bound for the c.d.f. scheme at a given n.

    `varpi` is the atom correction: for each atom it charges the mass the
    grid can displace within one cell on either side, weighted by the
    displaced location.  It is exactly 0 for atomless laws, recovering
    the clean (b-a)/n rate.  When the law has a bounded density the
    refined coefficients give the sharper alpha/n + beta/n^2 form.
    """

    n: int
    cell_width: float
    varpi: float
    bound: float
    alpha: float | None = None
    beta: float | None = None

    @property
    def refined_bound(self) -> float | None:
        if self.alpha is None:
            return None
        return self.alpha / self.n + self.beta / self.n ** 2


def rate_bound(dist: Distribution, n: int) -> RateBound:
    """Evaluate the L1 rate bound (b-a)/n + varpi for the c.d.f. scheme."""
    a, b = _finite_support(dist)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    h = (b - a) / n
    atol = 1e-12 * max(1.0, b - a)
    atoms = dist.atoms()

    varpi = 0.0
    for i, (loc, _) in enumerate(atoms):
        prev_edge = atoms[i - 1][0] if i > 0 else a
        next_edge = atoms[i + 1][0] if i + 1 < len(atoms) else b
        if loc > prev_edge + atol:
            varpi += loc * (float(dist.cdf_left(loc)) - float(dist.cdf(loc - h)))
        if loc < next_edge - atol:
            varpi += (loc + h) * (float(dist.cdf(loc + h)) - float(dist.cdf(loc)))

    alpha = beta = None
    if dist.has_density:
        edges = [a] + [loc for loc, _ in atoms if a < loc < b] + [b]
        sups = [dist.density_sup(lo, hi) for lo, hi in zip(edges[:-1], edges[1:])]
        alpha = (b - a) * (1.0 + sum(m * (lo + hi)
                                     for m, lo, hi in zip(sups, edges[:-1], edges[1:])))
        beta = (b - a) ** 2 * sum(sups)

    return RateBound(n=n, cell_width=h, varpi=varpi, bound=h + varpi,
                     alpha=alpha, beta=beta)
