"""Periodic Hilbert transform of even step functions, in closed form.

The conjugate-function operator with kernel cot(t/2), taken as a Cauchy
principal value, maps the boundary real part of an analytic function on
the unit disc to its imaginary part.  For indicators of symmetric angle
bands {a < |x| < b} the transform reduces to four log|sin| terms, so the
transform of any even step function is a finite sum of such terms.  The
closed form blows up logarithmically at the band edges; evaluation near
those poles is refused rather than returning huge cancel-prone values.

A direct principal-value quadrature of the defining integral is included
as an independent cross-check oracle.
"""

from __future__ import annotations

import numpy as np

from ._quad import simpson_adaptive
from .discretize import StepQuantile

POLE_RADIUS = 1e-9


class PoleError(ValueError):
    """Evaluation point is within POLE_RADIUS of a logarithmic pole."""


class OracleConvergenceError(RuntimeError):
    """The principal-value quadrature failed to extrapolate consistently."""


def _log_abs_sin_half(t):
    return np.log(np.abs(np.sin(0.5 * t)))


def _wrap_distance(u, poles):
    """Min distance from each u to the pole set, modulo 2*pi."""
    if len(poles) == 0:
        return np.full(np.shape(u), np.inf)
    diff = np.asarray(u)[..., None] - np.asarray(poles)
    d = np.abs((diff + np.pi) % (2.0 * np.pi) - np.pi)
    return np.min(d, axis=-1)


def _check_poles(u, poles):
    d = _wrap_distance(u, poles)
    if np.any(d < POLE_RADIUS):
        bad = np.asarray(u)[d < POLE_RADIUS]
        raise PoleError(
            f"evaluation within {POLE_RADIUS} of a logarithmic pole at u={bad}")


def hilbert_indicator(a: float, b: float, u):
    """Closed-form transform of the indicator of {a < |x| < b} on (-pi, pi).

    Evaluates as a sum of log|sin((.)/2)| terms, which is an odd function
    of u with logarithmic poles at +-a and +-b (modulo 2*pi).
    """
    a, b = float(a), float(b)
    if not 0.0 <= a < b <= np.pi:
        raise ValueError(f"band must satisfy 0 <= a < b <= pi, got ({a}, {b})")
    arr = np.asarray(u, dtype=float)
    scalar = arr.ndim == 0
    # a = 0 and b = pi carry no pole: their log pair cancels identically
    poles = []
    if a > 0.0:
        poles += [a, -a]
    if b < np.pi:
        poles += [b, -b]
    _check_poles(arr, poles)
    L = _log_abs_sin_half
    out = np.zeros(arr.shape)
    if a > 0.0:
        out = out + (L(arr - a) - L(arr + a))
    if b < np.pi:
        out = out + (L(arr + b) - L(arr - b))
    out = out / np.pi
    return float(out) if scalar else out


def pole_levels(sq: StepQuantile) -> np.ndarray:
    """Levels s in (0, 1] where the transform of the step quantile blows up.

    Internal breakpoints carry a pole only when the step value actually
    jumps there; the outermost breakpoint is a pole only if the step
    quantile stops short of total mass 1 with a nonzero final value
    (at s_m = 1 the two log terms cancel by periodicity).
    """
    bp, vals = sq.breakpoints, sq.values
    levels = [float(bp[j]) for j in range(1, sq.num_steps)
              if abs(vals[j] - vals[j - 1]) > 0.0]
    if sq.total_mass < 1.0 - 1e-12 and abs(vals[-1]) > 0.0:
        levels.append(sq.total_mass)
    return np.array(levels)


def hilbert_step_quantile(sq: StepQuantile, u):
    """Transform of the even extension of the step quantile at angles u.

    Uses the telescoped form sum_j (v_{j+1} - v_j) D(pi s_j) / pi with
    D(t) = log|sin((u-t)/2)| - log|sin((u+t)/2)|, which exposes one log
    pair per jump; zero-width jumps contribute nothing.
    """
    arr = np.asarray(u, dtype=float)
    scalar = arr.ndim == 0
    pts = np.atleast_1d(arr).astype(float)

    pole_t = np.pi * pole_levels(sq)
    _check_poles(pts, np.concatenate((pole_t, -pole_t)))

    bp, vals = sq.breakpoints, sq.values
    theta = np.pi * bp[1:]                      # D(pi s_0) = D(0) = 0
    coeff = np.empty(theta.size)
    coeff[:-1] = np.diff(vals)
    coeff[-1] = -vals[-1]
    if sq.total_mass >= 1.0 - 1e-12:
        # D(pi) vanishes identically; drop the term to avoid -inf * 0
        coeff[-1] = 0.0
    live = np.abs(coeff) > 0.0
    theta, coeff = theta[live], coeff[live]

    if theta.size == 0:
        out = np.zeros(pts.size)
    else:
        L = _log_abs_sin_half
        D = L(pts[:, None] - theta[None, :]) - L(pts[:, None] + theta[None, :])
        out = (D @ coeff) / np.pi
    if scalar:
        return float(out[0])
    return out.reshape(arr.shape)


def hilbert_pv_oracle(f, u: float, etas=(1e-2, 1e-3, 1e-4), jumps=(),
                      quad_tol=1e-9, spread_tol=1e-4) -> float:
    """Principal-value quadrature of the defining integral, with extrapolation.

    Computes I(eta) = (1/2pi) int_eta^pi (f(u-t) - f(u+t)) cot(t/2) dt for
    each excision radius, then extrapolates eta -> 0 linearly from
    consecutive pairs.  Disagreement of the extrapolants beyond
    `spread_tol` raises OracleConvergenceError.  `jumps` lists angles in
    [0, pi] where f is discontinuous, used to split the quadrature.
    """
    u = float(u)
    etas = sorted(etas, reverse=True)
    if len(etas) < 2:
        raise ValueError("need at least two excision radii to extrapolate")

    def integrand(t):
        return (f(u - t) - f(u + t)) / np.tan(0.5 * t)

    def cut_points(eta):
        pts = set()
        for s in jumps:
            for signed in (s, -s):
                for k in (-1, 0, 1):
                    for cand in (u - signed + 2.0 * np.pi * k,
                                 signed - u + 2.0 * np.pi * k):
                        if eta < cand < np.pi:
                            pts.add(cand)
        return sorted(pts)

    def excised(eta):
        edges = [eta] + cut_points(eta) + [np.pi]
        total = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            if hi - lo <= 1e-13:
                continue
            pad = min(1e-10, 0.25 * (hi - lo))
            total += simpson_adaptive(integrand, lo + pad, hi - pad, quad_tol)
        return total / (2.0 * np.pi)

    vals = [excised(eta) for eta in etas]
    extrapolants = []
    for (e1, i1), (e2, i2) in zip(zip(etas, vals), zip(etas[1:], vals[1:])):
        extrapolants.append((e1 * i2 - e2 * i1) / (e1 - e2))
    spread = max(extrapolants) - min(extrapolants)
    if spread > spread_tol:
        raise OracleConvergenceError(
            f"PV quadrature did not stabilize: extrapolants {extrapolants}")
    return extrapolants[-1]
