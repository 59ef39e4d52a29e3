"""Adaptive Simpson quadrature shared by the error-analysis modules."""

from __future__ import annotations


def simpson_adaptive(f, a, b, tol, depth=50):
    """Integrate a scalar function over (a, b) to absolute tolerance tol.

    Classic recursive Simpson refinement with Richardson correction and a
    hard recursion cap; integrable endpoint singularities converge, just
    slowly.
    """
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    return _step(f, a, b, fa, fm, fb, whole, tol, depth)


def _step(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm, rm = 0.5 * (a + m), 0.5 * (m + b)
    flm, frm = f(lm), f(rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
        return left + right + (left + right - whole) / 15.0
    half = 0.5 * tol
    return (_step(f, a, m, fa, flm, fm, left, half, depth - 1)
            + _step(f, m, b, fm, frm, fb, right, half, depth - 1))
