"""Bracketed one-dimensional minimization."""

import math

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(f, lo, hi, tol=1e-8, max_iter=500):
    """Minimize a unimodal ``f`` on ``[lo, hi]`` by golden-section search.

    Returns ``(x, f(x))`` for the best point evaluated. Non-finite values
    of ``f`` are treated as ``+inf``, so infeasible regions are avoided.
    """
    if not hi > lo:
        raise ValueError(f"empty search interval [{lo}, {hi}]")

    def g(x):
        v = f(x)
        return v if math.isfinite(v) else math.inf

    a, b = float(lo), float(hi)
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = g(c), g(d)
    best = min((fc, c), (fd, d))
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = g(c)
            best = min(best, (fc, c))
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = g(d)
            best = min(best, (fd, d))
    return best[1], best[0]
