"""Scalar maximization: coarse pre-scan, golden-section, optional Newton polish.

The measure objectives are smooth and empirically unimodal on their
intervals, but unimodality is not guaranteed, so every search starts from a
dense pre-scan and the interval endpoints are always evaluated.
"""

import numpy as np

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f, lo, hi, xtol=1e-12):
    """Golden-section maximization of `f` on [lo, hi]; returns (x, f(x)).

    The stopping width is floored at a few ulps of the endpoints (a fixed
    absolute xtol can be unreachable on wide intervals) and the iteration
    count is capped accordingly.
    """
    a, b = float(lo), float(hi)
    if b < a:
        raise ValueError("empty interval")
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = float(f(c)), float(f(d))
    eps_floor = 8.0 * np.finfo(float).eps * max(abs(a), abs(b), 1.0)
    tol = max(xtol, eps_floor)
    max_iter = 200
    while (b - a) > tol and max_iter > 0:
        max_iter -= 1
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = float(f(c))
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = float(f(d))
    x = 0.5 * (a + b)
    return x, float(f(x))


def _newton_polish(df, x0, lo, hi, xtol, max_iter=8):
    """Newton steps on the derivative df, clamped to [lo, hi].

    The second derivative is taken by central difference of df.  Returns the
    refined point, or None when the iteration is not contracting onto a
    maximum (non-negative curvature, non-finite values).
    """
    x = float(x0)
    for _ in range(max_iter):
        g = float(df(x))
        h = 1e-6 * max(abs(x), 1.0)
        xp, xm = min(x + h, hi), max(x - h, lo)
        if xp <= xm:
            return None
        curv = (float(df(xp)) - float(df(xm))) / (xp - xm)
        if not (np.isfinite(g) and np.isfinite(curv)) or curv >= 0:
            return None
        xn = min(max(x - g / curv, lo), hi)
        if abs(xn - x) < xtol:
            return xn
        x = xn
    return x


def maximize_scalar(f, lo, hi, n_scan=1000, xtol=1e-12, df=None):
    """Maximize `f` on [lo, hi]; returns (argmax, max value).

    `f` should accept numpy arrays (used for the pre-scan); scalar-only
    callables work too.  When the analytic derivative `df` is given, the
    golden-section result is polished by a few Newton steps on it.
    """
    lo, hi = float(lo), float(hi)
    if hi < lo:
        raise ValueError("empty interval")
    if hi == lo:
        return lo, float(f(lo))
    xs = np.linspace(lo, hi, n_scan)
    with np.errstate(divide="ignore", invalid="ignore"):
        try:
            vals = np.asarray(f(xs), dtype=float)
            if vals.shape != xs.shape:
                raise TypeError
        except TypeError:
            vals = np.array([f(x) for x in xs], dtype=float)
    i = int(np.nanargmax(vals))
    a, b = xs[max(i - 1, 0)], xs[min(i + 1, n_scan - 1)]
    x, v = golden_section_max(f, a, b, xtol)
    if df is not None:
        xn = _newton_polish(df, x, a, b, xtol)
        if xn is not None:
            vn = float(f(xn))
            if vn > v:
                x, v = xn, vn
    for cand in (lo, hi):
        vc = float(f(cand))
        if vc > v:
            x, v = cand, vc
    return x, v
