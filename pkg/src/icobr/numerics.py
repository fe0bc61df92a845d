"""Scalar maximization: uniform grid scan followed by golden-section
refinement of the best bracket.

The objectives optimized here (relay power split, bandwidth split) are
built from a handful of concave capacity curves combined through min(),
so they are piecewise smooth with at most a few kinks.  The grid stage
provides global coverage at grid resolution; the golden-section stage
resolves the winning bracket to ``tol``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

#: grid size / tolerance used by every power- and bandwidth-split search
DEFAULT_GRID_N = 1001
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class OptResult:
    """Best point found: x_star in the search interval, f_star = f(x_star),
    and the number of objective evaluations spent."""

    x_star: float
    f_star: float
    evals: int


def _grid_values(f, vector_f, xs: np.ndarray) -> np.ndarray:
    if vector_f is not None:
        return np.asarray(vector_f(xs), dtype=float)
    return np.array([f(float(x)) for x in xs], dtype=float)


def maximize_scalar(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    grid_n: int = DEFAULT_GRID_N,
    tol: float = DEFAULT_TOL,
    vector_f: Callable[[np.ndarray], Sequence[float]] | None = None,
) -> OptResult:
    """Maximize ``f`` on [lo, hi].

    Evaluates f on a uniform grid of ``grid_n`` points, then refines the
    bracket around the best grid point (its two neighbours) by
    golden-section search until the bracket is narrower than ``tol``.
    The result is within ``tol`` of a local maximum and within one grid
    cell of the global maximizer; f need not be unimodal.  Deterministic:
    identical inputs give identical output, and the refinement never
    leaves the initial bracket.

    ``vector_f``, when given, must agree with ``f`` and is used to
    evaluate the whole grid in one call.
    """
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise ValueError(f"need finite lo < hi, got [{lo!r}, {hi!r}]")
    if grid_n < 3:
        raise ValueError(f"grid_n must be >= 3, got {grid_n}")

    xs = np.linspace(lo, hi, grid_n)
    fs = _grid_values(f, vector_f, xs)
    if fs.shape != xs.shape:
        raise ValueError("vector_f returned wrong shape")
    if not np.all(np.isfinite(fs)):
        bad = xs[~np.isfinite(fs)][0]
        raise ValueError(f"objective is not finite at x={bad!r}")
    evals = int(grid_n)

    i = int(np.argmax(fs))
    best_x, best_f = float(xs[i]), float(fs[i])

    a = float(xs[max(i - 1, 0)])
    b = float(xs[min(i + 1, grid_n - 1)])

    def consider(x: float, fx: float):
        nonlocal best_x, best_f
        if fx > best_f:
            best_x, best_f = x, fx

    # Golden-section refinement inside [a, b]; tracks every evaluated point
    # so f_star can never fall below the grid maximum.
    if b - a > tol:
        c = b - _INV_PHI * (b - a)
        d = a + _INV_PHI * (b - a)
        fc, fd = f(c), f(d)
        evals += 2
        if not (math.isfinite(fc) and math.isfinite(fd)):
            bad = c if not math.isfinite(fc) else d
            raise ValueError(f"objective is not finite at x={bad!r}")
        consider(c, fc)
        consider(d, fd)
        while b - a > tol:
            if fc >= fd:
                b, d, fd = d, c, fc
                c = b - _INV_PHI * (b - a)
                fc = f(c)
            else:
                a, c, fc = c, d, fd
                d = a + _INV_PHI * (b - a)
                fd = f(d)
            evals += 1
            if not math.isfinite(fc) or not math.isfinite(fd):
                bad = c if not math.isfinite(fc) else d
                raise ValueError(f"objective is not finite at x={bad!r}")
            consider(c, fc)
            consider(d, fd)
        mid = 0.5 * (a + b)
        fmid = f(mid)
        evals += 1
        if not math.isfinite(fmid):
            raise ValueError(f"objective is not finite at x={mid!r}")
        consider(mid, fmid)

    return OptResult(x_star=best_x, f_star=best_f, evals=evals)
