"""Rate regions as systems of linear inequalities over named nonnegative
variables, with Fourier-Motzkin elimination, projection, linear
maximization and membership tests.

A system holds rows ``coeffs . x <= rhs``; every variable additionally
carries an implicit nonnegativity constraint ``x >= 0``.  Coefficients
are floats with a global zero tolerance of 1e-12, which is safe here
because all constructed coefficients are 0 or +-1 and the capacities
enter only through the right-hand sides.  Redundancy removal is
syntactic (vacuous rows, duplicates, domination between rows with
identical coefficients); the systems in this package stay tiny, so no
LP-grade pruning is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

#: zero test for coefficients in pairing and pruning decisions
ZERO_TOL = 1e-12


class InfeasibleSystemError(ValueError):
    """Raised when elimination or pruning exposes a row 0 <= rhs < 0."""


@dataclass(frozen=True, eq=False)
class LinearRateSystem:
    """Inequality system ``coeffs @ x <= rhs`` with implicit ``x >= 0``."""

    vars: tuple[str, ...]
    coeffs: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        variables = tuple(str(v) for v in self.vars)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        coeffs = np.asarray(self.coeffs, dtype=float)
        rhs = np.atleast_1d(np.asarray(self.rhs, dtype=float))
        if coeffs.ndim == 1:
            # one row, or an empty row list
            coeffs = (coeffs.reshape(1, -1) if coeffs.size
                      else coeffs.reshape(0, len(variables)))
        if rhs.shape[0] == 0:
            coeffs = coeffs.reshape(0, len(variables))
        if coeffs.shape != (rhs.shape[0], len(variables)):
            raise ValueError(
                f"shape mismatch: {coeffs.shape} rows over {len(variables)} vars "
                f"with {rhs.shape[0]} right-hand sides"
            )
        if not (np.all(np.isfinite(coeffs)) and np.all(np.isfinite(rhs))):
            raise ValueError("coefficients and right-hand sides must be finite")
        coeffs.setflags(write=False)
        rhs.setflags(write=False)
        object.__setattr__(self, "vars", variables)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "rhs", rhs)

    @property
    def n_rows(self) -> int:
        return self.coeffs.shape[0]

    def index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise ValueError(f"unknown variable {var!r}; have {self.vars}") from None


def make_system(variables: Sequence[str],
                rows: Iterable[tuple[Mapping[str, float] | Sequence[float], float]]
                ) -> LinearRateSystem:
    """Build a system from (coefficients, rhs) rows; coefficients may be a
    mapping from variable name to value (missing names are 0) or a full
    vector aligned with ``variables``."""
    variables = tuple(variables)
    coeffs, rhs = [], []
    for row, bound in rows:
        if isinstance(row, Mapping):
            unknown = set(row) - set(variables)
            if unknown:
                raise ValueError(f"unknown variable names {sorted(unknown)}")
            vec = [float(row.get(v, 0.0)) for v in variables]
        else:
            vec = [float(c) for c in row]
            if len(vec) != len(variables):
                raise ValueError(f"coefficient vector {vec} does not match {variables}")
        coeffs.append(vec)
        rhs.append(float(bound))
    return LinearRateSystem(variables, np.array(coeffs, dtype=float).reshape(len(rhs), len(variables)), np.array(rhs, dtype=float))


def prune_redundant(sys: LinearRateSystem) -> LinearRateSystem:
    """Drop vacuous rows (all-zero coefficients, rhs >= 0), duplicates and
    rows dominated by an identical-coefficient row with smaller rhs.
    Raises InfeasibleSystemError on an all-zero row with rhs < 0."""
    coeffs, rhs = sys.coeffs, sys.rhs
    zero_rows = np.all(np.abs(coeffs) <= ZERO_TOL, axis=1)
    if np.any(zero_rows & (rhs < -ZERO_TOL)):
        bad = float(rhs[zero_rows & (rhs < -ZERO_TOL)][0])
        raise InfeasibleSystemError(f"system contains the row 0 <= {bad}")
    keep_mask = ~zero_rows
    coeffs, rhs = coeffs[keep_mask], rhs[keep_mask]
    if coeffs.shape[0] > 1:
        # group rows with identical coefficient vectors, keep the smallest rhs
        same = np.all(np.abs(coeffs[:, None, :] - coeffs[None, :, :]) <= ZERO_TOL, axis=2)
        keep = []
        for i in range(coeffs.shape[0]):
            js = np.nonzero(same[i])[0]
            winner = js[np.argmin(rhs[js])]
            if i == winner:
                keep.append(i)
        coeffs, rhs = coeffs[keep], rhs[keep]
    return LinearRateSystem(sys.vars, coeffs, rhs)


def fm_eliminate(sys: LinearRateSystem, var: str) -> LinearRateSystem:
    """Project out one variable by Fourier-Motzkin elimination.

    The implicit nonnegativity of ``var`` joins the system as ``-var <= 0``
    before pairing.  Every (positive, negative) coefficient pair combines
    into one row; rows with zero coefficient carry over.  The solution set
    of the result is exactly the projection of the input.
    """
    j = sys.index(var)
    coeffs = np.vstack([sys.coeffs, -np.eye(len(sys.vars))[j]])
    rhs = np.concatenate([sys.rhs, [0.0]])

    col = coeffs[:, j]
    pos = col > ZERO_TOL
    neg = col < -ZERO_TOL
    rest = ~(pos | neg)

    upper = coeffs[pos] / col[pos, None]      # rows giving var <= ...
    upper_rhs = rhs[pos] / col[pos]
    lower = coeffs[neg] / (-col[neg, None])   # rows giving var >= ...
    lower_rhs = rhs[neg] / (-col[neg])

    combined = (upper[:, None, :] + lower[None, :, :]).reshape(-1, coeffs.shape[1])
    combined_rhs = (upper_rhs[:, None] + lower_rhs[None, :]).reshape(-1)

    new_coeffs = np.vstack([combined, coeffs[rest]])
    new_rhs = np.concatenate([combined_rhs, rhs[rest]])

    # rescale each row by its largest |coefficient| so duplicates produced
    # by different pairings collapse in the pruning step
    keep_cols = [k for k in range(len(sys.vars)) if k != j]
    new_coeffs = new_coeffs[:, keep_cols]
    scale = np.max(np.abs(new_coeffs), axis=1, initial=0.0)
    nz = scale > ZERO_TOL
    new_coeffs[nz] /= scale[nz, None]
    new_rhs = np.where(nz, new_rhs / np.where(nz, scale, 1.0), new_rhs)

    out = LinearRateSystem(tuple(v for v in sys.vars if v != var), new_coeffs, new_rhs)
    return prune_redundant(out)


def _elimination_cost(sys: LinearRateSystem, var: str) -> int:
    col = sys.coeffs[:, sys.index(var)]
    n_pos = int(np.sum(col > ZERO_TOL))
    n_neg = int(np.sum(col < -ZERO_TOL)) + 1  # + implicit nonnegativity row
    return n_pos * n_neg


def project(sys: LinearRateSystem, keep: Iterable[str],
            order: Sequence[str] | None = None) -> LinearRateSystem:
    """Eliminate every variable not in ``keep``.

    Without an explicit ``order`` the variable with the fewest pairings is
    eliminated first (greedy); each elimination step prunes the result.
    """
    keep = set(keep)
    unknown = keep - set(sys.vars)
    if unknown:
        raise ValueError(f"unknown variable names {sorted(unknown)}")
    to_drop = [v for v in sys.vars if v not in keep]
    if order is not None:
        order = list(order)
        if sorted(order) != sorted(to_drop):
            raise ValueError(f"order {order} must be a permutation of {to_drop}")
    out = prune_redundant(sys)
    while to_drop:
        if order is not None:
            var = order.pop(0)
        else:
            var = min(to_drop, key=lambda v: _elimination_cost(out, v))
        to_drop.remove(var)
        out = fm_eliminate(out, var)
    return out


def max_linear(sys: LinearRateSystem, objective: Sequence[float]) -> float:
    """Maximum of ``objective . x`` over the system.

    Introduces s = objective . x through a pair of opposing inequalities,
    projects onto {s} and reads off the least upper bound.  Assumes the
    optimum is nonnegative (true for every rate objective here, since the
    origin is feasible).  Raises on an unbounded objective or an
    infeasible system.
    """
    obj = np.asarray(objective, dtype=float)
    if obj.shape != (len(sys.vars),):
        raise ValueError(f"objective {obj} does not match variables {sys.vars}")
    aug_vars = sys.vars + ("_objective",)
    aug_coeffs = np.zeros((sys.n_rows + 2, len(aug_vars)))
    aug_coeffs[: sys.n_rows, :-1] = sys.coeffs
    aug_coeffs[sys.n_rows, :-1] = obj
    aug_coeffs[sys.n_rows, -1] = -1.0
    aug_coeffs[sys.n_rows + 1, :-1] = -obj
    aug_coeffs[sys.n_rows + 1, -1] = 1.0
    aug_rhs = np.concatenate([sys.rhs, [0.0, 0.0]])
    projected = project(LinearRateSystem(aug_vars, aug_coeffs, aug_rhs), {"_objective"})

    col = projected.coeffs[:, 0]
    ub_rows = col > ZERO_TOL
    if not np.any(ub_rows):
        raise ValueError("objective is unbounded over the region")
    return float(np.min(projected.rhs[ub_rows] / col[ub_rows]))


def contains(sys: LinearRateSystem, point, tol: float = 0.0):
    """Membership test with +tol slack on every inequality and on the
    nonnegativity constraints.  ``point`` may be one vector or an
    (n_points, n_vars) array; returns a bool or a bool array."""
    pts = np.asarray(point, dtype=float)
    single = pts.ndim == 1
    pts2 = np.atleast_2d(pts)
    if pts2.shape[1] != len(sys.vars):
        raise ValueError(f"point dimension {pts2.shape[1]} != {len(sys.vars)} vars")
    ok = np.all(pts2 @ sys.coeffs.T <= sys.rhs + tol, axis=1)
    ok &= np.all(pts2 >= -tol, axis=1)
    return bool(ok[0]) if single else ok


def membership_disagreements(sys_a: LinearRateSystem, sys_b: LinearRateSystem,
                             points, tol: float = 1e-9) -> np.ndarray:
    """Indices of points strictly inside one system (margin ``tol``) and
    strictly outside the other.  Points within ``tol`` of either boundary
    never count as disagreements."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    in_a, in_b = contains(sys_a, pts, -tol), contains(sys_b, pts, -tol)
    out_a, out_b = ~contains(sys_a, pts, tol), ~contains(sys_b, pts, tol)
    return np.nonzero((in_a & out_b) | (in_b & out_a))[0]


def format_system(sys: LinearRateSystem) -> str:
    """Debug text dump, one inequality per line:
    ``c1*v1 + c2*v2 ... <= rhs`` with variables in declared order."""
    lines = []
    for row, bound in zip(sys.coeffs, sys.rhs):
        parts = []
        for c, v in zip(row, sys.vars):
            if abs(c) <= ZERO_TOL:
                continue
            if not parts:
                parts.append(f"{c:.9g}*{v}")
            elif c < 0:
                parts.append(f"- {-c:.9g}*{v}")
            else:
                parts.append(f"+ {c:.9g}*{v}")
        lhs = " ".join(parts) if parts else "0"
        lines.append(f"{lhs} <= {bound:.9g}")
    return "\n".join(lines)
