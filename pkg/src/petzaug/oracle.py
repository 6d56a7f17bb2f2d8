"""Grid-search baselines certifying solver outputs on small classical
channels.  Everything here works on the scalar (diagonal) formulas, which
is lossless for commuting channels."""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError

COARSE_STEP = 0.1


@dataclass(frozen=True)
class GridSpec:
    step: float
    dimension: int

    def __post_init__(self):
        if not 0.0 < self.step <= 0.5:
            raise InvalidParameterError(f"grid step must lie in (0, 0.5], got {self.step}")


@dataclass
class OracleResult:
    value: float
    argopt: np.ndarray
    step: float
    lipschitz_bound: float
    coarse_warning: bool

    @property
    def accuracy(self):
        return self.lipschitz_bound * self.step


def simplex_grid(n, step):
    """All points of the simplex with coordinates k * step (k integer)."""
    m = round(1.0 / step)
    if n == 1:
        return np.ones((1, 1))
    if n == 2:
        k = np.arange(m + 1)
        return np.column_stack([k, m - k]) / m
    if n == 3:
        pts = [
            (i, j, m - i - j) for i in range(m + 1) for j in range(m + 1 - i)
        ]
        return np.array(pts, dtype=float) / m
    raise InvalidParameterError(f"simplex grids are supported up to dimension 3, got {n}")


def scalar_renyi_information(p, rows_pow, alpha):
    """Information value for a classical channel from the alpha-powered
    rows; vectorized over a batch of p."""
    p = np.atleast_2d(p)
    s = p @ rows_pow  # (batch, d) mixture of powered rows
    g = np.sum(s ** (1.0 / alpha), axis=1)
    return alpha / (alpha - 1.0) * np.log(g)


def scalar_petz_divergence(a, q, alpha):
    """Classical Renyi divergence between probability vectors."""
    a = np.asarray(a, dtype=float)
    q = np.asarray(q, dtype=float)
    mask = a > 0
    with np.errstate(divide="ignore"):
        tr = float(np.sum(a[mask] ** alpha * q[mask] ** (1.0 - alpha)))
    if tr <= 0 or not math.isfinite(tr):
        return math.inf
    return math.log(tr) / (alpha - 1.0)


def _check_alpha(alpha):
    if not (0.0 < alpha < 1.0 or alpha > 1.0):
        raise InvalidParameterError(f"alpha must be positive and != 1, got {alpha}")


def brute_capacity_classical(cc, alpha, grid):
    """Max of the information over a simplex grid of input distributions."""
    _check_alpha(alpha)
    if cc.n > 3:
        raise InvalidParameterError("grid capacity oracle supports n <= 3 only")
    coarse = grid.step > COARSE_STEP
    if coarse:
        warnings.warn(f"grid step {grid.step} > {COARSE_STEP} is coarse", stacklevel=2)
    pts = simplex_grid(cc.n, grid.step)
    rows_pow = cc.rows**alpha
    vals = scalar_renyi_information(pts, rows_pow, alpha)
    k = int(np.argmax(vals))
    lip = _max_neighbor_slope(vals, grid.step)
    return OracleResult(float(vals[k]), pts[k], grid.step, lip, coarse)


def brute_augustin_classical(p, cc, alpha, grid):
    """Min over a grid of diagonal reference states q of the p-weighted
    divergence sum."""
    _check_alpha(alpha)
    if cc.d > 3:
        raise InvalidParameterError("grid Augustin oracle supports d <= 3 only")
    coarse = grid.step > COARSE_STEP
    if coarse:
        warnings.warn(f"grid step {grid.step} > {COARSE_STEP} is coarse", stacklevel=2)
    p = np.asarray(p, dtype=float)
    pts = simplex_grid(cc.d, grid.step)
    rows_pow = cc.rows**alpha  # (n, d)
    with np.errstate(divide="ignore"):
        # (grid, n): tr terms sum_i a_i^alpha q_i^(1-alpha)
        tr = pts ** (1.0 - alpha) @ rows_pow.T
        vals = (np.log(tr) / (alpha - 1.0)) @ p
    vals = np.where(np.isfinite(vals), vals, np.inf)
    k = int(np.argmin(vals))
    finite = vals[np.isfinite(vals)]
    lip = _max_neighbor_slope(finite, grid.step)
    return OracleResult(float(vals[k]), pts[k], grid.step, lip, coarse)


def _max_neighbor_slope(vals, step):
    """Measured Lipschitz proxy: largest successive change per grid step
    along the sweep order."""
    if len(vals) < 2:
        return 0.0
    return float(np.max(np.abs(np.diff(vals))) / step)
