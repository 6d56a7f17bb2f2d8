"""Inner fixed-point solver for the Augustin information.

The iteration maps a positive definite Q to
(sum_j p[j] W(j)^alpha / tr[W(j)^alpha Q^(1-alpha)])^(1/alpha); it is a
contraction of factor |1 - 1/alpha| in the Thompson metric on the
(1-alpha) powers, which yields a certified a-posteriori stopping bound.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import matcore
from .backends import active_backend
from .errors import InvalidParameterError, SingularInputError
from .renyi import check_prob_vector

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITERS = 10_000
# entries of p below this are treated as boundary points and rejected
P_POSITIVE_MIN = 1e-300


@dataclass
class FixedPointOutput:
    """Result of a fixed-point solve.

    ``error_bound`` is the certified a-posteriori Thompson-metric bound on
    the distance of ``q_star``'s (1-alpha) power to the true one;
    ``bounds`` holds the bound recorded at every iteration.
    """

    q_star: np.ndarray
    info: float
    grad: np.ndarray
    iterations: int
    error_bound: float
    converged: bool
    bounds: np.ndarray = field(repr=False, default=None)


def check_alpha_fixed_point(alpha):
    if not (0.5 < alpha < 1.0 or alpha > 1.0):
        raise InvalidParameterError(
            f"fixed-point solver requires alpha in (1/2, 1) or (1, inf), got {alpha}"
        )


def contraction_factor(alpha):
    """Thompson-metric contraction factor |1 - 1/alpha|."""
    check_alpha_fixed_point(alpha)
    return abs(1.0 - 1.0 / alpha)


def _check_p(p, n):
    p = check_prob_vector(p, n)
    if p.min() < P_POSITIVE_MIN:
        raise InvalidParameterError(
            "p must be strictly positive; drop zero-weight letters from the "
            "alphabet instead (this leaves the Augustin information unchanged)"
        )
    return p


def fixed_point_step(q, p, ch, alpha):
    """One application of the fixed-point map."""
    check_alpha_fixed_point(alpha)
    p = _check_p(p, ch.n)
    wa = ch.powered(alpha)
    q_pow = matcore.mat_power(q, 1.0 - alpha)
    coeff = active_backend().pair_traces(wa, np.ascontiguousarray(q_pow))
    if coeff.min() <= 0.0:
        j = int(np.argmin(coeff))
        raise SingularInputError(
            f"tr[W({j})^a Q^(1-a)] = {coeff[j]:.3e} <= 0; Q left the cone"
        )
    m = active_backend().weighted_state_sum(wa, p / coeff)
    return matcore.mat_power(m, 1.0 / alpha)


def solve_augustin(p, ch, alpha, tol=DEFAULT_TOL, max_iters=DEFAULT_MAX_ITERS):
    """Iterate from Q = I/d until the certified bound drops below ``tol``.

    Never raises on slow convergence: if the budget runs out the result
    carries ``converged=False`` and the bound that was achieved.
    """
    check_alpha_fixed_point(alpha)
    p = _check_p(p, ch.n)
    wa = ch.powered(alpha)
    backend = active_backend()
    q, q_pow, iters, bounds, status = backend.fixed_point_loop(
        wa, p, float(alpha), float(tol), int(max_iters)
    )
    if status == 2:
        raise SingularInputError(
            "fixed-point map met a non-positive normalization trace; the "
            "channel is not full-support for this alpha"
        )
    coeff = backend.pair_traces(wa, np.ascontiguousarray(q_pow))
    if coeff.min() <= 0.0:
        raise SingularInputError("final Augustin mean is singular on the channel support")
    grad = np.log(coeff) / (alpha - 1.0)
    info = float(np.dot(p, grad))
    bounds = np.array(bounds[:iters])
    return FixedPointOutput(
        q_star=q,
        info=info,
        grad=grad,
        iterations=int(iters),
        error_bound=float(bounds[-1]) if iters else 0.0,
        converged=(status == 0),
        bounds=bounds,
    )


def augustin_information(p, ch, alpha, tol=DEFAULT_TOL, max_iters=DEFAULT_MAX_ITERS):
    """Convenience wrapper returning the information estimate only."""
    return solve_augustin(p, ch, alpha, tol=tol, max_iters=max_iters).info


def aposteriori_bound(alpha, increment):
    """Certified bound from one Thompson increment: k/(1-k) * increment."""
    kappa = contraction_factor(alpha)
    if kappa >= 1.0:
        return math.inf
    return kappa / (1.0 - kappa) * increment
