"""Exponentiated Renyi objective, its gradient, and the Holder constants.

The objective is tr[(sum_j p[j] W(j)^alpha)^(1/alpha)], a convex function of
p on the simplex for alpha in (0, 1).  The information functional is the
(alpha/(alpha-1)) log of it.
"""

from dataclasses import dataclass

import numpy as np

from . import matcore
from .backends import active_backend
from .errors import InvalidParameterError, SingularInputError

SIMPLEX_TOL = 1e-12
# mixtures with min eigenvalue below this (relative to the max) are treated
# as support-deficient when a positive-definite mixture is required
SUPPORT_RTOL = 1e-13


@dataclass(frozen=True)
class HolderParams:
    """Holder smoothness exponent and constant of the objective in l1."""

    nu: float
    L: float


def check_prob_vector(p, n=None):
    """Validate a simplex point; returns it as a float array."""
    p = np.asarray(p, dtype=float)
    if n is not None and p.shape != (n,):
        raise InvalidParameterError(f"expected a length-{n} vector, got shape {p.shape}")
    if p.min() < 0:
        raise InvalidParameterError(f"negative weight {p.min():.3e}")
    if abs(p.sum() - 1.0) > SIMPLEX_TOL:
        raise InvalidParameterError(f"weights sum to {p.sum()!r}, not 1")
    return p


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise InvalidParameterError(f"alpha must lie in (0, 1), got {alpha}")


def _mixture_spectrum(p, wa):
    backend = active_backend()
    m = backend.weighted_state_sum(wa, np.asarray(p, dtype=float))
    return matcore.herm_eig(m)


def objective_raw(p, wa, alpha):
    """tr[(sum p[j] wa[j])^(1/alpha)] for arbitrary nonnegative weights.

    Skips simplex validation; used by finite-difference probes that step off
    the simplex.
    """
    lam, _ = _mixture_spectrum(p, wa)
    lam = matcore.clip_psd_spectrum(lam)
    return float(np.sum(lam ** (1.0 / alpha)))


def value_and_gradient_raw(p, wa, alpha):
    """Objective value and gradient in one eigendecomposition."""
    lam, u = _mixture_spectrum(p, wa)
    lam = matcore.clip_psd_spectrum(lam)
    if lam.min() <= SUPPORT_RTOL * max(lam.max(), 1e-300):
        raise SingularInputError(
            "mixture of powered states is singular; restrict the input "
            "alphabet to the support of p"
        )
    value = float(np.sum(lam ** (1.0 / alpha)))
    x = (u * lam ** (1.0 / alpha - 1.0)) @ u.conj().T
    grad = active_backend().pair_traces(wa, np.ascontiguousarray(x)) / alpha
    return value, grad


def renyi_objective(p, ch, alpha):
    """Exponentiated objective; lies in (0, 1] on the simplex."""
    _check_alpha(alpha)
    p = check_prob_vector(p, ch.n)
    return objective_raw(p, ch.powered(alpha), alpha)


def renyi_gradient(p, ch, alpha):
    """Gradient of the exponentiated objective; every entry positive."""
    _check_alpha(alpha)
    p = check_prob_vector(p, ch.n)
    _, grad = value_and_gradient_raw(p, ch.powered(alpha), alpha)
    return grad


def renyi_information(p, ch, alpha):
    """Order-alpha information, (alpha/(alpha-1)) log of the objective."""
    value = renyi_objective(p, ch, alpha)
    return alpha / (alpha - 1.0) * np.log(value)


def holder_constants(alpha):
    """Holder smoothness parameters ((1-alpha)/alpha, 1/alpha) of the
    objective in the l1 norm, valid for alpha in [1/2, 1)."""
    if not 0.5 <= alpha < 1.0:
        raise InvalidParameterError(
            f"Holder constants are established for alpha in [1/2, 1), got {alpha}"
        )
    return HolderParams(nu=(1.0 - alpha) / alpha, L=1.0 / alpha)


def holder_ratio(p1, p2, ch, alpha):
    """Measured ratio ||grad difference||_inf / ||p1-p2||_1^nu.

    The established constant is 1/alpha; empirical ratios let users judge
    how conservative it is.
    """
    params = holder_constants(alpha)
    g1 = renyi_gradient(p1, ch, alpha)
    g2 = renyi_gradient(p2, ch, alpha)
    num = float(np.max(np.abs(g1 - g2)))
    den = float(np.sum(np.abs(np.asarray(p1) - np.asarray(p2))) ** params.nu)
    return num / den if den > 0 else 0.0
