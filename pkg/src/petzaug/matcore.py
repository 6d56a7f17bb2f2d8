"""Hermitian matrix functions, norms, metrics, and the Petz-Renyi divergence.

All functions are pure and operate on plain complex numpy arrays.  Inputs
claimed Hermitian are symmetrized defensively before eigensolves; inputs
claimed positive semidefinite go through the eigenvalue clipping rule below
before fractional powers are taken.
"""

import hashlib
import math

import numpy as np

from .errors import EigensolveError, InvalidParameterError, SingularInputError

# Default tolerances; functions accept overrides where it matters.
HERMITICITY_TOL = 1e-12
PSD_EIG_TOL = 1e-10
TRACE_TOL = 1e-10
# Eigenvalues in [-CLIP_TOL, 0) clip to 0 before fractional powers; anything
# below -CLIP_TOL on a claimed-PSD input is a hard error.
CLIP_TOL = 1e-12
PD_MIN_EIG = 1e-14


def matrix_hash(h):
    """Short content hash used in eigensolve diagnostics."""
    return hashlib.sha256(np.ascontiguousarray(h).tobytes()).hexdigest()[:16]


def is_hermitian(h, tol=HERMITICITY_TOL):
    return np.max(np.abs(h - h.conj().T)) <= tol


def herm_eig(h):
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, unitary of column eigenvectors).
    """
    h = np.asarray(h, dtype=np.complex128)
    try:
        lam, u = np.linalg.eigh(0.5 * (h + h.conj().T))
    except np.linalg.LinAlgError as exc:
        raise EigensolveError(
            f"eigensolve did not converge (matrix {matrix_hash(h)})",
            matrix_hash=matrix_hash(h),
        ) from exc
    return lam, u


def clip_psd_spectrum(lam, clip_tol=CLIP_TOL):
    """Apply the PSD clipping rule: roundoff negatives snap to 0, genuine
    negatives are rejected."""
    lam = np.asarray(lam, dtype=float)
    if lam.min() < -clip_tol:
        raise SingularInputError(
            f"claimed-PSD matrix has eigenvalue {lam.min():.3e} < -{clip_tol:g}"
        )
    return np.where((lam < 0.0) & (lam >= -clip_tol), 0.0, lam)


def mat_fun(h, f):
    """Apply the scalar function ``f`` to ``h`` through its spectrum."""
    lam, u = herm_eig(h)
    flam = np.array([f(x) for x in lam], dtype=float)
    if not np.all(np.isfinite(flam)):
        bad = lam[~np.isfinite(flam)][0]
        raise SingularInputError(f"f is not finite at eigenvalue {bad:.6e}")
    out = (u * flam) @ u.conj().T
    return 0.5 * (out + out.conj().T)


def mat_power(h, r, clip_tol=CLIP_TOL):
    """Fractional/negative power of a claimed-PSD matrix with clipping.

    Zero eigenvalues are fine for r > 0 (0**r = 0) and raise for r < 0.
    """
    lam, u = herm_eig(h)
    lam = clip_psd_spectrum(lam, clip_tol)
    if r < 0 and lam.min() == 0.0:
        raise SingularInputError(
            f"negative power {r:g} of a singular matrix (eigenvalue 0)"
        )
    plam = lam**r
    out = (u * plam) @ u.conj().T
    return 0.5 * (out + out.conj().T)


def schatten_norm(h, r):
    """Schatten r-norm; r = numpy.inf gives the spectral norm."""
    if not (r >= 1.0):
        raise InvalidParameterError(f"Schatten order must satisfy r >= 1, got {r}")
    lam, _ = herm_eig(h)
    a = np.abs(lam)
    if math.isinf(r):
        return float(a.max())
    return float(np.sum(a**r) ** (1.0 / r))


def thompson_metric(v, u, min_eig=PD_MIN_EIG):
    """Thompson metric on the positive-definite cone.

    Computed as max_i |log mu_i| over the eigenvalues of the similarity
    transform v^{-1/2} u v^{-1/2}.
    """
    lv, uv = herm_eig(v)
    lu, _ = herm_eig(u)
    if lv.min() <= min_eig or lu.min() <= min_eig:
        raise SingularInputError(
            f"thompson_metric requires positive definite inputs "
            f"(min eigenvalues {lv.min():.3e}, {lu.min():.3e})"
        )
    v_inv_half = (uv * lv**-0.5) @ uv.conj().T
    s = v_inv_half @ u @ v_inv_half
    mu, _ = herm_eig(s)
    return float(np.max(np.abs(np.log(mu))))


def petz_renyi_divergence(a, q, alpha):
    """Petz-Renyi divergence of order alpha between PSD matrices.

    Returns math.inf whenever the trace term is non-positive or the required
    matrix power does not exist (e.g. alpha > 1 with singular q).
    """
    if alpha == 1.0:
        raise InvalidParameterError("petz_renyi_divergence requires alpha != 1")
    if alpha <= 0.0:
        raise InvalidParameterError(f"alpha must be positive, got {alpha}")
    try:
        a_pow = mat_power(a, alpha)
        q_pow = mat_power(q, 1.0 - alpha)
    except SingularInputError:
        return math.inf
    tr = float(np.trace(a_pow @ q_pow).real)
    if tr <= 0.0 or not math.isfinite(tr):
        return math.inf
    return math.log(tr) / (alpha - 1.0)
