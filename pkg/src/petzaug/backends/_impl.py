"""Reference implementations of the hot numeric kernels.

Every function here is written in the numba-compatible subset of numpy so
that ``backends._numba`` can wrap them with ``@njit`` unchanged.  The pure
numpy backend uses them as-is.

Status codes returned by ``fixed_point_loop``:
  0  converged (a-posteriori bound <= tol)
  1  iteration budget exhausted
  2  a normalization trace came out non-positive (singular input)
"""

import numpy as np


def weighted_state_sum(mats, w):
    """Return sum_j w[j] * mats[j] for a stack of (d, d) matrices."""
    n, d, _ = mats.shape
    out = np.zeros((d, d), dtype=np.complex128)
    for j in range(n):
        out += w[j] * mats[j]
    return out


def pair_traces(mats, x):
    """Return the real parts of Tr[mats[j] @ x] for every j."""
    n = mats.shape[0]
    out = np.empty(n)
    xt = x.T
    for j in range(n):
        out[j] = np.sum(mats[j] * xt).real
    return out


def fixed_point_loop(wa, p, alpha, tol, max_iters):
    """Iterate the Augustin-mean fixed-point map until the certified
    Thompson-metric bound drops below ``tol``.

    ``wa`` holds the alpha-powered channel states, shape (n, d, d).
    Returns (q, q_pow, iters, bounds, status) where ``q`` is the final
    iterate, ``q_pow`` its (1 - alpha) power, and ``bounds[:iters]`` the
    a-posteriori error bound recorded at each step.
    """
    n, d, _ = wa.shape
    kappa = abs(1.0 - 1.0 / alpha)
    beta = (1.0 - alpha) / alpha  # exponent sending eig(q) to eig(q^(1-a))

    # q_1 = I/d, stored through its eigendecomposition
    lam = np.full(d, 1.0 / d)
    vec = np.eye(d, dtype=np.complex128)

    bounds = np.empty(max_iters)
    iters = 0
    status = 1
    vec_h = np.conj(vec).T.copy()
    while iters < max_iters:
        # q_t^(1-alpha) from the current eigendecomposition
        q_pow = (vec * lam ** (1.0 - alpha)) @ vec_h
        coeff = np.empty(n)
        for j in range(n):
            coeff[j] = np.sum(wa[j] * q_pow.T).real
        if np.min(coeff) <= 0.0:
            status = 2
            break
        m = np.zeros((d, d), dtype=np.complex128)
        for j in range(n):
            m += (p[j] / coeff[j]) * wa[j]
        m = 0.5 * (m + m.conj().T)
        mu, u = np.linalg.eigh(m)
        u_h = np.conj(u).T.copy()
        for i in range(d):
            if mu[i] < 0.0:
                mu[i] = 0.0

        # Thompson distance between q_t^(1-a) and q_{t+1}^(1-a):
        # eigenvalues of A^{-1/2} B A^{-1/2} with A, B the two powers.
        a_inv_half = (vec * lam ** (-0.5 * (1.0 - alpha))) @ vec_h
        b_pow = (u * mu**beta) @ u_h
        s = a_inv_half @ b_pow @ a_inv_half
        s = 0.5 * (s + np.conj(s).T)
        sv, _ = np.linalg.eigh(s)
        inc = np.max(np.abs(np.log(sv)))

        lam = mu ** (1.0 / alpha)
        vec = u
        vec_h = u_h
        bounds[iters] = kappa / (1.0 - kappa) * inc
        iters += 1
        if bounds[iters - 1] <= tol:
            status = 0
            break

    q = (vec * lam) @ vec_h
    q = 0.5 * (q + np.conj(q).T)
    q_pow = (vec * lam ** (1.0 - alpha)) @ vec_h
    q_pow = 0.5 * (q_pow + np.conj(q_pow).T)
    return q, q_pow, iters, bounds, status
