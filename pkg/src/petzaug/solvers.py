"""The two capacity algorithms and the shared entropic-prox machinery.

``emd_capacity`` runs entropic mirror descent on the negative Augustin
information with the fixed-point solver as its first-order oracle
(Blahut-Arimoto-type scheme, O(log(n)/T) error).  ``fgm_capacity`` runs the
universal fast gradient method on the exponentiated Renyi objective
(O(T^(1-1.5/alpha)) with the balanced epsilon schedule).

Both maintain iterates through their logarithms so weights stay strictly
positive under long runs.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .augustin import solve_augustin
from .errors import InvalidParameterError, NotConvergedError, NumericalError
from .renyi import objective_raw, value_and_gradient_raw

MAX_LINE_SEARCH_DEPTH = 200
# floor keeping the FGM line-search constant from underflowing when the
# accept test passes at depth 0 for thousands of consecutive iterations
L_FLOOR = 1e-12


@dataclass
class SolverConfig:
    """Shared run configuration.

    ``epsilon`` is either the string "balanced" (schedule
    log(n)^(0.5/alpha) * T^(1-1.5/alpha)) or a positive float; it only
    affects the fast gradient method.
    """

    alpha: float
    iters: int = 1000
    epsilon: object = "balanced"
    inner_tol: float = 1e-10
    seed: int = 0
    record_every: int = 1

    def __post_init__(self):
        if self.iters < 1:
            raise InvalidParameterError("iters must be >= 1")
        if self.record_every < 1:
            raise InvalidParameterError("record_every must be >= 1")
        if not isinstance(self.epsilon, str):
            if not float(self.epsilon) > 0:
                raise InvalidParameterError("fixed epsilon must be positive")
        elif self.epsilon != "balanced":
            raise InvalidParameterError(f"unknown epsilon policy {self.epsilon!r}")


@dataclass
class TraceRecord:
    """One logged iterate: objective is g~ (FGM) or the negative Augustin
    information (EMD); aux is the line-search depth (FGM) or the certified
    inner bound (EMD)."""

    t: int
    elapsed: float
    objective: float
    capacity_estimate: float
    aux: float


@dataclass
class FgmState:
    """Line-search bookkeeping of the fast gradient method."""

    L: float
    A: float
    t: int
    last_depth: int
    weighted_grads: np.ndarray = field(repr=False, default=None)


@dataclass
class SolverResult:
    p: np.ndarray
    capacity: float
    final_capacity: float
    trace: list
    epsilon: float | None = None
    state: FgmState | None = None


def bregman_prox(z, v, eta):
    """Entropic mirror step z * exp(-eta v), renormalized.

    Computed in the log domain with max subtraction.
    """
    z = np.asarray(z, dtype=float)
    v = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(v)):
        raise InvalidParameterError("direction vector has non-finite entries")
    if not eta > 0:
        raise InvalidParameterError(f"eta must be positive, got {eta}")
    if z.min() <= 0:
        raise InvalidParameterError("z must be strictly positive")
    return _softmax(np.log(z) - eta * v)


def _softmax(logw):
    logw = logw - logw.max()
    w = np.exp(logw)
    return w / w.sum()


def epsilon_balanced(n, alpha, T):
    """Balanced smoothing tolerance log(n)^(0.5/alpha) * T^(1-1.5/alpha)."""
    if n < 2:
        raise InvalidParameterError("need n >= 2 so that log(n) > 0")
    if T < 1:
        raise InvalidParameterError("need T >= 1")
    if not 0.5 <= alpha < 1.0:
        raise InvalidParameterError(f"alpha must lie in [1/2, 1), got {alpha}")
    return math.log(n) ** (0.5 / alpha) * T ** (1.0 - 1.5 / alpha)


def _resolve_epsilon(cfg, n):
    if isinstance(cfg.epsilon, str):
        return epsilon_balanced(n, cfg.alpha, cfg.iters)
    return float(cfg.epsilon)


def _should_record(t, total, every):
    return t == 1 or t == total or (t - 1) % every == 0


def emd_capacity(ch, cfg):
    """Entropic mirror descent on the negative Augustin information.

    Requires alpha in (1/2, 1).  Step size 1 (the objective is 1-smooth
    relative to negative entropy).  The reported capacity is the largest
    information value among recorded iterates.
    """
    if not 0.5 < cfg.alpha < 1.0:
        raise InvalidParameterError(
            f"emd_capacity requires alpha in (1/2, 1), got {cfg.alpha}"
        )
    n = ch.n
    logp = np.full(n, -math.log(n))
    trace = []
    best = -math.inf
    start = time.perf_counter()
    for t in range(1, cfg.iters + 2):
        p = _softmax(logp)
        # long runs drive dropped letters below the double-precision floor;
        # keep the iterate strictly positive (weights this small are inert)
        p = np.maximum(p, 1e-290)
        p /= p.sum()
        out = solve_augustin(p, ch, cfg.alpha, tol=cfg.inner_tol)
        if not out.converged:
            raise NotConvergedError(
                f"inner fixed-point solver stalled at iterate {t} "
                f"(achieved bound {out.error_bound:.3e} > {cfg.inner_tol:g})",
                achieved_bound=out.error_bound,
            )
        if _should_record(t, cfg.iters + 1, cfg.record_every):
            trace.append(
                TraceRecord(
                    t=t,
                    elapsed=time.perf_counter() - start,
                    objective=-out.info,
                    capacity_estimate=out.info,
                    aux=out.error_bound,
                )
            )
            best = max(best, out.info)
        if t == cfg.iters + 1:
            break
        # gradient of the *negative* information; eta = 1/L with L = 1
        logp = logp - (-out.grad)
        logp = logp - logp.max()
    return SolverResult(
        p=_softmax(logp),
        capacity=best,
        final_capacity=trace[-1].capacity_estimate,
        trace=trace,
    )


def fgm_capacity(ch, cfg):
    """Universal fast gradient method on the exponentiated Renyi objective.

    Requires alpha in [1/2, 1).  The dual iterate q_t minimizes the
    accumulated linear model plus the Bregman divergence to the uniform
    start, which keeps it strictly positive (a purely linear model would
    pin q_t to a simplex vertex and stall the entropic prox).
    """
    alpha = cfg.alpha
    if not 0.5 <= alpha < 1.0:
        raise InvalidParameterError(
            f"fgm_capacity requires alpha in [1/2, 1), got {alpha}"
        )
    n = ch.n
    wa = ch.powered(alpha)
    eps = _resolve_epsilon(cfg, n)
    info_of = lambda value: alpha / (1.0 - alpha) * (-math.log(value))

    logp1 = np.full(n, -math.log(n))
    p = np.exp(logp1)
    g_p, grad_p1 = value_and_gradient_raw(p, wa, alpha)
    weighted = grad_p1.copy()  # accumulated weighted gradients (weight 1 at t=1)
    L, A = 1.0, 0.0
    trace = []
    best = -math.inf
    start = time.perf_counter()

    def record(t, value, depth):
        nonlocal best
        est = info_of(value)
        if _should_record(t, cfg.iters + 1, cfg.record_every):
            trace.append(
                TraceRecord(
                    t=t,
                    elapsed=time.perf_counter() - start,
                    objective=value,
                    capacity_estimate=est,
                    aux=float(depth),
                )
            )
            best = max(best, est)

    record(1, g_p, 0)
    depth = 0
    for t in range(1, cfg.iters + 1):
        logq = logp1 - weighted
        q = _softmax(logq)
        depth = 0
        while True:
            a = (1.0 + math.sqrt(1.0 + 2.0 ** (depth + 2) * A)) / (2.0 ** (depth + 1) * L)
            a_new = A + a
            tau = a / a_new
            p_mid = tau * q + (1.0 - tau) * p
            g_mid, grad_mid = value_and_gradient_raw(p_mid, wa, alpha)
            p_hat = _softmax(logq - a * grad_mid)
            p_next = tau * p_hat + (1.0 - tau) * p
            g_next = objective_raw(p_next, wa, alpha)
            gap = g_mid + float(np.dot(grad_mid, p_next - p_mid))
            quad = 2.0 ** (depth - 1) * L * float(np.sum(np.abs(p_next - p_mid))) ** 2
            if g_next <= gap + quad + 0.5 * eps * tau:
                break
            depth += 1
            if depth > MAX_LINE_SEARCH_DEPTH:
                raise NumericalError(
                    f"FGM line search exceeded depth {MAX_LINE_SEARCH_DEPTH} at "
                    f"iterate {t}; the gradient is inconsistent or epsilon is 0"
                )
        p, g_p = p_next, g_next
        A = a_new
        L = max(2.0 ** (depth - 1) * L, L_FLOOR)
        weighted = weighted + a * grad_mid
        record(t + 1, g_p, depth)
    return SolverResult(
        p=p,
        capacity=best,
        final_capacity=info_of(g_p),
        trace=trace,
        epsilon=eps,
        state=FgmState(L=L, A=A, t=cfg.iters, last_depth=depth, weighted_grads=weighted),
    )


@dataclass
class SmoothnessReport:
    trials: int
    worst_violation: float
    slack: float

    @property
    def ok(self):
        return self.worst_violation <= self.slack


def relative_smoothness_check(ch, alpha, trials=500, inner_tol=1e-10, seed=0):
    """Midpoint-convexity probe of (negative entropy) - (negative Augustin
    information), which is convex when the objective is 1-relatively smooth.

    Each trial draws p, q from a Dirichlet and checks
    phi((p+q)/2) <= (phi(p) + phi(q))/2 up to 4 * inner_tol oracle slack.
    """
    if not 0.5 <= alpha < 1.0:
        raise InvalidParameterError(f"alpha must lie in [1/2, 1), got {alpha}")
    rng = np.random.default_rng(seed)
    h = lambda x: float(np.dot(x, np.log(x)))

    def phi(x):
        # h - g with g = -info, so phi = h + info
        return h(x) + solve_augustin(x, ch, alpha, tol=inner_tol).info

    worst = -math.inf
    for _ in range(trials):
        p = rng.dirichlet(np.ones(ch.n))
        q = rng.dirichlet(np.ones(ch.n))
        p = np.clip(p, 1e-12, None)
        p /= p.sum()
        q = np.clip(q, 1e-12, None)
        q /= q.sum()
        mid = 0.5 * (p + q)
        worst = max(worst, phi(mid) - 0.5 * (phi(p) + phi(q)))
    return SmoothnessReport(trials=trials, worst_violation=worst, slack=4.0 * inner_tol)
