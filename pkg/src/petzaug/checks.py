"""Runnable property suites for the analytic guarantees the solvers rely on.

Each suite returns a report with an ``ok`` flag, a human summary, and the
worst counterexample found, so the CLI can serialize failures.  The
acceptance tests drive the same code.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import matcore, oracle
from .augustin import contraction_factor, fixed_point_step, solve_augustin
from .channel import ClassicalChannel, embed_classical, random_channel
from .renyi import holder_constants, renyi_gradient
from .solvers import SolverConfig, fgm_capacity, relative_smoothness_check

HOLDER_SLACK = 1e-9
CONTRACTION_SLACK = 0.02
# distances to the numerically computed fixed point below this are dominated
# by the reference solve's own error; excluded from ratio measurements
RATIO_FLOOR = 1e-9
# certified bounds below this sit on the eigensolver roundoff floor and are
# excluded from the decay-slope fit
SLOPE_FLOOR = 1e-13


@dataclass
class SuiteReport:
    name: str
    ok: bool
    summary: str
    worst: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "suite": self.name,
            "passed": self.ok,
            "summary": self.summary,
            "worst": self.worst,
        }


def _dirichlet_interior(rng, n, floor=1e-9):
    p = rng.dirichlet(np.ones(n))
    p = np.clip(p, floor, None)
    return p / p.sum()


def holder_suite(trials=1000, seed=0, alphas=(0.5, 0.6, 0.9)):
    """Gradient-difference bound: ||grad(p1) - grad(p2)||_inf must not
    exceed (1/alpha) ||p1 - p2||_1 ^ ((1-alpha)/alpha) plus slack."""
    rng = np.random.default_rng(seed)
    channels = [
        random_channel(16, 8, seed),
        random_channel(8, 4, seed + 1),
        random_channel(4, 2, seed + 2),
    ]
    worst = {"violation": -math.inf}
    violations = 0
    for alpha in alphas:
        params = holder_constants(alpha)
        for ci, ch in enumerate(channels):
            for _ in range(trials):
                p1 = _dirichlet_interior(rng, ch.n)
                p2 = _dirichlet_interior(rng, ch.n)
                lhs = float(
                    np.max(np.abs(renyi_gradient(p1, ch, alpha) - renyi_gradient(p2, ch, alpha)))
                )
                rhs = params.L * float(np.sum(np.abs(p1 - p2))) ** params.nu
                v = lhs - rhs
                if v > worst["violation"]:
                    worst = {
                        "violation": v,
                        "alpha": alpha,
                        "channel": ci,
                        "lhs": lhs,
                        "rhs": rhs,
                    }
                if v > HOLDER_SLACK:
                    violations += 1
    ok = violations == 0
    return SuiteReport(
        "holder",
        ok,
        f"{violations} violations over {trials} pairs x {len(channels)} channels "
        f"x {len(alphas)} alphas; worst slack use {worst['violation']:.3e}",
        worst,
    )


def _fit_slope(ts, ys):
    ts = np.asarray(ts, dtype=float)
    ys = np.asarray(ys, dtype=float)
    a = np.vstack([ts, np.ones_like(ts)]).T
    slope, _ = np.linalg.lstsq(a, ys, rcond=None)[0]
    return float(slope)


def contraction_suite(
    seed=0,
    num_seeds=5,
    alphas=(0.6, 0.75, 0.9, 2.0),
    n=8,
    d=4,
    steps=50,
):
    """Per-step Thompson ratios must stay below the contraction factor, and
    the certified bound must decay at least that fast geometrically."""
    worst = {"excess": -math.inf}
    ok = True
    details = []
    for alpha in alphas:
        kappa = contraction_factor(alpha)
        for inst in range(seed, seed + num_seeds):
            ch = random_channel(n, d, inst)
            rng = np.random.default_rng(inst + 1000)
            p = _dirichlet_interior(rng, n, floor=1e-6)
            ref = solve_augustin(p, ch, alpha, tol=1e-13, max_iters=20_000)
            q_ref_pow = matcore.mat_power(ref.q_star, 1.0 - alpha)

            q = np.eye(d, dtype=np.complex128) / d
            dist = matcore.thompson_metric(matcore.mat_power(q, 1.0 - alpha), q_ref_pow)
            max_ratio = 0.0
            for _ in range(steps):
                q = fixed_point_step(q, p, ch, alpha)
                new_dist = matcore.thompson_metric(
                    matcore.mat_power(q, 1.0 - alpha), q_ref_pow
                )
                if dist > RATIO_FLOOR:
                    max_ratio = max(max_ratio, new_dist / dist)
                dist = new_dist
                if dist <= RATIO_FLOOR:
                    break

            run = solve_augustin(p, ch, alpha, tol=0.0, max_iters=steps)
            usable = [
                (t + 1, math.log(b))
                for t, b in enumerate(run.bounds)
                if t + 1 >= 5 and b > SLOPE_FLOOR
            ]
            slope = _fit_slope(*zip(*usable)) if len(usable) >= 5 else -math.inf
            ratio_excess = max_ratio - kappa
            slope_excess = slope - math.log(kappa)
            details.append((alpha, inst, max_ratio, slope))
            excess = max(ratio_excess, slope_excess)
            if excess > worst["excess"]:
                worst = {
                    "excess": excess,
                    "alpha": alpha,
                    "seed": inst,
                    "max_ratio": max_ratio,
                    "kappa": kappa,
                    "slope": slope,
                }
            if excess > CONTRACTION_SLACK:
                ok = False
    return SuiteReport(
        "contraction",
        ok,
        f"{len(details)} instances; worst excess over |1-1/alpha| is "
        f"{worst['excess']:.3e} (allowed {CONTRACTION_SLACK})",
        worst,
    )


def relsmooth_suite(trials=500, seed=0, alpha=0.6, n=8, d=4, inner_tol=1e-10):
    """Midpoint convexity of (negative entropy) + (Augustin information)."""
    ch = random_channel(n, d, seed)
    rep = relative_smoothness_check(ch, alpha, trials=trials, inner_tol=inner_tol, seed=seed)
    return SuiteReport(
        "relsmooth",
        rep.ok,
        f"worst midpoint-convexity violation {rep.worst_violation:.3e} over "
        f"{rep.trials} trials (allowed {rep.slack:.1e})",
        {"worst_violation": rep.worst_violation, "slack": rep.slack},
    )


def random_binary_channel(rng):
    """Full-support 2-input / 2-output classical channel."""
    r = rng.uniform(0.05, 0.95, size=2)
    return ClassicalChannel(np.column_stack([r, 1.0 - r]))


def oracle_suite(num_channels=10, alphas=(0.6, 0.9), step=1e-4, seed=0, tol=2e-4):
    """Solver capacity and Augustin values must match the grid baselines."""
    rng = np.random.default_rng(seed)
    grid = oracle.GridSpec(step=step, dimension=2)
    worst = {"error": -math.inf}
    ok = True
    for ci in range(num_channels):
        cc = random_binary_channel(rng)
        ch = embed_classical(cc)
        for alpha in alphas:
            brute_cap = oracle.brute_capacity_classical(cc, alpha, grid)
            res = fgm_capacity(ch, SolverConfig(alpha=alpha, iters=3000, epsilon=1e-9))
            cap_err = abs(res.capacity - brute_cap.value)

            p = np.full(cc.n, 1.0 / cc.n)
            brute_info = oracle.brute_augustin_classical(p, cc, alpha, grid)
            info = solve_augustin(p, ch, alpha, tol=1e-10).info
            info_err = abs(info - brute_info.value)

            err = max(cap_err, info_err)
            if err > worst["error"]:
                worst = {
                    "error": err,
                    "channel": ci,
                    "alpha": alpha,
                    "capacity_error": cap_err,
                    "augustin_error": info_err,
                }
            if err > tol:
                ok = False
    return SuiteReport(
        "oracle",
        ok,
        f"{num_channels} binary channels x {len(alphas)} alphas; worst "
        f"disagreement {worst['error']:.3e} (allowed {tol})",
        worst,
    )


SUITES = {
    "holder": holder_suite,
    "contraction": contraction_suite,
    "relsmooth": relsmooth_suite,
    "oracle": oracle_suite,
}
