"""End-to-end acceptance gate.

Each test covers one numbered criterion and prints a single [PASS]/[FAIL]
line on the real stdout so the verdicts stay visible under output capture.
"""

import json
import math
import sys
import time

import numpy as np
import pytest

from petzaug import checks, cli, oracle
from petzaug.augustin import solve_augustin
from petzaug.channel import random_channel
from petzaug.renyi import objective_raw, renyi_gradient
from petzaug.solvers import SolverConfig, emd_capacity, fgm_capacity

from conftest import orthogonal_channel, record_verdict


def _report(num, label, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num} ({label}): {detail}"
    print(line, file=sys.__stdout__, flush=True)
    record_verdict(line)
    assert ok, line


def _estimate_at(trace, t):
    return next(r.capacity_estimate for r in trace if r.t == t)


def test_criterion_1_closed_form_capacity():
    ch = orthogonal_channel(4)
    target = math.log(4)
    worst = 0.0
    worst_rt = 0.0
    for alpha in (0.6, 0.9):
        t0 = time.perf_counter()
        emd = emd_capacity(ch, SolverConfig(alpha=alpha, iters=10_000, inner_tol=1e-10))
        rt_emd = time.perf_counter() - t0
        t0 = time.perf_counter()
        fgm = fgm_capacity(ch, SolverConfig(alpha=alpha, iters=1000, epsilon="balanced"))
        rt_fgm = time.perf_counter() - t0
        worst = max(worst, abs(emd.capacity - target), abs(fgm.capacity - target))
        worst_rt = max(worst_rt, rt_emd, rt_fgm)
    ok = worst <= 1e-3 and worst_rt < 30.0
    _report(
        1,
        "closed-form capacity",
        ok,
        f"worst |capacity - log 4| = {worst:.3e} (allowed 1e-3), "
        f"worst runtime {worst_rt:.1f}s (allowed 30s)",
    )


def test_criterion_2_emd_rate():
    checkpoints = (10, 100, 1000)
    worst_margin = -math.inf
    worst_rt = 0.0
    for seed in range(5):
        ch = random_channel(16, 8, seed)
        t0 = time.perf_counter()
        for alpha in (0.6, 0.75, 0.9):
            run = emd_capacity(ch, SolverConfig(alpha=alpha, iters=1000))
            ref = fgm_capacity(ch, SolverConfig(alpha=alpha, iters=2000, epsilon=1e-9))
            c_ref = max(ref.capacity, run.capacity)
            for t in checkpoints:
                err = c_ref - _estimate_at(run.trace, t + 1)
                worst_margin = max(worst_margin, err - math.log(16) / t)
        worst_rt = max(worst_rt, time.perf_counter() - t0)
    ok = worst_margin <= 2e-10 and worst_rt < 120.0
    _report(
        2,
        "mirror-descent log(n)/T rate",
        ok,
        f"worst error minus log(16)/T = {worst_margin:.3e} (allowed 2e-10), "
        f"worst per-channel runtime {worst_rt:.1f}s (allowed 120s)",
    )


def test_criterion_3_contraction():
    t0 = time.perf_counter()
    report = checks.contraction_suite()
    rt = time.perf_counter() - t0
    ok = report.ok and rt < 60.0
    _report(3, "fixed-point contraction", ok, f"{report.summary}; runtime {rt:.1f}s (allowed 60s)")


def test_criterion_4_holder_suite():
    t0 = time.perf_counter()
    report = checks.holder_suite(trials=1000)
    rt = time.perf_counter() - t0
    ok = report.ok and rt < 120.0
    _report(4, "gradient Holder bound", ok, f"{report.summary}; runtime {rt:.1f}s (allowed 120s)")


def test_criterion_5_relative_smoothness():
    t0 = time.perf_counter()
    report = checks.relsmooth_suite(trials=500, inner_tol=1e-10)
    rt = time.perf_counter() - t0
    ok = (
        report.ok
        and report.worst["worst_violation"] <= 4e-10
        and rt < 300.0
    )
    _report(5, "relative smoothness", ok, f"{report.summary}; runtime {rt:.1f}s (allowed 300s)")


def test_criterion_6_oracle_agreement():
    t0 = time.perf_counter()
    report = checks.oracle_suite(num_channels=10, alphas=(0.6, 0.9), step=1e-4, tol=2e-4)
    rt = time.perf_counter() - t0
    ok = report.ok and rt < 180.0
    _report(6, "grid-oracle agreement", ok, f"{report.summary}; runtime {rt:.1f}s (allowed 180s)")


def test_criterion_7_gradient_checks():
    t0 = time.perf_counter()
    rng = np.random.default_rng(0)
    h = 1e-6
    worst_rel = 0.0
    for trial in range(50):
        n, d = int(rng.integers(3, 9)), int(rng.integers(2, 7))
        ch = random_channel(n, d, seed=trial)
        alpha = float(rng.uniform(0.5, 0.95))
        wa = ch.powered(alpha)
        p = rng.dirichlet(np.ones(n))
        p = np.clip(p, 1e-6, None)
        p /= p.sum()
        grad = renyi_gradient(p, ch, alpha)
        fd = np.empty(n)
        for j in range(n):
            e = np.zeros(n)
            e[j] = h
            fd[j] = (
                objective_raw(p + e, wa, alpha) - objective_raw(p - e, wa, alpha)
            ) / (2 * h)
        worst_rel = max(worst_rel, float(np.max(np.abs(grad - fd)) / np.max(np.abs(grad))))

    # envelope check of the inner-solver gradient: simplex-preserving
    # directional derivatives of the Augustin information
    worst_dir = 0.0
    hs = 1e-5
    for trial in range(10):
        ch = random_channel(4, 3, seed=100 + trial)
        rng2 = np.random.default_rng(trial)
        p = rng2.dirichlet(np.ones(4))
        p = np.clip(p, 1e-3, None)
        p /= p.sum()
        for alpha in (0.7, 2.0):
            out = solve_augustin(p, ch, alpha, tol=1e-10)
            for j, k in ((0, 1), (1, 2), (2, 3)):
                e = np.zeros(4)
                e[j], e[k] = hs, -hs
                plus = solve_augustin(p + e, ch, alpha, tol=1e-10).info
                minus = solve_augustin(p - e, ch, alpha, tol=1e-10).info
                fd_dir = (plus - minus) / (2 * hs)
                worst_dir = max(worst_dir, abs(fd_dir - (out.grad[j] - out.grad[k])))
    rt = time.perf_counter() - t0
    ok = worst_rel <= 1e-5 and worst_dir <= 1e-4 and rt < 120.0
    _report(
        7,
        "gradient finite differences",
        ok,
        f"objective-gradient worst relative error {worst_rel:.3e} (allowed 1e-5); "
        f"inner-solver directional-derivative worst error {worst_dir:.3e} "
        f"(allowed 1e-4); runtime {rt:.1f}s (allowed 120s)",
    )


def test_criterion_8_method_ordering_tendency():
    t0 = time.perf_counter()
    n, d, T = 16, 8, 1000
    seeds = (1, 2, 3)
    results = {}
    for alpha in (0.6, 0.9):
        for seed in seeds:
            ch = random_channel(n, d, seed)
            bal = fgm_capacity(ch, SolverConfig(alpha=alpha, iters=T, epsilon="balanced"))
            tiny = fgm_capacity(ch, SolverConfig(alpha=alpha, iters=T, epsilon=1e-9))
            emd = emd_capacity(ch, SolverConfig(alpha=alpha, iters=T))
            ref = fgm_capacity(ch, SolverConfig(alpha=alpha, iters=3 * T, epsilon=1e-9))
            c_ref = max(bal.capacity, tiny.capacity, emd.capacity, ref.capacity)
            results[(alpha, seed)] = {
                "fgm_balanced": c_ref - bal.final_capacity,
                "fgm_tiny": c_ref - tiny.final_capacity,
                "emd": c_ref - emd.final_capacity,
            }
    rt = time.perf_counter() - t0

    bal_wins_06 = sum(
        results[(0.6, s)]["fgm_balanced"] < results[(0.6, s)]["emd"] for s in seeds
    )
    emd_wins_09 = sum(
        results[(0.9, s)]["emd"] < results[(0.9, s)]["fgm_balanced"] for s in seeds
    )
    tiny_never_worse = all(
        results[(a, s)]["fgm_tiny"] <= results[(a, s)]["fgm_balanced"] + 1e-15
        for a in (0.6, 0.9)
        for s in seeds
    )
    ok = bal_wins_06 >= 2 and emd_wins_09 >= 2 and tiny_never_worse and rt < 600.0
    _report(
        8,
        "empirical method ordering",
        ok,
        f"alpha=0.6 accelerated-balanced beats mirror descent on {bal_wins_06}/3 "
        f"seeds (need >= 2); alpha=0.9 mirror descent beats accelerated-balanced "
        f"on {emd_wins_09}/3 seeds (need >= 2); tiny-epsilon never worse than "
        f"balanced: {tiny_never_worse}; runtime {rt:.0f}s (allowed 600s)",
    )


def test_criterion_9_range_and_determinism(tmp_path):
    ch = random_channel(6, 4, seed=3)
    violations = []
    for alpha in (0.6, 0.9):
        fgm = fgm_capacity(ch, SolverConfig(alpha=alpha, iters=200))
        emd = emd_capacity(ch, SolverConfig(alpha=alpha, iters=200))
        for res, name in ((fgm, "fgm"), (emd, "emd")):
            p = res.p
            if p.min() <= 0 or abs(p.sum() - 1.0) > 1e-12:
                violations.append(f"{name} alpha={alpha}: iterate off the simplex")
            for r in res.trace:
                if not -1e-8 <= r.capacity_estimate <= math.log(ch.d) + 1e-8:
                    violations.append(
                        f"{name} alpha={alpha}: estimate {r.capacity_estimate} out of range"
                    )
                    break
        for r in fgm.trace:
            if not 0.0 < r.objective <= 1.0 + 1e-12:
                violations.append(f"fgm alpha={alpha}: objective {r.objective} outside (0, 1]")
                break

    # determinism: identical manifests -> identical numeric trace columns
    # (wall-clock elapsed_s excluded as timing, not computation)
    chfile = tmp_path / "ch.json"
    assert cli.main(["gen", "--n", "5", "--d", "3", "--seed", "11", "--out", str(chfile)]) == 0
    args = ["capacity", "--algo", "fgm", "--alpha", "0.6", "--iters", "100",
            "--channel", str(chfile)]
    assert cli.main(args + ["--out-prefix", str(tmp_path / "a")]) == 0
    assert cli.main(args + ["--out-prefix", str(tmp_path / "b")]) == 0

    def numeric_columns(path):
        lines = path.read_text().splitlines()
        manifest = lines[0]
        rows = [line.split(",") for line in lines[2:]]
        return manifest, [[r[0], r[2], r[3], r[4]] for r in rows]

    man_a, rows_a = numeric_columns(tmp_path / "a.trace.csv")
    man_b, rows_b = numeric_columns(tmp_path / "b.trace.csv")
    if man_a != man_b:
        violations.append("identical configs produced different manifest ids")
    if rows_a != rows_b:
        violations.append("identical manifests produced different trace numbers")
    sum_a = json.loads((tmp_path / "a.summary.json").read_text())
    sum_b = json.loads((tmp_path / "b.summary.json").read_text())
    if sum_a["capacity"] != sum_b["capacity"]:
        violations.append("identical manifests produced different capacities")

    ok = not violations
    _report(
        9,
        "range and determinism invariants",
        ok,
        "all iterates feasible, estimates in range, reruns bitwise equal"
        if ok
        else "; ".join(violations),
    )
