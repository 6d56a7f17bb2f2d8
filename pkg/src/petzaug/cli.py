"""Command-line front end.

Subcommands: gen (random channel file), capacity (one solver run with CSV
trace + JSON summary), augustin (inner solver query), reproduce (the
three-method comparison figures), check (property suites).

Exit codes: 0 success, 2 usage error, 3 numerical failure, 4 property
violation.
"""

import argparse
import concurrent.futures
import hashlib
import json
import os
import sys
import tempfile
import time
from datetime import datetime, timezone

import numpy as np

from . import __version__, checks
from .augustin import solve_augustin
from .channel import channel_hash, load_channel, random_channel, save_channel
from .errors import InvalidParameterError, PetzAugError
from .solvers import SolverConfig, emd_capacity, epsilon_balanced, fgm_capacity

EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_PROPERTY = 4


def _atomic_write(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".petzaug-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def _now():
    return datetime.now(timezone.utc).isoformat()


def _manifest(config, ch_hash, outputs):
    return {
        "version": __version__,
        "config": config,
        "channel_hash": ch_hash,
        "started": _now(),
        "outputs": outputs,
    }


def _manifest_id(manifest):
    key = json.dumps({"config": manifest["config"], "channel_hash": manifest["channel_hash"]}, sort_keys=True)
    return hashlib.sha256(key.encode()).hexdigest()[:16]


def _fmt(x):
    return f"{x:.17g}"


def _trace_csv(trace, manifest):
    lines = [f"# manifest {_manifest_id(manifest)}", "t,elapsed_s,objective,capacity_estimate,aux"]
    for r in trace:
        lines.append(
            f"{r.t},{_fmt(r.elapsed)},{_fmt(r.objective)},{_fmt(r.capacity_estimate)},{_fmt(r.aux)}"
        )
    return "\n".join(lines) + "\n"


def cmd_gen(args):
    if args.n < 1 or args.d < 1:
        raise InvalidParameterError("--n and --d must be >= 1")
    ch = random_channel(args.n, args.d, args.seed)
    save_channel(ch, args.out)
    print(f"wrote {args.out} (n={ch.n}, d={ch.d}, seed={args.seed})")
    return 0


def _run_solver(ch, algo, cfg):
    if algo == "emd":
        return emd_capacity(ch, cfg)
    return fgm_capacity(ch, cfg)


def cmd_capacity(args):
    ch = load_channel(args.channel)
    epsilon = args.epsilon if args.epsilon == "balanced" else float(args.epsilon)
    cfg = SolverConfig(
        alpha=args.alpha,
        iters=args.iters,
        epsilon=epsilon,
        inner_tol=args.inner_tol,
        seed=args.seed,
        record_every=args.record_every,
    )
    config_echo = {
        "algo": args.algo,
        "alpha": cfg.alpha,
        "iters": cfg.iters,
        "epsilon": cfg.epsilon if isinstance(cfg.epsilon, str) else float(cfg.epsilon),
        "inner_tol": cfg.inner_tol,
        "seed": cfg.seed,
        "record_every": cfg.record_every,
    }
    prefix = args.out_prefix
    outputs = [f"{prefix}.trace.csv", f"{prefix}.summary.json"]
    manifest = _manifest(config_echo, channel_hash(ch), outputs)
    start = time.perf_counter()
    result = _run_solver(ch, args.algo, cfg)
    runtime = time.perf_counter() - start
    manifest["finished"] = _now()
    _atomic_write(outputs[0], _trace_csv(result.trace, manifest))
    summary = {
        "capacity": result.final_capacity,
        "best_capacity": result.capacity,
        "alpha": cfg.alpha,
        "algo": args.algo,
        "iters": cfg.iters,
        "epsilon": result.epsilon if result.epsilon is not None else config_echo["epsilon"],
        "inner_tol": cfg.inner_tol,
        "seed": cfg.seed,
        "channel_hash": channel_hash(ch),
        "runtime_s": runtime,
        "manifest": manifest,
    }
    _atomic_write(outputs[1], json.dumps(summary, indent=2) + "\n")
    print(f"capacity {result.final_capacity:.12g} (best {result.capacity:.12g}) -> {prefix}.*")
    return 0


def cmd_augustin(args):
    ch = load_channel(args.channel)
    if args.p == "uniform":
        p = np.full(ch.n, 1.0 / ch.n)
    else:
        p = np.asarray(json.load(open(args.p)), dtype=float)
    out = solve_augustin(p, ch, args.alpha, tol=args.tol, max_iters=args.max_iters)
    doc = {
        "info": out.info,
        "grad": list(out.grad),
        "error_bound": out.error_bound,
        "iterations": out.iterations,
        "converged": out.converged,
    }
    print(json.dumps(doc, indent=2))
    return 0 if out.converged else EXIT_NUMERICAL


def _reproduce_methods(alpha, iters, n):
    return {
        "fgm-balanced": ("fgm", SolverConfig(alpha=alpha, iters=iters, epsilon="balanced")),
        "fgm-1e-9": ("fgm", SolverConfig(alpha=alpha, iters=iters, epsilon=1e-9)),
        "blahut-arimoto": ("emd", SolverConfig(alpha=alpha, iters=iters, inner_tol=1e-10)),
    }


def cmd_reproduce(args):
    alpha = {1: 0.6, 2: 0.9}[args.figure]
    n, d = (128, 32) if args.scale == "large" else (16, 8)
    iters = args.iters
    ch = random_channel(n, d, args.seed)
    os.makedirs(args.out_dir, exist_ok=True)

    methods = _reproduce_methods(alpha, iters, n)
    ref_cfg = SolverConfig(alpha=alpha, iters=3 * iters, epsilon=1e-9)

    with concurrent.futures.ThreadPoolExecutor(max_workers=3) as pool:
        futures = {
            name: pool.submit(_run_solver, ch, algo, cfg)
            for name, (algo, cfg) in methods.items()
        }
        ref_future = pool.submit(fgm_capacity, ch, ref_cfg)
        results = {name: f.result() for name, f in futures.items()}
        reference = ref_future.result()

    c_ref = max(
        [reference.capacity] + [r.capacity for r in results.values()]
    )
    curves = {}
    for name, res in results.items():
        (algo, cfg) = methods[name]
        config_echo = {"method": name, "alpha": alpha, "iters": iters, "n": n, "d": d, "seed": args.seed}
        manifest = _manifest(config_echo, channel_hash(ch), [])
        path = os.path.join(args.out_dir, f"figure{args.figure}_{name}.csv")
        _atomic_write(path, _trace_csv(res.trace, manifest))
        curves[name] = (
            [r.t for r in res.trace],
            [max(c_ref - r.capacity_estimate, 1e-16) for r in res.trace],
        )
        print(f"{name}: final error {curves[name][1][-1]:.3e} -> {path}")

    svg_path = os.path.join(args.out_dir, f"figure{args.figure}.svg")
    _plot_curves(curves, alpha, svg_path)
    print(f"wrote {svg_path}")
    return 0


def _plot_curves(curves, alpha, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4.5))
    for name, (ts, errs) in curves.items():
        ax.loglog(ts, errs, label=name)
    ax.set_xlabel("iteration")
    ax.set_ylabel("optimization error")
    ax.set_title(f"Petz-Augustin capacity, order {alpha}")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def cmd_check(args):
    names = list(checks.SUITES) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        kwargs = {"seed": args.seed}
        if name in ("holder", "relsmooth") and args.trials:
            kwargs["trials"] = args.trials
        report = checks.SUITES[name](**kwargs)
        reports.append(report)
        print(f"[{'PASS' if report.ok else 'FAIL'}] {report.name}: {report.summary}")
    doc = [r.to_json() for r in reports]
    if args.json_out:
        _atomic_write(args.json_out, json.dumps(doc, indent=2) + "\n")
    if not all(r.ok for r in reports):
        worst = next(r for r in reports if not r.ok)
        print(f"worst counterexample: {json.dumps(worst.worst)}", file=sys.stderr)
        return EXIT_PROPERTY
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="petzaug", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random channel file")
    g.add_argument("--n", type=int, default=128)
    g.add_argument("--d", type=int, default=32)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("capacity", help="run one capacity solver")
    c.add_argument("--algo", choices=["fgm", "emd"], required=True)
    c.add_argument("--alpha", type=float, required=True)
    c.add_argument("--iters", type=int, default=1000)
    c.add_argument("--epsilon", default="balanced")
    c.add_argument("--inner-tol", type=float, default=1e-10)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--record-every", type=int, default=1)
    c.add_argument("--channel", required=True)
    c.add_argument("--out-prefix", default="run")
    c.set_defaults(func=cmd_capacity)

    a = sub.add_parser("augustin", help="query the inner fixed-point solver")
    a.add_argument("--alpha", type=float, required=True)
    a.add_argument("--p", default="uniform", help="'uniform' or a JSON file with weights")
    a.add_argument("--tol", type=float, default=1e-10)
    a.add_argument("--max-iters", type=int, default=10_000)
    a.add_argument("--channel", required=True)
    a.set_defaults(func=cmd_augustin)

    r = sub.add_parser("reproduce", help="three-method comparison plots")
    r.add_argument("--figure", type=int, choices=[1, 2], required=True)
    r.add_argument("--seed", type=int, default=1)
    r.add_argument("--scale", choices=["large", "desk"], default="desk")
    r.add_argument("--iters", type=int, default=1000)
    r.add_argument("--out-dir", default="reproduce-out")
    r.set_defaults(func=cmd_reproduce)

    k = sub.add_parser("check", help="run randomized property-check suites")
    k.add_argument("--suite", choices=["holder", "contraction", "relsmooth", "oracle", "all"], default="all")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--trials", type=int, default=None)
    k.add_argument("--json-out", default=None)
    k.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidParameterError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PetzAugError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
