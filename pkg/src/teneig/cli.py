"""Command line interface.

Subcommands: ``z`` and ``h`` track a single curve, ``zodd`` runs the
multi-pair search, ``gen`` writes one of the built-in tensors, and
``baseline`` runs the classical iterations.  Reports are JSON (stdout or
--output); ``z``/``h`` can additionally write the curve trace as CSV and
render it to a figure file.

Exit codes: 0 success, 2 input error, 3 tracking stalled, 4 budget
exhausted, 5 numerical anomaly (divergence, singular curve, failed
refinement).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import generators, serialize
from .baselines import nqz, sshopm
from .errors import (
    BudgetExceededError,
    DivergenceError,
    InputError,
    RefinementFailedError,
    SingularCurveError,
    TenEigError,
    TrackingAnomalyError,
    TrackingStalledError,
)
from .homotopy import KIND_H, KIND_Z, HomotopyProblem, draw_generator
from .multi import Provenance, find_odd_z
from .tensor import GENERAL, semi_symmetrize
from .tracking import FORWARD, TrackerConfig, track_h, track_z

_EXIT_INPUT = 2
_EXIT_STALLED = 3
_EXIT_BUDGET = 4
_EXIT_ANOMALY = 5


def _tracker_config(args) -> TrackerConfig:
    cfg = TrackerConfig()
    if getattr(args, "tol", None) is not None:
        cfg.newton_tol = args.tol
    if getattr(args, "initial_step", None) is not None:
        cfg.initial_step = args.initial_step
    if getattr(args, "max_step", None) is not None:
        cfg.max_step = args.max_step
    if getattr(args, "max_steps", None) is not None:
        cfg.max_steps = args.max_steps
    if getattr(args, "start_norm_min", None) is not None:
        cfg.generator_norm_low = args.start_norm_min
    if getattr(args, "start_norm_max", None) is not None:
        cfg.generator_norm_high = args.start_norm_max
    cfg.__post_init__()  # revalidate after overrides
    return cfg


def _load_input(args):
    tensor = serialize.read_tensor(args.input)
    if tensor.symmetry == GENERAL and not getattr(args, "raw", False):
        # trailing-mode symmetrization preserves the eigenproblem and
        # makes the single-contraction derivative available
        tensor = semi_symmetrize(tensor)
    return tensor


def _emit(payload, args) -> None:
    text = serialize.dump_json(payload)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_trace(trace, n, args, label) -> None:
    if getattr(args, "trace", None):
        serialize.write_trace_csv(trace, n, args.trace)
    if getattr(args, "plot", None):
        from .plotting import plot_trace

        plot_trace(trace, args.plot, title=label)


def _cmd_z(args) -> int:
    tensor = _load_input(args)
    cfg = _tracker_config(args)
    rng = np.random.default_rng(args.seed)
    last_error = None
    for _ in range(3):  # a non-generic start is resampled
        x1 = draw_generator(tensor.dim, rng, cfg.generator_norm_low,
                            cfg.generator_norm_high)
        problem = HomotopyProblem(tensor, x1, KIND_Z)
        try:
            pair, trace = track_z(problem, config=cfg)
            break
        except SingularCurveError as exc:
            last_error = exc
    else:
        raise last_error
    _emit(serialize.run_payload(pair, trace, Provenance(0, FORWARD)), args)
    _emit_trace(trace, tensor.dim, args, "Z-curve")
    return 0


def _cmd_h(args) -> int:
    tensor = _load_input(args)
    cfg = _tracker_config(args)
    n, m = tensor.dim, tensor.order
    if args.seed is None:
        # deterministic default: lambda_0 = 1 and a uniform start direction
        x1 = np.full(n, float(n) ** (-(m - 1) / m))
    else:
        rng = np.random.default_rng(args.seed)
        x1 = draw_generator(n, rng, cfg.generator_norm_low, cfg.generator_norm_high)
    problem = HomotopyProblem(tensor, x1, KIND_H)
    pair, trace = track_h(problem, config=cfg)
    _emit(serialize.run_payload(pair, trace, Provenance(0, FORWARD)), args)
    _emit_trace(trace, n, args, "H-curve")
    return 0


def _cmd_zodd(args) -> int:
    tensor = _load_input(args)
    cfg = _tracker_config(args)
    eset = find_odd_z(tensor, k=args.k, seed=args.seed, config=cfg,
                      threads=args.threads)
    _emit(serialize.eigenset_payload(eset), args)
    return 0


def _cmd_gen(args) -> int:
    if args.family == "laplacian":
        if args.m is None or args.n is None:
            raise InputError("gen laplacian needs --m and --n")
        tensor = generators.scaled_signless_laplacian(args.w, args.m, args.n)
    elif args.family == "pagerank":
        if args.alpha is None:
            raise InputError("gen pagerank needs --alpha")
        tensor = generators.pagerank_tensor(args.alpha)
    elif args.family == "three-eig":
        tensor = generators.three_z_eigenpair_tensor()
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown family {args.family!r}")
    serialize.write_tensor(tensor, args.output)
    return 0


def _cmd_baseline(args) -> int:
    tensor = _load_input(args)
    n = tensor.dim
    if args.seed is None:
        x0 = np.ones(n)
    else:
        rng = np.random.default_rng(args.seed)
        x0 = rng.uniform(0.5, 1.5, size=n)
    tol = args.tol if args.tol is not None else 1e-10
    if args.method == "nqz":
        report = nqz(tensor, x0, tol=tol, max_eval=args.max_eval)
    else:
        report = sshopm(tensor, args.alpha, x0, tol=tol, max_eval=args.max_eval)
    _emit(serialize.baseline_payload(report), args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="teneig",
        description="Nonnegative tensor Z/H-eigenpairs by homotopy continuation")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_tracking_flags(p, seed_default=0):
        p.add_argument("--input", "-i", required=True, help="tensor file")
        p.add_argument("--output", "-o", help="write the JSON report here (default stdout)")
        p.add_argument("--tol", type=float, help="Newton tolerance override")
        p.add_argument("--initial-step", type=float, dest="initial_step")
        p.add_argument("--max-step", type=float, dest="max_step")
        p.add_argument("--max-steps", type=int, dest="max_steps")
        p.add_argument("--start-norm-min", type=float, dest="start_norm_min",
                       help="lower end of the random start-vector norm interval")
        p.add_argument("--start-norm-max", type=float, dest="start_norm_max")
        p.add_argument("--raw", action="store_true",
                       help="skip the trailing-mode symmetrization of general input")
        p.add_argument("--seed", type=int, default=seed_default)

    pz = sub.add_parser("z", help="track one Z-curve from a random start")
    add_tracking_flags(pz)
    pz.add_argument("--trace", help="write the curve trace as CSV")
    pz.add_argument("--plot", help="render the curve to this figure file")
    pz.set_defaults(func=_cmd_z)

    ph = sub.add_parser("h", help="track the H-curve")
    add_tracking_flags(ph, seed_default=None)
    ph.add_argument("--trace", help="write the curve trace as CSV")
    ph.add_argument("--plot", help="render the curve to this figure file")
    ph.set_defaults(func=_cmd_h)

    po = sub.add_parser("zodd", help="collect an odd number of positive Z-eigenpairs")
    add_tracking_flags(po)
    po.add_argument("--k", type=int, default=4, help="number of forward starts")
    po.add_argument("--threads", type=int, default=1,
                    help="worker threads per tracking batch (default 1, deterministic)")
    po.set_defaults(func=_cmd_zodd)

    pg = sub.add_parser("gen", help="write one of the built-in tensors")
    pg.add_argument("family", choices=["laplacian", "pagerank", "three-eig"])
    pg.add_argument("--m", type=int, help="tensor order (laplacian)")
    pg.add_argument("--n", type=int, help="dimension (laplacian)")
    pg.add_argument("--w", type=float, default=1.0, help="adjacency weight (laplacian)")
    pg.add_argument("--alpha", type=float, help="teleportation mix (pagerank)")
    pg.add_argument("--output", "-o", required=True)
    pg.set_defaults(func=_cmd_gen)

    pb = sub.add_parser("baseline", help="run a classical power-type iteration")
    pb.add_argument("method", choices=["nqz", "sshopm"])
    pb.add_argument("--input", "-i", required=True)
    pb.add_argument("--output", "-o")
    pb.add_argument("--alpha", type=float, default=1.0, help="shift (sshopm)")
    pb.add_argument("--tol", type=float)
    pb.add_argument("--max-eval", type=int, default=2000, dest="max_eval")
    pb.add_argument("--raw", action="store_true")
    pb.add_argument("--seed", type=int, default=None,
                    help="randomize the start (default: uniform positive start)")
    pb.set_defaults(func=_cmd_baseline)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return _EXIT_INPUT
    except TrackingStalledError as exc:
        print(f"tracking stalled: {exc}", file=sys.stderr)
        return _EXIT_STALLED
    except BudgetExceededError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return _EXIT_BUDGET
    except (TrackingAnomalyError, DivergenceError, SingularCurveError,
            RefinementFailedError) as exc:
        print(f"numerical anomaly: {exc}", file=sys.stderr)
        return _EXIT_ANOMALY
    except TenEigError as exc:  # pragma: no cover - defensive
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_ANOMALY


if __name__ == "__main__":
    sys.exit(main())
