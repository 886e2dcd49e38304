"""Curve trackers for the two homotopies.

Z-kind curves can fold back in t, so they are followed with a
pseudo-arclength scheme: unit tangent, Euler predictor, Newton corrector
on the system bordered by the tangent hyperplane.  Sign changes of the
tangent's t-component are the curve's turning points.  H-kind curves are
monotone in t, so plain parameter continuation (Euler predictor, fixed-t
Newton corrector) is enough there.

Both trackers count one evaluation per contraction of the target tensor:
an ``A x^{m-1}`` and a derivative pass each cost one, and every combined
residual/Jacobian build therefore adds two.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import (
    BudgetExceededError,
    DivergenceError,
    InputError,
    RefinementFailedError,
    SingularCurveError,
    TrackingAnomalyError,
    TrackingStalledError,
)
from .homotopy import (
    KIND_H,
    KIND_Z,
    CurvePoint,
    HomotopyProblem,
    jacobian_wrt_state,
    jacobian_wrt_t,
    start_eigenpair,
)
from .tensor import apply, derivative, z_bound

FORWARD = "forward"
BACKWARD = "backward"


@dataclass
class TrackerConfig:
    """Step-control and tolerance knobs shared by both trackers."""

    newton_tol: float = 1e-12
    max_newton_iters: int = 10
    initial_step: float = 0.05
    min_step: float = 1e-8
    max_step: float = 0.25
    step_grow: float = 1.5
    step_shrink: float = 0.5
    max_steps: int = 5000
    escape_radius: float | None = None  # default: 10 * z_bound(target) + 10
    seed: int = 0
    generator_norm_low: float = 0.9
    generator_norm_high: float = 1.1

    def __post_init__(self):
        if not (0 < self.min_step <= self.initial_step <= self.max_step):
            raise InputError("need 0 < min_step <= initial_step <= max_step")
        if self.newton_tol <= 0:
            raise InputError("newton_tol must be positive")
        if self.max_newton_iters < 1 or self.max_steps < 1:
            raise InputError("iteration budgets must be at least 1")
        if not (1 < self.step_grow and 0 < self.step_shrink < 1):
            raise InputError("need step_grow > 1 and 0 < step_shrink < 1")
        if not (0 < self.generator_norm_low <= self.generator_norm_high):
            raise InputError("generator norm interval must satisfy 0 < low <= high")


@dataclass
class EigenPair:
    """A refined eigenpair of the target tensor."""

    lam: float
    x: np.ndarray
    residual: float
    det_sign: int
    kind: str


@dataclass
class CurveTrace:
    """Accepted points, unit tangents, turning points and the work done."""

    points: list = field(default_factory=list)
    tangents: list = field(default_factory=list)
    turning_points: list = field(default_factory=list)  # (point index, t)
    evaluations: int = 0


class _EvalCounter:
    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def add(self, k: int):
        self.count += k


def lu_det_sign(matrix, rel_tol: float = 1e-12) -> int:
    """Sign of det via LU with partial pivoting; 0 when numerically singular."""
    m = np.asarray(matrix, dtype=np.float64)
    scale = np.linalg.norm(m, np.inf)
    if scale == 0 or not np.isfinite(scale):
        return 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        lu, piv = scipy.linalg.lu_factor(m, check_finite=False)
    diag = np.diag(lu)
    if np.abs(diag).min() < rel_tol * scale:
        return 0
    flips = int((diag < 0).sum()) + int((piv != np.arange(piv.size)).sum())
    return -1 if flips % 2 else 1


def _fused_system(problem, x, lam, t, counter):
    """Residual, state Jacobian and t-column in one pass over the target.

    Shares the single ``A x^{m-1}`` contraction between the residual and
    the t-column; costs two evaluations (one apply, one derivative).
    """
    x1 = problem.start_generator
    m = problem.order
    n = problem.dim
    counter.add(2)
    ya = apply(problem.target, x)
    da = derivative(problem.target, x)
    s = x1 @ x
    r1vec = s ** (m - 1) * x1
    top = (1.0 - t) * r1vec + t * ya
    block = (1.0 - t) * (m - 1) * s ** (m - 2) * np.outer(x1, x1) + t * da
    jac = np.zeros((n + 1, n + 1))
    if problem.kind == KIND_Z:
        top = top - lam * x
        block = block - lam * np.eye(n)
        jac[:n, n] = -x
    else:
        xm2 = x ** (m - 2)
        top = top - lam * xm2 * x
        block = block - (m - 1) * lam * np.diag(xm2)
        jac[:n, n] = -(xm2 * x)
    jac[:n, :n] = block
    jac[n, :n] = 2.0 * x
    res = np.concatenate([top, [x @ x - 1.0]])
    jt = np.concatenate([ya - r1vec, [0.0]])
    return res, jac, jt


def _null_tangent(jac_full, border):
    """Unit null vector of the (n+1) x (n+2) curve Jacobian, oriented by border."""
    nfull = jac_full.shape[1]
    bordered = np.vstack([jac_full, border[None, :]])
    rhs = np.zeros(nfull)
    rhs[-1] = 1.0
    w = None
    try:
        cand = np.linalg.solve(bordered, rhs)
        if np.all(np.isfinite(cand)):
            nw = np.linalg.norm(cand)
            if nw > 0:
                cand = cand / nw
                scale = max(1.0, np.linalg.norm(jac_full, np.inf))
                if np.linalg.norm(jac_full @ cand) <= 1e-8 * scale:
                    w = cand
    except np.linalg.LinAlgError:
        pass
    if w is None:
        # border nearly orthogonal to the tangent, or bordered matrix
        # ill-conditioned: fall back to the SVD null space.
        _, sv, vh = np.linalg.svd(jac_full)
        if sv[-1] <= 1e-12 * max(sv[0], 1.0):
            raise SingularCurveError("curve Jacobian is rank-deficient")
        w = vh[-1]
        if w @ border < 0:
            w = -w
    return w


def tangent_z(problem, x, lam, t, prev_tangent=None, orientation=1.0):
    """Unit tangent of the Z-curve at (x, lambda, t).

    Oriented to keep a positive inner product with ``prev_tangent`` when
    given; otherwise the t-component takes the sign of ``orientation``.
    """
    x = np.asarray(x, dtype=np.float64)
    js = jacobian_wrt_state(problem, x, lam, t)
    jt = jacobian_wrt_t(problem, x, lam, t)
    jac_full = np.hstack([js, jt[:, None]])
    if prev_tangent is None:
        border = np.zeros(x.size + 2)
        border[-1] = 1.0 if orientation >= 0 else -1.0
    else:
        border = np.asarray(prev_tangent, dtype=np.float64)
    return _null_tangent(jac_full, border)


@dataclass
class _NewtonResult:
    x: np.ndarray
    lam: float
    res_norm: float
    jac_state: np.ndarray
    converged: bool
    iters: int
    singular: bool = False


def _newton_fixed_t(problem, x, lam, t, cfg, counter) -> _NewtonResult:
    """Newton on H(., ., t) = 0 with t frozen; the square (n+1) system."""
    n = problem.dim
    x = np.asarray(x, dtype=np.float64).copy()
    lam = float(lam)
    first_norm = None
    for it in range(cfg.max_newton_iters + 1):
        res, js, _ = _fused_system(problem, x, lam, t, counter)
        rn = float(np.linalg.norm(res))
        if not np.isfinite(rn):
            return _NewtonResult(x, lam, np.inf, js, False, it)
        if first_norm is None:
            first_norm = rn
        if rn <= cfg.newton_tol:
            return _NewtonResult(x, lam, rn, js, True, it)
        if it == cfg.max_newton_iters or rn > 1e8 * max(first_norm, 1.0):
            return _NewtonResult(x, lam, rn, js, False, it)
        try:
            delta = np.linalg.solve(js, -res)
        except np.linalg.LinAlgError:
            return _NewtonResult(x, lam, rn, js, False, it, singular=True)
        x = x + delta[:n]
        lam = lam + float(delta[n])
    return _NewtonResult(x, lam, rn, js, False, cfg.max_newton_iters)


@dataclass
class _CorrectorResult:
    w: np.ndarray
    res_norm: float
    converged: bool
    iters: int


def _correct_arclength(problem, predicted, tangent, cfg, counter) -> _CorrectorResult:
    """Newton on [H; tangent . (w - predicted)] = 0 in w = (x, lambda, t)."""
    n = problem.dim
    w = predicted.copy()
    plane = float(tangent @ predicted)
    first_norm = None
    rn = np.inf
    for it in range(cfg.max_newton_iters + 1):
        res, js, jt = _fused_system(problem, w[:n], w[n], w[n + 1], counter)
        rn = float(np.linalg.norm(res))
        if not np.isfinite(rn):
            return _CorrectorResult(w, np.inf, False, it)
        if first_norm is None:
            first_norm = rn
        if rn <= cfg.newton_tol:
            return _CorrectorResult(w, rn, True, it)
        if it == cfg.max_newton_iters or rn > 1e8 * max(first_norm, 1.0):
            return _CorrectorResult(w, rn, False, it)
        bordered = np.zeros((n + 2, n + 2))
        bordered[: n + 1, : n + 1] = js
        bordered[: n + 1, n + 1] = jt
        bordered[n + 1, :] = tangent
        rhs = np.concatenate([res, [tangent @ w - plane]])
        try:
            delta = np.linalg.solve(bordered, -rhs)
        except np.linalg.LinAlgError:
            return _CorrectorResult(w, rn, False, it)
        w = w + delta
    return _CorrectorResult(w, rn, False, cfg.max_newton_iters)


def _resolve_escape(problem, cfg) -> float:
    if cfg.escape_radius is not None:
        return cfg.escape_radius
    return 10.0 * z_bound(problem.target) + 10.0


def _finalize_pair(problem, x, lam, cfg, counter) -> EigenPair:
    """Polish at t = 1 and attach the det sign of the state Jacobian."""
    refined = _newton_fixed_t(problem, x, lam, 1.0, cfg, counter)
    if not refined.converged and refined.res_norm > 1e-10:
        raise RefinementFailedError(
            f"endpoint refinement stalled at residual {refined.res_norm:.3e}"
        )
    det = lu_det_sign(refined.jac_state)
    return EigenPair(
        lam=float(refined.lam),
        x=refined.x.copy(),
        residual=float(refined.res_norm),
        det_sign=det,
        kind=problem.kind,
    )


def refine_at_target(problem, x, lam, config: TrackerConfig | None = None) -> EigenPair:
    """Newton-polish a near-eigenpair of the target tensor at t = 1."""
    cfg = config or TrackerConfig()
    counter = _EvalCounter()
    return _finalize_pair(problem, np.asarray(x, dtype=np.float64), float(lam), cfg, counter)


def _append_turning_point(trace, prev_tan, tan, t_prev, t_cur):
    a, b = abs(prev_tan[-1]), abs(tan[-1])
    t_star = t_prev + (t_cur - t_prev) * (a / (a + b)) if a + b > 0 else t_cur
    trace.turning_points.append((len(trace.points) - 1, float(t_star)))


def track_z(problem: HomotopyProblem, start: CurvePoint | None = None,
            direction: str = FORWARD,
            config: TrackerConfig | None = None) -> tuple[EigenPair, CurveTrace]:
    """Follow one Z-curve from its start to an eigenpair of the target.

    Forward runs start at the closed-form pair at t = 0; backward runs
    launch at t = 1 from a supplied eigenpair of the target and descend
    into t < 1 before returning to t = 1 somewhere new.  Returns the
    refined endpoint and the full trace.
    """
    cfg = config or TrackerConfig()
    if problem.kind != KIND_Z:
        raise InputError("track_z needs a Z-kind problem")
    if direction not in (FORWARD, BACKWARD):
        raise InputError(f"unknown direction {direction!r}")
    if direction == BACKWARD:
        if start is None:
            raise InputError("backward tracking needs a start point at t = 1")
        if abs(start.t - 1.0) > 1e-9:
            raise InputError("backward starts must sit at t = 1")
    counter = _EvalCounter()
    if start is None:
        start = start_eigenpair(problem)
    n = problem.dim
    x = np.asarray(start.x, dtype=np.float64).copy()
    lam = float(start.lam)
    t = float(start.t)
    orientation = 1.0 if direction == FORWARD else -1.0
    escape = _resolve_escape(problem, cfg)

    res, js, jt = _fused_system(problem, x, lam, t, counter)
    rn = float(np.linalg.norm(res))
    if rn > cfg.newton_tol:
        polished = _newton_fixed_t(problem, x, lam, t, cfg, counter)
        if not polished.converged:
            raise InputError("start point does not lie on the homotopy curve")
        x, lam, rn = polished.x, polished.lam, polished.res_norm

    trace = CurveTrace()
    trace.points.append(CurvePoint(x.copy(), lam, t, rn))
    prev_tan = None
    ds = cfg.initial_step
    endpoint = None

    for _ in range(cfg.max_steps):
        res, js, jt = _fused_system(problem, x, lam, t, counter)
        jac_full = np.hstack([js, jt[:, None]])
        if prev_tan is None:
            border = np.zeros(n + 2)
            border[-1] = orientation
        else:
            border = prev_tan
        tan = _null_tangent(jac_full, border)
        trace.tangents.append(tan)
        if prev_tan is not None and prev_tan[-1] * tan[-1] < 0:
            _append_turning_point(trace, prev_tan, tan, trace.points[-2].t, t)
        prev_tan = tan
        w = np.concatenate([x, [lam, t]])

        accepted = False
        while not accepted:
            if tan[-1] > 1e-14 and t < 1.0:
                ds_land = (1.0 - t) / tan[-1]
                if ds_land <= ds:
                    # the step would cross t = 1: cut it to land exactly
                    wl = w + ds_land * tan
                    land = _newton_fixed_t(problem, wl[:n], wl[n], 1.0, cfg, counter)
                    drift = float(np.linalg.norm(land.x - wl[:n]) + abs(land.lam - wl[n]))
                    if land.converged and drift <= max(0.25, 2.0 * ds_land):
                        endpoint = (land.x, land.lam)
                        break
                    ds *= cfg.step_shrink
                    if ds < cfg.min_step:
                        raise TrackingStalledError(
                            "step size underflow while landing on t = 1")
                    continue
            corr = _correct_arclength(problem, w + ds * tan, tan, cfg, counter)
            if corr.converged:
                t_corr = float(corr.w[n + 1])
                if t_corr > 1.0:
                    land = _newton_fixed_t(problem, corr.w[:n], corr.w[n], 1.0, cfg, counter)
                    drift = float(np.linalg.norm(land.x - corr.w[:n]) + abs(land.lam - corr.w[n]))
                    if land.converged and drift <= max(0.25, 2.0 * ds):
                        endpoint = (land.x, land.lam)
                        break
                elif t_corr < 0.0:
                    raise TrackingAnomalyError(
                        "curve crossed t = 0: backward branch re-entered the start system")
                else:
                    x = corr.w[:n].copy()
                    lam = float(corr.w[n])
                    t = t_corr
                    trace.points.append(CurvePoint(x.copy(), lam, t, corr.res_norm))
                    if corr.iters <= 3:
                        ds = min(ds * cfg.step_grow, cfg.max_step)
                    accepted = True
                    continue
            ds *= cfg.step_shrink
            if ds < cfg.min_step:
                raise TrackingStalledError("corrector kept failing; step size underflow")
        if endpoint is not None:
            break
        if np.linalg.norm(np.concatenate([x, [lam]])) > escape:
            raise DivergenceError("iterates left the escape region")
    if endpoint is None:
        raise BudgetExceededError(f"no endpoint within {cfg.max_steps} steps")

    pair = _finalize_pair(problem, endpoint[0], endpoint[1], cfg, counter)
    trace.points.append(CurvePoint(pair.x.copy(), pair.lam, 1.0, pair.residual))
    try:
        end_tan = tangent_z(problem, pair.x, pair.lam, 1.0,
                            prev_tangent=prev_tan, orientation=orientation)
        counter.add(2)
    except SingularCurveError:
        end_tan = prev_tan
    if end_tan is not None and prev_tan is not None and prev_tan[-1] * end_tan[-1] < 0:
        _append_turning_point(trace, prev_tan, end_tan, trace.points[-2].t, 1.0)
    trace.tangents.append(end_tan if end_tan is not None else np.zeros(n + 2))
    trace.evaluations = counter.count
    return pair, trace


def track_h(problem: HomotopyProblem,
            config: TrackerConfig | None = None) -> tuple[EigenPair, CurveTrace]:
    """Parameter continuation for the H-kind homotopy.

    The parameter t increases strictly monotonically; there are no
    turning points on these curves, and a solve failure before t = 1
    with a positive iterate contradicts the curve's regularity, which is
    reported as an anomaly.
    """
    cfg = config or TrackerConfig()
    if problem.kind != KIND_H:
        raise InputError("track_h needs an H-kind problem")
    counter = _EvalCounter()
    n = problem.dim
    start = start_eigenpair(problem)
    x = start.x.copy()
    lam = start.lam
    t = 0.0
    escape = _resolve_escape(problem, cfg)

    trace = CurveTrace()
    trace.points.append(CurvePoint(x.copy(), lam, t, start.residual_norm))
    dt = cfg.initial_step

    for _ in range(cfg.max_steps):
        res, js, jt = _fused_system(problem, x, lam, t, counter)
        try:
            udot = np.linalg.solve(js, -jt)
        except np.linalg.LinAlgError:
            if t < 1.0 and np.all(x > 0):
                raise TrackingAnomalyError(
                    "state Jacobian singular at t < 1 on a positive iterate")
            raise SingularCurveError("state Jacobian singular at the target")
        norm_udot = np.linalg.norm(udot)
        trace.tangents.append(udot / norm_udot if norm_udot > 0 else udot)

        accepted = False
        while not accepted:
            if dt >= 1.0 - t:
                dt_eff, t_new = 1.0 - t, 1.0
            else:
                dt_eff, t_new = dt, t + dt
            xp = x + dt_eff * udot[:n]
            lamp = lam + dt_eff * udot[n]
            corr = _newton_fixed_t(problem, xp, lamp, t_new, cfg, counter)
            if corr.converged:
                x, lam, t = corr.x, corr.lam, t_new
                trace.points.append(CurvePoint(x.copy(), lam, t, corr.res_norm))
                if corr.iters <= 3:
                    dt = min(dt * cfg.step_grow, cfg.max_step)
                accepted = True
            else:
                if corr.singular and t_new < 1.0 and np.all(xp > 0):
                    raise TrackingAnomalyError(
                        "state Jacobian singular at t < 1 on a positive iterate")
                dt *= cfg.step_shrink
                if dt < cfg.min_step:
                    raise TrackingStalledError("corrector kept failing; step size underflow")
        if np.linalg.norm(np.concatenate([x, [lam]])) > escape:
            raise DivergenceError("iterates left the escape region")
        if t >= 1.0:
            break
    else:
        raise BudgetExceededError(f"no endpoint within {cfg.max_steps} steps")

    pair = _finalize_pair(problem, x, lam, cfg, counter)
    trace.points[-1] = CurvePoint(pair.x.copy(), pair.lam, 1.0, pair.residual)
    trace.evaluations = counter.count
    return pair, trace
