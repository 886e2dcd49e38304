"""Classical power-type iterations used as cross-checks for the trackers.

``nqz`` is the min-max power method for the largest H-eigenvalue of a
nonnegative tensor; ``sshopm`` is the shifted symmetric higher-order power
method for Z-eigenpairs.  Both count one evaluation per contraction
``A x^{m-1}`` of the input tensor, and both stop on the residual of the
normalized eigen-system.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .multi import det_sign
from .tensor import SYMMETRIC, DenseTensor, apply, vec_power
from .tracking import EigenPair


@dataclass
class IterationReport:
    """Outcome of one baseline run."""

    pair: EigenPair
    evaluations: int
    converged: bool
    iterations: int
    interval_history: list = field(default_factory=list)  # nqz: (lam_lo, lam_hi)
    objective_history: list = field(default_factory=list)  # sshopm: x . A x^{m-1}


def shift_bound_gamma(w: float) -> float:
    """Convexity shift 72 (1 + w) for the weighted Laplacian family."""
    if w <= 0:
        raise InputError("weight must be positive")
    return 72.0 * (1.0 + w)


def nqz(a: DenseTensor, x0, tol: float = 1e-10, max_eval: int = 2000) -> IterationReport:
    """Min-max power iteration for the largest H-eigenpair.

    Keeps the bracket lam_lo <= lam <= lam_hi from the componentwise
    ratios and stops once the eigen-residual at the midpoint estimate
    drops below ``tol``.  A single restart from a perturbed positive
    vector is allowed if an iterate picks up a zero component.
    """
    if not a.is_nonnegative():
        raise InputError("nqz needs a nonnegative tensor")
    x = np.asarray(x0, dtype=np.float64).copy()
    if x.shape != (a.dim,) or np.any(x <= 0):
        raise InputError("start vector must be strictly positive")
    m = a.order
    x = x / np.linalg.norm(x)
    evals = 0
    iterations = 0
    restarted = False
    lam = 0.0
    res = np.inf
    history = []
    converged = False
    while evals < max_eval:
        y = apply(a, x)
        evals += 1
        iterations += 1
        xm1 = x ** (m - 1)
        ratios = y / xm1
        lam_hi = float(ratios.max())
        lam_lo = float(ratios.min())
        lam = 0.5 * (lam_hi + lam_lo)
        history.append((lam_lo, lam_hi))
        res = float(np.linalg.norm(y - lam * xm1))
        if res < tol:
            converged = True
            break
        if np.any(y <= 0):
            if restarted:
                break
            restarted = True
            x = x + 1e-8
            x = x / np.linalg.norm(x)
            continue
        x = vec_power(y, 1.0 / (m - 1))
        x = x / np.linalg.norm(x)
    pair = EigenPair(lam=lam, x=x, residual=res, det_sign=0, kind="H")
    pair.det_sign = det_sign(a, pair)
    return IterationReport(pair=pair, evaluations=evals, converged=converged,
                           iterations=iterations, interval_history=history)


def sshopm(a: DenseTensor, alpha: float, x0, tol: float = 1e-10,
           max_eval: int = 2000) -> IterationReport:
    """Shifted symmetric higher-order power method for Z-eigenpairs.

    Iterates x <- (A x^{m-1} + alpha x) / norm and reads the eigenvalue
    off the Rayleigh quotient x . A x^{m-1}.  Needs a symmetric tensor
    and a nonnegative shift; large shifts slow the iteration down but
    keep the objective monotone.
    """
    if a.symmetry != SYMMETRIC:
        raise InputError("sshopm needs a symmetric tensor")
    if alpha < 0:
        raise InputError("shift must be nonnegative")
    x = np.asarray(x0, dtype=np.float64).copy()
    if x.shape != (a.dim,):
        raise InputError(f"start vector must have length {a.dim}")
    nrm = np.linalg.norm(x)
    if nrm == 0:
        raise InputError("start vector must be nonzero")
    x = x / nrm
    evals = 0
    iterations = 0
    lam = 0.0
    res = np.inf
    objective = []
    converged = False
    while evals < max_eval:
        y = apply(a, x)
        evals += 1
        iterations += 1
        lam = float(x @ y)
        objective.append(lam)
        res = float(np.linalg.norm(y - lam * x))
        if res < tol:
            converged = True
            break
        z = y + alpha * x
        nz = np.linalg.norm(z)
        if nz < 1e-300:
            break
        x = z / nz
    pair = EigenPair(lam=lam, x=x, residual=res, det_sign=0, kind="Z")
    pair.det_sign = det_sign(a, pair)
    return IterationReport(pair=pair, evaluations=evals, converged=converged,
                           iterations=iterations, objective_history=objective)
