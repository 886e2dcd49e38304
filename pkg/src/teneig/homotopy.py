"""Linear homotopies from a symmetric rank-1 start tensor to the target.

Both eigenpair kinds share the blend A(t) = (1-t) X1 + t A, where X1 is
the rank-1 tensor generated by a positive vector x1.  The Z-kind system in
w = (x, lambda, t) is

    H(w) = [ A(t) x^{m-1} - lambda x ; x.x - 1 ]

and the H-kind replaces the eigenvalue term by lambda * x^[m-1].  At t = 0
each system has a unique positive solution with a closed form, so every
curve has a cheap, exact starting point.  Nothing here materializes A(t):
evaluation and differentiation go through the rank-1 shortcut.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .tensor import DenseTensor, apply, derivative, rank1_apply_fast, vec_power

KIND_Z = "Z"
KIND_H = "H"


@dataclass(frozen=True)
class HomotopyProblem:
    """Immutable description of one continuation problem."""

    target: DenseTensor
    start_generator: np.ndarray
    kind: str = KIND_Z

    def __post_init__(self):
        if self.kind not in (KIND_Z, KIND_H):
            raise InputError(f"unknown eigenpair kind {self.kind!r}")
        x1 = np.asarray(self.start_generator, dtype=np.float64)
        if x1.shape != (self.target.dim,):
            raise InputError("start generator length must match the tensor dimension")
        if not np.all(x1 > 0):
            raise InputError("start generator must be strictly positive")
        if not self.target.is_nonnegative():
            raise InputError("target tensor must be nonnegative")
        x1 = x1.copy()
        x1.setflags(write=False)
        object.__setattr__(self, "start_generator", x1)

    @property
    def dim(self) -> int:
        return self.target.dim

    @property
    def order(self) -> int:
        return self.target.order


@dataclass
class CurvePoint:
    """One accepted point on a solution curve."""

    x: np.ndarray
    lam: float
    t: float
    residual_norm: float


def draw_generator(n: int, rng: np.random.Generator,
                   norm_low: float = 0.9, norm_high: float = 1.1) -> np.ndarray:
    """Random positive start vector with norm uniform in [norm_low, norm_high].

    Components are i.i.d. uniform(0,1) before rescaling; a draw with a
    vanishing component is rejected and repeated.
    """
    if not 0 < norm_low <= norm_high:
        raise InputError("generator norm interval must satisfy 0 < low <= high")
    while True:
        u = rng.uniform(0.0, 1.0, size=n)
        if u.min() > 1e-12:
            break
    scale = rng.uniform(norm_low, norm_high)
    return scale * u / np.linalg.norm(u)


def start_eigenpair(problem: HomotopyProblem) -> CurvePoint:
    """The unique positive solution of the start system at t = 0."""
    x1 = problem.start_generator
    m = problem.order
    if problem.kind == KIND_Z:
        nrm = np.linalg.norm(x1)
        x0 = x1 / nrm
        lam0 = nrm ** m
    else:
        u = vec_power(x1, 1.0 / (m - 1))
        x0 = u / np.linalg.norm(u)
        lam0 = (x1 @ u) ** (m - 1)
    res = residual(problem, x0, lam0, 0.0)
    return CurvePoint(x=x0, lam=float(lam0), t=0.0,
                      residual_norm=float(np.linalg.norm(res)))


def _eigen_term(problem: HomotopyProblem, x: np.ndarray, lam: float) -> np.ndarray:
    if problem.kind == KIND_Z:
        return lam * x
    return lam * x ** (problem.order - 1)


def residual(problem: HomotopyProblem, x, lam: float, t: float) -> np.ndarray:
    """H(x, lambda, t): n eigen-equation rows plus the normalization row."""
    x = np.asarray(x, dtype=np.float64)
    top = rank1_apply_fast(problem.start_generator, problem.target, x, t)
    top -= _eigen_term(problem, x, lam)
    return np.concatenate([top, [x @ x - 1.0]])


def blended_derivative(problem: HomotopyProblem, x, t: float) -> np.ndarray:
    """Derivative matrix of ``x -> A(t) x^{m-1}`` via the rank-1 shortcut."""
    x = np.asarray(x, dtype=np.float64)
    x1 = problem.start_generator
    m = problem.order
    rank1_part = (m - 1) * (x1 @ x) ** (m - 2) * np.outer(x1, x1)
    return (1.0 - t) * rank1_part + t * derivative(problem.target, x)


def jacobian_wrt_state(problem: HomotopyProblem, x, lam: float, t: float) -> np.ndarray:
    """(n+1) x (n+1) derivative of H with respect to (x, lambda)."""
    x = np.asarray(x, dtype=np.float64)
    n = problem.dim
    m = problem.order
    jac = np.zeros((n + 1, n + 1))
    block = blended_derivative(problem, x, t)
    if problem.kind == KIND_Z:
        block = block - lam * np.eye(n)
        jac[:n, n] = -x
    else:
        block = block - (m - 1) * lam * np.diag(x ** (m - 2))
        jac[:n, n] = -(x ** (m - 1))
    jac[:n, :n] = block
    jac[n, :n] = 2.0 * x
    return jac


def jacobian_wrt_t(problem: HomotopyProblem, x, lam: float, t: float) -> np.ndarray:
    """(n+1)-column dH/dt = [(A - X1) x^{m-1}; 0]; independent of lambda and t."""
    x = np.asarray(x, dtype=np.float64)
    x1 = problem.start_generator
    m = problem.order
    top = apply(problem.target, x) - (x1 @ x) ** (m - 1) * x1
    return np.concatenate([top, [0.0]])
