"""Shared oracles for the test suite.

Everything here is written independently of the package internals:
contractions by literal index loops, Jacobians by central differences,
and small-system roots by a dense sign-change sweep.  Library results
are always compared against these, not against themselves.
"""

from __future__ import annotations

from itertools import permutations, product

import numpy as np
import pytest

from teneig import DenseTensor, GENERAL, SYMMETRIC


def apply_loops(entries: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Literal summation y_i = sum A[i, i2..im] * x_i2 * ... * x_im."""
    m = entries.ndim
    n = entries.shape[0]
    y = np.zeros(n)
    for idx in product(range(n), repeat=m):
        val = entries[idx]
        if val == 0.0:
            continue
        term = val
        for j in idx[1:]:
            term *= x[j]
        y[idx[0]] += term
    return y


def derivative_fd(entries: np.ndarray, x: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Central-difference Jacobian of x -> apply(A, x)."""
    n = entries.shape[0]
    cols = []
    for j in range(n):
        e = np.zeros(n)
        e[j] = h
        cols.append((apply_loops(entries, x + e) - apply_loops(entries, x - e)) / (2 * h))
    return np.column_stack(cols)


def materialize_rank1(x1: np.ndarray, m: int) -> np.ndarray:
    """Entries of the symmetric rank-1 tensor x1 o ... o x1 by loops."""
    n = x1.size
    out = np.zeros((n,) * m)
    for idx in product(range(n), repeat=m):
        term = 1.0
        for j in idx:
            term *= x1[j]
        out[idx] = term
    return out


def symmetrize_all(entries: np.ndarray) -> np.ndarray:
    """Average over all index permutations (full symmetrization)."""
    m = entries.ndim
    acc = np.zeros_like(entries)
    count = 0
    for perm in permutations(range(m)):
        acc += entries.transpose(perm)
        count += 1
    return acc / count


def random_tensor(rng, m: int, n: int, low=0.0, high=1.0) -> DenseTensor:
    return DenseTensor(rng.uniform(low, high, size=(n,) * m), GENERAL)


def random_symmetric_tensor(rng, m: int, n: int, low=0.0, high=1.0) -> DenseTensor:
    e = symmetrize_all(rng.uniform(low, high, size=(n,) * m))
    return DenseTensor(e, SYMMETRIC)


def circle_z_pairs(entries: np.ndarray, grid: int = 40001):
    """All positive Z-eigenpairs of a positive tensor with n = 2.

    Sweeps x(theta) = (cos theta, sin theta) over (0, pi/2) and finds the
    roots of g(theta) = (A x^{m-1}) . (-sin theta, cos theta) by bisection
    on sign changes; each root gives lambda = (A x^{m-1}) . x.
    """
    from scipy.optimize import brentq

    def g(theta):
        x = np.array([np.cos(theta), np.sin(theta)])
        y = apply_loops(entries, x)
        return -y[0] * x[1] + y[1] * x[0]

    thetas = np.linspace(1e-9, np.pi / 2 - 1e-9, grid)
    vals = np.array([g(t) for t in thetas])
    roots = []
    for i in range(grid - 1):
        if vals[i] == 0.0:
            roots.append(thetas[i])
        elif vals[i] * vals[i + 1] < 0:
            roots.append(brentq(g, thetas[i], thetas[i + 1], xtol=1e-14))
    pairs = []
    for th in roots:
        x = np.array([np.cos(th), np.sin(th)])
        lam = float(apply_loops(entries, x) @ x)
        pairs.append((lam, x))
    return pairs


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
