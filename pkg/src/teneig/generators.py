"""Builders for the tensors the solvers are exercised on.

Three families: signless Laplacians of cyclic uniform hypergraphs (with an
optional weight on the adjacency part), a 6-state second-order Markov
transition tensor blended with a teleportation term, and a small 4th-order
tensor with exactly three positive Z-eigenpairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import InputError
from .tensor import SYMMETRIC, DenseTensor


@dataclass(frozen=True)
class HypergraphSpec:
    """m-uniform hypergraph on vertices 1..n given by its edge list."""

    m: int
    n: int
    edges: tuple[frozenset, ...]

    def __post_init__(self):
        if self.m < 2 or self.n < self.m:
            raise InputError("need n >= m >= 2 for an m-uniform hypergraph")
        for e in self.edges:
            if len(e) != self.m:
                raise InputError(f"edge {sorted(e)} is not {self.m}-uniform")
            if not all(1 <= v <= self.n for v in e):
                raise InputError(f"edge {sorted(e)} has a vertex outside 1..{self.n}")

    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v - 1] += 1
        return tuple(deg)


def cyclic_hypergraph(m: int, n: int) -> HypergraphSpec:
    """Edges {i-m+2, ..., i, i+1} for i = m-1..n, indices wrapping past n."""
    edges = []
    for i in range(m - 1, n + 1):
        edge = frozenset(((v - 1) % n) + 1 for v in range(i - m + 2, i + 2))
        if len(edge) != m:
            raise InputError(f"cyclic window collapsed for m={m}, n={n}")
        edges.append(edge)
    return HypergraphSpec(m=m, n=n, edges=tuple(edges))


def adjacency_tensor(hg: HypergraphSpec) -> DenseTensor:
    """Symmetric adjacency tensor: 1/(m-1)! on every permutation of each edge."""
    m, n = hg.m, hg.n
    val = 1.0 / math.factorial(m - 1)
    entries = np.zeros((n,) * m)
    for e in hg.edges:
        for perm in permutations(sorted(e)):
            entries[tuple(v - 1 for v in perm)] = val
    return DenseTensor(entries, SYMMETRIC)


def degree_tensor(hg: HypergraphSpec) -> DenseTensor:
    """Diagonal tensor carrying the vertex degrees."""
    m, n = hg.m, hg.n
    entries = np.zeros((n,) * m)
    deg = hg.degrees()
    for i in range(n):
        entries[(i,) * m] = deg[i]
    return DenseTensor(entries, SYMMETRIC)


def scaled_signless_laplacian(w: float, m: int, n: int) -> DenseTensor:
    """D + w*C for the cyclic m-uniform hypergraph on n vertices."""
    if w <= 0:
        raise InputError("adjacency weight must be positive")
    hg = cyclic_hypergraph(m, n)
    entries = degree_tensor(hg).entries + w * adjacency_tensor(hg).entries
    return DenseTensor(entries, SYMMETRIC)


def signless_laplacian(m: int, n: int) -> DenseTensor:
    """D + C for the cyclic m-uniform hypergraph on n vertices."""
    return scaled_signless_laplacian(1.0, m, n)


# 6-state second-order transition data: row i of this 6 x 36 block matrix
# holds [P(i,:,1) | P(i,:,2) | ... | P(i,:,6)].  Several columns carry more
# than one nonzero, so each column of each block is normalized to sum 1.
_TRANSITION_PATTERN = np.array([
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0,
     1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0,
     0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0,
     0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0,
     0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1,
     0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0],
    [1, 1, 1, 1, 1, 1, 1, 0, 0, 1, 1, 0, 1, 0, 1, 1, 1, 1, 1, 0,
     0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
], dtype=np.float64)


def transition_tensor() -> DenseTensor:
    """Column-normalized 6-state second-order transition tensor P.

    P[i, j, k] is the probability of moving to state i given the last two
    states (j, k); every fiber P[:, j, k] sums to one.
    """
    raw = np.zeros((6, 6, 6))
    for k in range(6):
        raw[:, :, k] = _TRANSITION_PATTERN[:, 6 * k:6 * (k + 1)]
    sums = raw.sum(axis=0)
    if np.any(sums <= 0):
        raise InputError("transition pattern has an all-zero column")
    p = raw / sums
    t = DenseTensor(p)
    if not np.allclose(p.sum(axis=0), 1.0, rtol=0, atol=1e-15):
        raise InputError("transition tensor fibers do not sum to 1")
    return t


def pagerank_tensor(alpha: float) -> DenseTensor:
    """Teleported transition tensor alpha*P + (1-alpha)/6.

    The second term is the rank-1 tensor v o e o e with v = e/6, so every
    fiber of the result still sums to one.
    """
    if not 0.0 < alpha < 1.0:
        raise InputError("alpha must lie strictly between 0 and 1")
    p = transition_tensor().entries
    a = alpha * p + (1.0 - alpha) / 6.0
    t = DenseTensor(a)
    if not np.allclose(t.entries.sum(axis=0), 1.0, rtol=0, atol=1e-14):
        raise InputError("teleported tensor fibers do not sum to 1")
    return t


def three_z_eigenpair_tensor() -> DenseTensor:
    """Symmetric 4th-order, 2-dimensional tensor with three positive Z-eigenpairs.

    Its eigenvalue map is
        (A x^3)_1 = (4/sqrt(3)) x1^3 + 3 x1^2 x2 + x2^3
        (A x^3)_2 = x1^3 + 3 x1 x2^2 + (4/sqrt(3)) x2^3,
    which the constructor asserts coefficient by coefficient.  The three
    positive Z-eigenvalues are 2 + 2/sqrt(3) and 11/(2 sqrt(3)) (twice).
    """
    d = 4.0 / math.sqrt(3.0)
    entries = np.zeros((2, 2, 2, 2))
    entries[0, 0, 0, 0] = d
    entries[1, 1, 1, 1] = d
    # all permutations of (1,1,1,2) and of (1,2,2,2), zero-based
    for idx in permutations((0, 0, 0, 1)):
        entries[idx] = 1.0
    for idx in permutations((0, 1, 1, 1)):
        entries[idx] = 1.0
    t = DenseTensor(entries, SYMMETRIC)

    # Assert the cubic coefficients by probing; both rows must mirror.
    def row_coeffs(poly_at):
        p10, p01 = poly_at([1.0, 0.0]), poly_at([0.0, 1.0])
        p11, p1m = poly_at([1.0, 1.0]), poly_at([1.0, -1.0])
        a, dd = p10, p01
        b = (p11 - p1m) / 2.0 - dd
        c = (p11 + p1m) / 2.0 - a
        return a, b, c, dd

    from .tensor import apply as _apply

    r1 = row_coeffs(lambda v: _apply(t, np.array(v))[0])
    r2 = row_coeffs(lambda v: _apply(t, np.array(v))[1])
    if (not np.allclose(r1, (d, 3.0, 0.0, 1.0), rtol=0, atol=1e-14)
            or not np.allclose(r2, (1.0, 0.0, 3.0, d), rtol=0, atol=1e-14)):
        raise InputError("three-eigenpair tensor coefficients are off")
    return t
