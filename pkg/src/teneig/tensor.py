"""Dense tensors and the multilinear kernels everything else is built on.

An m-th order, n-dimensional tensor is stored as a dense float64 array of
shape (n, ..., n).  The solvers only ever need a few contractions of it
with copies of a vector: the map ``x -> A x^{m-1}``, the derivative matrix
of that map, and a rank-1 shortcut that lets the blended tensor of a
linear homotopy be evaluated without materializing it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .errors import InputError

GENERAL = "general"
SEMISYMMETRIC = "semisymmetric"
SYMMETRIC = "symmetric"

SYMMETRY_FLAGS = (GENERAL, SEMISYMMETRIC, SYMMETRIC)

#: Hard cap on dense storage: refuse anything above 2**31 entries.
MAX_ENTRIES = 2**31


@dataclass(frozen=True)
class DenseTensor:
    """Dense m-th order tensor with equal mode lengths.

    Parameters
    ----------
    entries : ndarray
        Array of shape (n,) * m in row-major order.  Copied to a
        read-only float64 array on construction.
    symmetry : str
        One of "general", "semisymmetric" (invariant under permutations
        of the trailing m-1 modes) or "symmetric" (invariant under all
        mode permutations).  Trusted metadata: generators set it, the
        file loader spot-checks it.
    """

    entries: np.ndarray
    symmetry: str = GENERAL

    def __post_init__(self):
        arr = np.ascontiguousarray(self.entries, dtype=np.float64)
        if arr.ndim < 2:
            raise InputError("tensor order must be at least 2")
        n = arr.shape[0]
        if any(s != n for s in arr.shape):
            raise InputError(f"all mode lengths must match, got {arr.shape}")
        if arr.size > MAX_ENTRIES:
            raise InputError(
                f"dense tensor with {arr.size} entries exceeds the "
                f"{MAX_ENTRIES} entry limit"
            )
        if not np.all(np.isfinite(arr)):
            raise InputError("tensor entries must be finite")
        if self.symmetry not in SYMMETRY_FLAGS:
            raise InputError(f"unknown symmetry flag {self.symmetry!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def order(self) -> int:
        return self.entries.ndim

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def is_nonnegative(self) -> bool:
        return bool(self.entries.min() >= 0.0)

    def check_symmetry(self, samples: int = 100, seed: int = 0) -> bool:
        """Spot-check the symmetry flag on random index permutations."""
        if self.symmetry == GENERAL or self.dim == 1:
            return True
        rng = np.random.default_rng(seed)
        m, n = self.order, self.dim
        for _ in range(samples):
            idx = tuple(rng.integers(0, n, size=m))
            if self.symmetry == SYMMETRIC:
                perm = rng.permutation(m)
            else:
                perm = np.concatenate(([0], 1 + rng.permutation(m - 1)))
            jdx = tuple(idx[q] for q in perm)
            if self.entries[idx] != self.entries[jdx]:
                return False
        return True


def _check_vector(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (n,):
        raise InputError(f"expected a vector of length {n}, got shape {x.shape}")
    return x


def apply(a: DenseTensor, x) -> np.ndarray:
    """Contract the trailing m-1 modes with x: returns ``A x^{m-1}``.

    Component i of the result is sum over (i2..im) of
    ``A[i, i2, .., im] * x[i2] * ... * x[im]``.
    """
    x = _check_vector(x, a.dim)
    y = a.entries
    for _ in range(a.order - 1):
        y = y @ x
    return y


def derivative(a: DenseTensor, x) -> np.ndarray:
    """Derivative matrix of ``x -> A x^{m-1}``.

    Equals the sum over k = 2..m of the tensor contracted with x in every
    mode except 1 and k.  For semisymmetric (or symmetric) tensors all
    m-1 terms coincide, so a single contraction scaled by m-1 suffices.
    """
    x = _check_vector(x, a.dim)
    m = a.order
    if m == 2:
        return np.array(a.entries)
    if a.symmetry in (SEMISYMMETRIC, SYMMETRIC):
        t = a.entries
        for _ in range(m - 2):
            t = t @ x
        return (m - 1) * t
    n = a.dim
    total = np.zeros((n, n))
    for k in range(1, m):
        t = np.moveaxis(a.entries, k, 1)
        for _ in range(m - 2):
            t = t @ x
        total += t
    return total


def semi_symmetrize(a: DenseTensor) -> DenseTensor:
    """Average over permutations of the trailing m-1 modes.

    Preserves ``apply`` exactly and makes the cheap derivative path
    available.  Symmetric input comes back entrywise unchanged; so does
    any m = 2 tensor.
    """
    m = a.order
    if a.symmetry in (SEMISYMMETRIC, SYMMETRIC):
        return a
    if m == 2:
        return DenseTensor(a.entries, SEMISYMMETRIC)
    acc = np.zeros_like(a.entries)
    for perm in permutations(range(1, m)):
        acc += np.transpose(a.entries, (0, *perm))
    acc /= math.factorial(m - 1)
    return DenseTensor(acc, SEMISYMMETRIC)


def rank1_apply_fast(x1, a: DenseTensor, x, t: float) -> np.ndarray:
    """Evaluate ``((1-t) X1 + t A) x^{m-1}`` without forming the blend.

    X1 is the symmetric rank-1 tensor generated by x1, whose contraction
    collapses to ``(x1 . x)^{m-1} x1``.  Affine in t.
    """
    x1 = _check_vector(x1, a.dim)
    x = _check_vector(x, a.dim)
    return (1.0 - t) * (x1 @ x) ** (a.order - 1) * x1 + t * apply(a, x)


def rank1_tensor(x1, m: int) -> DenseTensor:
    """Materialize the symmetric rank-1 tensor x1 o ... o x1 (m factors)."""
    x1 = np.asarray(x1, dtype=np.float64)
    if x1.ndim != 1 or x1.size == 0:
        raise InputError("generator must be a nonempty vector")
    if m < 2:
        raise InputError("tensor order must be at least 2")
    out = x1
    for _ in range(m - 1):
        out = np.multiply.outer(out, x1)
    return DenseTensor(out, SYMMETRIC)


def vec_power(x, ell: float) -> np.ndarray:
    """Componentwise power ``x^[ell]`` with the convention 0^ell = 0."""
    x = np.asarray(x, dtype=np.float64)
    if ell <= 0:
        raise InputError("exponent must be positive")
    if ell != round(ell) and np.any(x < 0):
        raise InputError("fractional power of a negative component")
    return np.power(x, ell)


def z_bound(a: DenseTensor) -> float:
    """Upper bound sqrt(n) * max_i sum_tail A[i, tail] on Z-eigenvalues.

    Meaningful for nonnegative tensors; used to size the tracker's
    escape region.
    """
    n = a.dim
    return float(np.sqrt(n) * a.entries.reshape(n, -1).sum(axis=1).max())
