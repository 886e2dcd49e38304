"""Finding several positive Z-eigenpairs and the odd-count bookkeeping.

Forward tracks of k independent homotopies can only reach endpoints whose
state-Jacobian determinant has sign (-1)^(n-1).  Launching one homotopy
backward from a *different* homotopy's endpoint follows an arc whose far
end carries the opposite sign, (-1)^n.  Iterating those cross-launches
until nothing new appears yields an odd number of pairs on irreducible
tensors, and the signed counts must balance: the det signs over all
isolated positive eigenpairs sum to (-1)^(n-1).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, TenEigError
from .homotopy import KIND_Z, CurvePoint, HomotopyProblem, draw_generator
from .tensor import DenseTensor, derivative
from .tracking import (
    BACKWARD,
    FORWARD,
    EigenPair,
    TrackerConfig,
    lu_det_sign,
    track_z,
)


@dataclass(frozen=True)
class Provenance:
    """Which homotopy produced a pair, and in which direction."""

    start_index: int
    direction: str


@dataclass
class EigenSet:
    """Deduplicated eigenpairs with provenance and failure records."""

    pairs: list = field(default_factory=list)
    provenance: list = field(default_factory=list)
    dedupe_tol: float = 1e-8
    skipped_branches: list = field(default_factory=list)
    sign_mismatches: list = field(default_factory=list)

    def __len__(self):
        return len(self.pairs)

    def match(self, pair: EigenPair) -> int | None:
        """Index of the stored pair this one duplicates, if any."""
        for i, known in enumerate(self.pairs):
            d = np.linalg.norm(known.x - pair.x) + abs(known.lam - pair.lam)
            if d < self.dedupe_tol:
                return i
        return None

    def det_sign_sum(self) -> int:
        return sum(p.det_sign for p in self.pairs)

    def is_odd(self) -> bool:
        return len(self.pairs) % 2 == 1


def dedupe_insert(eset: EigenSet, pair: EigenPair, provenance: Provenance) -> bool:
    """Insert unless a pair within dedupe_tol is already stored."""
    if eset.match(pair) is not None:
        return False
    eset.pairs.append(pair)
    eset.provenance.append(provenance)
    return True


def det_sign(a: DenseTensor, pair: EigenPair) -> int:
    """Sign of det of the bordered eigen-Jacobian at the pair."""
    n = a.dim
    m = a.order
    x = np.asarray(pair.x, dtype=np.float64)
    jac = np.zeros((n + 1, n + 1))
    block = derivative(a, x)
    if pair.kind == KIND_Z:
        jac[:n, :n] = block - pair.lam * np.eye(n)
        jac[:n, n] = -x
    else:
        xm2 = x ** (m - 2)
        jac[:n, :n] = block - (m - 1) * pair.lam * np.diag(xm2)
        jac[:n, n] = -(xm2 * x)
    jac[n, :n] = 2.0 * x
    return lu_det_sign(jac)


def canonicalize_pair(a: DenseTensor, pair: EigenPair) -> EigenPair:
    """Flip the eigenvector sign so its first nonzero component is positive.

    For even order the eigenvalue survives a flip unchanged; for odd
    order it flips too.  The det sign is recomputed when a flip happens.
    """
    x = np.asarray(pair.x, dtype=np.float64)
    nz = np.nonzero(np.abs(x) > 1e-12)[0]
    if nz.size == 0 or x[nz[0]] > 0:
        return pair
    lam = pair.lam if a.order % 2 == 0 else -pair.lam
    flipped = EigenPair(lam=lam, x=-x, residual=pair.residual,
                        det_sign=pair.det_sign, kind=pair.kind)
    flipped.det_sign = det_sign(a, flipped)
    return flipped


def is_irreducible(a: DenseTensor) -> bool:
    """Exact irreducibility test on the support.

    The tensor is reducible exactly when some proper nonempty index set T
    is closed under "reach": whenever an entry A[i, tail] is nonzero with
    every tail index inside T, the head i lies in T too.  Growing the
    reach-closure of each singleton and checking it fills 1..n decides
    this in polynomial time.
    """
    n = a.dim
    if n == 1:
        return True
    nz = np.nonzero(a.entries)
    heads = nz[0]
    if np.unique(heads).size < n:
        return False  # an all-zero slice is a one-element reducing set
    tails = np.stack(nz[1:], axis=1)
    for seed in range(n):
        member = np.zeros(n, dtype=bool)
        member[seed] = True
        size = 1
        while True:
            reach = heads[member[tails].all(axis=1)]
            member[reach] = True
            new_size = int(member.sum())
            if new_size == size or new_size == n:
                break
            size = new_size
        if not member.all():
            return False
    return True


def is_weakly_irreducible(a: DenseTensor) -> bool:
    """Strong connectivity of the index digraph with an arc i -> j whenever
    some nonzero entry has head i and j in its tail.

    Weaker than :func:`is_irreducible`: hypergraph Laplacians pass this but
    fail the strict set-based test.  Sufficient for a unique positive
    H-eigenpair.
    """
    from scipy.sparse.csgraph import connected_components

    n = a.dim
    if n == 1:
        return True
    m = a.order
    mag = np.abs(a.entries)
    adj = np.zeros((n, n))
    for k in range(1, m):
        other = tuple(ax for ax in range(1, m) if ax != k)
        adj += mag.sum(axis=other) if other else mag
    count, _ = connected_components(adj > 0, directed=True, connection="strong")
    return count == 1


def _forward_sign(n: int) -> int:
    return -1 if (n - 1) % 2 else 1


def _run_jobs(jobs, worker, threads: int):
    if threads <= 1 or len(jobs) <= 1:
        return [worker(job) for job in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, jobs))


def find_odd_z(a: DenseTensor, k: int, seed: int = 0,
               config: TrackerConfig | None = None,
               threads: int = 1, max_rounds: int = 3,
               dedupe_tol: float = 1e-8) -> EigenSet:
    """Collect an odd number of positive Z-eigenpairs of an irreducible tensor.

    Runs k forward tracks from independent random starts, then repeatedly
    launches every known pair backward through every other start's
    homotopy (at most k*(k-1) backward tracks per round, at most
    ``max_rounds`` rounds) until no new pair appears.  Tracking failures
    are recorded as skipped branches instead of aborting the run.
    """
    cfg = config or TrackerConfig()
    if k < 1:
        raise InputError("need at least one start")
    if not a.is_nonnegative():
        raise InputError("the tensor must be nonnegative")
    if not is_irreducible(a):
        raise InputError("the tensor must be irreducible")
    n = a.dim
    rng = np.random.default_rng(seed)
    eset = EigenSet(dedupe_tol=dedupe_tol)

    problems = []
    draws = 0
    while len(problems) < k and draws < 4 * k:
        draws += 1
        gen = draw_generator(n, rng, cfg.generator_norm_low, cfg.generator_norm_high)
        problems.append(HomotopyProblem(a, gen, KIND_Z))
    fwd_sign = _forward_sign(n)

    def forward_worker(i):
        attempts = 0
        problem = problems[i]
        while True:
            try:
                return problem, track_z(problem, direction=FORWARD, config=cfg)
            except TenEigError as exc:
                attempts += 1
                if attempts >= 3 or not isinstance(exc, TenEigError):
                    return problem, exc
                # non-generic or stalled start: resample and retry
                gen = draw_generator(n, np.random.default_rng(seed + 7919 * (i + attempts)),
                                     cfg.generator_norm_low, cfg.generator_norm_high)
                problem = HomotopyProblem(a, gen, KIND_Z)

    results = _run_jobs(list(range(k)), forward_worker, threads)
    forward_endpoint: list[int | None] = [None] * k
    touched: dict[int, set] = {}
    for i, (problem, outcome) in enumerate(results):
        problems[i] = problem
        if isinstance(outcome, Exception):
            eset.skipped_branches.append(
                {"phase": "forward", "start_index": i, "error": str(outcome)})
            continue
        pair, _ = outcome
        pair = canonicalize_pair(a, pair)
        idx = eset.match(pair)
        if idx is None:
            dedupe_insert(eset, pair, Provenance(i, FORWARD))
            idx = len(eset.pairs) - 1
        forward_endpoint[i] = idx
        touched.setdefault(idx, set()).add(i)
        if pair.det_sign not in (0, fwd_sign):
            eset.sign_mismatches.append(
                {"direction": FORWARD, "start_index": i, "det_sign": pair.det_sign})

    attempted: set = set()
    launch_pool = list(range(len(eset.pairs)))
    budget = k * (k - 1)
    for _ in range(max_rounds):
        jobs = []
        for pidx in launch_pool:
            for i in range(k):
                if forward_endpoint[i] is None or forward_endpoint[i] == pidx:
                    continue
                if i in touched.get(pidx, set()) or (i, pidx) in attempted:
                    continue
                known = eset.pairs[forward_endpoint[i]]
                p = eset.pairs[pidx]
                if np.linalg.norm(known.x - p.x) + abs(known.lam - p.lam) < dedupe_tol:
                    continue
                attempted.add((i, pidx))
                jobs.append((i, pidx))
                if len(jobs) >= budget:
                    break
            if len(jobs) >= budget:
                break
        if not jobs:
            break

        def backward_worker(job):
            i, pidx = job
            p = eset.pairs[pidx]
            start = CurvePoint(p.x.copy(), p.lam, 1.0, p.residual)
            try:
                return track_z(problems[i], start=start, direction=BACKWARD, config=cfg)
            except TenEigError as exc:
                return exc

        outcomes = _run_jobs(jobs, backward_worker, threads)
        new_indices = []
        for (i, pidx), outcome in zip(jobs, outcomes):
            if isinstance(outcome, Exception):
                eset.skipped_branches.append(
                    {"phase": "backward", "start_index": i,
                     "launched_from": pidx, "error": str(outcome)})
                continue
            pair, _ = outcome
            pair = canonicalize_pair(a, pair)
            qidx = eset.match(pair)
            if qidx is None:
                dedupe_insert(eset, pair, Provenance(i, BACKWARD))
                qidx = len(eset.pairs) - 1
                new_indices.append(qidx)
            touched.setdefault(qidx, set()).add(i)
            touched.setdefault(pidx, set()).add(i)
            # the far end of an arc carries the opposite det sign
            launched_sign = eset.pairs[pidx].det_sign
            if launched_sign != 0 and pair.det_sign not in (0, -launched_sign):
                eset.sign_mismatches.append(
                    {"direction": BACKWARD, "start_index": i, "det_sign": pair.det_sign})
        launch_pool = new_indices
        if not new_indices:
            break
    return eset
