"""Nonnegative Z- and H-eigenpairs of nonnegative tensors by homotopy continuation."""

from .baselines import IterationReport, nqz, shift_bound_gamma, sshopm
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
from .generators import (
    HypergraphSpec,
    adjacency_tensor,
    cyclic_hypergraph,
    degree_tensor,
    pagerank_tensor,
    scaled_signless_laplacian,
    signless_laplacian,
    three_z_eigenpair_tensor,
    transition_tensor,
)
from .homotopy import (
    KIND_H,
    KIND_Z,
    CurvePoint,
    HomotopyProblem,
    blended_derivative,
    draw_generator,
    jacobian_wrt_state,
    jacobian_wrt_t,
    residual,
    start_eigenpair,
)
from .multi import (
    EigenSet,
    Provenance,
    canonicalize_pair,
    dedupe_insert,
    det_sign,
    find_odd_z,
    is_irreducible,
    is_weakly_irreducible,
)
from .serialize import read_tensor, write_tensor
from .tensor import (
    GENERAL,
    SEMISYMMETRIC,
    SYMMETRIC,
    DenseTensor,
    apply,
    derivative,
    rank1_apply_fast,
    rank1_tensor,
    semi_symmetrize,
    vec_power,
    z_bound,
)
from .tracking import (
    BACKWARD,
    FORWARD,
    CurveTrace,
    EigenPair,
    TrackerConfig,
    lu_det_sign,
    refine_at_target,
    tangent_z,
    track_h,
    track_z,
)

__version__ = "0.1.0"

__all__ = [
    "BACKWARD",
    "BudgetExceededError",
    "CurvePoint",
    "CurveTrace",
    "DenseTensor",
    "DivergenceError",
    "EigenPair",
    "EigenSet",
    "FORWARD",
    "GENERAL",
    "HomotopyProblem",
    "HypergraphSpec",
    "InputError",
    "IterationReport",
    "KIND_H",
    "KIND_Z",
    "Provenance",
    "RefinementFailedError",
    "SEMISYMMETRIC",
    "SYMMETRIC",
    "SingularCurveError",
    "TenEigError",
    "TrackerConfig",
    "TrackingAnomalyError",
    "TrackingStalledError",
    "adjacency_tensor",
    "apply",
    "blended_derivative",
    "canonicalize_pair",
    "cyclic_hypergraph",
    "dedupe_insert",
    "degree_tensor",
    "derivative",
    "det_sign",
    "draw_generator",
    "find_odd_z",
    "is_irreducible",
    "is_weakly_irreducible",
    "jacobian_wrt_state",
    "jacobian_wrt_t",
    "lu_det_sign",
    "nqz",
    "pagerank_tensor",
    "rank1_apply_fast",
    "rank1_tensor",
    "read_tensor",
    "refine_at_target",
    "residual",
    "scaled_signless_laplacian",
    "semi_symmetrize",
    "shift_bound_gamma",
    "signless_laplacian",
    "sshopm",
    "start_eigenpair",
    "tangent_z",
    "three_z_eigenpair_tensor",
    "track_h",
    "track_z",
    "transition_tensor",
    "vec_power",
    "write_tensor",
    "z_bound",
]
