"""Exception types shared across the package.

Each class maps to one diagnostic category, and the CLI turns them into
distinct exit codes so shell callers can tell bad input apart from a
numerical failure.
"""


class TenEigError(Exception):
    """Base class for all package errors."""


class InputError(TenEigError):
    """Malformed input: bad dimensions, bad files, violated preconditions."""


class SingularCurveError(TenEigError):
    """Rank-deficient curve Jacobian; signals a non-generic start vector."""


class TrackingStalledError(TenEigError):
    """Step size fell below the minimum before reaching the target."""


class DivergenceError(TenEigError):
    """Iterates left the escape region around the feasible set."""


class BudgetExceededError(TenEigError):
    """Step or evaluation budget exhausted before termination."""


class TrackingAnomalyError(TenEigError):
    """Observed behaviour that contradicts the tracker's hypotheses."""


class RefinementFailedError(TenEigError):
    """Final Newton polish did not converge from the handed-off point."""
