"""Global tolerance policy.

Every numerical decision in the package is taken against one of the knobs
below, so a single profile object threads through the whole API.  The
defaults are deliberate: membership slack is the loosest, orthonormality
the tightest, and rank / fixed-point sit in between.
"""

from dataclasses import dataclass, replace

from .errors import InvariantViolationError


@dataclass(frozen=True)
class ToleranceProfile:
    """Bundle of tolerances consumed by all modules.

    tol_mem    membership slack; thresholds scale as tol_mem * (1 + |x|)
    tol_ortho  allowed deviation of basis inner products from delta_ij
    tol_rank   singular values below tol_rank * sigma_max count as zero
    tol_fix    round-trip / fixed-point distance
    max_iter   iteration budget for the feasibility and projection solvers
    """

    tol_mem: float = 1e-7
    tol_ortho: float = 1e-9
    tol_rank: float = 1e-8
    tol_fix: float = 1e-8
    max_iter: int = 10000

    def __post_init__(self):
        for name in ("tol_mem", "tol_ortho", "tol_rank", "tol_fix"):
            if not getattr(self, name) > 0.0:
                raise InvariantViolationError(f"{name} must be strictly positive")
        if self.max_iter < 1:
            raise InvariantViolationError("max_iter must be at least 1")

    def with_overrides(self, **kwargs) -> "ToleranceProfile":
        """Return a copy with the given fields replaced."""
        return replace(self, **kwargs)


DEFAULT_TOL = ToleranceProfile()
