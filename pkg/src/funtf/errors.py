"""Exception types shared across the package.

Callers that retry (the batch sampler) catch :class:`NumericalDegeneracyError`
subclasses; everything else signals a caller bug or bad input and is not
retried.
"""


class FuntfError(Exception):
    """Base class for all package-specific errors."""


class UnitNormError(FuntfError):
    """A frame vector norm deviates from 1 beyond tolerance."""


class InvalidTableError(FuntfError):
    """An eigenstep table violates its defining constraints."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = ", ".join(str(v) for v in self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        super().__init__(f"invalid eigenstep table: {lines}{more}")


class InfeasibleError(FuntfError):
    """A constraint system admits no feasible point."""


class RejectionBudgetError(FuntfError):
    """Rejection sampling exhausted its trial budget without an accept."""


class NumericalDegeneracyError(FuntfError):
    """Base for errors caused by near-degenerate geometry; safe to retry."""


class InterlacingError(NumericalDegeneracyError):
    """Consecutive spectra fail the interlacing multiplicity pattern."""


class NegativeWeightError(NumericalDegeneracyError):
    """A lift weight came out negative beyond tolerance."""


class LiftRoundTripError(NumericalDegeneracyError):
    """A lifted frame fails to reproduce its eigenstep table."""


class IsolationError(NumericalDegeneracyError):
    """A targeted eigenvalue is not isolated from its neighbors."""

    def __init__(self, k, j, gap, tol):
        self.k, self.j, self.gap, self.tol = k, j, gap, tol
        super().__init__(
            f"eigenvalue ({k},{j}) not isolated: gap {gap:.3e} <= tol {tol:.3e}"
        )


class ChordError(NumericalDegeneracyError):
    """A hit-and-run chord is too short to sample from."""
