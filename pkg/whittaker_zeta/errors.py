"""Exception hierarchy for Whittaker Zeta.

Every error carries a short machine tag (``code``) that ends up in the
error JSON of the command line, and the exit status class it maps to.
"""

from typing import ClassVar

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_NOT_CONVERGED = 3


class WhittakerZetaError(Exception):
    """Base class for all library errors."""

    code: ClassVar[str] = "error"
    exit_status: ClassVar[int] = EXIT_VERIFICATION_FAILED

    def to_dict(self) -> dict[str, str]:
        """Machine-readable form used in reports and CLI output."""
        return {"error": self.code, "message": str(self)}


class PoleError(WhittakerZetaError):
    """A Gamma factor is evaluated at (or within the pole distance of) a pole."""

    code = "pole"


class NonIntegerOrderRequired(WhittakerZetaError):
    """The series route was asked for an integer Bessel order."""

    code = "integer_order"


class QuadratureNotConverged(WhittakerZetaError):
    """Contour truncation did not stabilise within the doubling budget."""

    code = "quadrature_not_converged"
    exit_status = EXIT_NOT_CONVERGED


class ConstraintViolation(WhittakerZetaError):
    """Parameters violate the hypotheses of an identity."""

    code = "constraint_violation"


class ResonantParameters(WhittakerZetaError):
    """Parameter differences are too close to 2Z for the series route."""

    code = "resonant_parameters"


class TruncationNotConverged(WhittakerZetaError):
    """A power series tail is still above tolerance at the order cap."""

    code = "truncation_not_converged"
    exit_status = EXIT_NOT_CONVERGED


class FieldMismatch(WhittakerZetaError):
    """Parameters over R and over C were combined."""

    code = "field_mismatch"


class ExpressionMismatch(WhittakerZetaError):
    """Two equivalent closed expressions disagree."""

    code = "expression_mismatch"


class ConvergenceRangeError(WhittakerZetaError):
    """The radial integrand does not decay inside the widened log-grid."""

    code = "convergence_range"
    exit_status = EXIT_NOT_CONVERGED


class InvalidIndex(WhittakerZetaError):
    """A K-type or vector index lies outside its admissible range."""

    code = "invalid_index"
    exit_status = EXIT_USAGE


class SuiteFormatError(WhittakerZetaError):
    """A suite or parameter file is malformed."""

    code = "suite_format"
    exit_status = EXIT_USAGE
