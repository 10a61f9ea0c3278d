"""Exception types shared across the toolkit."""


class EqsingError(Exception):
    """Base class for all toolkit errors."""


# --- diagram file parsing ---

class DiagramError(EqsingError):
    """Structural or syntactic problem in a diagram file."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DiagramSyntaxError(DiagramError):
    pass


class DuplicateVertexError(DiagramError):
    pass


class DanglingEdgeError(DiagramError):
    pass


class DuplicateEdgeError(DiagramError):
    pass


# --- lattices and sublattices ---

class DependentBasisError(EqsingError):
    """Input vectors are linearly dependent over the rationals."""


# --- group actions ---

class ActionError(EqsingError):
    """A group-action invariant is violated; carries witness data."""


class NotInvolutionError(ActionError):
    pass


class NotCommutingError(ActionError):
    pass


class NotIsometryError(ActionError):
    pass


# --- monodromy engine ---

class IsotropicCycleError(EqsingError):
    """Reflection requested in a cycle of self-intersection zero."""


class NonIntegralReflectionError(EqsingError):
    """The Picard-Lefschetz map does not preserve the integer lattice."""


class OrbitNotOrthogonalError(EqsingError):
    """Orbit cycles are not pairwise orthogonal."""


class ProjectsToZeroError(EqsingError):
    """The character projection of the orbit cycle vanishes."""


# --- local algebra ---

class NotCertifiedError(EqsingError):
    """Quotient dimension could not be certified up to the degree cap.

    Raised both for non-isolated critical points and for an insufficient
    max_degree; the two are indistinguishable at a finite truncation.
    """

    def __init__(self, max_degree):
        self.max_degree = max_degree
        super().__init__(
            f"finiteness of the Jacobian quotient not certified at degree {max_degree}"
        )


class NotIntegerError(EqsingError):
    """Weight data does not yield an integer Milnor number."""


class NotInvariantError(EqsingError):
    """Polynomial is not invariant under the declared group action."""


# --- catalog ---

class BadParameterError(EqsingError):
    """Family parameter outside the allowed range or an excluded modulus."""


class NoFixtureError(EqsingError):
    """No bundled diagram/action fixture for the requested family."""


class CriterionMismatchError(EqsingError):
    """Negative definiteness and monodromy finiteness disagree on a fixture.

    The two criteria must coincide on every catalog entry; a mismatch means
    corrupted fixture data, never valid output.
    """
