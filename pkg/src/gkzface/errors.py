"""Exception hierarchy. Precondition failures carry exit code 2, scale caps 3."""


class GKZError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class PreconditionError(GKZError):
    """A documented hypothesis of the requested operation does not hold."""

    exit_code = 2


class NotFullRank(PreconditionError):
    """The matrix does not have full row rank."""


class NotPointed(PreconditionError):
    """The cone of the matrix contains a line."""


class NotNormal(PreconditionError):
    """The column semigroup is not saturated, but the operation needs it."""


class NotHomogeneous(PreconditionError):
    """No rational functional takes the value 1 on every column."""


class NotInCoset(PreconditionError):
    """The parameter is not in CF + Z^d for the given face F."""


class EmptyFace(PreconditionError):
    """The operation needs a face with at least one column."""


class NotAFace(PreconditionError):
    """The given column set is not a face of the cone."""


class NotUpwardClosed(PreconditionError):
    """The given face set is not a valid torus-stable open set."""


class LambdaUnsatisfiable(PreconditionError):
    """No translate of the parameter inside CF can align its facet signs.

    Raised when some facet F' of F takes a forced integral value on the
    whole coset while the facets of the ambient cone meeting F in F' carry
    both a nonnegative and a negative integer value of the parameter.  The
    instance data is kept so callers can verify the obstruction.
    """

    def __init__(self, message, face_facet, conflicts, forced_value):
        super().__init__(message)
        self.face_facet = face_facet
        self.conflicts = conflicts
        self.forced_value = forced_value


class ScaleLimit(GKZError):
    """A configured enumeration or Groebner cap was exceeded."""

    exit_code = 3


class Infeasible(GKZError):
    """Internal error: a linear system that must be feasible was not."""


class PostconditionViolated(GKZError):
    """Internal error: a constructed object failed its own contract."""
