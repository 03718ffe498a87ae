"""Domain errors.  The CLI maps every subclass of DomainError to exit code 2."""


class DomainError(Exception):
    """Base class for failures that come from the mathematics, not from usage."""


class NotNilpotent(DomainError):
    """Some path of the truncation length does not vanish in the quotient."""


class Inadmissible(DomainError):
    """A relation is not vertex-homogeneous, not composable, or too short."""


class HasRelations(DomainError):
    """An operation restricted to path algebras received relations."""


class FieldObstruction(DomainError):
    """A Fitting split kept producing an irreducible factor of degree > 1."""

    def __init__(self, message: str, degree: int = 0):
        super().__init__(message)
        self.degree = degree


class NotRigid(DomainError):
    """The input presentation has E(f, f) != 0."""


class NotAlmostComplete(DomainError):
    """A collection passed to ``complements`` has the wrong size or rank."""


class ZeroVector(DomainError):
    """The zero vector has no direction."""


class PoleCollision(DomainError):
    """A point coincides with the projection pole."""


class InvalidRepresentation(DomainError):
    """Arrow matrices have wrong shapes or violate a relation."""
