class SuperbandError(Exception):
    pass


class DimensionError(SuperbandError, ValueError):
    """Operands live in Grassmann algebras with different generator counts."""


class ParityError(SuperbandError, ValueError):
    pass


class DegenerateError(SuperbandError, ValueError):
    """An odd element that must be nonzero is zero."""


class DomainError(SuperbandError, ValueError):
    """A quantity is evaluated outside its domain (e.g. non-invertible body)."""


class GradingError(SuperbandError, ValueError):
    """Supermatrix entries do not respect the even/odd block grading."""


class ShapeError(SuperbandError, ValueError):
    pass


class ParseError(SuperbandError, ValueError):
    pass


class NotClosedError(SuperbandError, ValueError):
    """A multiplication table or subset is not closed under the product."""


class AlphaMismatchError(SuperbandError, ValueError):
    """Band elements numbered by different odd elements were combined."""


class InvalidElementError(SuperbandError, ValueError):
    """A band element violates its construction constraints."""


class RelationError(SuperbandError, ValueError):
    """An unknown relation name, a duplicate eggbox axis, or mismatched partitions."""
