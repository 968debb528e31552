"""Exception hierarchy shared by all modules."""


class HeisVOAError(Exception):
    """Base class for errors raised by this package."""


class BackendMismatch(HeisVOAError, TypeError):
    """Exact and approximate scalars were combined."""


class DivisionByZero(HeisVOAError, ZeroDivisionError):
    pass


class NotAPerfectSquare(HeisVOAError, ValueError):
    """No exact Gaussian-rational square root exists."""


class ExactSqrtUnavailable(NotAPerfectSquare):
    """An exact construction needed an irrational square root; retry with Approx scalars."""


class DimensionMismatch(HeisVOAError, ValueError):
    pass


class NotRegular(HeisVOAError, ValueError):
    """The bilinear form restricted to the subspace is degenerate."""


class NotIsotropic(HeisVOAError, ValueError):
    pass


class ZeroVector(HeisVOAError, ValueError):
    pass


class NotOrthonormalInput(HeisVOAError, ValueError):
    pass


class SingularCayley(HeisVOAError, ValueError):
    pass


class NotAntisymmetric(HeisVOAError, ValueError):
    pass


class NotOrthogonal(HeisVOAError, ValueError):
    pass


class NotConformalCandidate(HeisVOAError, ValueError):
    pass


class ContextMismatch(HeisVOAError, ValueError):
    """Two semi-conformal pairs refer to different ambient shift vectors."""


class InvalidPair(HeisVOAError, ValueError):
    def __init__(self, message: str, index: int | None = None):
        super().__init__(message if index is None else f"pair {index}: {message}")
        self.index = index


class IsotropicGenerator(HeisVOAError, ValueError):
    pass


class UnclassifiedOrbit(HeisVOAError, RuntimeError):
    """A valid pair matched none of the listed orbit families."""


class DifferentOrbits(HeisVOAError, ValueError):
    pass
