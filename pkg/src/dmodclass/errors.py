"""Exception hierarchy shared by all modules."""


class DmodError(Exception):
    """Base class for library errors."""


class InputError(DmodError, ValueError):
    """Malformed or inconsistent input data (bad JSON, shape mismatch, ...)."""


class ModeMismatch(DmodError):
    """Exact and approximate scalars were mixed in one operation."""


class IllConditioned(DmodError):
    """Approximate computation whose answer is ambiguous at the configured tolerance."""


class NonCommuting(DmodError):
    """A tuple expected to commute does not; carries a witness pair of indices."""

    def __init__(self, i, j):
        super().__init__(f"matrices {i} and {j} do not commute")
        self.witness = (i, j)


class NotSemisimple(DmodError):
    """A matrix expected to be diagonalizable is not; carries the witness index."""

    def __init__(self, index):
        super().__init__(f"matrix {index} is not diagonalizable")
        self.witness = index


class NotNilpotent(DmodError):
    """A matrix or Lie algebra expected to be nilpotent is not."""


class NotUnipotent(DmodError):
    """U - I was expected to be nilpotent but is not."""


class NotEquivalent(DmodError):
    """A gauge construction was requested for inequivalent inputs."""


class NonNilpotentOffDiagonal(DmodError):
    """A Borel representation has a non-nilpotent off-diagonal image."""

    def __init__(self, i, j):
        super().__init__(f"image of E_{i}_{j} is not nilpotent")
        self.witness = (i, j)
