"""Exception types raised by the library.

Every domain error derives from :class:`EmbeddingError`, so callers (and the
CLI) can catch a single type and report ``type(err).__name__``.
"""


class EmbeddingError(ValueError):
    """Base class for all domain errors."""


class AsymmetricMatrix(EmbeddingError):
    pass


class NegativeDistance(EmbeddingError):
    pass


class NonzeroDiagonal(EmbeddingError):
    pass


class TriangleViolation(EmbeddingError):
    def __init__(self, i, j, k, excess):
        self.triple = (i, j, k)
        self.excess = excess
        super().__init__(
            f"d[{i}][{j}] exceeds d[{i}][{k}] + d[{k}][{j}] by {excess:.6g}"
        )


class DisconnectedGraph(EmbeddingError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"graph is disconnected; vertex {vertex} is unreachable")


# same condition, name used by the structural classifiers
Disconnected = DisconnectedGraph


class SizeMismatch(EmbeddingError):
    pass


class NonFiniteEntry(EmbeddingError):
    pass


class DimensionMismatch(EmbeddingError):
    pass


class NotEmbeddable(EmbeddingError):
    pass


class IndexOutOfRange(EmbeddingError, IndexError):
    pass


class WrongSize(EmbeddingError):
    pass


class BudgetExceeded(EmbeddingError):
    pass


class IsolatedVertex(EmbeddingError):
    pass


class ConstantMap(EmbeddingError):
    pass


class TargetTooSmall(EmbeddingError):
    pass


class GraphMismatch(EmbeddingError):
    pass


class TargetMismatch(EmbeddingError):
    pass


class BadParameters(EmbeddingError):
    pass
