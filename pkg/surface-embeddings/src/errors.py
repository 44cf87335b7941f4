"""Error hierarchy for the surface embeddings toolkit.

Every error carries an ``exit_code`` used by the command line front end.
Input validation errors also subclass ``ValueError``.
"""

from typing import Any


class SurfaceEmbeddingError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 10


# Graph construction and lookup


class DuplicateLabel(SurfaceEmbeddingError, ValueError):
    exit_code = 11


class UnknownEndpoint(SurfaceEmbeddingError, ValueError):
    exit_code = 12


class LoopForbidden(SurfaceEmbeddingError, ValueError):
    exit_code = 13


class UnknownVertex(SurfaceEmbeddingError, ValueError):
    exit_code = 14


class TooLarge(SurfaceEmbeddingError):
    exit_code = 15


class Disconnected(SurfaceEmbeddingError):
    exit_code = 16


class HasLoops(SurfaceEmbeddingError):
    exit_code = 17


# Embedding schemes


class InvalidScheme(SurfaceEmbeddingError, ValueError):
    exit_code = 20


class GraphMismatch(SurfaceEmbeddingError, ValueError):
    exit_code = 21


# Local Hamiltonicity


class NonSimpleVertex(SurfaceEmbeddingError):
    exit_code = 30


class DegreeTooLarge(SurfaceEmbeddingError):
    exit_code = 31


# Triangulation engine


class NotGenusZero(SurfaceEmbeddingError):
    exit_code = 40


class NotACycle(SurfaceEmbeddingError, ValueError):
    exit_code = 41


class PreconditionViolated(SurfaceEmbeddingError):
    """A hypothesis of the interior-vertex lemma does not hold."""

    exit_code = 42

    def __init__(self, hypothesis: str, message: str):
        super().__init__(f"{hypothesis}: {message}")
        self.hypothesis = hypothesis


class EdgeCountMismatch(SurfaceEmbeddingError):
    exit_code = 43


class NotLocallyHamiltonian(SurfaceEmbeddingError):
    exit_code = 44


class ReconstructionFailed(SurfaceEmbeddingError):
    """Backtracking found no triangulation although the hypotheses held."""

    exit_code = 45

    def __init__(self, message: str, tag: str = "exhausted", trace: Any = None):
        super().__init__(f"[{tag}] {message}")
        self.tag = tag
        self.trace = trace


# Flowers


class BadAttachmentVertex(SurfaceEmbeddingError, ValueError):
    exit_code = 50


# Enumeration


class RangeTooLarge(SurfaceEmbeddingError):
    exit_code = 60


# Input/output


class ParseError(SurfaceEmbeddingError, ValueError):
    exit_code = 70


class ValidationError(SurfaceEmbeddingError, ValueError):
    exit_code = 71
