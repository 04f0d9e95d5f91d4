"""Isometric Hilbert-space embeddings of finite metric spaces.

Decides embeddability, builds explicit coordinates and critical graphs,
classifies critical-graph structure, and computes geometric Fiedler values
of graphs over finite metrics.
"""

__version__ = "0.1.0"

from .errors import EmbeddingError, NotEmbeddable
from .metric import (
    CriticalGraph,
    MetricSpace,
    WeightedGraph,
    critical_graph,
    generates_metric,
    shortest_path_metric,
    validate_metric,
)
from .schoenberg import (
    EmbeddabilityReport,
    Embedding,
    embed_coordinates,
    is_embeddable,
    kernel_at_base,
    kernel_trace_profile,
    squared_distance_matrix,
    verify_isometry,
)
from .estimators import GeometricFiedler, HilbertEmbedding

__all__ = [
    "CriticalGraph",
    "EmbeddabilityReport",
    "Embedding",
    "EmbeddingError",
    "GeometricFiedler",
    "HilbertEmbedding",
    "MetricSpace",
    "NotEmbeddable",
    "WeightedGraph",
    "critical_graph",
    "embed_coordinates",
    "generates_metric",
    "is_embeddable",
    "kernel_at_base",
    "kernel_trace_profile",
    "shortest_path_metric",
    "squared_distance_matrix",
    "validate_metric",
    "verify_isometry",
]
