from .confidence import ConfidenceMatrix, confidence_matrix, harden
from .embedding import Embedding, indicator_embedding, init_embedding, kmeans
from .laplacian import LaplacianBundle, build_laplacian

__all__ = [
    "ConfidenceMatrix",
    "confidence_matrix",
    "harden",
    "Embedding",
    "indicator_embedding",
    "init_embedding",
    "kmeans",
    "LaplacianBundle",
    "build_laplacian",
]
