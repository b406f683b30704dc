from .count_matrix import CountMatrix, build_count_matrices, build_count_matrix

__all__ = ["CountMatrix", "build_count_matrix", "build_count_matrices"]
