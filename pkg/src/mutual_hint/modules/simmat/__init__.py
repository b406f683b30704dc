from .similarity import SimMatrix, build_similarity, hint_similarity, validate_weights
from .transition import TransitionMatrix, build_transition, transition_anchors

__all__ = [
    "SimMatrix",
    "build_similarity",
    "hint_similarity",
    "validate_weights",
    "TransitionMatrix",
    "build_transition",
    "transition_anchors",
]
