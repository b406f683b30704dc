"""Pipeline stages, from annotated corpora to linked mutual clusterings."""

__all__ = [
    "corpus",
    "hin",
    "simmat",
    "spectral",
    "stiefel_opt",
    "mutual",
    "eval",
    "synth",
]
