from .generator import SyntheticCorpus, generate, truth_frame, write_synthetic

__all__ = ["SyntheticCorpus", "generate", "truth_frame", "write_synthetic"]
