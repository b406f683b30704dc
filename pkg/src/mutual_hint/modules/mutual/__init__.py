from .inconsistency import inconsistency, pairwise_inconsistency
from .linking import ClusterLink, link_clusters
from .pipeline import MutualClustering, PreparedCorpus, prepare, run_hint, run_single
from .tuning import ThetaTuning, tune_theta

__all__ = [
    "inconsistency",
    "pairwise_inconsistency",
    "ClusterLink",
    "link_clusters",
    "MutualClustering",
    "PreparedCorpus",
    "prepare",
    "run_hint",
    "run_single",
    "ThetaTuning",
    "tune_theta",
]
