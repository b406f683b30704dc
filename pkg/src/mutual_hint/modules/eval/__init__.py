from .metrics import (
    MetricReport,
    anchor_agreement,
    conditional_entropy,
    conditional_entropy_from_labels,
    evaluate,
    majority_mapping,
    nmi,
    pairwise_f1,
)

__all__ = [
    "MetricReport",
    "anchor_agreement",
    "conditional_entropy",
    "conditional_entropy_from_labels",
    "evaluate",
    "majority_mapping",
    "nmi",
    "pairwise_f1",
]
