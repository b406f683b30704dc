"""Path-instance count matrices A_i, one per meta-path of a star schema."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from mutual_hint.errors import ValidationError
from mutual_hint.modules.corpus.documents import Document
from mutual_hint.modules.hin.registry import COUNT_BUILDERS
from mutual_hint.network.engine import MetaPath, MetaPathKind
from mutual_hint.network.schema import ObjectClass

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CountMatrix:
    meta_path: MetaPath
    A: sp.csr_matrix
    row_totals: np.ndarray

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @classmethod
    def from_sparse(cls, meta_path: MetaPath, A: sp.spmatrix) -> "CountMatrix":
        A = sp.csr_matrix(A, dtype=np.int64)
        A.eliminate_zeros()
        A.sort_indices()
        row_totals = np.asarray(A.sum(axis=1)).ravel().astype(np.int64)
        return cls(meta_path=meta_path, A=A, row_totals=row_totals)


def count_builder(kind: MetaPathKind):
    """Decorator registering the builder of one meta-path kind."""

    def wrapper(fn):
        COUNT_BUILDERS[kind] = fn
        return fn

    return wrapper


# -------------------------
# Incidence helpers
# -------------------------


def occurrence_matrix(
    documents: Sequence[Document], object_classes: Sequence[ObjectClass]
) -> sp.csr_matrix:
    """Document x object matrix of occurrence counts c_x(o).

    Objects of different classes never coincide, even with equal names.
    """
    columns: Dict[Tuple[ObjectClass, str], int] = {}
    rows: List[int] = []
    cols: List[int] = []
    data: List[int] = []
    for x, doc in enumerate(documents):
        for object_class in object_classes:
            for name, count in doc.objects(object_class).items():
                col = columns.setdefault((object_class, name), len(columns))
                rows.append(x)
                cols.append(col)
                data.append(count)
    return sp.csr_matrix(
        (np.asarray(data, dtype=np.int64), (rows, cols)),
        shape=(len(documents), len(columns)),
    )


def retweet_matrix(documents: Sequence[Document]) -> sp.csr_matrix:
    """R[x, z] = 1 iff document x retweets document z."""
    index = {doc.id: x for x, doc in enumerate(documents)}
    rows: List[int] = []
    cols: List[int] = []
    for x, doc in enumerate(documents):
        if doc.retweet_of is None:
            continue
        if doc.retweet_of not in index:
            raise ValidationError(f"tweet '{doc.id}' retweets unknown tweet '{doc.retweet_of}'")
        rows.append(x)
        cols.append(index[doc.retweet_of])
    n = len(documents)
    return sp.csr_matrix((np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=(n, n))


# -------------------------
# Builders per meta-path kind
# -------------------------


@count_builder(MetaPathKind.COMMON_OBJECT)
def common_object_counts(documents: Sequence[Document], meta_path: MetaPath) -> sp.spmatrix:
    """A(x, y) = sum over shared objects o of c_x(o) * c_y(o)."""
    C = occurrence_matrix(documents, meta_path.object_classes)
    return C @ C.T


@count_builder(MetaPathKind.RETWEET)
def retweet_counts(documents: Sequence[Document], meta_path: MetaPath) -> sp.spmatrix:
    """A(x, y) = 1 iff x retweets y or y retweets x."""
    R = retweet_matrix(documents)
    A = (R + R.T).tocsr()
    A.data = np.ones_like(A.data)
    return A


@count_builder(MetaPathKind.COMMON_RETWEET)
def common_retweet_counts(documents: Sequence[Document], meta_path: MetaPath) -> sp.spmatrix:
    """A(x, y) = number of tweets both x and y retweet, for x != y."""
    R = retweet_matrix(documents)
    A = (R @ R.T).tolil()
    A.setdiag(0)
    return A.tocsr()


@count_builder(MetaPathKind.RETWEET_RELATION)
def retweet_relation_counts(documents: Sequence[Document], meta_path: MetaPath) -> sp.spmatrix:
    return retweet_counts(documents, meta_path) + common_retweet_counts(documents, meta_path)


def build_count_matrix(documents: Sequence[Document], meta_path: MetaPath) -> CountMatrix:
    for doc in documents:
        if doc.source is not meta_path.side:
            raise TypeError(
                f"document '{doc.id}' is {doc.source.value} but meta-path "
                f"'{meta_path.id}' is defined on {meta_path.side.value}"
            )

    builder = COUNT_BUILDERS.get(meta_path.kind)
    if builder is None:
        raise ValidationError(f"no count builder registered for {meta_path.kind.value}")

    counts = CountMatrix.from_sparse(meta_path, builder(documents, meta_path))
    logger.debug(f"Meta-path {meta_path.id}: {counts.A.nnz} non-zero path counts")
    return counts


def build_count_matrices(
    documents: Sequence[Document],
    meta_paths: Sequence[MetaPath],
    threads: Optional[int] = None,
) -> List[CountMatrix]:
    """Count matrices for several meta-paths, built concurrently, in input order."""
    if threads == 1 or len(meta_paths) <= 1:
        return [build_count_matrix(documents, p) for p in meta_paths]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda p: build_count_matrix(documents, p), meta_paths))
