"""Degree, Laplacian and normalized Laplacian of a similarity matrix."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from mutual_hint.errors import ValidationError
from mutual_hint.modules.simmat.similarity import SimMatrix

logger = logging.getLogger(__name__)

ISOLATED_DEGREE = 1e-8
SYMMETRY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class LaplacianBundle:
    S: sp.csr_matrix  # similarity after isolated-node regularization
    degrees: np.ndarray
    L: sp.csr_matrix
    L_tilde: sp.csr_matrix
    D_inv_sqrt: sp.dia_matrix

    @property
    def D(self) -> sp.dia_matrix:
        return sp.diags(self.degrees)

    @property
    def n(self) -> int:
        return self.S.shape[0]


def build_laplacian(sim: SimMatrix | sp.spmatrix | np.ndarray) -> LaplacianBundle:
    """L = D - S and L~ = D^-1/2 L D^-1/2; zero-degree rows get an epsilon self-loop."""
    S = sim.S if isinstance(sim, SimMatrix) else sim
    S = sp.csr_matrix(S, dtype=float)
    if S.shape[0] != S.shape[1]:
        raise ValidationError(f"similarity matrix must be square, got {S.shape}")
    if S.nnz and S.data.min() < 0:
        raise ValidationError("similarity matrix has negative entries")
    asymmetry = abs(S - S.T)
    if asymmetry.nnz and asymmetry.max() > SYMMETRY_TOLERANCE:
        raise ValidationError(f"similarity matrix is not symmetric (max gap {asymmetry.max():.3g})")

    degrees = np.asarray(S.sum(axis=1)).ravel()
    isolated = degrees <= 0
    if isolated.any():
        logger.warning(f"{int(isolated.sum())} isolated documents regularized with degree {ISOLATED_DEGREE}")
        S = (S + sp.diags(np.where(isolated, ISOLATED_DEGREE, 0.0))).tocsr()
        degrees = np.where(isolated, ISOLATED_DEGREE, degrees)

    L = (sp.diags(degrees) - S).tocsr()
    D_inv_sqrt = sp.diags(1.0 / np.sqrt(degrees))
    L_tilde = (D_inv_sqrt @ L @ D_inv_sqrt).tocsr()
    L_tilde = ((L_tilde + L_tilde.T) * 0.5).tocsr()
    return LaplacianBundle(S=S, degrees=degrees, L=L, L_tilde=L_tilde, D_inv_sqrt=D_inv_sqrt)
