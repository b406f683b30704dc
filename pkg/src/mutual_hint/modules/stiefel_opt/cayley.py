"""Feasible curves on the Stiefel manifold."""

from __future__ import annotations

import logging

import numpy as np

from mutual_hint.errors import StepTooLargeError

logger = logging.getLogger(__name__)

DRIFT_WARNING = 1e-6
FEASIBILITY_TOLERANCE = 1e-10


def project_tangent(X: np.ndarray, G: np.ndarray) -> np.ndarray:
    """G - X G'X, the gradient term that vanishes at stationary points."""
    return G - X @ (G.T @ X)


def orthogonality_error(X: np.ndarray) -> float:
    return float(np.linalg.norm(X.T @ X - np.eye(X.shape[1])))


def polar_retraction(X: np.ndarray) -> np.ndarray:
    """Nearest matrix with orthonormal columns (U V' of the thin SVD)."""
    U, _, Vt = np.linalg.svd(X, full_matrices=False)
    return U @ Vt


def restore_feasibility(X: np.ndarray) -> np.ndarray:
    error = orthogonality_error(X)
    if error <= FEASIBILITY_TOLERANCE:
        return X
    if error > DRIFT_WARNING:
        logger.warning(f"Orthogonality drift {error:.3e}; re-orthonormalizing")
    return polar_retraction(X)


def cayley_step(X: np.ndarray, G: np.ndarray, tau: float) -> np.ndarray:
    """Y(tau) = (I + tau/2 A)^-1 (I - tau/2 A) X with A = G X' - X G'.

    Uses A = U V' with U = [G, X], V = [X, -G], so only a 2k x 2k system is solved.
    """
    if tau < 0:
        raise ValueError(f"step size must be non-negative, got {tau}")
    if tau == 0:
        return X.copy()

    k = X.shape[1]
    U = np.hstack([G, X])
    V = np.hstack([X, -G])
    system = np.eye(2 * k) + 0.5 * tau * (V.T @ U)
    try:
        M = np.linalg.solve(system, V.T @ X)
    except np.linalg.LinAlgError as e:
        raise StepTooLargeError(f"singular Cayley system at tau={tau:.3e}") from e
    Y = X - tau * (U @ M)
    if not np.all(np.isfinite(Y)):
        raise StepTooLargeError(f"non-finite Cayley step at tau={tau:.3e}")
    return Y
