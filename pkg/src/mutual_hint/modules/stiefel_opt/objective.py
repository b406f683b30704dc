"""Joint trace-plus-inconsistency objective and its single-variable restrictions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
import scipy.sparse as sp

from mutual_hint.errors import ConfigError, ValidationError
from mutual_hint.modules.simmat.transition import TransitionMatrix
from mutual_hint.network.schema import Source

Operator = Union[np.ndarray, sp.spmatrix]


def _trace_form(L: Operator, X: np.ndarray) -> float:
    return float(np.sum(X * (L @ X)))


def penalty_numerator(P: np.ndarray, Q: np.ndarray) -> float:
    """1/2 ||P P' - Q Q'||_F^2 through k x k products only."""
    PtP = P.T @ P
    PtQ = P.T @ Q
    QtQ = Q.T @ Q
    value = 0.5 * (np.sum(PtP * PtP) - 2.0 * np.sum(PtQ * PtQ) + np.sum(QtQ * QtQ))
    return max(float(value), 0.0)


@dataclass(frozen=True)
class Subproblem:
    """F(X) = weight Tr(X'LX) + theta/nf * 1/2 ||T X X' T' - Q Q'||^2.

    ``C`` is the frozen side's weighted trace; it is constant in X and only
    enters the joint objective.
    """

    L_tilde: Operator
    weight: float = 1.0
    theta: float = 0.0
    T_tilde: Operator | None = None
    Q: np.ndarray | None = None
    C: float = 0.0
    norm_factor: float = 1.0

    @property
    def penalized(self) -> bool:
        return self.theta > 0 and self.T_tilde is not None

    def _check(self, X: np.ndarray) -> None:
        if X.ndim != 2 or X.shape[0] != self.L_tilde.shape[0]:
            raise ValidationError(
                f"embedding of shape {X.shape} does not match an operator of size {self.L_tilde.shape[0]}"
            )

    def value(self, X: np.ndarray) -> float:
        self._check(X)
        total = self.weight * _trace_form(self.L_tilde, X)
        if self.penalized:
            P = self.T_tilde @ X
            total += self.theta * penalty_numerator(P, self.Q) / self.norm_factor
        return total

    def gradient(self, X: np.ndarray) -> np.ndarray:
        self._check(X)
        G = 2.0 * self.weight * (self.L_tilde @ X)
        if self.penalized:
            P = self.T_tilde @ X
            EP = P @ (P.T @ P) - self.Q @ (self.Q.T @ P)
            G = G + (2.0 * self.theta / self.norm_factor) * (self.T_tilde.T @ EP)
        return np.asarray(G)


@dataclass(frozen=True)
class ObjectiveContext:
    L_tilde1: Operator
    L_tilde2: Operator
    T_tilde1: sp.csr_matrix  # n2 x n1
    T_tilde2: sp.csr_matrix  # n2 x n2
    theta: float = 1.0
    alpha: float = 1.0
    beta: float = 1.0
    norm_factor: float = 1.0
    anchor_count: int = 0

    @property
    def n1(self) -> int:
        return self.L_tilde1.shape[0]

    @property
    def n2(self) -> int:
        return self.L_tilde2.shape[0]

    def subproblem(self, side: Source, X_other: np.ndarray) -> Subproblem:
        """Restriction to one side with the other side's embedding frozen."""
        if side is Source.TYPE1:
            L, T, w = self.L_tilde1, self.T_tilde1, self.alpha
            L_other, T_other, w_other = self.L_tilde2, self.T_tilde2, self.beta
        else:
            L, T, w = self.L_tilde2, self.T_tilde2, self.beta
            L_other, T_other, w_other = self.L_tilde1, self.T_tilde1, self.alpha
        if X_other.shape[0] != L_other.shape[0]:
            raise ValidationError(
                f"frozen embedding has {X_other.shape[0]} rows, expected {L_other.shape[0]}"
            )
        Q = np.asarray(T_other @ X_other) if self.theta > 0 else None
        return Subproblem(
            L_tilde=L,
            weight=w,
            theta=self.theta,
            T_tilde=T if self.theta > 0 else None,
            Q=Q,
            C=w_other * _trace_form(L_other, X_other),
            norm_factor=self.norm_factor,
        )


def build_context(
    L_tilde1: Operator,
    L_tilde2: Operator,
    D_inv_sqrt1: sp.spmatrix,
    D_inv_sqrt2: sp.spmatrix,
    transition: TransitionMatrix,
    theta: float = 1.0,
    alpha: float = 1.0,
    beta: float = 1.0,
) -> ObjectiveContext:
    """Transfer operators T~1 = T12' D1^-1/2 and T~2 = T12' T12 D2^-1/2, both into news space."""
    if theta < 0:
        raise ConfigError(f"theta must be >= 0, got {theta}")
    n1, n2 = transition.shape
    if L_tilde1.shape != (n1, n1) or L_tilde2.shape != (n2, n2):
        raise ValidationError(
            f"Laplacians {L_tilde1.shape}, {L_tilde2.shape} do not match transition {transition.shape}"
        )
    R = transition.anchor_count
    if theta > 0 and R < 2:
        raise ConfigError(f"penalty undefined with {R} anchor(s), set theta=0")

    T21 = transition.T21
    T_tilde1 = (T21 @ D_inv_sqrt1).tocsr()
    T_tilde2 = (sp.diags(transition.anchors_per_news()) @ D_inv_sqrt2).tocsr()
    return ObjectiveContext(
        L_tilde1=L_tilde1,
        L_tilde2=L_tilde2,
        T_tilde1=T_tilde1,
        T_tilde2=T_tilde2,
        theta=float(theta),
        alpha=float(alpha),
        beta=float(beta),
        norm_factor=float(R * (R - 1)) if R >= 2 else 1.0,
        anchor_count=R,
    )


def objective_terms(X1: np.ndarray, X2: np.ndarray, ctx: ObjectiveContext) -> Tuple[float, float]:
    """(weighted trace part, theta-weighted normalized penalty) of the joint objective."""
    X1 = getattr(X1, "X", X1)
    X2 = getattr(X2, "X", X2)
    if X1.shape[0] != ctx.n1 or X2.shape[0] != ctx.n2:
        raise ValidationError(
            f"embeddings {X1.shape}, {X2.shape} do not match sizes ({ctx.n1}, {ctx.n2})"
        )
    trace = ctx.alpha * _trace_form(ctx.L_tilde1, X1) + ctx.beta * _trace_form(ctx.L_tilde2, X2)
    penalty = 0.0
    if ctx.theta > 0:
        P1 = np.asarray(ctx.T_tilde1 @ X1)
        P2 = np.asarray(ctx.T_tilde2 @ X2)
        penalty = ctx.theta * penalty_numerator(P1, P2) / ctx.norm_factor
    return trace, penalty


def objective(X1: np.ndarray, X2: np.ndarray, ctx: ObjectiveContext) -> float:
    """alpha Tr(X1'L1X1) + beta Tr(X2'L2X2) + theta/nf * 1/2 ||P1P1' - P2P2'||^2."""
    trace, penalty = objective_terms(X1, X2, ctx)
    return trace + penalty


def single_objective(X: np.ndarray, sub: Subproblem) -> float:
    return sub.value(getattr(X, "X", X))


def gradient_single(X: np.ndarray, sub: Subproblem) -> np.ndarray:
    return sub.gradient(getattr(X, "X", X))
