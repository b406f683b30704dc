"""Curvilinear search with Barzilai-Borwein steps and a non-monotone line search."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Protocol, Tuple

import numpy as np

from mutual_hint.config import SearchParams
from mutual_hint.errors import NumericalError, StepTooLargeError
from mutual_hint.modules.spectral.embedding import Embedding
from mutual_hint.modules.stiefel_opt.cayley import (
    cayley_step,
    project_tangent,
    restore_feasibility,
)
from mutual_hint.modules.stiefel_opt.objective import ObjectiveContext, objective
from mutual_hint.network.schema import Source

logger = logging.getLogger(__name__)

STALL_WINDOW = 5

StepCallback = Callable[["StepRecord", np.ndarray], None]


class SmoothFunction(Protocol):
    def value(self, X: np.ndarray) -> float: ...

    def gradient(self, X: np.ndarray) -> np.ndarray: ...


class SolveStatus(str, Enum):
    CONVERGED = "converged"
    STALLED = "stalled"
    MAX_INNER = "max_inner"


@dataclass(frozen=True)
class StepRecord:
    """One accepted step; ``objective <= C_k + rho1 * tau * deriv`` holds for each."""

    round: int
    half: int
    iter: int
    objective: float
    grad_norm: float
    tau: float
    C_k: float
    deriv: float


@dataclass
class SolveResult:
    X: np.ndarray
    status: SolveStatus
    iterations: int
    objective: float
    grad_norm: float
    steps: List[StepRecord] = field(default_factory=list)

    @property
    def converged(self) -> bool:
        return self.status is SolveStatus.CONVERGED


def _bb_step(S: np.ndarray, Yd: np.ndarray, iteration: int, params: SearchParams) -> float:
    ss = float(np.sum(S * S))
    sy = abs(float(np.sum(S * Yd)))
    yy = float(np.sum(Yd * Yd))
    if iteration % 2 == 0:
        tau = ss / sy if sy > 0 else params.tau0
    else:
        tau = sy / yy if yy > 0 else params.tau0
    if not np.isfinite(tau) or tau <= 0:
        tau = params.tau0
    return float(np.clip(tau, params.tau_min, params.tau_max))


def curvilinear_solve(
    X0: Embedding | np.ndarray,
    fn: SmoothFunction,
    params: SearchParams,
    round_index: int = 0,
    half: int = 0,
    on_step: Optional[StepCallback] = None,
) -> SolveResult:
    X = np.array(getattr(X0, "X", X0), dtype=float)
    F = fn.value(X)
    if not np.isfinite(F):
        raise NumericalError("non-finite objective at the starting point", iteration=0)
    G = fn.gradient(X)
    PG = project_tangent(X, G)

    Q_k, C_k = 1.0, F
    tau = params.tau0
    steps: List[StepRecord] = []
    status = SolveStatus.MAX_INNER
    flat = 0
    iteration = 0
    grad_norm = float(np.linalg.norm(PG))

    while True:
        if grad_norm <= params.tol_grad:
            status = SolveStatus.CONVERGED
            break
        if iteration >= params.max_inner:
            break

        XtG = X.T @ G
        deriv = -(float(np.sum(G * G)) - float(np.sum(XtG * XtG.T)))

        accepted = None
        for _ in range(params.max_backtrack + 1):
            try:
                Y = restore_feasibility(cayley_step(X, G, tau))
            except StepTooLargeError as e:
                logger.debug(f"{e}; halving")
                tau *= 0.5
                continue
            F_new = fn.value(Y)
            if not np.isfinite(F_new):
                raise NumericalError("non-finite objective", iteration=iteration)
            if F_new <= C_k + params.rho1 * tau * deriv:
                accepted = (Y, F_new)
                break
            tau *= 0.5
        if accepted is None:
            logger.debug(f"Line search exhausted after {params.max_backtrack} halvings")
            status = SolveStatus.STALLED
            break

        Y, F_new = accepted
        record = StepRecord(round_index, half, iteration, F_new, grad_norm, tau, C_k, deriv)
        steps.append(record)
        if on_step is not None:
            on_step(record, Y)
        logger.debug(
            f"round={round_index} half={half} iter={iteration} F={F_new:.10g} "
            f"|PG|={grad_norm:.3e} tau={tau:.3e}"
        )

        G_new = fn.gradient(Y)
        PG_new = project_tangent(Y, G_new)
        next_tau = _bb_step(Y - X, PG_new - PG, iteration, params)

        flat = flat + 1 if abs(F - F_new) < params.tol_obj * max(1.0, abs(F)) else 0
        Q_next = params.eta * Q_k + 1.0
        C_k = (params.eta * Q_k * C_k + F_new) / Q_next
        Q_k = Q_next

        X, F, G, PG, tau = Y, F_new, G_new, PG_new, next_tau
        grad_norm = float(np.linalg.norm(PG))
        iteration += 1
        if flat >= STALL_WINDOW and grad_norm > params.tol_grad:
            status = SolveStatus.STALLED
            break

    return SolveResult(
        X=X, status=status, iterations=iteration, objective=F, grad_norm=grad_norm, steps=steps
    )


def alternating_solve(
    X1_0: Embedding | np.ndarray,
    X2_0: Embedding | np.ndarray,
    ctx: ObjectiveContext,
    params: SearchParams,
    on_step: Optional[StepCallback] = None,
) -> Tuple[Embedding, Embedding, List[float], List[StepRecord]]:
    """Alternate single-variable solves until both converge in one round."""
    X1 = np.array(getattr(X1_0, "X", X1_0), dtype=float)
    X2 = np.array(getattr(X2_0, "X", X2_0), dtype=float)
    trace = [objective(X1, X2, ctx)]
    steps: List[StepRecord] = []

    for round_index in range(params.max_outer):
        sub1 = ctx.subproblem(Source.TYPE1, X2)
        res1 = curvilinear_solve(X1, sub1, params, round_index, 0, on_step)
        X1 = res1.X
        trace.append(objective(X1, X2, ctx))

        sub2 = ctx.subproblem(Source.TYPE2, X1)
        res2 = curvilinear_solve(X2, sub2, params, round_index, 1, on_step)
        X2 = res2.X
        trace.append(objective(X1, X2, ctx))
        steps.extend(res1.steps)
        steps.extend(res2.steps)

        logger.info(
            f"Round {round_index}: objective {trace[-1]:.8g} "
            f"(tweets {res1.status.value} in {res1.iterations}, "
            f"news {res2.status.value} in {res2.iterations})"
        )
        if res1.converged and res2.converged:
            break
    else:
        logger.info(f"Alternation stopped after max_outer={params.max_outer} rounds")

    return Embedding(X1), Embedding(X2), trace, steps
