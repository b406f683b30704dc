from .cayley import cayley_step, orthogonality_error, project_tangent
from .objective import (
    ObjectiveContext,
    Subproblem,
    build_context,
    gradient_single,
    objective,
    objective_terms,
    single_objective,
)
from .solver import SolveResult, SolveStatus, StepRecord, alternating_solve, curvilinear_solve

__all__ = [
    "cayley_step",
    "orthogonality_error",
    "project_tangent",
    "ObjectiveContext",
    "Subproblem",
    "build_context",
    "gradient_single",
    "objective",
    "objective_terms",
    "single_objective",
    "SolveResult",
    "SolveStatus",
    "StepRecord",
    "alternating_solve",
    "curvilinear_solve",
]
