"""
Informational-completeness certification: the spread of the size functional
f(chi) = Tr[chi Z] / sqrt(Tr[Z^2]) over the feasible set.
"""

import numpy as np
from dataclasses import dataclass
from typing import Optional, Union

from data import DEBUG
from operators import ProcessMatrix
from .feasible_set import (
    FeasibleSet,
    FeasibleSetSpec,
    Sense,
    as_feasible_set,
    worst_status,
)

# First-step gaps below this make the normalization meaningless
GAP_FLOOR = 1e-12


@dataclass(frozen=True)
class IccResult:
    f_min: float
    f_max: float
    s_cvx: float
    gap: float
    first_gap: float
    argmin_chi: ProcessMatrix
    argmax_chi: ProcessMatrix
    solver_status: str
    eq_tol: float


def size_objective(z_matrix: np.ndarray) -> np.ndarray:
    z_matrix = np.asarray(z_matrix, dtype=complex)
    norm = np.sqrt(np.real(np.trace(z_matrix @ z_matrix)))
    if norm <= 0:
        raise ValueError("Size functional matrix must be nonzero")
    return z_matrix / norm


def icc(
    spec: Union[FeasibleSetSpec, FeasibleSet],
    z_matrix: np.ndarray,
    s1: Optional[float] = None,
) -> IccResult:
    """Minimize and maximize f over the feasible set.

    s_cvx = (f_max - f_min) / s1 where s1 is the first-step gap; when s1 is
    absent this call defines it.
    """
    feasible = as_feasible_set(spec)
    objective = size_objective(z_matrix)

    f_min, argmin_chi, status_min = feasible.solve_linear(objective, Sense.MINIMIZE)
    f_max, argmax_chi, status_max = feasible.solve_linear(objective, Sense.MAXIMIZE)

    gap = max(f_max - f_min, 0.0)
    first_gap = gap if s1 is None else float(s1)
    s_cvx = gap / first_gap if first_gap > GAP_FLOOR else 0.0

    if DEBUG:
        print(f"[DEBUG] ICC over {len(feasible)} rows: f in [{f_min:.10f}, {f_max:.10f}], s_cvx={s_cvx:.3e} eq_tol={feasible.eq_tol:.1e}")

    return IccResult(
        f_min=f_min,
        f_max=f_max,
        s_cvx=s_cvx,
        gap=gap,
        first_gap=first_gap,
        argmin_chi=argmin_chi,
        argmax_chi=argmax_chi,
        solver_status=worst_status(status_min, status_max),
        eq_tol=feasible.eq_tol,
    )
