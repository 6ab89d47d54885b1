"""
The data-consistent CPTP set and linear optimization over it.
"""

import cvxpy as cp
import numpy as np
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from data import DEBUG, DEFAULT_EQ_TOL, EQ_TOL_WIDENING, SOLVER_ATTEMPTS
from operators import ProcessMatrix
from tomography import PhiRow, Dataset


class SolverStatus:
    OPTIMAL = "optimal"
    MAX_ITER = "max_iter"
    INFEASIBLE = "infeasible"

    # Worst first
    SEVERITY = (INFEASIBLE, MAX_ITER, OPTIMAL)


class Sense:
    MINIMIZE = "min"
    MAXIMIZE = "max"


class SolverError(RuntimeError):
    pass


class InfeasibleSetError(SolverError):
    pass


def worst_status(*statuses: str) -> str:
    for status in SolverStatus.SEVERITY:
        if status in statuses:
            return status
    return SolverStatus.OPTIMAL


@dataclass(frozen=True)
class FeasibleSetSpec:
    dim: int
    rows: Tuple[PhiRow, ...] = field(default_factory=tuple)
    targets: np.ndarray = field(default_factory=lambda: np.zeros(0))
    eq_tol: float = DEFAULT_EQ_TOL
    include_tp: bool = True

    def __post_init__(self):
        rows = tuple(self.rows)
        targets = np.array(self.targets, dtype=float).ravel()
        if len(rows) != targets.size:
            raise ValueError(f"{len(rows)} rows but {targets.size} targets")
        if targets.size and (targets.min() < 0.0 or targets.max() > 1.0):
            raise ValueError(
                f"Targets must lie in [0, 1], got range [{targets.min()}, {targets.max()}]"
            )
        if self.eq_tol <= 0:
            raise ValueError(f"Equality tolerance must be positive, got {self.eq_tol}")
        for index, row in enumerate(rows):
            if row.dim != self.dim:
                raise ValueError(f"Row {index} has dimension {row.dim}, expected {self.dim}")
        targets.setflags(write=False)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "targets", targets)

    @classmethod
    def from_dataset(
        cls,
        dataset: Dataset,
        targets: Optional[Sequence[float]] = None,
        eq_tol: float = DEFAULT_EQ_TOL,
    ) -> "FeasibleSetSpec":
        """Targets default to the true probabilities of the dataset."""
        if targets is None:
            targets = dataset.true_probabilities() if len(dataset) else []
        return cls(dim=dataset.dim, rows=tuple(dataset.rows()), targets=targets, eq_tol=eq_tol)

    def row_matrix(self) -> np.ndarray:
        """Rows stacked as a (K, d^4) matrix acting on row-major vec(chi)."""
        size = self.dim**4
        if not self.rows:
            return np.zeros((0, size), dtype=complex)
        return np.stack([row.coefficients for row in self.rows])


def cptp_variable(dim: int, include_tp: bool = True) -> Tuple[cp.Variable, List[cp.Constraint]]:
    """Hermitian d^2 x d^2 variable with positivity and trace preservation.

    Trace preservation is sum_i chi[(i, j), (i, l)] = delta_jl, i.e. the
    diagonal d x d blocks sum to the identity.
    """
    size = dim * dim
    chi = cp.Variable((size, size), hermitian=True)
    constraints = [chi >> 0]
    if include_tp:
        block_sum = sum(chi[dim * i : dim * (i + 1), dim * i : dim * (i + 1)] for i in range(dim))
        constraints.append(block_sum == np.eye(dim))
    else:
        constraints.append(cp.real(cp.trace(chi)) <= dim)
    return chi, constraints


def row_expression(chi: cp.Variable, row_matrix: np.ndarray) -> cp.Expression:
    """Real data-map image Phi vec(chi) for a stack of rows."""
    size = chi.shape[0]
    return cp.real(row_matrix @ cp.reshape(chi, (size * size,), order="C"))


def clean_chi(value: np.ndarray, dim: int) -> ProcessMatrix:
    """Hermitize a solver output and clip its small negative eigenvalues."""
    value = np.asarray(value, dtype=complex)
    value = (value + value.conj().T) / 2
    eigenvalues, eigenvectors = np.linalg.eigh(value)
    eigenvalues = np.clip(eigenvalues, 0.0, None)
    chi = (eigenvectors * eigenvalues) @ eigenvectors.conj().T
    return ProcessMatrix(dim=dim, chi=(chi + chi.conj().T) / 2)


def _debug_solve(label: str, solver: str, problem: cp.Problem) -> None:
    stats = problem.solver_stats
    iterations = stats.num_iters if stats is not None else None
    print(
        f"[SOLVER] {label}: {solver} status={problem.status} "
        f"value={problem.value} iterations={iterations}"
    )


def solve_problem(
    problem: cp.Problem,
    label: str,
    attempts: Sequence[Tuple[str, Dict[str, Any]]] = SOLVER_ATTEMPTS,
) -> str:
    """Run the conic solvers of `attempts` in turn and map the final status.

    The first optimal solution wins. An inaccurate or iteration-limited
    solution is kept as a fallback and reported as max_iter when no attempt
    reaches optimality. Raises InfeasibleSetError when every attempt that
    finished found the problem infeasible, SolverError otherwise.
    """
    fallback: Optional[List[Any]] = None
    infeasible = False
    failures = []

    for solver, options in attempts:
        try:
            problem.solve(solver=solver, **options)
        except cp.error.SolverError as e:
            failures.append(f"{solver}: {e}")
            if DEBUG:
                print(f"[SOLVER] {label}: {solver} failed: {e}")
            continue

        if DEBUG:
            _debug_solve(label, solver, problem)

        status = problem.status
        if status == cp.OPTIMAL:
            return SolverStatus.OPTIMAL
        if status in (cp.INFEASIBLE, cp.INFEASIBLE_INACCURATE):
            infeasible = True
        elif status in (cp.OPTIMAL_INACCURATE, cp.USER_LIMIT):
            if fallback is None:
                fallback = [
                    None if variable.value is None else np.array(variable.value, copy=True)
                    for variable in problem.variables()
                ]
        else:
            failures.append(f"{solver}: status '{status}'")

    if fallback is not None:
        for variable, value in zip(problem.variables(), fallback):
            variable.value = value
        return SolverStatus.MAX_ITER
    if infeasible:
        raise InfeasibleSetError(f"{label}: no CPTP process matches the data within tolerance")
    raise SolverError(f"{label}: solver failed: {'; '.join(failures)}")


class FeasibleSet:
    """Parameterized conic problems over one FeasibleSetSpec.

    The linear objective enters through real parameters, so the minimize
    and maximize problems are compiled once and re-solved for every new
    objective. The data band half-width is a parameter too: when no solver
    attempt succeeds it is widened through EQ_TOL_WIDENING and stays wide
    for every later solve on this set.
    """

    def __init__(self, spec: FeasibleSetSpec):
        self.spec = spec
        self.dim = spec.dim
        self.eq_tol = spec.eq_tol
        self.chi, self.constraints = cptp_variable(spec.dim, spec.include_tp)
        self._eq_tol = cp.Parameter(nonneg=True, value=spec.eq_tol)

        if spec.rows:
            image = row_expression(self.chi, spec.row_matrix())
            self.constraints += [
                image <= spec.targets + self._eq_tol,
                image >= spec.targets - self._eq_tol,
            ]

        size = spec.dim * spec.dim
        self._objective_real = cp.Parameter((size, size))
        self._objective_imag = cp.Parameter((size, size))
        self._problems: Dict[str, cp.Problem] = {}

    def __len__(self) -> int:
        return len(self.spec.rows)

    @property
    def widened(self) -> bool:
        return self.eq_tol > self.spec.eq_tol

    def solve(self, problem: cp.Problem, label: str) -> str:
        """solve_problem for a problem built on these constraints, widening the data band on failure."""
        try:
            return solve_problem(problem, label)
        except SolverError as e:
            if not self.spec.rows:
                raise
            last_error = e

        for factor in EQ_TOL_WIDENING:
            tolerance = self.spec.eq_tol * factor
            if tolerance <= self.eq_tol:
                continue
            self.eq_tol = tolerance
            self._eq_tol.value = tolerance
            if DEBUG:
                print(f"[SOLVER] {label}: widening eq_tol to {tolerance:.1e}")
            try:
                return solve_problem(problem, label)
            except SolverError as e:
                last_error = e

        raise last_error

    def _linear_objective(self) -> cp.Expression:
        # Tr[chi O] = sum_mn O^T_mn chi_mn
        return cp.sum(cp.multiply(self._objective_real, cp.real(self.chi))) - cp.sum(
            cp.multiply(self._objective_imag, cp.imag(self.chi))
        )

    def _problem(self, sense: str) -> cp.Problem:
        if sense not in self._problems:
            if sense == Sense.MINIMIZE:
                objective = cp.Minimize(self._linear_objective())
            elif sense == Sense.MAXIMIZE:
                objective = cp.Maximize(self._linear_objective())
            else:
                raise ValueError(f"Unknown sense '{sense}'")
            self._problems[sense] = cp.Problem(objective, self.constraints)
        return self._problems[sense]

    def solve_linear(
        self, objective: np.ndarray, sense: str
    ) -> Tuple[float, ProcessMatrix, str]:
        """Optimize Tr[chi objective] and return (value, chi, status)."""
        objective = np.asarray(objective, dtype=complex)
        size = self.dim * self.dim
        if objective.shape != (size, size):
            raise ValueError(f"Objective of shape {objective.shape}, expected ({size}, {size})")

        objective = (objective + objective.conj().T) / 2
        self._objective_real.value = np.real(objective.T)
        self._objective_imag.value = np.imag(objective.T)

        problem = self._problem(sense)
        status = self.solve(problem, f"linear {sense} over {len(self)} rows")
        if self.chi.value is None:
            raise SolverError("Linear solve returned no solution")

        chi = clean_chi(self.chi.value, self.dim)
        value = float(np.real(np.trace(chi.chi @ objective)))
        return value, chi, status


def as_feasible_set(spec: Union[FeasibleSetSpec, FeasibleSet]) -> FeasibleSet:
    if isinstance(spec, FeasibleSet):
        return spec
    return FeasibleSet(spec)


def solve_linear(
    spec: Union[FeasibleSetSpec, FeasibleSet], objective: np.ndarray, sense: str
) -> Tuple[float, ProcessMatrix, str]:
    return as_feasible_set(spec).solve_linear(objective, sense)
