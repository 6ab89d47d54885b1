"""
Estimator selection over the feasible set (minimum entropy, entrywise L1)
and CPTP-constrained fits of noisy frequencies (weighted ML, least squares).
"""

import cvxpy as cp
import numpy as np
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

from data import (
    DEBUG,
    DEFAULT_COPIES,
    DEFAULT_RESTARTS,
    ENTROPY_FLOOR,
    FRANK_WOLFE_GAP_TOL,
    FRANK_WOLFE_MAX_ITER,
)
from operators import (
    ProcessMatrix,
    haar_unitary,
    lex_key,
    make_rng,
    process_entropy,
    unitary_chi,
)
from tomography import Dataset
from .feasible_set import (
    FeasibleSet,
    FeasibleSetSpec,
    Sense,
    SolverError,
    as_feasible_set,
    clean_chi,
    cptp_variable,
    row_expression,
    solve_problem,
)

ENTROPY_TIE_DECIMALS = 9


@dataclass(frozen=True)
class EntropySearchResult:
    chi: ProcessMatrix
    entropy: float
    restart_entropies: Tuple[float, ...]
    iterations: Tuple[int, ...]


def entropy_gradient(process: ProcessMatrix) -> np.ndarray:
    """Gradient of -Tr[rho log rho] at rho = chi/d, with respect to chi."""
    dim = process.dim
    eigenvalues, eigenvectors = np.linalg.eigh((process.chi + process.chi.conj().T) / (2 * dim))
    logs = np.log(np.maximum(eigenvalues, ENTROPY_FLOOR))
    log_rho = (eigenvectors * logs) @ eigenvectors.conj().T
    return -(log_rho + np.eye(dim * dim)) / dim


def frank_wolfe_descent(
    feasible: FeasibleSet, start: ProcessMatrix, max_iter: int = FRANK_WOLFE_MAX_ITER
) -> Tuple[ProcessMatrix, float, int]:
    """Full-step conditional gradient for the concave entropy.

    Each step jumps to the linear minimizer of the gradient, which never
    increases a concave objective. Stops on a small duality gap, on a step
    that does not lower the entropy, or after max_iter steps.
    """
    current = start
    current_entropy = process_entropy(current)

    for iteration in range(1, max_iter + 1):
        gradient = entropy_gradient(current)
        _, vertex, _ = feasible.solve_linear(gradient, Sense.MINIMIZE)

        gap = float(np.real(np.trace(gradient @ (current.chi - vertex.chi))))
        if gap <= FRANK_WOLFE_GAP_TOL:
            return current, current_entropy, iteration

        vertex_entropy = process_entropy(vertex)
        if vertex_entropy >= current_entropy:
            return current, current_entropy, iteration

        current, current_entropy = vertex, vertex_entropy

    return current, current_entropy, max_iter


def _selection_key(chi: ProcessMatrix, entropy: float) -> Tuple[float, ...]:
    return (round(entropy, ENTROPY_TIE_DECIMALS),) + lex_key(chi.chi)


def min_entropy_search(
    spec: Union[FeasibleSetSpec, FeasibleSet],
    restarts: int = DEFAULT_RESTARTS,
    rng: Optional[np.random.Generator] = None,
    hints: Optional[Sequence[np.ndarray]] = None,
    max_iter: int = FRANK_WOLFE_MAX_ITER,
) -> EntropySearchResult:
    """Best of several Frank-Wolfe descents on the entropy of chi/d.

    Every descent starts from the feasible point of largest overlap with a
    Haar-random unitary channel; each optional hint matrix seeds one extra
    descent the same way. Ties in entropy are broken lexicographically on
    the matrix entries.
    """
    if restarts < 1:
        raise ValueError(f"Restarts must be at least 1, got {restarts}")

    feasible = as_feasible_set(spec)
    rng = make_rng(rng)
    dim = feasible.dim

    start_objectives = [unitary_chi(haar_unitary(dim, rng)).chi for _ in range(restarts)]
    start_objectives += [np.asarray(hint, dtype=complex) for hint in (hints or [])]

    best = None
    best_key = None
    entropies = []
    iterations = []
    for index, objective in enumerate(start_objectives):
        _, start, _ = feasible.solve_linear(objective, Sense.MAXIMIZE)
        chi, entropy, steps = frank_wolfe_descent(feasible, start, max_iter)
        entropies.append(entropy)
        iterations.append(steps)

        key = _selection_key(chi, entropy)
        if best_key is None or key < best_key:
            best, best_key = chi, key

        if DEBUG:
            print(f"[DEBUG] minENT start {index + 1}/{len(start_objectives)}: entropy {entropy:.6e} after {steps} steps")

    return EntropySearchResult(
        chi=best,
        entropy=process_entropy(best),
        restart_entropies=tuple(entropies),
        iterations=tuple(iterations),
    )


def min_entropy_estimator(
    spec: Union[FeasibleSetSpec, FeasibleSet],
    restarts: int = DEFAULT_RESTARTS,
    rng: Optional[np.random.Generator] = None,
    hints: Optional[Sequence[np.ndarray]] = None,
) -> ProcessMatrix:
    return min_entropy_search(spec, restarts, rng, hints).chi


def min_l1_estimator(
    spec: Union[FeasibleSetSpec, FeasibleSet], unitary: np.ndarray
) -> ProcessMatrix:
    """Feasible chi minimizing the entrywise L1 norm sum |(U^dag chi U)_mn|."""
    feasible = as_feasible_set(spec)
    unitary = np.asarray(unitary, dtype=complex)
    size = feasible.dim * feasible.dim
    if unitary.shape != (size, size):
        raise ValueError(f"Rotation of shape {unitary.shape}, expected ({size}, {size})")

    rotated = unitary.conj().T @ feasible.chi @ unitary
    problem = cp.Problem(cp.Minimize(cp.sum(cp.abs(rotated))), feasible.constraints)
    feasible.solve(problem, f"minL1 over {len(feasible)} rows")
    if feasible.chi.value is None:
        raise SolverError("minL1 solve returned no solution")
    return clean_chi(feasible.chi.value, feasible.dim)


def _fit_weights(dataset: Dataset, frequencies: np.ndarray) -> np.ndarray:
    """Gaussian variances max(nu, 1/N) with N falling back to DEFAULT_COPIES."""
    copies = dataset.copies()
    copies = np.where(copies > 0, copies, DEFAULT_COPIES)
    return np.maximum(frequencies, 1.0 / copies)


def _observed(dataset: Dataset) -> np.ndarray:
    if any(record.nu is None for record in dataset):
        return dataset.true_probabilities()
    return dataset.frequencies()


def ml_fit(dataset: Dataset) -> ProcessMatrix:
    """CPTP chi maximizing the Gaussian log-likelihood of the normalized counts."""
    if not len(dataset):
        raise ValueError("Cannot fit an empty dataset")

    frequencies = dataset.frequencies()
    weights = _fit_weights(dataset, frequencies)
    row_matrix = np.stack([row.coefficients for row in dataset.rows()])

    chi, constraints = cptp_variable(dataset.dim)
    residual = cp.multiply(1.0 / np.sqrt(2.0 * weights), frequencies - row_expression(chi, row_matrix))
    problem = cp.Problem(cp.Minimize(cp.sum_squares(residual)), constraints)
    solve_problem(problem, f"ML fit of {len(dataset)} rows")
    if chi.value is None:
        raise SolverError("ML fit returned no solution")
    return clean_chi(chi.value, dataset.dim)


def ml_probabilities(dataset: Dataset) -> np.ndarray:
    """Physical probabilities Phi vec(chi_ML), clipped to [0, 1]."""
    fitted = ml_fit(dataset)
    values = np.array([row.dot(fitted.chi) for row in dataset.rows()], dtype=float)
    return np.clip(values, 0.0, 1.0)


def least_squares_estimator(dataset: Dataset) -> ProcessMatrix:
    """CPTP chi closest in unweighted least squares to the observed frequencies."""
    if not len(dataset):
        raise ValueError("Cannot fit an empty dataset")

    observed = _observed(dataset)
    row_matrix = np.stack([row.coefficients for row in dataset.rows()])

    chi, constraints = cptp_variable(dataset.dim)
    problem = cp.Problem(
        cp.Minimize(cp.sum_squares(row_expression(chi, row_matrix) - observed)), constraints
    )
    solve_problem(problem, f"least squares fit of {len(dataset)} rows")
    if chi.value is None:
        raise SolverError("Least squares fit returned no solution")
    return clean_chi(chi.value, dataset.dim)
