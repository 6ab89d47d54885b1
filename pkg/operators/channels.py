"""
Channel representations: the |i><j| operator basis, Kraus sets, process
matrices and the conversions and figures of merit between them.
"""

import numpy as np
from dataclasses import dataclass, field
from typing import Iterator, List

from data import (
    DEBUG,
    KRAUS_TOL,
    HERMITIAN_TOL,
    PSD_TOL,
    TRACE_TOL,
    ENTROPY_FLOOR,
)
from .linalg import complete_to_unitary


@dataclass(frozen=True)
class OperatorBasis:
    """Trace-orthonormal basis B_{d*i+j} = |i><j|, generated on demand.

    Indices are 0-based here; the 1-based label of B_m is m + 1.
    """

    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"Basis dimension must be positive, got {self.dim}")

    def __len__(self) -> int:
        return self.dim * self.dim

    def __iter__(self) -> Iterator[np.ndarray]:
        for index in range(len(self)):
            yield self.element(index)

    def index(self, i: int, j: int) -> int:
        return self.dim * i + j

    def element(self, index: int) -> np.ndarray:
        if not 0 <= index < len(self):
            raise ValueError(f"Basis index {index} outside [0, {len(self) - 1}]")
        i, j = divmod(index, self.dim)
        element = np.zeros((self.dim, self.dim), dtype=complex)
        element[i, j] = 1.0
        return element

    def combine(self, coefficients: np.ndarray) -> np.ndarray:
        """sum_m c_m B_m, i.e. the coefficients laid out row-major."""
        coefficients = np.asarray(coefficients, dtype=complex).ravel()
        if coefficients.size != len(self):
            raise ValueError(
                f"Expected {len(self)} coefficients, got {coefficients.size}"
            )
        return coefficients.reshape(self.dim, self.dim)


def _readonly(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=complex, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class KrausSet:
    dim: int
    operators: List[np.ndarray] = field(default_factory=list)

    def __post_init__(self):
        if not self.operators:
            raise ValueError("A Kraus set needs at least one operator")
        operators = []
        for index, operator in enumerate(self.operators):
            operator = np.asarray(operator, dtype=complex)
            if operator.shape != (self.dim, self.dim):
                raise ValueError(
                    f"Kraus operator {index} has shape {operator.shape}, "
                    f"expected ({self.dim}, {self.dim})"
                )
            operators.append(_readonly(operator))
        object.__setattr__(self, "operators", operators)

    @property
    def rank(self) -> int:
        return len(self.operators)

    def completeness_residual(self) -> float:
        total = sum(k.conj().T @ k for k in self.operators)
        return float(np.max(np.abs(total - np.eye(self.dim))))

    def linear_rank(self, tol: float = 1e-10) -> int:
        stacked = np.stack([k.reshape(-1) for k in self.operators])
        return int(np.linalg.matrix_rank(stacked, tol=tol))

    def apply(self, rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (self.dim, self.dim):
            raise ValueError(
                f"State of shape {rho.shape} does not match channel dimension {self.dim}"
            )
        return sum(k @ rho @ k.conj().T for k in self.operators)

    def validate(self, raise_on_errors: bool = True) -> List[str]:
        errors = []

        residual = self.completeness_residual()
        if residual > KRAUS_TOL:
            errors.append(f"Completeness residual {residual:.3e} exceeds {KRAUS_TOL}")

        independent = self.linear_rank()
        if independent != self.rank:
            errors.append(
                f"Only {independent} of {self.rank} Kraus operators are linearly independent"
            )

        if errors:
            if raise_on_errors:
                raise ValueError("Invalid Kraus set:\n  " + "\n  ".join(errors))
            for error in errors:
                print(f"[ERROR] {error}")

        return errors


@dataclass(frozen=True)
class ProcessMatrix:
    """d^2 x d^2 process matrix chi in the |i><j| basis."""

    dim: int
    chi: np.ndarray
    trace_preserving: bool = True

    def __post_init__(self):
        chi = np.asarray(self.chi, dtype=complex)
        size = self.dim * self.dim
        if chi.shape != (size, size):
            raise ValueError(
                f"Process matrix of shape {chi.shape} does not match dimension {self.dim}"
            )
        if not np.all(np.isfinite(chi)):
            raise ValueError("Process matrix has non-finite entries")
        object.__setattr__(self, "chi", _readonly(chi))

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.chi)))

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues of the Hermitian part, ascending."""
        return np.linalg.eigvalsh((self.chi + self.chi.conj().T) / 2)

    def tensor(self) -> np.ndarray:
        """chi reshaped so that tensor[i, j, k, l] = chi_{(i,j),(k,l)}."""
        d = self.dim
        return self.chi.reshape(d, d, d, d)

    def tp_matrix(self) -> np.ndarray:
        """sum_mn chi_mn B_n^dag B_m."""
        return np.einsum("ijik->kj", self.tensor())

    def tp_residual(self) -> float:
        return float(np.max(np.abs(self.tp_matrix() - np.eye(self.dim))))

    def validate(self, raise_on_errors: bool = True) -> List[str]:
        errors = []

        hermitian_error = float(np.max(np.abs(self.chi - self.chi.conj().T)))
        if hermitian_error > HERMITIAN_TOL:
            errors.append(f"Not Hermitian (max deviation {hermitian_error:.3e})")

        min_eigenvalue = float(self.eigenvalues()[0])
        if min_eigenvalue < -PSD_TOL:
            errors.append(f"Negative eigenvalue {min_eigenvalue:.3e}")

        if self.trace_preserving:
            if abs(self.trace - self.dim) > TRACE_TOL:
                errors.append(f"Trace {self.trace:.10f} differs from {self.dim}")
            residual = self.tp_residual()
            if residual > TRACE_TOL:
                errors.append(f"Trace-preservation residual {residual:.3e}")

        if errors:
            if raise_on_errors:
                raise ValueError("Invalid process matrix:\n  " + "\n  ".join(errors))
            for error in errors:
                print(f"[ERROR] {error}")

        return errors


def kraus_to_chi(kraus_set: KrausSet) -> ProcessMatrix:
    """chi_mn = sum_l Tr[B_n K_l^dag] Tr[K_l B_m^dag].

    With B_m = |i><j| the coefficient Tr[K B_m^dag] is K[i, j], so each
    Kraus operator contributes the outer product of its row-major entries.
    """
    coefficients = np.stack([k.reshape(-1) for k in kraus_set.operators])
    chi = coefficients.T @ coefficients.conj()
    return ProcessMatrix(dim=kraus_set.dim, chi=chi)


def chi_to_kraus(process: ProcessMatrix, tol: float = 1e-12) -> KrausSet:
    """Canonical Kraus operators from the eigen-decomposition of chi."""
    chi = (process.chi + process.chi.conj().T) / 2
    eigenvalues, eigenvectors = np.linalg.eigh(chi)
    order = np.argsort(eigenvalues)[::-1]
    cutoff = tol * max(process.trace, 1.0)

    operators = [
        np.sqrt(eigenvalues[index]) * eigenvectors[:, index].reshape(process.dim, process.dim)
        for index in order
        if eigenvalues[index] > cutoff
    ]
    return KrausSet(dim=process.dim, operators=operators)


def unitary_chi(unitary: np.ndarray) -> ProcessMatrix:
    unitary = np.asarray(unitary, dtype=complex)
    return kraus_to_chi(KrausSet(dim=unitary.shape[0], operators=[unitary]))


def apply_channel(process: ProcessMatrix, rho: np.ndarray) -> np.ndarray:
    """sum_mn chi_mn B_m rho B_n^dag."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (process.dim, process.dim):
        raise ValueError(
            f"State of shape {rho.shape} does not match channel dimension {process.dim}"
        )
    return np.einsum("ijkl,jl->ik", process.tensor(), rho)


def _psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    eigenvalues, eigenvectors = np.linalg.eigh(matrix)
    eigenvalues = np.clip(eigenvalues, 0.0, None)
    return (eigenvectors * np.sqrt(eigenvalues)) @ eigenvectors.conj().T


def _normalized_state(process: ProcessMatrix) -> np.ndarray:
    trace = process.trace
    if trace <= 0:
        raise ValueError(f"Process matrix has non-positive trace {trace:.3e}")

    rho = (process.chi + process.chi.conj().T) / (2 * trace)
    eigenvalues, eigenvectors = np.linalg.eigh(rho)
    if eigenvalues[0] < -PSD_TOL:
        raise ValueError(
            f"Process matrix is not positive (eigenvalue {eigenvalues[0]:.3e})"
        )
    eigenvalues = np.clip(eigenvalues, 0.0, None)
    return (eigenvectors * eigenvalues) @ eigenvectors.conj().T


def process_fidelity(first: ProcessMatrix, second: ProcessMatrix) -> float:
    """Uhlmann fidelity of the trace-normalized process matrices."""
    if first.dim != second.dim:
        raise ValueError(
            f"Cannot compare processes of dimensions {first.dim} and {second.dim}"
        )

    rho_a = _normalized_state(first)
    rho_b = _normalized_state(second)
    root_a = _psd_sqrt(rho_a)
    inner = root_a @ rho_b @ root_a
    eigenvalues = np.linalg.eigvalsh((inner + inner.conj().T) / 2)
    fidelity = float(np.sum(np.sqrt(np.clip(eigenvalues, 0.0, None))) ** 2)
    return min(max(fidelity, 0.0), 1.0)


def process_entropy(process: ProcessMatrix) -> float:
    """Von Neumann entropy of chi/d with 0 log 0 = 0."""
    eigenvalues = np.linalg.eigvalsh(
        (process.chi + process.chi.conj().T) / (2 * process.dim)
    )
    eigenvalues = np.clip(eigenvalues, 0.0, None)
    return float(-np.sum(eigenvalues * np.log(np.maximum(eigenvalues, ENTROPY_FLOOR))))


def rotation_superoperator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Rotation V_o kron V_i^* in the |i><j| index order.

    V_i and V_o complete the input ket a and projector ket b to unitaries,
    so the first column is the measurement vector b kron a^* and the first
    diagonal element of the rotated chi is the detection probability.
    """
    v_in = complete_to_unitary(a)
    v_out = complete_to_unitary(b)
    if DEBUG:
        print(f"[DEBUG] Rotation superoperator of size {v_in.shape[0] ** 2}")
    return np.kron(v_out, v_in.conj())


def basis_element(dim: int, index: int) -> np.ndarray:
    return OperatorBasis(dim).element(index)
