"""
Dense linear algebra helpers: vectorization, rank-1 extraction, unitary
completion and nearest product unitaries.
"""

import numpy as np
from functools import reduce
from typing import List, Sequence, Tuple
from scipy.linalg import polar

from data import DEBUG

# Relative spread under which leading singular values count as tied
DEGENERACY_TOL = 1e-10

PRODUCT_REFINE_ROUNDS = 50
PRODUCT_EXTRA_STARTS = 4
PRODUCT_START_SEED = 7


def vec(matrix: np.ndarray) -> np.ndarray:
    """Column-stacking superket, so that vec(AXB) = (B^T kron A) vec(X)."""
    return np.asarray(matrix, dtype=complex).reshape(-1, order="F")


def unvec(superket: np.ndarray, dim: int) -> np.ndarray:
    superket = np.asarray(superket, dtype=complex).ravel()
    if superket.size != dim * dim:
        raise ValueError(
            f"Superket of length {superket.size} cannot be unstacked to {dim}x{dim}"
        )
    return superket.reshape(dim, dim, order="F")


def unitarity_residual(matrix: np.ndarray) -> float:
    matrix = np.asarray(matrix, dtype=complex)
    identity = np.eye(matrix.shape[1])
    return float(np.max(np.abs(matrix.conj().T @ matrix - identity)))


def lex_key(vector: np.ndarray, decimals: int = 12) -> Tuple[float, ...]:
    rounded = np.round(np.asarray(vector, dtype=complex), decimals)
    key = []
    for entry in rounded.ravel():
        key.append(float(entry.real) + 0.0)
        key.append(float(entry.imag) + 0.0)
    return tuple(key)


def leading_phase(vector: np.ndarray, tol: float = 1e-12) -> complex:
    """Unit phase of the first entry whose modulus exceeds tol."""
    for entry in np.asarray(vector, dtype=complex).ravel():
        magnitude = abs(entry)
        if magnitude > tol:
            return entry / magnitude
    return 1.0 + 0.0j


def fix_ket_phase(ket: np.ndarray) -> np.ndarray:
    """Make the first nonzero entry real and nonnegative."""
    ket = np.asarray(ket, dtype=complex)
    return ket * np.conj(leading_phase(ket))


def leading_rank1(matrix: np.ndarray) -> Tuple[float, np.ndarray, np.ndarray]:
    """Largest singular-value component of a square matrix.

    Returns (lambda1, b, a) with matrix ~ lambda1 |b><a|. Tied leading
    singular pairs are resolved by picking the lexicographically largest
    phase-fixed (b, a).
    """
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"Expected a square matrix, got shape {matrix.shape}")
    if not np.any(np.abs(matrix) > 0):
        raise ValueError("Cannot extract a rank-1 component from the zero matrix")

    u, s, vh = np.linalg.svd(matrix)
    top = s[0]

    best_key = None
    best_pair = None
    for index in range(len(s)):
        if top - s[index] > DEGENERACY_TOL * top:
            break
        b = u[:, index]
        a = vh[index].conj()
        phase = np.conj(leading_phase(b))
        b = b * phase
        a = a * phase
        key = lex_key(b) + lex_key(a)
        if best_key is None or key > best_key:
            best_key = key
            best_pair = (b, a)

    b, a = best_pair
    return float(top), b, a


def complete_to_unitary(ket: np.ndarray) -> np.ndarray:
    """Unitary whose first column is the normalized ket.

    Remaining columns come from Gram-Schmidt over the computational basis
    in increasing order, skipping nearly dependent vectors.
    """
    ket = np.asarray(ket, dtype=complex).ravel()
    norm = np.linalg.norm(ket)
    if norm == 0:
        raise ValueError("Cannot complete the zero vector to a unitary")

    dim = ket.size
    columns = [ket / norm]
    for index in range(dim):
        if len(columns) == dim:
            break
        candidate = np.zeros(dim, dtype=complex)
        candidate[index] = 1.0
        for _ in range(2):
            for column in columns:
                candidate = candidate - column * np.vdot(column, candidate)
        residual = np.linalg.norm(candidate)
        if residual > 1e-8:
            columns.append(candidate / residual)

    return np.column_stack(columns)


def polar_unitary(matrix: np.ndarray) -> np.ndarray:
    unitary, _ = polar(np.asarray(matrix, dtype=complex))
    return unitary


def _subscripts(count: int) -> Tuple[str, str]:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return letters[:count], letters[count : 2 * count].upper()


def _operator_schmidt_factors(
    matrix: np.ndarray, subsystem_dims: Sequence[int]
) -> List[np.ndarray]:
    """Leading operator-Schmidt term, peeled one subsystem at a time."""
    factors = []
    remainder = matrix
    for position, dim in enumerate(subsystem_dims[:-1]):
        rest = int(np.prod(subsystem_dims[position + 1 :]))
        realigned = (
            remainder.reshape(dim, rest, dim, rest)
            .transpose(0, 2, 1, 3)
            .reshape(dim * dim, rest * rest)
        )
        u, s, vh = np.linalg.svd(realigned, full_matrices=False)
        scale = np.sqrt(s[0])
        factors.append(scale * u[:, 0].reshape(dim, dim))
        remainder = scale * vh[0].reshape(rest, rest)
    factors.append(remainder)
    return factors


def _product_overlap(
    matrix: np.ndarray, factors: Sequence[np.ndarray]
) -> float:
    return float(np.real(np.vdot(reduce(np.kron, factors), matrix)))


def _refine_factors(
    tensor: np.ndarray, factors: List[np.ndarray], rounds: int
) -> List[np.ndarray]:
    count = len(factors)
    rows, cols = _subscripts(count)
    tensor_subscript = rows + cols

    previous = None
    for _ in range(rounds):
        for target in range(count):
            operands = [tensor]
            subscripts = [tensor_subscript]
            for other in range(count):
                if other == target:
                    continue
                operands.append(factors[other].conj())
                subscripts.append(rows[other] + cols[other])
            expression = ",".join(subscripts) + "->" + rows[target] + cols[target]
            contracted = np.einsum(expression, *operands)
            factors[target] = polar_unitary(contracted)

        matrix = tensor.reshape(
            int(np.prod(tensor.shape[:count])), int(np.prod(tensor.shape[count:]))
        )
        overlap = _product_overlap(matrix, factors)
        if previous is not None and overlap - previous <= 1e-13 * max(1.0, abs(overlap)):
            break
        previous = overlap

    return factors


def nearest_product_unitary(
    unitary: np.ndarray, subsystem_dims: Sequence[int]
) -> np.ndarray:
    """Product unitary V1 kron V2 kron ... close to unitary in Frobenius norm.

    The start is the leading operator-Schmidt term with every factor
    projected to the unitary group by polar decomposition, followed by
    alternating refinement. A few seeded random starts are refined as well
    and the best overlap wins, so the result is deterministic.
    """
    unitary = np.asarray(unitary, dtype=complex)
    subsystem_dims = [int(dim) for dim in subsystem_dims]
    if any(dim < 1 for dim in subsystem_dims):
        raise ValueError(f"Subsystem dimensions must be positive: {subsystem_dims}")
    if int(np.prod(subsystem_dims)) != unitary.shape[0] or unitary.shape[0] != unitary.shape[1]:
        raise ValueError(
            f"Subsystem dimensions {subsystem_dims} do not factor a "
            f"{unitary.shape[0]}x{unitary.shape[1]} matrix"
        )

    if len(subsystem_dims) == 1:
        return unitary.copy()

    tensor = unitary.reshape(subsystem_dims + subsystem_dims)

    starts = [
        [polar_unitary(f) for f in _operator_schmidt_factors(unitary, subsystem_dims)]
    ]
    rng = np.random.default_rng(PRODUCT_START_SEED)
    for _ in range(PRODUCT_EXTRA_STARTS):
        starts.append(
            [
                polar_unitary(
                    rng.standard_normal((dim, dim))
                    + 1j * rng.standard_normal((dim, dim))
                )
                for dim in subsystem_dims
            ]
        )

    best_factors = None
    best_overlap = -np.inf
    for start in starts:
        factors = _refine_factors(tensor, start, PRODUCT_REFINE_ROUNDS)
        overlap = _product_overlap(unitary, factors)
        # strict comparison keeps the Schmidt start on ties
        if overlap > best_overlap + 1e-12:
            best_overlap = overlap
            best_factors = factors

    if DEBUG:
        distance = np.sqrt(max(0.0, 2 * unitary.shape[0] - 2 * best_overlap))
        print(f"[DEBUG] Nearest product unitary distance: {distance:.3e}")

    return reduce(np.kron, best_factors)
