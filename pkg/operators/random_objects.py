"""
Seeded generators for Haar unitaries, random Kraus sets and the random
positive matrix that defines the size functional.
"""

import numpy as np
from typing import Optional, Union

from .channels import KrausSet


def make_rng(seed: Optional[Union[int, np.random.Generator]] = None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def complex_gaussian(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (
        rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    ) / np.sqrt(2.0)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR decomposition of a Gaussian matrix.

    The phases of diag(R) are moved into Q so the distribution is exactly
    uniform.
    """
    if dim < 1:
        raise ValueError(f"Unitary dimension must be positive, got {dim}")

    gaussian = complex_gaussian(rng, dim, dim)
    q, r = np.linalg.qr(gaussian)
    r_diag = np.diag(r)
    phases = r_diag / np.abs(r_diag)
    return q * phases[np.newaxis, :]


def random_kraus_set(dim: int, rank: int, rng: np.random.Generator) -> KrausSet:
    """r Kraus operators K_l = A_l S^{-1/2} with S = sum_l A_l^dag A_l."""
    if dim < 1:
        raise ValueError(f"Channel dimension must be positive, got {dim}")
    if not 1 <= rank <= dim * dim:
        raise ValueError(f"Kraus rank must lie in [1, {dim * dim}], got {rank}")

    matrices = [complex_gaussian(rng, dim, dim) for _ in range(rank)]
    s = sum(a.conj().T @ a for a in matrices)
    eigenvalues, eigenvectors = np.linalg.eigh(s)
    inv_sqrt = (eigenvectors / np.sqrt(eigenvalues)) @ eigenvectors.conj().T

    return KrausSet(dim=dim, operators=[a @ inv_sqrt for a in matrices])


def random_positive_Z(dim_squared: int, rng: np.random.Generator) -> np.ndarray:
    """Full-rank positive matrix of unit trace, Z = G G^dag / Tr[G G^dag]."""
    if dim_squared < 1:
        raise ValueError(f"Matrix dimension must be positive, got {dim_squared}")

    g = complex_gaussian(rng, dim_squared, dim_squared)
    z = g @ g.conj().T
    z = (z + z.conj().T) / 2
    return z / np.real(np.trace(z))
