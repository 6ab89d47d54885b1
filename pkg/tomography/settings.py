"""
Measurement settings: an input ket a (state |a><a|) and an output projector
ket b (observable |b><b|), the data row they contribute and the probability
a channel assigns to them.
"""

import numpy as np
from dataclasses import dataclass, replace
from functools import reduce
from itertools import product
from typing import List, Optional, Sequence

from data import DEBUG, KET_NORM_TOL, PROBABILITY_CLAMP
from operators import (
    OperatorBasis,
    ProcessMatrix,
    leading_rank1,
    fix_ket_phase,
    complete_to_unitary,
    nearest_product_unitary,
)


class SettingOrigin:
    ADAPTIVE = "adaptive"
    RANDOM = "random"
    MANUAL = "manual"

    ALL = (ADAPTIVE, RANDOM, MANUAL)


def _unit_ket(ket: np.ndarray, name: str) -> np.ndarray:
    ket = np.array(ket, dtype=complex).ravel()
    norm = np.linalg.norm(ket)
    if abs(norm - 1.0) > KET_NORM_TOL:
        raise ValueError(f"Ket '{name}' must have unit norm, got {norm:.15f}")
    ket.setflags(write=False)
    return ket


@dataclass(frozen=True)
class MeasurementSetting:
    a: np.ndarray
    b: np.ndarray
    origin: str = SettingOrigin.MANUAL
    k_index: int = 0
    kappa: Optional[int] = None

    def __post_init__(self):
        a = _unit_ket(self.a, "a")
        b = _unit_ket(self.b, "b")
        if a.size != b.size:
            raise ValueError(f"Input ket has {a.size} entries but projector ket has {b.size}")
        if self.origin not in SettingOrigin.ALL:
            raise ValueError(
                f"Unknown setting origin '{self.origin}'. Expected one of {', '.join(SettingOrigin.ALL)}"
            )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def dim(self) -> int:
        return self.a.size

    def measurement_vector(self) -> np.ndarray:
        """v = b kron a^*, with p = v^dag chi v."""
        return np.kron(self.b, self.a.conj())


@dataclass(frozen=True)
class PhiRow:
    """One row of the data map, Phi_{mn} = Tr[O B_m rho B_n^dag], stored as a d^2 x d^2 matrix."""

    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=complex)
        size = self.dim * self.dim
        if matrix.shape != (size, size):
            raise ValueError(f"Row matrix of shape {matrix.shape} does not match dimension {self.dim}")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    @property
    def coefficients(self) -> np.ndarray:
        """The d^4 coefficients flattened over (m, n)."""
        return self.matrix.reshape(-1)

    def dot(self, chi: np.ndarray) -> float:
        return float(np.real(np.sum(self.matrix * np.asarray(chi))))


def phi_row(setting: MeasurementSetting, basis: Optional[OperatorBasis] = None) -> PhiRow:
    """Outer-product shortcut: with w = b^* kron a, Phi = w w^dag."""
    if basis is not None and basis.dim != setting.dim:
        raise ValueError(f"Basis dimension {basis.dim} does not match setting dimension {setting.dim}")

    w = np.kron(setting.b.conj(), setting.a)
    return PhiRow(dim=setting.dim, matrix=np.outer(w, w.conj()))


def _dim_from_superoperator(size: int) -> int:
    dim = int(round(np.sqrt(size)))
    if dim * dim != size:
        raise ValueError(f"Rotation of size {size} is not d^2 x d^2")
    return dim


def setting_from_rotation(
    unitary: np.ndarray,
    kappa: int,
    basis: Optional[OperatorBasis] = None,
    k_index: int = 0,
    origin: str = SettingOrigin.ADAPTIVE,
) -> MeasurementSetting:
    """Setting probing the kappa-th diagonal element of U^dag chi U (kappa is 1-based).

    B' = sum_m U[m, kappa] B_m is approximated by its leading singular
    component lambda |b><a|.
    """
    unitary = np.asarray(unitary, dtype=complex)
    if unitary.ndim != 2 or unitary.shape[0] != unitary.shape[1]:
        raise ValueError(f"Expected a square rotation, got shape {unitary.shape}")

    dim = _dim_from_superoperator(unitary.shape[0])
    if basis is not None and basis.dim != dim:
        raise ValueError(f"Basis dimension {basis.dim} does not match rotation dimension {dim}")
    if not 1 <= kappa <= dim * dim:
        raise ValueError(f"kappa must lie in [1, {dim * dim}], got {kappa}")

    rotated_element = unitary[:, kappa - 1].reshape(dim, dim)
    _, b, a = leading_rank1(rotated_element)

    return MeasurementSetting(
        a=a / np.linalg.norm(a),
        b=b / np.linalg.norm(b),
        origin=origin,
        k_index=k_index,
        kappa=kappa,
    )


def probability(process: ProcessMatrix, setting: MeasurementSetting) -> float:
    if process.dim != setting.dim:
        raise ValueError(
            f"Channel dimension {process.dim} does not match setting dimension {setting.dim}"
        )

    v = setting.measurement_vector()
    value = float(np.real(np.vdot(v, process.chi @ v)))
    if value < -PROBABILITY_CLAMP or value > 1.0 + PROBABILITY_CLAMP:
        raise ValueError(f"Probability {value:.3e} outside [0, 1]")
    return min(max(value, 0.0), 1.0)


def product_setting(
    setting: MeasurementSetting, subsystem_dims: Sequence[int]
) -> MeasurementSetting:
    """Closest separable input state and projector.

    a and b are completed to unitaries V_i, V_o; each is replaced by its
    nearest product unitary, which is then applied to the reference ket
    |0...0>.
    """
    subsystem_dims = [int(dim) for dim in subsystem_dims]
    if int(np.prod(subsystem_dims)) != setting.dim:
        raise ValueError(
            f"Subsystem dimensions {subsystem_dims} do not factor dimension {setting.dim}"
        )

    product_in = nearest_product_unitary(complete_to_unitary(setting.a), subsystem_dims)
    product_out = nearest_product_unitary(complete_to_unitary(setting.b), subsystem_dims)

    a = fix_ket_phase(product_in[:, 0])
    b = fix_ket_phase(product_out[:, 0])

    if DEBUG:
        overlap_a = abs(np.vdot(a, setting.a)) ** 2
        overlap_b = abs(np.vdot(b, setting.b)) ** 2
        print(f"[DEBUG] Product setting overlaps: input {overlap_a:.4f}, output {overlap_b:.4f}")

    return replace(setting, a=a / np.linalg.norm(a), b=b / np.linalg.norm(b))


def _tomography_kets(dim: int) -> List[np.ndarray]:
    kets = []
    identity = np.eye(dim, dtype=complex)
    for j in range(dim):
        kets.append(identity[j])
    for j in range(dim):
        for k in range(j + 1, dim):
            kets.append((identity[j] + identity[k]) / np.sqrt(2.0))
            kets.append((identity[j] + 1j * identity[k]) / np.sqrt(2.0))
    return kets


def informationally_complete_settings(
    dim: int, subsystem_dims: Optional[Sequence[int]] = None
) -> List[MeasurementSetting]:
    """Standard process tomography: every pair of the d^2 input and output kets.

    With subsystem_dims the kets are tensor products of each subsystem's
    tomography kets, so every setting is a local preparation and a local
    measurement.
    """
    if dim < 1:
        raise ValueError(f"Dimension must be positive, got {dim}")

    if subsystem_dims:
        subsystem_dims = [int(sub_dim) for sub_dim in subsystem_dims]
        if int(np.prod(subsystem_dims)) != dim:
            raise ValueError(f"Subsystem dimensions {subsystem_dims} do not factor dimension {dim}")
        kets = [
            reduce(np.kron, factors)
            for factors in product(*(_tomography_kets(sub_dim) for sub_dim in subsystem_dims))
        ]
    else:
        kets = _tomography_kets(dim)

    settings = []
    for a in kets:
        for b in kets:
            settings.append(
                MeasurementSetting(
                    a=a, b=b, origin=SettingOrigin.MANUAL, k_index=len(settings) + 1
                )
            )
    return settings
