"""
Named channels used as ground truths: identity, I kron H, CNOT and an
imperfect CNOT with a depolarized target qubit.
"""

import numpy as np
from typing import Optional

from data import DEFAULT_GATE_ETA, normalize_string
from .channels import KrausSet, ProcessMatrix

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
CNOT = np.array(
    [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ],
    dtype=complex,
)

GATE_NAMES = ("identity", "ih", "cnot", "cnot_imperfect")

TWO_QUBIT_GATES = ("ih", "cnot", "cnot_imperfect")


def depolarize(process: ProcessMatrix, eta: float) -> ProcessMatrix:
    """(1 - eta) chi + eta chi_dep, where chi_dep = I/d sends every state to I/d."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"Depolarizing weight must lie in [0, 1], got {eta}")

    size = process.dim * process.dim
    chi = (1.0 - eta) * process.chi + eta * np.eye(size) / process.dim
    return ProcessMatrix(dim=process.dim, chi=chi)


def _target_depolarized_cnot(eta: float) -> KrausSet:
    """CNOT followed by depolarizing with weight eta on the target qubit.

    The induced channel has Kraus rank 4 for 0 < eta.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"Depolarizing weight must lie in [0, 1], got {eta}")

    identity = np.eye(2, dtype=complex)
    operators = [np.sqrt(1.0 - 3.0 * eta / 4.0) * CNOT]
    if eta > 0:
        for pauli in (PAULI_X, PAULI_Y, PAULI_Z):
            operators.append(np.sqrt(eta / 4.0) * np.kron(identity, pauli) @ CNOT)
    return KrausSet(dim=4, operators=operators)


def named_gate(
    name: str, dim: Optional[int] = None, eta: float = DEFAULT_GATE_ETA
) -> KrausSet:
    """Kraus set of a named channel.

    `identity` works for any dim (default 2); the other gates act on two
    qubits and reject any dim other than 4.
    """
    key = normalize_string(name)
    if key not in GATE_NAMES:
        raise ValueError(f"Unknown gate '{name}'. Expected one of {', '.join(GATE_NAMES)}")

    if key == "identity":
        dim = 2 if dim is None else int(dim)
        if dim < 1:
            raise ValueError(f"Gate dimension must be positive, got {dim}")
        return KrausSet(dim=dim, operators=[np.eye(dim, dtype=complex)])

    if dim is not None and int(dim) != 4:
        raise ValueError(f"Gate '{name}' acts on two qubits (dim 4), got dim {dim}")

    if key == "ih":
        return KrausSet(dim=4, operators=[np.kron(np.eye(2), HADAMARD)])
    if key == "cnot":
        return KrausSet(dim=4, operators=[CNOT])
    return _target_depolarized_cnot(eta)
