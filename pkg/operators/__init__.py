"""
ACQPT Operators Module

Dense linear algebra, channel representations and random generators
"""

from .linalg import (
    vec,
    unvec,
    unitarity_residual,
    lex_key,
    leading_phase,
    fix_ket_phase,
    leading_rank1,
    complete_to_unitary,
    polar_unitary,
    nearest_product_unitary,
)

from .channels import (
    OperatorBasis,
    basis_element,
    KrausSet,
    ProcessMatrix,
    kraus_to_chi,
    chi_to_kraus,
    unitary_chi,
    apply_channel,
    process_fidelity,
    process_entropy,
    rotation_superoperator,
)

from .random_objects import (
    make_rng,
    complex_gaussian,
    haar_unitary,
    random_kraus_set,
    random_positive_Z,
)

from .gates import (
    GATE_NAMES,
    TWO_QUBIT_GATES,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    HADAMARD,
    CNOT,
    depolarize,
    named_gate,
)

__all__ = [
    # Linear algebra
    "vec",
    "unvec",
    "unitarity_residual",
    "lex_key",
    "leading_phase",
    "fix_ket_phase",
    "leading_rank1",
    "complete_to_unitary",
    "polar_unitary",
    "nearest_product_unitary",
    # Channels
    "OperatorBasis",
    "basis_element",
    "KrausSet",
    "ProcessMatrix",
    "kraus_to_chi",
    "chi_to_kraus",
    "unitary_chi",
    "apply_channel",
    "process_fidelity",
    "process_entropy",
    "rotation_superoperator",
    # Random objects
    "make_rng",
    "complex_gaussian",
    "haar_unitary",
    "random_kraus_set",
    "random_positive_Z",
    # Gates
    "GATE_NAMES",
    "TWO_QUBIT_GATES",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "HADAMARD",
    "CNOT",
    "depolarize",
    "named_gate",
]
