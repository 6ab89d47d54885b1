"""
Core configuration, constants, and utils
"""

from .config import (
    DEBUG,
    CURRENT_VERSION,
    TRACE_SCHEMA,
    SUMMARY_SCHEMA,
    DEFAULT_SOLVER,
    SOLVER_OPTIONS,
    SOLVER_ATTEMPTS,
    WORKERS_ENV_VAR,
)

from .utils import (
    read_file_to_bytes,
    read_json_file,
    write_json_file,
    write_jsonl_file,
    read_jsonl_file,
    write_csv_file,
    float_to_decimal,
    decimal_to_float,
    complex_vector_to_strings,
    strings_to_complex_vector,
    validate_path_exists_and_is_dir,
    split_seed,
    file_digest,
    normalize_string,
)

from .constants import (
    SEPARATOR_LINE_LENGTH,
    DEFAULT_EPSILON,
    DEFAULT_EQ_TOL,
    EQ_TOL_WIDENING,
    DEFAULT_TAU_RANK,
    DEFAULT_RESTARTS,
    DEFAULT_WARM_RESTARTS,
    DEFAULT_COPIES,
    MAX_STEPS_FACTOR,
    UNITARY_TOL,
    KRAUS_TOL,
    HERMITIAN_TOL,
    PSD_TOL,
    TRACE_TOL,
    KET_NORM_TOL,
    PROBABILITY_CLAMP,
    ENTROPY_FLOOR,
    FRANK_WOLFE_MAX_ITER,
    FRANK_WOLFE_GAP_TOL,
    DEFAULT_GATE_ETA,
)

__all__ = [
    # Config
    "DEBUG",
    "CURRENT_VERSION",
    "TRACE_SCHEMA",
    "SUMMARY_SCHEMA",
    "DEFAULT_SOLVER",
    "SOLVER_OPTIONS",
    "SOLVER_ATTEMPTS",
    "WORKERS_ENV_VAR",
    # Utils
    "read_file_to_bytes",
    "read_json_file",
    "write_json_file",
    "write_jsonl_file",
    "read_jsonl_file",
    "write_csv_file",
    "float_to_decimal",
    "decimal_to_float",
    "complex_vector_to_strings",
    "strings_to_complex_vector",
    "validate_path_exists_and_is_dir",
    "split_seed",
    "file_digest",
    "normalize_string",
    # Constants
    "SEPARATOR_LINE_LENGTH",
    "DEFAULT_EPSILON",
    "DEFAULT_EQ_TOL",
    "EQ_TOL_WIDENING",
    "DEFAULT_TAU_RANK",
    "DEFAULT_RESTARTS",
    "DEFAULT_WARM_RESTARTS",
    "DEFAULT_COPIES",
    "MAX_STEPS_FACTOR",
    "UNITARY_TOL",
    "KRAUS_TOL",
    "HERMITIAN_TOL",
    "PSD_TOL",
    "TRACE_TOL",
    "KET_NORM_TOL",
    "PROBABILITY_CLAMP",
    "ENTROPY_FLOOR",
    "FRANK_WOLFE_MAX_ITER",
    "FRANK_WOLFE_GAP_TOL",
    "DEFAULT_GATE_ETA",
]
