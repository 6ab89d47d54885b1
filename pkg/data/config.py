import os

DEBUG = os.environ.get("ACQPT_DEBUG", "0") not in ("", "0", "false", "False")

CURRENT_VERSION = "0.3.0"

TRACE_SCHEMA = "acqpt-trace/1"

SUMMARY_SCHEMA = "acqpt-summary/1"

DEFAULT_SOLVER = "CLARABEL"

# Passed straight to the conic solver
SOLVER_OPTIONS = {
    "tol_gap_abs": 1e-8,
    "tol_gap_rel": 1e-8,
    "tol_feas": 1e-8,
    "max_iter": 200,
}

# Tried in order until one reports an optimal solution
SOLVER_ATTEMPTS = (
    (DEFAULT_SOLVER, SOLVER_OPTIONS),
    (DEFAULT_SOLVER, {"tol_gap_abs": 1e-7, "tol_gap_rel": 1e-7, "tol_feas": 1e-7, "max_iter": 500}),
    ("SCS", {"eps_abs": 1e-7, "eps_rel": 1e-7, "max_iters": 50_000}),
)

WORKERS_ENV_VAR = "ACQPT_WORKERS"
