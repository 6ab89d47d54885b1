"""
ACQPT Engine Module

The adaptive certify-then-adapt loop, run configuration and traces
"""

from .config import Strategy, RunConfig

from .trace import RunStatus, StepRecord, RunTrace

from .adaptive import (
    RunAbortedError,
    trial_seed,
    make_truth,
    rank_estimate,
    next_rotation,
    modulo_kappa,
    standard_qpt_reference,
    run,
    run_rank1_variant,
)

from .baselines import bkd_count

__all__ = [
    # Config
    "Strategy",
    "RunConfig",
    # Trace
    "RunStatus",
    "StepRecord",
    "RunTrace",
    # Adaptive loop
    "RunAbortedError",
    "trial_seed",
    "make_truth",
    "rank_estimate",
    "next_rotation",
    "modulo_kappa",
    "standard_qpt_reference",
    "run",
    "run_rank1_variant",
    # Baselines
    "bkd_count",
]
