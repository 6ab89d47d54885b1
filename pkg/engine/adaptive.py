"""
The certify-then-adapt tomography loop and its baselines.

Each step measures one setting, certifies informational completeness of
the data, and otherwise picks a working estimate whose eigenbasis defines
the next setting.
"""

import time
import numpy as np
from typing import Optional

from data import DEBUG, DEFAULT_TAU_RANK, split_seed
from operators import (
    KrausSet,
    OperatorBasis,
    ProcessMatrix,
    fix_ket_phase,
    haar_unitary,
    kraus_to_chi,
    lex_key,
    make_rng,
    named_gate,
    process_entropy,
    process_fidelity,
    random_kraus_set,
    random_positive_Z,
)
from tomography import (
    Dataset,
    SettingOrigin,
    informationally_complete_settings,
    probability,
    product_setting,
    sample,
    setting_from_rotation,
)
from convex import (
    FeasibleSet,
    FeasibleSetSpec,
    SolverError,
    icc,
    least_squares_estimator,
    min_entropy_search,
    min_l1_estimator,
    ml_probabilities,
)
from .config import RunConfig, Strategy
from .trace import RunStatus, RunTrace, StepRecord

EIGENVALUE_TIE_DECIMALS = 10

REFERENCE_SEED_LABEL = "standard-qpt"


class RunAbortedError(RuntimeError):
    """A solver failure stopped the run; the partial trace is attached."""

    def __init__(self, message: str, trace: RunTrace):
        super().__init__(message)
        self.trace = trace


def trial_seed(master_seed: int, template: str, trial: int) -> int:
    return split_seed(master_seed, template, trial)


def make_truth(config: RunConfig, rng: np.random.Generator) -> KrausSet:
    if config.gate is not None:
        return named_gate(config.gate, config.dim, config.eta)
    if config.truth_rank == 1:
        return KrausSet(dim=config.dim, operators=[haar_unitary(config.dim, rng)])
    return random_kraus_set(config.dim, config.truth_rank, rng)


def rank_estimate(process: ProcessMatrix, tau: float = DEFAULT_TAU_RANK) -> int:
    """Number of eigenvalues above tau Tr(chi), at least 1."""
    eigenvalues = process.eigenvalues()
    return max(1, int(np.sum(eigenvalues > tau * process.trace)))


def next_rotation(process: ProcessMatrix) -> np.ndarray:
    """Diagonalizer of chi with eigenvalues in descending order.

    Columns are phase-fixed; equal eigenvalues are ordered by their
    eigenvectors, lexicographically largest first.
    """
    chi = (process.chi + process.chi.conj().T) / 2
    eigenvalues, eigenvectors = np.linalg.eigh(chi)
    columns = [fix_ket_phase(eigenvectors[:, index]) for index in range(eigenvalues.size)]

    def sort_key(index):
        return (-round(float(eigenvalues[index]), EIGENVALUE_TIE_DECIMALS),) + tuple(
            -entry for entry in lex_key(columns[index])
        )

    order = sorted(range(eigenvalues.size), key=sort_key)
    return np.column_stack([columns[index] for index in order])


def modulo_kappa(k: int, rank: int) -> int:
    """kappa_{k+1} = mod(k, r_k) + 1."""
    if rank < 1:
        raise ValueError(f"Rank must be at least 1, got {rank}")
    return k % rank + 1


def _estimate(
    config: RunConfig,
    feasible: FeasibleSet,
    rotation: np.ndarray,
    previous: Optional[ProcessMatrix],
    rng: np.random.Generator,
) -> Optional[ProcessMatrix]:
    if config.strategy == Strategy.ADAPTIVE_MINL1:
        return min_l1_estimator(feasible, rotation)
    if config.strategy == Strategy.RANDOM and not config.track_fidelity:
        return None

    if previous is None:
        return min_entropy_search(feasible, config.restarts, rng).chi
    return min_entropy_search(feasible, config.step_restarts, rng, [previous.chi]).chi


def standard_qpt_reference(
    truth: ProcessMatrix, config: RunConfig, rng: Optional[np.random.Generator] = None
) -> ProcessMatrix:
    """Least-squares reconstruction from all d^4 standard tomography settings.

    Settings are local when the run uses product settings, and the counts
    follow the run's noise model.
    """
    if rng is None:
        rng = make_rng(split_seed(config.seed, REFERENCE_SEED_LABEL))

    dataset = Dataset(truth.dim)
    for setting in informationally_complete_settings(truth.dim, config.subsystem_dims):
        p_true = probability(truth, setting)
        count, nu = sample(p_true, config.noise, rng)
        dataset.append(setting, p_true=p_true, count=count, copies=config.noise.copies, nu=nu)
    return least_squares_estimator(dataset)


def _finish(
    trace: RunTrace,
    status: str,
    estimate: Optional[ProcessMatrix],
    fidelity: Optional[float],
    truth: ProcessMatrix,
) -> RunTrace:
    trace.finish(status, estimate, fidelity)
    if trace.config.reference_qpt:
        reference = standard_qpt_reference(truth, trace.config)
        trace.reference_fidelity = process_fidelity(reference, truth)
        if estimate is not None:
            trace.reference_agreement = process_fidelity(estimate, reference)
        if DEBUG:
            print(f"[DEBUG] Standard QPT fidelity {trace.reference_fidelity:.6f}")
    return trace


def run(config: RunConfig) -> RunTrace:
    """Run one simulated tomography experiment to certification or max_steps."""
    config.validate()

    rng = make_rng(config.seed)
    dim = config.dim
    truth = kraus_to_chi(make_truth(config, rng))
    z_matrix = random_positive_Z(dim * dim, rng)
    basis = OperatorBasis(dim)

    rotation = haar_unitary(dim * dim, rng)
    kappa = 1
    rank_prev = 1
    s1 = None
    estimate = None

    dataset = Dataset(dim)
    trace = RunTrace(config=config, z_matrix=z_matrix, dataset=dataset)
    origin = SettingOrigin.RANDOM if config.strategy == Strategy.RANDOM else SettingOrigin.ADAPTIVE

    for k in range(1, config.step_limit + 1):
        started = time.perf_counter()

        setting = setting_from_rotation(rotation, kappa, basis, k_index=k, origin=origin)
        if config.subsystem_dims:
            setting = product_setting(setting, config.subsystem_dims)

        p_true = probability(truth, setting)
        count, nu = sample(p_true, config.noise, rng)
        dataset.append(setting, p_true=p_true, count=count, copies=config.noise.copies, nu=nu)

        try:
            targets = ml_probabilities(dataset) if config.noise.is_noisy else dataset.true_probabilities()
            feasible = FeasibleSet(
                FeasibleSetSpec.from_dataset(dataset, targets=targets, eq_tol=config.eq_tol)
            )
            result = icc(feasible, z_matrix, s1)
            if s1 is None:
                s1 = result.first_gap

            converged = result.s_cvx < config.epsilon
            if converged:
                estimate = result.argmin_chi
            else:
                estimate = _estimate(config, feasible, rotation, estimate, rng)
        except SolverError as e:
            trace.finish(RunStatus.ABORTED, estimate, None)
            raise RunAbortedError(f"Run aborted at step {k}: {e}", trace)

        fidelity = process_fidelity(estimate, truth) if estimate is not None else None
        entropy = process_entropy(estimate) if estimate is not None else None

        trace.add_step(
            StepRecord(
                k=k,
                kappa=kappa,
                rank_prev=rank_prev,
                s_cvx=result.s_cvx,
                fidelity=fidelity,
                entropy=entropy,
                a=setting.a,
                b=setting.b,
                solver_status=result.solver_status,
                wall_time=time.perf_counter() - started,
            )
        )

        if DEBUG:
            print(f"[DEBUG] k={k} kappa={kappa} s_cvx={result.s_cvx:.3e} fidelity={fidelity}")

        if converged:
            return _finish(trace, RunStatus.CONVERGED, estimate, fidelity, truth)

        if config.strategy == Strategy.RANDOM:
            rotation = haar_unitary(dim * dim, rng)
            kappa = 1
            continue

        rotation = next_rotation(estimate)
        rank_prev = rank_estimate(estimate, config.tau_rank)
        if config.strategy == Strategy.ADAPTIVE_RANK1:
            kappa = 1
        else:
            kappa = modulo_kappa(k, rank_prev)

    final_fidelity = trace.steps[-1].fidelity if trace.steps else None
    return _finish(trace, RunStatus.MAX_STEPS, estimate, final_fidelity, truth)


def run_rank1_variant(config: RunConfig) -> RunTrace:
    """Adaptive run that assumes a rank-1 truth, so kappa stays at 1."""
    if config.strategy != Strategy.ADAPTIVE_RANK1:
        raise ValueError(
            f"Rank-1 variant needs strategy '{Strategy.ADAPTIVE_RANK1}', got '{config.strategy}'"
        )
    return run(config)
