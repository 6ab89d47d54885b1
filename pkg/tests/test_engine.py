#!/usr/bin/env python3
"""
Tests for the adaptive loop, its helpers and run traces.

Full runs use d = 2 with two minENT restarts.

Usage:
    python tests/test_engine.py

Exit Codes:
    0 - All tests passed
    1 - One or more tests failed
"""

import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent))

from operators import ProcessMatrix, kraus_to_chi, make_rng, process_fidelity
from tomography import NoiseKind, NoiseModel, SettingOrigin
from engine import (
    RunConfig,
    RunStatus,
    RunTrace,
    Strategy,
    bkd_count,
    make_truth,
    modulo_kappa,
    next_rotation,
    rank_estimate,
    run,
    run_rank1_variant,
    standard_qpt_reference,
    trial_seed,
)
from tests.utils import run_test_functions


def small_config(**overrides):
    values = {"dim": 2, "restarts": 2, "seed": 11}
    values.update(overrides)
    return RunConfig(**values)


def test_bkd_counts():
    assert bkd_count(4) == 28
    assert bkd_count(2) == 6
    assert bkd_count(4, projective=False) == 20
    try:
        bkd_count(1)
    except ValueError:
        return
    raise AssertionError("d = 1 was accepted")


def test_modulo_kappa_cycles():
    assert [modulo_kappa(k, 3) for k in range(1, 7)] == [2, 3, 1, 2, 3, 1]
    assert all(modulo_kappa(k, 1) == 1 for k in range(1, 5))
    try:
        modulo_kappa(1, 0)
    except ValueError:
        return
    raise AssertionError("rank 0 was accepted")


def test_rank_estimate():
    assert rank_estimate(ProcessMatrix(dim=2, chi=np.diag([1.0, 1.0, 0.0, 0.0]))) == 2
    assert rank_estimate(ProcessMatrix(dim=2, chi=np.diag([2.0, 1e-5, 0.0, 0.0]))) == 1
    assert rank_estimate(ProcessMatrix(dim=2, chi=np.diag([2.0, 1e-5, 0.0, 0.0])), tau=1e-7) == 2
    assert rank_estimate(ProcessMatrix(dim=2, chi=np.zeros((4, 4)))) == 1


def test_next_rotation_orders_eigenvalues():
    chi = ProcessMatrix(dim=2, chi=np.diag([0.5, 1.5, 0.0, 0.0]))
    rotation = next_rotation(chi)
    rotated = rotation.conj().T @ chi.chi @ rotation
    assert np.allclose(np.diag(rotated), [1.5, 0.5, 0.0, 0.0])
    assert np.allclose(np.abs(rotation[:, 0]), [0.0, 1.0, 0.0, 0.0])


def test_next_rotation_breaks_ties_deterministically():
    rotation = next_rotation(ProcessMatrix(dim=2, chi=np.eye(4) / 2))
    assert np.allclose(rotation, np.eye(4))


def test_make_truth():
    rng = make_rng(61)
    assert make_truth(small_config(), rng).rank == 1
    assert make_truth(small_config(truth_rank=3), rng).linear_rank() == 3
    assert make_truth(RunConfig(dim=4, gate="cnot"), rng).rank == 1
    assert make_truth(RunConfig(dim=4, gate="cnot_imperfect"), rng).linear_rank() == 4


def test_trial_seed_is_stable():
    assert trial_seed(7, "adaptive", 3) == trial_seed(7, "adaptive", 3)
    assert trial_seed(7, "adaptive", 3) != trial_seed(7, "adaptive", 4)
    assert trial_seed(7, "adaptive", 3) != trial_seed(8, "adaptive", 3)
    assert 0 <= trial_seed(7, "adaptive", 3) < 2**63


def test_config_validation():
    bad_configs = [
        RunConfig(dim=2, gate="cnot"),
        RunConfig(dim=2, truth_rank=5),
        RunConfig(dim=4, subsystem_dims=(2, 3)),
        RunConfig(dim=2, epsilon=0.0),
        RunConfig(dim=2, max_steps=0),
        RunConfig(dim=2, restarts=0),
        RunConfig(dim=2, warm_restarts=0),
    ]
    for config in bad_configs:
        assert config.validate(raise_on_errors=False)
        try:
            run(config)
        except ValueError:
            continue
        raise AssertionError(f"invalid config was run: {config}")


def test_config_defaults_and_parsing():
    config = RunConfig(dim=3)
    assert config.step_limit == 6 * 3**4
    assert config.step_restarts == 1
    assert RunConfig(dim=3, restarts=2, warm_restarts=4).step_restarts == 2
    assert Strategy.parse("Adaptive-MinENT") == Strategy.ADAPTIVE_MINENT
    assert RunConfig.from_dict(config.to_dict()).step_limit == config.step_limit
    try:
        Strategy.parse("greedy")
    except ValueError:
        return
    raise AssertionError("unknown strategy was accepted")


def test_adaptive_run_certifies_unitary():
    trace = run(small_config())

    assert trace.status == RunStatus.CONVERGED
    assert trace.k_ic == trace.final_k == len(trace.steps)
    assert trace.k_ic <= 24
    assert trace.final_fidelity >= 0.999
    assert trace.steps[0].s_cvx == 1.0
    assert trace.steps[-1].s_cvx < trace.config.epsilon
    assert len(trace.dataset) == trace.k_ic
    assert all(record.setting.origin == SettingOrigin.ADAPTIVE for record in trace.dataset)

    s_values = trace.s_cvx_sequence()
    assert np.all(np.diff(s_values) <= 1e-4)


def test_adaptive_run_is_reproducible():
    first = run(small_config(seed=12)).to_dict()
    second = run(small_config(seed=12)).to_dict()
    assert first == second


def test_rank1_variant_keeps_kappa_at_one():
    trace = run_rank1_variant(small_config(strategy=Strategy.ADAPTIVE_RANK1, seed=13))
    assert trace.converged
    assert all(step.kappa == 1 for step in trace.steps)

    try:
        run_rank1_variant(small_config())
    except ValueError:
        return
    raise AssertionError("rank-1 variant ran with another strategy")


def test_mixed_truth_cycles_kappa():
    trace = run(small_config(truth_rank=2, seed=14))
    assert trace.status in (RunStatus.CONVERGED, RunStatus.MAX_STEPS)
    for step in trace.steps:
        assert 1 <= step.kappa <= step.rank_prev


def test_random_run_uses_random_settings():
    trace = run(small_config(strategy=Strategy.RANDOM, restarts=1, seed=15))
    assert trace.converged
    assert all(step.kappa == 1 for step in trace.steps)
    assert all(record.setting.origin == SettingOrigin.RANDOM for record in trace.dataset)


def test_random_run_without_fidelity_tracking():
    trace = run(small_config(strategy=Strategy.RANDOM, track_fidelity=False, max_steps=3, seed=16))
    assert trace.final_k <= 3
    for step in trace.steps[:-1]:
        assert step.fidelity is None


def test_noisy_run_records_counts():
    noise = NoiseModel(kind=NoiseKind.POISSON, copies=1000)
    trace = run(small_config(noise=noise, max_steps=6, seed=17))
    assert trace.status in (RunStatus.CONVERGED, RunStatus.MAX_STEPS)
    for record in trace.dataset:
        assert record.copies == 1000
        assert record.nu == record.count / 1000


def test_noisy_runs_converge():
    noise = NoiseModel(kind=NoiseKind.POISSON, copies=10_000)
    for seed in range(3):
        trace = run(small_config(noise=noise, seed=seed))
        assert trace.status == RunStatus.CONVERGED, f"seed {seed} ended {trace.status}"
        assert trace.final_fidelity > 0.95


def test_unitary_runs_converge_across_seeds():
    for seed in range(10):
        trace = run(small_config(seed=seed))
        assert trace.status == RunStatus.CONVERGED, f"seed {seed} ended {trace.status}"
        assert trace.final_fidelity >= 0.999


def test_converged_estimate_matches_standard_qpt():
    trace = run(small_config(seed=21, reference_qpt=True))
    assert trace.converged
    assert trace.reference_fidelity >= 0.999
    assert trace.reference_agreement >= 0.999


def test_standard_qpt_reference_with_product_settings():
    config = RunConfig(dim=4, gate="cnot", subsystem_dims=(2, 2), seed=22)
    truth = kraus_to_chi(make_truth(config, make_rng(config.seed)))
    reference = standard_qpt_reference(truth, config)
    assert process_fidelity(reference, truth) >= 0.999


def test_rank1_assumption_recovers_mixed_truth():
    trace = run_rank1_variant(small_config(strategy=Strategy.ADAPTIVE_RANK1, truth_rank=3, seed=20))
    assert trace.converged
    assert trace.final_fidelity >= 0.999
    assert all(step.kappa == 1 for step in trace.steps)


def test_max_steps_stops_the_run():
    trace = run(small_config(max_steps=2, seed=18))
    assert trace.status == RunStatus.MAX_STEPS
    assert trace.k_ic is None
    assert trace.final_k == 2


def test_trace_serialization_keeps_results():
    trace = run(small_config(max_steps=3, seed=19))
    values = trace.to_dict()
    restored = RunTrace.from_dict(values)

    assert restored.to_dict() == values
    assert restored.status == trace.status
    assert np.allclose(restored.z_matrix, trace.z_matrix)
    assert [step.kappa for step in restored.steps] == [step.kappa for step in trace.steps]
    assert restored.reference_fidelity is None

    rows = trace.step_rows("t", 0)
    assert len(rows) == len(trace.steps)
    assert rows[0][:4] == ["t", 0, 1, trace.steps[0].kappa]


def test_trace_rejects_unknown_schema():
    try:
        RunTrace.from_dict({"schema": "something-else/1"})
    except ValueError:
        return
    raise AssertionError("unknown trace schema was accepted")


if __name__ == "__main__":
    run_test_functions(globals(), "Engine")
