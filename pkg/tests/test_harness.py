#!/usr/bin/env python3
"""
Tests for scenario files, builtin scenarios, summary statistics, the output
folder and the command line.

The reproducibility steps run a small d = 2 scenario twice (and once on a
worker pool) and compare the xxh3 digests of every data file.

Usage:
    python tests/test_harness.py

    # Keep output folders for manual inspection (skip cleanup)
    python tests/test_harness.py --keep-output

Exit Codes:
    0 - All tests passed
    1 - One or more tests failed
"""

import sys
import csv
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent))

from data import read_json_file
from engine import RunConfig, RunStatus, RunTrace, StepRecord, Strategy
from harness import (
    RunTemplate,
    Scenario,
    aggregate_curve,
    Summary,
    builtin_scenario,
    execute_scenario,
    list_builtins,
    read_scenario_file,
    read_scenario_ini,
    read_scenario_json,
    run_scenario,
    scaling_slopes,
    summarize,
    worker_count,
)
from run_files import RunFiles, STEPS_CSV_HEADER, output_digests, read_dataset_records, read_trace_dir
from acqpt_sim import EXIT_ERROR, EXIT_OK, EXIT_PARTIAL, main
from tests.utils import (
    SECTION_SEPARATOR,
    get_file_checksum,
    make_temp_folder,
    print_step_header,
    run_test_functions,
    safe_remove_folder,
)

KEEP_OUTPUT = "--keep-output" in sys.argv

SCENARIO_INI = """
[scenario]
name = d2-sweep
trials = 3

[template adaptive-d2]
dim = 2
strategy = adaptive_minent
restarts = 2   # keep it quick
warm_restarts = 2

[template noisy-d2]
dim = 2
strategy = random
noise = poisson:500
max_steps = 40
track_fidelity = no
reference_qpt = yes
"""

SCENARIO_JSON = """
{
    "name": "cnot-check",
    "trials": 2,
    "templates": [
        {"name": "cnot", "dim": 4, "gate": "cnot_imperfect", "eta": 0.1, "subsystems": [2, 2]},
        {"dim": 3, "strategy": "adaptive_minl1", "rank": 2}
    ]
}
"""


def synthetic_trace(s_values, status, dim=2, strategy=Strategy.ADAPTIVE_MINENT, fidelity=0.99):
    steps = [
        StepRecord(
            k=k,
            kappa=1,
            rank_prev=1,
            s_cvx=s,
            fidelity=fidelity,
            entropy=0.0,
            a=np.array([1.0, 0.0]),
            b=np.array([1.0, 0.0]),
            solver_status="optimal",
        )
        for k, s in enumerate(s_values, start=1)
    ]
    trace = RunTrace(config=RunConfig(dim=dim, strategy=strategy), z_matrix=np.eye(dim * dim), steps=steps)
    trace.finish(status, None, fidelity if status == RunStatus.CONVERGED else None)
    return trace


def converged_at(k_ic, **options):
    return synthetic_trace([1.0] * (k_ic - 1) + [0.0], RunStatus.CONVERGED, **options)


def tiny_scenario(output_dir, trials=2):
    return Scenario(
        name="tiny",
        trials=trials,
        output_dir=output_dir,
        templates=[
            RunTemplate("adaptive", RunConfig(dim=2, restarts=1, max_steps=4)),
            RunTemplate("random", RunConfig(dim=2, strategy=Strategy.RANDOM, restarts=1, max_steps=3)),
        ],
    )


def test_summary_mean_and_std():
    summary = summarize([converged_at(30), converged_at(40)], ["t", "t"])
    template = summary.template("t")
    assert template.k_ic_mean == 35.0
    assert abs(template.k_ic_std - 7.0710678) < 1e-6
    assert template.std_defined
    assert template.converged == 2 and template.not_converged == 0


def test_summary_single_run():
    template = summarize([converged_at(12)]).templates[0]
    assert template.k_ic_mean == 12.0
    assert template.k_ic_std == 0.0
    assert not template.std_defined
    assert template.name == "d2-r1-adaptive_minent"


def test_summary_counts_unconverged_runs():
    traces = [converged_at(5), synthetic_trace([1.0, 0.5, 0.2], RunStatus.MAX_STEPS)]
    template = summarize(traces, ["t", "t"]).template("t")
    assert template.k_ic_values == (5,)
    assert template.not_converged == 1
    assert template.convergence_rate == 0.5


def test_summary_rejects_bad_input():
    for traces, names in (([], None), ([converged_at(3)], ["a", "b"])):
        try:
            summarize(traces, names)
        except ValueError:
            continue
        raise AssertionError("invalid summary input was accepted")


def test_curve_carries_converged_runs_forward():
    traces = [
        converged_at(2),
        synthetic_trace([1.0, 0.6, 0.3, 0.1], RunStatus.MAX_STEPS),
        synthetic_trace([1.0], RunStatus.ABORTED),
    ]
    curve = aggregate_curve(traces)
    assert [point.k for point in curve] == [1, 2, 3, 4]
    assert [point.count for point in curve] == [3, 2, 2, 2]
    assert abs(curve[3].s_cvx_mean - 0.05) < 1e-12


def test_scaling_slopes():
    traces = []
    names = []
    for dim in (2, 3, 4):
        k_ic = 2 * dim * dim + 1
        traces.append(converged_at(k_ic, dim=dim))
        names.append(f"d{dim}")
    scaling = scaling_slopes(summarize(traces, names))

    fit = scaling["strategies"][Strategy.ADAPTIVE_MINENT]
    assert fit["dims"] == [2, 3, 4]
    assert abs(float(fit["slope"]) - 2.0) < 1e-9
    assert abs(float(fit["intercept"]) - 1.0) < 1e-9
    assert scaling["bkd_projective"] == {"2": 6, "3": 15, "4": 28}


def test_read_scenario_ini():
    scenario = read_scenario_ini(SCENARIO_INI, "fallback")
    assert scenario.name == "d2-sweep"
    assert scenario.trials == 3
    assert [template.name for template in scenario.templates] == ["adaptive-d2", "noisy-d2"]

    adaptive, noisy = (template.config for template in scenario.templates)
    assert adaptive.restarts == 2
    assert adaptive.warm_restarts == 2 and not adaptive.reference_qpt
    assert noisy.noise.copies == 500 and noisy.noise.is_noisy
    assert noisy.step_limit == 40
    assert not noisy.track_fidelity
    assert noisy.reference_qpt
    scenario.validate()


def test_read_scenario_json():
    scenario = read_scenario_json(SCENARIO_JSON, "fallback")
    assert scenario.name == "cnot-check"
    cnot, minl1 = scenario.templates
    assert cnot.config.gate == "cnot_imperfect"
    assert cnot.config.eta == 0.1
    assert cnot.config.subsystem_dims == (2, 2)
    assert minl1.name == "template-2"
    assert minl1.config.strategy == Strategy.ADAPTIVE_MINL1
    assert minl1.config.truth_rank == 2


def test_scenario_reader_rejects_bad_templates():
    bad_inputs = [
        "[template a]\nstrategy = random\n",
        "[template a]\ndim = 2\ncolour = blue\n",
        "[template a]\ndim = 2\nstrategy = greedy\n",
        "[template a]\ndim = 2\ngate = cnot\n",
    ]
    for text in bad_inputs:
        try:
            read_scenario_ini(text, "bad")
        except ValueError:
            continue
        raise AssertionError(f"bad template was accepted:\n{text}")


def test_scenario_validation():
    template = RunTemplate("a", RunConfig(dim=2))
    bad_scenarios = [
        Scenario(name="empty"),
        Scenario(name="zero", templates=[template], trials=0),
        Scenario(name="twice", templates=[template, template]),
    ]
    for scenario in bad_scenarios:
        assert scenario.validate(raise_on_errors=False)


def test_builtin_scenarios():
    assert list_builtins() == ["fig2-d4", "fig4-scaling", "fig4-rank", "fig5-minl1", "expt-cnot-emulation"]
    for name in list_builtins():
        builtin_scenario(name).validate()

    assert builtin_scenario("fig2-d4").trials == 60
    assert builtin_scenario("fig2-d4", trials=5).trials == 5
    assert len(builtin_scenario("fig4-scaling").templates) == 12

    rank_templates = builtin_scenario("fig4-rank").templates
    assert len(rank_templates) == 16
    local = [template for template in rank_templates if template.config.subsystem_dims == (2, 2)]
    assert len(local) == 8
    assert all(template.name.endswith("-2x2") for template in local)

    cnot = builtin_scenario("expt-cnot-emulation")
    assert all(template.config.subsystem_dims == (2, 2) for template in cnot.templates)
    assert all(template.config.noise.copies == 10_000 for template in cnot.templates)
    assert all(template.config.reference_qpt for template in cnot.templates)

    try:
        builtin_scenario("fig9")
    except ValueError:
        return
    raise AssertionError("unknown builtin was accepted")


def test_worker_count():
    assert worker_count(3) == 3
    assert worker_count(0) == 1


def test_scenario_output_is_reproducible():
    first_dir = make_temp_folder()
    second_dir = make_temp_folder()
    pool_dir = make_temp_folder()

    try:
        print_step_header(1, "Running scenario twice with one worker")
        outcome = execute_scenario(tiny_scenario(first_dir), master_seed=5, workers=1)
        summary = run_scenario(tiny_scenario(second_dir), master_seed=5, workers=1)
        assert isinstance(summary, Summary)
        assert summary.to_dict() == outcome.summary.to_dict()
        assert len(outcome.trials) == 4
        assert outcome.complete

        print_step_header(2, "Checking output folder layout")
        traces = read_trace_dir(first_dir)
        assert [(template, trial) for template, trial, _ in traces] == [
            ("adaptive", 0),
            ("adaptive", 1),
            ("random", 0),
            ("random", 1),
        ]
        for template, trial, trace in traces:
            records = read_dataset_records(first_dir / RunFiles.DATASETS_DIR / f"{template}-{trial}.jsonl")
            assert len(records) == len(trace.steps)
            assert [record["k"] for record in records] == [step.k for step in trace.steps]

        with open(first_dir / RunFiles.STEPS_FILE, newline="", encoding="utf-8") as f:
            rows = list(csv.reader(f))
        assert tuple(rows[0]) == STEPS_CSV_HEADER
        assert len(rows) - 1 == sum(len(trace.steps) for _, _, trace in traces)

        manifest = read_json_file(first_dir / RunFiles.MANIFEST_FILE)
        assert manifest["complete"]
        assert len(manifest["trials"]) == 4
        steps_digest = manifest["digests"][RunFiles.STEPS_FILE]
        assert steps_digest == get_file_checksum(first_dir / RunFiles.STEPS_FILE)

        written = read_json_file(first_dir / RunFiles.SUMMARY_FILE)
        assert written == summary.to_dict()

        print_step_header(3, "Comparing digests")
        first = output_digests(first_dir)
        second = output_digests(second_dir)
        assert first == second, "repeated runs differ"
        assert RunFiles.METADATA_FILE not in first

        print_step_header(4, "Running scenario on a worker pool")
        run_scenario(tiny_scenario(pool_dir), master_seed=5, workers=2)
        assert output_digests(pool_dir) == first, "worker pool changed the output"
    finally:
        if not KEEP_OUTPUT:
            for folder in (first_dir, second_dir, pool_dir):
                safe_remove_folder(folder, f"output folder {folder.name}")
        else:
            print(f"[INFO] Output kept in {first_dir}, {second_dir}, {pool_dir}")
        print(SECTION_SEPARATOR)


def test_write_failure_keeps_manifest():
    folder = make_temp_folder()
    try:
        # A directory where the first trace file should go
        (folder / RunFiles.TRACES_DIR / "adaptive-0.json").mkdir(parents=True)

        outcome = execute_scenario(tiny_scenario(folder), master_seed=5, workers=1)
        assert not outcome.complete
        assert not outcome.all_converged

        failed = [result for result in outcome.trials if not result.completed]
        assert [(result.template, result.trial) for result in failed] == [("adaptive", 0)]
        assert "Could not write" in failed[0].error

        manifest = read_json_file(folder / RunFiles.MANIFEST_FILE)
        assert not manifest["complete"]
        flags = {(entry["template"], entry["trial"]): entry["completed"] for entry in manifest["trials"]}
        assert flags == {("adaptive", 0): False, ("adaptive", 1): True, ("random", 0): True, ("random", 1): True}
        assert "traces/adaptive-1.json" in manifest["digests"]
        assert "traces/adaptive-0.json" not in manifest["digests"]
    finally:
        safe_remove_folder(folder)


def test_master_seed_changes_output():
    first_dir = make_temp_folder()
    second_dir = make_temp_folder()
    try:
        run_scenario(tiny_scenario(first_dir, trials=1), master_seed=1, workers=1)
        run_scenario(tiny_scenario(second_dir, trials=1), master_seed=2, workers=1)
        assert output_digests(first_dir) != output_digests(second_dir)
    finally:
        if not KEEP_OUTPUT:
            safe_remove_folder(first_dir)
            safe_remove_folder(second_dir)


def test_scenario_file_round_trip():
    folder = make_temp_folder()
    try:
        ini_path = folder / "sweep.ini"
        ini_path.write_text(SCENARIO_INI, encoding="utf-8")
        assert read_scenario_file(ini_path).name == "d2-sweep"

        json_path = folder / "cnot.json"
        json_path.write_text(SCENARIO_JSON, encoding="utf-8")
        assert read_scenario_file(json_path).trials == 2

        broken = folder / "broken.json"
        broken.write_text("{", encoding="utf-8")
        try:
            read_scenario_file(broken)
        except ValueError:
            return
        raise AssertionError("broken JSON was accepted")
    finally:
        safe_remove_folder(folder)


def test_cli_exit_codes():
    assert main(["builtins"]) == EXIT_OK
    assert main(["summarize", "/nonexistent/acqpt-output"]) == EXIT_ERROR
    assert main(["scenario", "fig9", "--seed", "1"]) == EXIT_ERROR
    assert main(["run", "--dim", "2", "--gate", "cnot"]) == EXIT_ERROR
    assert main(["run", "--dim", "2", "--restarts", "1", "--max-steps", "2"]) == EXIT_PARTIAL


def test_cli_run_and_summarize():
    folder = make_temp_folder()
    try:
        code = main(["run", "--dim", "2", "--restarts", "2", "--seed", "3", "--out", str(folder)])
        assert code == EXIT_OK
        assert (folder / RunFiles.TRACES_DIR / "run-0.json").is_file()

        summary_path = folder / "again.json"
        assert main(["summarize", str(folder), "--out", str(summary_path)]) == EXIT_OK
        values = read_json_file(summary_path)
        assert values["templates"][0]["converged"] == 1
    finally:
        safe_remove_folder(folder)


if __name__ == "__main__":
    run_test_functions(globals(), "Harness")
