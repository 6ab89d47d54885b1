"""
Scenario orchestration: expand templates into seeded trials, run them on a
worker pool, and write every output file.
"""

import os
import time
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Tuple

from data import (
    DEBUG,
    CURRENT_VERSION,
    SEPARATOR_LINE_LENGTH,
    WORKERS_ENV_VAR,
)
from engine import RunAbortedError, RunConfig, RunTrace, run, trial_seed
from run_files import (
    RunFiles,
    prepare_output_dir,
    write_trial_files,
    write_steps_csv,
    write_summary,
    write_metadata,
    write_manifest,
)
from .summary import Summary, summarize

TRIAL_PENDING = "Trial did not run"


@dataclass(frozen=True)
class RunTemplate:
    name: str
    config: RunConfig


@dataclass
class Scenario:
    name: str
    templates: List[RunTemplate] = field(default_factory=list)
    trials: int = 1
    output_dir: Optional[Path] = None

    def validate(self, raise_on_errors: bool = True) -> List[str]:
        errors = []

        if not self.name:
            errors.append("Scenario needs a name")
        if self.trials < 1:
            errors.append(f"Trials must be at least 1, got {self.trials}")
        if not self.templates:
            errors.append("Scenario has no templates")

        names = [template.name for template in self.templates]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            errors.append(f"Duplicate template names: {', '.join(duplicates)}")

        for template in self.templates:
            for error in template.config.validate(raise_on_errors=False):
                errors.append(f"{template.name}: {error}")

        if errors:
            if raise_on_errors:
                raise ValueError("Invalid scenario:\n  " + "\n  ".join(errors))
            for error in errors:
                print(f"[ERROR] {error}")

        return errors


@dataclass
class TrialResult:
    template: str
    trial: int
    trace: Optional[RunTrace] = None
    error: Optional[str] = None

    @property
    def completed(self) -> bool:
        return self.trace is not None and self.error is None

    @property
    def converged(self) -> bool:
        return self.completed and self.trace.converged

    def manifest_entry(self) -> Dict[str, Any]:
        return {
            "template": self.template,
            "trial": self.trial,
            "completed": self.completed,
            "status": self.trace.status if self.trace is not None else None,
            "error": self.error,
        }


@dataclass
class ScenarioResult:
    """Everything one scenario execution produced."""

    summary: Summary
    trials: List[TrialResult]
    output_dir: Path
    write_errors: List[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.write_errors and all(result.completed for result in self.trials)

    @property
    def all_converged(self) -> bool:
        return self.complete and all(result.converged for result in self.trials)


def trial_config(template: RunTemplate, master_seed: int, trial: int) -> RunConfig:
    return replace(template.config, seed=trial_seed(master_seed, template.name, trial))


def run_trial(job: Tuple[str, int, RunConfig]) -> TrialResult:
    """Run one trial; failures are reported in the result instead of raised."""
    template, trial, config = job
    try:
        return TrialResult(template=template, trial=trial, trace=run(config))
    except RunAbortedError as e:
        return TrialResult(template=template, trial=trial, trace=e.trace, error=str(e))
    except Exception as e:
        return TrialResult(template=template, trial=trial, error=f"{type(e).__name__}: {e}")


def worker_count(workers: Optional[int] = None) -> int:
    if workers is None:
        value = os.environ.get(WORKERS_ENV_VAR, "1")
        try:
            workers = int(value)
        except ValueError:
            print(f"[WARNING] Ignoring invalid {WORKERS_ENV_VAR}='{value}'")
            workers = 1
    return max(1, workers)


def iter_trial_results(
    jobs: List[Tuple[str, int, RunConfig]], workers: int
) -> Iterator[TrialResult]:
    """Yield results one at a time, in job order whatever the pool size."""
    if workers <= 1 or len(jobs) <= 1:
        for index, job in enumerate(jobs, start=1):
            print(f"[STEP] Trial {index}/{len(jobs)}: {job[0]} #{job[1]}")
            yield run_trial(job)
        return

    with ProcessPoolExecutor(max_workers=workers) as executor:
        yield from executor.map(run_trial, jobs)


def _print_summary(scenario: Scenario, outcome: ScenarioResult) -> None:
    failed = [result for result in outcome.trials if not result.completed]

    print()
    print("=" * SEPARATOR_LINE_LENGTH)
    print(f"[SUMMARY] SCENARIO {scenario.name}")
    print("=" * SEPARATOR_LINE_LENGTH)
    print(f"[INFO] Total trials: {len(outcome.trials)}")
    print(f"[INFO] Completed: {len(outcome.trials) - len(failed)}")
    print(f"[INFO] Failed: {len(failed)}")

    for template in outcome.summary.templates:
        mean = "n/a" if template.k_ic_mean is None else f"{template.k_ic_mean:.2f}"
        std = "n/a" if template.k_ic_std is None else f"{template.k_ic_std:.2f}"
        line = (
            f"[INFO] {template.name}: k_IC {mean} +- {std} "
            f"({template.converged}/{template.trials} converged)"
        )
        if template.reference_fidelity_mean is not None:
            line += f", standard QPT fidelity {template.reference_fidelity_mean:.4f}"
        print(line)

    if failed:
        print("\n[ERROR] Failed trials:")
        for result in failed:
            print(f"   • {result.template} #{result.trial}: {result.error}")

    if outcome.write_errors:
        print("\n[ERROR] Output files not written:")
        for error in outcome.write_errors:
            print(f"   • {error}")

    print("=" * SEPARATOR_LINE_LENGTH)


def execute_scenario(
    scenario: Scenario, master_seed: int, workers: Optional[int] = None
) -> ScenarioResult:
    """Run every trial of every template and write the output folder.

    Each trial's trace and dataset are written as soon as it finishes and
    the manifest is rewritten after every trial, so an interrupted scenario
    leaves a manifest that marks the trials still missing. Data files are a
    pure function of the scenario and master seed; timestamps and wall
    times only go to metadata.json.
    """
    scenario.validate()
    if scenario.output_dir is None:
        raise ValueError(f"Scenario '{scenario.name}' has no output directory")

    output_dir = Path(scenario.output_dir)
    prepare_output_dir(output_dir)
    workers = worker_count(workers)

    jobs = [
        (template.name, trial, trial_config(template, master_seed, trial))
        for template in scenario.templates
        for trial in range(scenario.trials)
    ]

    print("=" * SEPARATOR_LINE_LENGTH)
    print(f"[START] Scenario {scenario.name}: {len(jobs)} trial(s) on {workers} worker(s)")
    print("=" * SEPARATOR_LINE_LENGTH)

    results = [
        TrialResult(template=name, trial=trial, error=TRIAL_PENDING) for name, trial, _ in jobs
    ]
    data_files: List[Path] = []
    write_errors: List[str] = []

    def save_manifest() -> None:
        try:
            write_manifest(output_dir, [result.manifest_entry() for result in results], data_files)
        except OSError as e:
            write_errors.append(f"{RunFiles.MANIFEST_FILE}: {e}")

    started_at = datetime.now(timezone.utc).isoformat()
    started = time.perf_counter()
    save_manifest()

    try:
        for index, result in enumerate(iter_trial_results(jobs, workers)):
            if result.trace is not None:
                try:
                    data_files += write_trial_files(output_dir, result.template, result.trial, result.trace)
                except OSError as e:
                    result.error = f"Could not write trial files: {e}"
            results[index] = result
            save_manifest()
    except BrokenProcessPool as e:
        print(f"[ERROR] Worker pool stopped: {e}")
        for result in results:
            if result.error == TRIAL_PENDING:
                result.error = f"Worker pool stopped: {e}"

    elapsed = time.perf_counter() - started

    traces = [result.trace for result in results if result.trace is not None]
    names = [result.template for result in results if result.trace is not None]
    summary = summarize(traces, names, name=scenario.name) if traces else Summary(scenario.name, ())

    step_rows = []
    for result in results:
        if result.trace is not None:
            step_rows += result.trace.step_rows(result.template, result.trial)

    try:
        data_files.append(write_steps_csv(output_dir, step_rows))
        if traces:
            data_files.append(write_summary(output_dir, summary.to_dict()))
        write_metadata(
            output_dir,
            {
                "version": CURRENT_VERSION,
                "scenario": scenario.name,
                "master_seed": master_seed,
                "workers": workers,
                "started_at": started_at,
                "finished_at": datetime.now(timezone.utc).isoformat(),
                "elapsed_seconds": elapsed,
                "trial_wall_times": {
                    f"{result.template}-{result.trial}": result.trace.wall_time
                    for result in results
                    if result.trace is not None
                },
            },
        )
    except OSError as e:
        write_errors.append(str(e))
    save_manifest()

    if DEBUG:
        print(f"[DEBUG] Wrote {len(data_files)} data files to {output_dir}")

    outcome = ScenarioResult(
        summary=summary, trials=results, output_dir=output_dir, write_errors=write_errors
    )
    _print_summary(scenario, outcome)
    print(f"[OK] Results saved to: {output_dir}")
    return outcome


def run_scenario(scenario: Scenario, master_seed: int, workers: Optional[int] = None) -> Summary:
    """execute_scenario, keeping only the summary; the per-trial outcome is in manifest.json."""
    return execute_scenario(scenario, master_seed, workers).summary
