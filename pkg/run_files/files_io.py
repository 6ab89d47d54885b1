"""
Wrapper functions for writing every file of a scenario output folder.
"""

from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

from data import (
    CURRENT_VERSION,
    write_json_file,
    write_csv_file,
    file_digest,
)
from engine import RunTrace
from .constants import RunFiles, STEPS_CSV_HEADER, MANIFEST_SCHEMA
from .trace_io import trial_stem, write_trace, write_dataset


def prepare_output_dir(output_dir: Path) -> None:
    (output_dir / RunFiles.TRACES_DIR).mkdir(parents=True, exist_ok=True)
    (output_dir / RunFiles.DATASETS_DIR).mkdir(parents=True, exist_ok=True)


def write_trial_files(
    output_dir: Path, template: str, trial: int, trace: RunTrace
) -> List[Path]:
    """Write the trace and its dataset; returns the written paths."""
    stem = trial_stem(template, trial)
    trace_path = output_dir / RunFiles.TRACES_DIR / f"{stem}{RunFiles.TRACE_SUFFIX}"
    write_trace(trace, trace_path, template, trial)
    written = [trace_path]

    if trace.dataset is not None:
        dataset_path = output_dir / RunFiles.DATASETS_DIR / f"{stem}{RunFiles.DATASET_SUFFIX}"
        write_dataset(trace.dataset, dataset_path)
        written.append(dataset_path)

    return written


def write_steps_csv(output_dir: Path, rows: Iterable[Sequence[Any]]) -> Path:
    filepath = output_dir / RunFiles.STEPS_FILE
    write_csv_file(filepath, STEPS_CSV_HEADER, rows)
    return filepath


def write_summary(output_dir: Path, summary: Dict[str, Any]) -> Path:
    filepath = output_dir / RunFiles.SUMMARY_FILE
    write_json_file(filepath, summary)
    return filepath


def write_metadata(output_dir: Path, metadata: Dict[str, Any]) -> Path:
    filepath = output_dir / RunFiles.METADATA_FILE
    write_json_file(filepath, metadata)
    return filepath


def write_manifest(
    output_dir: Path, trials: List[Dict[str, Any]], data_files: Iterable[Path]
) -> Path:
    """Completion flag per trial plus an xxh3 digest of every data file."""
    digests = {
        path.relative_to(output_dir).as_posix(): file_digest(path)
        for path in sorted(data_files)
        if path.exists()
    }
    complete = all(trial["completed"] for trial in trials)

    filepath = output_dir / RunFiles.MANIFEST_FILE
    write_json_file(
        filepath,
        {
            "schema": MANIFEST_SCHEMA,
            "version": CURRENT_VERSION,
            "complete": complete,
            "trials": trials,
            "digests": digests,
        },
    )
    return filepath


def output_digests(output_dir: Path) -> Dict[str, str]:
    """Digests of all data files (everything except metadata.json)."""
    return {
        path.relative_to(output_dir).as_posix(): file_digest(path)
        for path in sorted(output_dir.rglob("*"))
        if path.is_file() and path.name != RunFiles.METADATA_FILE
    }
