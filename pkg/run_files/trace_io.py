"""
Reading and writing run traces (JSON) and measurement datasets (JSON lines).
"""

from pathlib import Path
from typing import List, Tuple

from data import read_json_file, write_json_file, write_jsonl_file, read_jsonl_file
from engine import RunTrace
from tomography import Dataset
from .constants import RunFiles


def trial_stem(template: str, trial: int) -> str:
    return f"{template}-{trial}"


def write_trace(trace: RunTrace, filepath: Path, template: str, trial: int) -> None:
    values = trace.to_dict()
    values["template"] = template
    values["trial"] = trial
    write_json_file(filepath, values)


def read_trace(filepath: Path) -> Tuple[str, int, RunTrace]:
    values = read_json_file(filepath)
    if values is None:
        raise ValueError(f"Could not read trace file: {filepath}")

    template = values.get("template", filepath.stem)
    trial = int(values.get("trial", 0))
    return template, trial, RunTrace.from_dict(values)


def write_dataset(dataset: Dataset, filepath: Path) -> None:
    write_jsonl_file(filepath, dataset.to_records())


def read_dataset_records(filepath: Path) -> List[dict]:
    return read_jsonl_file(filepath)


def read_trace_dir(output_dir: Path) -> List[Tuple[str, int, RunTrace]]:
    """All traces below output_dir/traces (or output_dir itself), ordered by template and trial."""
    traces_dir = output_dir / RunFiles.TRACES_DIR
    if not traces_dir.is_dir():
        traces_dir = output_dir

    reserved = {RunFiles.SUMMARY_FILE, RunFiles.METADATA_FILE, RunFiles.MANIFEST_FILE}

    traces = []
    for filepath in sorted(traces_dir.glob(f"*{RunFiles.TRACE_SUFFIX}")):
        if filepath.name in reserved:
            continue
        try:
            traces.append(read_trace(filepath))
        except (ValueError, KeyError) as e:
            print(f"[WARNING] Skipping {filepath.name}: {e}")

    return sorted(traces, key=lambda item: (item[0], item[1]))
