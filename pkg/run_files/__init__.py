"""
Scenario output files: traces, datasets, step curves, summaries and manifests
"""

from .constants import RunFiles, STEPS_CSV_HEADER, MANIFEST_SCHEMA

from .trace_io import (
    trial_stem,
    write_trace,
    read_trace,
    write_dataset,
    read_dataset_records,
    read_trace_dir,
)

from .files_io import (
    prepare_output_dir,
    write_trial_files,
    write_steps_csv,
    write_summary,
    write_metadata,
    write_manifest,
    output_digests,
)

__all__ = [
    # Constants
    "RunFiles",
    "STEPS_CSV_HEADER",
    "MANIFEST_SCHEMA",
    # Trace IO
    "trial_stem",
    "write_trace",
    "read_trace",
    "write_dataset",
    "read_dataset_records",
    "read_trace_dir",
    # Output folder
    "prepare_output_dir",
    "write_trial_files",
    "write_steps_csv",
    "write_summary",
    "write_metadata",
    "write_manifest",
    "output_digests",
]
