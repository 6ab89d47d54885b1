"""
Constants for the output folder layout and file schemas.
"""


class RunFiles:
    TRACES_DIR = "traces"
    DATASETS_DIR = "datasets"
    STEPS_FILE = "steps.csv"
    SUMMARY_FILE = "summary.json"
    METADATA_FILE = "metadata.json"
    MANIFEST_FILE = "manifest.json"
    TRACE_SUFFIX = ".json"
    DATASET_SUFFIX = ".jsonl"


STEPS_CSV_HEADER = ("template", "trial", "k", "kappa", "s_cvx", "fidelity", "entropy")

MANIFEST_SCHEMA = "acqpt-manifest/1"
