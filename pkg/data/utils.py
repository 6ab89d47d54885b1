import csv
import json
import xxhash
import numpy as np
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence


def read_file_to_bytes(filepath: Path) -> bytes:
    with open(filepath, "rb") as f:
        return f.read()


def read_json_file(filepath: Path) -> Optional[Dict[str, Any]]:
    if not filepath.exists():
        return None

    try:
        with open(filepath, "r", encoding="utf-8") as f:
            return json.load(f)
    except (json.JSONDecodeError, IOError, OSError):
        return None


def write_json_file(filepath: Path, data: Dict[str, Any], indent: int = 4) -> None:
    with open(filepath, "w", encoding="utf-8", newline="\n") as f:
        json.dump(data, f, indent=indent, ensure_ascii=False, sort_keys=True)
        f.write("\n")


def write_jsonl_file(filepath: Path, records: Iterable[Dict[str, Any]]) -> None:
    with open(filepath, "w", encoding="utf-8", newline="\n") as f:
        for record in records:
            f.write(json.dumps(record, ensure_ascii=False, sort_keys=True))
            f.write("\n")


def read_jsonl_file(filepath: Path) -> List[Dict[str, Any]]:
    with open(filepath, "r", encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]


def write_csv_file(
    filepath: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]
) -> None:
    with open(filepath, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)


def float_to_decimal(value: Optional[float]) -> Optional[str]:
    if value is None:
        return None
    return format(float(value), ".17e")


def decimal_to_float(value: Optional[str]) -> Optional[float]:
    if value is None:
        return None
    try:
        return float(value)
    except ValueError as e:
        raise ValueError(f"Could not parse decimal '{value}': {e}")


def complex_vector_to_strings(vector: np.ndarray) -> List[List[str]]:
    return [
        [float_to_decimal(entry.real), float_to_decimal(entry.imag)]
        for entry in np.asarray(vector, dtype=complex).ravel()
    ]


def strings_to_complex_vector(pairs: Sequence[Sequence[str]]) -> np.ndarray:
    return np.array(
        [complex(float(re), float(im)) for re, im in pairs], dtype=complex
    )


def validate_path_exists_and_is_dir(path: Path, path_description: str = "Path") -> bool:
    if not path.exists():
        print(f"[ERROR] {path_description} does not exist: {path}\n")
        return False

    if not path.is_dir():
        print(f"[ERROR] Path is not a directory: {path}\n")
        return False

    return True


def split_seed(master_seed: int, *labels: Any) -> int:
    """Derive an independent 63-bit seed from a master seed and labels.

    The rule is xxh3_64 over the colon-joined decimal text
    "master:label1:label2:...", masked to 63 bits.
    """
    key = ":".join([str(int(master_seed))] + [str(label) for label in labels])
    return xxhash.xxh3_64(key.encode("utf-8")).intdigest() & (2**63 - 1)


def file_digest(filepath: Path) -> str:
    return xxhash.xxh3_64(read_file_to_bytes(filepath)).hexdigest()


def normalize_string(display_name: str) -> str:
    return display_name.lower().replace(" ", "_").replace("-", "_")
