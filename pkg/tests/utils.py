"""Common utility functions for test scripts."""

import sys
import shutil
import tempfile
import traceback
from pathlib import Path

from data import file_digest, SEPARATOR_LINE_LENGTH

STEP_SEPARATOR = "-" * SEPARATOR_LINE_LENGTH
SECTION_SEPARATOR = "=" * SEPARATOR_LINE_LENGTH


def print_step_header(step_num, title):
    """Print a formatted step header."""
    print(STEP_SEPARATOR)
    print(f"[STEP {step_num}] {title}...")
    print(STEP_SEPARATOR)
    print()


def make_temp_folder(prefix="acqpt-test-") -> Path:
    return Path(tempfile.mkdtemp(prefix=prefix))


def safe_remove_folder(folder_path: Path, description=""):
    """Safely remove a folder with optional description."""
    if not folder_path.exists():
        return False
    try:
        shutil.rmtree(folder_path)
        if description:
            print(f"[OK] Removed {description}")
        return True
    except Exception as e:
        if description:
            print(f"[WARNING] Failed to remove {description}: {e}")
        return False


def get_file_checksum(file_path: Path) -> str:
    return file_digest(file_path)


def collect_test_functions(namespace):
    """Test functions of a module namespace, in definition order."""
    return [
        value
        for name, value in namespace.items()
        if name.startswith("test_") and callable(value)
    ]


def run_test_functions(namespace, title):
    """Run every test_* function, print [PASS]/[FAIL] and exit 0 or 1."""
    tests = collect_test_functions(namespace)

    print(SECTION_SEPARATOR)
    print(f"[START] {title}: {len(tests)} test(s)")
    print(SECTION_SEPARATOR)
    print()

    failed = []
    for index, test in enumerate(tests, start=1):
        try:
            test()
            print(f"[PASS] {index:3d}. {test.__name__}")
        except Exception:
            failed.append(test.__name__)
            print(f"[FAIL] {index:3d}. {test.__name__}")
            traceback.print_exc()

    print()
    print(SECTION_SEPARATOR)
    print("[SUMMARY] Test Summary")
    print(SECTION_SEPARATOR)
    print(f"\nResults: {len(tests) - len(failed)}/{len(tests)} tests passed")
    if failed:
        print("\n[ERROR] Failed tests:")
        for name in failed:
            print(f"   • {name}")
    print(SECTION_SEPARATOR)

    sys.exit(1 if failed else 0)
