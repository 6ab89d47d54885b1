"""
Scenario files: INI-style sections or JSON.

    [scenario]
    name = d2-sweep
    trials = 10

    [template adaptive-d2]
    dim = 2
    strategy = adaptive_minent
    rank = 1

Template keys: dim, strategy, rank, gate, eta, noise, copies, eps,
max_steps, subsystems (comma separated), restarts, warm_restarts, eq_tol,
tau_rank, track_fidelity, reference_qpt. JSON files hold the same keys with
the templates in a "templates" list, each carrying its own "name".
"""

import configparser
import json
from pathlib import Path
from typing import Any, Dict, Mapping

from data import DEFAULT_COPIES
from engine import RunConfig, Strategy
from tomography import NoiseModel
from .scenario import RunTemplate, Scenario

SCENARIO_SECTION = "scenario"
TEMPLATE_PREFIX = "template "

TEMPLATE_KEYS = (
    "dim",
    "strategy",
    "rank",
    "gate",
    "eta",
    "noise",
    "copies",
    "eps",
    "max_steps",
    "subsystems",
    "restarts",
    "warm_restarts",
    "eq_tol",
    "tau_rank",
    "track_fidelity",
    "reference_qpt",
)


def _to_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"Invalid boolean '{value}'")


def _to_dims(value: Any):
    if value in (None, ""):
        return None
    if isinstance(value, (list, tuple)):
        return tuple(int(dim) for dim in value)
    return tuple(int(part) for part in str(value).replace("x", ",").split(",") if part.strip())


def template_from_mapping(name: str, values: Mapping[str, Any]) -> RunTemplate:
    """Build a RunTemplate from raw key/value pairs (strings or JSON values)."""
    unknown = sorted(set(values) - set(TEMPLATE_KEYS) - {"name"})
    if unknown:
        raise ValueError(f"Template '{name}': unknown keys {', '.join(unknown)}")
    if "dim" not in values:
        raise ValueError(f"Template '{name}': missing 'dim'")

    try:
        noise = NoiseModel.parse(
            str(values.get("noise", "none")),
            copies=int(values.get("copies", DEFAULT_COPIES)),
        )
        options: Dict[str, Any] = {
            "dim": int(values["dim"]),
            "strategy": Strategy.parse(str(values.get("strategy", Strategy.ADAPTIVE_MINENT))),
            "truth_rank": int(values.get("rank", 1)),
            "noise": noise,
            "subsystem_dims": _to_dims(values.get("subsystems")),
        }
        if values.get("gate") not in (None, ""):
            options["gate"] = str(values["gate"])
        if "eta" in values:
            options["eta"] = float(values["eta"])
        if "eps" in values:
            options["epsilon"] = float(values["eps"])
        if values.get("max_steps") not in (None, ""):
            options["max_steps"] = int(values["max_steps"])
        if "restarts" in values:
            options["restarts"] = int(values["restarts"])
        if "warm_restarts" in values:
            options["warm_restarts"] = int(values["warm_restarts"])
        if "eq_tol" in values:
            options["eq_tol"] = float(values["eq_tol"])
        if "tau_rank" in values:
            options["tau_rank"] = float(values["tau_rank"])
        if "track_fidelity" in values:
            options["track_fidelity"] = _to_bool(values["track_fidelity"])
        if "reference_qpt" in values:
            options["reference_qpt"] = _to_bool(values["reference_qpt"])
    except (TypeError, ValueError) as e:
        raise ValueError(f"Template '{name}': {e}")

    config = RunConfig(**options)
    config.validate()
    return RunTemplate(name=name, config=config)


def read_scenario_ini(text: str, default_name: str) -> Scenario:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.read_string(text)

    header = parser[SCENARIO_SECTION] if parser.has_section(SCENARIO_SECTION) else {}
    scenario = Scenario(
        name=header.get("name", default_name),
        trials=int(header.get("trials", 1)),
    )
    if "output" in header:
        scenario.output_dir = Path(header["output"])

    for section in parser.sections():
        if not section.startswith(TEMPLATE_PREFIX):
            if section != SCENARIO_SECTION:
                print(f"[WARNING] Ignoring section [{section}]")
            continue
        name = section[len(TEMPLATE_PREFIX) :].strip()
        scenario.templates.append(template_from_mapping(name, dict(parser[section])))

    return scenario


def read_scenario_json(text: str, default_name: str) -> Scenario:
    values = json.loads(text)
    scenario = Scenario(
        name=values.get("name", default_name),
        trials=int(values.get("trials", 1)),
    )
    if values.get("output"):
        scenario.output_dir = Path(values["output"])

    for index, template in enumerate(values.get("templates", [])):
        name = template.get("name", f"template-{index + 1}")
        scenario.templates.append(template_from_mapping(name, template))

    return scenario


def read_scenario_file(filepath: Path) -> Scenario:
    if not filepath.is_file():
        raise ValueError(f"Scenario file does not exist: {filepath}")

    text = filepath.read_text(encoding="utf-8")
    try:
        if filepath.suffix.lower() == ".json":
            scenario = read_scenario_json(text, filepath.stem)
        else:
            scenario = read_scenario_ini(text, filepath.stem)
    except (configparser.Error, json.JSONDecodeError) as e:
        raise ValueError(f"Could not parse scenario file {filepath.name}: {e}")

    scenario.validate()
    return scenario
