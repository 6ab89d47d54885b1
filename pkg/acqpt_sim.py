#!/usr/bin/env python3
"""
Adaptive compressive process tomography simulator.

Usage:
    python acqpt_sim.py run --dim 2 --strategy adaptive_minent --seed 1
    python acqpt_sim.py run --dim 4 --gate cnot_imperfect --noise poisson --subsystems 2,2 --out out/cnot
    python acqpt_sim.py scenario fig2-d4 --seed 7 --trials 20 --out out/fig2
    python acqpt_sim.py scenario sweep.ini --seed 7
    python acqpt_sim.py summarize out/fig2
    python acqpt_sim.py builtins

Exit Codes:
    0 - Every run converged
    2 - Partial results (max_steps reached or failed trials)
    1 - Error
"""

import sys
import argparse
from pathlib import Path

from data import (
    DEFAULT_COPIES,
    DEFAULT_EPSILON,
    DEFAULT_GATE_ETA,
    DEFAULT_RESTARTS,
    DEFAULT_WARM_RESTARTS,
    SEPARATOR_LINE_LENGTH,
    WORKERS_ENV_VAR,
    write_json_file,
    validate_path_exists_and_is_dir,
)
from engine import RunAbortedError, RunConfig, RunStatus, Strategy, run
from harness import (
    BUILTIN_DESCRIPTIONS,
    builtin_scenario,
    execute_scenario,
    list_builtins,
    read_scenario_file,
    scaling_slopes,
    summarize,
)
from operators import GATE_NAMES
from run_files import (
    RunFiles,
    prepare_output_dir,
    read_trace_dir,
    write_steps_csv,
    write_summary,
    write_trial_files,
)
from tomography import NoiseModel

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARTIAL = 2

DEFAULT_OUTPUT_ROOT = Path("acqpt-output")


def parse_subsystems(text):
    if not text:
        return None
    return tuple(int(part) for part in text.replace("x", ",").split(",") if part.strip())


def command_run(args) -> int:
    config = RunConfig(
        dim=args.dim,
        strategy=Strategy.parse(args.strategy),
        truth_rank=args.rank,
        gate=args.gate,
        eta=args.eta,
        epsilon=args.eps,
        max_steps=args.max_steps,
        noise=NoiseModel.parse(args.noise, copies=args.copies),
        subsystem_dims=parse_subsystems(args.subsystems),
        seed=args.seed,
        restarts=args.restarts,
        warm_restarts=args.warm_restarts,
        reference_qpt=args.reference,
    )
    config.validate()

    print("=" * SEPARATOR_LINE_LENGTH)
    print(f"[START] d={config.dim} strategy={config.strategy} noise={config.noise.label} seed={config.seed}")
    print("=" * SEPARATOR_LINE_LENGTH)

    try:
        trace = run(config)
    except RunAbortedError as e:
        print(f"[ERROR] {e}")
        return EXIT_ERROR

    for step in trace.steps:
        fidelity = "n/a" if step.fidelity is None else f"{step.fidelity:.6f}"
        print(f"[STEP] k={step.k:4d} kappa={step.kappa:3d} s_cvx={step.s_cvx:.3e} fidelity={fidelity}")

    if args.out:
        output_dir = Path(args.out).resolve()
        prepare_output_dir(output_dir)
        write_trial_files(output_dir, "run", 0, trace)
        write_steps_csv(output_dir, trace.step_rows("run", 0))
        write_summary(output_dir, summarize([trace], ["run"], name="run").to_dict())
        print(f"[OK] Results saved to: {output_dir}")

    if trace.reference_fidelity is not None:
        print(f"[INFO] Standard QPT reference fidelity {trace.reference_fidelity:.6f}")
    if trace.reference_agreement is not None:
        print(f"[INFO] Final estimate vs standard QPT fidelity {trace.reference_agreement:.6f}")

    if trace.status == RunStatus.CONVERGED:
        print(f"[OK] Converged at k_IC = {trace.k_ic} with fidelity {trace.final_fidelity:.6f}")
        return EXIT_OK

    print(f"[WARNING] Stopped after {trace.final_k} steps without certification")
    return EXIT_PARTIAL


def command_scenario(args) -> int:
    source = Path(args.scenario)
    if source.is_file():
        scenario = read_scenario_file(source.resolve())
        if args.trials is not None:
            scenario.trials = args.trials
    else:
        scenario = builtin_scenario(args.scenario, args.trials)

    if args.out:
        scenario.output_dir = Path(args.out).resolve()
    elif scenario.output_dir is None:
        scenario.output_dir = (DEFAULT_OUTPUT_ROOT / scenario.name).resolve()

    outcome = execute_scenario(scenario, args.seed, args.workers)
    return EXIT_OK if outcome.all_converged else EXIT_PARTIAL


def command_summarize(args) -> int:
    folder = Path(args.folder).resolve()
    if not validate_path_exists_and_is_dir(folder, "Output folder"):
        return EXIT_ERROR

    entries = read_trace_dir(folder)
    if not entries:
        print(f"[ERROR] No traces found in: {folder}")
        return EXIT_ERROR

    names = [template for template, _, _ in entries]
    summary = summarize([trace for _, _, trace in entries], names, name=folder.name)

    print("=" * SEPARATOR_LINE_LENGTH)
    print(f"[SUMMARY] {folder.name}: {len(entries)} trace(s)")
    print("=" * SEPARATOR_LINE_LENGTH)
    for template in summary.templates:
        mean = "n/a" if template.k_ic_mean is None else f"{template.k_ic_mean:.2f}"
        std = "n/a" if template.k_ic_std is None else f"{template.k_ic_std:.2f}"
        note = "" if template.std_defined else " (single run)"
        print(
            f"[INFO] {template.name}: k_IC {mean} +- {std}{note}, "
            f"{template.converged}/{template.trials} converged"
        )

    scaling = scaling_slopes(summary)
    for strategy, fit in scaling["strategies"].items():
        if fit["slope"] is not None:
            print(f"[INFO] {strategy}: k_IC ~ {float(fit['slope']):.3f} d^2 + {float(fit['intercept']):.3f}")
    print("=" * SEPARATOR_LINE_LENGTH)

    if args.out:
        write_json_file(Path(args.out).resolve(), summary.to_dict())
        print(f"[OK] Summary saved to: {args.out}")

    return EXIT_OK


def command_builtins(args) -> int:
    for name in list_builtins():
        print(f"{name:22s} {BUILTIN_DESCRIPTIONS[name]}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Simulate adaptive compressive quantum process tomography"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    run_parser = subparsers.add_parser("run", help="Run a single configuration")
    run_parser.add_argument("--dim", type=int, required=True, help="Hilbert-space dimension d")
    run_parser.add_argument("--rank", type=int, default=1, help="Kraus rank of the random truth")
    run_parser.add_argument("--gate", choices=GATE_NAMES, help="Use a named gate as the truth")
    run_parser.add_argument("--eta", type=float, default=DEFAULT_GATE_ETA, help="Depolarizing weight of cnot_imperfect")
    run_parser.add_argument("--strategy", default=Strategy.ADAPTIVE_MINENT, choices=Strategy.ALL)
    run_parser.add_argument("--noise", default="none", help="none, poisson or poisson:N")
    run_parser.add_argument("--copies", type=int, default=DEFAULT_COPIES, help="Copies N per setting")
    run_parser.add_argument("--eps", type=float, default=DEFAULT_EPSILON, help="Certification threshold")
    run_parser.add_argument("--seed", type=int, default=0)
    run_parser.add_argument("--max-steps", type=int, default=None, help="Defaults to 6 d^4")
    run_parser.add_argument("--subsystems", default=None, help="Product structure, e.g. 2,2")
    run_parser.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS, help="minENT restarts")
    run_parser.add_argument(
        "--warm-restarts",
        type=int,
        default=DEFAULT_WARM_RESTARTS,
        help="minENT random restarts once the previous estimate seeds the search",
    )
    run_parser.add_argument(
        "--reference", action="store_true", help="Also reconstruct from all d^4 standard QPT settings"
    )
    run_parser.add_argument("--out", default=None, help="Write trace, dataset and curves here")
    run_parser.set_defaults(handler=command_run)

    scenario_parser = subparsers.add_parser("scenario", help="Run a scenario file or builtin")
    scenario_parser.add_argument("scenario", help="Scenario file (.ini or .json) or builtin name")
    scenario_parser.add_argument("--seed", type=int, required=True, help="Master seed")
    scenario_parser.add_argument("--trials", type=int, default=None, help="Override trials per template")
    scenario_parser.add_argument("--out", default=None, help="Output folder")
    scenario_parser.add_argument(
        "--workers", type=int, default=None, help=f"Worker processes (default: ${WORKERS_ENV_VAR} or 1)"
    )
    scenario_parser.set_defaults(handler=command_scenario)

    summarize_parser = subparsers.add_parser("summarize", help="Summarize a folder of traces")
    summarize_parser.add_argument("folder", help=f"Scenario output folder or its {RunFiles.TRACES_DIR}/ folder")
    summarize_parser.add_argument("--out", default=None, help="Write the summary JSON here")
    summarize_parser.set_defaults(handler=command_summarize)

    builtins_parser = subparsers.add_parser("builtins", help="List builtin scenarios")
    builtins_parser.set_defaults(handler=command_builtins)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, OSError) as e:
        print(f"[ERROR] {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
