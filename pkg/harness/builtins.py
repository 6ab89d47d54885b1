"""
Builtin scenarios reproducing the measurement-cost studies.
"""

from typing import Callable, Dict, List, Optional

from data import DEFAULT_COPIES
from engine import RunConfig, Strategy
from tomography import NoiseKind, NoiseModel
from .scenario import RunTemplate, Scenario


def _fig2_d4() -> Scenario:
    return Scenario(
        name="fig2-d4",
        trials=60,
        templates=[
            RunTemplate("adaptive", RunConfig(dim=4, strategy=Strategy.ADAPTIVE_MINENT)),
            RunTemplate("random", RunConfig(dim=4, strategy=Strategy.RANDOM)),
        ],
    )


def _fig4_scaling() -> Scenario:
    strategies = (Strategy.ADAPTIVE_MINENT, Strategy.RANDOM, Strategy.ADAPTIVE_RANK1)
    return Scenario(
        name="fig4-scaling",
        trials=20,
        templates=[
            RunTemplate(f"{strategy}-d{dim}", RunConfig(dim=dim, strategy=strategy))
            for strategy in strategies
            for dim in (2, 3, 4, 5)
        ],
    )


def _fig4_rank() -> Scenario:
    """Ququart truths with global settings next to two-qubit truths with local ones."""
    strategies = (Strategy.ADAPTIVE_MINENT, Strategy.RANDOM)
    layouts = (("", None), ("-2x2", (2, 2)))
    return Scenario(
        name="fig4-rank",
        trials=20,
        templates=[
            RunTemplate(
                f"{strategy}-r{rank}{suffix}",
                RunConfig(dim=4, strategy=strategy, truth_rank=rank, subsystem_dims=subsystems),
            )
            for suffix, subsystems in layouts
            for strategy in strategies
            for rank in (1, 2, 3, 4)
        ],
    )


def _fig5_minl1() -> Scenario:
    return Scenario(
        name="fig5-minl1",
        trials=60,
        templates=[
            RunTemplate("minent", RunConfig(dim=4, strategy=Strategy.ADAPTIVE_MINENT)),
            RunTemplate("minl1", RunConfig(dim=4, strategy=Strategy.ADAPTIVE_MINL1)),
        ],
    )


def _expt_cnot_emulation() -> Scenario:
    noise = NoiseModel(kind=NoiseKind.POISSON, copies=DEFAULT_COPIES)
    return Scenario(
        name="expt-cnot-emulation",
        trials=20,
        templates=[
            RunTemplate(
                gate,
                RunConfig(dim=4, gate=gate, noise=noise, subsystem_dims=(2, 2), reference_qpt=True),
            )
            for gate in ("ih", "cnot_imperfect")
        ],
    )


BUILTIN_SCENARIOS: Dict[str, Callable[[], Scenario]] = {
    "fig2-d4": _fig2_d4,
    "fig4-scaling": _fig4_scaling,
    "fig4-rank": _fig4_rank,
    "fig5-minl1": _fig5_minl1,
    "expt-cnot-emulation": _expt_cnot_emulation,
}

BUILTIN_DESCRIPTIONS = {
    "fig2-d4": "d=4 Haar-unitary truths, adaptive minENT vs random, 60 trials each",
    "fig4-scaling": "d=2..5 unitary truths, adaptive / random / rank-1 assumption, 20 trials each",
    "fig4-rank": "d=4 truths of rank 1..4, adaptive vs random, global and 2x2 product settings, 20 trials each",
    "fig5-minl1": "d=4 unitary truths, minENT vs entrywise-L1 estimator, 60 trials each",
    "expt-cnot-emulation": "I kron H and imperfect CNOT with Poisson noise (N=1e4), product settings, standard-QPT reference",
}


def list_builtins() -> List[str]:
    return list(BUILTIN_SCENARIOS)


def builtin_scenario(name: str, trials: Optional[int] = None) -> Scenario:
    if name not in BUILTIN_SCENARIOS:
        raise ValueError(f"Unknown builtin scenario '{name}'. Available: {', '.join(BUILTIN_SCENARIOS)}")
    scenario = BUILTIN_SCENARIOS[name]()
    if trials is not None:
        scenario.trials = trials
    return scenario
