"""
Run configuration for one tomography trial.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from data import (
    DEFAULT_EPSILON,
    DEFAULT_EQ_TOL,
    DEFAULT_TAU_RANK,
    DEFAULT_RESTARTS,
    DEFAULT_WARM_RESTARTS,
    DEFAULT_GATE_ETA,
    MAX_STEPS_FACTOR,
    normalize_string,
)
from operators import GATE_NAMES, TWO_QUBIT_GATES
from tomography import NoiseModel


class Strategy:
    ADAPTIVE_MINENT = "adaptive_minent"
    ADAPTIVE_MINL1 = "adaptive_minl1"
    RANDOM = "random"
    ADAPTIVE_RANK1 = "adaptive_rank1"

    ALL = (ADAPTIVE_MINENT, ADAPTIVE_MINL1, RANDOM, ADAPTIVE_RANK1)

    @classmethod
    def parse(cls, text: str) -> str:
        key = normalize_string(text)
        if key not in cls.ALL:
            raise ValueError(f"Unknown strategy '{text}'. Expected one of {', '.join(cls.ALL)}")
        return key


@dataclass(frozen=True)
class RunConfig:
    dim: int
    strategy: str = Strategy.ADAPTIVE_MINENT
    truth_rank: int = 1
    gate: Optional[str] = None
    eta: float = DEFAULT_GATE_ETA
    epsilon: float = DEFAULT_EPSILON
    max_steps: Optional[int] = None
    noise: NoiseModel = field(default_factory=NoiseModel)
    subsystem_dims: Optional[Tuple[int, ...]] = None
    seed: int = 0
    restarts: int = DEFAULT_RESTARTS
    warm_restarts: int = DEFAULT_WARM_RESTARTS
    eq_tol: float = DEFAULT_EQ_TOL
    tau_rank: float = DEFAULT_TAU_RANK
    track_fidelity: bool = True
    reference_qpt: bool = False

    def __post_init__(self):
        if self.subsystem_dims is not None:
            object.__setattr__(self, "subsystem_dims", tuple(int(d) for d in self.subsystem_dims))
        if self.gate is not None:
            object.__setattr__(self, "gate", normalize_string(self.gate))

    @property
    def step_restarts(self) -> int:
        """Random minENT starts once a previous estimate seeds the search."""
        return min(self.restarts, self.warm_restarts)

    @property
    def step_limit(self) -> int:
        if self.max_steps is None:
            return MAX_STEPS_FACTOR * self.dim**4
        return self.max_steps

    def validate(self, raise_on_errors: bool = True) -> List[str]:
        errors = []

        if self.dim < 1:
            errors.append(f"Dimension must be positive, got {self.dim}")
        if self.strategy not in Strategy.ALL:
            errors.append(f"Unknown strategy '{self.strategy}'")
        if self.gate is None:
            if not 1 <= self.truth_rank <= max(self.dim, 1) ** 2:
                errors.append(f"Truth rank {self.truth_rank} outside [1, {self.dim ** 2}]")
        else:
            if self.gate not in GATE_NAMES:
                errors.append(f"Unknown gate '{self.gate}'")
            elif self.gate in TWO_QUBIT_GATES and self.dim != 4:
                errors.append(f"Gate '{self.gate}' needs dim 4, got {self.dim}")
        if not 0.0 <= self.eta <= 1.0:
            errors.append(f"Depolarizing weight {self.eta} outside [0, 1]")
        if self.epsilon <= 0:
            errors.append(f"Epsilon must be positive, got {self.epsilon}")
        if self.step_limit < 1:
            errors.append(f"max_steps must be at least 1, got {self.max_steps}")
        if self.subsystem_dims is not None:
            product = 1
            for dim in self.subsystem_dims:
                product *= dim
            if any(dim < 1 for dim in self.subsystem_dims) or product != self.dim:
                errors.append(
                    f"Subsystem dimensions {list(self.subsystem_dims)} do not factor {self.dim}"
                )
        if self.restarts < 1:
            errors.append(f"Restarts must be at least 1, got {self.restarts}")
        if self.warm_restarts < 1:
            errors.append(f"Warm restarts must be at least 1, got {self.warm_restarts}")
        if self.eq_tol <= 0:
            errors.append(f"Equality tolerance must be positive, got {self.eq_tol}")
        if not 0 < self.tau_rank < 1:
            errors.append(f"Rank threshold {self.tau_rank} outside (0, 1)")

        if errors:
            if raise_on_errors:
                raise ValueError("Invalid run configuration:\n  " + "\n  ".join(errors))
            for error in errors:
                print(f"[ERROR] {error}")

        return errors

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dim": self.dim,
            "strategy": self.strategy,
            "truth_rank": self.truth_rank,
            "gate": self.gate,
            "eta": self.eta,
            "epsilon": self.epsilon,
            "max_steps": self.step_limit,
            "noise": self.noise.kind,
            "copies": self.noise.copies,
            "subsystem_dims": list(self.subsystem_dims) if self.subsystem_dims else None,
            "seed": self.seed,
            "restarts": self.restarts,
            "warm_restarts": self.warm_restarts,
            "eq_tol": self.eq_tol,
            "tau_rank": self.tau_rank,
            "track_fidelity": self.track_fidelity,
            "reference_qpt": self.reference_qpt,
        }

    @classmethod
    def from_dict(cls, values: Dict[str, Any]) -> "RunConfig":
        values = dict(values)
        noise = NoiseModel(
            kind=values.pop("noise", "none"),
            copies=int(values.pop("copies", NoiseModel().copies)),
        )
        subsystem_dims = values.pop("subsystem_dims", None)
        return cls(
            noise=noise,
            subsystem_dims=tuple(subsystem_dims) if subsystem_dims else None,
            **values,
        )
