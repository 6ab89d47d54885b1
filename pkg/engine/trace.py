"""
Per-run bookkeeping: one record per measurement step and the final outcome.
"""

import numpy as np
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from data import (
    TRACE_SCHEMA,
    CURRENT_VERSION,
    float_to_decimal,
    decimal_to_float,
    complex_vector_to_strings,
    strings_to_complex_vector,
)
from operators import ProcessMatrix
from tomography import Dataset
from .config import RunConfig


class RunStatus:
    RUNNING = "running"
    CONVERGED = "converged"
    MAX_STEPS = "max_steps"
    ABORTED = "aborted"


def matrix_to_strings(matrix: np.ndarray) -> List[List[List[str]]]:
    return [complex_vector_to_strings(row) for row in np.asarray(matrix, dtype=complex)]


def strings_to_matrix(rows: List[List[List[str]]]) -> np.ndarray:
    return np.array([strings_to_complex_vector(row) for row in rows], dtype=complex)


@dataclass(frozen=True)
class StepRecord:
    k: int
    kappa: int
    rank_prev: int
    s_cvx: float
    fidelity: Optional[float]
    entropy: Optional[float]
    a: np.ndarray
    b: np.ndarray
    solver_status: str
    wall_time: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "kappa": self.kappa,
            "rank_prev": self.rank_prev,
            "s_cvx": float_to_decimal(self.s_cvx),
            "fidelity": float_to_decimal(self.fidelity),
            "entropy": float_to_decimal(self.entropy),
            "a": complex_vector_to_strings(self.a),
            "b": complex_vector_to_strings(self.b),
            "solver_status": self.solver_status,
        }

    @classmethod
    def from_dict(cls, values: Dict[str, Any]) -> "StepRecord":
        return cls(
            k=int(values["k"]),
            kappa=int(values["kappa"]),
            rank_prev=int(values["rank_prev"]),
            s_cvx=decimal_to_float(values["s_cvx"]),
            fidelity=decimal_to_float(values.get("fidelity")),
            entropy=decimal_to_float(values.get("entropy")),
            a=strings_to_complex_vector(values["a"]),
            b=strings_to_complex_vector(values["b"]),
            solver_status=values["solver_status"],
        )


@dataclass
class RunTrace:
    config: RunConfig
    z_matrix: np.ndarray
    steps: List[StepRecord] = field(default_factory=list)
    status: str = RunStatus.RUNNING
    k_ic: Optional[int] = None
    chi_final: Optional[ProcessMatrix] = None
    final_fidelity: Optional[float] = None
    dataset: Optional[Dataset] = None
    # Standard-QPT reconstruction against the truth and against chi_final
    reference_fidelity: Optional[float] = None
    reference_agreement: Optional[float] = None

    def add_step(self, step: StepRecord) -> None:
        if self.steps and step.k <= self.steps[-1].k:
            raise ValueError(f"Step {step.k} does not follow step {self.steps[-1].k}")
        self.steps.append(step)

    def finish(
        self,
        status: str,
        chi_final: Optional[ProcessMatrix],
        final_fidelity: Optional[float],
    ) -> None:
        self.status = status
        self.chi_final = chi_final
        self.final_fidelity = final_fidelity
        self.k_ic = self.steps[-1].k if status == RunStatus.CONVERGED and self.steps else None

    @property
    def converged(self) -> bool:
        return self.status == RunStatus.CONVERGED

    @property
    def final_k(self) -> int:
        return self.steps[-1].k if self.steps else 0

    @property
    def wall_time(self) -> float:
        return float(sum(step.wall_time for step in self.steps))

    def s_cvx_sequence(self) -> np.ndarray:
        return np.array([step.s_cvx for step in self.steps], dtype=float)

    def to_dict(self) -> Dict[str, Any]:
        """Deterministic serialization; wall times are left out."""
        return {
            "schema": TRACE_SCHEMA,
            "version": CURRENT_VERSION,
            "config": self.config.to_dict(),
            "status": self.status,
            "k_ic": self.k_ic,
            "final_k": self.final_k,
            "final_fidelity": float_to_decimal(self.final_fidelity),
            "z_matrix": matrix_to_strings(self.z_matrix),
            "chi_final": matrix_to_strings(self.chi_final.chi) if self.chi_final else None,
            "reference_fidelity": float_to_decimal(self.reference_fidelity),
            "reference_agreement": float_to_decimal(self.reference_agreement),
            "steps": [step.to_dict() for step in self.steps],
        }

    @classmethod
    def from_dict(cls, values: Dict[str, Any]) -> "RunTrace":
        if values.get("schema") != TRACE_SCHEMA:
            raise ValueError(f"Unsupported trace schema '{values.get('schema')}'")

        config = RunConfig.from_dict(values["config"])
        chi_final = values.get("chi_final")
        return cls(
            config=config,
            z_matrix=strings_to_matrix(values["z_matrix"]),
            steps=[StepRecord.from_dict(step) for step in values["steps"]],
            status=values["status"],
            k_ic=values.get("k_ic"),
            chi_final=ProcessMatrix(dim=config.dim, chi=strings_to_matrix(chi_final))
            if chi_final
            else None,
            final_fidelity=decimal_to_float(values.get("final_fidelity")),
            reference_fidelity=decimal_to_float(values.get("reference_fidelity")),
            reference_agreement=decimal_to_float(values.get("reference_agreement")),
        )

    def step_rows(self, template: str, trial: int) -> List[List[Any]]:
        """CSV rows: template, trial, k, kappa, s_cvx, fidelity, entropy."""
        return [
            [
                template,
                trial,
                step.k,
                step.kappa,
                float_to_decimal(step.s_cvx),
                float_to_decimal(step.fidelity) or "",
                float_to_decimal(step.entropy) or "",
            ]
            for step in self.steps
        ]
