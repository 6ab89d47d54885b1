"""
Statistics over run traces: k_IC per template, per-step curves and the
scaling of k_IC with d^2.
"""

import numpy as np
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from data import SUMMARY_SCHEMA, CURRENT_VERSION, float_to_decimal
from engine import RunTrace, Strategy, bkd_count


@dataclass(frozen=True)
class CurvePoint:
    k: int
    count: int
    s_cvx_mean: float
    s_cvx_std: float
    fidelity_mean: Optional[float]
    fidelity_std: Optional[float]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "count": self.count,
            "s_cvx_mean": float_to_decimal(self.s_cvx_mean),
            "s_cvx_std": float_to_decimal(self.s_cvx_std),
            "fidelity_mean": float_to_decimal(self.fidelity_mean),
            "fidelity_std": float_to_decimal(self.fidelity_std),
        }


@dataclass(frozen=True)
class TemplateSummary:
    name: str
    dim: int
    strategy: str
    truth_rank: int
    gate: Optional[str]
    noise: str
    trials: int
    converged: int
    not_converged: int
    k_ic_values: Tuple[int, ...]
    k_ic_mean: Optional[float]
    k_ic_std: Optional[float]
    std_defined: bool
    fidelity_mean: Optional[float]
    wall_time_mean: float
    curve: Tuple[CurvePoint, ...] = field(default_factory=tuple)
    reference_fidelity_mean: Optional[float] = None

    @property
    def convergence_rate(self) -> float:
        return self.converged / self.trials if self.trials else 0.0

    def to_dict(self) -> Dict[str, Any]:
        """Deterministic fields only; wall times go to the metadata file."""
        return {
            "name": self.name,
            "dim": self.dim,
            "strategy": self.strategy,
            "truth_rank": self.truth_rank,
            "gate": self.gate,
            "noise": self.noise,
            "trials": self.trials,
            "converged": self.converged,
            "not_converged": self.not_converged,
            "convergence_rate": float_to_decimal(self.convergence_rate),
            "k_ic_values": list(self.k_ic_values),
            "k_ic_mean": float_to_decimal(self.k_ic_mean),
            "k_ic_std": float_to_decimal(self.k_ic_std),
            "std_defined": self.std_defined,
            "fidelity_mean": float_to_decimal(self.fidelity_mean),
            "reference_fidelity_mean": float_to_decimal(self.reference_fidelity_mean),
            "curve": [point.to_dict() for point in self.curve],
        }


@dataclass(frozen=True)
class Summary:
    name: str
    templates: Tuple[TemplateSummary, ...]

    def template(self, name: str) -> TemplateSummary:
        for template in self.templates:
            if template.name == name:
                return template
        raise KeyError(f"No template named '{name}'")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": SUMMARY_SCHEMA,
            "version": CURRENT_VERSION,
            "name": self.name,
            "templates": [template.to_dict() for template in self.templates],
            "scaling": scaling_slopes(self),
        }


def _mean_std(values: Sequence[float]) -> Tuple[Optional[float], Optional[float]]:
    """Mean and unbiased standard deviation; a single value has std 0."""
    if not values:
        return None, None
    array = np.asarray(values, dtype=float)
    std = float(np.std(array, ddof=1)) if array.size > 1 else 0.0
    return float(np.mean(array)), std


def aggregate_curve(traces: Sequence[RunTrace]) -> Tuple[CurvePoint, ...]:
    """Mean and std of s_cvx and fidelity at every k.

    Converged traces carry their final values forward past k_IC; traces
    stopped by max_steps or an abort stop contributing after their last step.
    """
    last_k = max((trace.final_k for trace in traces), default=0)
    points = []
    for k in range(1, last_k + 1):
        s_values = []
        fidelity_values = []
        for trace in traces:
            if not trace.steps:
                continue
            if k <= trace.final_k:
                step = trace.steps[k - 1]
            elif trace.converged:
                step = trace.steps[-1]
            else:
                continue
            s_values.append(step.s_cvx)
            if step.fidelity is not None:
                fidelity_values.append(step.fidelity)

        if not s_values:
            continue
        s_mean, s_std = _mean_std(s_values)
        f_mean, f_std = _mean_std(fidelity_values)
        points.append(
            CurvePoint(
                k=k,
                count=len(s_values),
                s_cvx_mean=s_mean,
                s_cvx_std=s_std,
                fidelity_mean=f_mean,
                fidelity_std=f_std,
            )
        )
    return tuple(points)


def summarize_template(name: str, traces: Sequence[RunTrace]) -> TemplateSummary:
    if not traces:
        raise ValueError(f"Template '{name}' has no traces to summarize")

    converged = [trace for trace in traces if trace.converged]
    k_values = tuple(int(trace.k_ic) for trace in converged)
    k_mean, k_std = _mean_std(k_values)
    fidelity_mean, _ = _mean_std(
        [trace.final_fidelity for trace in converged if trace.final_fidelity is not None]
    )
    reference_mean, _ = _mean_std(
        [trace.reference_fidelity for trace in traces if trace.reference_fidelity is not None]
    )
    config = traces[0].config

    return TemplateSummary(
        name=name,
        dim=config.dim,
        strategy=config.strategy,
        truth_rank=config.truth_rank,
        gate=config.gate,
        noise=config.noise.label,
        trials=len(traces),
        converged=len(converged),
        not_converged=len(traces) - len(converged),
        k_ic_values=k_values,
        k_ic_mean=k_mean,
        k_ic_std=k_std,
        std_defined=len(k_values) > 1,
        fidelity_mean=fidelity_mean,
        wall_time_mean=float(np.mean([trace.wall_time for trace in traces])),
        curve=aggregate_curve(traces),
        reference_fidelity_mean=reference_mean,
    )


def default_template_name(trace: RunTrace) -> str:
    config = trace.config
    truth = config.gate if config.gate else f"r{config.truth_rank}"
    return f"d{config.dim}-{truth}-{config.strategy}"


def summarize(
    traces: Sequence[RunTrace],
    template_names: Optional[Sequence[str]] = None,
    name: str = "summary",
) -> Summary:
    """Group traces by template (first-seen order) and summarize each group."""
    if not traces:
        raise ValueError("Cannot summarize an empty list of traces")
    if template_names is not None and len(template_names) != len(traces):
        raise ValueError(f"{len(template_names)} template names for {len(traces)} traces")

    groups: Dict[str, List[RunTrace]] = {}
    for index, trace in enumerate(traces):
        key = template_names[index] if template_names is not None else default_template_name(trace)
        groups.setdefault(key, []).append(trace)

    return Summary(
        name=name,
        templates=tuple(summarize_template(key, group) for key, group in groups.items()),
    )


def scaling_slopes(summary: Summary) -> Dict[str, Any]:
    """Least-squares fit of mean k_IC against d^2 per strategy.

    Only unitary-truth templates without named gates enter the fit; the
    projective BKD count is listed for every dimension involved.
    """
    points: Dict[str, Dict[int, List[float]]] = {}
    for template in summary.templates:
        if template.gate is not None or template.truth_rank != 1 or template.k_ic_mean is None:
            continue
        points.setdefault(template.strategy, {}).setdefault(template.dim, []).append(template.k_ic_mean)

    slopes = {}
    dims = set()
    for strategy in Strategy.ALL:
        if strategy not in points:
            continue
        by_dim = points[strategy]
        dims.update(by_dim)
        x = np.array([dim * dim for dim in sorted(by_dim)], dtype=float)
        y = np.array([np.mean(by_dim[dim]) for dim in sorted(by_dim)], dtype=float)

        slope = intercept = None
        if x.size >= 2:
            slope, intercept = (float(value) for value in np.polyfit(x, y, 1))

        slopes[strategy] = {
            "dims": sorted(by_dim),
            "k_ic_means": [float_to_decimal(value) for value in y],
            "slope": float_to_decimal(slope),
            "intercept": float_to_decimal(intercept),
        }

    return {
        "strategies": slopes,
        "bkd_projective": {str(dim): bkd_count(dim, True) for dim in sorted(dims) if dim >= 2},
    }
