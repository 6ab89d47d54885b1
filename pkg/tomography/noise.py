"""
Shot-noise model turning true probabilities into normalized counts.
"""

import numpy as np
from dataclasses import dataclass
from typing import Tuple

from data import DEFAULT_COPIES, normalize_string


class NoiseKind:
    NONE = "none"
    POISSON = "poisson"

    ALL = (NONE, POISSON)


@dataclass(frozen=True)
class NoiseModel:
    kind: str = NoiseKind.NONE
    copies: int = DEFAULT_COPIES

    def __post_init__(self):
        if self.kind not in NoiseKind.ALL:
            raise ValueError(
                f"Unknown noise kind '{self.kind}'. Expected one of {', '.join(NoiseKind.ALL)}"
            )
        if int(self.copies) < 1:
            raise ValueError(f"Copies per setting must be at least 1, got {self.copies}")

    @property
    def is_noisy(self) -> bool:
        return self.kind != NoiseKind.NONE

    @property
    def label(self) -> str:
        if self.is_noisy:
            return f"{self.kind}:{self.copies}"
        return self.kind

    @classmethod
    def parse(cls, text: str, copies: int = DEFAULT_COPIES) -> "NoiseModel":
        """Accepts 'none', 'poisson' or 'poisson:N'."""
        kind, _, count = normalize_string(text.strip()).partition(":")
        if count:
            try:
                copies = int(count)
            except ValueError:
                raise ValueError(f"Invalid copy count '{count}' in noise '{text}'")
        return cls(kind=kind, copies=copies)


def sample(
    p: float, model: NoiseModel, rng: np.random.Generator
) -> Tuple[int, float]:
    """(count, nu) for one setting.

    Noiseless returns (round(p N), p). Poisson draws count ~ Poisson(p N)
    and nu = count / N, which may exceed 1.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Probability must lie in [0, 1], got {p}")

    if model.kind == NoiseKind.NONE:
        return int(round(p * model.copies)), float(p)

    count = int(rng.poisson(p * model.copies))
    return count, count / model.copies
