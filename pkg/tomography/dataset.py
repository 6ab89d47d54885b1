"""
Accumulated measurement data: one record per setting with its data row,
true probability and sampled counts.
"""

import numpy as np
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional

from data import float_to_decimal, complex_vector_to_strings
from .settings import MeasurementSetting, PhiRow, phi_row


@dataclass(frozen=True)
class DatasetRecord:
    setting: MeasurementSetting
    row: PhiRow
    p_true: Optional[float] = None
    count: Optional[int] = None
    copies: Optional[int] = None
    nu: Optional[float] = None

    def validate(self, raise_on_errors: bool = True) -> List[str]:
        errors = []

        if self.p_true is not None and not 0.0 <= self.p_true <= 1.0:
            errors.append(f"p_true {self.p_true} outside [0, 1]")

        if self.count is not None and self.count < 0:
            errors.append(f"Negative count {self.count}")

        if self.copies is not None and self.copies < 1:
            errors.append(f"Copies {self.copies} below 1")

        # Noiseless records round p N, so allow half a count of slack
        if None not in (self.count, self.copies, self.nu):
            slack = 0.5 / self.copies + 1e-12
            if abs(self.nu - self.count / self.copies) > slack:
                errors.append(
                    f"nu {self.nu} does not match count/N = {self.count}/{self.copies}"
                )

        if errors:
            if raise_on_errors:
                raise ValueError("Invalid dataset record:\n  " + "\n  ".join(errors))
            for error in errors:
                print(f"[ERROR] {error}")

        return errors

    def to_record(self) -> Dict[str, Any]:
        return {
            "k": self.setting.k_index,
            "kappa": self.setting.kappa,
            "a": complex_vector_to_strings(self.setting.a),
            "b": complex_vector_to_strings(self.setting.b),
            "p_true": float_to_decimal(self.p_true),
            "count": self.count,
            "N": self.copies,
            "nu": float_to_decimal(self.nu),
        }


@dataclass
class Dataset:
    dim: int
    records: List[DatasetRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[DatasetRecord]:
        return iter(self.records)

    def append(
        self,
        setting: MeasurementSetting,
        p_true: Optional[float] = None,
        count: Optional[int] = None,
        copies: Optional[int] = None,
        nu: Optional[float] = None,
    ) -> DatasetRecord:
        if setting.dim != self.dim:
            raise ValueError(
                f"Setting dimension {setting.dim} does not match dataset dimension {self.dim}"
            )

        record = DatasetRecord(
            setting=setting,
            row=phi_row(setting),
            p_true=p_true,
            count=count,
            copies=copies,
            nu=nu,
        )
        record.validate()
        self.records.append(record)
        return record

    def rows(self) -> List[PhiRow]:
        return [record.row for record in self.records]

    def true_probabilities(self) -> np.ndarray:
        if any(record.p_true is None for record in self.records):
            raise ValueError("Dataset has records without a true probability")
        return np.array([record.p_true for record in self.records], dtype=float)

    def frequencies(self) -> np.ndarray:
        if any(record.nu is None for record in self.records):
            raise ValueError("Dataset has records without a normalized count")
        return np.array([record.nu for record in self.records], dtype=float)

    def copies(self) -> np.ndarray:
        return np.array(
            [record.copies if record.copies else 0 for record in self.records], dtype=float
        )

    def to_records(self) -> List[Dict[str, Any]]:
        return [record.to_record() for record in self.records]
