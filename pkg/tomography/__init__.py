"""
ACQPT Tomography Module

Measurement settings, the linear data map, datasets and shot noise
"""

from .settings import (
    SettingOrigin,
    MeasurementSetting,
    PhiRow,
    phi_row,
    setting_from_rotation,
    probability,
    product_setting,
    informationally_complete_settings,
)

from .dataset import DatasetRecord, Dataset

from .noise import NoiseKind, NoiseModel, sample

__all__ = [
    # Settings
    "SettingOrigin",
    "MeasurementSetting",
    "PhiRow",
    "phi_row",
    "setting_from_rotation",
    "probability",
    "product_setting",
    "informationally_complete_settings",
    # Dataset
    "DatasetRecord",
    "Dataset",
    # Noise
    "NoiseKind",
    "NoiseModel",
    "sample",
]
