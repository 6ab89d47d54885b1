#!/usr/bin/env python3
"""
Tests for measurement settings, the data map, datasets and shot noise.

Usage:
    python tests/test_tomography.py

Exit Codes:
    0 - All tests passed
    1 - One or more tests failed
"""

import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent))

from operators import (
    OperatorBasis,
    PAULI_X,
    complex_gaussian,
    haar_unitary,
    kraus_to_chi,
    make_rng,
    random_kraus_set,
    rotation_superoperator,
    unitary_chi,
    apply_channel,
)
from tomography import (
    SettingOrigin,
    MeasurementSetting,
    phi_row,
    setting_from_rotation,
    probability,
    product_setting,
    informationally_complete_settings,
    Dataset,
    NoiseKind,
    NoiseModel,
    sample,
)
from tests.utils import run_test_functions

def random_ket(dim, rng):
    ket = complex_gaussian(rng, dim, 1).ravel()
    return ket / np.linalg.norm(ket)

def random_setting(dim, rng):
    return MeasurementSetting(a=random_ket(dim, rng), b=random_ket(dim, rng))

def test_setting_rejects_non_unit_kets():
    try:
        MeasurementSetting(a=np.array([1.0, 1.0]), b=np.array([1.0, 0.0]))
    except ValueError:
        return
    raise AssertionError("non-unit ket was accepted")

def test_setting_from_identity_rotation():
    dim = 3
    identity = np.eye(dim * dim)
    for i in range(dim):
        for j in range(dim):
            setting = setting_from_rotation(identity, dim * i + j + 1, OperatorBasis(dim))
            assert np.allclose(setting.b, np.eye(dim)[i])
            assert np.allclose(setting.a, np.eye(dim)[j])
            assert setting.kappa == dim * i + j + 1

    setting = setting_from_rotation(np.eye(4), 1)
    row = phi_row(setting)
    expected = np.zeros((4, 4))
    expected[0, 0] = 1.0
    assert np.allclose(row.matrix, expected)

def test_setting_from_rotation_rejects_bad_kappa():
    for kappa in (0, 5):
        try:
            setting_from_rotation(np.eye(4), kappa)
        except ValueError:
            continue
        raise AssertionError(f"kappa {kappa} was accepted")

def test_setting_probability_is_first_rotated_diagonal():
    rng = make_rng(31)
    dim = 4
    chi = kraus_to_chi(random_kraus_set(dim, 3, rng))
    setting = setting_from_rotation(haar_unitary(dim * dim, rng), 1, k_index=1)
    rotation = rotation_superoperator(setting.a, setting.b)
    rotated = rotation.conj().T @ chi.chi @ rotation
    assert abs(probability(chi, setting) - np.real(rotated[0, 0])) < 1e-10

def test_setting_measures_leading_component_of_rotated_element():
    rng = make_rng(32)
    unitary = haar_unitary(4, rng)
    setting = setting_from_rotation(unitary, 2)
    rotated_element = unitary[:, 1].reshape(2, 2)
    singular_values = np.linalg.svd(rotated_element, compute_uv=False)
    overlap = abs(np.vdot(setting.measurement_vector(), unitary[:, 1]))
    assert abs(overlap - singular_values[0]) < 1e-10

def test_phi_row_matches_trace_formula():
    rng = make_rng(33)
    dim = 2
    basis = OperatorBasis(dim)
    setting = random_setting(dim, rng)
    rho = np.outer(setting.a, setting.a.conj())
    projector = np.outer(setting.b, setting.b.conj())

    expected = np.array(
        [
            [np.trace(projector @ bm @ rho @ bn.conj().T) for bn in basis]
            for bm in basis
        ]
    )
    assert np.allclose(phi_row(setting, basis).matrix, expected)

def test_phi_row_matches_channel_evolution():
    rng = make_rng(34)
    for dim in (2, 3):
        chi = kraus_to_chi(random_kraus_set(dim, 2, rng))
        for _ in range(10):
            setting = random_setting(dim, rng)
            value = phi_row(setting).dot(chi.chi)
            rho = np.outer(setting.a, setting.a.conj())
            projector = np.outer(setting.b, setting.b.conj())
            direct = np.real(np.trace(projector @ apply_channel(chi, rho)))
            assert abs(value - direct) < 1e-10
            assert -1e-9 <= value <= 1 + 1e-9

def test_probability_examples():
    zero = np.array([1.0, 0.0])
    one = np.array([0.0, 1.0])
    identity = unitary_chi(np.eye(2))
    flip = unitary_chi(PAULI_X)

    assert abs(probability(identity, MeasurementSetting(a=zero, b=zero)) - 1.0) < 1e-12
    assert probability(identity, MeasurementSetting(a=zero, b=one)) == 0.0
    assert abs(probability(flip, MeasurementSetting(a=zero, b=one)) - 1.0) < 1e-12

def test_settings_are_reproducible():
    first = setting_from_rotation(haar_unitary(9, make_rng(35)), 4)
    second = setting_from_rotation(haar_unitary(9, make_rng(35)), 4)
    assert np.array_equal(first.a, second.a)
    assert np.array_equal(first.b, second.b)

def test_product_setting_is_separable():
    rng = make_rng(36)
    setting = setting_from_rotation(haar_unitary(16, rng), 1, origin=SettingOrigin.ADAPTIVE)
    product = product_setting(setting, [2, 2])

    for ket in (product.a, product.b):
        assert abs(np.linalg.norm(ket) - 1.0) < 1e-12
        singular_values = np.linalg.svd(ket.reshape(2, 2), compute_uv=False)
        assert singular_values[1] < 1e-8

    assert product.kappa == setting.kappa
    assert product.origin == SettingOrigin.ADAPTIVE

def test_informationally_complete_settings_span():
    for dim in (2, 3):
        settings = informationally_complete_settings(dim)
        assert len(settings) == dim**4
        rows = np.stack([phi_row(setting).coefficients for setting in settings])
        assert np.linalg.matrix_rank(rows, tol=1e-9) == dim**4

def test_product_informationally_complete_settings():
    settings = informationally_complete_settings(4, [2, 2])
    assert len(settings) == 256
    for setting in settings[::17]:
        for ket in (setting.a, setting.b):
            singular_values = np.linalg.svd(ket.reshape(2, 2), compute_uv=False)
            assert singular_values[1] < 1e-12
    rows = np.stack([phi_row(setting).coefficients for setting in settings])
    assert np.linalg.matrix_rank(rows, tol=1e-9) == 256

    try:
        informationally_complete_settings(4, [2, 3])
    except ValueError:
        pass
    else:
        raise AssertionError("subsystems that do not factor d were accepted")

def test_dataset_records():
    dataset = Dataset(dim=2)
    setting = setting_from_rotation(np.eye(4), 1, k_index=1)
    record = dataset.append(setting, p_true=0.25, count=2500, copies=10_000, nu=0.25)
    assert len(dataset) == 1
    assert record.row.dim == 2
    assert np.allclose(dataset.true_probabilities(), [0.25])

    values = dataset.to_records()[0]
    assert set(values) == {"k", "kappa", "a", "b", "p_true", "count", "N", "nu"}
    assert values["p_true"] == format(0.25, ".17e")
    assert values["kappa"] == 1
    assert float(values["a"][0][0]) == 1.0

def test_dataset_rejects_inconsistent_counts():
    dataset = Dataset(dim=2)
    setting = setting_from_rotation(np.eye(4), 1)
    try:
        dataset.append(setting, p_true=0.5, count=10, copies=100, nu=0.5)
    except ValueError:
        return
    raise AssertionError("count/N mismatch was accepted")

def test_noise_model_parse():
    assert NoiseModel.parse("none").kind == NoiseKind.NONE
    model = NoiseModel.parse("Poisson:500")
    assert model.kind == NoiseKind.POISSON and model.copies == 500
    assert model.label == "poisson:500"

    for text in ("gaussian", "poisson:zero"):
        try:
            NoiseModel.parse(text)
        except ValueError:
            continue
        raise AssertionError(f"noise '{text}' was accepted")

def test_sample_examples():
    rng = make_rng(37)
    poisson = NoiseModel(kind=NoiseKind.POISSON, copies=10_000)
    assert sample(0.0, poisson, rng) == (0, 0.0)
    assert sample(1.0, NoiseModel(), rng) == (10_000, 1.0)

def test_sample_poisson_moments():
    rng = make_rng(38)
    model = NoiseModel(kind=NoiseKind.POISSON, copies=10_000)
    values = np.array([sample(0.3, model, rng)[1] for _ in range(1000)])
    assert abs(values.mean() - 0.3) < 0.002
    assert abs(values.var() - 0.3 / 10_000) < 0.3e-4 * 0.25

def test_sample_is_seeded():
    model = NoiseModel(kind=NoiseKind.POISSON, copies=100)
    first = [sample(0.4, model, make_rng(39)) for _ in range(3)]
    second = [sample(0.4, model, make_rng(39)) for _ in range(3)]
    assert first == second

if __name__ == "__main__":
    run_test_functions(globals(), "Tomography")
