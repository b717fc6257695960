import math

import numpy as np
import pytest

from gensqueeze import (
    ConfigInvalid,
    SpectrumKind,
    SpectrumModel,
    TabulatedOutOfRange,
    k,
    k_values,
    ladder_factor_sqrt,
    rosen_morse_energy,
)

RM11 = SpectrumModel.rosen_morse(1.0, 1.0)
BD_GRID = [(b, d) for b in (0.0, 0.5, 1.0, 3.0) for d in (0.0, 0.5, 1.0, 4.0)]


def test_harmonic_k_is_n():
    assert k(SpectrumModel.harmonic(), 5) == 5


def test_rosen_morse_k1():
    # 1 * 5 * (1 + 1/36)
    assert k(RM11, 1) == pytest.approx(185 / 36, rel=1e-15)


@pytest.mark.parametrize("b,d", BD_GRID)
def test_k0_vanishes(b, d):
    assert k(SpectrumModel.rosen_morse(b, d), 0) == 0
    assert k(SpectrumModel.harmonic(), 0) == 0
    assert k(SpectrumModel.tabulated([1.0, 2.0]), 0) == 0


def test_energy_examples():
    assert rosen_morse_energy(0, 0, 0) == 1
    assert rosen_morse_energy(1, 1, 0) == pytest.approx(3.75)
    gap = rosen_morse_energy(1, 1, 1) - rosen_morse_energy(1, 1, 0)
    assert gap == pytest.approx(185 / 36, rel=1e-14)


def test_energy_rejects_pole():
    with pytest.raises(ValueError):
        rosen_morse_energy(1, -1, 0)


def test_ladder_factor_examples():
    assert ladder_factor_sqrt(SpectrumModel.harmonic(), 4) == 2
    assert ladder_factor_sqrt(SpectrumModel.rosen_morse(0, 0), 1) == pytest.approx(math.sqrt(3))
    assert ladder_factor_sqrt(SpectrumModel.tabulated([2.5]), 1) == pytest.approx(math.sqrt(2.5))
    with pytest.raises(ValueError):
        ladder_factor_sqrt(RM11, 0)


def test_tabulated_out_of_range():
    model = SpectrumModel.tabulated([1.0, 2.0, 3.0])
    assert k(model, 3) == 3.0
    with pytest.raises(TabulatedOutOfRange):
        k(model, 4)
    with pytest.raises(IndexError):
        k_values(model, np.arange(6))


@pytest.mark.parametrize("table", [[], [1.0, 0.0], [1.0, -2.0], [float("nan")]])
def test_tabulated_rejects_bad_tables(table):
    with pytest.raises(ValueError):
        SpectrumModel.tabulated(table)


def test_negative_rosen_morse_parameters_rejected():
    with pytest.raises(ValueError):
        SpectrumModel.rosen_morse(-1.0, 1.0)


@pytest.mark.parametrize("b,d", BD_GRID)
def test_rosen_morse_strictly_increasing(b, d):
    kv = k_values(SpectrumModel.rosen_morse(b, d), np.arange(1, 202))
    assert np.all(np.diff(kv) > 0)
    assert np.all(kv > 0)


@pytest.mark.parametrize("b,d", BD_GRID)
def test_k_matches_energy_shift(b, d):
    n = np.arange(0, 201)
    kv = k_values(SpectrumModel.rosen_morse(b, d), n)
    shift = rosen_morse_energy(b, d, n) - rosen_morse_energy(b, d, 0)
    np.testing.assert_allclose(kv[1:], shift[1:], rtol=1e-12)
    assert kv[0] == 0


@pytest.mark.parametrize("d", [0.0, 0.5, 2.0])
def test_b0_ratio(d):
    n = np.arange(1, 60)
    kv = k_values(SpectrumModel.rosen_morse(0.0, d), n)
    np.testing.assert_allclose(kv / kv[0], n * (n + 2 * d + 2) / (3 + 2 * d), rtol=1e-14)


def test_vectorised_matches_scalar(models):
    for model in models.values():
        n = np.arange(0, 30)
        np.testing.assert_array_equal(k_values(model, n), [k(model, int(j)) for j in n])


def test_from_config_roundtrip():
    for cfg in ({"kind": "ho"}, {"kind": "rosen_morse", "b": 2.0, "d": 0.5}, {"kind": "table", "table": [1, 2.5]}):
        model = SpectrumModel.from_config(cfg)
        assert SpectrumModel.from_config(model.to_config()) == model
    assert SpectrumModel.from_config({"kind": "rosen_morse"}).kind is SpectrumKind.ROSEN_MORSE


@pytest.mark.parametrize(
    "cfg", [{"kind": "morse"}, {"kind": "table"}, {"kind": "rosen_morse", "b": -1}, {"kind": "table", "table": [0]}]
)
def test_from_config_errors(cfg):
    with pytest.raises(ConfigInvalid):
        SpectrumModel.from_config(cfg)


def test_model_is_immutable():
    with pytest.raises(AttributeError):
        RM11.b = 2.0
