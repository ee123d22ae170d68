import math

import numpy as np
import pytest

import flatproj as fp


def test_projector_point_values():
    p = fp.FlatteningParams.symmetric(0.1)
    assert fp.theta_flat(0.0, p) == pytest.approx(0.25, abs=1e-15)
    assert fp.zeta_flat(0.0, p) == pytest.approx(0.5, abs=1e-15)


def test_partition_of_unity_vectorized():
    p = fp.FlatteningParams(0.3, 2.0, fp.DeltaFamily.GAUSS)
    lower = fp.FlatteningParams(2.0, 2.0, fp.DeltaFamily.GAUSS)
    x = np.linspace(-20.0, 20.0, 2001)
    total = fp.theta_flat(x, p) + fp.theta_flat(-x, lower) + fp.zeta_flat(x, p)
    assert total.shape == x.shape
    assert np.max(np.abs(total - 1.0)) < 1e-13


def test_fourier_modulation():
    assert fp.fourier_modulation(2.0, fp.FlatteningParams.symmetric(0.5)) == pytest.approx(complex(math.exp(-1) * math.cos(1), math.exp(-1) * math.sin(1)))


def test_kk_reconstruction():
    model = fp.SusceptibilityModel(1.0, 2.0, 0.3)
    h = 0.01
    grid = np.arange(0, 8001) * h
    eps2 = [model(w).imag for w in grid]
    assert fp.kk_real_from_imag(eps2, 0.0, h, 0.0, 1.5) == pytest.approx(model(1.5).real, rel=1e-2)


def test_fresnel_and_graded_boundary():
    s = fp.InterfaceScenario(eps1=1.0, eps2=4.0)
    r, t = fp.fresnel_coefficients(s)
    assert r == pytest.approx(-1.0 / 3.0)
    assert t == pytest.approx(2.0 / 3.0)
    g = fp.graded_interface_reflection(s, fp.FlatteningParams.symmetric(1e-4 * s.wavelength))
    assert abs(g["r"] - r) < 1e-3
    assert abs(g["energy_residual"]) < 1e-10


def test_compute_matches_cli_tables():
    table = fp.compute("evolve", {"kind": "series"})
    assert table["columns"] == ["tau", "err_order1", "err_order2"]
    assert abs(table["summary"]["slope_order1"] - 2.0) < 0.2


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        fp.theta_flat(0.0, fp.FlatteningParams(-1.0, 1.0))
    with pytest.raises(ValueError):
        fp.compute("projector", {"a": "-1"})
    with pytest.raises(fp.ConvergenceError):
        s = fp.InterfaceScenario()
        fp.graded_interface_reflection(s, fp.FlatteningParams.symmetric(s.wavelength), 16, 1e-15)
