import math

import numpy as np
import pytest

from exho.errors import BadIndex
from exho.specfun import integrate
from exho.spectrum import (MINUS_OFFSET, SpatialGrid, SystemTag, eigenfunction_minus, eigenfunction_plus,
                           energy, eop_polynomial, minus_basis, plus_basis, potential_minus)
from exho.verify import minus_gram_error


def test_potential_examples():
    assert potential_minus(0.0) == -10.0
    assert potential_minus(10.0) == pytest.approx(98.03940496522364, rel=1e-14)
    x = np.linspace(0.1, 9, 50)
    np.testing.assert_array_equal(potential_minus(x), potential_minus(-x))


def test_potential_approaches_oscillator():
    x = np.linspace(1, 10, 91)
    assert np.all(np.abs(potential_minus(x) - (x * x - 2)) <= 4 / x ** 2)


@pytest.mark.parametrize("system, nu, e", [
    (SystemTag.MINUS, -3, 0.0), (SystemTag.PLUS, 0, 6.0), (SystemTag.ZERO, 4, 9.0), (SystemTag.MINUS, 5, 16.0),
])
def test_energy_examples(system, nu, e):
    assert energy(system, nu) == e


@pytest.mark.parametrize("system, nu", [(SystemTag.MINUS, -1), (SystemTag.MINUS, -2),
                                        (SystemTag.PLUS, -3), (SystemTag.ZERO, -1)])
def test_energy_bad_index(system, nu):
    with pytest.raises(BadIndex):
        energy(system, nu)


def test_eop_examples():
    assert eop_polynomial(0, 2.2) == 1.0
    x = np.linspace(-2, 2, 9)
    np.testing.assert_allclose(eop_polynomial(3, x), -8 * x ** 3 - 12 * x, atol=1e-12)
    assert eop_polynomial(3, 1.0) == -20.0
    for k in (1, 2):
        with pytest.raises(BadIndex):
            eop_polynomial(k, 0.0)


def test_eigenfunction_minus_examples():
    assert eigenfunction_minus(-3, 0.0) == pytest.approx(1.0622519320271968, rel=1e-14)
    assert eigenfunction_minus(0, 0.0) == 0.0
    for nu in (-2, -1):
        with pytest.raises(BadIndex):
            eigenfunction_minus(nu, 0.0)


def test_eigenfunction_plus_examples():
    assert eigenfunction_plus(0, 0.0) == pytest.approx(0.7511255444649425, rel=1e-14)
    assert eigenfunction_plus(1, 0.0) == 0.0
    with pytest.raises(BadIndex):
        eigenfunction_plus(-1, 0.0)


@pytest.mark.parametrize("nu", [-3, 0, 1, 2, 7, 15, 30, 31, 45])
def test_minus_normalization(nu):
    assert integrate(lambda x: eigenfunction_minus(nu, x) ** 2, nu_max=max(nu, 0) + 1) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("nu", [0, 3, 20, 40])
def test_plus_normalization(nu):
    assert integrate(lambda x: eigenfunction_plus(nu, x) ** 2, nu_max=nu) == pytest.approx(1.0, abs=1e-10)


def test_minus_gram_matrix():
    assert minus_gram_error([-3] + list(range(31))) <= 1e-8


def test_stable_route_matches_direct_formula():
    x = np.linspace(-7, 7, 57)
    nus = [-3] + list(range(31))
    stable = minus_basis(nus, x)
    for row, nu in zip(stable, nus):
        np.testing.assert_allclose(row, eigenfunction_minus(nu, x), rtol=1e-9, atol=1e-13)
    np.testing.assert_allclose(plus_basis([0, 9, 30], x)[1], eigenfunction_plus(9, x), rtol=1e-10, atol=1e-14)


def test_large_index_against_extended_precision():
    # 40-digit mpmath evaluation of the exceptional eigenfunction at nu = 100, x = 2.5
    assert eigenfunction_minus(100, 2.5) == pytest.approx(0.17082474201882156, rel=1e-9)


@pytest.mark.parametrize("nu", [-3, 0, 1, 2, 5, 10])
def test_schrodinger_residual(nu):
    h = 0.005
    x = np.arange(-9, 9 + h / 2, h)
    psi = minus_basis([nu], x)[0]
    d2 = (-psi[:-4] + 16 * psi[1:-3] - 30 * psi[2:-2] + 16 * psi[3:-1] - psi[4:]) / (12 * h * h)
    inner = slice(2, -2)
    hpsi = -d2 + (potential_minus(x[inner]) + MINUS_OFFSET) * psi[inner]
    target = energy(SystemTag.MINUS, nu) * psi[inner]
    resid = hpsi[3:-3] - target[3:-3]
    scale = np.linalg.norm(target[3:-3]) if nu != -3 else np.linalg.norm(psi[inner][3:-3])
    assert np.linalg.norm(resid) / scale <= 1e-5


@pytest.mark.parametrize("nu", [-3, 0, 1, 2, 3, 8, 17, 40])
def test_parity(nu):
    x = np.linspace(0.05, 8, 60)
    sign = 1 if nu == -3 else (-1) ** (nu + 3)
    np.testing.assert_allclose(minus_basis([nu], -x)[0], sign * minus_basis([nu], x)[0], rtol=1e-12, atol=1e-300)


def test_grid_symmetric_points():
    g = SpatialGrid(-20, 20, 4001)
    x = g.points()
    assert x[2000] == 0.0
    np.testing.assert_array_equal(x, -x[::-1])
    assert g.spacing == pytest.approx(0.01)
    with pytest.raises(ValueError):
        SpatialGrid(1, 1, 10)
    with pytest.raises(ValueError):
        SpatialGrid(0, 1, 1)
