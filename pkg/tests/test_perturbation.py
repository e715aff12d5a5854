import math
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from nrvolkov.errors import ResonanceError
from nrvolkov.model import DimensionlessParams, SpacetimePoint
from nrvolkov.perturbation import (
    driven_coefficients_oracle,
    expansion_coefficients,
    psi_perturbative,
)
from nrvolkov.solution import psi_free
from nrvolkov.verify import compare_report

from conftest import rel_err

# tools/oracle.py, exact phase arithmetic at 60 digits
PSI_PERT_REF = complex(0.9809383593404224939379176, -0.2006101252930272413561104)


def test_c1_vanishes_without_transverse_momentum():
    assert expansion_coefficients(DimensionlessParams(0.1, 3.0, (0.0, 0.4, 0.2))).c1_hat == 0.0
    assert driven_coefficients_oracle(DimensionlessParams(0.1, 3.0, (0.0, 0.4, 0.2))).c1_hat == 0.0


def test_coefficients_at_rest():
    c = expansion_coefficients(DimensionlessParams(0.1, 5.0, (0, 0, 0)))
    assert c.c1_hat == 0.0
    assert c.c2_hat == pytest.approx(0.0625, rel=1e-15)


def test_coefficients_transverse_unit_momentum():
    params = DimensionlessParams(0.1, 5.0, (1, 0, 0))
    c = expansion_coefficients(params)
    assert c.c1_hat == pytest.approx(2 / 9, rel=1e-15)
    assert c.c2_hat == pytest.approx(13 / 144, rel=1e-15)
    b = driven_coefficients_oracle(params)
    assert b.c1_hat == pytest.approx(2 / 9, rel=1e-15)
    assert b.c2_hat == pytest.approx(13 / 144, rel=1e-15)


@pytest.mark.parametrize("sigma", [0.6, 1.7, 5.0])
def test_first_order_resonance(sigma):
    params = DimensionlessParams(0.1, sigma, (0.2, 0.1, (1 - 2 * sigma) / 2))
    with pytest.raises(ResonanceError):
        expansion_coefficients(params)
    with pytest.raises(ResonanceError):
        driven_coefficients_oracle(params)


@pytest.mark.parametrize("sigma", [0.6, 1.7, 5.0])
def test_second_order_resonance(sigma):
    params = DimensionlessParams(0.1, sigma, (0.2, 0.1, 1 - sigma))
    with pytest.raises(ResonanceError):
        expansion_coefficients(params)
    with pytest.raises(ResonanceError):
        driven_coefficients_oracle(params)


def test_near_resonance_is_not_an_error():
    params = DimensionlessParams(0.1, 5.0, (0.2, 0.1, -4.5 + 1e-6))
    assert math.isfinite(expansion_coefficients(params).c1_hat)


@settings(max_examples=300, deadline=None)
@given(st.floats(0.05, 200), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_oracle_equals_expansion(sigma, kx, ky, kz):
    assume(abs(2 * kz + 2 * sigma - 1) > 1e-3 and abs(sigma - 1 + kz) > 1e-3)
    params = DimensionlessParams(0.1, sigma, (kx, ky, kz))
    c = expansion_coefficients(params)
    b = driven_coefficients_oracle(params)
    assert abs(b.c1_hat - c.c1_hat) <= 1e-12 * max(abs(c.c1_hat), 1e-300)
    numerator_scale = abs(2 * kz) + 4 * kx * kx + abs(2 * sigma - 1)
    scale = numerator_scale / abs(4 * (sigma - 1 + kz) * (2 * kz + 2 * sigma - 1))
    assert abs(b.c2_hat - c.c2_hat) <= 1e-12 * scale


def test_order_zero_is_free(reference_params, reference_point):
    assert psi_perturbative(reference_point, reference_params, 0) == psi_free(
        reference_point, reference_params)


@pytest.mark.parametrize("order", [0, 1, 2])
def test_zero_field_is_free(order, reference_point):
    params = DimensionlessParams(0.0, 5.0, (0.3, 0.2, 0.4))
    assert psi_perturbative(reference_point, params, order) == psi_free(reference_point, params)


def test_second_order_reference(reference_point):
    params = DimensionlessParams(0.02, 5.0, (0.3, 0.2, 0.4))
    assert rel_err(psi_perturbative(reference_point, params, 2), PSI_PERT_REF) < 1e-15


def test_bad_order(reference_params, reference_point):
    with pytest.raises(ValueError):
        psi_perturbative(reference_point, reference_params, 3)


def test_perturbative_resonance_surfaces(reference_point):
    params = DimensionlessParams(0.01, 5.0, (0.3, 0.2, -4.5))
    with pytest.raises(ResonanceError):
        psi_perturbative(reference_point, params, 1)
    # order 0 needs no coefficients
    psi_perturbative(reference_point, params, 0)


@pytest.mark.parametrize("sigma, kappa", [
    (5.0, (0.3, 0.2, 0.4)),
    (1.7, (0.5, -0.3, 0.2)),
    (20.0, (-0.8, 0.4, -0.6)),
])
def test_remainder_scaling(sigma, kappa):
    params = DimensionlessParams(0.0, sigma, kappa)
    cubic = compare_report(params, (0.04, 0.02, 0.01), grid_seed=1, grid_size=50, order=2)
    for row in cubic[1:]:
        assert 6.8 <= row.ratio <= 9.2
    quadratic = compare_report(params, (0.04, 0.02, 0.01), grid_seed=1, grid_size=50, order=1)
    for row in quadratic[1:]:
        assert 3.4 <= row.ratio <= 4.6


def test_exact_first_order_coefficient_by_extrapolation():
    # (psi_exact - psi_0) / (a psi_1) -> c1 as a -> 0; Richardson removes the O(a) term
    from nrvolkov.solution import psi_hat_exact
    params = DimensionlessParams(0.0, 5.0, (0.3, 0.2, 0.4))
    p = SpacetimePoint(0.3, -0.7, 1.1, 0.2)
    kx, ky, kz = params.kappa
    energy = (kx * kx + ky * ky + kz * kz) / 10.0
    import cmath
    mode1 = cmath.exp(-1j * (kx * p.xi + ky * p.upsilon + (kz - 1) * p.zeta + (energy + 1) * p.tau))

    def estimate(a):
        pa = params.with_a(a)
        return (psi_hat_exact(p, pa) - psi_free(p, pa)) / (a * mode1)

    h = 1e-3
    extrapolated = 2 * estimate(h / 2) - estimate(h)
    assert abs(extrapolated - expansion_coefficients(params).c1_hat) < 1e-6
