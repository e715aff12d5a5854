import cmath
import math
import random

import pytest

from nrvolkov.errors import DegenerateOrderError
from nrvolkov.model import DimensionlessParams, SpacetimePoint
from nrvolkov.solution import derived_quantities, psi_free, psi_hat_exact
from nrvolkov.specfun import kummer_1f1

from conftest import rel_err

# tools/oracle.py: 60-digit series for 1F1 and Stirling log-gamma, exact phases
PSI_REF_NORMALIZED = complex(0.9828065115034225584970872, -0.2012043341827999029506961)
PSI_REF_RAW = complex(-67.95934612307950100250725, -95.70048410270628031869388)


def random_params(rng, a=None):
    while True:
        sigma = math.exp(rng.uniform(math.log(0.6), math.log(100)))
        kappa = tuple(rng.uniform(-1, 1) for _ in range(3))
        b = 1 - 2 * kappa[2] - 2 * sigma
        if abs(b - round(b)) > 0.05 or b > 0.5:
            return DimensionlessParams(rng.uniform(0, 0.3) if a is None else a, sigma, kappa)


def random_point(rng, width=math.pi):
    return SpacetimePoint(*(rng.uniform(-width, width) for _ in range(4)))


def test_derived_zero_momentum():
    dq = derived_quantities(DimensionlessParams(0.1, 5.0, (0, 0, 0)))
    assert dq.gamma == 0 and dq.delta == 0
    assert dq.energy_scaled == 0 and dq.epsilon_scaled == 0
    assert dq.n == 4.5 and dq.m == -10


def test_derived_reference():
    dq = derived_quantities(DimensionlessParams(0.1, 5.0, (0.3, 0.2, 0.4)))
    assert dq.gamma == -0.4
    assert dq.delta == pytest.approx(-4.16, abs=1e-14)
    assert dq.energy_scaled == pytest.approx(0.029, abs=1e-15)
    assert dq.epsilon_scaled == pytest.approx(0.429, abs=1e-15)
    assert abs(dq.n - (4.9 - 0.3j)) < 1e-15
    assert abs(dq.m - (-10.8)) < 1e-15


def test_derived_invariants_random():
    rng = random.Random(3)
    for _ in range(100):
        p = DimensionlessParams(0.1, rng.uniform(0.5, 100), [rng.uniform(-2, 2) for _ in range(3)])
        dq = derived_quantities(p)
        kx, ky, kz = p.kappa
        assert abs(dq.gamma**2 - 2 * p.sigma * dq.gamma + dq.delta) <= 1e-12
        assert dq.energy_scaled == pytest.approx(dq.epsilon_scaled + dq.gamma, abs=1e-13)
        assert dq.n == complex(p.sigma - 0.5 + kz, -kx)
        assert dq.m == complex(-2 * kz - 2 * p.sigma)
        # epsilon - kz = |kappa|^2 / (2 sigma): the free dispersion, shifted by the frame
        assert dq.epsilon_scaled - kz == pytest.approx(
            (kx * kx + ky * ky + kz * kz) / (2 * p.sigma), abs=1e-13)


def test_other_root_also_solves_quadratic():
    # the unused root 2 sigma + kz; documented, never used for evaluation
    p = DimensionlessParams(0.1, 5.0, (0.3, 0.2, 0.4))
    dq = derived_quantities(p)
    g = 2 * p.sigma + p.kappa[2]
    assert abs(g * g - 2 * p.sigma * g + dq.delta) < 1e-12


def test_psi_exact_reference_normalized(reference_params, reference_point):
    got = psi_hat_exact(reference_point, reference_params)
    assert rel_err(got, PSI_REF_NORMALIZED) < 1e-14


def test_psi_exact_reference_raw(reference_params, reference_point):
    got = psi_hat_exact(reference_point, reference_params, normalized=False)
    assert rel_err(got, PSI_REF_RAW) < 1e-13


def test_zero_field_is_free_plane_wave():
    rng = random.Random(4)
    for _ in range(50):
        params = random_params(rng, a=0.0)
        p = random_point(rng, 10)
        psi = psi_hat_exact(p, params)
        assert abs(abs(psi) - 1) < 1e-15
        assert psi == psi_free(p, params)


def test_origin_collapses_to_field_term(reference_params):
    dq = derived_quantities(reference_params)
    a = reference_params.a
    want = cmath.exp(-1j * a) * kummer_1f1(-dq.n, dq.m + 1, 2j * a)
    got = psi_hat_exact(SpacetimePoint(0, 0, 0, 0), reference_params)
    assert abs(got - want) < 1e-15


def test_psi_free_trivial_cases():
    assert psi_free(SpacetimePoint(1.0, -2.0, 3.0, 4.0), DimensionlessParams(0.2, 3, (0, 0, 0))) == 1
    assert psi_free(SpacetimePoint(0, 0, 0, 0), DimensionlessParams(0.2, 3, (0.5, 0.1, 0.9))) == 1


def test_modulus_depends_only_on_light_cone_variable():
    rng = random.Random(5)
    for _ in range(200):
        params = random_params(rng)
        p = random_point(rng)
        shift = rng.uniform(-3, 3)
        q = SpacetimePoint(rng.uniform(-3, 3), rng.uniform(-3, 3), p.zeta + shift, p.tau + shift)
        assert abs(abs(psi_hat_exact(p, params)) - abs(psi_hat_exact(q, params))) <= 1e-13


def test_light_cone_periodicity():
    rng = random.Random(6)
    for _ in range(200):
        params = random_params(rng)
        kx, ky, kz = params.kappa
        energy = derived_quantities(params).energy_scaled

        def envelope(p):
            plane = energy * p.tau + kx * p.xi + ky * p.upsilon + kz * p.zeta
            return psi_hat_exact(p, params) * cmath.exp(1j * plane)

        p = random_point(rng)
        q = SpacetimePoint(p.xi, p.upsilon, p.zeta + 2 * math.pi, p.tau)
        assert abs(envelope(p) - envelope(q)) <= 1e-13


def test_degenerate_order_is_reported():
    # 2 sigma + 2 kz = 10 puts m + 1 = -9 on a pole of the series
    params = DimensionlessParams(0.1, 5.0, (0.3, 0.2, 0.0))
    with pytest.raises(DegenerateOrderError):
        psi_hat_exact(SpacetimePoint(0, 0, 0, 0), params)


def test_zero_field_at_integer_order_still_free():
    params = DimensionlessParams(0.0, 5.0, (0.0, 0.0, 0.0))
    assert psi_hat_exact(SpacetimePoint(0.3, 0.1, -2.0, 1.0), params) == 1


def test_exact_is_deterministic(reference_params, reference_point):
    values = {psi_hat_exact(reference_point, reference_params) for _ in range(5)}
    assert len(values) == 1
