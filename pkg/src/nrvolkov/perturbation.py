"""Weak-field expansion of the exact solution and an independent perturbative check.

Expanding the normalized exact solution in the scaled field strength ``a``
gives

    psi = e^{-i(kx xi + ky upsilon)} [ e^{-i kz zeta - i E tau}
          + a c1 e^{-i(kz - 1) zeta - i(E + 1) tau}
          + a^2 c2 e^{-i(kz - 2) zeta - i(E + 2) tau} + O(a^3) ]

``expansion_coefficients`` evaluates the closed forms of c1 and c2.
``driven_coefficients_oracle`` instead solves the first- and second-order
driven Schroedinger equations by plane-wave amplitude matching and never
looks at the closed forms.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import ResonanceError
from .model import DimensionlessParams, SpacetimePoint
from .solution import derived_quantities, psi_free

RESONANCE_TOL = 1e-9


@dataclass(frozen=True)
class ExpansionCoefficients:
    """c1 and c2 made dimensionless (multiplied by k and k^2)."""

    c1_hat: float
    c2_hat: float


def _check_resonance(params: DimensionlessParams) -> tuple[float, float]:
    kz = params.kappa[2]
    first = 2.0 * kz + 2.0 * params.sigma - 1.0
    second = params.sigma - 1.0 + kz
    if abs(first) <= RESONANCE_TOL:
        raise ResonanceError(f"first-order mode is resonant: 2 kz + 2 sigma - 1 = {first:.3e}")
    if abs(second) <= RESONANCE_TOL:
        raise ResonanceError(f"second-order mode is resonant: sigma - 1 + kz = {second:.3e}")
    return first, second


def expansion_coefficients(params: DimensionlessParams) -> ExpansionCoefficients:
    first, second = _check_resonance(params)
    kx, _, kz = params.kappa
    c1 = 2.0 * kx / first
    c2 = (2.0 * kz + 4.0 * kx * kx + 2.0 * params.sigma - 1.0) / (4.0 * second * first)
    return ExpansionCoefficients(c1, c2)


def psi_perturbative(p: SpacetimePoint, params: DimensionlessParams, order: int = 2) -> complex:
    """Weak-field series truncated after ``a**order`` (order in {0, 1, 2})."""
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order!r}")
    free = psi_free(p, params)
    if order == 0:
        return free
    kx, ky, kz = params.kappa
    energy = derived_quantities(params).energy_scaled
    coef = expansion_coefficients(params)
    a = params.a
    correction = a * coef.c1_hat * cmath.exp(
        -1j * ((kz - 1.0) * p.zeta + (energy + 1.0) * p.tau))
    if order == 2:
        correction += a * a * coef.c2_hat * cmath.exp(
            -1j * ((kz - 2.0) * p.zeta + (energy + 2.0) * p.tau))
    return free + cmath.exp(-1j * (kx * p.xi + ky * p.upsilon)) * correction


# --- independent driven-equation solver -------------------------------------
#
# Amplitudes are kept per photon number j: the mode
#   exp(-i kx xi - i ky upsilon - i (kz - j) zeta - i (E + j) tau).
# The free operator  2i sigma d_tau + lap  multiplies mode j by
#   2 sigma (E + j) - kx^2 - ky^2 - (kz - j)^2.
# The interaction moves amplitude between modes:
#   2i u d_xi   : j -> j + 1, amplitude * 2 kx
#   u^2         : j -> j + 2, amplitude * 1

def _dispersion(j, kappa, sigma, energy):
    kx, ky, kz = kappa
    return 2.0 * sigma * (energy + j) - (kx * kx + ky * ky + (kz - j) ** 2)


def _linear_coupling(modes, kappa):
    return {j + 1: 2.0 * kappa[0] * amp for j, amp in modes.items()}


def _quadratic_coupling(modes):
    return {j + 2: amp for j, amp in modes.items()}


def _solve_driven(source, kappa, sigma, energy, tol):
    out = {}
    for j, amp in source.items():
        d = _dispersion(j, kappa, sigma, energy)
        if abs(d) <= tol:
            raise ResonanceError(f"driven mode j={j} lies on the free dispersion (D = {d:.3e})")
        out[j] = amp / d
    return out


def _merge(*parts):
    out = {}
    for part in parts:
        for j, amp in part.items():
            out[j] = out.get(j, 0.0) + amp
    return out


def driven_coefficients_oracle(params: DimensionlessParams) -> ExpansionCoefficients:
    """Solve the order-a and order-a^2 driven equations for the mode amplitudes.

    Collecting powers of ``a`` in the scaled equation gives

        (2i sigma d_tau + lap) psi_1 = 2i u d_xi psi_0
        (2i sigma d_tau + lap) psi_2 = 2i u d_xi psi_1 + u^2 psi_0

    with ``psi_0`` the free plane wave.  Each source is a single Fourier mode,
    so dividing by the free dispersion symbol solves the equation exactly.
    """
    kappa = params.kappa
    sigma = params.sigma
    energy = sum(v * v for v in kappa) / (2.0 * sigma)
    free = {0: 1.0}

    first = _solve_driven(_linear_coupling(free, kappa), kappa, sigma, energy,
                          RESONANCE_TOL)
    second = _solve_driven(_merge(_linear_coupling(first, kappa), _quadratic_coupling(free)),
                           kappa, sigma, energy, 4.0 * RESONANCE_TOL)
    return ExpansionCoefficients(first[1], second[2])
