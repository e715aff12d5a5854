"""Exact wavefunction of a charged particle in the x-polarized plane-wave field.

The solution is

    psi = exp(-i E tau - i kappa.r - i a u) * L_n^m(2 i a u),   u = e^{i(zeta - tau)},

with degree ``n = sigma - 1/2 + kappa_z - i kappa_x`` and order
``m = -2 kappa_z - 2 sigma``.  The factor u^gamma (gamma = -kappa_z) is
carried as the real phase e^{i gamma (zeta - tau)} and merged into the energy
phase, so no complex power is ever taken.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

from .model import DimensionlessParams, SpacetimePoint, light_cone_phase
from .specfun import DEFAULT_CONTROL, SeriesControl, laguerre_general


@dataclass(frozen=True)
class DerivedQuantities:
    gamma: float
    delta: float
    epsilon_scaled: float
    energy_scaled: float
    laguerre_degree: complex
    laguerre_order: complex

    @property
    def n(self) -> complex:
        return self.laguerre_degree

    @property
    def m(self) -> complex:
        return self.laguerre_order


def derived_quantities(params: DimensionlessParams) -> DerivedQuantities:
    """Constants of the solution in units of k (wavenumbers) and hbar k c (energies).

    ``gamma = -kappa_z`` is the root of ``gamma^2 - 2 sigma gamma + delta = 0``
    that reproduces the free particle at zero field; the other root,
    ``2 sigma + kappa_z``, is not used.
    """
    kx, ky, kz = params.kappa
    sigma = params.sigma
    gamma = -kz
    delta = -kz * kz - 2.0 * sigma * kz
    energy = (kx * kx + ky * ky + kz * kz) / (2.0 * sigma)
    epsilon = energy - gamma
    n = complex(sigma - 0.5 + kz, -kx)
    m = complex(-2.0 * kz - 2.0 * sigma, 0.0)
    return DerivedQuantities(gamma, delta, epsilon, energy, n, m)


def _plane_wave_phase(p: SpacetimePoint, params: DimensionlessParams, energy: float) -> float:
    kx, ky, kz = params.kappa
    return -energy * p.tau - (kx * p.xi + ky * p.upsilon + kz * p.zeta)


def psi_free(p: SpacetimePoint, params: DimensionlessParams) -> complex:
    """Free-particle plane wave exp(-i E tau - i kappa.r)."""
    energy = derived_quantities(params).energy_scaled
    return cmath.exp(1j * _plane_wave_phase(p, params, energy))


def psi_hat_exact(p: SpacetimePoint, params: DimensionlessParams,
                  ctl: SeriesControl = DEFAULT_CONTROL,
                  normalized: bool = True) -> complex:
    """Exact solution at one spacetime point.

    With ``normalized`` (the default) the Laguerre function's gamma-function
    prefactor is dropped, so the value reduces to ``psi_free`` at ``a = 0``.

    Raises the specfun errors when ``m + 1 = 1 - 2 kz - 2 sigma`` is a
    nonpositive integer, except for the normalized zero-field case.
    """
    dq = derived_quantities(params)
    phase = _plane_wave_phase(p, params, dq.energy_scaled)
    a = params.a
    if a == 0.0 and normalized:
        # field factor is identically 1; no series, so 2 sigma + 2 kz may be an integer
        return cmath.exp(1j * phase)
    u = light_cone_phase(p)
    lag = laguerre_general(dq.n, dq.m, 2j * a * u, ctl, normalized=normalized)
    return cmath.exp(1j * phase - 1j * a * u) * lag
