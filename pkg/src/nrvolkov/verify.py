"""Finite-difference certification of the exact solution.

The residual is the scaled Schroedinger operator

    R = 2i sigma D_tau psi + (D_xi,xi + D_ups,ups + D_zeta,zeta) psi
        - 2i a u D_xi psi - a^2 u^2 psi

built from second-order central differences on point evaluations of the
wavefunction.  It knows nothing about how the wavefunction is computed, so it
can be pointed at the perturbative series as a negative control.
"""
from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence, TextIO

from .errors import NumericalError
from .model import DimensionlessParams, SpacetimePoint, light_cone_phase
from .perturbation import expansion_coefficients, psi_perturbative
from .solution import derived_quantities, psi_hat_exact
from .specfun import DEFAULT_CONTROL, SeriesControl

H_MIN, H_MAX = 1e-5, 1e-1
DEGENERATE_LEVEL = 1e-14
ORDER_RANGE = (1.8, 2.2)
MAX_EXTRAPOLATED = 1e-8
RATIO_RANGE = (6.8, 9.2)

Wavefunction = Callable[[SpacetimePoint], complex]


@dataclass
class ResidualReport:
    steps: list[float]
    residuals: list[float]
    fitted_order: float
    extrapolated_residual: float
    # every residual under DEGENERATE_LEVEL: no slope to fit, counts as a pass
    degenerate: bool = False

    def certified(self, order_range=ORDER_RANGE, max_residual=MAX_EXTRAPOLATED) -> bool:
        if self.degenerate:
            return True
        lo, hi = order_range
        return lo <= self.fitted_order <= hi and self.extrapolated_residual <= max_residual


@dataclass
class CompareRow:
    a: float
    max_abs_dev: float
    ratio: Optional[float] = None


def exact_wavefunction(params: DimensionlessParams,
                       ctl: SeriesControl = DEFAULT_CONTROL) -> Wavefunction:
    return lambda p: psi_hat_exact(p, params, ctl)


def perturbative_wavefunction(params: DimensionlessParams, order: int = 2) -> Wavefunction:
    return lambda p: psi_perturbative(p, params, order)


def seeded_points(seed: int, count: int, half_width: float = math.pi) -> list[SpacetimePoint]:
    """``count`` pseudo-random points, uniform in [-half_width, half_width]^4."""
    rng = random.Random(seed)
    return [SpacetimePoint(*(rng.uniform(-half_width, half_width) for _ in range(4)))
            for _ in range(count)]


def schrodinger_residual(p: SpacetimePoint, params: DimensionlessParams, h: float,
                         ctl: SeriesControl = DEFAULT_CONTROL,
                         psi: Optional[Wavefunction] = None) -> float:
    """Relative residual |R| / (1 + 2 sigma |E psi|) at step ``h``."""
    if not (H_MIN <= h <= H_MAX):
        raise ValueError(f"step h={h!r} outside [{H_MIN}, {H_MAX}]")
    if psi is None:
        psi = exact_wavefunction(params, ctl)

    center = psi(p)
    second = 0j
    for axis in ("xi", "upsilon", "zeta"):
        plus = psi(p.shifted(axis, h))
        minus = psi(p.shifted(axis, -h))
        second += (plus - 2.0 * center + minus) / (h * h)
        if axis == "xi":
            d_xi = (plus - minus) / (2.0 * h)
    d_tau = (psi(p.shifted("tau", h)) - psi(p.shifted("tau", -h))) / (2.0 * h)

    a = params.a
    u = light_cone_phase(p)
    sigma = params.sigma
    r = 2j * sigma * d_tau + second - 2j * a * u * d_xi - a * a * u * u * center
    energy = derived_quantities(params).energy_scaled
    return abs(r) / (1.0 + 2.0 * sigma * abs(energy * center))


def _fit_order(steps: Sequence[float], residuals: Sequence[float]) -> float:
    xs = [math.log(h) for h in steps]
    ys = [math.log(max(r, 1e-300)) for r in residuals]
    slope, _ = statistics.linear_regression(xs, ys)
    return slope


def _richardson(h1: float, r1: float, h2: float, r2: float, order: float) -> float:
    w1, w2 = h1 ** order, h2 ** order
    if abs(w1 - w2) <= 1e-12 * max(w1, w2):
        return r2
    return abs((r2 * w1 - r1 * w2) / (w1 - w2))


def residual_convergence(p: SpacetimePoint, params: DimensionlessParams,
                         steps: Sequence[float],
                         ctl: SeriesControl = DEFAULT_CONTROL,
                         psi: Optional[Wavefunction] = None) -> ResidualReport:
    """Residual at each step, log-log slope, and a Richardson estimate of the h -> 0 limit."""
    steps = [float(h) for h in steps]
    if len(steps) < 3:
        raise ValueError("need at least 3 steps")
    if any(b >= a for a, b in zip(steps, steps[1:])):
        raise ValueError("steps must be strictly decreasing")
    if psi is None:
        psi = exact_wavefunction(params, ctl)
    residuals = [schrodinger_residual(p, params, h, ctl, psi) for h in steps]
    if all(r < DEGENERATE_LEVEL for r in residuals):
        return ResidualReport(steps, residuals, 0.0, 0.0, degenerate=True)
    order = _fit_order(steps, residuals)
    extrapolated = _richardson(steps[-2], residuals[-2], steps[-1], residuals[-1], order)
    return ResidualReport(steps, residuals, order, extrapolated)


def envelope_report(reports: Sequence[ResidualReport]) -> ResidualReport:
    """Pointwise maximum residual over several reports sharing the same steps."""
    steps = reports[0].steps
    residuals = [max(rep.residuals[i] for rep in reports) for i in range(len(steps))]
    if all(r < DEGENERATE_LEVEL for r in residuals):
        return ResidualReport(list(steps), residuals, 0.0, 0.0, degenerate=True)
    order = _fit_order(steps, residuals)
    extrapolated = _richardson(steps[-2], residuals[-2], steps[-1], residuals[-1], order)
    return ResidualReport(list(steps), residuals, order, extrapolated)


def max_deviation(params: DimensionlessParams, points: Iterable[SpacetimePoint],
                  ctl: SeriesControl = DEFAULT_CONTROL, order: int = 2) -> float:
    worst = 0.0
    for p in points:
        try:
            dev = abs(psi_hat_exact(p, params, ctl) - psi_perturbative(p, params, order))
        except NumericalError as exc:
            raise type(exc)(f"{exc} (at point {p})") from exc
        worst = max(worst, dev)
    return worst


def compare_report(params: DimensionlessParams, a_values: Sequence[float],
                   grid_seed: int, grid_size: int,
                   ctl: SeriesControl = DEFAULT_CONTROL,
                   order: int = 2) -> list[CompareRow]:
    """Max |exact - perturbative| over a seeded grid, for each field strength.

    ``ratio`` is the previous row's deviation over this row's; with ``a``
    halving each row it approaches ``2**(order + 1)``.
    """
    a_values = [float(a) for a in a_values]
    if any(a < 0 for a in a_values):
        raise ValueError("a_values must be nonnegative")
    if any(b >= a for a, b in zip(a_values, a_values[1:])):
        raise ValueError("a_values must be strictly decreasing")
    if grid_size < 1:
        raise ValueError("grid_size must be positive")
    if order >= 1 and any(a > 0 for a in a_values):
        expansion_coefficients(params)  # resonance guard before any work
    points = seeded_points(grid_seed, grid_size)
    rows: list[CompareRow] = []
    for a in a_values:
        dev = max_deviation(params.with_a(a), points, ctl, order)
        ratio = None
        if rows and rows[-1].max_abs_dev > 0 and dev > 0:
            ratio = rows[-1].max_abs_dev / dev
        rows.append(CompareRow(a, dev, ratio))
    return rows


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else repr(float(x))


def write_compare_csv(rows: Sequence[CompareRow], out: TextIO) -> None:
    out.write("a,max_abs_dev,ratio\n")
    for row in rows:
        out.write(f"{_fmt(row.a)},{_fmt(row.max_abs_dev)},{_fmt(row.ratio)}\n")


def write_residual_csv(report: ResidualReport, out: TextIO) -> None:
    out.write("h,residual\n")
    for h, r in zip(report.steps, report.residuals):
        out.write(f"{_fmt(h)},{_fmt(r)}\n")
    out.write(f"# fitted_order={_fmt(report.fitted_order)}\n")
    out.write(f"# extrapolated_residual={_fmt(report.extrapolated_residual)}\n")
    if report.degenerate:
        out.write("# degenerate=true\n")
