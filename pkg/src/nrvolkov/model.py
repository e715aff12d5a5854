"""Physical configuration and its reduction to the dimensionless triple (a, sigma, kappa).

Lengths are measured in units of 1/k and times in units of 1/(k c).  In those
units the minimal-coupling Schroedinger equation for the field
A = (A0 exp(i k (z - c t)), 0, 0) reads

    2i sigma d_tau psi = -lap psi + 2i a e^{i(zeta - tau)} d_xi psi + a^2 e^{2i(zeta - tau)} psi

with a = e A0 / (hbar c k) (Gaussian form) and sigma = m c / (hbar k).
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Sequence

from .errors import InvalidConfig, UnitError

# CODATA 2018
HBAR_SI = 1.054571817e-34  # J s
C_SI = 299792458.0  # m / s
E_CHARGE_SI = 1.602176634e-19  # C
M_ELECTRON_SI = 9.1093837015e-31  # kg
FINE_STRUCTURE = 7.2973525693e-3
# speed of light in atomic units (hbar = m_e = e = 1)
C_ATOMIC = 1.0 / FINE_STRUCTURE


class UnitSystem(str, enum.Enum):
    SI = "SI"
    ATOMIC = "atomic"
    DIMENSIONLESS = "dimensionless"


@dataclass(frozen=True)
class PhysicalConfig:
    """Field and particle in physical units.

    ``A0`` is in V s / m (SI) or atomic units of vector potential; ``k`` in
    1/m or 1/bohr; ``mass`` in kg or electron masses; ``charge`` in C or
    elementary charges.  For ``DIMENSIONLESS`` the fields carry the reduced
    quantities directly: ``k = 1``, ``|charge| = 1``, ``A0`` is ``a`` and
    ``mass`` is ``sigma``.
    """

    A0: float
    k: float
    mass: float
    charge: float
    unit_system: UnitSystem = UnitSystem.SI

    def __post_init__(self):
        object.__setattr__(self, "unit_system", UnitSystem(self.unit_system))
        for name in ("A0", "k", "mass", "charge"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidConfig(f"{name} must be finite")
        if self.k <= 0:
            raise InvalidConfig(f"wavenumber k must be positive, got {self.k}")
        if self.mass <= 0:
            raise InvalidConfig(f"mass must be positive, got {self.mass}")
        if self.A0 < 0:
            raise InvalidConfig(f"A0 must be nonnegative, got {self.A0}")


@dataclass(frozen=True)
class DimensionlessParams:
    """Scaled field strength ``a``, mass ratio ``sigma`` and electron wavevector ``kappa``."""

    a: float
    sigma: float
    kappa: tuple[float, float, float]

    def __post_init__(self):
        kappa = tuple(float(v) for v in self.kappa)
        if len(kappa) != 3:
            raise InvalidConfig(f"kappa must have 3 components, got {len(kappa)}")
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "sigma", float(self.sigma))
        if not all(math.isfinite(v) for v in (self.a, self.sigma) + kappa):
            raise InvalidConfig("parameters must be finite")
        if self.a < 0:
            raise InvalidConfig(f"a must be nonnegative, got {self.a}")
        if self.sigma <= 0:
            raise InvalidConfig(f"sigma must be positive, got {self.sigma}")

    def with_a(self, a: float) -> "DimensionlessParams":
        return DimensionlessParams(a, self.sigma, self.kappa)


@dataclass(frozen=True)
class SpacetimePoint:
    """Dimensionless coordinates (k x, k y, k z, k c t)."""

    xi: float
    upsilon: float
    zeta: float
    tau: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.xi, self.upsilon, self.zeta, self.tau)):
            raise InvalidConfig("spacetime point must be finite")

    def shifted(self, axis: str, h: float) -> "SpacetimePoint":
        values = {"xi": self.xi, "upsilon": self.upsilon, "zeta": self.zeta, "tau": self.tau}
        values[axis] += h
        return SpacetimePoint(**values)


def to_dimensionless(cfg: PhysicalConfig, kprime: Sequence[float]) -> DimensionlessParams:
    """Reduce a physical configuration and electron wavevector to (a, sigma, kappa).

    The sign of the charge is not kept: flipping it is the same as moving the
    origin of z - ct by half a field period, so ``a`` uses ``|charge|``.
    """
    kprime = tuple(float(v) for v in kprime)
    if len(kprime) != 3 or not all(math.isfinite(v) for v in kprime):
        raise InvalidConfig("kprime must be three finite numbers")
    q = abs(cfg.charge)
    k = cfg.k
    if cfg.unit_system is UnitSystem.SI:
        # SI minimal coupling p - qA: the Gaussian e A0 / (hbar c) becomes q A0 / hbar
        alpha = q * cfg.A0 / HBAR_SI
        sigma = cfg.mass * C_SI / (HBAR_SI * k)
    elif cfg.unit_system is UnitSystem.ATOMIC:
        alpha = q * cfg.A0 / C_ATOMIC
        sigma = cfg.mass * C_ATOMIC / k
    else:
        if k != 1.0 or q != 1.0:
            raise UnitError("dimensionless unit system requires k = 1 and |charge| = 1")
        return DimensionlessParams(cfg.A0, cfg.mass, kprime)
    return DimensionlessParams(alpha / k, sigma, tuple(v / k for v in kprime))


def light_cone_phase(p: SpacetimePoint) -> complex:
    """u = exp(i (zeta - tau)), the field phase on the unit circle."""
    s = p.zeta - p.tau
    return complex(math.cos(s), math.sin(s))


def params_from_mapping(cfg: Mapping[str, Any]) -> DimensionlessParams:
    """Build parameters from a parsed JSON configuration.

    Accepts either ``{"params": {"a", "sigma", "kappa"}}`` or
    ``{"physical": {"A0", "k", "mass", "charge", "units"}, "kprime": [...]}``.
    """
    if not isinstance(cfg, Mapping):
        raise InvalidConfig("configuration must be a JSON object")
    has_params = "params" in cfg
    has_physical = "physical" in cfg
    if has_params == has_physical:
        raise InvalidConfig("exactly one of 'params' or 'physical' must be present")
    unknown = set(cfg) - {"params", "physical", "kprime"}
    if unknown:
        raise InvalidConfig(f"unknown configuration keys: {sorted(unknown)}")
    try:
        if has_params:
            if "kprime" in cfg:
                raise InvalidConfig("'kprime' belongs with 'physical'; use params.kappa")
            p = cfg["params"]
            _require_keys(p, ("a", "sigma", "kappa"), "params")
            return DimensionlessParams(_num(p["a"]), _num(p["sigma"]), _vec3(p["kappa"]))
        if "kprime" not in cfg:
            raise InvalidConfig("'physical' configuration needs 'kprime'")
        ph = cfg["physical"]
        _require_keys(ph, ("A0", "k", "mass", "charge", "units"), "physical")
        units = ph["units"]
        try:
            system = UnitSystem(units)
        except ValueError:
            raise UnitError(f"unknown unit system {units!r}") from None
        phys = PhysicalConfig(_num(ph["A0"]), _num(ph["k"]), _num(ph["mass"]),
                              _num(ph["charge"]), system)
        return to_dimensionless(phys, _vec3(cfg["kprime"]))
    except (TypeError, KeyError) as exc:
        raise InvalidConfig(f"malformed configuration: {exc}") from exc


def load_config(path: str | Path) -> DimensionlessParams:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidConfig(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidConfig(f"config {path} is not valid JSON: {exc}") from exc
    return params_from_mapping(data)


def _require_keys(obj, keys, where):
    if not isinstance(obj, Mapping):
        raise InvalidConfig(f"'{where}' must be an object")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise InvalidConfig(f"'{where}' is missing {missing}")
    extra = set(obj) - set(keys)
    if extra:
        raise InvalidConfig(f"'{where}' has unknown keys {sorted(extra)}")


def _num(v) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise InvalidConfig(f"expected a number, got {v!r}")
    return float(v)


def _vec3(v) -> tuple[float, float, float]:
    if not isinstance(v, (list, tuple)) or len(v) != 3:
        raise InvalidConfig(f"expected a list of 3 numbers, got {v!r}")
    return tuple(_num(x) for x in v)
