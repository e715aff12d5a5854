"""Complex special functions: log-gamma, Kummer's 1F1 and Laguerre functions.

All routines take and return Python ``complex`` values.  Results are always
finite; overflow is raised as :class:`~nrvolkov.errors.EvaluationOverflow`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import (
    DegenerateOrderError,
    EvaluationOverflow,
    NonConvergenceError,
    PoleError,
)

#: absolute distance to a nonpositive integer treated as "on the pole"
POLE_TOL = 1e-12

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

# B_{2k} / (2k (2k-1)), k = 1..10
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
)
_STIRLING_MIN_RE = 15.0


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy for the Kummer series."""

    rel_tol: float = 1e-14
    max_terms: int = 10000

    def __post_init__(self):
        if not (0.0 < self.rel_tol <= 1e-6):
            raise ValueError(f"rel_tol must lie in (0, 1e-6], got {self.rel_tol!r}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 16:
            raise ValueError(f"max_terms must be an integer >= 16, got {self.max_terms!r}")


DEFAULT_CONTROL = SeriesControl()


def _finite(z: complex, what: str) -> complex:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise EvaluationOverflow(f"{what} is not finite: {z!r}")
    return z


def pole_distance(z: complex) -> float:
    """Distance from ``z`` to the nearest nonpositive integer."""
    k = min(round(z.real), 0)
    return abs(z - k)


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z).

    The argument is shifted upward by the recurrence until its real part
    exceeds 15, the Stirling series is applied there and the logs of the
    skipped factors are subtracted.  Summing principal logs keeps the result
    on the branch that is real on the positive axis and continuous off the
    negative real axis.

    Raises
    ------
    PoleError
        If ``z`` lies within ``POLE_TOL`` of a nonpositive integer.
    """
    z = _finite(complex(z), "log_gamma argument")
    if pole_distance(z) < POLE_TOL:
        raise PoleError(f"log_gamma has a pole at {z!r}")

    shift = 0j
    w = z
    while w.real < _STIRLING_MIN_RE:
        shift += cmath.log(w)
        w += 1.0

    inv2 = 1.0 / (w * w)
    series = 0j
    for coef in reversed(_STIRLING):
        series = series * inv2 + coef
    stirling = (w - 0.5) * cmath.log(w) - w + _HALF_LOG_2PI + series / w
    return _finite(stirling - shift, "log_gamma")


def kummer_1f1(a: complex, b: complex, z: complex,
               ctl: SeriesControl = DEFAULT_CONTROL) -> complex:
    """Kummer's confluent hypergeometric function 1F1(a; b; z).

    Sums the Taylor series ``sum_j (a)_j / (b)_j z^j / j!``.  Summation stops
    once two consecutive terms fall below ``ctl.rel_tol`` times the running
    sum, provided every remaining denominator ``b + j`` has positive real
    part and the tail ratio bound is below one half (no later term can grow
    back past the one that triggered the stop).  The accepted terms are then
    added with ``math.fsum`` on each component.

    Raises
    ------
    DegenerateOrderError
        ``b`` within ``POLE_TOL`` of a nonpositive integer.
    NonConvergenceError
        The stopping rule did not fire within ``ctl.max_terms`` terms.
    """
    a = _finite(complex(a), "a")
    b = _finite(complex(b), "b")
    z = _finite(complex(z), "z")
    if pole_distance(b) < POLE_TOL:
        raise DegenerateOrderError(f"1F1 denominator parameter b={b!r} is a nonpositive integer")
    if z == 0:
        return 1 + 0j

    abs_a = abs(a)
    abs_z = abs(z)
    re_parts = [1.0]
    im_parts = [0.0]
    term = 1 + 0j
    partial = 1 + 0j
    quiet = 0
    for j in range(ctl.max_terms):
        term *= (a + j) / (b + j) * z / (j + 1)
        partial += term
        if not cmath.isfinite(partial):
            raise EvaluationOverflow(f"1F1({a!r}; {b!r}; {z!r}) overflowed after {j + 1} terms")
        re_parts.append(term.real)
        im_parts.append(term.imag)
        if abs(term) <= ctl.rel_tol * abs(partial):
            quiet += 1
        else:
            quiet = 0
        if quiet >= 2:
            k = j + 1
            tail_den = b.real + k
            if tail_den > 0 and (abs_a + k) * abs_z < 0.5 * tail_den * (k + 1):
                break
    else:
        raise NonConvergenceError(
            f"1F1({a!r}; {b!r}; {z!r}) did not converge in {ctl.max_terms} terms")

    return _finite(complex(math.fsum(re_parts), math.fsum(im_parts)), "1F1")


def laguerre_prefactor_log(n: complex, m: complex) -> complex:
    """log of Gamma(n+m+1) / (Gamma(n+1) Gamma(m+1))."""
    return log_gamma(n + m + 1) - log_gamma(n + 1) - log_gamma(m + 1)


def laguerre_general(n: complex, m: complex, x: complex,
                     ctl: SeriesControl = DEFAULT_CONTROL,
                     normalized: bool = False) -> complex:
    """Associated Laguerre function L_n^m(x) for complex degree, order and argument.

    ``L_n^m(x) = Gamma(n+m+1) / (Gamma(m+1) Gamma(n+1)) * 1F1(-n; m+1; x)``.
    With ``normalized=True`` the gamma-function prefactor is dropped and only
    the Kummer factor is returned (value 1 at ``x = 0``).
    """
    n, m, x = complex(n), complex(m), complex(x)
    kummer = kummer_1f1(-n, m + 1, x, ctl)
    if normalized:
        return kummer
    log_pref = laguerre_prefactor_log(n, m)
    if log_pref.real > 709.0:
        raise EvaluationOverflow(f"Laguerre prefactor overflows: log = {log_pref!r}")
    return _finite(cmath.exp(log_pref) * kummer, "L_n^m")
