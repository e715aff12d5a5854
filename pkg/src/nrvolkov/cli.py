"""Command-line front end: ``nrvolkov params|eval|verify``.

Exit codes: 0 ok, 1 invalid config or grid, 2 numerical failure,
3 resonance or degenerate Laguerre order, 4 certification failure.
"""
from __future__ import annotations

import argparse
import cmath
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    DegenerateOrderError,
    InvalidConfig,
    NumericalError,
    PoleError,
    ResonanceError,
)
from .model import DimensionlessParams, SpacetimePoint, load_config
from .perturbation import expansion_coefficients, psi_perturbative
from .solution import derived_quantities, psi_hat_exact
from .specfun import DEFAULT_CONTROL
from .verify import (
    MAX_EXTRAPOLATED,
    ORDER_RANGE,
    RATIO_RANGE,
    compare_report,
    envelope_report,
    perturbative_wavefunction,
    residual_convergence,
    seeded_points,
    write_compare_csv,
    write_residual_csv,
)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC, EXIT_RESONANCE, EXIT_CERTIFY = 0, 1, 2, 3, 4
MAX_GRID_POINTS = 10**8
AXES = ("xi", "upsilon", "zeta", "tau")
DEFAULT_STEPS = "0.01,0.005,0.0025,0.00125"


class CertificationFailure(Exception):
    pass


@dataclass(frozen=True)
class AxisSpec:
    min: float
    max: float
    count: int

    def values(self) -> list[float]:
        if self.count == 1:
            return [self.min]
        span = self.max - self.min
        return [self.min + span * i / (self.count - 1) for i in range(self.count)]


@dataclass(frozen=True)
class GridSpec:
    xi: AxisSpec
    upsilon: AxisSpec
    zeta: AxisSpec
    tau: AxisSpec

    @property
    def size(self) -> int:
        return self.xi.count * self.upsilon.count * self.zeta.count * self.tau.count

    def axis_values(self) -> list[list[float]]:
        return [getattr(self, name).values() for name in AXES]


def parse_grid(text: str) -> GridSpec:
    """Parse ``min:max:count`` for each axis, comma separated, in xi, upsilon, zeta, tau order."""
    parts = text.split(",")
    if len(parts) != 4:
        raise InvalidConfig(f"grid needs 4 comma-separated min:max:count entries, got {text!r}")
    axes = []
    for name, part in zip(AXES, parts):
        fields = part.split(":")
        if len(fields) != 3:
            raise InvalidConfig(f"grid axis {name}: expected min:max:count, got {part!r}")
        try:
            lo, hi, count = float(fields[0]), float(fields[1]), int(fields[2])
        except ValueError:
            raise InvalidConfig(f"grid axis {name}: cannot parse {part!r}") from None
        if not (lo <= hi) or count < 1:
            raise InvalidConfig(f"grid axis {name}: need min <= max and count >= 1")
        axes.append(AxisSpec(lo, hi, count))
    grid = GridSpec(*axes)
    if grid.size > MAX_GRID_POINTS:
        raise InvalidConfig(f"grid too large: {grid.size} points (limit {MAX_GRID_POINTS})")
    return grid


def parse_float_list(text: str, what: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InvalidConfig(f"cannot parse {what} list {text!r}") from None


# --- eval ---------------------------------------------------------------------

def _fmt(x: float) -> str:
    return repr(float(x))


def _eval_rows(job):
    """Evaluate one contiguous block of grid rows; runs in worker processes."""
    params, axis_values, start, stop, solution, order, normalized = job
    xs, ys, zs, ts = axis_values
    ny, nz, nt = len(ys), len(zs), len(ts)
    lines = []
    for index in range(start, stop):
        i, rest = divmod(index, ny * nz * nt)
        j, rest = divmod(rest, nz * nt)
        k, l = divmod(rest, nt)
        p = SpacetimePoint(xs[i], ys[j], zs[k], ts[l])
        try:
            if solution == "exact":
                psi = psi_hat_exact(p, params, DEFAULT_CONTROL, normalized)
            else:
                psi = psi_perturbative(p, params, order)
        except NumericalError as exc:
            raise type(exc)(f"{exc} (at point xi={p.xi}, upsilon={p.upsilon}, "
                            f"zeta={p.zeta}, tau={p.tau})") from None
        lines.append(",".join(_fmt(v) for v in (
            p.xi, p.upsilon, p.zeta, p.tau, psi.real, psi.imag, abs(psi), cmath.phase(psi))))
    return "\n".join(lines) + "\n" if lines else ""


def _blocks(total: int, workers: int) -> list[tuple[int, int]]:
    n_blocks = max(1, min(total, workers * 4))
    edges = [total * b // n_blocks for b in range(n_blocks + 1)]
    return [(edges[b], edges[b + 1]) for b in range(n_blocks)]


def evaluate_grid(params: DimensionlessParams, grid: GridSpec, out, solution="exact",
                  order=2, normalized=True, workers=1) -> int:
    """Write the grid CSV to ``out`` in row-major order; returns the row count."""
    if solution == "perturbative" and order >= 1:
        expansion_coefficients(params)
    axis_values = grid.axis_values()
    total = grid.size
    jobs = [(params, axis_values, lo, hi, solution, order, normalized)
            for lo, hi in _blocks(total, workers)]
    out.write("xi,upsilon,zeta,tau,re_psi,im_psi,abs_psi,phase\n")
    if workers <= 1:
        for job in jobs:
            out.write(_eval_rows(job))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(_eval_rows, jobs):
                out.write(chunk)
    return total


# --- verify -------------------------------------------------------------------

def _residual_job(job):
    point, params, steps, solution, order = job
    psi = perturbative_wavefunction(params, order) if solution == "perturbative" else None
    try:
        return residual_convergence(point, params, steps, DEFAULT_CONTROL, psi)
    except NumericalError as exc:
        raise type(exc)(f"{exc} (at point {point})") from None


def run_verify(params: DimensionlessParams, out_dir: Path, steps, seed: int, grid_size: int,
               solution="exact", order=2, workers=1) -> list[str]:
    """Write residual.csv and compare.csv; return the list of failed criteria."""
    a_values = [params.a, params.a / 2, params.a / 4] if params.a > 0 else [0.0]
    rows = compare_report(params, a_values, seed, grid_size, DEFAULT_CONTROL, order=2)

    points = seeded_points(seed, grid_size)
    jobs = [(p, params, steps, solution, order) for p in points]
    if workers <= 1:
        reports = [_residual_job(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_residual_job, jobs))
    envelope = envelope_report(reports)

    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "residual.csv", "w", newline="") as fh:
        write_residual_csv(envelope, fh)
        fh.write(f"# points={len(reports)} solution={solution}\n")
    with open(out_dir / "compare.csv", "w", newline="") as fh:
        write_compare_csv(rows, fh)

    failures = []
    lo, hi = ORDER_RANGE
    for idx, rep in enumerate(reports):
        if rep.degenerate:
            continue
        if not lo <= rep.fitted_order <= hi:
            failures.append(f"fitted_order={rep.fitted_order:.4g} outside [{lo}, {hi}] "
                            f"at point {idx}")
        if rep.extrapolated_residual > MAX_EXTRAPOLATED:
            failures.append(f"extrapolated_residual={rep.extrapolated_residual:.3e} > "
                            f"{MAX_EXTRAPOLATED} at point {idx}")
    rlo, rhi = RATIO_RANGE
    for row in rows:
        if row.ratio is not None and not rlo <= row.ratio <= rhi:
            failures.append(f"comparison ratio={row.ratio:.4g} at a={row.a} outside [{rlo}, {rhi}]")
    return failures


# --- entry point --------------------------------------------------------------

def _derived_json(params: DimensionlessParams) -> dict:
    dq = derived_quantities(params)
    return {
        "a": params.a,
        "sigma": params.sigma,
        "kappa": list(params.kappa),
        "gamma": dq.gamma,
        "delta": dq.delta,
        "epsilon_scaled": dq.epsilon_scaled,
        "energy_scaled": dq.energy_scaled,
        "n": [dq.n.real, dq.n.imag],
        "m": [dq.m.real, dq.m.imag],
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nrvolkov",
        description="Exact nonrelativistic wavefunction of a charge in a plane-wave field.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="print the derived constants as JSON")
    p.add_argument("--config", required=True)

    e = sub.add_parser("eval", help="evaluate the wavefunction on a grid, write CSV")
    e.add_argument("--config", required=True)
    e.add_argument("--grid", required=True,
                   help="xi,upsilon,zeta,tau as min:max:count, comma separated; "
                        "use --grid=... when the first value is negative")
    e.add_argument("--out", required=True)
    e.add_argument("--solution", choices=("exact", "perturbative"), default="exact")
    e.add_argument("--order", type=int, choices=(0, 1, 2), default=2)
    norm = e.add_mutually_exclusive_group()
    norm.add_argument("--normalized", dest="normalized", action="store_true", default=True)
    norm.add_argument("--raw", dest="normalized", action="store_false")
    e.add_argument("--workers", type=int, default=1)

    v = sub.add_parser("verify", help="residual convergence and perturbative comparison")
    v.add_argument("--config", required=True)
    v.add_argument("--out", required=True, help="directory for residual.csv and compare.csv")
    v.add_argument("--steps", default=DEFAULT_STEPS)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--grid-size", type=int, default=20)
    v.add_argument("--solution", choices=("exact", "perturbative"), default="exact")
    v.add_argument("--order", type=int, choices=(0, 1, 2), default=2)
    v.add_argument("--workers", type=int, default=1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "workers", 1) < 1:
            raise InvalidConfig("--workers must be at least 1")
        params = load_config(args.config)
        if args.command == "params":
            json.dump(_derived_json(params), sys.stdout, indent=2)
            sys.stdout.write("\n")
        elif args.command == "eval":
            grid = parse_grid(args.grid)
            out = Path(args.out)
            tmp = out.with_name(out.name + ".part")
            try:
                with open(tmp, "w", newline="") as fh:
                    evaluate_grid(params, grid, fh, args.solution, args.order,
                                  args.normalized, args.workers)
                tmp.replace(out)
            finally:
                tmp.unlink(missing_ok=True)
        else:
            steps = parse_float_list(args.steps, "steps")
            if args.grid_size < 1:
                raise InvalidConfig("--grid-size must be positive")
            try:
                failures = run_verify(params, Path(args.out), steps, args.seed,
                                      args.grid_size, args.solution, args.order, args.workers)
            except ValueError as exc:
                if isinstance(exc, InvalidConfig):
                    raise
                raise InvalidConfig(str(exc)) from exc
            if failures:
                shown = "; ".join(failures[:5])
                more = f" (+{len(failures) - 5} more)" if len(failures) > 5 else ""
                raise CertificationFailure(shown + more)
            print("certified: residual order and extrapolation, comparison ratios")
    except InvalidConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ResonanceError, DegenerateOrderError, PoleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESONANCE
    except NumericalError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except CertificationFailure as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_CERTIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
