"""Command line interface.

Subcommands: stability, spectrum, exponents, sweep, verify. Numeric output
uses 17 significant digits so runs are byte-reproducible; when --out is
given, a JSON run record (parameters, library version, sha256 of the output
bytes) is written next to the output file as <out>.run.json.

Exit codes: 0 success, 2 invalid input (including unstable or degenerate
fractalities), 3 solver failure, 4 verification gate exceeded.
"""

import argparse
import hashlib
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from datetime import datetime, timezone

from . import __version__
from .asymptotics import rydberg_asymptote, rydberg_exponents, theta_closed_form
from .errors import DomainError, FractalAtomError, SpectrumError
from .geometry import Fractality, embedded_fractality
from .oracle import OracleConfig, compare_wkb_oracle
from .potentials import Charges, Scenario, coulomb, coulomb_full
from .stability import classify_margin, margin_for_scenario
from .wkb import WkbConfig, scaling_context, solve_level

__all__ = ["main", "RunRecord", "SweepSpec"]


@dataclass(frozen=True)
class RunRecord:
    """Reproducibility metadata written alongside every --out file."""

    command: str
    parameters: dict
    version: str
    created_utc: str
    output_path: str
    output_bytes: int
    output_sha256: str


@dataclass(frozen=True)
class SweepSpec:
    """A (d_v, d_s) grid and the quantity to evaluate on it."""

    scenario: Scenario
    d_v_range: tuple  # (lo, hi, steps)
    d_s_range: tuple
    quantity: str

    def __post_init__(self):
        for name, (lo, hi, steps) in (
            ("d_v_range", self.d_v_range),
            ("d_s_range", self.d_s_range),
        ):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise DomainError(f"{name} must satisfy lo < hi, got ({lo}, {hi})")
            if steps < 2:
                raise DomainError(f"{name} needs at least 2 steps, got {steps}")
        if self.quantity not in _SWEEP_QUANTITIES:
            raise DomainError(f"unknown sweep quantity {self.quantity!r}")

    def axis(self, which):
        lo, hi, steps = self.d_v_range if which == "d_v" else self.d_s_range
        return [lo + i * (hi - lo) / (steps - 1) for i in range(steps)]


def _fmt(value):
    return format(float(value), ".17g")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _range_spec(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected lo:hi:steps, got {text!r}"
        )
    try:
        lo, hi = float(parts[0]), float(parts[1])
        steps = int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed range {text!r}")
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise argparse.ArgumentTypeError(f"range bounds must satisfy lo < hi, got {text!r}")
    if steps < 2:
        raise argparse.ArgumentTypeError(f"steps must be at least 2, got {steps}")
    return lo, hi, steps


def _n_list(text):
    try:
        values = sorted({int(part) for part in text.split(",") if part.strip()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if values and values[0] < 1:
        raise argparse.ArgumentTypeError(f"level numbers must be positive, got {text!r}")
    return values


def _scenario(args):
    return Scenario.FULL_FRACTAL if args.scenario == "full" else Scenario.EMBEDDED


def _fractality(args, scenario):
    if scenario is Scenario.EMBEDDED:
        return embedded_fractality(args.dv, args.ds)
    return Fractality(args.dv, args.ds)


def _kappa(fractality, scenario):
    if scenario is Scenario.FULL_FRACTAL:
        return coulomb_full(fractality).kappa
    return 1.0


def _wkb_config(args):
    return WkbConfig(
        maslov_index=args.maslov,
        quadrature_abs_tol=args.tol_quad,
        energy_rel_tol=args.tol_energy,
    )


def _resolve_format(args, default):
    return args.format if args.format else default


def _pmap(fn, items, jobs):
    if jobs <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _emit(args, text, command):
    data = text.encode("utf-8")
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
        record = RunRecord(
            command=command,
            parameters={
                key: value
                for key, value in sorted(vars(args).items())
                if key != "handler" and not key.startswith("_")
            },
            version=__version__,
            created_utc=datetime.now(timezone.utc).isoformat(),
            output_path=args.out,
            output_bytes=len(data),
            output_sha256=hashlib.sha256(data).hexdigest(),
        )
        with open(args.out + ".run.json", "w", encoding="utf-8") as fh:
            json.dump(asdict(record), fh, indent=2, sort_keys=True, default=str)
            fh.write("\n")
    else:
        sys.stdout.write(text)


def _json_text(payload):
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _csv_text(header, rows):
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def cmd_stability(args):
    scenario = _scenario(args)
    fractality = _fractality(args, scenario)
    margin = margin_for_scenario(fractality, scenario)
    kappa = (
        2.0 * fractality.d_s - fractality.d_v
        if scenario is Scenario.FULL_FRACTAL
        else 1.0
    )
    payload = {
        "scenario": scenario.value,
        "d_v": fractality.d_v,
        "d_s": fractality.d_s,
        "kappa": kappa,
        "margin": margin,
        "classification": classify_margin(margin).value,
    }
    if _resolve_format(args, "json") == "json":
        text = _json_text(payload)
    else:
        header = ["scenario", "d_v", "d_s", "kappa", "margin", "classification"]
        row = [
            payload["scenario"], _fmt(payload["d_v"]), _fmt(payload["d_s"]),
            _fmt(payload["kappa"]), _fmt(payload["margin"]), payload["classification"],
        ]
        text = _csv_text(header, [row])
    _emit(args, text, "stability")
    return 0


def cmd_exponents(args):
    scenario = _scenario(args)
    fractality = _fractality(args, scenario)
    kappa = _kappa(fractality, scenario)
    exps = rydberg_exponents(fractality, kappa)
    payload = {
        "scenario": scenario.value,
        "d_v": fractality.d_v,
        "d_s": fractality.d_s,
        "kappa": kappa,
        "energy_exponent": exps.energy_exponent,
        "size_exponent": exps.size_exponent,
        "theta": exps.theta,
    }
    if _resolve_format(args, "json") == "json":
        text = _json_text(payload)
    else:
        header = ["scenario", "d_v", "d_s", "kappa", "energy_exponent", "size_exponent", "theta"]
        row = [
            payload["scenario"], _fmt(payload["d_v"]), _fmt(payload["d_s"]), _fmt(kappa),
            _fmt(exps.energy_exponent), _fmt(exps.size_exponent), _fmt(exps.theta),
        ]
        text = _csv_text(header, [row])
    _emit(args, text, "exponents")
    return 0


def cmd_spectrum(args):
    if args.nmin > args.nmax:
        raise DomainError(f"--nmin {args.nmin} exceeds --nmax {args.nmax}")
    scenario = _scenario(args)
    fractality = _fractality(args, scenario)
    kappa = _kappa(fractality, scenario)
    config = _wkb_config(args)
    charges = Charges(z=args.z, q_e=args.charge)
    potential = coulomb(scenario, fractality, charges)
    context = scaling_context(fractality, potential, hbar=args.hbar, mass=args.mass)

    ns = list(range(args.nmin, args.nmax + 1))

    def solve_one(n):
        try:
            return solve_level(fractality, kappa, n, config)
        except FractalAtomError as exc:
            return (n, exc)

    results = _pmap(solve_one, ns, args.jobs)
    failures = [r for r in results if isinstance(r, tuple)]
    if failures:
        failed = ", ".join(str(n) for n, _ in failures)
        print(
            f"error: {len(failures)} of {len(ns)} levels failed (n = {failed}): "
            f"{failures[0][1]}",
            file=sys.stderr,
        )
        return 3
    levels = results

    asymptotes = None
    if args.with_asymptote:
        asymptotes = [rydberg_asymptote(fractality, kappa, n) for n in ns]

    if _resolve_format(args, "csv") == "csv":
        header = ["n", "e_abs", "r_min", "r_max", "action_residual"]
        if asymptotes is not None:
            header += ["e_asym", "r_asym"]
        rows = []
        for i, level in enumerate(levels):
            row = [
                str(level.n), _fmt(level.e_abs), _fmt(level.r_min),
                _fmt(level.r_max), _fmt(level.action_residual),
            ]
            if asymptotes is not None:
                row += [_fmt(asymptotes[i][1]), _fmt(asymptotes[i][0])]
            rows.append(row)
        text = _csv_text(header, rows)
    else:
        entries = []
        for i, level in enumerate(levels):
            entry = {
                "n": level.n,
                "e_abs": level.e_abs,
                "e_signed": level.e_signed,
                "r_min": level.r_min,
                "r_max": level.r_max,
                "action_residual": level.action_residual,
                "degenerate_inner": level.degenerate_inner,
            }
            if asymptotes is not None:
                entry["e_asym"] = asymptotes[i][1]
                entry["r_asym"] = asymptotes[i][0]
            entries.append(entry)
        payload = {
            "scenario": scenario.value,
            "d_v": fractality.d_v,
            "d_s": fractality.d_s,
            "kappa": kappa,
            "scaling": {
                "length_scale": context.length_scale,
                "energy_scale": context.energy_scale,
                "hbar": context.hbar,
                "mass": context.mass,
            },
            "levels": entries,
        }
        text = _json_text(payload)
    _emit(args, text, "spectrum")
    return 0


_SWEEP_QUANTITIES = ("energy-exponent", "size-exponent", "stability-class", "theta")


def _sweep_cell(d_v, d_s, scenario, quantity):
    try:
        if scenario is Scenario.EMBEDDED:
            fractality = embedded_fractality(d_v, d_s)
        else:
            fractality = Fractality(d_v, d_s)
    except DomainError:
        return "", "out_of_bounds"
    margin = margin_for_scenario(fractality, scenario)
    classification = classify_margin(margin)
    if quantity == "stability-class":
        return classification.value, "ok"
    if classification.value != "stable":
        return "", classification.value
    try:
        kappa = _kappa(fractality, scenario)
        if quantity == "theta":
            value = theta_closed_form(fractality, kappa)
        else:
            exps = rydberg_exponents(fractality, kappa)
            value = (
                exps.energy_exponent if quantity == "energy-exponent" else exps.size_exponent
            )
    except DomainError:
        # stable but outside the computable domain (degenerate exponent line)
        return "", "out_of_bounds"
    return _fmt(value), "ok"


def cmd_sweep(args):
    spec = SweepSpec(
        scenario=_scenario(args),
        d_v_range=args.dv_range,
        d_s_range=args.ds_range,
        quantity=args.quantity,
    )
    cells = [(d_v, d_s) for d_v in spec.axis("d_v") for d_s in spec.axis("d_s")]

    def one(cell):
        return _sweep_cell(cell[0], cell[1], spec.scenario, spec.quantity)

    values = _pmap(one, cells, args.jobs)

    if _resolve_format(args, "csv") == "csv":
        rows = [
            [_fmt(d_v), _fmt(d_s), value, status]
            for (d_v, d_s), (value, status) in zip(cells, values)
        ]
        text = _csv_text(["d_v", "d_s", "value", "status"], rows)
    else:
        entries = [
            {"d_v": d_v, "d_s": d_s, "value": value if value else None, "status": status}
            for (d_v, d_s), (value, status) in zip(cells, values)
        ]
        payload = {"scenario": spec.scenario.value, "quantity": spec.quantity, "cells": entries}
        text = _json_text(payload)
    _emit(args, text, "sweep")
    return 0


def cmd_verify(args):
    scenario = _scenario(args)
    fractality = _fractality(args, scenario)
    kappa = _kappa(fractality, scenario)
    config = _wkb_config(args)
    oracle_config = OracleConfig(grid_points=args.grid_points)
    rows = compare_wkb_oracle(fractality, kappa, args.n, config, oracle_config)

    if _resolve_format(args, "json") == "json":
        payload = [
            {"n": r.n, "wkb": r.wkb_e_abs, "oracle": r.oracle_e_abs, "rel_diff": r.rel_diff}
            for r in rows
        ]
        text = _json_text(payload)
    else:
        csv_rows = [
            [str(r.n), _fmt(r.wkb_e_abs), _fmt(r.oracle_e_abs), _fmt(r.rel_diff)]
            for r in rows
        ]
        text = _csv_text(["n", "wkb", "oracle", "rel_diff"], csv_rows)
    _emit(args, text, "verify")

    offenders = [r.n for r in rows if r.rel_diff > args.gate]
    if offenders:
        listed = ", ".join(str(n) for n in offenders)
        print(
            f"verification gate {_fmt(args.gate)} exceeded at n = {listed}",
            file=sys.stderr,
        )
        return 4
    return 0


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file (plus <out>.run.json record)")
    common.add_argument("--jobs", type=_positive_int, default=1,
                        help="worker threads for independent levels/cells (default 1)")
    common.add_argument("--tol-energy", type=float, default=1e-10, dest="tol_energy",
                        help="relative energy tolerance of the level solver")
    common.add_argument("--tol-quad", type=float, default=1e-10, dest="tol_quad",
                        help="absolute tolerance of the action quadrature")
    common.add_argument("--maslov", type=float, default=2.0,
                        help="Maslov index in the quantization rule (default 2)")
    common.add_argument("--format", choices=("csv", "json"),
                        help="output format (default: csv for spectrum/sweep, json otherwise)")

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("--dv", type=float, required=True, help="volume dimension d_v")
    point.add_argument("--ds", type=float, required=True, help="surface dimension d_s")
    point.add_argument("--scenario", choices=("full", "embedded"), required=True,
                       help="full: fractal electrostatics; embedded: ambient Coulomb")

    parser = argparse.ArgumentParser(
        prog="fractalatom",
        description="Hydrogen-like atoms in fractal dimensions: stability, "
                    "WKB spectra, and scaling laws.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stability", parents=[common, point],
                       help="classify a fractality as stable/scale-free/unstable")
    p.set_defaults(handler=cmd_stability)

    p = sub.add_parser("spectrum", parents=[common, point],
                       help="solve WKB levels of the rescaled problem")
    p.add_argument("--nmin", type=_positive_int, default=1, help="first level (default 1)")
    p.add_argument("--nmax", type=_positive_int, required=True, help="last level")
    p.add_argument("--with-asymptote", action="store_true", dest="with_asymptote",
                   help="append closed-form large-n energy and size columns")
    p.add_argument("--hbar", type=float, default=1.0, help="Planck constant (default 1)")
    p.add_argument("--mass", type=float, default=1.0, help="particle mass (default 1)")
    p.add_argument("--charge", type=float, default=1.0, help="elementary charge (default 1)")
    p.add_argument("--z", type=_positive_int, default=1, help="nuclear charge number (default 1)")
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("exponents", parents=[common, point],
                       help="large-n scaling exponents and spectral constant")
    p.set_defaults(handler=cmd_exponents)

    p = sub.add_parser("sweep", parents=[common],
                       help="evaluate a quantity over a (d_v, d_s) grid")
    p.add_argument("--scenario", choices=("full", "embedded"), required=True)
    p.add_argument("--dv-range", type=_range_spec, required=True, dest="dv_range",
                   metavar="LO:HI:STEPS", help="volume dimension grid")
    p.add_argument("--ds-range", type=_range_spec, required=True, dest="ds_range",
                   metavar="LO:HI:STEPS", help="surface dimension grid")
    p.add_argument("--quantity", choices=_SWEEP_QUANTITIES, required=True)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("verify", parents=[common, point],
                       help="cross-check WKB levels against the shooting oracle")
    p.add_argument("--n", type=_n_list, required=True,
                   help="comma-separated level numbers, e.g. 1,2,5,10")
    p.add_argument("--gate", type=float, default=0.05,
                   help="max relative WKB/oracle difference (default 0.05)")
    p.add_argument("--grid-points", type=int, default=20000, dest="grid_points",
                   help="oracle grid size (default 20000)")
    p.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except SpectrumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FractalAtomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
