"""Benchmark the compiled kernel backend against the pure-python fallback.

Times the two hot kernels -- tanh-sinh action quadrature and the Numerov
log-grid sweep -- on identical workloads, checks that both backends agree,
and prints a small table with per-call timings and the speedup.

Run from the repository root::

    python3 benchmarks/bench_kernels.py [--repeats N] [--grid-points N]
"""

import argparse
import math
import time

import numpy as np

from fractalatom._kernels import _fallback

try:
    from fractalatom._kernels import _core
except ImportError:
    _core = None


def hydrogen_turning_points(e_abs):
    disc = math.sqrt(1.0 - 0.5 * e_abs)
    return (1.0 - disc) / (2.0 * e_abs), (1.0 + disc) / (2.0 * e_abs)


def quadrature_workload(impl, energies):
    total = 0.0
    for e_abs in energies:
        lo, hi = hydrogen_turning_points(e_abs)
        value, _, _, converged = impl.action_quadrature(
            0.0, 1.0, 1.0, e_abs, 0.25, lo, hi, 1e-12
        )
        if not converged:
            raise RuntimeError(f"quadrature failed to converge at e_abs={e_abs}")
        total += value
    return total


def shooting_workload(impl, args):
    nodes, resid, last_node, end_sign = impl.shoot_log_grid(*args)
    return nodes


def time_call(func, repeats):
    best = math.inf
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = func()
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repeats per backend; best of N is kept")
    parser.add_argument("--grid-points", type=int, default=200001,
                        help="grid size for the Numerov sweep workload")
    args = parser.parse_args(argv)

    if _core is None:
        parser.error("compiled extension is not importable; nothing to compare")

    energies = np.geomspace(0.002, 1.8, 60)
    k = math.sqrt(2.0)
    dx = 80.0 / (args.grid_points - 1)
    sweep_args = (
        k * k,
        np.ones(args.grid_points),
        np.zeros(args.grid_points),
        dx,
        1.0,
        1.0,
        0.0,
        math.sin(k * dx),
        args.grid_points - 1,
    )

    workloads = (
        (f"action_quadrature ({energies.size} integrals)",
         lambda impl: quadrature_workload(impl, energies)),
        (f"shoot_log_grid ({args.grid_points} points)",
         lambda impl: shooting_workload(impl, sweep_args)),
    )

    header = f"{'kernel workload':<38} {'python':>12} {'compiled':>12} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for label, workload in workloads:
        t_py, r_py = time_call(lambda: workload(_fallback), args.repeats)
        t_c, r_c = time_call(lambda: workload(_core), args.repeats)
        if not np.isclose(r_py, r_c, rtol=1e-9, atol=0.0):
            raise RuntimeError(f"backend mismatch on {label}: {r_py} vs {r_c}")
        print(f"{label:<38} {t_py * 1e3:>9.2f} ms {t_c * 1e3:>9.2f} ms "
              f"{t_py / t_c:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
