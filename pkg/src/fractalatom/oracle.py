"""Independent eigenvalue oracle for the rescaled radial problem.

The WKB spectrum is an approximation; this module solves the same
dimensionless radial equation

    Psi'' + [2 r^(2 alpha - 2) (E_tilde + sgn(kappa) r^-kappa)
             - ((c^2 - 1)/4) r^-2] Psi = 0,   c = -d_v + 2 d_s,

by direct integration, sharing nothing with the semiclassical machinery
beyond the coefficients themselves. On the log axis x = ln r the substitution
Psi = e^(x/2) v removes the first-order term exactly and the bare
(c^2 - 1)/4 coefficient becomes c^2/4, leaving v'' + W(x) v = 0 with

    W(x) = 2 e^(2 alpha x) E_tilde + 2 sgn(kappa) e^((2 alpha - kappa) x) - c^2/4,

which is linear in E_tilde: one coefficient build serves every trial energy.
Numerov integration outward from the regular small-r branch counts sign
changes; the eigenvalue of level n is the energy at which the node count
steps from n - 1 to n, located by bisection.

Integration is capped where the cumulative forbidden-region action beyond
the outer turning point reaches ACTION_CAP: past that point the growing
branch amplifies start-up noise by e^ACTION_CAP while moving the eigenvalue
only by ~e^(-2 ACTION_CAP), so a longer grid would add noise, not accuracy.
Conversely the grid is extended outward until that much forbidden action is
available, which keeps the finite-domain shift below double precision even
for low-lying states.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import (
    ConvergenceError,
    DomainError,
    FractalAtomError,
    GridTooSmallError,
    NoBoundStateError,
    SpectrumError,
)
from .geometry import _require_finite
from .wkb import (
    DEFAULT_CONFIG,
    SpectrumLevel,
    solve_level,
    _centrifugal_c,
    _require_kappa,
    _require_margin,
)
from .asymptotics import rydberg_asymptote

__all__ = [
    "ACTION_CAP",
    "OracleConfig",
    "OracleLevel",
    "ComparisonRow",
    "effective_equation_coefficients",
    "shoot_eigenvalue",
    "compare_wkb_oracle",
    "wavefunction_samples",
]

# Forbidden-region action at which outward integration stops (and the least
# amount the grid must offer past the outer turning point).
ACTION_CAP = 20.0

_MAX_EXTENSIONS = 60
_MAX_DOUBLINGS = 200
_START_AMPLITUDE = 1e-8
# least forbidden action required past the turning point at the converged
# energy; e^(-2 * 10) ~ 2e-9 bounds the relative box-truncation shift
_MIN_ROOT_ACTION = 10.0


@dataclass(frozen=True)
class OracleConfig:
    """Grid and bisection knobs for the shooting oracle."""

    r_inner: float = 1e-6
    r_outer_factor: float = 3.0
    grid_points: int = 20000
    node_tol: float = 1e-9

    def __post_init__(self):
        if not (math.isfinite(self.r_inner) and self.r_inner > 0.0):
            raise DomainError(f"r_inner must be positive, got {self.r_inner}")
        if not (math.isfinite(self.r_outer_factor) and self.r_outer_factor > 1.0):
            raise DomainError(f"r_outer_factor must exceed 1, got {self.r_outer_factor}")
        if isinstance(self.grid_points, bool) or not isinstance(self.grid_points, int):
            raise DomainError(f"grid_points must be an integer, got {self.grid_points!r}")
        if self.grid_points < 1000:
            raise DomainError(f"grid_points must be at least 1000, got {self.grid_points}")
        if not (math.isfinite(self.node_tol) and 0.0 < self.node_tol < 1.0):
            raise DomainError(f"node_tol must be in (0, 1), got {self.node_tol}")


DEFAULT_ORACLE_CONFIG = OracleConfig()


@dataclass(frozen=True)
class OracleLevel:
    """A directly integrated level: |E_tilde|, its interior node count, and
    the endpoint amplitude relative to the wavefunction peak."""

    n: int
    e_abs: float
    node_count: int
    boundary_residual: float


class ComparisonRow(NamedTuple):
    n: int
    wkb_e_abs: float
    oracle_e_abs: float
    rel_diff: float


def effective_equation_coefficients(fractality, kappa, e_abs, r):
    """Coefficient Q(r) in the normal-form radial equation Psi'' + Q Psi = 0.

    Uses the bare substitution coefficient ((c^2 - 1)/4); equals the square
    of ``radial_momentum`` wherever that is defined, but is valid (negative)
    in the forbidden regions too.
    """
    kappa = _require_kappa(kappa)
    e_abs = _require_finite("e_abs", e_abs)
    r = _require_finite("r", r)
    if e_abs <= 0.0:
        raise DomainError(f"e_abs must be positive, got {e_abs}")
    if r <= 0.0:
        raise DomainError(f"r must be positive, got {r}")
    sgn = math.copysign(1.0, kappa)
    c = _centrifugal_c(fractality)
    a = fractality.alpha()
    return 2.0 * r ** (2.0 * a - 2.0) * (-sgn * e_abs + sgn * r**-kappa) - (
        (c * c - 1.0) / 4.0
    ) / (r * r)


class _ShootingProblem:
    """Coefficient arrays for one grid; W(x) = e_signed * A + B."""

    def __init__(self, fractality, kappa, config, r_end):
        x0 = math.log(config.r_inner)
        x1 = math.log(r_end)
        if x1 - x0 < 1.0:
            raise DomainError(
                f"grid [{config.r_inner!r}, {r_end!r}] spans less than one e-fold"
            )
        alpha = fractality.alpha()
        if 2.0 * alpha * x1 > 700.0:
            raise GridTooSmallError(
                f"coefficient e^(2 alpha x) overflows at r_end={r_end!r}"
            )
        self.x = np.linspace(x0, x1, config.grid_points)
        self.dx = (x1 - x0) / (config.grid_points - 1)
        sgn = math.copysign(1.0, kappa)
        c = _centrifugal_c(fractality)
        self.a_coef = 2.0 * np.exp(2.0 * alpha * self.x)
        self.b_coef = 2.0 * sgn * np.exp((2.0 * alpha - kappa) * self.x) - 0.25 * c * c
        # d_v = 2 d_s has no centrifugal barrier; the allowed region then
        # reaches the inner grid edge by construction rather than by error
        self.has_barrier = c != 0.0
        self.g0 = math.exp(0.5 * x0)
        self.gstep = math.exp(0.5 * self.dx)
        self.v0 = _START_AMPLITUDE
        # regular indicial branch v ~ e^(|c| x / 2)
        self.v1 = _START_AMPLITUDE * math.exp(0.5 * abs(c) * self.dx)

    def forbidden_cap(self, e_signed):
        """(cap_index, total_forbidden_action) for a trial energy.

        Returns cap_index = -1 when the classically allowed region touches
        either grid edge (the grid cannot hold this state).
        """
        w = e_signed * self.a_coef + self.b_coef
        allowed = np.nonzero(w > 0.0)[0]
        if allowed.size == 0:
            raise NoBoundStateError(
                f"no classically allowed region on the grid at E_tilde = {e_signed!r}"
            )
        if (self.has_barrier and allowed[0] <= 1) or allowed[-1] >= self.x.size - 2:
            return -1, 0.0
        i_turn = int(allowed[-1])
        tail = np.sqrt(np.maximum(-w[i_turn + 1 :], 0.0)) * self.dx
        cum = np.cumsum(tail)
        total = float(cum[-1])
        if total < ACTION_CAP:
            return -1, total
        cap = i_turn + 1 + int(np.searchsorted(cum, ACTION_CAP))
        return min(cap, self.x.size - 1), total

    def shoot(self, e_signed, cap_index, v_out=None):
        return _kernels.shoot_log_grid(
            e_signed, self.a_coef, self.b_coef, self.dx, self.g0, self.gstep,
            self.v0, self.v1, cap_index, v_out,
        )


def _prepare_problem(fractality, kappa, config, e_seed_signed, r_scale):
    """Build a grid long enough to bury the outer turning point under
    ACTION_CAP worth of forbidden action at the seed energy."""
    r_end = config.r_outer_factor * r_scale
    for _ in range(_MAX_EXTENSIONS):
        problem = _ShootingProblem(fractality, kappa, config, r_end)
        cap, _total = problem.forbidden_cap(e_seed_signed)
        if cap >= 0:
            return problem, cap
        r_end *= 1.6
        if r_end > 1e30:
            break
    raise GridTooSmallError(
        f"could not accumulate forbidden action {ACTION_CAP} beyond the outer "
        f"turning point within r_end <= {r_end!r}"
    )


def shoot_eigenvalue(fractality, kappa, n, config=DEFAULT_ORACLE_CONFIG,
                     wkb_config=DEFAULT_CONFIG, seed_level=None):
    """Locate level n by node-count bisection of the shooting solution.

    The bracket starts from the WKB energy (pass ``seed_level`` to reuse an
    already solved one) and expands geometrically until it straddles the
    n-1 -> n node transition; bisection then runs to ``node_tol`` relative
    width and keeps going to the double-precision floor so the endpoint
    amplitude stays far below the wavefunction peak.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"n must be an integer, got {n!r}")
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    kappa = _require_kappa(kappa)
    # the model has no bound spectrum at or below the scale-free locus;
    # refuse rather than integrate a collapsing equation
    _require_margin(fractality, kappa, wkb_config.min_margin, "shoot_eigenvalue")
    if seed_level is None:
        seed_level = solve_level(fractality, kappa, n, wkb_config)
    elif not isinstance(seed_level, SpectrumLevel) or seed_level.n != n:
        raise DomainError(f"seed_level must be a SpectrumLevel for n={n}")

    sgn = math.copysign(1.0, kappa)
    sign_e = -sgn
    try:
        r_asym, _ = rydberg_asymptote(fractality, kappa, n)
    except DomainError:
        r_asym = seed_level.r_max
    r_scale = max(r_asym, 1.1 * seed_level.r_max)
    problem, cap = _prepare_problem(
        fractality, kappa, config, sign_e * seed_level.e_abs, r_scale
    )

    # sigma parametrizes ln |E_tilde| oriented so node count is nondecreasing
    s = 1.0 if sign_e > 0.0 else -1.0
    history = []

    def evaluate(sigma):
        e_signed = sign_e * math.exp(s * sigma)
        nodes, resid, last_node, end_sign = problem.shoot(e_signed, cap)
        history.append((sigma, nodes))
        return nodes, resid, last_node, end_sign

    sigma0 = s * math.log(seed_level.e_abs)
    nodes0 = evaluate(sigma0)[0]

    if nodes0 <= n - 1:
        lo = sigma0
        step = 0.4
        for _ in range(_MAX_DOUBLINGS):
            hi = lo + step
            if evaluate(hi)[0] >= n:
                break
            lo = hi
            step *= 2.0
        else:
            raise ConvergenceError(f"node bracket for n={n} not found above the seed")
    else:
        hi = sigma0
        step = 0.4
        for _ in range(_MAX_DOUBLINGS):
            lo = hi - step
            if evaluate(lo)[0] <= n - 1:
                break
            hi = lo
            step *= 2.0
        else:
            raise ConvergenceError(f"node bracket for n={n} not found below the seed")
    # tighten [lo, hi] so that count(lo) <= n-1 < n <= count(hi)
    for _ in range(600):
        if hi - lo <= 2.5e-16 * max(1.0, abs(lo), abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if evaluate(mid)[0] >= n:
            hi = mid
        else:
            lo = mid
    else:
        raise ConvergenceError(f"node bisection for n={n} exceeded its iteration budget")

    # node count must have been monotone along sigma throughout
    ordered = sorted(history)
    for (s1, c1), (s2, c2) in zip(ordered, ordered[1:]):
        if s2 > s1 and c2 < c1:
            raise ConvergenceError(
                f"node count not monotone in energy near n={n}: "
                f"{c1} at {s1:.6g} vs {c2} at {s2:.6g}"
            )

    nodes_lo, resid_lo, _last_node_lo, _ = problem.shoot(sign_e * math.exp(s * lo), cap)
    nodes_hi = evaluate(hi)[0]
    if nodes_lo != n - 1 or nodes_hi != n:
        raise ConvergenceError(
            f"bisection for n={n} closed on a {nodes_lo} -> {nodes_hi} node "
            "transition; levels may be unresolvably close"
        )

    # the cap was placed at the seed energy; re-check that the converged
    # energy's outer turning point is still buried under enough forbidden
    # action inside the used cap (otherwise this is a box eigenvalue)
    e_root = math.exp(s * 0.5 * (lo + hi))
    w_root = sign_e * e_root * problem.a_coef[: cap + 1] + problem.b_coef[: cap + 1]
    allowed_root = np.nonzero(w_root > 0.0)[0]
    i_turn = int(allowed_root[-1]) if allowed_root.size else -1
    if i_turn < 0 or i_turn >= cap - 1:
        raise GridTooSmallError(
            f"classically allowed region reaches the integration cap for n={n}; "
            "increase grid_points or r_outer_factor"
        )
    action_past_turn = float(
        np.sqrt(np.maximum(-w_root[i_turn + 1 :], 0.0)).sum()
    ) * problem.dx
    if action_past_turn < _MIN_ROOT_ACTION:
        raise GridTooSmallError(
            f"only {action_past_turn:.2f} units of forbidden action remain beyond "
            f"the outer turning point at the converged energy for n={n} "
            f"(need {_MIN_ROOT_ACTION}); increase r_outer_factor"
        )
    if resid_lo > 1e-3:
        raise ConvergenceError(
            f"boundary residual {resid_lo:.3e} exceeds 1e-3 at n={n}; "
            "the shooting solution is contaminated by the growing branch"
        )

    e_abs = e_root
    return OracleLevel(n=n, e_abs=e_abs, node_count=nodes_lo, boundary_residual=resid_lo)


def compare_wkb_oracle(fractality, kappa, n_list, wkb_config=DEFAULT_CONFIG,
                       oracle_config=DEFAULT_ORACLE_CONFIG):
    """Solve each level both ways; rows sorted by n.

    Per-level failures are collected, and a :class:`SpectrumError` carrying
    the completed rows is raised at the end if any level failed.
    """
    ns = sorted(set(n_list))
    if not ns:
        return []
    rows = []
    failures = []
    for n in ns:
        try:
            wkb_level = solve_level(fractality, kappa, n, wkb_config)
            oracle_level = shoot_eigenvalue(
                fractality, kappa, n, oracle_config, wkb_config, seed_level=wkb_level
            )
            rel = abs(wkb_level.e_abs - oracle_level.e_abs) / oracle_level.e_abs
            rows.append(ComparisonRow(n, wkb_level.e_abs, oracle_level.e_abs, rel))
        except FractalAtomError as exc:
            failures.append((n, exc))
    if failures:
        failed = ", ".join(str(n) for n, _ in failures)
        raise SpectrumError(
            f"{len(failures)} of {len(ns)} comparisons failed (n = {failed}); "
            f"first cause: {failures[0][1]}",
            rows,
            failures,
        )
    return rows


def wavefunction_samples(fractality, kappa, e_abs, r_outer, config=DEFAULT_ORACLE_CONFIG):
    """Sampled radial amplitude Psi_tilde(r) at a given |E_tilde|.

    Shoots once across [r_inner, r_outer] with the integration cap applied,
    and returns (r, psi) with psi normalized to unit peak magnitude. Meant
    for diagnostics (indicial behavior, node placement), not for eigenvalues.
    """
    kappa = _require_kappa(kappa)
    e_abs = _require_finite("e_abs", e_abs)
    if e_abs <= 0.0:
        raise DomainError(f"e_abs must be positive, got {e_abs}")
    r_outer = _require_finite("r_outer", r_outer)
    problem = _ShootingProblem(fractality, kappa, config, r_outer)
    sgn = math.copysign(1.0, kappa)
    e_signed = -sgn * e_abs
    cap, _ = problem.forbidden_cap(e_signed)
    if cap < 0:
        cap = problem.x.size - 1
    v = np.empty(cap + 1)
    problem.shoot(e_signed, cap, v_out=v)
    x = problem.x[: cap + 1]
    psi = v * np.exp(0.5 * x)
    peak = float(np.max(np.abs(psi)))
    if peak > 0.0:
        psi = psi / peak
    return np.exp(x), psi
