"""Semiclassical bound-state spectra.

Separating the fractal Schroedinger equation radially and absorbing the
first-derivative term with the substitution Psi_tilde = r^w Psi,
w = (-d_v + 2 d_s + 1)/2, leaves a one-dimensional equation whose momentum
(after rescaling r and E to dimensionless r_tilde, E_tilde) is

    p(r)^2 = 2 r^(2 alpha - 2) [E_tilde + sgn(kappa) r^-kappa] - C r^-2,

with C = ((-d_v + 2 d_s)^2 - 1)/4 from the substitution itself, or the
Langer-corrected C = (-d_v + 2 d_s)^2 / 4 used for quantization (the
correction repairs the small-r phase of the radial problem; for hydrogen it
is what makes the semiclassical spectrum exact). Bound levels solve the
quantization rule

    integral_{r_min}^{r_max} p dr = pi [(n - 1) + mu/4],  n = 1, 2, ...

with Maslov index mu (two soft turning points: mu = 2). Energies follow the
attraction ansatz E_tilde = -sgn(kappa) |E_tilde|: binding below zero for
kappa > 0, a confined ladder above zero for kappa < 0.

The action is strictly monotone in |E_tilde| (decreasing for kappa > 0,
increasing for kappa < 0), so each level is a bracketed one-dimensional
root solve; seeds come from the closed-form large-n asymptote.
"""

import math
import warnings
from dataclasses import dataclass

from . import _kernels
from .asymptotics import MIN_ENDPOINT_EXPONENT, rydberg_asymptote
from .errors import (
    BracketError,
    ConvergenceError,
    DomainError,
    NearThresholdWarning,
    NoBoundStateError,
    QuadratureError,
    ScaleFreeBoundaryError,
    SpectrumError,
    UnstableFractalityError,
    FractalAtomError,
)
from .geometry import laplacian_prefactor, _require_finite

__all__ = [
    "WkbConfig",
    "ScalingContext",
    "SpectrumLevel",
    "scaling_context",
    "wavefunction_exponent",
    "radial_momentum",
    "langer_momentum",
    "turning_points",
    "action_integral",
    "solve_level",
    "spectrum",
]

_QUAD_MAX_LEVEL = 12


@dataclass(frozen=True)
class WkbConfig:
    """Solver knobs for the quantization-rule root solve."""

    maslov_index: float = 2.0
    quadrature_abs_tol: float = 1e-10
    energy_rel_tol: float = 1e-10
    max_bracket_doublings: int = 200
    min_margin: float = 1e-4

    def __post_init__(self):
        if not (math.isfinite(self.maslov_index) and self.maslov_index >= 0.0):
            raise DomainError(f"maslov_index must be non-negative, got {self.maslov_index}")
        if not self.quadrature_abs_tol > 0.0:
            raise DomainError("quadrature_abs_tol must be positive")
        if not self.energy_rel_tol > 0.0:
            raise DomainError("energy_rel_tol must be positive")
        if self.max_bracket_doublings < 1:
            raise DomainError("max_bracket_doublings must be at least 1")
        if not self.min_margin > 0.0:
            raise DomainError("min_margin must be positive")


DEFAULT_CONFIG = WkbConfig()


@dataclass(frozen=True)
class ScalingContext:
    """Conversion between physical and dimensionless radial problems.

    r_tilde = r * length_scale and E_tilde = E * energy_scale strip hbar,
    mass, the Laplacian prefactor, and the potential strength out of the
    radial equation, leaving (alpha, kappa) as the only parameters.
    """

    length_scale: float
    energy_scale: float
    hbar: float
    mass: float

    def rescale_length(self, r):
        return r * self.length_scale

    def physical_length(self, r_tilde):
        return r_tilde / self.length_scale

    def rescale_energy(self, e):
        return e * self.energy_scale

    def physical_energy(self, e_tilde):
        return e_tilde / self.energy_scale


@dataclass(frozen=True)
class SpectrumLevel:
    """One quantized level of the dimensionless radial problem.

    ``e_abs`` is |E_tilde|; ``e_signed`` carries the attraction ansatz sign.
    ``action_residual`` is the quantization-rule mismatch at the reported
    energy. ``degenerate_inner`` marks the measure-zero fractalities
    (d_v = 2 d_s) whose inner turning point sits exactly at r = 0.
    """

    n: int
    e_abs: float
    e_signed: float
    r_min: float
    r_max: float
    action_residual: float
    degenerate_inner: bool = False


def _require_kappa(kappa):
    kappa = _require_finite("kappa", kappa)
    if kappa == 0.0:
        raise DomainError("kappa must be nonzero")
    return kappa


def _require_margin(fractality, kappa, min_margin, context):
    """Stability margin 2 alpha - kappa, or a classified error below min_margin."""
    margin = 2.0 * fractality.alpha() - kappa
    if margin >= min_margin:
        return margin
    if margin < 0.0:
        raise UnstableFractalityError(
            f"{context}: margin 2 alpha - kappa = {margin:.6e} < 0, the atom "
            "collapses and no bound spectrum exists"
        )
    raise ScaleFreeBoundaryError(
        f"{context}: margin 2 alpha - kappa = {margin:.6e} is below the "
        f"supported minimum {min_margin:.1e}; scales separate beyond double precision"
    )


def wavefunction_exponent(fractality):
    """Exponent w in Psi_tilde = r_tilde^w Psi: (-d_v + 2 d_s + 1) / 2."""
    return 0.5 * (-fractality.d_v + 2.0 * fractality.d_s + 1.0)


def _centrifugal_c(fractality):
    # coefficient c = -d_v + 2 d_s; exact zero on the d_v = 2 d_s line
    return -fractality.d_v + 2.0 * fractality.d_s


def scaling_context(fractality, potential, hbar=1.0, mass=1.0, min_margin=DEFAULT_CONFIG.min_margin):
    """Build the physical-to-dimensionless conversion for this system."""
    hbar = _require_finite("hbar", hbar)
    mass = _require_finite("mass", mass)
    if hbar <= 0.0 or mass <= 0.0:
        raise DomainError("hbar and mass must be positive")
    kappa = potential.kappa
    _require_margin(fractality, kappa, min_margin, "scaling_context")
    prefactor = laplacian_prefactor(fractality)
    base = hbar**2 * prefactor / (mass * potential.magnitude)
    length_scale = base ** (1.0 / (kappa - 2.0 * fractality.alpha()))
    energy_scale = base ** (-kappa / (kappa - 2.0 * fractality.alpha())) / potential.magnitude
    if not (
        math.isfinite(length_scale)
        and math.isfinite(energy_scale)
        and length_scale > 0.0
        and energy_scale > 0.0
    ):
        raise DomainError(
            "rescaling factors overflow double precision "
            f"(base {base:.3e}, margin {2.0 * fractality.alpha() - kappa:.3e})"
        )
    return ScalingContext(length_scale=length_scale, energy_scale=energy_scale, hbar=hbar, mass=mass)


def _radicand(fractality, kappa, e_abs, r, langer):
    sgn = math.copysign(1.0, kappa)
    c = _centrifugal_c(fractality)
    coeff = c * c / 4.0 if langer else (c * c - 1.0) / 4.0
    a = fractality.alpha()
    e_signed = -sgn * e_abs
    return 2.0 * r ** (2.0 * a - 2.0) * (e_signed + sgn * r**-kappa) - coeff / (r * r)


def _momentum(fractality, kappa, e_abs, r, langer):
    kappa = _require_kappa(kappa)
    e_abs = _require_finite("e_abs", e_abs)
    r = _require_finite("r", r)
    if e_abs <= 0.0:
        raise DomainError(f"e_abs must be positive, got {e_abs}")
    if r <= 0.0:
        raise DomainError(f"r must be positive, got {r}")
    rad = _radicand(fractality, kappa, e_abs, r, langer)
    if rad < 0.0 or math.isnan(rad):
        raise DomainError(
            f"momentum undefined at r={r!r}: radicand {rad!r} < 0 "
            "(outside the classically allowed region)"
        )
    return math.sqrt(rad)


def radial_momentum(fractality, kappa, e_abs, r):
    """Dimensionless radial momentum with the bare substitution coefficient
    ((-d_v+2d_s)^2 - 1)/4. Defined only inside the classically allowed region."""
    return _momentum(fractality, kappa, e_abs, r, langer=False)


def langer_momentum(fractality, kappa, e_abs, r):
    """Radial momentum with the Langer-corrected coefficient (-d_v+2d_s)^2/4,
    the integrand of the quantization rule."""
    return _momentum(fractality, kappa, e_abs, r, langer=True)


def _log_radicand(y, alpha, kappa, sgn, e_abs, cc):
    # r^2 * langer radicand at r = e^y; strictly unimodal in y
    return 2.0 * sgn * (math.exp((2.0 * alpha - kappa) * y) - e_abs * math.exp(2.0 * alpha * y)) - cc


def _bisect_log_root(lo, hi, func, iterations=200):
    """Root of func between lo and hi given values of opposite sign there.

    lo carries the negative sign; the endpoints may come in either order.
    Bisection in y = ln r; converges to ~1e-14 relative in r.
    """
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if abs(hi - lo) <= 1e-14 * (1.0 + abs(mid)):
            break
        if func(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def turning_points(fractality, kappa, e_abs, config=DEFAULT_CONFIG):
    """Classical turning points (r_min, r_max) of the Langer momentum.

    Solved on the log axis, where r^2 p^2 is unimodal with a closed-form
    peak; each root is bracketed by geometric expansion and bisected.
    Fractalities on the d_v = 2 d_s line have r_min = 0 exactly (no
    centrifugal term survives) and a closed-form r_max.
    """
    kappa = _require_kappa(kappa)
    e_abs = _require_finite("e_abs", e_abs)
    if e_abs <= 0.0:
        raise DomainError(f"e_abs must be positive, got {e_abs}")
    _require_margin(fractality, kappa, 0.0, "turning_points")
    alpha = fractality.alpha()
    sgn = math.copysign(1.0, kappa)
    c = _centrifugal_c(fractality)
    cc = c * c / 4.0

    if cc == 0.0:
        return 0.0, e_abs ** (-1.0 / kappa)

    y_peak = math.log((2.0 * alpha - kappa) / (2.0 * alpha * e_abs)) / kappa
    g = lambda y: _log_radicand(y, alpha, kappa, sgn, e_abs, cc)
    peak = g(y_peak)
    if not peak > 0.0:
        raise NoBoundStateError(
            f"no classically allowed region at |E_tilde| = {e_abs!r} "
            f"(peak momentum^2 r^2 = {peak!r})"
        )

    def expand(direction):
        step = 1.0
        for _ in range(config.max_bracket_doublings):
            y = y_peak + direction * step
            if g(y) < 0.0:
                return y
            step *= 2.0
        raise BracketError(
            f"turning point bracket not found within "
            f"{config.max_bracket_doublings} doublings (|E_tilde| = {e_abs!r})"
        )

    y_lo = _bisect_log_root(expand(-1.0), y_peak, g)
    y_hi = _bisect_log_root(expand(+1.0), y_peak, g)
    return math.exp(y_lo), math.exp(y_hi)


def action_integral(fractality, kappa, e_abs, config=DEFAULT_CONFIG):
    """Quantization integral of the Langer momentum between its turning points."""
    r_min, r_max = turning_points(fractality, kappa, e_abs, config)
    alpha = fractality.alpha()
    sgn = math.copysign(1.0, kappa)
    c = _centrifugal_c(fractality)
    cc = c * c / 4.0
    if r_min == 0.0:
        # integrable endpoint singularity z^p; quadrature cannot resolve p -> -1
        p_inner = 0.5 * (2.0 * alpha - 2.0 - kappa) if kappa > 0.0 else alpha - 1.0
        if 1.0 + p_inner < MIN_ENDPOINT_EXPONENT:
            raise QuadratureError(
                f"inner endpoint exponent {p_inner:.4f} too close to -1 for "
                "double-precision quadrature (margin too small)"
            )
    value, err, level, converged = _kernels.action_quadrature(
        2.0 * alpha - 2.0, kappa, sgn, e_abs, cc, r_min, r_max,
        config.quadrature_abs_tol, _QUAD_MAX_LEVEL,
    )
    if not converged:
        raise QuadratureError(
            f"action quadrature stalled at level {level}: estimate {value!r}, "
            f"step difference {err:.3e} > {config.quadrature_abs_tol:.3e} "
            f"(|E_tilde| = {e_abs!r}, turning points [{r_min!r}, {r_max!r}])"
        )
    return value


def _check_monotone(evals, slack):
    evals = sorted(evals)
    for (t1, f1), (t2, f2) in zip(evals, evals[1:]):
        if t2 > t1 and f2 < f1 - slack:
            raise ConvergenceError(
                "action integral is not monotone across the bracket "
                f"(phi({t1:.6g}) = {f1:.6g} vs phi({t2:.6g}) = {f2:.6g}); "
                "quadrature tolerance is likely too loose"
            )


def solve_level(fractality, kappa, n, config=DEFAULT_CONFIG):
    """Solve the quantization rule for level n.

    The root solve runs on t = ln |E_tilde|, where the action is strictly
    monotone; the bracket grows geometrically from the large-n asymptote
    seed, then bisects to ``energy_rel_tol`` and applies one secant step.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"n must be an integer, got {n!r}")
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    kappa = _require_kappa(kappa)
    margin = _require_margin(fractality, kappa, config.min_margin, "solve_level")
    if margin < 10.0 * config.min_margin:
        warnings.warn(
            f"margin 2 alpha - kappa = {margin:.3e} is near the scale-free "
            "threshold; turning points separate exponentially and results "
            "lose relative accuracy",
            NearThresholdWarning,
            stacklevel=2,
        )

    target = math.pi * ((n - 1) + config.maslov_index / 4.0)
    sgn = math.copysign(1.0, kappa)
    direction = -1.0 if kappa > 0.0 else 1.0  # sign making phi increasing in t

    try:
        _, e_seed = rydberg_asymptote(fractality, kappa, n)
    except DomainError as exc:
        raise BracketError(f"energy seed unavailable for n={n}: {exc}") from exc

    def action_or_zero(e_abs):
        try:
            return action_integral(fractality, kappa, e_abs, config)
        except NoBoundStateError:
            # allowed region has shrunk away; continuous limit of the action
            return 0.0

    evals = []

    def phi(t):
        value = direction * (action_or_zero(math.exp(t)) - target)
        evals.append((t, value))
        return value

    t0 = math.log(e_seed)
    f0 = phi(t0)
    if f0 == 0.0:
        lo = hi = t0
        flo = fhi = f0
    elif f0 < 0.0:
        lo, flo = t0, f0
        step = 0.4
        for _ in range(config.max_bracket_doublings):
            hi = lo + step
            fhi = phi(hi)
            if fhi >= 0.0:
                break
            lo, flo = hi, fhi
            step *= 2.0
        else:
            raise BracketError(
                f"failed to bracket level n={n} above the seed within "
                f"{config.max_bracket_doublings} doublings"
            )
    else:
        hi, fhi = t0, f0
        step = 0.4
        for _ in range(config.max_bracket_doublings):
            lo = hi - step
            flo = phi(lo)
            if flo <= 0.0:
                break
            hi, fhi = lo, flo
            step *= 2.0
        else:
            raise BracketError(
                f"failed to bracket level n={n} below the seed within "
                f"{config.max_bracket_doublings} doublings"
            )

    iterations = 0
    while hi - lo > config.energy_rel_tol:
        iterations += 1
        if iterations > 500:
            raise ConvergenceError(
                f"energy bisection for n={n} exceeded 500 iterations "
                f"(bracket width {hi - lo:.3e})"
            )
        mid = 0.5 * (lo + hi)
        fm = phi(mid)
        if fm < 0.0:
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm

    if fhi != flo:
        t_root = lo - flo * (hi - lo) / (fhi - flo)
        t_root = min(max(t_root, lo), hi)
    else:
        t_root = 0.5 * (lo + hi)
    residual = direction * phi(t_root)

    _check_monotone(evals, slack=max(100.0 * config.quadrature_abs_tol, 1e-9))

    e_abs = math.exp(t_root)
    r_min, r_max = turning_points(fractality, kappa, e_abs, config)
    return SpectrumLevel(
        n=n,
        e_abs=e_abs,
        e_signed=-sgn * e_abs,
        r_min=r_min,
        r_max=r_max,
        action_residual=residual,
        degenerate_inner=(r_min == 0.0),
    )


def spectrum(fractality, kappa, n_lo, n_hi, config=DEFAULT_CONFIG):
    """Solve levels n_lo..n_hi inclusive.

    Per-level failures do not abort the batch: every level is attempted, and
    if any failed a :class:`SpectrumError` carrying the successful levels and
    the (n, exception) pairs is raised at the end.
    """
    for name, value in (("n_lo", n_lo), ("n_hi", n_hi)):
        if isinstance(value, bool) or not isinstance(value, int):
            raise DomainError(f"{name} must be an integer, got {value!r}")
    if n_lo < 1 or n_hi < n_lo:
        raise DomainError(f"need 1 <= n_lo <= n_hi, got [{n_lo}, {n_hi}]")
    levels = []
    failures = []
    for n in range(n_lo, n_hi + 1):
        try:
            levels.append(solve_level(fractality, kappa, n, config))
        except FractalAtomError as exc:
            failures.append((n, exc))
    if failures:
        failed = ", ".join(str(n) for n, _ in failures)
        raise SpectrumError(
            f"{len(failures)} of {n_hi - n_lo + 1} levels failed (n = {failed}); "
            f"first cause: {failures[0][1]}",
            levels,
            failures,
        )
    return levels
