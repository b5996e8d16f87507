"""Large-quantum-number scaling laws.

Dropping the centrifugal correction, the quantization integral evaluates in
closed form and yields power laws in the level number n:

    |E_n| ~ (pi n / Theta)^(-2 kappa / (2 alpha - kappa)),
    r_n   ~ (pi n / Theta)^(+2      / (2 alpha - kappa)),

with a single spectral constant Theta fixed by (alpha, kappa). For hydrogen
(alpha = 1, kappa = 1) these are the Rydberg law |E_n| = 1/(2 n^2) and
r_n = 2 n^2. The energy exponent changes sign with kappa: confining
potentials (kappa < 0) have spectra unbounded above instead of accumulating
at zero. Both exponents diverge on the scale-free locus 2 alpha = kappa.

Theta itself is the unit-energy momentum integral; it is exposed both in
closed form (a ratio of gamma functions) and as an adaptive quadrature of
the defining integral, which the test suite plays against each other.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    DegenerateExponentError,
    DomainError,
    QuadratureError,
    ScaleFreeBoundaryError,
    UnstableFractalityError,
)
from .geometry import gamma, log_gamma, _require_finite
from .potentials import DEGENERATE_EXPONENT_TOLERANCE
from .stability import SCALE_FREE_TOLERANCE

__all__ = [
    "RydbergExponents",
    "theta_closed_form",
    "theta_quadrature",
    "rydberg_exponents",
    "exponents_full",
    "exponents_embedded",
    "rydberg_asymptote",
    "fit_loglog_slope",
]

# Endpoint singularity z^p is integrable for p > -1, but tanh-sinh in double
# precision cannot place abscissas closer than ~1e-300 to the endpoint; the
# truncated tail is negligible only when 1 + p clears this bound.
MIN_ENDPOINT_EXPONENT = 0.05

# Gamma arguments above this go through log-gamma to dodge overflow.
_GAMMA_DIRECT_LIMIT = 170.0


def _check_kappa_margin(fractality, kappa):
    kappa = _require_finite("kappa", kappa)
    if abs(kappa) < DEGENERATE_EXPONENT_TOLERANCE:
        raise DegenerateExponentError(f"kappa={kappa:.3e} is degenerate")
    margin = 2.0 * fractality.alpha() - kappa
    if abs(margin) < SCALE_FREE_TOLERANCE:
        raise ScaleFreeBoundaryError(
            f"2 alpha - kappa = {margin:.3e} sits on the scale-free locus; "
            "the large-n scaling is singular there"
        )
    if margin < 0.0:
        raise UnstableFractalityError(
            f"2 alpha - kappa = {margin:.3e} < 0: no bound spectrum to expand"
        )
    return kappa, margin


def _gamma_ratio(x, y):
    """Gamma(x) / Gamma(y), routed through logs when either overflows."""
    if x < _GAMMA_DIRECT_LIMIT and y < _GAMMA_DIRECT_LIMIT:
        return gamma(x) / gamma(y)
    return math.exp(log_gamma(x) - log_gamma(y))


@dataclass(frozen=True)
class RydbergExponents:
    """Scaling exponents of level-number power laws, plus the spectral constant."""

    energy_exponent: float
    size_exponent: float
    theta: float


def theta_closed_form(fractality, kappa):
    """Spectral constant Theta as a ratio of gamma functions.

    For kappa > 0:  sqrt(pi/2) Gamma(alpha/kappa - 1/2) / (kappa Gamma(alpha/kappa + 1)).
    For kappa < 0:  sqrt(pi/2) Gamma(alpha/|kappa|) / (|kappa| Gamma(alpha/|kappa| + 3/2)).
    """
    kappa, _ = _check_kappa_margin(fractality, kappa)
    a = fractality.alpha()
    root = math.sqrt(0.5 * math.pi)
    if kappa > 0.0:
        ratio = a / kappa
        return root * _gamma_ratio(ratio - 0.5, ratio + 1.0) / kappa
    ratio = a / abs(kappa)
    return root * _gamma_ratio(ratio, ratio + 1.5) / abs(kappa)


def theta_quadrature(fractality, kappa, abs_tol=1e-10):
    """Spectral constant by tanh-sinh quadrature of its defining integral,

        Theta = integral_0^1 sqrt(2 z^(2 alpha - 2) sgn(kappa) (z^-kappa - 1)) dz.

    Independent of :func:`theta_closed_form` except for sharing (alpha, kappa).
    """
    kappa, margin = _check_kappa_margin(fractality, kappa)
    if abs_tol <= 0.0:
        raise DomainError(f"abs_tol must be positive, got {abs_tol}")
    a = fractality.alpha()
    # exponent of the z -> 0 singularity after factoring the root
    p_inner = 0.5 * (2.0 * a - 2.0 - kappa) if kappa > 0.0 else a - 1.0
    if 1.0 + p_inner < MIN_ENDPOINT_EXPONENT:
        raise QuadratureError(
            f"inner endpoint exponent {p_inner:.4f} too close to -1 for "
            "double-precision quadrature; use theta_closed_form"
        )
    sgn = math.copysign(1.0, kappa)
    value, err, level, converged = _kernels.action_quadrature(
        2.0 * a - 2.0, kappa, sgn, 1.0, 0.0, 0.0, 1.0, abs_tol, 12
    )
    if not converged:
        raise QuadratureError(
            f"theta quadrature stalled at level {level} with estimate {value!r} "
            f"and step difference {err:.3e} > {abs_tol:.3e}"
        )
    return value


def rydberg_exponents(fractality, kappa):
    """Exponents of the large-n power laws for a stable (fractality, kappa)."""
    kappa, margin = _check_kappa_margin(fractality, kappa)
    size_exponent = 2.0 / margin
    # energy = -kappa * size keeps the |E_n| = r_n^-kappa identity exact
    return RydbergExponents(
        energy_exponent=-kappa * size_exponent,
        size_exponent=size_exponent,
        theta=theta_closed_form(fractality, kappa),
    )


def exponents_full(fractality):
    """Scaling exponents in the full-fractal scenario, kappa = 2 d_s - d_v."""
    return rydberg_exponents(fractality, 2.0 * fractality.d_s - fractality.d_v)


def exponents_embedded(fractality):
    """Scaling exponents in the embedded scenario (ambient Coulomb, kappa = 1)."""
    from .geometry import embedded_fractality

    embedded_fractality(fractality.d_v, fractality.d_s)  # enforce bounds
    return rydberg_exponents(fractality, 1.0)


def rydberg_asymptote(fractality, kappa, n):
    """Large-n size and energy, (r_n, |E_n|) = ((pi n/Theta)^s, (pi n/Theta)^e).

    Exact for hydrogen at every n; an asymptote elsewhere.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"n must be an integer, got {n!r}")
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    exps = rydberg_exponents(fractality, kappa)
    x = math.pi * n / exps.theta
    r_n = x**exps.size_exponent
    e_n = x**exps.energy_exponent
    if not (math.isfinite(r_n) and math.isfinite(e_n) and r_n > 0.0 and e_n > 0.0):
        raise DomainError(
            f"asymptote overflows double precision at n={n} "
            f"(margin {2.0 * fractality.alpha() - kappa:.3e})"
        )
    return r_n, e_n


def fit_loglog_slope(ns, values):
    """Least-squares slope of ln(values) against ln(ns)."""
    ns = np.asarray(ns, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    if ns.shape != values.shape or ns.size < 2:
        raise DomainError("need two equal-length samples to fit a slope")
    if np.any(ns <= 0.0) or np.any(values <= 0.0):
        raise DomainError("log-log fit requires positive samples")
    return float(np.polyfit(np.log(ns), np.log(values), 1)[0])
