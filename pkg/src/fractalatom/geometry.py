"""Fractal measure geometry.

A medium is characterized by two independent non-integer dimensions: the
volume dimension ``d_v`` scaling the measure of balls, V(r) ~ r^d_v, and the
surface dimension ``d_s`` scaling the measure of their boundaries,
A(r) ~ r^d_s. In a smooth d-dimensional space d_v = d and d_s = d - 1; a
fractal decouples the two. The anomalous exponent alpha = d_v - d_s plays the
role that the single "1" plays in smooth spaces: it controls how radial
derivatives pick up powers of r under the volume-averaged Laplacian and
gradient, and every spectral formula downstream depends on the pair only
through (alpha, d_v, d_s).

This module owns the validated :class:`Fractality` value type and the smooth
building blocks: ball volume and area measures, the radial Laplacian
coefficients, the radial gradient coefficient, and the gamma function they
are all built from.
"""

import math
from dataclasses import dataclass

from .errors import DomainError, EmbeddingBoundError

__all__ = [
    "MIN_DIMENSION_GAP",
    "Fractality",
    "LaplacianCoefficients",
    "embedded_fractality",
    "gamma",
    "log_gamma",
    "ball_volume",
    "ball_area",
    "laplacian_prefactor",
    "laplacian_coefficients",
    "gradient_coefficient",
]

# Smallest admissible d_v - d_s. Below this the anomalous exponent is
# numerically indistinguishable from zero and every alpha^-1 blows up.
MIN_DIMENSION_GAP = 1e-9

# Lanczos approximation, g = 7, 9 coefficients. Relative error < 1e-13
# over the positive real axis after reflection.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _require_finite(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return float(value)


def _lanczos_series(x):
    # x >= 0.5 assumed
    acc = _LANCZOS_COEFFS[0]
    for k in range(1, len(_LANCZOS_COEFFS)):
        acc += _LANCZOS_COEFFS[k] / (x - 1.0 + k)
    return acc


def gamma(x):
    """Gamma function on the positive real axis.

    Lanczos approximation (g=7), reflected below 1/2. Arguments where the
    result would overflow a double (x > ~171.6) raise :class:`DomainError`
    rather than returning inf; use :func:`log_gamma` there.
    """
    x = _require_finite("gamma argument", x)
    if x <= 0.0:
        raise DomainError(f"gamma requires a positive argument, got {x}")
    if x > 171.6:
        raise DomainError(
            f"gamma({x}) overflows a double; use log_gamma for large arguments"
        )
    if x < 0.5:
        # Reflection: gamma(x) gamma(1-x) = pi / sin(pi x); sin > 0 on (0,1).
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    s = _lanczos_series(x)
    t = x - 0.5 + _LANCZOS_G
    # exp-composed form so t**(x-0.5) cannot overflow before e^-t tames it
    return math.sqrt(2.0 * math.pi) * s * math.exp((x - 0.5) * math.log(t) - t)


def log_gamma(x):
    """Natural log of the gamma function for positive real x."""
    x = _require_finite("log_gamma argument", x)
    if x <= 0.0:
        raise DomainError(f"log_gamma requires a positive argument, got {x}")
    if x < 0.5:
        return math.log(math.pi / math.sin(math.pi * x)) - log_gamma(1.0 - x)
    s = _lanczos_series(x)
    t = x - 0.5 + _LANCZOS_G
    return 0.5 * math.log(2.0 * math.pi) + math.log(s) + (x - 0.5) * math.log(t) - t


@dataclass(frozen=True)
class Fractality:
    """A pair of fractal dimensions (d_v, d_s) with d_v > d_s > 0.

    The constructor rejects non-finite values, d_s <= 0, and gaps
    d_v - d_s below :data:`MIN_DIMENSION_GAP`. The Euclidean line d = 1
    (which would need d_s = 0) is reachable only through
    ``stability.euclidean_fractality``.
    """

    d_v: float
    d_s: float

    def __post_init__(self):
        d_v = _require_finite("d_v", self.d_v)
        d_s = _require_finite("d_s", self.d_s)
        object.__setattr__(self, "d_v", d_v)
        object.__setattr__(self, "d_s", d_s)
        if d_s <= 0.0:
            raise DomainError(f"d_s must be positive, got {d_s}")
        if d_v - d_s < MIN_DIMENSION_GAP:
            raise DomainError(
                f"d_v must exceed d_s by at least {MIN_DIMENSION_GAP}, "
                f"got d_v={d_v}, d_s={d_s}"
            )

    def alpha(self):
        """Anomalous exponent alpha = d_v - d_s."""
        return self.d_v - self.d_s


def _boundary_fractality(d_v, d_s):
    """Construct a Fractality bypassing the d_s > 0 check.

    Internal; exists solely so the d = 1 Euclidean line (d_v=1, d_s=0) can be
    represented. All other invariants still apply.
    """
    d_v = _require_finite("d_v", d_v)
    d_s = _require_finite("d_s", d_s)
    if d_s < 0.0:
        raise DomainError(f"d_s must be non-negative, got {d_s}")
    if d_v - d_s < MIN_DIMENSION_GAP:
        raise DomainError(f"d_v must exceed d_s, got d_v={d_v}, d_s={d_s}")
    f = object.__new__(Fractality)
    object.__setattr__(f, "d_v", d_v)
    object.__setattr__(f, "d_s", d_s)
    return f


def embedded_fractality(d_v, d_s):
    """Fractality constrained to fit inside ordinary 3-space.

    A fractal embedded in R^3 cannot fill more than the ambient volume
    (d_v <= 3) nor bound it by more than an ordinary surface (d_s <= 2).
    """
    f = Fractality(d_v, d_s)
    if f.d_v > 3.0:
        raise EmbeddingBoundError(f"embedded scenario requires d_v <= 3, got {f.d_v}")
    if f.d_s > 2.0:
        raise EmbeddingBoundError(f"embedded scenario requires d_s <= 2, got {f.d_s}")
    return f


def ball_volume(fractality, r):
    """Measure of the ball of radius r: pi^(d_v/2) / Gamma((d_v+2)/2) * r^d_v."""
    r = _require_finite("r", r)
    if r <= 0.0:
        raise DomainError(f"r must be positive, got {r}")
    d_v = fractality.d_v
    return math.pi ** (0.5 * d_v) / gamma(0.5 * (d_v + 2.0)) * r**d_v


def ball_area(fractality, r):
    """Measure of the sphere of radius r: 2 pi^((d_s+1)/2) / Gamma((d_s+1)/2) * r^d_s."""
    r = _require_finite("r", r)
    if r <= 0.0:
        raise DomainError(f"r must be positive, got {r}")
    d_s = fractality.d_s
    return 2.0 * math.pi ** (0.5 * (d_s + 1.0)) / gamma(0.5 * (d_s + 1.0)) * r**d_s


def laplacian_prefactor(fractality):
    """Dimensionless prefactor F multiplying the radial fractal Laplacian.

    F = Gamma(alpha/2) Gamma(d_v/2) / (pi^(alpha - 1/2) Gamma((d_s+1)/2)).
    Reduces to 1 on every Euclidean pair (d, d-1).
    """
    a = fractality.alpha()
    return (
        gamma(0.5 * a)
        * gamma(0.5 * fractality.d_v)
        / (math.pi ** (a - 0.5) * gamma(0.5 * (fractality.d_s + 1.0)))
    )


@dataclass(frozen=True)
class LaplacianCoefficients:
    """Radial form of the volume-averaged Laplacian.

    Acting on a radial function psi(r),

        lap psi = prefactor * [ r^second_order_exponent * psi''
                  + first_order_numerator * r^first_order_exponent * psi' ].

    ``first_order_numerator`` is -d_v + 2 d_s + 1; the exponents are 2-2alpha
    and 1-2alpha. On Euclidean pairs this collapses to psi'' + (d-1)/r psi'.
    """

    prefactor: float
    second_order_exponent: float
    first_order_exponent: float
    first_order_numerator: float

    def apply(self, second_derivative, first_derivative, r):
        """Evaluate the radial Laplacian given psi'' and psi' at radius r."""
        if r <= 0.0:
            raise DomainError(f"r must be positive, got {r}")
        return self.prefactor * (
            r**self.second_order_exponent * second_derivative
            + self.first_order_numerator * r**self.first_order_exponent * first_derivative
        )


def laplacian_coefficients(fractality):
    """Coefficients of the radial fractal Laplacian for this fractality."""
    a = fractality.alpha()
    return LaplacianCoefficients(
        prefactor=laplacian_prefactor(fractality),
        second_order_exponent=2.0 - 2.0 * a,
        first_order_exponent=1.0 - 2.0 * a,
        first_order_numerator=-fractality.d_v + 2.0 * fractality.d_s + 1.0,
    )


def gradient_coefficient(fractality, r):
    """Radial gradient measure factor: Gamma(alpha/2) / pi^(alpha/2) * r^(1-alpha).

    The radial component of the volume-averaged gradient of S(r) is this
    coefficient times dS/dr. Equals 1 for every Euclidean pair and every r.
    """
    r = _require_finite("r", r)
    if r <= 0.0:
        raise DomainError(f"r must be positive, got {r}")
    a = fractality.alpha()
    return gamma(0.5 * a) / math.pi ** (0.5 * a) * r ** (1.0 - a)
