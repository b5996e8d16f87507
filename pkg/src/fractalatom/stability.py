"""Stability of the atom against collapse and ionization.

Under the rescaling r -> lambda r the kinetic term of the radial Hamiltonian
scales as lambda^-2alpha and the potential as lambda^-kappa. A bound ground
state exists iff kinetic repulsion wins at short distance, i.e.
kappa < 2 alpha. The margin

    margin = 2 alpha - kappa

is therefore the single stability functional: positive = stable, zero =
scale-free (no length scale survives; the spectrum degenerates), negative =
unstable. In the full-fractal scenario kappa = 2 d_s - d_v, so the scale-free
locus is the line d_v = (4/3) d_s; in the embedded scenario kappa = 1 and the
locus is d_v = d_s + 1/2.

The classical counterpart asks whether the effective potential
U + L^2/(2 m r^2) has an interior minimum; for Euclidean integer dimensions
this reproduces the textbook result that circular orbits are stable only
below four dimensions, and its onset coincides with the quantum margin's
sign change.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError
from .geometry import Fractality, _boundary_fractality
from .potentials import Scenario

__all__ = [
    "SCALE_FREE_TOLERANCE",
    "Classification",
    "StabilityReport",
    "stability_margin",
    "margin_for_scenario",
    "hamiltonian_scaling_exponents",
    "classify_margin",
    "classify_quantum",
    "scale_free_locus_full",
    "scale_free_locus_embedded",
    "euclidean_fractality",
    "classify_classical_euclidean",
]

# Half-width of the margin band treated as exactly scale-free.
SCALE_FREE_TOLERANCE = 1e-9


class Classification(Enum):
    STABLE = "stable"
    SCALE_FREE = "scale_free"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class StabilityReport:
    scenario: Scenario
    classification: Classification
    margin: float
    kappa: float


def stability_margin(fractality, potential):
    """2 alpha - kappa; positive iff the atom is stable."""
    return 2.0 * fractality.alpha() - potential.kappa


def margin_for_scenario(fractality, scenario):
    """Stability margin without constructing the potential.

    Full scenario: 2 alpha - (2 d_s - d_v) = 3 d_v - 4 d_s, well defined even
    on the degenerate-exponent line where no power-law potential exists.
    """
    if scenario is Scenario.FULL_FRACTAL:
        return 2.0 * fractality.alpha() - (2.0 * fractality.d_s - fractality.d_v)
    if scenario is Scenario.EMBEDDED:
        return 2.0 * fractality.alpha() - 1.0
    raise DomainError(f"unknown scenario {scenario!r}")


def hamiltonian_scaling_exponents(fractality, potential):
    """Exponents (kinetic, potential) picked up under r -> lambda r.

    Returns (-2 alpha, -kappa); the two are equal exactly on the scale-free
    locus.
    """
    return (-2.0 * fractality.alpha(), -potential.kappa)


def classify_margin(margin):
    """Tri-state classification of a stability margin."""
    if abs(margin) <= SCALE_FREE_TOLERANCE:
        return Classification.SCALE_FREE
    return Classification.STABLE if margin > 0.0 else Classification.UNSTABLE


def classify_quantum(fractality, potential, scenario):
    """Classify the quantum atom for the given scenario's potential."""
    margin = stability_margin(fractality, potential)
    return StabilityReport(
        scenario=scenario,
        classification=classify_margin(margin),
        margin=margin,
        kappa=potential.kappa,
    )


def scale_free_locus_full(d_s):
    """d_v on the full-fractal scale-free line for a given d_s."""
    return 4.0 * d_s / 3.0


def scale_free_locus_embedded(d_s):
    """d_v on the embedded scale-free line for a given d_s."""
    return d_s + 0.5


def euclidean_fractality(d):
    """The smooth-space pair (d_v, d_s) = (d, d-1) for integer d >= 1.

    d = 1 sits on the d_s = 0 boundary and is built through the dedicated
    boundary constructor; all other invariants still hold.
    """
    if isinstance(d, bool) or not isinstance(d, int):
        raise DomainError(f"d must be an integer, got {d!r}")
    if d < 1:
        raise DomainError(f"d must be at least 1, got {d}")
    if d == 1:
        return _boundary_fractality(1.0, 0.0)
    return Fractality(float(d), float(d) - 1.0)


def _effective_derivatives(kappa, magnitude, angular_momentum, mass, r):
    """(d/dr, d2/dr2) of U_eff = U + L^2/(2 m r^2) at radius r.

    kappa = 0 means the attractive logarithmic potential U = |U| ln r, the
    Gauss-law result in two dimensions.
    """
    cent1 = -(angular_momentum**2) / (mass * r**3)
    cent2 = 3.0 * angular_momentum**2 / (mass * r**4)
    if kappa == 0.0:
        return magnitude / r + cent1, -magnitude / r**2 + cent2
    u1 = abs(kappa) * magnitude * r ** (-kappa - 1.0)
    u2 = -abs(kappa) * (kappa + 1.0) * magnitude * r ** (-kappa - 2.0)
    return u1 + cent1, u2 + cent2


def _has_interior_minimum(kappa, magnitude, angular_momentum, mass):
    """Whether U_eff has a stationary interior minimum (a stable circular orbit)."""
    if kappa == 2.0:
        # U and the barrier share the r^-2 shape; U_eff is monotone.
        return False
    coeff = magnitude if kappa == 0.0 else abs(kappa) * magnitude
    r_star = (angular_momentum**2 / (mass * coeff)) ** (1.0 / (2.0 - kappa))
    slope, curvature = _effective_derivatives(kappa, magnitude, angular_momentum, mass, r_star)
    if abs(slope) > 1e-9 * abs(curvature) * r_star:
        raise DomainError(f"stationary point solve failed at kappa={kappa}")
    return curvature > 0.0


def classify_classical_euclidean(d, angular_momentum=1.0, mass=1.0):
    """Stability of classical circular orbits around a point charge in
    Euclidean dimension d (attractive Gauss-law potential, kappa = d - 2).

    Returns STABLE or UNSTABLE; the classical problem has no scale-free
    in-between for integer d.
    """
    if isinstance(d, bool) or (not isinstance(d, int) and not (
        isinstance(d, float) and d.is_integer()
    )):
        raise DomainError(f"d must be an integer, got {d!r}")
    d = int(d)
    if d < 1:
        raise DomainError(f"d must be at least 1, got {d}")
    if angular_momentum <= 0.0 or mass <= 0.0:
        raise DomainError("angular_momentum and mass must be positive")
    stable = _has_interior_minimum(float(d - 2), 1.0, angular_momentum, mass)
    return Classification.STABLE if stable else Classification.UNSTABLE
