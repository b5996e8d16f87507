"""Electrostatic potentials of a point charge in fractal dimensions.

Gauss's law over a fractal sphere of area measure ~ r^d_s gives a field
~ r^-d_s. Integrating it back to a potential depends on the scenario:

* full fractal: the gradient itself carries the anomalous measure factor
  ~ r^(1-alpha), so the potential is a power law with exponent
  kappa = 2 d_s - d_v, attractive for either sign of kappa;
* embedded: the fractal matter sits in ordinary 3-space and the ambient
  Coulomb law survives, kappa = 1 with the usual 1/(4 pi) strength.

Both reduce to the same hydrogen potential on (d_v, d_s) = (3, 2). The
interaction is always written U(r) = -sgn(kappa) |U| r^-kappa so that it is
attractive and vanishes at large r for kappa > 0 and confining for
kappa < 0.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DegenerateExponentError, DomainError
from .geometry import ball_area, gamma, _require_finite

__all__ = [
    "DEGENERATE_EXPONENT_TOLERANCE",
    "Scenario",
    "Charges",
    "PowerLawPotential",
    "coulomb_full",
    "coulomb_embedded",
    "coulomb",
    "potential_energy",
    "electric_field_magnitude",
    "classical_effective_potential",
]

# |2 d_s - d_v| below this counts as a vanishing exponent: the full-fractal
# potential turns logarithmic and the power-law machinery does not apply.
DEGENERATE_EXPONENT_TOLERANCE = 1e-9


class Scenario(Enum):
    """Which electrostatics the nucleus obeys."""

    FULL_FRACTAL = "full"
    EMBEDDED = "embedded"


@dataclass(frozen=True)
class Charges:
    """Nuclear charge number and elementary charge magnitude."""

    z: int = 1
    q_e: float = 1.0

    def __post_init__(self):
        if isinstance(self.z, bool) or not isinstance(self.z, int):
            raise DomainError(f"z must be an integer, got {self.z!r}")
        if self.z < 1:
            raise DomainError(f"z must be at least 1, got {self.z}")
        q_e = _require_finite("q_e", self.q_e)
        object.__setattr__(self, "q_e", q_e)
        if q_e <= 0.0:
            raise DomainError(f"q_e must be positive, got {q_e}")


@dataclass(frozen=True)
class PowerLawPotential:
    """Attractive central potential U(r) = -sgn(kappa) |U| r^-kappa."""

    kappa: float
    magnitude: float

    def __post_init__(self):
        kappa = _require_finite("kappa", self.kappa)
        magnitude = _require_finite("magnitude", self.magnitude)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "magnitude", magnitude)
        if kappa == 0.0:
            raise DomainError("kappa must be nonzero")
        if magnitude <= 0.0:
            raise DomainError(f"magnitude must be positive, got {magnitude}")

    def sign(self):
        """sgn(kappa) as a float, never zero."""
        return math.copysign(1.0, self.kappa)


def coulomb_full(fractality, charges=Charges()):
    """Potential of a point charge when space itself is fractal.

    kappa = 2 d_s - d_v and

        |U| = | Gamma((d_s+1)/2) / (2 kappa pi^((kappa+1)/2) Gamma(alpha/2)) |
              * z q_e^2.

    Raises :class:`DegenerateExponentError` when |kappa| falls below
    :data:`DEGENERATE_EXPONENT_TOLERANCE` (logarithmic regime).
    """
    kappa = 2.0 * fractality.d_s - fractality.d_v
    if abs(kappa) < DEGENERATE_EXPONENT_TOLERANCE:
        raise DegenerateExponentError(
            f"potential exponent 2 d_s - d_v = {kappa:.3e} is degenerate; "
            "the full-fractal potential is logarithmic there"
        )
    strength = abs(
        gamma(0.5 * (fractality.d_s + 1.0))
        / (2.0 * kappa * math.pi ** (0.5 * (kappa + 1.0)) * gamma(0.5 * fractality.alpha()))
    )
    return PowerLawPotential(kappa=kappa, magnitude=strength * charges.z * charges.q_e**2)


def coulomb_embedded(charges=Charges()):
    """Ambient Coulomb potential, kappa = 1, |U| = z q_e^2 / (4 pi)."""
    return PowerLawPotential(kappa=1.0, magnitude=charges.z * charges.q_e**2 / (4.0 * math.pi))


def coulomb(scenario, fractality, charges=Charges()):
    """Scenario dispatch for the nuclear potential."""
    if scenario is Scenario.FULL_FRACTAL:
        return coulomb_full(fractality, charges)
    if scenario is Scenario.EMBEDDED:
        return coulomb_embedded(charges)
    raise DomainError(f"unknown scenario {scenario!r}")


def potential_energy(potential, r):
    """U(r) = -sgn(kappa) |U| r^-kappa; attractive, negative for kappa > 0."""
    r = _require_finite("r", r)
    if r <= 0.0:
        raise DomainError(f"r must be positive, got {r}")
    return -potential.sign() * potential.magnitude * r ** -potential.kappa


def electric_field_magnitude(fractality, charges, r):
    """Field strength of the point charge by Gauss's law: z q_e / A(r)."""
    return charges.z * charges.q_e / ball_area(fractality, r)


def classical_effective_potential(potential, angular_momentum, mass, r):
    """U(r) plus the centrifugal barrier L^2 / (2 m r^2)."""
    r = _require_finite("r", r)
    if r <= 0.0:
        raise DomainError(f"r must be positive, got {r}")
    if mass <= 0.0:
        raise DomainError(f"mass must be positive, got {mass}")
    return potential_energy(potential, r) + angular_momentum**2 / (2.0 * mass * r**2)
