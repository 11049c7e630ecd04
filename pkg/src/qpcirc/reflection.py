"""Facet round-trip reflections and the HOM visibility they cost.

The chip facets reflect a fraction ``R`` of the light back into the circuit.
A photon reflected at the output facet can cross the coupler again, reflect
at the input facets and leave through the other output port, producing extra
coincidences even at a perfect dip. Only first-order round trips are modelled
(each higher order is suppressed by another ``R^2 * eta^2``), and the
coincidence window is taken to be much longer than the round-trip delay, so
no temporal gating applies.

The second coupler pass interferes over the two input waveguides, whose
round-trip phase difference ``delta_phi`` sets where between zero and the
worst case the visibility penalty lands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True)
class ReflectionParams:
    """Rates and efficiencies entering the round-trip coincidence model."""

    pair_rate: float          # photon pairs per second at the source
    reflectance: float        # facet power reflectance R
    transmittance: float      # facet power transmittance T = 1 - R
    eta_c: float              # fiber coupling per facet (power)
    eta: float                # single chip-pass transmission (power)
    delta_phi: float = 0.0    # round-trip phase difference, radians
    eta_d1: float = 1.0       # detector efficiencies
    eta_d2: float = 1.0

    def __post_init__(self):
        if self.pair_rate <= 0.0:
            raise ValueError("pair_rate must be positive")
        if not 0.0 <= self.reflectance < 1.0:
            raise ValueError("reflectance must be in [0, 1)")
        if abs(self.reflectance + self.transmittance - 1.0) > 1e-9:
            raise ValueError("reflectance + transmittance must equal 1")
        for name in ("eta_c", "eta", "eta_d1", "eta_d2"):
            val = getattr(self, name)
            if not 0.0 < val <= 1.0:
                raise ValueError(f"{name} must be in (0, 1], got {val}")


def dip_coincidence_rate(p: ReflectionParams) -> float:
    """Coincidence rate at the dip centre, all from first-order round trips.

    One photon exits directly (one chip pass), the other makes three passes
    and two reflections before leaving the opposite port, hence the
    ``R^2 * T^4 * eta^4`` weight modulated by ``cos^2(delta_phi / 2)``.
    """
    r2t4 = p.reflectance ** 2 * p.transmittance ** 4
    return (p.pair_rate * r2t4 * p.eta_c ** 4 * p.eta ** 4
            * math.cos(p.delta_phi / 2.0) ** 2 * p.eta_d1 * p.eta_d2)


def shoulder_coincidence_rate(p: ReflectionParams) -> float:
    """Coincidence rate at the dip shoulder (distinguishable pairs).

    The zero-order term is the plain anti-bunching rate; the two first-order
    terms sum to ``R^2 * T^4 * eta_c^4 * eta^4 / 2`` independent of the
    round-trip phase.
    """
    t4 = p.transmittance ** 4
    zero_order = t4 * p.eta_c ** 4 * p.eta ** 2 / 2.0
    first = p.reflectance ** 2 * t4 * p.eta_c ** 4 * p.eta ** 4 / 2.0
    half = p.delta_phi / 2.0
    first_order = (math.sin(half) ** 2 + math.cos(half) ** 2) * first
    return p.pair_rate * (zero_order + first_order) * p.eta_d1 * p.eta_d2


def visibility_degradation(p: ReflectionParams) -> float:
    """Dip-to-shoulder ratio: the HOM visibility lost to facet reflections.

    Equals ``2*R^2*eta^2*cos^2(delta_phi/2) / (1 + R^2*eta^2)``; the pair
    rate, fiber couplings and detector efficiencies cancel. Worst case at
    ``delta_phi = 0``.
    """
    shoulder = shoulder_coincidence_rate(p)
    if shoulder == 0.0:
        raise ValueError("shoulder rate is zero; degradation undefined")
    return dip_coincidence_rate(p) / shoulder


def degradation_span(p: ReflectionParams, steps: int = 181) -> tuple[float, float]:
    """(min, max) visibility degradation over a full sweep of ``delta_phi``."""
    phis = np.linspace(0.0, 2.0 * math.pi, steps)
    values = [visibility_degradation(replace(p, delta_phi=float(phi))) for phi in phis]
    return min(values), max(values)
