"""Circuit-element unitaries and closed-form interferometer output states.

A directional coupler with coupling ratio ``eps`` acts as

    [[sqrt(1-eps), i*sqrt(eps)],
     [i*sqrt(eps), sqrt(1-eps)]]

and a phase shifter multiplies one arm by ``exp(-i*theta)``. The closed-form
states below are the exact one- and two-photon outputs of a coupler and of a
Mach-Zehnder interferometer (coupler, phase, coupler with equal coupling
ratios); they double as oracles for the generic permanent engine.

The single-photon MZI form carries a factored global phase ``exp(-i*theta/2)``
relative to the raw matrix product, so comparisons should be made up to a
global phase (see ``PureState.distance_up_to_phase``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .fock import FockState, ModeUnitary, PureState


def _check_ratio(eps: float) -> float:
    eps = float(eps)
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"coupling ratio must be in [0, 1], got {eps}")
    return eps


@dataclass(frozen=True)
class CouplerSpec:
    """Directional coupler with coupling ratio (reflectivity) ``epsilon``."""

    epsilon: float

    def __post_init__(self):
        object.__setattr__(self, "epsilon", _check_ratio(self.epsilon))


@dataclass(frozen=True)
class PhaseSpec:
    """Relative phase ``theta`` (radians) applied to one arm."""

    theta: float
    mode_index: int = 1


@dataclass(frozen=True)
class CircuitPlan:
    """Ordered element list over ``mode_count`` waveguides.

    Elements are either ``(CouplerSpec, (i, j))`` pairs naming the coupled
    mode pair, or ``PhaseSpec`` entries. List order is physical propagation
    order.
    """

    mode_count: int
    elements: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.mode_count < 1:
            raise ValueError("mode_count must be >= 1")
        object.__setattr__(self, "elements", tuple(self.elements))
        for el in self.elements:
            if isinstance(el, PhaseSpec):
                if not 0 <= el.mode_index < self.mode_count:
                    raise ValueError(
                        f"phase mode index {el.mode_index} outside 0..{self.mode_count - 1}")
            else:
                spec, modes = el
                if not isinstance(spec, CouplerSpec):
                    raise ValueError(f"unsupported circuit element: {el!r}")
                i, j = modes
                if i == j or not (0 <= i < self.mode_count and 0 <= j < self.mode_count):
                    raise ValueError(f"invalid coupler mode pair {modes}")


def coupler_unitary(spec: CouplerSpec | float) -> ModeUnitary:
    """2x2 coupler unitary; symmetric with purely imaginary off-diagonal."""
    eps = _check_ratio(spec.epsilon if isinstance(spec, CouplerSpec) else spec)
    t = math.sqrt(1.0 - eps)
    r = 1j * math.sqrt(eps)
    return ModeUnitary(np.array([[t, r], [r, t]], dtype=np.complex128))


def phase_unitary(spec: PhaseSpec | float, mode_count: int = 2) -> ModeUnitary:
    """Diagonal unitary applying ``exp(-i*theta)`` on one mode."""
    if not isinstance(spec, PhaseSpec):
        spec = PhaseSpec(float(spec))
    if not 0 <= spec.mode_index < mode_count:
        raise ValueError(f"mode index {spec.mode_index} outside 0..{mode_count - 1}")
    diag = np.ones(mode_count, dtype=np.complex128)
    diag[spec.mode_index] = cmath.exp(-1j * spec.theta)
    return ModeUnitary(np.diag(diag))


def _embed_coupler(spec: CouplerSpec, mode_count: int, modes: tuple[int, int]) -> ModeUnitary:
    i, j = modes
    small = coupler_unitary(spec).entries
    full = np.eye(mode_count, dtype=np.complex128)
    full[i, i] = small[0, 0]
    full[i, j] = small[0, 1]
    full[j, i] = small[1, 0]
    full[j, j] = small[1, 1]
    return ModeUnitary(full)


def compose(plan: CircuitPlan) -> ModeUnitary:
    """Total unitary of a plan: element matrices multiplied in propagation order."""
    total = ModeUnitary(np.eye(plan.mode_count, dtype=np.complex128))
    for el in plan.elements:
        if isinstance(el, PhaseSpec):
            u = phase_unitary(el, plan.mode_count)
        else:
            spec, modes = el
            u = _embed_coupler(spec, plan.mode_count, modes)
        total = total.then(u)
    return total


def mzi_plan(eps: float, theta: float) -> CircuitPlan:
    """Two-mode Mach-Zehnder: coupler, lower-arm phase, identical coupler."""
    c = (CouplerSpec(eps), (0, 1))
    return CircuitPlan(2, (c, PhaseSpec(theta, 1), c))


def single_photon_mzi_state(eps: float, theta: float) -> PureState:
    """One photon in the upper guide through an MZI.

    Amplitudes ``(1-2*eps)*cos(theta/2) + i*sin(theta/2)`` on ``|10>`` and
    ``2i*sqrt(eps*(1-eps))*cos(theta/2)`` on ``|01>``.
    """
    eps = _check_ratio(eps)
    half = 0.5 * theta
    a10 = (1.0 - 2.0 * eps) * math.cos(half) + 1j * math.sin(half)
    a01 = 2j * math.sqrt(eps * (1.0 - eps)) * math.cos(half)
    return PureState({FockState((1, 0)): a10, FockState((0, 1)): a01}, 2)


def two_photon_coupler_state(eps: float) -> PureState:
    """``|11>`` through a single coupler.

    ``i*sqrt(2*eps*(1-eps))`` on each of ``|20>``, ``|02>`` and a real
    ``1-2*eps`` on ``|11>``; at ``eps = 0.5`` the photons bunch completely.
    """
    eps = _check_ratio(eps)
    bunch = 1j * math.sqrt(2.0 * eps * (1.0 - eps))
    return PureState({
        FockState((2, 0)): bunch,
        FockState((0, 2)): bunch,
        FockState((1, 1)): (1.0 - 2.0 * eps) + 0.0j,
    }, 2)


def two_photon_mzi_state(eps: float, theta: float) -> PureState:
    """``|11>`` through an MZI with equal coupler ratios.

    The ``|11>`` coefficient mixes ``exp(-i*theta)`` and ``exp(-2i*theta)``
    terms, which is what makes the coincidence fringe non-uniform away from
    ``eps = 0.5``.
    """
    eps = _check_ratio(eps)
    e1 = cmath.exp(-1j * theta)
    e2 = cmath.exp(-2j * theta)
    bunch = 1j * math.sqrt(2.0 * eps * (1.0 - eps))
    a20 = bunch * (-eps * e2 + (1.0 - 2.0 * eps) * e1 + (1.0 - eps))
    a02 = bunch * ((1.0 - eps) * e2 + (1.0 - 2.0 * eps) * e1 - eps)
    a11 = (-2.0 * eps * (1.0 - eps) * e2
           + (1.0 - 2.0 * eps) ** 2 * e1
           - 2.0 * eps * (1.0 - eps))
    return PureState({
        FockState((2, 0)): a20,
        FockState((0, 2)): a02,
        FockState((1, 1)): a11,
    }, 2)
