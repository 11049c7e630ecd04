"""Physical device parameters mapped to model parameters.

Covers normal-incidence Fresnel reflection at the chip facets, the
coupled-mode model for the directional-coupler coupling ratio, the linear
electro-optic (Pockels) phase shifter and dB loss bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

SPEED_OF_LIGHT = 299792458.0  # m/s


@dataclass(frozen=True)
class MaterialParams:
    """Waveguide material constants at the working wavelength."""

    n_core: float = 3.431
    n_clad: float = 3.282
    n_air: float = 1.0
    r14: float = 1.4e-12       # electro-optic coefficient, m/V
    wavelength: float = 1550e-9  # m

    def __post_init__(self):
        for name in ("n_core", "n_clad", "n_air"):
            if getattr(self, name) < 1.0:
                raise ValueError(f"{name} must be >= 1")
        if self.r14 <= 0.0:
            raise ValueError("r14 must be positive")
        if self.wavelength <= 0.0:
            raise ValueError("wavelength must be positive")


@dataclass(frozen=True)
class CouplerGeometry:
    """Coupled-mode model ``eps = sin^2(kappa0*exp(-gamma*gap)*length + phase_offset)``.

    ``gap`` and ``length`` in micrometres, ``kappa0`` in rad/um, ``gamma`` in
    1/um. The offset absorbs any S-bend contribution and defaults to zero.
    """

    gap: float
    length: float
    kappa0: float
    gamma: float
    phase_offset: float = 0.0

    def __post_init__(self):
        if self.gap <= 0.0:
            raise ValueError("gap must be positive")
        if self.length < 0.0:
            raise ValueError("length must be non-negative")
        if self.kappa0 <= 0.0:
            raise ValueError("kappa0 must be positive")
        if self.gamma < 0.0:
            raise ValueError("gamma must be non-negative")


@dataclass(frozen=True)
class ShifterGeometry:
    """Electro-optic phase shifter; ``electrode_gap`` is set by calibration."""

    length: float = 0.01        # m
    electrode_gap: float | None = None  # m
    v_pi: float = 13.0          # V

    def __post_init__(self):
        if self.length <= 0.0:
            raise ValueError("shifter length must be positive")
        if self.electrode_gap is not None and self.electrode_gap <= 0.0:
            raise ValueError("electrode_gap must be positive")
        if self.v_pi <= 0.0:
            raise ValueError("v_pi must be positive")


@dataclass(frozen=True)
class LossBudget:
    """Power losses in dB: per-cm propagation, per-facet coupling, chip total."""

    propagation_db_per_cm: float = 1.6
    facet_coupling_db: float = 1.5
    chip_internal_db: float = 3.0

    def __post_init__(self):
        for name in ("propagation_db_per_cm", "facet_coupling_db", "chip_internal_db"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def facet_coupling_transmission(self) -> float:
        """Power transmission of one fiber-facet coupling."""
        return db_to_transmission(self.facet_coupling_db)

    @property
    def chip_transmission(self) -> float:
        """Power transmission of one pass through the chip."""
        return db_to_transmission(self.chip_internal_db)


def fresnel_reflectance(n1: float, n2: float) -> tuple[float, float]:
    """Normal-incidence power reflectance and transmittance at an index step."""
    if n1 < 1.0 or n2 < 1.0:
        raise ValueError("refractive indices must be >= 1")
    r = ((n1 - n2) / (n1 + n2)) ** 2
    return r, 1.0 - r


def coupling_ratio(geom: CouplerGeometry) -> float:
    """Coupling ratio of a directional coupler from its geometry."""
    kappa = geom.kappa0 * math.exp(-geom.gamma * geom.gap)
    return math.sin(kappa * geom.length + geom.phase_offset) ** 2


def solve_coupler_model(
    anchor_a: tuple[float, float, float],
    anchor_b: tuple[float, float, float],
) -> tuple[float, float]:
    """Fit ``(kappa0, gamma)`` through two ``(gap_um, length_um, eps)`` anchors.

    Uses the principal branch ``kappa*L = asin(sqrt(eps))``, which matches
    couplers designed short of the first full crossover.
    """
    (g1, l1, e1), (g2, l2, e2) = anchor_a, anchor_b
    if g1 == g2:
        raise ValueError("anchors need distinct gaps")
    if not (0.0 < e1 < 1.0 and 0.0 < e2 < 1.0) or l1 <= 0.0 or l2 <= 0.0:
        raise ValueError("anchors need positive lengths and ratios inside (0, 1)")
    k1 = math.asin(math.sqrt(e1)) / l1
    k2 = math.asin(math.sqrt(e2)) / l2
    gamma = math.log(k1 / k2) / (g2 - g1)
    kappa0 = k1 * math.exp(gamma * g1)
    return kappa0, gamma


# Measured anchor points for the fabricated couplers: a 50:50 device at
# 2.5 um gap / 140 um length and a 30:70 device at 3.0 um gap / 255 um.
COUPLER_ANCHOR_50 = (2.5, 140.0, 0.5)
COUPLER_ANCHOR_30 = (3.0, 255.0, 0.3)


def default_coupler_geometry(gap: float = 2.5, length: float = 140.0) -> CouplerGeometry:
    """Coupler geometry with the model solved through both measured anchors."""
    kappa0, gamma = solve_coupler_model(COUPLER_ANCHOR_50, COUPLER_ANCHOR_30)
    return CouplerGeometry(gap=gap, length=length, kappa0=kappa0, gamma=gamma)


def pockels_index_shift(e_field: float, mat: MaterialParams) -> float:
    """Linear index change ``n^3 * r14 * E / 2`` for a vertical field."""
    return mat.n_core ** 3 * mat.r14 * e_field / 2.0


def phase_from_voltage(v: float, geom: ShifterGeometry, mat: MaterialParams) -> float:
    """Phase shift (radians) for an applied voltage; linear in ``v``."""
    if geom.electrode_gap is None:
        raise ValueError("shifter geometry is not calibrated (electrode_gap unset)")
    dn = pockels_index_shift(v / geom.electrode_gap, mat)
    return 2.0 * math.pi * dn * geom.length / mat.wavelength


def calibrate_electrode_gap(v_pi: float, geom: ShifterGeometry, mat: MaterialParams) -> float:
    """Effective electrode gap (m) that makes ``v_pi`` produce a pi shift."""
    if v_pi <= 0.0:
        raise ValueError("v_pi must be positive")
    dn_needed = mat.wavelength / (2.0 * geom.length)
    e_needed = 2.0 * dn_needed / (mat.n_core ** 3 * mat.r14)
    return v_pi / e_needed


def calibrated_shifter(geom: ShifterGeometry, mat: MaterialParams) -> ShifterGeometry:
    """Copy of ``geom`` with ``electrode_gap`` set from its own ``v_pi``."""
    gap = calibrate_electrode_gap(geom.v_pi, geom, mat)
    return replace(geom, electrode_gap=gap)


def db_to_transmission(db: float) -> float:
    """Power transmission ``10**(-db/10)`` of a loss quoted in dB."""
    if db < 0.0:
        raise ValueError("loss in dB must be non-negative")
    return 10.0 ** (-db / 10.0)
