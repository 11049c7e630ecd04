"""Closed-form interference observables.

Two-photon overlap kernels for Hong-Ou-Mandel delay scans, the coupling-ratio
visibility law, and the classical and two-photon phase fringes of a
Mach-Zehnder interferometer.

Delay controls are mechanical free-space positions in micrometres; the
relative arrival-time delay is ``tau = x / c``. Phase controls are radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .device import SPEED_OF_LIGHT

TRIANGULAR = "triangular-sinc2"
NUMERIC = "numeric-spectrum"


@dataclass(frozen=True)
class SpectralModel:
    """Single-photon spectral model fixing the shape of the HOM dip.

    ``triangular-sinc2`` means a sinc^2 power spectrum whose Fourier
    transform is the triangle ``max(0, 1 - |tau|/coherence_time)``.
    ``numeric-spectrum`` carries explicit ``(angular frequency offset,
    amplitude)`` samples, normalised to unit area, and evaluates the kernel
    by quadrature.
    """

    kind: str = TRIANGULAR
    coherence_time: float = 0.73e-12  # s
    spectrum_samples: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in (TRIANGULAR, NUMERIC):
            raise ValueError(f"unknown spectral model kind {self.kind!r}")
        if self.coherence_time <= 0.0:
            raise ValueError("coherence_time must be positive")
        if self.kind == NUMERIC:
            if self.spectrum_samples is None or len(self.spectrum_samples) == 0:
                raise ValueError("numeric spectral model needs spectrum samples")
            samples = np.asarray(self.spectrum_samples, dtype=np.float64)
            if samples.ndim != 2 or samples.shape[1] != 2:
                raise ValueError("spectrum samples must be (N, 2): (omega, amplitude)")
            if np.any(samples[:, 1] < 0.0):
                raise ValueError("spectrum amplitudes must be non-negative")
            area = np.trapezoid(samples[:, 1], samples[:, 0])
            if area <= 0.0:
                raise ValueError("spectrum has zero area")
            samples = samples.copy()
            samples[:, 1] /= area
            samples.setflags(write=False)
            object.__setattr__(self, "spectrum_samples", samples)


def sinc2_spectrum(coherence_time: float = 0.73e-12,
                   span: float = 800.0,
                   samples: int = 2 ** 17 + 1) -> SpectralModel:
    """Numeric sinc^2 spectrum matched to a triangular kernel of width ``coherence_time``.

    ``span`` is the half-range in units of ``1/coherence_time``; the default
    keeps the quadrature kernel within 1e-3 of the analytic triangle.
    """
    w = np.linspace(-span / coherence_time, span / coherence_time, samples)
    amp = np.sinc(w * coherence_time / (2.0 * math.pi)) ** 2
    return SpectralModel(NUMERIC, coherence_time, np.column_stack([w, amp]))


def overlap_kernel(delay: float, model: SpectralModel) -> float:
    """Two-photon wavepacket overlap ``g(tau)`` in [0, 1]; ``g(0) = 1``."""
    if model.kind == TRIANGULAR:
        return max(0.0, 1.0 - abs(delay) / model.coherence_time)
    w = model.spectrum_samples[:, 0]
    s = model.spectrum_samples[:, 1]
    return float(abs(np.trapezoid(s * np.exp(1j * w * delay), w)))


def delay_um_to_seconds(delay_um: float | np.ndarray) -> float | np.ndarray:
    """Mechanical free-space delay (um) to relative arrival time (s)."""
    return np.asarray(delay_um) * 1e-6 / SPEED_OF_LIGHT


def free_space_half_width_um(model: SpectralModel) -> float:
    """Free-space delay (um) at which the triangular kernel reaches zero."""
    return SPEED_OF_LIGHT * model.coherence_time * 1e6


def shoulder_to_shoulder_um(model: SpectralModel) -> float:
    """Full width between the dip shoulders in free-space micrometres."""
    return 2.0 * free_space_half_width_um(model)


def waveguide_coherence_length_um(model: SpectralModel, n_group: float) -> float:
    """Coherence length inside the waveguide, ``c * tau_c / n``."""
    return free_space_half_width_um(model) / n_group


def hom_visibility(eps: float) -> float:
    """Dip visibility of a coupler: ``2*eps*(1-eps) / (eps^2 + (1-eps)^2)``.

    Ratio of the coincidence drop between distinguishable and perfectly
    indistinguishable photon pairs; maximal (1) at a 50:50 coupler.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"coupling ratio must be in [0, 1], got {eps}")
    dist = eps ** 2 + (1.0 - eps) ** 2
    return 2.0 * eps * (1.0 - eps) / dist


@dataclass(frozen=True)
class Curve:
    """Sampled curve: strictly increasing control values, non-negative values."""

    control: np.ndarray
    value: np.ndarray

    def __post_init__(self):
        control = np.asarray(self.control, dtype=np.float64)
        value = np.asarray(self.value, dtype=np.float64)
        if control.shape != value.shape or control.ndim != 1:
            raise ValueError("control and value must be 1-d arrays of equal length")
        if control.size > 1 and not np.all(np.diff(control) > 0.0):
            raise ValueError("control values must be strictly increasing")
        if np.any(value < 0.0):
            raise ValueError("curve values must be non-negative")
        control.setflags(write=False)
        value.setflags(write=False)
        object.__setattr__(self, "control", control)
        object.__setattr__(self, "value", value)


DipCurve = Curve
FringeCurve = Curve


def hom_dip_profile(delays_um, eps: float, model: SpectralModel,
                    v_cap: float = 1.0) -> DipCurve:
    """Normalised coincidence curve ``1 - v_cap * V(eps) * g(tau)``.

    ``v_cap`` is the experimental indistinguishability ceiling (1 for ideal
    photon pairs); the shoulders sit at 1 and the minimum at
    ``1 - v_cap * V(eps)``.
    """
    if not 0.0 <= v_cap <= 1.0:
        raise ValueError(f"v_cap must be in [0, 1], got {v_cap}")
    delays_um = np.asarray(delays_um, dtype=np.float64)
    v = hom_visibility(eps)
    taus = delay_um_to_seconds(delays_um)
    g = np.array([overlap_kernel(float(t), model) for t in taus])
    return Curve(delays_um, 1.0 - v_cap * v * g)


def classical_fringe(eps: float, thetas) -> tuple[FringeCurve, FringeCurve]:
    """Single-photon (or bright-light) output fringes of an MZI.

    Output 1 varies as ``(1-2*eps)^2*cos^2(theta/2) + sin^2(theta/2)`` and
    output 2 as ``4*eps*(1-eps)*cos^2(theta/2)``; they sum to one.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"coupling ratio must be in [0, 1], got {eps}")
    thetas = np.asarray(thetas, dtype=np.float64)
    c2 = np.cos(thetas / 2.0) ** 2
    s2 = np.sin(thetas / 2.0) ** 2
    out1 = (1.0 - 2.0 * eps) ** 2 * c2 + s2
    out2 = 4.0 * eps * (1.0 - eps) * c2
    return Curve(thetas, out1), Curve(thetas, out2)


def quantum_fringe(eps: float, thetas, tm_background: float = 0.0) -> FringeCurve:
    """Two-photon coincidence fringe of an MZI versus phase.

    The value at each phase is the ``|11>`` output probability plus a
    phase-independent background standing in for any TM-polarised light that
    the shifters do not act on. At ``eps = 0.5`` the curve is ``cos^2(theta)``,
    twice the classical fringe frequency.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"coupling ratio must be in [0, 1], got {eps}")
    if tm_background < 0.0:
        raise ValueError("tm_background must be non-negative")
    thetas = np.asarray(thetas, dtype=np.float64)
    e1 = np.exp(-1j * thetas)
    e2 = np.exp(-2j * thetas)
    cross = 2.0 * eps * (1.0 - eps)
    coeff = -cross * e2 + (1.0 - 2.0 * eps) ** 2 * e1 - cross
    return Curve(thetas, np.abs(coeff) ** 2 + tm_background)


def fringe_visibility(values) -> float:
    """Fringe contrast convention ``(max - min) / (max + min)``."""
    values = np.asarray(values, dtype=np.float64)
    hi, lo = float(values.max()), float(values.min())
    if hi + lo == 0.0:
        return 0.0
    return (hi - lo) / (hi + lo)


def dip_visibility(values) -> float:
    """Dip depth convention ``(max - min) / max``."""
    values = np.asarray(values, dtype=np.float64)
    hi, lo = float(values.max()), float(values.min())
    if hi == 0.0:
        return 0.0
    return (hi - lo) / hi
