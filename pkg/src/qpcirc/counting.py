"""Stochastic counting experiments: rates, Poisson draws and sweep records.

Absolute rates follow the standard pair bookkeeping: a coincidence needs both
photons to survive two fiber couplings and one chip pass each and to fire
their detector, so the detected rate is
``pair_rate * eta_c^4 * eta^2 * eta_d1 * eta_d2 * model_prob``. Singles see
one photon's path only: ``pair_rate * eta_c^2 * eta * eta_d + dark_rate``.

Every sweep point draws from an independent sub-seed derived from
``(rng_seed, point index)``, so records are reproducible bit for bit and
independent of evaluation order.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .device import LossBudget

CSV_COLUMNS = ("control", "raw", "singles1", "singles2",
               "accidental", "corrected", "error")


@dataclass(frozen=True)
class DetectorSpec:
    """Single-photon detector efficiency and dark-count rate."""

    efficiency: float
    dark_rate: float = 0.0  # Hz

    def __post_init__(self):
        if not 0.0 < self.efficiency <= 1.0:
            raise ValueError("detector efficiency must be in (0, 1]")
        if self.dark_rate < 0.0:
            raise ValueError("dark rate must be non-negative")


@dataclass(frozen=True)
class CountingConfig:
    """Source, detector and timing configuration of a counting run."""

    pair_rate: float = 2e6           # photon pairs per second
    integration_time: float = 10.0   # s per sweep point
    coincidence_window: float = 5e-9  # s
    detector1: DetectorSpec = field(default_factory=lambda: DetectorSpec(0.01, 1e3))
    detector2: DetectorSpec = field(default_factory=lambda: DetectorSpec(0.04, 1e3))
    losses: LossBudget = field(default_factory=LossBudget)
    rng_seed: int = 0

    def __post_init__(self):
        if self.pair_rate <= 0.0:
            raise ValueError("pair_rate must be positive")
        if self.integration_time <= 0.0:
            raise ValueError("integration_time must be positive")
        if self.coincidence_window <= 0.0:
            raise ValueError("coincidence_window must be positive")


@dataclass
class SweepRecord:
    """Per-point counts of a sweep: raw, singles, accidentals and errors.

    ``corrected = raw - accidental`` (not clamped) and ``error = sqrt(raw)``.
    """

    control: np.ndarray
    raw: np.ndarray
    singles1: np.ndarray
    singles2: np.ndarray
    accidental: np.ndarray
    corrected: np.ndarray
    error: np.ndarray

    def __post_init__(self):
        n = len(self.control)
        for name in ("raw", "singles1", "singles2", "accidental", "corrected", "error"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"column {name} length mismatch")

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as f:
            f.write(self.to_csv_text())

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for i in range(len(self.control)):
            writer.writerow([
                repr(float(self.control[i])),
                int(self.raw[i]), int(self.singles1[i]), int(self.singles2[i]),
                repr(float(self.accidental[i])),
                repr(float(self.corrected[i])),
                repr(float(self.error[i])),
            ])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, path) -> "SweepRecord":
        with open(path, newline="") as f:
            return cls.from_csv_text(f.read())

    @classmethod
    def from_csv_text(cls, text: str) -> "SweepRecord":
        reader = csv.reader(io.StringIO(text))
        header = tuple(next(reader))
        if header != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV columns {header}")
        rows = [row for row in reader if row]
        cols = list(zip(*rows))
        return cls(
            control=np.array([float(v) for v in cols[0]]),
            raw=np.array([int(v) for v in cols[1]]),
            singles1=np.array([int(v) for v in cols[2]]),
            singles2=np.array([int(v) for v in cols[3]]),
            accidental=np.array([float(v) for v in cols[4]]),
            corrected=np.array([float(v) for v in cols[5]]),
            error=np.array([float(v) for v in cols[6]]),
        )

    def to_json_dict(self) -> dict:
        return {name: [
            int(v) if name in ("raw", "singles1", "singles2") else float(v)
            for v in getattr(self, name)
        ] for name in CSV_COLUMNS}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "SweepRecord":
        return cls(**{name: np.asarray(data[name]) for name in CSV_COLUMNS})


def accidental_rate(singles1: float, singles2: float, window: float) -> float:
    """Uncorrelated coincidence rate ``s1 * s2 * window`` (Hz)."""
    if singles1 < 0.0 or singles2 < 0.0 or window < 0.0:
        raise ValueError("rates and window must be non-negative")
    return singles1 * singles2 * window


def expected_coincidence_rate(model_prob: float, cfg: CountingConfig) -> float:
    """Detected coincidence rate (Hz) for a physics-layer probability."""
    if not 0.0 <= model_prob <= 1.0:
        raise ValueError(f"model probability must be in [0, 1], got {model_prob}")
    eta_c = cfg.losses.facet_coupling_transmission
    eta = cfg.losses.chip_transmission
    return (cfg.pair_rate * eta_c ** 4 * eta ** 2
            * cfg.detector1.efficiency * cfg.detector2.efficiency * model_prob)


def singles_rates(cfg: CountingConfig) -> tuple[float, float]:
    """Detected singles rates (Hz) at each detector, dark counts included."""
    eta_c = cfg.losses.facet_coupling_transmission
    eta = cfg.losses.chip_transmission
    base = cfg.pair_rate * eta_c ** 2 * eta
    return (base * cfg.detector1.efficiency + cfg.detector1.dark_rate,
            base * cfg.detector2.efficiency + cfg.detector2.dark_rate)


def _point_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((seed, index)))


def simulate_sweep(control: Sequence[float],
                   prob_fn: Callable[[float], float],
                   cfg: CountingConfig) -> SweepRecord:
    """Simulate a counting sweep over ``control`` values.

    Per point, raw coincidences are Poisson with mean
    ``(signal rate + accidental rate) * integration_time`` and singles are
    Poisson around their own means; the accidental *estimate* stored in the
    record is the analytic ``s1 * s2 * window`` expectation, mirroring how a
    delayed-window measurement is used to correct real data.
    """
    control = np.asarray(list(control), dtype=np.float64)
    s1, s2 = singles_rates(cfg)
    acc = accidental_rate(s1, s2, cfg.coincidence_window)
    t = cfg.integration_time

    raw = np.zeros(control.size, dtype=np.int64)
    singles1 = np.zeros(control.size, dtype=np.int64)
    singles2 = np.zeros(control.size, dtype=np.int64)
    accidental = np.full(control.size, acc * t)
    for i, x in enumerate(control):
        p = float(prob_fn(float(x)))
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"prob_fn returned {p} at control {x}")
        rng = _point_rng(cfg.rng_seed, i)
        raw[i] = rng.poisson(expected_coincidence_rate(p, cfg) * t + acc * t)
        singles1[i] = rng.poisson(s1 * t)
        singles2[i] = rng.poisson(s2 * t)

    corrected = raw - accidental
    error = np.sqrt(raw.astype(np.float64))
    return SweepRecord(control, raw, singles1, singles2, accidental, corrected, error)


def subtract_accidentals(rec: SweepRecord) -> SweepRecord:
    """Recompute ``corrected`` and ``error`` from ``raw`` and ``accidental``.

    Corrected counts may go negative; clamping would bias averaged statistics.
    """
    corrected = rec.raw - rec.accidental
    error = np.sqrt(rec.raw.astype(np.float64))
    return SweepRecord(rec.control, rec.raw, rec.singles1, rec.singles2,
                       rec.accidental, corrected, error)
