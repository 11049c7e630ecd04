"""Exact Fock-state representation and evolution through mode unitaries.

Conventions
-----------
Occupation lists are ordered by waveguide index, top to bottom, so ``|10>``
is one photon in the upper guide. A unitary ``U`` acts on creation operators
as ``a_i+ -> sum_j U[j, i] a_j+``; evolving through ``U1`` then ``U2`` is the
same as evolving once through ``U2 @ U1``.

The amplitude sending occupation pattern ``T`` to pattern ``S`` is the
permanent of the matrix built from ``U`` by repeating column ``i`` ``T_i``
times and row ``j`` ``S_j`` times, divided by ``sqrt(prod(S!) * prod(T!))``.

Everything here is lossless and desk scale: at most 8 modes and 4 photons.
Loss and detection are handled probabilistically in :mod:`qpcirc.counting`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from . import _kernels

UNITARITY_TOL = 1e-12
AMPLITUDE_PRUNE_TOL = 1e-14
MAX_MODES = 8
MAX_PHOTONS = 4


@dataclass(frozen=True)
class FockState:
    """Photon occupation per waveguide mode, e.g. ``FockState((1, 1))``."""

    occupations: tuple[int, ...]

    def __post_init__(self):
        occ = tuple(int(n) for n in self.occupations)
        if len(occ) < 1:
            raise ValueError("FockState needs at least one mode")
        if any(n < 0 for n in occ):
            raise ValueError(f"occupations must be non-negative, got {occ}")
        object.__setattr__(self, "occupations", occ)

    @property
    def mode_count(self) -> int:
        return len(self.occupations)

    @property
    def photon_count(self) -> int:
        return sum(self.occupations)

    def ket(self) -> str:
        return "|" + "".join(str(n) for n in self.occupations) + ">"

    def __repr__(self) -> str:
        return f"FockState{self.occupations}"


def fock(*occupations: int) -> FockState:
    """Shorthand constructor: ``fock(1, 1)`` is ``|11>``."""
    return FockState(tuple(occupations))


class PureState:
    """Superposition of Fock states with a shared mode and photon count."""

    def __init__(self, terms: dict[FockState, complex], mode_count: int | None = None):
        if not terms:
            raise ValueError("state needs at least one term")
        states = list(terms)
        m = mode_count if mode_count is not None else states[0].mode_count
        n = states[0].photon_count
        for s in states:
            if s.mode_count != m:
                raise ValueError(f"mode count mismatch: {s} in {m}-mode state")
            if s.photon_count != n:
                raise ValueError(f"photon number mismatch: {s} vs total {n}")
        self.terms = {s: complex(a) for s, a in terms.items()}
        self.mode_count = m
        self.photon_count = n

    @classmethod
    def of(cls, state: FockState) -> "PureState":
        return cls({state: 1.0 + 0.0j})

    def amplitude(self, pattern: FockState) -> complex:
        if pattern.mode_count != self.mode_count:
            raise ValueError("pattern mode count does not match state")
        return self.terms.get(pattern, 0.0 + 0.0j)

    def norm_squared(self) -> float:
        return float(sum(abs(a) ** 2 for a in self.terms.values()))

    def normalized(self) -> "PureState":
        nrm = math.sqrt(self.norm_squared())
        if nrm == 0.0:
            raise ValueError("cannot normalize the zero state")
        return PureState({s: a / nrm for s, a in self.terms.items()}, self.mode_count)

    def pruned(self, tol: float = AMPLITUDE_PRUNE_TOL) -> "PureState":
        kept = {s: a for s, a in self.terms.items() if abs(a) > tol}
        if not kept:
            # keep the largest term so the state stays well formed
            s = max(self.terms, key=lambda k: abs(self.terms[k]))
            kept = {s: self.terms[s]}
        return PureState(kept, self.mode_count)

    def probabilities(self) -> dict[FockState, float]:
        return {s: abs(a) ** 2 for s, a in self.terms.items()}

    def phase_fixed(self) -> "PureState":
        """Rotate the global phase so the largest amplitude is real positive.

        Physical states are rays; this picks one representative per ray so
        states can be compared term by term.
        """
        s = max(self.terms, key=lambda k: abs(self.terms[k]))
        a = self.terms[s]
        if abs(a) == 0.0:
            return self
        phase = a / abs(a)
        return PureState({k: v / phase for k, v in self.terms.items()}, self.mode_count)

    def distance_up_to_phase(self, other: "PureState") -> float:
        """Max amplitude deviation after fixing both global phases."""
        if other.mode_count != self.mode_count:
            raise ValueError("mode count mismatch")
        a = self.phase_fixed()
        b = other.phase_fixed()
        keys = set(a.terms) | set(b.terms)
        return max(abs(a.terms.get(k, 0j) - b.terms.get(k, 0j)) for k in keys)

    def __repr__(self) -> str:
        parts = ", ".join(f"{s.ket()}: {a:.6g}" for s, a in sorted(
            self.terms.items(), key=lambda kv: kv[0].occupations))
        return f"PureState({parts})"


@dataclass(frozen=True)
class ModeUnitary:
    """Complex square transfer matrix over the circuit modes."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"unitary must be square, got shape {m.shape}")
        dev = np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0])))
        if dev > UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary (max deviation {dev:.3e})")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def mode_count(self) -> int:
        return self.entries.shape[0]

    def then(self, later: "ModeUnitary") -> "ModeUnitary":
        """Unitary for this element followed by ``later``."""
        return ModeUnitary(later.entries @ self.entries)


def permanent(matrix: np.ndarray) -> complex:
    """Matrix permanent (Ryser), exact up to floating-point rounding."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"permanent needs a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    if n > MAX_MODES:
        raise ValueError(f"matrix dimension {n} exceeds supported maximum {MAX_MODES}")
    return _kernels.permanent(m)


def output_patterns(mode_count: int, photon_count: int) -> list[FockState]:
    """All occupation patterns of ``photon_count`` photons in ``mode_count`` modes."""
    if photon_count == 0:
        return [FockState((0,) * mode_count)]
    patterns = []
    for combo in combinations_with_replacement(range(mode_count), photon_count):
        occ = [0] * mode_count
        for mode in combo:
            occ[mode] += 1
        patterns.append(FockState(tuple(occ)))
    return patterns


def _expanded_indices(states: list[FockState], photon_count: int) -> np.ndarray:
    idx = np.empty((len(states), photon_count), dtype=np.int64)
    for row, s in enumerate(states):
        pos = 0
        for mode, n in enumerate(s.occupations):
            for _ in range(n):
                idx[row, pos] = mode
                pos += 1
    return idx


def _factorial_norm(state: FockState) -> float:
    out = 1.0
    for n in state.occupations:
        out *= math.factorial(n)
    return math.sqrt(out)


def evolve(state: PureState, u: ModeUnitary) -> PureState:
    """Evolve a pure state through a lossless mode unitary.

    Linear in the input amplitudes, photon-number conserving and norm
    preserving to rounding. Raises on dimension mismatch or when the desk
    scale limits (4 photons, 8 modes) are exceeded.
    """
    if u.mode_count != state.mode_count:
        raise ValueError(
            f"unitary acts on {u.mode_count} modes, state has {state.mode_count}")
    if state.mode_count > MAX_MODES:
        raise ValueError(f"more than {MAX_MODES} modes is not supported")
    if state.photon_count > MAX_PHOTONS:
        raise ValueError(f"more than {MAX_PHOTONS} photons is not supported")
    if state.photon_count == 0:
        return PureState(dict(state.terms), state.mode_count)

    in_states = list(state.terms)
    in_idx = _expanded_indices(in_states, state.photon_count)
    in_amps = np.array(
        [state.terms[s] / _factorial_norm(s) for s in in_states], dtype=np.complex128)
    out_states = output_patterns(state.mode_count, state.photon_count)
    out_idx = _expanded_indices(out_states, state.photon_count)

    raw = _kernels.evolve_amplitudes(u.entries, out_idx, in_idx, in_amps)
    terms = {}
    for s, value in zip(out_states, raw):
        amp = value / _factorial_norm(s)
        if abs(amp) > AMPLITUDE_PRUNE_TOL:
            terms[s] = amp
    if not terms:
        raise ValueError("evolution produced a numerically zero state")
    return PureState(terms, state.mode_count)


def coincidence_probability(state: PureState, pattern: FockState) -> float:
    """Probability of detecting exactly ``pattern``, i.e. ``|amplitude|**2``."""
    if pattern.mode_count != state.mode_count:
        raise ValueError("pattern mode count does not match state")
    if pattern.photon_count != state.photon_count:
        raise ValueError("pattern photon number does not match state")
    return float(abs(state.amplitude(pattern)) ** 2)
