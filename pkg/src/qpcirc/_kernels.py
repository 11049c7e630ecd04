"""Numeric kernels for permanent evaluation and multi-photon amplitude maps.

Two interchangeable backends:

* ``numba`` (default): Gray-code Ryser permanent and the pattern-to-pattern
  amplitude loop compiled with ``@njit``.
* ``numpy``: a vectorised subset-sum Ryser permanent and a plain Python
  amplitude loop.

Set the environment variable ``QPCIRC_NO_NUMBA=1`` before import to force the
numpy backend (also used automatically when numba is not importable). Both
backends produce identical results to floating-point rounding; see
``benchmarks/bench_kernels.py`` for a speed comparison.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_FLAG = "QPCIRC_NO_NUMBA"


def _numba_requested() -> bool:
    return os.environ.get(_ENV_FLAG, "").strip().lower() not in ("1", "true", "yes")


def _permanent_gray(a):
    # Ryser's formula over column subsets, Gray-code ordered so each step
    # updates the running row sums with a single column.
    n = a.shape[0]
    if n == 1:
        return a[0, 0]
    row = np.zeros(n, dtype=np.complex128)
    total = 0.0 + 0.0j
    old = 0
    size = 0
    for k in range(1, 1 << n):
        new = k ^ (k >> 1)
        diff = old ^ new
        j = 0
        while (diff >> j) & 1 == 0:
            j += 1
        if new & diff:
            size += 1
            for i in range(n):
                row[i] += a[i, j]
        else:
            size -= 1
            for i in range(n):
                row[i] -= a[i, j]
        p = 1.0 + 0.0j
        for i in range(n):
            p *= row[i]
        total += p if (size & 1) == 0 else -p
        old = new
    return total if (n & 1) == 0 else -total


def _evolve_gray(u, out_idx, in_idx, in_amps):
    # out[s] = sum_t in_amps[t] * perm(u[out_idx[s], :][:, in_idx[t]])
    n_out = out_idx.shape[0]
    n_in = in_idx.shape[0]
    n = in_idx.shape[1]
    out = np.zeros(n_out, dtype=np.complex128)
    sub = np.empty((n, n), dtype=np.complex128)
    for s in range(n_out):
        acc = 0.0 + 0.0j
        for t in range(n_in):
            for r in range(n):
                for c in range(n):
                    sub[r, c] = u[out_idx[s, r], in_idx[t, c]]
            acc += in_amps[t] * _permanent_gray(sub)
        out[s] = acc
    return out


def permanent_numpy(a: np.ndarray) -> complex:
    """Vectorised Ryser permanent: all column subsets at once."""
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    if n == 1:
        return complex(a[0, 0])
    subsets = np.arange(1, 1 << n, dtype=np.uint32)
    bits = ((subsets[:, None] >> np.arange(n, dtype=np.uint32)) & 1).astype(np.float64)
    rowsums = bits @ a.T
    prods = np.prod(rowsums, axis=1)
    signs = np.where((n - bits.sum(axis=1).astype(np.int64)) & 1, -1.0, 1.0)
    value = complex(np.sum(signs * prods))
    return value


def _evolve_numpy(u, out_idx, in_idx, in_amps):
    n_out = out_idx.shape[0]
    out = np.zeros(n_out, dtype=np.complex128)
    for s in range(n_out):
        rows = out_idx[s]
        acc = 0.0 + 0.0j
        for t in range(in_idx.shape[0]):
            acc += in_amps[t] * permanent_numpy(u[np.ix_(rows, in_idx[t])])
        out[s] = acc
    return out


if _numba_requested():
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - exercised only without numba
        njit = None
else:
    njit = None

if njit is not None:
    BACKEND = "numba"
    _permanent_gray = njit(cache=True)(_permanent_gray)
    _evolve_gray = njit(cache=True)(_evolve_gray)
    permanent_kernel = _permanent_gray
    evolve_kernel = _evolve_gray
else:
    BACKEND = "numpy"
    permanent_kernel = permanent_numpy
    evolve_kernel = _evolve_numpy


def permanent(a: np.ndarray) -> complex:
    """Permanent of a complex square matrix on the active backend."""
    return complex(permanent_kernel(np.ascontiguousarray(a, dtype=np.complex128)))


def evolve_amplitudes(
    u: np.ndarray,
    out_idx: np.ndarray,
    in_idx: np.ndarray,
    in_amps: np.ndarray,
) -> np.ndarray:
    """Raw permanent sums for every output pattern.

    ``out_idx``/``in_idx`` carry one row per pattern listing the mode index
    of each photon (occupations expanded, e.g. ``(2, 0)`` -> ``[0, 0]``).
    ``in_amps`` must already include the input factorial normalisation; the
    caller divides each output by the square root of its pattern factorial.
    """
    return evolve_kernel(
        np.ascontiguousarray(u, dtype=np.complex128),
        np.ascontiguousarray(out_idx, dtype=np.int64),
        np.ascontiguousarray(in_idx, dtype=np.int64),
        np.ascontiguousarray(in_amps, dtype=np.complex128),
    )


def warmup() -> None:
    """Trigger JIT compilation of the hot kernels (no-op on numpy backend)."""
    a = np.eye(2, dtype=np.complex128)
    permanent(a)
    idx = np.array([[0, 1]], dtype=np.int64)
    evolve_amplitudes(a, idx, idx, np.ones(1, dtype=np.complex128))
