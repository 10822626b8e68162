"""Hot numeric kernels: numba-jitted with a pure-numpy fallback.

The verification sweeps dominate runtime (1e5 Schwarz samples against a
601-point t-grid, 1e4-sample coefficient batches against an 81-point
mu-grid), so these inner loops are compiled with numba when available.
Setting ``ERFQ_DISABLE_NUMBA=1`` selects the numpy path instead; both
implementations are kept importable side by side for the benchmark in
``bench/kernel_bench.py``.

Results are deterministic for a fixed backend.  Across backends the max
reductions can differ in the last ulp (different |z| implementations), so
report hashes are only comparable within one backend.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("ERFQ_DISABLE_NUMBA", "").strip() in ("1", "true", "yes")

try:  # pragma: no cover - exercised implicitly by backend selection
    if _DISABLED:
        raise ImportError("numba disabled by ERFQ_DISABLE_NUMBA")
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:
    _HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# numpy reference implementations
# ---------------------------------------------------------------------------


def _np_blaschke_w12(zeros, n_extra, theta, theta_prime):
    a1 = zeros[:, 0]
    a2 = zeros[:, 1]
    f1 = 1.0 - np.abs(a1) ** 2
    f2 = 1.0 - np.abs(a2) ** 2
    # product of the extra factors to first order in zeta
    p0 = np.where(n_extra == 0, 1.0 + 0.0j, np.where(n_extra == 1, -a1, a1 * a2))
    p1 = np.where(
        n_extra == 0,
        0.0 + 0.0j,
        np.where(n_extra == 1, f1.astype(np.complex128), -a1 * f2 - a2 * f1),
    )
    w1 = np.exp(1j * (theta - theta_prime)) * p0
    w2 = np.exp(1j * (theta - 2.0 * theta_prime)) * p1
    return w1, w2


def _np_lemma_sweep(w1, w2, t_grid):
    w1sq = w1 * w1
    sup = np.empty(t_grid.shape[0])
    arg = np.empty(t_grid.shape[0], dtype=np.int64)
    for i, t in enumerate(t_grid):
        vals = np.abs(w2 - t * w1sq)
        j = int(np.argmax(vals))
        sup[i] = vals[j]
        arg[i] = j
    return sup, arg


def _np_improved_sweep(w1, w2, t_grid):
    w1sq = w1 * w1
    mod1sq = np.abs(w1) ** 2
    sup = np.empty(t_grid.shape[0])
    for i, t in enumerate(t_grid):
        if not (-1.0 < t < 1.0):
            sup[i] = np.nan
            continue
        weight = (1.0 + t) if t <= 0.0 else (1.0 - t)
        sup[i] = float(np.max(np.abs(w2 - t * w1sq) + weight * mod1sq))
    return sup


def _np_fs_sweep(a2, a3, mu_grid):
    a2sq = a2 * a2
    sup = np.empty(mu_grid.shape[0])
    arg = np.empty(mu_grid.shape[0], dtype=np.int64)
    for i, mu in enumerate(mu_grid):
        vals = np.abs(a3 - mu * a2sq)
        j = int(np.argmax(vals))
        sup[i] = vals[j]
        arg[i] = j
    return sup, arg


def _np_boundary_abs_max(coeffs, radius, n_grid):
    z = radius * np.exp(2j * np.pi * np.arange(n_grid) / n_grid)
    out = np.empty(coeffs.shape[0])
    for i in range(coeffs.shape[0]):
        acc = np.zeros(n_grid, dtype=np.complex128)
        for c in coeffs[i, ::-1]:
            acc = acc * z + c
        out[i] = float(np.max(np.abs(acc)))
    return out


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:

    @njit(cache=True)
    def _nb_blaschke_w12(zeros, n_extra, theta, theta_prime):
        n = zeros.shape[0]
        w1 = np.empty(n, dtype=np.complex128)
        w2 = np.empty(n, dtype=np.complex128)
        for i in range(n):
            if n_extra[i] == 0:
                p0 = 1.0 + 0.0j
                p1 = 0.0 + 0.0j
            elif n_extra[i] == 1:
                a = zeros[i, 0]
                p0 = -a
                p1 = complex(1.0 - abs(a) ** 2, 0.0)
            else:
                a = zeros[i, 0]
                b = zeros[i, 1]
                fa = 1.0 - abs(a) ** 2
                fb = 1.0 - abs(b) ** 2
                p0 = a * b
                p1 = -a * fb - b * fa
            w1[i] = np.exp(1j * (theta[i] - theta_prime[i])) * p0
            w2[i] = np.exp(1j * (theta[i] - 2.0 * theta_prime[i])) * p1
        return w1, w2

    @njit(cache=True)
    def _nb_lemma_sweep(w1, w2, t_grid):
        m = t_grid.shape[0]
        n = w1.shape[0]
        sup = np.empty(m)
        arg = np.empty(m, dtype=np.int64)
        for i in range(m):
            t = t_grid[i]
            best = -1.0
            bj = 0
            for j in range(n):
                v = abs(w2[j] - t * w1[j] * w1[j])
                if v > best:
                    best = v
                    bj = j
            sup[i] = best
            arg[i] = bj
        return sup, arg

    @njit(cache=True)
    def _nb_improved_sweep(w1, w2, t_grid):
        m = t_grid.shape[0]
        n = w1.shape[0]
        sup = np.empty(m)
        for i in range(m):
            t = t_grid[i]
            if t <= -1.0 or t >= 1.0:
                sup[i] = np.nan
                continue
            weight = 1.0 + t if t <= 0.0 else 1.0 - t
            best = -1.0
            for j in range(n):
                v = abs(w2[j] - t * w1[j] * w1[j]) + weight * abs(w1[j]) ** 2
                if v > best:
                    best = v
            sup[i] = best
        return sup

    @njit(cache=True)
    def _nb_fs_sweep(a2, a3, mu_grid):
        m = mu_grid.shape[0]
        n = a2.shape[0]
        sup = np.empty(m)
        arg = np.empty(m, dtype=np.int64)
        for i in range(m):
            mu = mu_grid[i]
            best = -1.0
            bj = 0
            for j in range(n):
                v = abs(a3[j] - mu * a2[j] * a2[j])
                if v > best:
                    best = v
                    bj = j
            sup[i] = best
            arg[i] = bj
        return sup, arg

    @njit(cache=True)
    def _nb_boundary_abs_max(coeffs, radius, n_grid):
        rows = coeffs.shape[0]
        order = coeffs.shape[1]
        out = np.empty(rows)
        for i in range(rows):
            best = -1.0
            for g in range(n_grid):
                ang = 2.0 * np.pi * g / n_grid
                z = radius * complex(np.cos(ang), np.sin(ang))
                acc = 0.0 + 0.0j
                for c in range(order - 1, -1, -1):
                    acc = acc * z + coeffs[i, c]
                v = abs(acc)
                if v > best:
                    best = v
            out[i] = best
        return out


_NUMPY_IMPL = {
    "blaschke_w12": _np_blaschke_w12,
    "lemma_sweep": _np_lemma_sweep,
    "improved_sweep": _np_improved_sweep,
    "fs_sweep": _np_fs_sweep,
    "boundary_abs_max": _np_boundary_abs_max,
}

if _HAVE_NUMBA:
    _NUMBA_IMPL = {
        "blaschke_w12": _nb_blaschke_w12,
        "lemma_sweep": _nb_lemma_sweep,
        "improved_sweep": _nb_improved_sweep,
        "fs_sweep": _nb_fs_sweep,
        "boundary_abs_max": _nb_boundary_abs_max,
    }
    BACKEND = "numba"
    _ACTIVE = _NUMBA_IMPL
else:
    _NUMBA_IMPL = None
    BACKEND = "numpy"
    _ACTIVE = _NUMPY_IMPL


def implementations() -> dict:
    """Both kernel sets, for the benchmark; the numba entry is None if absent."""
    return {"numpy": _NUMPY_IMPL, "numba": _NUMBA_IMPL}


blaschke_w12 = _ACTIVE["blaschke_w12"]
lemma_sweep = _ACTIVE["lemma_sweep"]
improved_sweep = _ACTIVE["improved_sweep"]
fs_sweep = _ACTIVE["fs_sweep"]
boundary_abs_max = _ACTIVE["boundary_abs_max"]
