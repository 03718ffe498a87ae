"""Hot loops of the mod-p linear algebra, compiled with numba when available.

Set ``PRESEKIT_NO_NUMBA=1`` to force the pure-numpy implementations.  Both
back ends produce bit-identical results.
"""

from __future__ import annotations

import os

import numpy as np

_SPLIT = 1 << 15


def _numba_wanted() -> bool:
    return os.environ.get("PRESEKIT_NO_NUMBA", "").strip().lower() in ("", "0", "false", "no")


def _inv_mod(a: int, p: int) -> int:
    return pow(int(a), p - 2, p)


def rref_numpy(a: np.ndarray, p: int) -> np.ndarray:
    """Reduce ``a`` in place to reduced row echelon form; return pivot columns."""
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = _inv_mod(a[r, c], p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r]) % p) % p
        pivots.append(c)
        r += 1
    return np.array(pivots, dtype=np.int64)


def matmul_numpy(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    # entries < 2^30: split b so every partial product sum stays below 2^63
    hi = b // _SPLIT
    lo = b % _SPLIT
    out = (a @ hi) % p
    out = (out * _SPLIT + (a @ lo)) % p
    return out


rref_numba = None
matmul_numba = None

if _numba_wanted():
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a declared dependency
        njit = None

    if njit is not None:

        @njit(cache=True)
        def _inv_mod_nb(a, p):
            t, new_t = 0, 1
            r, new_r = p, a % p
            while new_r != 0:
                q = r // new_r
                t, new_t = new_t, t - q * new_t
                r, new_r = new_r, r - q * new_r
            if t < 0:
                t += p
            return t

        @njit(cache=True)
        def rref_numba(a, p):
            rows, cols = a.shape
            pivots = np.empty(min(rows, cols), dtype=np.int64)
            support = np.empty(cols, dtype=np.int64)
            r = 0
            for c in range(cols):
                if r == rows:
                    break
                k = -1
                for i in range(r, rows):
                    if a[i, c] != 0:
                        k = i
                        break
                if k < 0:
                    continue
                if k != r:
                    for j in range(cols):
                        tmp = a[r, j]
                        a[r, j] = a[k, j]
                        a[k, j] = tmp
                inv = _inv_mod_nb(a[r, c], p)
                nnz = 0
                for j in range(c, cols):
                    if a[r, j] != 0:
                        a[r, j] = (a[r, j] * inv) % p
                        support[nnz] = j
                        nnz += 1
                for i in range(rows):
                    if i == r:
                        continue
                    f = a[i, c]
                    if f == 0:
                        continue
                    # the pivot row is usually sparse; touch only its support
                    for t in range(nnz):
                        j = support[t]
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
                pivots[r] = c
                r += 1
            return pivots[:r].copy()

        @njit(cache=True)
        def matmul_numba(a, b, p):
            # same limb split as the numpy path, so sums reduce once per row
            n, k = a.shape
            m = b.shape[1]
            hi = b // 32768
            lo = b % 32768
            out = np.zeros((n, m), dtype=np.int64)
            acc_hi = np.zeros(m, dtype=np.int64)
            acc_lo = np.zeros(m, dtype=np.int64)
            for i in range(n):
                acc_hi[:] = 0
                acc_lo[:] = 0
                for t in range(k):
                    x = a[i, t]
                    if x == 0:
                        continue
                    for j in range(m):
                        acc_hi[j] += x * hi[t, j]
                        acc_lo[j] += x * lo[t, j]
                for j in range(m):
                    out[i, j] = ((acc_hi[j] % p) * 32768 + acc_lo[j]) % p
            return out


def backend() -> str:
    """Name of the active kernel back end."""
    return "numba" if rref_numba is not None else "numpy"


def rref_inplace(a: np.ndarray, p: int) -> np.ndarray:
    if rref_numba is not None and a.size:
        return rref_numba(a, p)
    return rref_numpy(a, p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if matmul_numba is not None and a.size and b.size:
        return matmul_numba(np.ascontiguousarray(a), np.ascontiguousarray(b), p)
    return matmul_numpy(a, b, p)
