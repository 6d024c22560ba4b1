"""Hot numeric kernels: numba-jitted with a pure-numpy fallback.

The fallback is selected at import time by the environment variable
FLAGCHAR_NUMBA: set it to "0" to force the numpy path (used by the
benchmark and by CI environments without a working numba).  Both paths
compute bit-identical results; tests assert this.

Everything here is exact integer arithmetic on int64 arrays; callers are
responsible for keeping magnitudes inside int64 (character supports and
coefficient sizes in this package are far below the overflow range).
"""

from __future__ import annotations

import os

import numpy as np

_want_numba = os.environ.get("FLAGCHAR_NUMBA", "1").lower() not in ("0", "false", "no")

if _want_numba:
    try:
        from numba import njit

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - environment without numba
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False


def _convolve_packed_py(keys_a, vals_a, keys_b, vals_b):
    """Convolution of two packed-key integer distributions (numpy path)."""
    sums = (keys_a[:, None] + keys_b[None, :]).ravel()
    prods = (vals_a[:, None] * vals_b[None, :]).ravel()
    order = np.argsort(sums, kind="stable")
    sums = sums[order]
    prods = prods[order]
    boundaries = np.empty(len(sums), dtype=bool)
    boundaries[0] = True
    boundaries[1:] = sums[1:] != sums[:-1]
    idx = np.cumsum(boundaries) - 1
    out_keys = sums[boundaries]
    out_vals = np.zeros(len(out_keys), dtype=np.int64)
    np.add.at(out_vals, idx, prods)
    keep = out_vals != 0
    return out_keys[keep], out_vals[keep]


def _rank_mod_p_py(mat, p):
    """Rank of an integer matrix over F_p (numpy row reduction)."""
    m = np.mod(mat, p).astype(np.int64)
    rows, cols = m.shape
    rank = 0
    for c in range(cols):
        piv = -1
        for r in range(rank, rows):
            if m[r, c] % p:
                piv = r
                break
        if piv < 0:
            continue
        m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, c]), p - 2, p)
        m[rank] = (m[rank] * inv) % p
        nz = np.nonzero(m[:, c])[0]
        nz = nz[nz != rank]
        m[nz] = (m[nz] - np.outer(m[nz, c], m[rank])) % p
        rank += 1
        if rank == rows:
            break
    return rank


if HAVE_NUMBA:

    @njit(cache=True)
    def _convolve_packed_nb(keys_a, vals_a, keys_b, vals_b):
        n = len(keys_a) * len(keys_b)
        sums = np.empty(n, dtype=np.int64)
        prods = np.empty(n, dtype=np.int64)
        k = 0
        for i in range(len(keys_a)):
            for j in range(len(keys_b)):
                sums[k] = keys_a[i] + keys_b[j]
                prods[k] = vals_a[i] * vals_b[j]
                k += 1
        order = np.argsort(sums, kind="mergesort")
        out_keys = np.empty(n, dtype=np.int64)
        out_vals = np.empty(n, dtype=np.int64)
        m = -1
        prev = np.int64(0)
        first = True
        for t in range(n):
            s = sums[order[t]]
            v = prods[order[t]]
            if first or s != prev:
                m += 1
                out_keys[m] = s
                out_vals[m] = v
                prev = s
                first = False
            else:
                out_vals[m] += v
        cnt = 0
        for t in range(m + 1):
            if out_vals[t] != 0:
                out_keys[cnt] = out_keys[t]
                out_vals[cnt] = out_vals[t]
                cnt += 1
        return out_keys[:cnt].copy(), out_vals[:cnt].copy()

    @njit(cache=True)
    def _rank_mod_p_nb(mat, p):
        m = np.mod(mat, p)
        rows, cols = m.shape
        rank = 0
        for c in range(cols):
            piv = -1
            for r in range(rank, rows):
                if m[r, c] % p != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            for j in range(cols):
                tmp = m[rank, j]
                m[rank, j] = m[piv, j]
                m[piv, j] = tmp
            # Fermat inverse; p is prime
            inv = np.int64(1)
            base = m[rank, c] % p
            e = p - 2
            while e > 0:
                if e & 1:
                    inv = (inv * base) % p
                base = (base * base) % p
                e >>= 1
            for j in range(cols):
                m[rank, j] = (m[rank, j] * inv) % p
            for r in range(rows):
                if r != rank and m[r, c] != 0:
                    f = m[r, c]
                    for j in range(cols):
                        m[r, j] = (m[r, j] - f * m[rank, j]) % p
            rank += 1
            if rank == rows:
                break
        return rank


def convolve_packed(keys_a, vals_a, keys_b, vals_b):
    keys_a = np.ascontiguousarray(keys_a, dtype=np.int64)
    vals_a = np.ascontiguousarray(vals_a, dtype=np.int64)
    keys_b = np.ascontiguousarray(keys_b, dtype=np.int64)
    vals_b = np.ascontiguousarray(vals_b, dtype=np.int64)
    if len(keys_a) == 0 or len(keys_b) == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    if HAVE_NUMBA:
        return _convolve_packed_nb(keys_a, vals_a, keys_b, vals_b)
    return _convolve_packed_py(keys_a, vals_a, keys_b, vals_b)


def rank_mod_p(mat, p: int) -> int:
    mat = np.ascontiguousarray(mat, dtype=np.int64)
    if mat.size == 0:
        return 0
    if HAVE_NUMBA:
        return int(_rank_mod_p_nb(mat, np.int64(p)))
    return int(_rank_mod_p_py(mat, p))
