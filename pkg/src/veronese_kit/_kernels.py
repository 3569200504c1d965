"""Mod-p elimination kernels on int64 arrays.

This is the hot path for the prime-field lane: determinants, batched maximal
minors, rank and reduced row echelon form, all on numpy int64 matrices with
entries already reduced mod p. Two interchangeable implementations exist:

* loop kernels compiled with numba's @njit (default when numba imports), and
* vectorized pure-numpy fallbacks.

Set VERONESE_KIT_PURE_NUMPY=1 to force the numpy fallbacks; the environment
variable is read once at import. `BACKEND` records which lane is active and
`IMPLS` exposes both for the benchmark and the cross-checking tests.

All kernels assume p is prime and (p-1)^2 fits in int64 (enforced upstream
by `fields.Field.prime`). Inputs are never mutated.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_FLAG = "VERONESE_KIT_PURE_NUMPY"

_force_numpy = os.environ.get(_ENV_FLAG, "") not in ("", "0")

njit = None
if not _force_numpy:
    try:
        from numba import njit  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - numba is a declared dependency
        njit = None

NUMBA_ACTIVE = njit is not None
BACKEND = "numba" if NUMBA_ACTIVE else "numpy"


# ---------------------------------------------------------------------------
# loop implementations (numba-compilable; also runnable as plain python)
# ---------------------------------------------------------------------------


def _inv_mod_loops(x, p):
    # Fermat inverse by square-and-multiply; x must be nonzero mod p.
    r = np.int64(1)
    b = np.int64(x % p)
    e = p - 2
    while e > 0:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


def _det_loops(a, p):
    a = a % p
    n = a.shape[0]
    det = np.int64(1)
    for k in range(n):
        piv = -1
        for i in range(k, n):
            if a[i, k] != 0:
                piv = i
                break
        if piv < 0:
            return np.int64(0)
        if piv != k:
            for j in range(k, n):
                tmp = a[k, j]
                a[k, j] = a[piv, j]
                a[piv, j] = tmp
            det = (p - det) % p
        det = (det * a[k, k]) % p
        inv = _inv_mod_loops(a[k, k], p)
        for i in range(k + 1, n):
            if a[i, k] != 0:
                f = (a[i, k] * inv) % p
                for j in range(k, n):
                    a[i, j] = (a[i, j] - f * a[k, j]) % p
    return det


def _batch_det_loops(stack, p):
    m = stack.shape[0]
    out = np.empty(m, dtype=np.int64)
    for t in range(m):
        out[t] = _det_loops(stack[t].copy(), p)
    return out


def _rref_loops(a, p):
    # Returns (reduced matrix, pivot column per pivot row (-1 padded), rank).
    a = a % p
    rows, cols = a.shape
    pivots = np.full(min(rows, cols), -1, dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        inv = _inv_mod_loops(a[r, c], p)
        for j in range(cols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i != r and a[i, c] != 0:
                f = a[i, c]
                for j in range(cols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        pivots[r] = c
        r += 1
    return a, pivots, r


def _rank_loops(a, p):
    a = a % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        inv = _inv_mod_loops(a[r, c], p)
        for i in range(r + 1, rows):
            if a[i, c] != 0:
                f = (a[i, c] * inv) % p
                for j in range(c, cols):
                    a[i, j] = (a[i, j] - f * a[r, j]) % p
        r += 1
    return r


# ---------------------------------------------------------------------------
# vectorized numpy fallbacks
# ---------------------------------------------------------------------------


def _det_numpy(a, p):
    a = np.array(a, dtype=np.int64) % p
    n = a.shape[0]
    det = 1
    for k in range(n):
        nz = np.nonzero(a[k:, k])[0]
        if nz.size == 0:
            return 0
        i = k + int(nz[0])
        if i != k:
            a[[k, i]] = a[[i, k]]
            det = p - det
        piv = int(a[k, k])
        det = det * piv % p
        if k + 1 < n:
            inv = pow(piv, p - 2, p)
            f = a[k + 1 :, k] * inv % p
            a[k + 1 :, k:] = (a[k + 1 :, k:] - f[:, None] * a[k, k:]) % p
    return det


def _batch_det_numpy(stack, p):
    m = stack.shape[0]
    out = np.empty(m, dtype=np.int64)
    for t in range(m):
        out[t] = _det_numpy(stack[t], p)
    return out


def _rref_numpy(a, p):
    a = np.array(a, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = np.full(min(rows, cols), -1, dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        other = np.nonzero(a[:, c])[0]
        for i in other:
            if i != r:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots[r] = c
        r += 1
    return a, pivots, r


def _rank_numpy(a, p):
    return int(_rref_numpy(a, p)[2])


# ---------------------------------------------------------------------------
# backend selection
# ---------------------------------------------------------------------------

if NUMBA_ACTIVE:
    # rebind bottom-up so the jitted callers resolve jitted callees
    _inv_mod_loops = njit(cache=True)(_inv_mod_loops)
    _det_loops = njit(cache=True)(_det_loops)
    _det_numba = _det_loops
    _batch_det_numba = njit(cache=True)(_batch_det_loops)
    _rref_numba = njit(cache=True)(_rref_loops)
    _rank_numba = njit(cache=True)(_rank_loops)

    def _det_front(a, p):
        return _det_numba(np.ascontiguousarray(a, dtype=np.int64), np.int64(p))

    def _batch_det_front(stack, p):
        return _batch_det_numba(np.ascontiguousarray(stack, dtype=np.int64), np.int64(p))

    def _rref_front(a, p):
        m, piv, r = _rref_numba(np.ascontiguousarray(a, dtype=np.int64), np.int64(p))
        return m, piv, int(r)

    def _rank_front(a, p):
        return int(_rank_numba(np.ascontiguousarray(a, dtype=np.int64), np.int64(p)))

    IMPLS = {
        "numba": {
            "det": _det_front,
            "batch_det": _batch_det_front,
            "rref": _rref_front,
            "rank": _rank_front,
        },
        "numpy": {
            "det": lambda a, p: int(_det_numpy(a, p)),
            "batch_det": _batch_det_numpy,
            "rref": _rref_numpy,
            "rank": _rank_numpy,
        },
    }
else:
    IMPLS = {
        "numpy": {
            "det": lambda a, p: int(_det_numpy(a, p)),
            "batch_det": _batch_det_numpy,
            "rref": _rref_numpy,
            "rank": _rank_numpy,
        },
    }

_active = IMPLS[BACKEND]


def fp_det(a: np.ndarray, p: int) -> int:
    """det(a) mod p for a square int64 matrix."""
    return int(_active["det"](a, p))


def fp_batch_det(stack: np.ndarray, p: int) -> np.ndarray:
    """Determinants of a (m, k, k) stack, as an int64 vector of residues."""
    return np.asarray(_active["batch_det"](stack, p), dtype=np.int64)


def fp_rref(a: np.ndarray, p: int):
    """Reduced row echelon form mod p: (matrix, pivot columns (-1 padded), rank)."""
    m, piv, r = _active["rref"](a, p)
    return np.asarray(m), np.asarray(piv), int(r)


def fp_rank(a: np.ndarray, p: int) -> int:
    return int(_active["rank"](a, p))
