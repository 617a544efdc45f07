"""Dense linear algebra over F_p: the numeric kernels.

Two implementations of the same row reduction live here.  The numba one is
used by default; setting ``MAXMULT_DISABLE_NUMBA=1`` in the environment (or
running where numba is not importable) selects the vectorised numpy path.
Both work on ``int64`` arrays with entries in ``[0, p)`` and require
``p < 2**31`` so that products of two entries fit in 63 bits.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("MAXMULT_DISABLE_NUMBA", "").lower() not in ("1", "true", "yes")


def _rref_numpy(a: np.ndarray, p: int):
    a = np.array(a, dtype=np.int64) % p
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
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        f = a[:, c].copy()
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            a[hit] = (a[hit] - np.outer(f[hit], a[r]) % p) % p
        pivots.append(c)
        r += 1
    return a, np.array(pivots, dtype=np.int64)


def _inv_mod(a, p):
    # extended Euclid; a is nonzero mod p
    t, newt = 0, 1
    r, newr = p, a % p
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    if t < 0:
        t += p
    return t


if numba is not None:
    _inv_mod_jit = numba.njit(cache=True)(_inv_mod)

    @numba.njit(cache=True)
    def _rref_numba_inplace(a, p):
        rows, cols = a.shape
        piv = np.empty(min(rows, cols), dtype=np.int64)
        npiv = 0
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
            inv = _inv_mod_jit(a[r, c], p)
            for j in range(c, cols):
                a[r, j] = a[r, j] * inv % p
            for i in range(rows):
                if i != r:
                    f = a[i, c]
                    if f != 0:
                        for j in range(c, cols):
                            a[i, j] = (a[i, j] - f * a[r, j]) % p
            piv[npiv] = c
            npiv += 1
            r += 1
        return piv[:npiv]


def _rref_numba(a: np.ndarray, p: int):
    a = np.ascontiguousarray(np.array(a, dtype=np.int64) % p)
    if a.size == 0:
        return a, np.zeros(0, dtype=np.int64)
    piv = _rref_numba_inplace(a, np.int64(p))
    return a, piv


def rref(a, p: int, backend: str | None = None):
    """Reduced row echelon form of ``a`` over F_p and its pivot columns."""
    if backend is None:
        backend = "numba" if USE_NUMBA else "numpy"
    a = np.asarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("expected a matrix")
    if backend == "numba":
        if numba is None:
            raise RuntimeError("numba backend requested but numba is not available")
        return _rref_numba(a, p)
    if backend == "numpy":
        return _rref_numpy(a, p)
    raise ValueError(f"unknown backend {backend!r}")


def rank(a, p: int, backend: str | None = None) -> int:
    a = np.asarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    return len(rref(a, p, backend)[1])


def nullspace(a, p: int, backend: str | None = None) -> np.ndarray:
    """Basis of ``{v : a @ v = 0 (mod p)}`` as the rows of the returned array."""
    a = np.asarray(a, dtype=np.int64)
    rows, cols = a.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    red, piv = rref(a, p, backend)
    pivset = set(int(c) for c in piv)
    free = [c for c in range(cols) if c not in pivset]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[k, fc] = 1
        for i, pc in enumerate(piv):
            basis[k, pc] = (-red[i, fc]) % p
    return basis
