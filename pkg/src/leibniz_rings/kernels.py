"""Batch kernels for the census: identity checks and automorphism transport.

Tables are int64 arrays of shape ``(batch, n, n, n)`` with
``T[b, i, j] = [e_i, e_j]`` as a coefficient vector, and ``moduli`` holds
the factor orders (0 = infinite, no reduction).  Entries stay tiny
(factor orders below a few hundred), so int64 never overflows here; the
exact big-int path lives in :mod:`leibniz_rings.ring`.

Two implementations share each signature: numba-compiled loops with an
early exit per table, and vectorised numpy.  ``LEIBNIZ_RINGS_BACKEND``
picks one (``numba`` or ``numpy``); numba is the default when it imports.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

BACKENDS = ("numba", "numpy") if numba is not None else ("numpy",)


def _default_backend() -> str:
    want = os.environ.get("LEIBNIZ_RINGS_BACKEND", "").strip().lower()
    if want in ("numpy", "python", "off", "0"):
        return "numpy"
    if want and want != "numba":
        raise ValueError(f"unknown LEIBNIZ_RINGS_BACKEND={want!r}")
    return "numba" if numba is not None else "numpy"


BACKEND = _default_backend()


def _pick(backend):
    backend = backend or BACKEND
    if backend not in BACKENDS:
        raise ValueError(f"backend {backend!r} unavailable; have {BACKENDS}")
    return backend


def _reduce_np(x, moduli):
    safe = np.where(moduli > 0, moduli, 1)
    return np.where(moduli > 0, np.mod(x, safe), x)


# -- numpy -------------------------------------------------------------------


def _left_mask_np(T, moduli, chunk=1 << 15):
    out = np.empty(T.shape[0], dtype=bool)
    for s in range(0, T.shape[0], chunk):
        t = T[s : s + chunk]
        # [e_i,[e_j,e_k]] - [[e_i,e_j],e_k] - [e_j,[e_i,e_k]]
        d = (
            np.einsum("bjkl,bilc->bijkc", t, t)
            - np.einsum("bijl,blkc->bijkc", t, t)
            - np.einsum("bikl,bjlc->bijkc", t, t)
        )
        d = _reduce_np(d, moduli)
        out[s : s + chunk] = ~d.reshape(d.shape[0], -1).any(axis=1)
    return out


def _transport_np(T, autos, inverses, moduli):
    inner = np.einsum("aix,ajy,xyl->aijl", inverses, inverses, T)
    return _reduce_np(np.einsum("aijl,alc->aijc", inner, autos), moduli)


# -- numba -------------------------------------------------------------------

if numba is not None:

    @numba.njit(cache=True)
    def _red(v, m):
        if m > 0:
            return v % m
        return v

    @numba.njit(cache=True)
    def _triple_ok(T, b, i, j, k, moduli):
        n = T.shape[1]
        for c in range(n):
            s = 0
            for l in range(n):
                s += T[b, j, k, l] * T[b, i, l, c]
                s -= T[b, i, j, l] * T[b, l, k, c]
                s -= T[b, i, k, l] * T[b, j, l, c]
            if _red(s, moduli[c]) != 0:
                return False
        return True

    @numba.njit(cache=True)
    def _left_mask_nb(T, moduli):
        B, n = T.shape[0], T.shape[1]
        out = np.zeros(B, dtype=np.bool_)
        for b in range(B):
            ok = True
            # diagonal triples reject most candidates; try them first
            for i in range(n):
                if not _triple_ok(T, b, i, i, i, moduli):
                    ok = False
                    break
            if ok:
                for i in range(n):
                    for j in range(n):
                        for k in range(n):
                            if i == j and j == k:
                                continue
                            if not _triple_ok(T, b, i, j, k, moduli):
                                ok = False
                                break
                        if not ok:
                            break
                    if not ok:
                        break
            out[b] = ok
        return out

    @numba.njit(cache=True)
    def _transport_nb(T, autos, inverses, moduli):
        A, n = autos.shape[0], T.shape[0]
        out = np.empty((A, n, n, n), dtype=np.int64)
        v = np.empty(n, dtype=np.int64)
        for a in range(A):
            for i in range(n):
                for j in range(n):
                    for l in range(n):
                        s = 0
                        for x in range(n):
                            qx = inverses[a, i, x]
                            if qx == 0:
                                continue
                            for y in range(n):
                                s += qx * inverses[a, j, y] * T[x, y, l]
                        v[l] = s
                    for c in range(n):
                        s = 0
                        for l in range(n):
                            s += v[l] * autos[a, l, c]
                        out[a, i, j, c] = _red(s, moduli[c])
        return out


# -- public entry points -------------------------------------------------------


def left_leibniz_mask(tables, moduli, backend=None) -> np.ndarray:
    """Boolean mask: which tables satisfy the left Leibniz identity on generators."""
    T = np.ascontiguousarray(tables, dtype=np.int64)
    m = np.ascontiguousarray(moduli, dtype=np.int64)
    if T.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    if _pick(backend) == "numba":
        return _left_mask_nb(T, m)
    return _left_mask_np(T, m)


def transport_tables(table, autos, inverses, moduli, backend=None) -> np.ndarray:
    """All transports ``phi([phi^-1 x, phi^-1 y])`` of one table.

    ``autos[a]`` has the images of the generators as rows; ``inverses[a]``
    is the matching inverse automorphism.
    """
    T = np.ascontiguousarray(table, dtype=np.int64)
    P = np.ascontiguousarray(autos, dtype=np.int64)
    Q = np.ascontiguousarray(inverses, dtype=np.int64)
    m = np.ascontiguousarray(moduli, dtype=np.int64)
    if _pick(backend) == "numba":
        return _transport_nb(T, P, Q, m)
    return _transport_np(T, P, Q, m)


def table_weights(moduli, n) -> np.ndarray:
    """Mixed-radix weights so that integer keys sort like row-major tables."""
    radix = np.tile(np.asarray(moduli, dtype=np.int64), n * n)
    w = np.ones(radix.size, dtype=np.int64)
    for t in range(radix.size - 2, -1, -1):
        w[t] = w[t + 1] * radix[t + 1]
    return w


def table_keys(tables, weights) -> np.ndarray:
    T = np.asarray(tables, dtype=np.int64)
    return T.reshape(T.shape[0], -1) @ weights
