"""Exhaustive identity kernels over precomputed operation tables.

Each kernel has a numba loop (early exit) and a vectorised numpy twin that
reports the same first failure in the same row-major order. The numba
versions are used when numba imports and ``SUPERJORDAN_DISABLE_NUMBA`` is
unset; ``use_numba()`` reports the active backend.

All identities are phrased over element indices. The workhorse is the
Leibniz shape, checked for a stack of maps ``D`` at once::

    D[P[x, y]] == add[ s1 * Q1[D[x], y],  s2 * Q2[x, D[y]] ]

where ``s1``/``s2`` optionally apply the negation table. Derivations,
Jordan derivations, superderivations of either degree and every slice of a
(super-)biderivation reduce to this shape by choosing ``P, Q1, Q2``.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

ENV_FLAG = "SUPERJORDAN_DISABLE_NUMBA"

_NUMPY_CHUNK = 1 << 22


def use_numba() -> bool:
    return HAVE_NUMBA and os.environ.get(ENV_FLAG, "").lower() not in ("1", "true", "yes", "on")


# ---------------------------------------------------------------- numpy twins


def _np_leibniz_eval(Ds, xs, ys, P, Q1, Q2, add, neg, neg1, neg2):
    X = xs[:, None]
    Y = ys[None, :]
    lhs = Ds[:, P[X, Y]]
    t1 = Q1[Ds[:, xs][:, :, None], ys[None, None, :]]
    t2 = Q2[xs[None, :, None], Ds[:, ys][:, None, :]]
    if neg1:
        t1 = neg[t1]
    if neg2:
        t2 = neg[t2]
    return lhs == add[t1, t2]


def _np_first_failure(Ds, xs, ys, P, Q1, Q2, add, neg, neg1, neg2):
    per = max(1, len(xs) * len(ys))
    step = max(1, _NUMPY_CHUNK // per)
    for c0 in range(0, Ds.shape[0], step):
        ok = _np_leibniz_eval(Ds[c0 : c0 + step], xs, ys, P, Q1, Q2, add, neg, neg1, neg2)
        if not ok.all():
            return c0 * per + int(np.argmin(ok.ravel()))
    return -1


def _np_survivors(Ds, alive, xs, ys, P, Q1, Q2, add, neg, neg1, neg2):
    per = max(1, len(xs) * len(ys))
    step = max(1, _NUMPY_CHUNK // per)
    live = np.flatnonzero(alive)
    for c0 in range(0, len(live), step):
        sel = live[c0 : c0 + step]
        ok = _np_leibniz_eval(Ds[sel], xs, ys, P, Q1, Q2, add, neg, neg1, neg2)
        alive[sel] = ok.reshape(len(sel), -1).all(axis=1)


def _np_assoc_first_failure(A, B, C, D, n0, n1, n2):
    # A[B[x,y], z] == C[x, D[y,z]]
    for x in range(n0):
        lhs = A[B[x, :n1]][:, :n2]
        rhs = C[x][D[:n1, :n2]]
        bad = lhs != rhs
        if bad.any():
            return x * n1 * n2 + int(np.argmax(bad.ravel()))
    return -1


def _np_distrib_first_failure(Mul, addY, addO, n0, n1):
    # Mul[x, addY[y,z]] == addO[Mul[x,y], Mul[x,z]]
    for x in range(n0):
        row = Mul[x]
        lhs = row[addY[:n1, :n1]]
        rhs = addO[row[:n1][:, None], row[:n1][None, :]]
        bad = lhs != rhs
        if bad.any():
            return x * n1 * n1 + int(np.argmax(bad.ravel()))
    return -1


def _np_hom_tables(mats, coords, moduli, strides):
    img = np.matmul(coords, mats) % moduli
    return (img @ strides).astype(np.int32)


# ---------------------------------------------------------------- numba loops

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _nb_first_failure(Ds, xs, ys, P, Q1, Q2, add, neg, neg1, neg2):
        nx = xs.shape[0]
        ny = ys.shape[0]
        for c in range(Ds.shape[0]):
            D = Ds[c]
            for i in range(nx):
                x = xs[i]
                dx = D[x]
                for j in range(ny):
                    y = ys[j]
                    t1 = Q1[dx, y]
                    t2 = Q2[x, D[y]]
                    if neg1:
                        t1 = neg[t1]
                    if neg2:
                        t2 = neg[t2]
                    if D[P[x, y]] != add[t1, t2]:
                        return (c * nx + i) * ny + j
        return -1

    @njit(cache=True, nogil=True)
    def _nb_survivors(Ds, alive, xs, ys, P, Q1, Q2, add, neg, neg1, neg2):
        nx = xs.shape[0]
        ny = ys.shape[0]
        for c in range(Ds.shape[0]):
            if not alive[c]:
                continue
            D = Ds[c]
            ok = True
            for i in range(nx):
                x = xs[i]
                dx = D[x]
                for j in range(ny):
                    y = ys[j]
                    t1 = Q1[dx, y]
                    t2 = Q2[x, D[y]]
                    if neg1:
                        t1 = neg[t1]
                    if neg2:
                        t2 = neg[t2]
                    if D[P[x, y]] != add[t1, t2]:
                        ok = False
                        break
                if not ok:
                    break
            alive[c] = ok

    @njit(cache=True, nogil=True)
    def _nb_assoc_first_failure(A, B, C, D, n0, n1, n2):
        for x in range(n0):
            for y in range(n1):
                bxy = B[x, y]
                for z in range(n2):
                    if A[bxy, z] != C[x, D[y, z]]:
                        return (x * n1 + y) * n2 + z
        return -1

    @njit(cache=True, nogil=True)
    def _nb_distrib_first_failure(Mul, addY, addO, n0, n1):
        for x in range(n0):
            for y in range(n1):
                mxy = Mul[x, y]
                for z in range(n1):
                    if Mul[x, addY[y, z]] != addO[mxy, Mul[x, z]]:
                        return (x * n1 + y) * n1 + z
        return -1


    @njit(cache=True, nogil=True)
    def _nb_hom_tables(mats, prev, gen, moduli, strides):
        # image of element e = image of prev[e] + image of generator gen[e]
        n, _, kd = mats.shape
        E = prev.shape[0]
        out = np.zeros((n, E), dtype=np.int32)
        acc = np.zeros((E, kd), dtype=np.int64)
        for c in range(n):
            for e in range(1, E):
                p = prev[e]
                g = gen[e]
                idx = 0
                for j in range(kd):
                    v = acc[p, j] + mats[c, g, j]
                    if v >= moduli[j]:
                        v -= moduli[j]
                    acc[e, j] = v
                    idx += v * strides[j]
                out[c, e] = idx
        return out


# ---------------------------------------------------------------- dispatch


def _prep(Ds, xs, ys):
    Ds = np.ascontiguousarray(Ds)
    if Ds.ndim == 1:
        Ds = Ds[None, :]
    return Ds, np.asarray(xs, dtype=np.int64), np.asarray(ys, dtype=np.int64)


def first_failure(Ds, xs, ys, P, Q1, Q2, add, neg, neg1=False, neg2=False) -> int:
    """Flat position ``(c * len(xs) + i) * len(ys) + j`` of the first failing
    triple (map ``c``, ``xs[i]``, ``ys[j]``), or ``-1``."""
    Ds, xs, ys = _prep(Ds, xs, ys)
    if len(xs) == 0 or len(ys) == 0:
        return -1
    if use_numba():
        return int(_nb_first_failure(Ds, xs, ys, P, Q1, Q2, add, neg, bool(neg1), bool(neg2)))
    return _np_first_failure(Ds, xs, ys, P, Q1, Q2, add, neg, neg1, neg2)


def survivors(Ds, alive, xs, ys, P, Q1, Q2, add, neg, neg1=False, neg2=False) -> np.ndarray:
    """Clear ``alive[c]`` for every map ``Ds[c]`` violating the identity; returns ``alive``."""
    Ds, xs, ys = _prep(Ds, xs, ys)
    if len(xs) == 0 or len(ys) == 0:
        return alive
    if use_numba():
        _nb_survivors(Ds, alive, xs, ys, P, Q1, Q2, add, neg, bool(neg1), bool(neg2))
    else:
        _np_survivors(Ds, alive, xs, ys, P, Q1, Q2, add, neg, neg1, neg2)
    return alive


def assoc_first_failure(A, B, C, D, n0: int, n1: int, n2: int) -> int:
    """First ``(x, y, z)`` (flattened) with ``A[B[x,y], z] != C[x, D[y,z]]``."""
    if use_numba():
        return int(_nb_assoc_first_failure(A, B, C, D, n0, n1, n2))
    return _np_assoc_first_failure(A, B, C, D, n0, n1, n2)


def distrib_first_failure(Mul, addY, addO, n0: int, n1: int) -> int:
    """First ``(x, y, z)`` (flattened) with ``Mul[x, y+z] != Mul[x,y] + Mul[x,z]``."""
    if use_numba():
        return int(_nb_distrib_first_failure(Mul, addY, addO, n0, n1))
    return _np_distrib_first_failure(Mul, addY, addO, n0, n1)


def hom_tables(mats, coords, prev, gen, moduli, strides) -> np.ndarray:
    """Element-index tables ``(n, |src|)`` for a stack of reduced image matrices ``(n, k_src, k_dst)``.

    ``prev[e]``/``gen[e]`` give, for every source element but zero, an
    element one generator step below it and that generator.
    """
    mats = np.ascontiguousarray(mats, dtype=np.int64)
    if mats.shape[2] == 0 or len(coords) == 1:
        return np.zeros((mats.shape[0], len(coords)), dtype=np.int32)
    if use_numba():
        return _nb_hom_tables(mats, prev, gen, moduli, strides)
    return _np_hom_tables(mats, coords, moduli, strides)


def unflatten(pos: int, *sizes: int) -> tuple[int, ...]:
    out = []
    for s in reversed(sizes):
        out.append(pos % s)
        pos //= s
    return tuple(reversed(out))
