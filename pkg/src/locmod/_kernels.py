"""Hot inner loops, compiled with numba when available.

Set ``LOCMOD_NUMBA=0`` in the environment to force the pure-numpy path.
Both paths must return identical integers; ``benchmarks/bench_kernels.py``
times them against each other.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    _HAVE_NUMBA = False

USE_NUMBA = _HAVE_NUMBA and os.environ.get("LOCMOD_NUMBA", "1") not in ("0", "false", "no")

__all__ = ["USE_NUMBA", "subspace_compat", "batch_lengths",
           "subspace_compat_numpy", "batch_lengths_numpy"]


# -- subspace containment over F_q -------------------------------------------

def subspace_compat_numpy(ann, img, add, mul):
    """compat[a, b] = 1 iff every row of img[b] is killed by every row of ann[a].

    ann: (N, m, n) annihilator rows, img: (N, d, n) image vectors; entries are
    field elements 0..q-1 combined through the ``add``/``mul`` tables.
    """
    N, m, n = ann.shape
    d = img.shape[1]
    out = np.empty((N, N), dtype=np.uint8)
    if m == 0 or d == 0:
        out[:] = 1
        return out
    chunk = max(1, 200_000 // max(1, N * m * d))
    for s in range(0, N, chunk):
        A = ann[s:s + chunk]                                   # (c, m, n)
        prod = mul[A[:, None, :, None, :], img[None, :, None, :, :]]  # (c, N, m, d, n)
        acc = prod[..., 0]
        for k in range(1, n):
            acc = add[acc, prod[..., k]]
        out[s:s + chunk] = (acc == 0).all(axis=(2, 3))
    return out


def batch_lengths_numpy(pairing, trans, finite, positive):
    """Iwahori-Matsumoto lengths for a batch of elements.

    pairing: (R, g) integer pairings of positive affine roots with translation
    coordinates; trans: (M, g); finite: (M,) W_0 indices; positive: (|W_0|, R)
    booleans, true where w^{-1} b is positive.
    """
    p = trans @ pairing.T                                       # (M, R)
    pos = positive[finite]
    return np.where(pos, np.abs(p), np.abs(p - 1)).sum(axis=1)


if _HAVE_NUMBA:
    @numba.njit(cache=True)
    def _subspace_compat_nb(ann, img, add, mul):
        N, m, n = ann.shape
        d = img.shape[1]
        out = np.ones((N, N), dtype=np.uint8)
        for a in range(N):
            for b in range(N):
                ok = True
                for i in range(m):
                    if not ok:
                        break
                    for j in range(d):
                        acc = 0
                        for k in range(n):
                            acc = add[acc, mul[ann[a, i, k], img[b, j, k]]]
                        if acc != 0:
                            ok = False
                            break
                if not ok:
                    out[a, b] = 0
        return out

    @numba.njit(cache=True)
    def _batch_lengths_nb(pairing, trans, finite, positive):
        M = trans.shape[0]
        R, g = pairing.shape
        out = np.zeros(M, dtype=np.int64)
        for r in range(M):
            w = finite[r]
            tot = 0
            for b in range(R):
                p = 0
                for j in range(g):
                    p += pairing[b, j] * trans[r, j]
                if positive[w, b]:
                    tot += abs(p)
                else:
                    tot += abs(p - 1)
            out[r] = tot
        return out


def subspace_compat(ann, img, add, mul):
    if USE_NUMBA:
        return _subspace_compat_nb(ann, img, add, mul)
    return subspace_compat_numpy(ann, img, add, mul)


def batch_lengths(pairing, trans, finite, positive):
    if USE_NUMBA:
        return _batch_lengths_nb(pairing, trans, finite, positive)
    return batch_lengths_numpy(pairing, trans, finite, positive)
