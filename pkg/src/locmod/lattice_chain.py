"""Finite-field points of lattice-chain local models for GL_n and GSp_2g.

The standard chain is W_c = span(u e_1, ..., u e_c, e_{c+1}, ..., e_n) for c in
a chosen subset C of {0, ..., n-1}, with W_n = u W_0.  Reduced mod u, the
inclusion W_{c'} -> W_c (c < c') is the identity with the coordinates
c+1..c' zeroed.  A point is a tuple of d-dimensional subspaces F_c of F_q^n
with psi(F_{c'}) inside F_c for consecutive members of the chain; in the
symplectic case additionally F_{n-c} is the annihilator of F_c under the
antidiagonal form.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import CapExceeded, DomainError

__all__ = [
    "FiniteField", "ChainShape", "ChainConfiguration", "gl_shape", "gsp_shape",
    "standard_transitions", "subspaces", "enumerate_gl_points", "enumerate_gsp_points",
    "compare_with_admissible", "parahoric_nodes", "MAX_N", "MAX_CONFIGS",
]

MAX_N = 4
MAX_CONFIGS = 2_000_000
SUPPORTED_Q = (2, 3, 4, 5)


# -- finite fields -------------------------------------------------------------

@dataclass(frozen=True)
class FiniteField:
    """F_q for q in {2, 3, 4, 5}; elements are the integers 0..q-1."""
    q: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray


@lru_cache(maxsize=None)
def field(q: int) -> FiniteField:
    if q not in SUPPORTED_Q:
        raise DomainError(f"q must be one of {SUPPORTED_Q}, got {q}")
    if q == 4:
        # F_2[x]/(x^2 + x + 1), element a + b x stored as a + 2b
        add = np.array([[a ^ b for b in range(4)] for a in range(4)], dtype=np.int64)

        def m(a, b):
            r = 0
            for i in range(2):
                if (b >> i) & 1:
                    r ^= a << i
            if r & 4:
                r ^= 0b111
            return r
        mul = np.array([[m(a, b) for b in range(4)] for a in range(4)], dtype=np.int64)
    else:
        add = np.array([[(a + b) % q for b in range(q)] for a in range(q)], dtype=np.int64)
        mul = np.array([[(a * b) % q for b in range(q)] for a in range(q)], dtype=np.int64)
    neg = np.array([int(np.nonzero(add[a] == 0)[0][0]) for a in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
    for arr in (add, mul, neg, inv):
        arr.setflags(write=False)
    return FiniteField(q, add, mul, neg, inv)


def _matvec(F: FiniteField, A: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = np.zeros(A.shape[0], dtype=np.int64)
    for k in range(A.shape[1]):
        out = F.add[out, F.mul[A[:, k], v[k]]]
    return out


def _rref(F: FiniteField, rows: np.ndarray) -> np.ndarray:
    A = rows.copy()
    r = 0
    for c in range(A.shape[1]):
        p = next((i for i in range(r, A.shape[0]) if A[i, c]), None)
        if p is None:
            continue
        A[[r, p]] = A[[p, r]]
        A[r] = F.mul[A[r], F.inv[A[r, c]]]
        for i in range(A.shape[0]):
            if i != r and A[i, c]:
                A[i] = F.add[A[i], F.mul[F.neg[A[i, c]], A[r]]]
        r += 1
    return A[:r]


@lru_cache(maxsize=None)
def subspaces(n: int, d: int, q: int) -> tuple[np.ndarray, ...]:
    """All d-dimensional subspaces of F_q^n as RREF (d, n) arrays, by pivot set."""
    F = field(q)
    out = []
    for piv in combinations(range(n), d):
        free = [(r, c) for r in range(d) for c in range(piv[r] + 1, n) if c not in piv]
        for vals in product(range(q), repeat=len(free)):
            M = np.zeros((d, n), dtype=np.int64)
            for r, c in enumerate(piv):
                M[r, c] = 1
            for (r, c), v in zip(free, vals):
                M[r, c] = v
            M.setflags(write=False)
            out.append(M)
    return tuple(out)


def _annihilator(F: FiniteField, S: np.ndarray, n: int) -> np.ndarray:
    """Rows spanning {y : y . s = 0 for all rows s of S} (S in RREF)."""
    piv = [int(np.nonzero(row)[0][0]) for row in S]
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for r, p in enumerate(piv):
            out[k, p] = F.neg[S[r, f]]
    return out


# -- shapes ---------------------------------------------------------------------

@dataclass(frozen=True)
class ChainShape:
    """Indices C of the lattices W_c in the chain; ranks are the successive gaps."""
    group: str                 # "gl" or "gsp"
    n: int
    chain: tuple[int, ...]

    @property
    def ranks(self) -> tuple[int, ...]:
        ext = self.chain + (self.n,)
        return tuple(b - a for a, b in zip(ext, ext[1:]))

    @property
    def period(self) -> int:
        return len(self.chain)

    def dual_position(self, i: int) -> int:
        c = (self.n - self.chain[i]) % self.n
        return self.chain.index(c)


def _parse_shape(n: int, shape) -> tuple[int, ...]:
    if shape in ("standard", "single", None):
        return (0,)
    if shape == "maximal":
        return tuple(range(n))
    if isinstance(shape, str):
        shape = [int(x) for x in shape.split(",") if x.strip()]
    ranks = list(shape)
    if any(r <= 0 for r in ranks) or sum(ranks) != n:
        raise DomainError(f"chain ranks {ranks} must be positive and sum to n = {n}")
    chain, c = [], 0
    for r in ranks:
        chain.append(c)
        c += r
    return tuple(chain)


def gl_shape(n: int, shape="maximal") -> ChainShape:
    if n < 1:
        raise DomainError("n must be positive")
    return ChainShape("gl", n, _parse_shape(n, shape))


def gsp_shape(n: int, shape="standard") -> ChainShape:
    if n < 2 or n % 2:
        raise DomainError(f"GSp needs even n >= 2, got {n}")
    chain = _parse_shape(n, shape)
    if any((n - c) % n not in chain for c in chain):
        raise DomainError(f"chain {list(chain)} is not self-dual (need c and n-c together)")
    return ChainShape("gsp", n, chain)


def standard_transitions(shape: ChainShape) -> list[np.ndarray]:
    """psi_i: W_{c_{i+1}} -> W_{c_i} mod u, as 0/1 matrices (the last one crosses the seam)."""
    n = shape.n
    ext = shape.chain + (n,)
    out = []
    for a, b in zip(ext, ext[1:]):
        M = np.eye(n, dtype=np.int64)
        for j in range(a, b):
            M[j, j] = 0
        out.append(M)
    return out


def symplectic_form(n: int) -> np.ndarray:
    g = n // 2
    J = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        J[i, n - 1 - i] = 1 if i < g else -1
    return J


# -- configurations ---------------------------------------------------------------

@dataclass(frozen=True)
class ChainConfiguration:
    shape: ChainShape
    q: int
    subspaces: tuple[np.ndarray, ...]

    def validate(self) -> bool:
        F = field(self.q)
        n = self.shape.n
        psis = standard_transitions(self.shape)
        r = self.shape.period
        for i in range(r):
            tgt = self.subspaces[i]
            src = self.subspaces[(i + 1) % r]
            ann = _annihilator(F, tgt, n)
            for v in src:
                w = _matvec(F, psis[i], v)
                if ann.size and _matvec(F, ann, w).any():
                    return False
        if self.shape.group == "gsp":
            J = symplectic_form(n) % self.q if self.q != 4 else np.abs(symplectic_form(n))
            for i in range(r):
                j = self.shape.dual_position(i)
                for x in self.subspaces[i]:
                    for y in self.subspaces[j]:
                        if _matvec(F, y[None, :], _matvec(F, J, x))[0]:
                            return False
        return True

    def to_json(self) -> dict:
        return {"chain": list(self.shape.chain),
                "subspaces": [S.tolist() for S in self.subspaces]}


@dataclass
class _Tables:
    subs: tuple
    compat: list          # compat[i][a, b]: psi_i(S_b) inside S_a
    perp: np.ndarray | None


def _build_tables(shape: ChainShape, d: int, q: int) -> _Tables:
    F = field(q)
    n = shape.n
    subs = subspaces(n, d, q)
    N = len(subs)
    ann = np.array([_annihilator(F, S, n) for S in subs], dtype=np.int64).reshape(N, n - d, n)
    compat = []
    for psi in standard_transitions(shape):
        img = np.zeros((N, d, n), dtype=np.int64)
        for b, S in enumerate(subs):
            for r in range(d):
                img[b, r] = _matvec(F, psi, S[r])
        compat.append(_kernels.subspace_compat(ann, img, F.add, F.mul))
    perp = None
    if shape.group == "gsp":
        J = symplectic_form(n)
        Jq = np.vectorize(lambda x: F.neg[1] if x < 0 else x)(J)
        index = {S.tobytes(): i for i, S in enumerate(subs)}
        perp = np.empty(N, dtype=np.int64)
        for i, S in enumerate(subs):
            # perp(S) = annihilator of S J^T under the dot product
            SJ = np.array([_matvec(F, Jq, row) for row in S], dtype=np.int64).reshape(d, n)
            A = _rref(F, _annihilator(F, _rref(F, SJ), n)) if d else np.eye(n, dtype=np.int64)
            if A.shape[0] != d:
                raise DomainError("annihilator has the wrong dimension; need d = n/2")
            perp[i] = index[A.tobytes()]
    return _Tables(subs, compat, perp)


def _check_caps(n: int, q: int, d: int) -> None:
    if n > MAX_N:
        raise CapExceeded(f"n = {n} exceeds cap {MAX_N}")
    if not 0 <= d <= n:
        raise DomainError(f"need 0 <= d <= n, got d = {d}")
    field(q)


def _trace_product(mats: Sequence[np.ndarray]) -> int:
    acc = mats[0].astype(object)
    for M in mats[1:]:
        acc = acc.dot(M.astype(object))
    return int(np.trace(acc))


def enumerate_gl_points(n: int, d: int, shape="maximal", q: int = 2, *,
                        list_points: bool = False, jobs: int = 1):
    """Number of F_q-points (and optionally the configurations) for GL_n, mu = (1^d, 0^(n-d))."""
    _check_caps(n, q, d)
    sh = shape if isinstance(shape, ChainShape) else gl_shape(n, shape)
    T = _build_tables(sh, d, q)
    count = _trace_product(T.compat)
    if not list_points:
        return count
    if count > MAX_CONFIGS:
        raise CapExceeded(f"{count} configurations exceed the listing cap {MAX_CONFIGS}")
    pts = [ChainConfiguration(sh, q, tuple(T.subs[k] for k in idx))
           for idx in _cycles(T.compat, None, sh, jobs)]
    return count, pts


def _cycles(compat, perp, shape, jobs):
    """All index tuples (a_0, ..., a_{r-1}) with compat[i][a_i, a_{i+1}] and duality."""
    r = len(compat)
    N = compat[0].shape[0]
    starts = list(range(N))
    if perp is not None and shape.dual_position(0) == 0:
        starts = [a for a in starts if perp[a] == a]
    args = [(compat, perp, shape, a) for a in starts]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_cycles_from, args, chunksize=max(1, len(args) // (4 * jobs))))
    else:
        parts = [_cycles_from(a) for a in args]
    return [c for part in parts for c in part]


def _cycles_from(arg):
    compat, perp, shape, a0 = arg
    r = len(compat)
    out = []
    dual = [shape.dual_position(i) for i in range(r)] if perp is not None else None

    def rec(i, acc):
        if i == r:
            if compat[r - 1][acc[-1], acc[0]]:
                out.append(tuple(acc))
            return
        cands = np.nonzero(compat[i - 1][acc[-1]])[0]
        if dual is not None:
            j = dual[i]
            if j < i:
                forced = perp[acc[j]]
                cands = [forced] if compat[i - 1][acc[-1], forced] else []
            elif j == i:
                cands = [c for c in cands if perp[c] == c]
        for c in cands:
            acc.append(int(c))
            rec(i + 1, acc)
            acc.pop()
    rec(1, [a0])
    return out


def enumerate_gsp_points(n: int, shape="standard", q: int = 2, *,
                         list_points: bool = False, jobs: int = 1):
    """Number of F_q-points for GSp_n (n = 2g) and the Siegel cocharacter."""
    _check_caps(n, q, n // 2)
    sh = shape if isinstance(shape, ChainShape) else gsp_shape(n, shape)
    T = _build_tables(sh, n // 2, q)
    cyc = _cycles(T.compat, T.perp, sh, jobs)
    if not list_points:
        return len(cyc)
    pts = [ChainConfiguration(sh, q, tuple(T.subs[k] for k in idx)) for idx in cyc]
    return len(cyc), pts


# -- comparison with the admissible side ------------------------------------------------

def parahoric_nodes(shape: ChainShape) -> tuple[int, ...]:
    """Affine simple nodes fixing every lattice of the chain (node 0 is affine)."""
    if shape.group == "gl":
        return tuple(j for j in range(shape.n) if j not in shape.chain)
    g = shape.n // 2
    return tuple(j for j in range(g + 1) if j not in shape.chain)


def compare_with_admissible(group: str, n: int, d: int | None = None, shape="maximal",
                            q: int = 2, *, jobs: int = 1) -> dict:
    from .admissible import adm, point_count_poly
    from .affine_weyl import make_iwahori_weyl

    group = group.lower()
    if group == "gl":
        d = 1 if d is None else d
        sh = gl_shape(n, shape)
        count = enumerate_gl_points(n, d, sh, q, jobs=jobs)
        W = make_iwahori_weyl({"type": "GL", "rank": n})
        mu = [1] * d + [0] * (n - d)
    elif group == "gsp":
        sh = gsp_shape(n, shape)
        count = enumerate_gsp_points(n, sh, q, jobs=jobs)
        W = make_iwahori_weyl({"type": "GSp", "rank": n})
        mu = [1] * (n // 2 + 1)
    else:
        raise DomainError(f"unknown chain group {group!r}; use gl or gsp")
    P = W.parahoric(parahoric_nodes(sh))
    pc = point_count_poly(W, mu, P, adm(W, mu))
    predicted = pc(q)
    return {"group": group, "n": n, "d": d if group == "gl" else n // 2,
            "chain": list(sh.chain), "q": q, "count": count, "predicted": predicted,
            "poly": list(pc.coeffs), "formulas_agree": pc.agree, "match": count == predicted}
