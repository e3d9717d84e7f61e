"""Integer linear algebra for cyclic group actions on lattices.

Smith normal form, finitely generated abelian groups, the cohomology groups
H^1 and H^2 of a finite cyclic group acting on Z^n, coinvariants, and the
Kottwitz component group (X_*(T)/Q^vee)_I.

All arithmetic is exact: matrices are handled as lists of Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Sequence

from .errors import DomainError

__all__ = [
    "FgAbelianGroup", "Quotient", "LatticeWithAction",
    "smith_normal_form", "kernel_basis", "quotient", "subquotient",
    "cyclic_h1", "cyclic_h2", "coinvariants", "kottwitz_pi1",
    "norm_matrix", "invariant_factor_product", "h1_order_by_minors",
    "h2_order_by_minors", "direct_sum",
]

MAX_ORDER = 24
MAX_RANK = 16

Matrix = list[list[int]]


def _mat(M) -> Matrix:
    return [[int(x) for x in row] for row in M]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(cols)]
            for i in range(len(A))]


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A: Sequence[Sequence[int]], nrows: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(nrows or 0)]
    return [list(col) for col in zip(*A)]


def _snf(M: Matrix, m: int, n: int):
    """Core Smith reduction; returns (U, D, V, Uinv) with D = U M V."""
    A = [row[:] for row in M]
    U, V, Uinv = _identity(m), _identity(n), _identity(m)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for row in Uinv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]
        for row in Uinv:
            row[src] -= c * row[dst]

    def add_col(dst, src, c):
        for row in A:
            row[dst] += c * row[src]
        for row in V:
            row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot appeared; re-pivot on it
                best = (t, t)
                for i in range(t, m):
                    if A[i][t] and abs(A[i][t]) < abs(A[best[0]][best[1]]):
                        best = (i, t)
                for j in range(t, n):
                    if A[t][j] and abs(A[t][j]) < abs(A[best[0]][best[1]]):
                        best = (t, j)
                swap_rows(t, best[0])
                swap_cols(t, best[1])
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
            for row in Uinv:
                row[t] = -row[t]
        t += 1
    return U, A, V, Uinv


def smith_normal_form(M) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``D = U @ M @ V`` in Smith normal form.

    ``U`` and ``V`` are unimodular; the diagonal of ``D`` is nonnegative and
    each nonzero entry divides the next.
    """
    M = _mat(M)
    m = len(M)
    n = len(M[0]) if m else 0
    U, D, V, _ = _snf(M, m, n)
    return U, D, V


def kernel_basis(M, ncols: int | None = None) -> Matrix:
    """Columns spanning the (saturated) integer kernel of ``M``, as a list of vectors."""
    M = _mat(M)
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    if m == 0:
        return _identity(n)
    _, D, V, _ = _snf(M, m, n)
    r = sum(1 for i in range(min(m, n)) if D[i][i])
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


@dataclass(frozen=True)
class FgAbelianGroup:
    """Z^free_rank + Z/d_1 + ... + Z/d_k with d_1 | d_2 | ... and every d_i >= 2.

    Elements are tuples: free coordinates first, then torsion coordinates,
    the latter reduced mod d_i.
    """
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise DomainError("free rank must be nonnegative")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise DomainError(f"torsion invariants {self.torsion} break divisibility")
        if any(d < 2 for d in self.torsion):
            raise DomainError("torsion invariants must be >= 2")

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def order(self) -> int | None:
        """Cardinality, or ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    def exponent(self) -> int | None:
        if self.free_rank:
            return None
        return self.torsion[-1] if self.torsion else 1

    def annihilated_by(self, e: int) -> bool:
        return self.free_rank == 0 and all(e % d == 0 for d in self.torsion)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def normalize(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.ngens:
            raise DomainError(f"element {tuple(x)} has wrong length for {self}")
        f = self.free_rank
        return tuple(x[:f]) + tuple(int(a) % d for a, d in zip(x[f:], self.torsion))

    def add(self, x, y) -> tuple[int, ...]:
        return self.normalize([a + b for a, b in zip(x, y)])

    def neg(self, x) -> tuple[int, ...]:
        return self.normalize([-a for a in x])

    def scale(self, k: int, x) -> tuple[int, ...]:
        return self.normalize([k * a for a in x])

    def element_order(self, x) -> int | None:
        x = self.normalize(x)
        if any(x[:self.free_rank]):
            return None
        out = 1
        for a, d in zip(x[self.free_rank:], self.torsion):
            o = d // gcd(a, d)
            out = out * o // gcd(out, o)
        return out

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Quotient:
    """A presentation Z^n / R together with the projection and a section.

    ``rows`` are the rows of the unimodular change of basis kept as
    coordinates; ``kinds`` marks each as free or torsion.
    """
    group: FgAbelianGroup
    ambient_rank: int
    _U: tuple[tuple[int, ...], ...] = field(repr=False)
    _Uinv: tuple[tuple[int, ...], ...] = field(repr=False)
    _free_idx: tuple[int, ...] = field(repr=False)
    _tors_idx: tuple[int, ...] = field(repr=False)

    def project(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.ambient_rank:
            raise DomainError(f"vector of length {len(x)} in rank-{self.ambient_rank} lattice")
        y = matvec(self._U, x)
        return self.group.normalize([y[i] for i in self._free_idx]
                                    + [y[i] for i in self._tors_idx])

    def lift(self, coords: Sequence[int]) -> list[int]:
        """A preimage in Z^n of a group element (torsion lifted to [0, d))."""
        coords = self.group.normalize(coords)
        y = [0] * self.ambient_rank
        idx = self._free_idx + self._tors_idx
        for i, c in zip(idx, coords):
            y[i] = c
        return matvec(self._Uinv, y)

    def projection_matrix(self) -> Matrix:
        return [list(self._U[i]) for i in self._free_idx + self._tors_idx]


def quotient(n: int, relations: Sequence[Sequence[int]]) -> Quotient:
    """Z^n modulo the span of the given relation vectors."""
    rels = [list(map(int, r)) for r in relations if any(r)]
    if not rels:
        I = tuple(tuple(r) for r in _identity(n))
        return Quotient(FgAbelianGroup(n), n, I, I, tuple(range(n)), ())
    M = transpose(rels)  # n x k, relations as columns
    U, D, _, Uinv = _snf(M, n, len(rels))
    diag = [D[i][i] if i < len(rels) else 0 for i in range(n)]
    free_idx = tuple(i for i in range(n) if diag[i] == 0)
    tors_idx = tuple(i for i in range(n) if diag[i] > 1)
    group = FgAbelianGroup(len(free_idx), tuple(diag[i] for i in tors_idx))
    return Quotient(group, n, tuple(map(tuple, U)), tuple(map(tuple, Uinv)),
                    free_idx, tors_idx)


def _solve_in_basis(basis: Matrix, v: Sequence[int]) -> list[int]:
    """Integer coordinates of ``v`` in the saturated basis (list of vectors)."""
    k = len(basis)
    n = len(v)
    B = transpose(basis, n)  # n x k
    U, D, V, _ = _snf(B, n, k)
    y = matvec(U, v)
    z = []
    for i in range(k):
        if D[i][i] == 0 or y[i] % D[i][i]:
            raise DomainError("vector does not lie in the lattice spanned by the basis")
        z.append(y[i] // D[i][i])
    if any(y[k:]):
        raise DomainError("vector does not lie in the span of the basis")
    return matvec(V, z)


def subquotient(basis: Matrix, generators: Sequence[Sequence[int]]) -> FgAbelianGroup:
    """span(basis) / span(generators), where the generators lie in span(basis)."""
    k = len(basis)
    rels = [_solve_in_basis(basis, g) for g in generators]
    return quotient(k, rels).group


def _matpow(A: Matrix, k: int) -> Matrix:
    out = _identity(len(A))
    for _ in range(k):
        out = matmul(out, A)
    return out


@dataclass(frozen=True)
class LatticeWithAction:
    """Z^n with an automorphism ``gamma`` of exact-or-dividing order ``order``."""
    gamma: tuple[tuple[int, ...], ...]
    order: int

    def __init__(self, gamma, order: int):
        g = tuple(tuple(int(x) for x in row) for row in gamma)
        n = len(g)
        if any(len(row) != n for row in g):
            raise DomainError("action matrix must be square")
        if n > MAX_RANK:
            raise DomainError(f"lattice rank {n} exceeds cap {MAX_RANK}")
        if not 1 <= order <= MAX_ORDER:
            raise DomainError(f"group order {order} outside 1..{MAX_ORDER}")
        if _matpow([list(r) for r in g], order) != _identity(n):
            raise DomainError(f"gamma^{order} is not the identity")
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "order", order)

    @property
    def rank(self) -> int:
        return len(self.gamma)

    def matrix(self) -> Matrix:
        return [list(r) for r in self.gamma]


def norm_matrix(X: LatticeWithAction) -> Matrix:
    """N = sum_{i<e} gamma^i."""
    n = X.rank
    out = [[0] * n for _ in range(n)]
    P = _identity(n)
    g = X.matrix()
    for _ in range(X.order):
        out = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(out, P)]
        P = matmul(P, g)
    return out


def _gamma_minus_one(X: LatticeWithAction) -> Matrix:
    g = X.matrix()
    return [[g[i][j] - (i == j) for j in range(X.rank)] for i in range(X.rank)]


def cyclic_h1(X: LatticeWithAction) -> FgAbelianGroup:
    """H^1(<gamma>, X) = ker N / im(gamma - 1)."""
    K = kernel_basis(norm_matrix(X), X.rank)
    return subquotient(K, transpose(_gamma_minus_one(X), X.rank))


def cyclic_h2(X: LatticeWithAction) -> FgAbelianGroup:
    """H^2(<gamma>, X) = ker(gamma - 1) / im N."""
    K = kernel_basis(_gamma_minus_one(X), X.rank)
    return subquotient(K, transpose(norm_matrix(X), X.rank))


def coinvariants(X: LatticeWithAction) -> tuple[FgAbelianGroup, Quotient]:
    """X / (gamma - 1)X with its projection; torsion is kept."""
    q = quotient(X.rank, transpose(_gamma_minus_one(X), X.rank))
    return q.group, q


def direct_sum(X: LatticeWithAction, Y: LatticeWithAction) -> LatticeWithAction:
    n, m = X.rank, Y.rank
    g = [list(r) + [0] * m for r in X.gamma] + [[0] * n + list(r) for r in Y.gamma]
    e = X.order * Y.order // gcd(X.order, Y.order)
    return LatticeWithAction(g, e)


def kottwitz_pi1(rd, gamma=None) -> FgAbelianGroup:
    """(X_*(T) / coroot lattice)_I for a root datum with optional pinned automorphism.

    Computed in two steps: first pi_1 = X_*/Q^vee with the induced action on
    its chosen generators, then coinvariants of that group.
    """
    n = rd.rank
    pi1 = quotient(n, rd.simple_coroots)
    if gamma is None:
        return pi1.group
    g = [list(r) for r in gamma.lattice_map]
    # induced action on pi_1 generators, plus the defining relations
    rels = []
    G = pi1.group
    for j in range(G.ngens):
        unit = [int(i == j) for i in range(G.ngens)]
        img = pi1.project(matvec(g, pi1.lift(unit)))
        rels.append([a - b for a, b in zip(img, unit)])
    f = G.free_rank
    for t, d in enumerate(G.torsion):
        rels.append([d * int(i == f + t) for i in range(G.ngens)])
    return quotient(G.ngens, rels).group


# -- independent route through determinantal divisors ------------------------

def _det(M: Matrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    A = [row[:] for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def invariant_factor_product(M) -> int:
    """Product of the nonzero invariant factors of ``M``.

    Equals the gcd of all r x r minors where r is the rank; computed by brute
    force over minors, with no elimination shared with :func:`smith_normal_form`.
    """
    M = _mat(M)
    m = len(M)
    n = len(M[0]) if m else 0
    for r in range(min(m, n), 0, -1):
        g = 0
        for rows in combinations(range(m), r):
            for cols in combinations(range(n), r):
                g = gcd(g, _det([[M[i][j] for j in cols] for i in rows]))
        if g:
            return g
    return 1


def h1_order_by_minors(X: LatticeWithAction) -> int:
    """|H^1| as the index of im(gamma-1) in its saturation ker N."""
    return invariant_factor_product(_gamma_minus_one(X))


def h2_order_by_minors(X: LatticeWithAction) -> int:
    """|H^2| as the index of im N in its saturation ker(gamma-1)."""
    return invariant_factor_product(norm_matrix(X))
