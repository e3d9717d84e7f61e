"""Based root data with exact integer arithmetic, Weyl groups and folding.

Cocharacters are integer vectors in X_*(T) = Z^rank; roots are integer
covectors, paired with cocharacters by the dot product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from . import _linalg
from .errors import CapExceeded, DomainError
from .galois_lattice import (_identity, _snf, kernel_basis, matmul, matvec, transpose,
                             _solve_in_basis)

__all__ = [
    "RootDatum", "PinnedAutomorphism", "RelativeRootDatum",
    "build_root_datum", "cartan_type", "general_linear", "general_symplectic",
    "pinned_automorphism", "two_rho_pairing", "dominant_representative",
    "is_dominant", "weyl_orbit", "weyl_group", "fold", "parse_group_spec",
    "WEYL_CAP",
]

WEYL_CAP = 50_000

Vec = tuple[int, ...]


def pair(chi: Sequence[int], lam: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(chi, lam))


@dataclass(frozen=True)
class RootDatum:
    rank: int
    roots: tuple[Vec, ...]
    coroots: tuple[Vec, ...]
    simple: tuple[int, ...]          # indices into roots
    positive: tuple[bool, ...]
    label: str
    family: str = ""                  # "sc", "ad", "GL", "GSp"; drives automorphism lifts

    @property
    def simple_roots(self) -> list[Vec]:
        return [self.roots[i] for i in self.simple]

    @property
    def simple_coroots(self) -> list[Vec]:
        return [self.coroots[i] for i in self.simple]

    def positive_roots(self) -> list[Vec]:
        return [r for r, p in zip(self.roots, self.positive) if p]

    def cartan_matrix(self) -> list[list[int]]:
        """Entries <alpha_i, alpha_j^vee>."""
        return [[pair(a, c) for c in self.simple_coroots] for a in self.simple_roots]

    def coroot_of(self, root: Sequence[int]) -> Vec:
        return self.coroots[self.roots.index(tuple(root))]

    def reflect(self, i: int, lam: Sequence[int]) -> Vec:
        """Simple reflection s_i on a cocharacter: lam - <alpha_i, lam> alpha_i^vee."""
        a, c = self.roots[self.simple[i]], self.coroots[self.simple[i]]
        k = pair(a, lam)
        return tuple(x - k * y for x, y in zip(lam, c))

    def reflection_matrix(self, i: int) -> tuple[Vec, ...]:
        cols = [self.reflect(i, e) for e in _identity(self.rank)]
        return tuple(tuple(r) for r in transpose(cols))

    def to_json(self) -> dict:
        return {
            "label": self.label, "rank": self.rank,
            "roots": [list(r) for r in self.roots],
            "coroots": [list(c) for c in self.coroots],
            "simple": list(self.simple),
            "cartan": self.cartan_matrix(),
        }


def _close_roots(rank, simple_roots, simple_coroots):
    """All (root, coroot) pairs generated from the simple ones by simple reflections."""
    pairs = list(zip(map(tuple, simple_roots), map(tuple, simple_coroots)))
    seen = dict(pairs)
    frontier = list(pairs)
    while frontier:
        nxt = []
        for chi, lam in frontier:
            for a, c in zip(simple_roots, simple_coroots):
                k1, k2 = pair(chi, c), pair(a, lam)
                chi2 = tuple(x - k1 * y for x, y in zip(chi, a))
                lam2 = tuple(x - k2 * y for x, y in zip(lam, c))
                if chi2 not in seen:
                    seen[chi2] = lam2
                    nxt.append((chi2, lam2))
        frontier = nxt
    return seen


def _make(rank, simple_roots, simple_coroots, label, family) -> RootDatum:
    seen = _close_roots(rank, simple_roots, simple_coroots)
    roots = sorted(seen)
    coroots = [seen[r] for r in roots]
    A = transpose([list(a) for a in simple_roots], rank)
    positive = []
    for r in roots:
        x = _linalg.solve(A, r)
        positive.append(all(c >= 0 for c in x))
    simple = [roots.index(tuple(a)) for a in simple_roots]
    rd = RootDatum(rank, tuple(roots), tuple(coroots), tuple(simple),
                   tuple(positive), label, family)
    _validate(rd)
    return rd


def _validate(rd: RootDatum) -> None:
    cor = set(rd.coroots)
    for a, c in zip(rd.roots, rd.coroots):
        if pair(a, c) != 2:
            raise DomainError(f"<{a}, {c}> != 2")
    for i in range(len(rd.simple)):
        if {rd.reflect(i, c) for c in rd.coroots} != cor:
            raise DomainError("simple reflection does not permute the coroots")
    for i, row in enumerate(rd.cartan_matrix()):
        for j, x in enumerate(row):
            if x not in (2, 0, -1, -2, -3) or (i == j) != (x == 2):
                raise DomainError(f"bad Cartan entry {x}")
            if (x == 0) != (rd.cartan_matrix()[j][i] == 0):
                raise DomainError("Cartan matrix sign pattern is not symmetric")


def _epsilon_simple_roots(kind: str, n: int) -> list[list[Fraction]]:
    if kind == "A":
        dim = n + 1
        out = [[0] * dim for _ in range(n)]
        for i in range(n):
            out[i][i], out[i][i + 1] = 1, -1
        return out
    dim = n
    out = [[0] * dim for _ in range(n)]
    for i in range(n - 1):
        out[i][i], out[i][i + 1] = 1, -1
    if kind == "B":
        out[n - 1][n - 1] = 1
    elif kind == "C":
        out[n - 1][n - 1] = 2
    elif kind == "D":
        out[n - 1][n - 2], out[n - 1][n - 1] = 1, 1
    return out


_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


def cartan_type(kind: str, n: int, lattice: str = "sc") -> RootDatum:
    """Semisimple root datum of type A-D; ``lattice`` is "sc" or "ad"."""
    kind = kind.upper()
    if kind not in _MIN_RANK:
        raise DomainError(f"Cartan type must be one of A, B, C, D (got {kind!r})")
    if n < _MIN_RANK[kind]:
        raise DomainError(f"type {kind} requires rank >= {_MIN_RANK[kind]} (got {n})")
    eps = _epsilon_simple_roots(kind, n)
    ip = lambda u, v: sum(Fraction(a) * b for a, b in zip(u, v))
    cartan = [[int(2 * ip(eps[i], eps[j]) / ip(eps[j], eps[j])) for j in range(n)]
              for i in range(n)]
    if lattice == "sc":
        roots = [list(row) for row in cartan]
        coroots = _identity(n)
    elif lattice == "ad":
        roots = _identity(n)
        coroots = [[cartan[i][j] for i in range(n)] for j in range(n)]
    else:
        raise DomainError(f"lattice must be 'sc' or 'ad' (got {lattice!r})")
    return _make(n, roots, coroots, f"{kind}{n}" + ("" if lattice == "sc" else "_ad"), lattice)


def general_linear(n: int) -> RootDatum:
    if n < 1:
        raise DomainError("GL_n requires n >= 1")
    simple = [[int(k == i) - int(k == i + 1) for k in range(n)] for i in range(n - 1)]
    if n == 1:
        return RootDatum(1, (), (), (), (), "GL1", "GL")
    return _make(n, simple, simple, f"GL{n}", "GL")


def general_symplectic(n: int) -> RootDatum:
    """GSp_n (n = 2g): X_* = Z^g + Z, coordinates (x_1..x_g; c) for diag(x, c - x reversed)."""
    if n < 2 or n % 2:
        raise DomainError(f"GSp_n requires an even n >= 2 (got {n})")
    g = n // 2
    r = g + 1

    def e(i):
        return [int(k == i) for k in range(r)]

    roots, coroots = [], []
    for i in range(g - 1):
        roots.append([a - b for a, b in zip(e(i), e(i + 1))])
        coroots.append([a - b for a, b in zip(e(i), e(i + 1))])
    roots.append([2 * a - b for a, b in zip(e(g - 1), e(g))])
    coroots.append(e(g - 1))
    return _make(r, roots, coroots, f"GSp{n}", "GSp")


def build_root_datum(spec: dict | str) -> RootDatum:
    """Build a root datum from ``{"type": ..., "rank": n}`` or a string like ``"GL3"``."""
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    t = str(spec.get("type", "")).strip()
    try:
        n = int(spec["rank"])
    except (KeyError, TypeError, ValueError):
        raise DomainError("group specifier needs an integer 'rank'") from None
    tu = t.upper()
    if tu == "GL":
        return general_linear(n)
    if tu == "GSP":
        return general_symplectic(n)
    if tu == "SL":
        if n < 2:
            raise DomainError("SL_n requires n >= 2")
        rd = cartan_type("A", n - 1, "sc")
        return _relabel(rd, f"SL{n}")
    if tu == "PGL":
        if n < 2:
            raise DomainError("PGL_n requires n >= 2")
        return _relabel(cartan_type("A", n - 1, "ad"), f"PGL{n}")
    if tu in _MIN_RANK:
        return cartan_type(tu, n, str(spec.get("lattice", "sc")))
    raise DomainError(f"unknown group type {t!r}; expected A, B, C, D, GL, GSp, SL or PGL")


def _relabel(rd: RootDatum, label: str) -> RootDatum:
    return RootDatum(rd.rank, rd.roots, rd.coroots, rd.simple, rd.positive, label, rd.family)


def parse_group_spec(text: str) -> dict:
    """'GL3', 'GSp4', 'A2', 'SL2' -> {"type": ..., "rank": ...}."""
    s = text.strip()
    i = len(s)
    while i > 0 and s[i - 1].isdigit():
        i -= 1
    head, tail = s[:i].rstrip("_"), s[i:]
    if not head or not tail:
        raise DomainError(f"cannot parse group specifier {text!r}")
    return {"type": head, "rank": int(tail)}


# -- Weyl group ----------------------------------------------------------------

def is_dominant(rd: RootDatum, lam: Sequence[int]) -> bool:
    return all(pair(a, lam) >= 0 for a in rd.simple_roots)


def dominant_representative(rd: RootDatum, lam: Sequence[int]) -> Vec:
    """Apply the first violated simple reflection until dominant."""
    lam = tuple(int(x) for x in lam)
    if len(lam) != rd.rank:
        raise DomainError(f"cocharacter {lam} has length {len(lam)}, rank is {rd.rank}")
    while True:
        for i, a in enumerate(rd.simple_roots):
            if pair(a, lam) < 0:
                lam = rd.reflect(i, lam)
                break
        else:
            return lam


def two_rho_pairing(rd: RootDatum, mu: Sequence[int]) -> int:
    """<2 rho, mu> for dominant mu."""
    if not is_dominant(rd, mu):
        raise DomainError(f"{tuple(mu)} is not dominant; dominantize first")
    return sum(pair(a, mu) for a in rd.positive_roots())


def weyl_orbit(rd: RootDatum, lam: Sequence[int], cap: int = WEYL_CAP) -> list[Vec]:
    lam = tuple(lam)
    seen = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(len(rd.simple)):
                y = rd.reflect(i, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"Weyl orbit exceeds cap {cap}")
        frontier = nxt
    return sorted(seen)


def _close_group(gens: Sequence, cap: int, n: int | None = None) -> list[tuple[Vec, ...]]:
    """Closure of a set of integer matrices under multiplication (identity first)."""
    if n is None:
        n = len(gens[0]) if gens else 0
    G = [np.array(g, dtype=np.int64).reshape(n, n) for g in gens]
    ident = np.eye(n, dtype=np.int64)
    seen = {ident.tobytes()}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in G:
                h = s @ g
                key = h.tobytes()
                if key not in seen:
                    seen.add(key)
                    order.append(h)
                    nxt.append(h)
                    if len(order) > cap:
                        raise CapExceeded(f"group closure exceeds cap {cap}")
        frontier = nxt
    return [tuple(tuple(int(x) for x in row) for row in m) for m in order]


def weyl_group(rd: RootDatum, cap: int = WEYL_CAP) -> list[tuple[Vec, ...]]:
    """All elements of the finite Weyl group as matrices on X_*."""
    if not rd.simple:
        return [tuple(tuple(r) for r in _identity(rd.rank))]
    return _close_group([rd.reflection_matrix(i) for i in range(len(rd.simple))], cap, rd.rank)


# -- automorphisms and folding -------------------------------------------------

def _matpow(A, k):
    out = _identity(len(A))
    for _ in range(k):
        out = matmul(out, A)
    return out


@dataclass(frozen=True)
class PinnedAutomorphism:
    datum: RootDatum
    lattice_map: tuple[Vec, ...]
    order: int
    simple_root_permutation: tuple[int, ...]

    def act(self, lam: Sequence[int]) -> Vec:
        return tuple(matvec(self.lattice_map, lam))

    def act_on_character(self, chi: Sequence[int]) -> Vec:
        """Contragredient action chi -> chi o gamma^{-1}."""
        inv = _matpow([list(r) for r in self.lattice_map], self.order - 1)
        return tuple(sum(chi[i] * inv[i][j] for i in range(len(chi))) for j in range(len(inv)))

    def is_identity(self) -> bool:
        return self.lattice_map == tuple(tuple(r) for r in _identity(self.datum.rank))


def _perm_order(p: Sequence[int]) -> int:
    seen, order = set(), 1
    for i in range(len(p)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = p[j]
            k += 1
        order = order * k // gcd(order, k)
    return order


def pinned_automorphism(rd: RootDatum, permutation: Sequence[int] | None = None,
                        order: int | None = None) -> PinnedAutomorphism:
    """Lift a permutation of simple-root indices to the cocharacter lattice."""
    n_s = len(rd.simple)
    perm = tuple(range(n_s)) if permutation is None else tuple(int(x) for x in permutation)
    if sorted(perm) != list(range(n_s)):
        raise DomainError(f"{perm} is not a permutation of the {n_s} simple roots")
    n = rd.rank
    if perm == tuple(range(n_s)):
        g = _identity(n)
    elif rd.family in ("sc", "ad"):
        # basis is simple coroots (sc) or fundamental coweights (ad); both permute alike
        g = [[int(perm[j] == i) for j in range(n)] for i in range(n)]
    elif rd.family == "GL" and perm == tuple(reversed(range(n_s))):
        g = [[-int(i + j == n - 1) for j in range(n)] for i in range(n)]
    else:
        raise DomainError(f"no pinned lift of permutation {perm} for {rd.label}")
    e = order or _perm_order(perm)
    gam = PinnedAutomorphism(rd, tuple(tuple(r) for r in g), e, perm)
    _check_pinned(gam)
    return gam


def _check_pinned(gam: PinnedAutomorphism) -> None:
    rd = gam.datum
    g = [list(r) for r in gam.lattice_map]
    if _matpow(g, gam.order) != _identity(rd.rank):
        raise DomainError(f"automorphism does not have order dividing {gam.order}")
    if {gam.act(c) for c in rd.coroots} != set(rd.coroots):
        raise DomainError("automorphism does not permute the coroots")
    for i, j in enumerate(gam.simple_root_permutation):
        if gam.act(rd.simple_coroots[i]) != rd.simple_coroots[j]:
            raise DomainError("automorphism does not realize the simple-root permutation")
        if gam.act_on_character(rd.simple_roots[i]) != rd.simple_roots[j]:
            raise DomainError("automorphism does not preserve the pairing on simple roots")


@dataclass(frozen=True)
class RelativeRootDatum:
    """Folded (relative) root datum of a pinned automorphism.

    Everything on the invariant subspace V = X_*^gamma (x) Q is expressed in
    the coordinates of ``fixed_basis`` (a Z-basis of X_*^gamma, k vectors).
    """
    ambient: RootDatum
    automorphism: PinnedAutomorphism
    fixed_basis: tuple[Vec, ...]
    weyl: tuple[tuple[Vec, ...], ...]          # W_0 on X_*, identity first
    weyl_on_fixed: tuple[tuple[Vec, ...], ...]  # the same elements on V
    generators: tuple[int, ...]                # relative simple reflections (indices into weyl)
    relative_roots: tuple[Vec, ...]            # integer covectors on V
    relative_positive: tuple[bool, ...]
    echelonnage_constants: tuple[Fraction, ...]
    # one entry per positive reduced direction of the affine root system
    affine_roots: tuple[tuple[Fraction, ...], ...]
    affine_coroots: tuple[Vec, ...]            # coroots, scaled by the order e
    affine_reflections: tuple[int, ...]        # W_0 index of the reflection
    orbit_coroots: tuple[Vec, ...]             # e*avg of a simple coroot per orbit, on V
    orbit_reps: tuple[int, ...]                # simple index representing each orbit

    @property
    def k(self) -> int:
        return len(self.fixed_basis)

    @property
    def relative_simple_reflections(self) -> list[tuple[Vec, ...]]:
        return [self.weyl[i] for i in self.generators]

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient.label,
            "order": self.automorphism.order,
            "weyl_order": len(self.weyl),
            "relative_roots": [list(r) for r in self.relative_roots],
            "echelonnage_constants": [str(c) for c in self.echelonnage_constants],
        }


def _root_reflection(rd: RootDatum, j: int) -> tuple[Vec, ...]:
    a, c = rd.roots[j], rd.coroots[j]
    n = rd.rank
    return tuple(tuple(int(r == col) - c[r] * a[col] for col in range(n)) for r in range(n))


def _orbits(perm: Sequence[int]) -> list[list[int]]:
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        orb, j = [], i
        while j not in seen:
            seen.add(j)
            orb.append(j)
            j = perm[j]
        out.append(sorted(orb))
    return out


def fold(rd: RootDatum, gamma: PinnedAutomorphism | None = None,
         cap: int = WEYL_CAP) -> RelativeRootDatum:
    """Relative root datum of the gamma-fixed part, with echelonnage normalization."""
    if gamma is None:
        gamma = pinned_automorphism(rd)
    if gamma.datum != rd:
        raise DomainError("automorphism belongs to a different root datum")
    _check_pinned(gamma)
    n = rd.rank
    g = [list(r) for r in gamma.lattice_map]
    cart = rd.cartan_matrix()

    orbits = _orbits(gamma.simple_root_permutation)
    gens = []
    for orb in orbits:
        mats = [[list(r) for r in rd.reflection_matrix(i)] for i in orb]
        if all(cart[i][j] == 0 for i in orb for j in orb if i != j):
            m = _identity(n)
            for s in mats:
                m = matmul(m, s)
        elif len(orb) == 2 and cart[orb[0]][orb[1]] == -1 and cart[orb[1]][orb[0]] == -1:
            m = matmul(matmul(mats[0], mats[1]), mats[0])
        else:
            raise DomainError(f"orbit {orb} of simple roots is neither orthogonal nor of type A2")
        gens.append(tuple(tuple(r) for r in m))
    weyl = _close_group(gens, cap, n)
    index = {w: i for i, w in enumerate(weyl)}
    gen_idx = tuple(index[m] for m in gens)

    gm1 = [[g[i][j] - (i == j) for j in range(n)] for i in range(n)]
    basis = kernel_basis(gm1, n)  # list of k vectors
    k = len(basis)

    def coords(v):
        return tuple(_solve_in_basis(basis, v)) if k else ()

    # integer left inverse P of the saturated basis B, so coordinates are P v
    if k:
        B = transpose(basis, n)
        U, D, V, _ = _snf(B, n, k)
        P = np.array(V, dtype=np.int64) @ np.array(D, dtype=np.int64).T @ np.array(U, dtype=np.int64)
        Bn = np.array(B, dtype=np.int64)
        Wn = np.array(weyl, dtype=np.int64).reshape(len(weyl), n, n)
        if not (P @ Bn == np.eye(k, dtype=np.int64)).all():
            raise DomainError("invariant basis is not saturated")
        S_all = np.einsum("ij,wjk,kl->wil", P, Wn, Bn)
        on_fixed = [tuple(tuple(int(x) for x in row) for row in S) for S in S_all]
    else:
        on_fixed = [() for _ in weyl]

    restricted = {}
    for a, pos in zip(rd.roots, rd.positive):
        r = tuple(pair(a, b) for b in basis)
        if not any(r):
            raise DomainError("a root restricts to zero on the invariant subspace")
        restricted.setdefault(r, pos)
    rel_roots = tuple(sorted(restricted))
    rel_pos = tuple(restricted[r] for r in rel_roots)

    # translation lattice of the affine Weyl group, scaled by e: N(simple coroot)
    e = gamma.order
    N = _identity(n)
    acc = [[0] * n for _ in range(n)]
    for _ in range(e):
        acc = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(acc, N)]
        N = matmul(N, g)
    orbit_reps = tuple(orb[0] for orb in orbits)
    orbit_cor = tuple(coords(matvec(acc, rd.simple_coroots[i])) for i in orbit_reps)
    Y = transpose([list(y) for y in orbit_cor], k)  # k x m

    # reflections of W_0: folded reflections along gamma-orbits of positive roots
    reflections = {}
    root_index = {r: i for i, r in enumerate(rd.roots)}
    for i, (alpha, pos) in enumerate(zip(rd.roots, rd.positive)):
        if not pos:
            continue
        orb = [i]
        while True:
            nxt = root_index[tuple(gamma.act_on_character(rd.roots[orb[-1]]))]
            if nxt == i:
                break
            orb.append(nxt)
        mats = [_root_reflection(rd, j) for j in orb]
        pairs = [pair(rd.roots[a], rd.coroots[b]) for a in orb for b in orb if a != b]
        if all(p == 0 for p in pairs):
            m = _identity(n)
            for r in mats:
                m = matmul(m, [list(x) for x in r])
        elif len(orb) == 2 and all(p == -1 for p in pairs):
            a, b = ([list(x) for x in r] for r in mats)
            m = matmul(matmul(a, b), a)
        else:
            continue
        idx = index.get(tuple(tuple(r) for r in m))
        if idx is None:
            continue
        S = on_fixed[idx]
        IminusS = [[int(i == j) - S[i][j] for j in range(k)] for i in range(k)]
        if _linalg.rank(IminusS) == 1:
            col = next(c for c in transpose(IminusS) if any(c))
            reflections[idx] = _linalg.primitive(col)

    consts, aff_roots, aff_cor, aff_refl = [], {}, {}, {}
    for a in rel_roots:
        refl = None
        for idx, c in reflections.items():
            S = on_fixed[idx]
            aS = [sum(a[i] * S[i][j] for i in range(k)) for j in range(k)]
            if aS == [-x for x in a]:
                refl = idx
                break
        if refl is None:
            raise DomainError(f"no reflection of W_0 negates relative root {a}")
        c = reflections[refl]
        if pair(a, c) < 0:
            c = [-x for x in c]
        z = _linalg.solve(Y, c)
        if z is None:
            raise DomainError("coroot direction is outside the coroot span")
        x0s = matvec(Y, _linalg.primitive(z))
        const = Fraction(2 * e, pair(a, x0s))
        consts.append(const)
        b = tuple(const * x for x in a)
        if restricted[a]:
            aff_roots[b] = b
            aff_cor[b] = tuple(x0s)
            aff_refl[b] = refl
    keys = sorted(aff_roots)
    return RelativeRootDatum(
        ambient=rd, automorphism=gamma,
        fixed_basis=tuple(tuple(b) for b in basis),
        weyl=tuple(weyl), weyl_on_fixed=tuple(on_fixed), generators=gen_idx,
        relative_roots=rel_roots, relative_positive=rel_pos,
        echelonnage_constants=tuple(consts),
        affine_roots=tuple(keys), affine_coroots=tuple(aff_cor[b] for b in keys),
        affine_reflections=tuple(aff_refl[b] for b in keys),
        orbit_coroots=orbit_cor, orbit_reps=orbit_reps,
    )
