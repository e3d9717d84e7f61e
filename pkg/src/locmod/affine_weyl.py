"""Extended affine Weyl (Iwahori-Weyl) groups.

An element is stored in normal form t_lambda * w with lambda in the
coinvariant lattice X_*(T)_I (torsion kept) and w in the relative Weyl group
W_0 (an index into a precomputed table).  Multiplication follows
(t_l u)(t_n v) = t_{l + u.n} (uv).  Lengths use the Iwahori-Matsumoto count
over the echelonnage-normalized affine root system; words, descents, Bruhat
order and the Omega decomposition are all derived from the length.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from . import _kernels, _linalg
from .errors import CapExceeded, DomainError
from .galois_lattice import (FgAbelianGroup, LatticeWithAction, coinvariants,
                             matvec, quotient, _solve_in_basis)
from .root_data import (RelativeRootDatum, RootDatum, build_root_datum, fold,
                        pinned_automorphism)

__all__ = [
    "ExtAffineWeylGroup", "ExtAffineWeylElement", "ParahoricSubgroup",
    "make_iwahori_weyl", "BALL_CAP",
]

BALL_CAP = 20
PARAHORIC_CAP = 50_000


@dataclass(frozen=True, slots=True)
class ExtAffineWeylElement:
    translation: tuple[int, ...]
    finite: int
    group: "ExtAffineWeylGroup" = field(compare=False, repr=False, hash=False)

    def __mul__(self, other: "ExtAffineWeylElement") -> "ExtAffineWeylElement":
        return self.group.multiply(self, other)

    def __invert__(self) -> "ExtAffineWeylElement":
        return self.group.inverse(self)

    @property
    def key(self) -> tuple:
        return (self.translation, self.finite)

    def __lt__(self, other):  # deterministic ordering for output
        return self.key < other.key


@dataclass(frozen=True)
class ParahoricSubgroup:
    """The finite subgroup W_P generated by a subset of affine simple reflections."""
    nodes: tuple[int, ...]
    elements: frozenset

    def __len__(self) -> int:
        return len(self.elements)


class ExtAffineWeylGroup:
    """Iwahori-Weyl group of the folded root datum ``relative``."""

    def __init__(self, relative: RelativeRootDatum):
        self.relative = relative
        rd = relative.ambient
        gamma = relative.automorphism
        self.datum: RootDatum = rd
        self.order_e = gamma.order
        X = LatticeWithAction(gamma.lattice_map, gamma.order)
        self.translations, self._proj = coinvariants(X)
        G = self.translations
        ng = G.ngens
        self.ngens = ng

        weyl = relative.weyl
        n0 = len(weyl)
        self._weyl_index = {w: i for i, w in enumerate(weyl)}
        self._weyl_np = np.array(weyl, dtype=np.int64).reshape(n0, rd.rank, rd.rank)
        self._mul_cache: dict = {}
        self._act_cache: dict = {}

        # action of W_0 on coinvariant coordinates is computed lazily from these
        units = [[int(i == j) for i in range(ng)] for j in range(ng)]
        lifts = [self._proj.lift(u) for u in units]
        self._lifts = lifts

        # pairing of affine roots with translations: <b, avg(lambda)>
        N = self._norm_matrix(gamma)
        basis = [list(b) for b in relative.fixed_basis]
        self._ycoords = []
        for l in lifts:
            v = matvec(N, l)
            self._ycoords.append(_solve_in_basis(basis, v) if basis else [])
        e = self.order_e
        roots = relative.affine_roots
        pairing = []
        for b in roots:
            row = []
            for j, y in enumerate(self._ycoords):
                val = sum(bb * yy for bb, yy in zip(b, y)) / e
                if Fraction(val).denominator != 1:
                    raise DomainError("affine root pairs non-integrally with a translation")
                if j >= G.free_rank and val != 0:
                    raise DomainError("torsion translation with nonzero pairing")
                row.append(int(val))
            pairing.append(row)
        self._pairing = np.array(pairing, dtype=np.int64).reshape(len(roots), ng)

        # positivity table: positive[w, b] iff w^{-1} b > 0, tested against a regular point
        k = relative.k
        xi = np.array([sum(c[i] for c in relative.affine_coroots) for i in range(k)],
                      dtype=np.int64)
        den = 1
        for b in roots:
            for x in b:
                den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        B = np.array([[int(x * den) for x in b] for b in roots], dtype=np.int64).reshape(len(roots), k)
        S = np.array(relative.weyl_on_fixed, dtype=np.int64).reshape(n0, k, k)
        vals = (S @ xi) @ B.T if k else np.zeros((n0, len(roots)), dtype=np.int64)
        if (vals == 0).any():
            raise DomainError("regular point is not regular")
        self._positive = (vals > 0).astype(np.uint8)

        self._build_simple_reflections()
        self._len_cache: dict = {}
        self._bruhat_cache: dict = {}
        self._word_cache: dict = {}

    def _wmul(self, i: int, j: int) -> int:
        key = (i, j)
        r = self._mul_cache.get(key)
        if r is None:
            m = self._weyl_np[i] @ self._weyl_np[j]
            r = self._weyl_index[tuple(tuple(int(x) for x in row) for row in m)]
            self._mul_cache[key] = r
        return r

    def _winv(self, i: int) -> int:
        key = ("inv", i)
        r = self._mul_cache.get(key)
        if r is None:
            r = 0
            gens = self.relative.generators
            for k in reversed(self._finite_words[i]):
                r = self._wmul(r, gens[k])
            self._mul_cache[key] = r
        return r

    def _wact(self, w: int):
        A = self._act_cache.get(w)
        if A is None:
            W = self.relative.weyl[w]
            ng = self.ngens
            cols = [self._proj.project(matvec(W, l)) for l in self._lifts]
            A = tuple(tuple(cols[j][i] for j in range(ng)) for i in range(ng))
            self._act_cache[w] = A
        return A

    @staticmethod
    def _norm_matrix(gamma):
        n = gamma.datum.rank
        g = [list(r) for r in gamma.lattice_map]
        acc = [[0] * n for _ in range(n)]
        P = [[int(i == j) for j in range(n)] for i in range(n)]
        for _ in range(gamma.order):
            acc = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(acc, P)]
            P = [[sum(P[i][k] * g[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        return acc

    # -- structure ---------------------------------------------------------------

    def _build_simple_reflections(self):
        R = self.relative
        roots = R.affine_roots
        refl = R.affine_reflections
        # finite simple affine roots, ordered like the relative generators
        simple_b = []
        for g in R.generators:
            bi = refl.index(g)
            simple_b.append(bi)
        self.simple_roots_idx = simple_b
        m = len(simple_b)
        A = [[roots[bi][r] for bi in simple_b] for r in range(R.k)]
        # coefficients of each positive root in the simple ones
        coeffs = []
        for b in roots:
            x = _linalg.solve(A, list(b)) if m else []
            if x is None or any(c < 0 or Fraction(c).denominator != 1 for c in x):
                raise DomainError("affine root system is not based by the folded generators")
            coeffs.append([int(c) for c in x])
        # irreducible components via the Cartan graph
        cor = R.affine_coroots
        e = self.order_e

        def cartan(i, j):
            return sum(x * y for x, y in zip(roots[simple_b[i]], cor[simple_b[j]])) / e

        comp = list(range(m))

        def find(i):
            while comp[i] != i:
                i = comp[i]
            return i
        for i in range(m):
            for j in range(m):
                if i != j and cartan(i, j) != 0:
                    comp[find(i)] = find(j)
        components = sorted({find(i) for i in range(m)})
        nodes = []
        basis_orbits = [list(y) for y in R.orbit_coroots]
        Y = [[y[r] for y in basis_orbits] for r in range(R.k)]
        for c in components:
            members = [i for i in range(m) if find(i) == c]
            best = max((bi for bi in range(len(roots))
                        if all(coeffs[bi][j] == 0 for j in range(m) if j not in members)
                        and any(coeffs[bi][j] for j in members)),
                       key=lambda bi: (sum(coeffs[bi]), bi))
            z = _linalg.solve(Y, list(cor[best]))
            if z is None or any(Fraction(x).denominator != 1 for x in z):
                raise DomainError("highest coroot is not in the coroot lattice")
            lam = [0] * self.ngens
            for zj, rep in zip(z, R.orbit_reps):
                p = self._proj.project(self.datum.simple_coroots[rep])
                lam = [a + int(zj) * b for a, b in zip(lam, p)]
            t = self.translations.normalize(lam)
            nodes.append(("affine", ExtAffineWeylElement(t, refl[best], self)))
        for i in range(m):
            nodes.append(("finite", ExtAffineWeylElement(self.translations.zero(),
                                                         R.generators[i], self)))
        self._nodes = nodes
        self.num_affine_nodes = len(components)

    @property
    def num_nodes(self) -> int:
        return len(self._nodes)

    def simple(self, i: int) -> ExtAffineWeylElement:
        if not 0 <= i < len(self._nodes):
            raise DomainError(f"node {i} outside 0..{len(self._nodes) - 1}")
        return self._nodes[i][1]

    @property
    def simple_reflections(self) -> list[ExtAffineWeylElement]:
        return [s for _, s in self._nodes]

    def identity(self) -> ExtAffineWeylElement:
        return ExtAffineWeylElement(self.translations.zero(), 0, self)

    def element(self, translation: Sequence[int], finite: int = 0) -> ExtAffineWeylElement:
        return ExtAffineWeylElement(self.translations.normalize(translation), finite, self)

    def project(self, lam: Sequence[int]) -> tuple[int, ...]:
        """Image of an absolute cocharacter in X_*(T)_I."""
        return self._proj.project(lam)

    def translation(self, lam: Sequence[int], *, absolute: bool = True) -> ExtAffineWeylElement:
        t = self.project(lam) if absolute else self.translations.normalize(lam)
        return ExtAffineWeylElement(t, 0, self)

    def finite_word(self, w: int) -> list[int]:
        return list(self._finite_words[w])

    @cached_property
    def _finite_words(self) -> list[tuple[int, ...]]:
        gens = self.relative.generators
        words = {0: ()}
        dq = deque([0])
        while dq:
            w = dq.popleft()
            for k, g in enumerate(gens):
                u = self._wmul(w, g)
                if u not in words:
                    words[u] = words[w] + (k,)
                    dq.append(u)
        return [words[i] for i in range(len(self.relative.weyl))]

    def act_on_translation(self, w: int, lam: Sequence[int]) -> tuple[int, ...]:
        A = self._wact(w)
        return self.translations.normalize([sum(A[i][j] * lam[j] for j in range(self.ngens))
                                            for i in range(self.ngens)])

    # -- group law ---------------------------------------------------------------

    def _check(self, *xs):
        for x in xs:
            if x.group is not self:
                raise DomainError("elements belong to different extended affine Weyl groups")

    def multiply(self, a: ExtAffineWeylElement, b: ExtAffineWeylElement) -> ExtAffineWeylElement:
        self._check(a, b)
        un = self.act_on_translation(a.finite, b.translation)
        t = self.translations.add(a.translation, un)
        return ExtAffineWeylElement(t, self._wmul(a.finite, b.finite), self)

    def inverse(self, a: ExtAffineWeylElement) -> ExtAffineWeylElement:
        self._check(a)
        wi = self._winv(a.finite)
        t = self.translations.neg(self.act_on_translation(wi, a.translation))
        return ExtAffineWeylElement(t, wi, self)

    def product(self, xs: Iterable[ExtAffineWeylElement]) -> ExtAffineWeylElement:
        out = self.identity()
        for x in xs:
            out = self.multiply(out, x)
        return out

    def word_element(self, word: Sequence[int]) -> ExtAffineWeylElement:
        return self.product(self.simple(i) for i in word)

    # -- length and descents -------------------------------------------------------

    def length(self, a: ExtAffineWeylElement) -> int:
        key = a.key
        v = self._len_cache.get(key)
        if v is None:
            t = np.array(a.translation, dtype=np.int64)
            p = self._pairing @ t
            pos = self._positive[a.finite].astype(bool)
            v = int(np.where(pos, np.abs(p), np.abs(p - 1)).sum())
            self._len_cache[key] = v
        return v

    def lengths(self, elems: Sequence[ExtAffineWeylElement]) -> list[int]:
        """Batch length evaluation through the compiled kernel."""
        if not elems:
            return []
        T = np.array([x.translation for x in elems], dtype=np.int64).reshape(len(elems), self.ngens)
        F = np.array([x.finite for x in elems], dtype=np.int64)
        out = _kernels.batch_lengths(self._pairing, T, F, self._positive)
        return [int(v) for v in out]

    def is_left_descent(self, i: int, a: ExtAffineWeylElement) -> bool:
        return self.length(self.multiply(self.simple(i), a)) < self.length(a)

    def is_right_descent(self, i: int, a: ExtAffineWeylElement) -> bool:
        return self.length(self.multiply(a, self.simple(i))) < self.length(a)

    def left_descents(self, a) -> list[int]:
        return [i for i in range(self.num_nodes) if self.is_left_descent(i, a)]

    def reduced_word(self, a: ExtAffineWeylElement) -> tuple[list[int], ExtAffineWeylElement]:
        """(word, tau) with a = s_word[0] ... s_word[-1] * tau and l(tau) = 0.

        At each step the smallest-index left descent is stripped.
        """
        self._check(a)
        hit = self._word_cache.get(a.key)
        if hit is not None:
            return list(hit[0]), hit[1]
        word = []
        x = a
        ell = self.length(x)
        while ell:
            for i in range(self.num_nodes):
                y = self.multiply(self.simple(i), x)
                ly = self.length(y)
                if ly < ell:
                    word.append(i)
                    x, ell = y, ly
                    break
            else:  # pragma: no cover - would mean the length function is broken
                raise DomainError("no descent for an element of positive length")
        self._word_cache[a.key] = (tuple(word), x)
        return word, x

    def omega_decompose(self, a) -> tuple[ExtAffineWeylElement, ExtAffineWeylElement]:
        """a = w_aff * tau with w_aff in W_aff and tau of length zero."""
        word, tau = self.reduced_word(a)
        return self.word_element(word), tau

    def omega_part(self, a) -> ExtAffineWeylElement:
        return self.reduced_word(a)[1]

    # -- Bruhat order -----------------------------------------------------------

    def bruhat_leq(self, a: ExtAffineWeylElement, b: ExtAffineWeylElement) -> bool:
        self._check(a, b)
        if self.omega_part(a) != self.omega_part(b):
            return False
        return self._leq(a, b)

    def _leq(self, a, b) -> bool:
        key = (a.key, b.key)
        hit = self._bruhat_cache.get(key)
        if hit is not None:
            return hit
        la, lb = self.length(a), self.length(b)
        if la > lb:
            res = False
        elif lb == 0 or a == b:
            res = a == b
        else:
            word, _ = self.reduced_word(b)
            s = self.simple(word[0])
            sb = self.multiply(s, b)
            sa = self.multiply(s, a)
            res = self._leq(sa if self.length(sa) < la else a, sb)
        self._bruhat_cache[key] = res
        return res

    # -- Omega and the Kottwitz map -----------------------------------------------------

    @cached_property
    def _kappa_quotient(self):
        rels = [self.project(self.datum.simple_coroots[i]) for i in range(len(self.datum.simple))]
        G = self.translations
        f = G.free_rank
        for t, d in enumerate(G.torsion):
            rels.append([d * int(i == f + t) for i in range(G.ngens)])
        return quotient(G.ngens, rels)

    def omega_group(self) -> FgAbelianGroup:
        """Omega as X_*(T)_I modulo the image of the coroot lattice."""
        return self._kappa_quotient.group

    def kappa(self, a: ExtAffineWeylElement) -> tuple[int, ...]:
        return self._kappa_quotient.project(a.translation)

    def omega_generators(self) -> list[ExtAffineWeylElement]:
        """Length-zero elements mapping to the standard generators of omega_group()."""
        Q = self._kappa_quotient
        out = []
        for j in range(Q.group.ngens):
            unit = [int(i == j) for i in range(Q.group.ngens)]
            lam = self.translations.normalize(Q.lift(unit))
            out.append(self.omega_part(ExtAffineWeylElement(lam, 0, self)))
        return out

    def omega_elements(self, limit: int = 1000) -> list[ExtAffineWeylElement]:
        """All of Omega when finite (raises CapExceeded otherwise)."""
        G = self.omega_group()
        if G.order is None or G.order > limit:
            raise CapExceeded(f"Omega = {G} is infinite or larger than {limit}")
        Q = self._kappa_quotient
        out = []
        for coords in product(*[range(d) for d in G.torsion]):
            lam = self.translations.normalize(Q.lift(list(coords)))
            out.append(self.omega_part(ExtAffineWeylElement(lam, 0, self)))
        return out

    # -- balls and parahorics ------------------------------------------------------------

    def ball(self, max_length: int = BALL_CAP, tau: ExtAffineWeylElement | None = None
             ) -> list[ExtAffineWeylElement]:
        """{w in W_aff * tau : l(w) <= max_length}, ordered by length then key."""
        if max_length > BALL_CAP * 2:
            raise CapExceeded(f"ball length {max_length} exceeds cap {BALL_CAP * 2}")
        tau = tau or self.identity()
        if self.length(tau):
            raise DomainError("ball base point must have length zero")
        levels = [[tau]]
        seen = {tau}
        for L in range(max_length):
            cands = []
            for x in levels[-1]:
                for s in self.simple_reflections:
                    y = self.multiply(s, x)
                    if y not in seen:
                        seen.add(y)
                        cands.append(y)
            lens = self.lengths(cands)
            nxt = [y for y, l in zip(cands, lens) if l == L + 1]
            for y in cands:
                if y not in nxt:
                    seen.discard(y)
            seen.update(nxt)
            levels.append(sorted(nxt))
        return [x for lvl in levels for x in lvl]

    def parahoric(self, nodes: Iterable[int], cap: int = PARAHORIC_CAP) -> ParahoricSubgroup:
        nodes = tuple(sorted(set(nodes)))
        for i in nodes:
            if not 0 <= i < self.num_nodes:
                raise DomainError(f"node {i} out of range 0..{self.num_nodes - 1}")
        gens = [self.simple(i) for i in nodes]
        seen = {self.identity()}
        frontier = [self.identity()]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.multiply(x, s)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > cap:
                            raise CapExceeded(f"parahoric subgroup on nodes {nodes} is infinite "
                                              f"or exceeds cap {cap}")
            frontier = nxt
        return ParahoricSubgroup(nodes, frozenset(seen))

    def iwahori(self) -> ParahoricSubgroup:
        return ParahoricSubgroup((), frozenset({self.identity()}))

    def special_maximal(self) -> ParahoricSubgroup:
        """The parahoric whose Weyl group is W_0 (the finite simple nodes)."""
        return self.parahoric(range(self.num_affine_nodes, self.num_nodes))

    def double_coset_min_rep(self, a, P: ParahoricSubgroup):
        """Unique minimal element of W_P a W_P, by descent reduction."""
        x = a
        changed = True
        while changed:
            changed = False
            for i in P.nodes:
                s = self.simple(i)
                for y in (self.multiply(s, x), self.multiply(x, s)):
                    if self.length(y) < self.length(x):
                        x, changed = y, True
                        break
        return x

    def double_coset_max_rep(self, a, P: ParahoricSubgroup):
        x = a
        changed = True
        while changed:
            changed = False
            for i in P.nodes:
                s = self.simple(i)
                for y in (self.multiply(s, x), self.multiply(x, s)):
                    if self.length(y) > self.length(x):
                        x, changed = y, True
                        break
        return x

    def left_coset_min_rep(self, a, P: ParahoricSubgroup):
        """Minimal element of a W_P."""
        x = a
        changed = True
        while changed:
            changed = False
            for i in P.nodes:
                y = self.multiply(x, self.simple(i))
                if self.length(y) < self.length(x):
                    x, changed = y, True
        return x

    # -- serialization -------------------------------------------------------------

    def to_json(self, a: ExtAffineWeylElement) -> dict:
        f = self.translations.free_rank
        return {"translation": {"free": list(a.translation[:f]),
                                "torsion": list(a.translation[f:])},
                "finite": self.finite_word(a.finite)}

    def from_json(self, d: dict) -> ExtAffineWeylElement:
        t = list(d["translation"]["free"]) + list(d["translation"]["torsion"])
        w = 0
        for k in d["finite"]:
            w = self._wmul(w, self.relative.generators[k])
        return self.element(t, w)

    def describe(self) -> dict:
        return {
            "datum": self.datum.label,
            "order": self.order_e,
            "translations": self.translations.to_json(),
            "finite_weyl_order": len(self.relative.weyl),
            "nodes": [kind for kind, _ in self._nodes],
            "omega": self.omega_group().to_json(),
        }


def make_iwahori_weyl(spec, automorphism: Sequence[int] | None = None) -> ExtAffineWeylGroup:
    """Convenience constructor from a group specifier and optional simple-root permutation."""
    rd = spec if isinstance(spec, RootDatum) else build_root_datum(spec)
    if isinstance(spec, dict) and automorphism is None and spec.get("automorphism"):
        aut = spec["automorphism"]
        automorphism = aut.get("permutation")
        order = aut.get("order")
    else:
        order = None
    gamma = pinned_automorphism(rd, automorphism, order)
    return ExtAffineWeylGroup(fold(rd, gamma))
