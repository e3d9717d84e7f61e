"""Iwahori-Hecke algebras of extended affine Weyl groups.

Elements are finite maps W~ -> Z[v, v^-1] in the T-basis, q = v^2.  Parameters
q_s = q^{c_s} may differ per affine node; the Bernstein elements require them
all equal to 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from . import _linalg
from .admissible import adm, lambda_orbit
from .affine_weyl import ExtAffineWeylElement, ExtAffineWeylGroup
from .errors import DomainError
from .laurent import Laurent
from .root_data import (PinnedAutomorphism, RootDatum, is_dominant, pair,
                        two_rho_pairing, weyl_orbit)

__all__ = [
    "HeckeAlgebra", "HeckeElement", "is_minuscule", "a_mu_minuscule",
    "inertia_invariant_dim", "inertia_invariant_dim_matrix", "minuscule_representation",
]

ONE = Laurent.const(1)


@dataclass(frozen=True)
class HeckeElement:
    algebra: "HeckeAlgebra"
    coeffs: Mapping[ExtAffineWeylElement, Laurent]

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self.algebra._check(other)
        acc = dict(self.coeffs)
        for w, c in other.coeffs.items():
            acc[w] = acc.get(w, Laurent()) + c
        return self.algebra.from_dict(acc)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scale(Laurent.const(-1))

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        return self.algebra.t_multiply(self, other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, HeckeElement) and other.algebra is self.algebra
                and dict(self.coeffs) == dict(other.coeffs))

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def scale(self, c: Laurent) -> "HeckeElement":
        return self.algebra.from_dict({w: x * c for w, x in self.coeffs.items()})

    @property
    def support(self) -> list[ExtAffineWeylElement]:
        W = self.algebra.W
        return sorted(self.coeffs, key=lambda x: (W.length(x), x.key))

    def __getitem__(self, w) -> Laurent:
        return self.coeffs.get(w, Laurent())

    def specialize_q_one(self) -> dict:
        return {w: c.at_q_one() for w, c in self.coeffs.items() if c.at_q_one()}

    def to_json(self) -> list[dict]:
        W = self.algebra.W
        return [{"element": W.to_json(w), "laurent": self.coeffs[w].to_json()}
                for w in self.support]


class HeckeAlgebra:
    def __init__(self, W: ExtAffineWeylGroup, params: Sequence[int] | None = None):
        self.W = W
        params = tuple(params) if params is not None else (1,) * W.num_nodes
        if len(params) != W.num_nodes or any(c < 0 for c in params):
            raise DomainError(f"need {W.num_nodes} nonnegative parameter exponents")
        self.params = params
        self._cache: dict = {}

    @property
    def equal_parameters(self) -> bool:
        return all(c == 1 for c in self.params)

    def _check(self, other: HeckeElement):
        if other.algebra is not self:
            raise DomainError("Hecke elements belong to different algebras")

    def from_dict(self, d: Mapping) -> HeckeElement:
        return HeckeElement(self, {w: c for w, c in d.items() if c})

    def zero(self) -> HeckeElement:
        return HeckeElement(self, {})

    def T(self, w: ExtAffineWeylElement) -> HeckeElement:
        return HeckeElement(self, {w: ONE})

    def one(self) -> HeckeElement:
        return self.T(self.W.identity())

    # -- products -----------------------------------------------------------------

    def _left_simple(self, i: int, h: Mapping) -> dict:
        W = self.W
        s = W.simple(i)
        qs = Laurent.q(self.params[i])
        out: dict = {}
        for w, c in h.items():
            sw = W.multiply(s, w)
            if W.length(sw) > W.length(w):
                out[sw] = out.get(sw, Laurent()) + c
            else:
                out[w] = out.get(w, Laurent()) + c * (qs - 1)
                out[sw] = out.get(sw, Laurent()) + c * qs
        return out

    def _left_basis(self, x: ExtAffineWeylElement, h: Mapping) -> dict:
        word, tau = self.W.reduced_word(x)
        acc = {self.W.multiply(tau, w): c for w, c in h.items()}
        for i in reversed(word):
            acc = self._left_simple(i, acc)
        return acc

    def t_multiply(self, a: HeckeElement, b: HeckeElement) -> HeckeElement:
        self._check(a)
        self._check(b)
        out: dict = {}
        for x, c in a.coeffs.items():
            part = self._left_basis(x, b.coeffs)
            for w, d in part.items():
                out[w] = out.get(w, Laurent()) + c * d
        return self.from_dict(out)

    def T_inverse(self, x: ExtAffineWeylElement) -> HeckeElement:
        """T_x^{-1} = T_tau^{-1} T_{s_k}^{-1} ... T_{s_1}^{-1} for x = s_1 ... s_k tau."""
        W = self.W
        word, tau = W.reduced_word(x)
        acc = self.T(W.inverse(tau))
        for i in reversed(word):
            # T_s^{-1} = q_s^{-1} T_s + (q_s^{-1} - 1) T_e, applied on the right
            qi = Laurent.q(-self.params[i])
            sinv = self.from_dict({W.simple(i): qi, W.identity(): qi - 1})
            acc = self.t_multiply(acc, sinv)
        return acc

    # -- Bernstein elements ---------------------------------------------------------

    def _require_equal(self):
        if not self.equal_parameters:
            raise DomainError("Bernstein elements need equal parameters (all c_s = 1)")

    def is_dominant_translation(self, lam: Sequence[int]) -> bool:
        W = self.W
        return all(sum(p * x for p, x in zip(row, lam)) >= 0 for row in W._pairing.tolist())

    def _rho_translation(self) -> tuple[int, ...]:
        rd = self.W.datum
        two_rho = [0] * rd.rank
        for c, pos in zip(rd.coroots, rd.positive):
            if pos:
                two_rho = [a + b for a, b in zip(two_rho, c)]
        return self.W.project(two_rho)

    def _normalized_T(self, lam) -> HeckeElement:
        t = ExtAffineWeylElement(self.W.translations.normalize(lam), 0, self.W)
        return self.T(t).scale(Laurent.v(-self.W.length(t)))

    def theta_decomposed(self, lam1: Sequence[int], lam2: Sequence[int]) -> HeckeElement:
        """Theta_{lam1 - lam2} computed from the given dominant pair."""
        self._require_equal()
        if not (self.is_dominant_translation(lam1) and self.is_dominant_translation(lam2)):
            raise DomainError("both parts of the decomposition must be dominant")
        W = self.W
        t2 = ExtAffineWeylElement(W.translations.normalize(lam2), 0, W)
        inv2 = self.T_inverse(t2).scale(Laurent.v(W.length(t2)))
        return self.t_multiply(self._normalized_T(lam1), inv2)

    def theta(self, lam: Sequence[int]) -> HeckeElement:
        self._require_equal()
        G = self.W.translations
        lam = G.normalize(lam)
        key = ("theta", lam)
        if key in self._cache:
            return self._cache[key]
        xi = self._rho_translation()
        k = 0
        while not self.is_dominant_translation(G.add(lam, G.scale(k, xi))):
            k += 1
        if k == 0:
            out = self._normalized_T(lam)
        else:
            out = self.theta_decomposed(G.add(lam, G.scale(k, xi)), G.scale(k, xi))
        self._cache[key] = out
        return out

    def bernstein_z_mu(self, mu: Sequence[int]) -> HeckeElement:
        self._require_equal()
        W = self.W
        if not W.relative.automorphism.is_identity():
            raise DomainError("Bernstein elements are implemented for the split case only")
        if not is_minuscule(W.datum, mu):
            raise DomainError(f"cocharacter {list(mu)} is not minuscule")
        acc = self.zero()
        for lam in lambda_orbit(W, mu):
            acc = acc + self.theta(lam)
        return acc

    def commutes(self, a: HeckeElement, b: HeckeElement) -> bool:
        return self.t_multiply(a, b) == self.t_multiply(b, a)

    def is_central(self, z: HeckeElement) -> bool:
        W = self.W
        gens = [self.T(s) for s in W.simple_reflections]
        gens += [self.T(t) for t in W.omega_generators()]
        return all(self.commutes(z, g) for g in gens)

    def zmu_report(self, mu: Sequence[int]) -> dict:
        W = self.W
        z = self.bernstein_z_mu(mu)
        A = adm(W, mu)
        supp = set(z.coeffs)
        extremes = A.extremes(W)
        return {
            "mu": list(mu),
            "coeffs": z.to_json(),
            "central": self.is_central(z),
            "support_in_adm": supp <= set(A.elements),
            "extremes_nonzero": all(bool(z[t]) for t in extremes),
            "support_equals_adm": supp == set(A.elements),
        }


# -- minuscule data ------------------------------------------------------------------

def is_minuscule(rd: RootDatum, mu: Sequence[int]) -> bool:
    return all(pair(a, mu) in (-1, 0, 1) for a in rd.roots)


def a_mu_minuscule(rd: RootDatum, mu: Sequence[int]) -> tuple[int, int, tuple[int, ...]]:
    """(sign, 2(rho, mu), mu) for the spherical image of z_mu."""
    if not is_minuscule(rd, mu):
        raise DomainError(f"cocharacter {list(mu)} is not minuscule")
    d = two_rho_pairing(rd, mu)
    return (-1 if d % 2 else 1, d, tuple(mu))


def _check_stable(rd: RootDatum, mu, gamma: PinnedAutomorphism):
    if not is_minuscule(rd, mu):
        raise DomainError(f"cocharacter {list(mu)} is not minuscule")
    if not is_dominant(rd, mu):
        raise DomainError("cocharacter must be dominant")
    if tuple(gamma.act(mu)) != tuple(mu):
        raise DomainError("cocharacter is not fixed by the automorphism")


def inertia_invariant_dim(rd: RootDatum, mu: Sequence[int], gamma: PinnedAutomorphism) -> int:
    """Number of gamma-orbits on the weights W.mu of the minuscule module V_mu."""
    _check_stable(rd, mu, gamma)
    weights = set(weyl_orbit(rd, mu))
    seen, orbits = set(), 0
    for w in sorted(weights):
        if w in seen:
            continue
        orbits += 1
        x = w
        while x not in seen:
            seen.add(x)
            x = tuple(gamma.act(x))
    return orbits


def minuscule_representation(rd: RootDatum, mu: Sequence[int]):
    """Weights and Chevalley generator matrices (E_i, F_i) of the minuscule module V_mu.

    The module lives on the dual group, so its weights are cocharacters and the
    raising operator E_i adds the simple coroot.  All nonzero entries are 1.
    """
    weights = sorted(weyl_orbit(rd, mu))
    index = {w: k for k, w in enumerate(weights)}
    n = len(weights)
    E, F = [], []
    for i, (a, c) in enumerate(zip(rd.simple_roots, rd.simple_coroots)):
        Ei = [[0] * n for _ in range(n)]
        Fi = [[0] * n for _ in range(n)]
        for w, k in index.items():
            p = pair(a, w)
            if p == -1:
                Ei[index[tuple(x + y for x, y in zip(w, c))]][k] = 1
            elif p == 1:
                Fi[index[tuple(x - y for x, y in zip(w, c))]][k] = 1
        E.append(Ei)
        F.append(Fi)
    return weights, E, F


def _mm(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def inertia_invariant_dim_matrix(rd: RootDatum, mu: Sequence[int],
                                 gamma: PinnedAutomorphism) -> int:
    """Dimension of the gamma-fixed subspace of V_mu by exact linear algebra.

    The lift G of gamma is the unique operator with G E_i = E_{pi(i)} G,
    G F_i = F_{pi(i)} G fixing the highest weight vector.
    """
    _check_stable(rd, mu, gamma)
    weights, E, F = minuscule_representation(rd, mu)
    n = len(weights)
    m = len(E)
    # sanity: [E_i, F_j] = delta_ij H_i on the weight basis
    for i in range(m):
        for j in range(m):
            C = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(_mm(E[i], F[j]), _mm(F[j], E[i]))]
            for k in range(n):
                for l in range(n):
                    want = pair(rd.simple_roots[i], weights[k]) if (i == j and k == l) else 0
                    if C[k][l] != want:
                        raise DomainError("minuscule module failed the commutator check")
    perm = gamma.simple_root_permutation
    top = weights.index(tuple(mu))
    rows = []
    # unknown G[a][b] at position a*n + b; equations (G X - Y G)[a][c] = 0
    for X_list, Y_list in ((E, [E[perm[i]] for i in range(m)]), (F, [F[perm[i]] for i in range(m)])):
        for X, Y in zip(X_list, Y_list):
            for a in range(n):
                for c in range(n):
                    row = [0] * (n * n)
                    for b in range(n):
                        row[a * n + b] += X[b][c]
                        row[b * n + c] -= Y[a][b]
                    if any(row):
                        rows.append(row + [0])
    for a in range(n):
        row = [0] * (n * n)
        row[a * n + top] = 1
        rows.append(row + [int(a == top)])
    A = [r[:-1] for r in rows]
    b = [r[-1] for r in rows]
    sol = _linalg.solve(A, b)
    if sol is None:
        raise DomainError("no lift of the automorphism to the module")
    if _linalg.rank(A) != n * n:
        raise DomainError("lift of the automorphism is not unique")
    G = [[sol[a * n + c] for c in range(n)] for a in range(n)]
    GmI = [[G[a][c] - (a == c) for c in range(n)] for a in range(n)]
    return n - _linalg.rank(GmI)
