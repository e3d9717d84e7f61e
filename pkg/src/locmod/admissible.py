"""Admissible sets Adm(mu), their parahoric variants and point-count polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .affine_weyl import ExtAffineWeylElement, ExtAffineWeylGroup, ParahoricSubgroup
from .errors import CapExceeded, DomainError
from .root_data import dominant_representative

__all__ = [
    "AdmissibleSet", "PointCount", "lambda_orbit", "adm", "adm_parahoric",
    "point_count_poly", "bruhat_interval", "evaluate", "ADM_CAP",
]

ADM_CAP = 200_000


@dataclass(frozen=True)
class AdmissibleSet:
    mu: tuple[int, ...]
    lambda_orbit: tuple[tuple[int, ...], ...]
    elements: tuple[ExtAffineWeylElement, ...]
    lengths: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._set

    @property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def extremes(self, W: ExtAffineWeylGroup) -> list[ExtAffineWeylElement]:
        return [ExtAffineWeylElement(lam, 0, W) for lam in self.lambda_orbit]

    def length_profile(self) -> list[int]:
        """Number of elements of each length 0, 1, ..."""
        top = max(self.lengths, default=-1)
        out = [0] * (top + 1)
        for l in self.lengths:
            out[l] += 1
        return out


@dataclass(frozen=True)
class PointCount:
    coeffs: tuple[int, ...]          # coeffs[k] multiplies q^k
    alternative: tuple[int, ...]     # the double-coset-maximum formula
    agree: bool

    def __call__(self, q: int) -> int:
        return evaluate(self.coeffs, q)


def evaluate(coeffs: Sequence[int], q: int) -> int:
    out = 0
    for c in reversed(coeffs):
        out = out * q + c
    return out


def lambda_orbit(W: ExtAffineWeylGroup, mu: Sequence[int]) -> list[tuple[int, ...]]:
    """W_0-orbit of the image of the dominant representative of mu in X_*(T)_I."""
    if len(mu) != W.datum.rank:
        raise DomainError(f"cocharacter has {len(mu)} entries, expected {W.datum.rank}")
    lam = W.project(dominant_representative(W.datum, mu))
    return sorted({W.act_on_translation(w, lam) for w in range(len(W.relative.weyl))})


def bruhat_interval(W: ExtAffineWeylGroup, x: ExtAffineWeylElement,
                    cap: int = ADM_CAP) -> set[ExtAffineWeylElement]:
    """{y : y <= x}, via products of subwords of one reduced word of x."""
    word, tau = W.reduced_word(x)
    acc = {W.identity()}
    for i in word:
        s = W.simple(i)
        acc |= {W.multiply(y, s) for y in acc}
        if len(acc) > cap:
            raise CapExceeded(f"Bruhat interval exceeds cap {cap}")
    return {W.multiply(y, tau) for y in acc}


def adm(W: ExtAffineWeylGroup, mu: Sequence[int], cap: int = ADM_CAP) -> AdmissibleSet:
    orbit = lambda_orbit(W, mu)
    elems: set = set()
    for lam in orbit:
        elems |= bruhat_interval(W, ExtAffineWeylElement(lam, 0, W), cap)
        if len(elems) > cap:
            raise CapExceeded(f"admissible set exceeds cap {cap}")
    ordered = sorted(elems, key=lambda x: (W.length(x), x.key))
    return AdmissibleSet(tuple(mu), tuple(orbit), tuple(ordered),
                         tuple(W.length(x) for x in ordered))


def adm_parahoric(W: ExtAffineWeylGroup, mu: Sequence[int], P: ParahoricSubgroup,
                  A: AdmissibleSet | None = None) -> list[ExtAffineWeylElement]:
    """Minimal representatives of the double cosets W_P w W_P, w in Adm(mu)."""
    A = A or adm(W, mu)
    reps = {W.double_coset_min_rep(x, P) for x in A.elements}
    return sorted(reps, key=lambda x: (W.length(x), x.key))


def _poly(W, reps) -> tuple[int, ...]:
    lens = [W.length(x) for x in reps]
    out = [0] * (max(lens, default=0) + 1)
    for l in lens:
        out[l] += 1
    return tuple(out)


def point_count_poly(W: ExtAffineWeylGroup, mu: Sequence[int], P: ParahoricSubgroup,
                     A: AdmissibleSet | None = None) -> PointCount:
    """Sum of q^l(x) over the Schubert cells of the partial flag variety for P.

    The cells are indexed by the left cosets x W_P inside W_P Adm(mu) W_P and
    have dimension l(min rep).  A second count takes the minimal coset
    representatives lying below the maximal element of W_P t_lambda W_P; the
    two should coincide and ``agree`` records whether they do.
    """
    A = A or adm(W, mu)
    WP = P.elements
    if len(P.nodes) == 0:
        primary = {x for x in A.elements}
    else:
        big = {W.multiply(W.multiply(p, x), r) for x in A.elements for p in WP for r in WP}
        primary = {W.left_coset_min_rep(x, P) for x in big}
    alt: set = set()
    for lam in A.lambda_orbit:
        top = W.double_coset_max_rep(ExtAffineWeylElement(lam, 0, W), P)
        alt |= {W.left_coset_min_rep(y, P) for y in bruhat_interval(W, top)}
    a, b = _poly(W, primary), _poly(W, alt)
    return PointCount(a, b, a == b)
