"""Classical forms over W[v] and their local Tits symbols.

Each row maps a form specification to its symbol, the admissible range of n,
and a folding datum: the absolute type of the group together with the action
of inertia on its Dynkin diagram.  Over the maximal unramified extension
every such group is quasi-split, so this datum is what fold() and the
Iwahori-Weyl group need.  The left superscript of a symbol records the order
of Frobenius on the local Dynkin diagram and is not part of the folding datum.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import gcd
from typing import Any, Mapping

from .errors import DomainError

__all__ = [
    "FormSpec", "CatalogEntry", "CATALOG", "catalog_list", "classify_form",
    "division_order_presentation", "folding_datum", "parse_form_spec", "monomial_power",
]

ALGEBRAS = ("matrix", "quadratic", "quaternion", "division")
KINDS = ("alternating", "symmetric", "hermitian", "anti-hermitian", "none")


@dataclass(frozen=True)
class FormSpec:
    algebra: str
    kind: str
    subcase: str = ""
    n: int = 0
    ramified: bool | None = None      # quadratic algebra only
    c: str | None = None              # constant of M_0 in anti-hermitian case (b)
    m: int | None = None              # division algebra: GL_m(D)
    d: int | None = None              # division algebra degree
    s: int | None = None              # division algebra invariant s/d


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    symbol: str                       # plain-text symbol, e.g. "2D'_m"
    tex: str                          # LaTeX form of the symbol
    algebra: str
    kind: str
    subcase: str
    ramified: bool | None
    parity: str | None                # "odd", "even" or None
    n_min: int
    e: int | None                     # left superscript, else 2 if ramified, else 1 (None: d)
    absolute_type: str
    rank_rule: str                    # absolute rank as a function of n (and m, d)
    inertia: str                      # "trivial", "flip" (A_r) or "swap" (last two D nodes)
    quasi_split: bool
    c_values: tuple[str, ...] = ()

    def to_json(self) -> dict:
        out = asdict(self)
        out["c_values"] = list(self.c_values)
        return out


def _row(key, symbol, tex, algebra, kind, subcase, ramified, parity, n_min, e,
         absolute_type, rank_rule, inertia, quasi_split, c_values=()):
    return CatalogEntry(key, symbol, tex, algebra, kind, subcase, ramified, parity,
                        n_min, e, absolute_type, rank_rule, inertia, quasi_split,
                        tuple(c_values))


CATALOG: tuple[CatalogEntry, ...] = (
    _row("alt", "C_n", "C_n", "matrix", "alternating", "split", None, None, 2, 1,
         "C", "n", "trivial", True),
    _row("sym-split-odd", "B_m", "B_m", "matrix", "symmetric", "split", None, "odd", 7, 1,
         "B", "m", "trivial", True),
    _row("sym-split-even", "D_m", "D_m", "matrix", "symmetric", "split", None, "even", 6, 1,
         "D", "m", "trivial", True),
    _row("sym-qs-even-unr", "2D_m", "{}^2D_m", "matrix", "symmetric", "quasi-split", False,
         "even", 8, 2, "D", "m", "trivial", True),
    _row("sym-qs-even-ram", "C-B_{m-1}", "C-B_{m-1}", "matrix", "symmetric", "quasi-split",
         True, "even", 6, 2, "D", "m", "swap", True),
    _row("sym-nqs-even", "2D'_m", "{}^2D'_m", "matrix", "symmetric", "non-quasi-split", None,
         "even", 6, 2, "D", "m", "trivial", False),
    _row("sym-nqs-odd", "2B'_m", "{}^2B'_m", "matrix", "symmetric", "non-quasi-split", None,
         "odd", 7, 2, "B", "m", "trivial", False),
    _row("herm-qs-unr", "2A'_{n-1}", "{}^2A'_{n-1}", "quadratic", "hermitian", "quasi-split",
         False, None, 3, 2, "A", "n-1", "trivial", True),
    _row("herm-qs-ram-odd", "C-BC_m", "C-BC_m", "quadratic", "hermitian", "quasi-split",
         True, "odd", 3, 2, "A", "n-1", "flip", True),
    _row("herm-qs-ram-even", "B-C_m", "B-C_m", "quadratic", "hermitian", "quasi-split",
         True, "even", 4, 2, "A", "n-1", "flip", True),
    _row("herm-nqs-ram", "2B-C_m", "{}^2B-C_m", "quadratic", "hermitian", "non-quasi-split",
         True, "even", 4, 2, "A", "n-1", "flip", False),
    _row("herm-nqs-unr", "2A''_{n-1}", "{}^2A''_{n-1}", "quadratic", "hermitian",
         "non-quasi-split", False, "even", 4, 2, "A", "n-1", "trivial", False),
    _row("qherm", "2C_n", "{}^2C_n", "quaternion", "hermitian", "", None, None, 2, 2,
         "C", "n", "trivial", False),
    _row("qanti-a", "2D''_n", "{}^2D''_n", "quaternion", "anti-hermitian", "a", None, "even",
         6, 2, "D", "n", "trivial", False),
    _row("qanti-b-zeta", "2D''_n", "{}^2D''_n", "quaternion", "anti-hermitian", "b", None,
         "odd", 5, 2, "D", "n", "trivial", False, ("zeta",)),
    _row("qanti-b-X", "2C-B_{n-1}", "{}^2C-B_{n-1}", "quaternion", "anti-hermitian", "b", None,
         "odd", 3, 2, "D", "n", "swap", False, ("X", "Xxi")),
    _row("qanti-c", "4D_n", "{}^4D_n", "quaternion", "anti-hermitian", "c", None, "even", 4, 4,
         "D", "n", "swap", False),
    _row("qanti-d", "4D_n", "{}^4D_n", "quaternion", "anti-hermitian", "d", None, "odd", 5, 4,
         "D", "n", "swap", False),
    _row("division", "dA_{md-1}", "{}^dA_{md-1}", "division", "none", "", None, None, 1, None,
         "A", "md-1", "trivial", False),
)


def catalog_list() -> list[CatalogEntry]:
    return list(CATALOG)


_SPEC_FIELDS = {f for f in FormSpec.__dataclass_fields__}


def parse_form_spec(data: Mapping[str, Any] | FormSpec) -> FormSpec:
    if isinstance(data, FormSpec):
        return data
    unknown = set(data) - _SPEC_FIELDS
    if unknown:
        raise DomainError(f"unknown form spec field(s): {sorted(unknown)}")
    try:
        return FormSpec(**data)
    except TypeError as exc:
        raise DomainError(f"bad form spec: {exc}") from None


def _absolute_rank(row: CatalogEntry, spec: FormSpec) -> int:
    n = spec.n
    return {"n": n, "m": n // 2, "n-1": n - 1,
            "md-1": (spec.m or 0) * (spec.d or 0) - 1}[row.rank_rule]


def _matches(row: CatalogEntry, spec: FormSpec) -> bool:
    if (row.algebra, row.kind) != (spec.algebra, spec.kind):
        return False
    if row.subcase and row.subcase != spec.subcase:
        return False
    if row.algebra == "quadratic" and row.ramified is not None and row.ramified != spec.ramified:
        return False
    if row.algebra == "matrix" and row.subcase == "quasi-split" and row.ramified != spec.ramified:
        return False
    if row.parity and spec.algebra != "division":
        if ("odd" if spec.n % 2 else "even") != row.parity:
            return False
    if row.c_values and spec.c not in row.c_values:
        return False
    return True


def classify_form(spec: Mapping[str, Any] | FormSpec) -> dict:
    """The catalog row for ``spec`` plus the instantiated symbol data."""
    spec = parse_form_spec(spec)
    if spec.algebra not in ALGEBRAS:
        raise DomainError(f"algebra must be one of {ALGEBRAS}")
    if spec.kind not in KINDS:
        raise DomainError(f"form kind must be one of {KINDS}")
    if spec.algebra == "division":
        d, s, m = spec.d, spec.s, spec.m
        if d is None or s is None or m is None:
            raise DomainError("division algebra spec needs m, d and s")
        division_order_presentation(s, d)
        if m < 1:
            raise DomainError("m must be positive")
    if spec.algebra == "quaternion" and spec.kind == "anti-hermitian" and spec.subcase == "b":
        if spec.c not in ("X", "zeta", "Xxi"):
            raise DomainError("case (b) needs c in {X, zeta, Xxi}")
    hits = [row for row in CATALOG if _matches(row, spec)]
    if not hits:
        near = sorted({f"{r.algebra}/{r.kind}/{r.subcase or '-'}" for r in CATALOG
                       if r.algebra == spec.algebra})
        raise DomainError(f"no catalog row for this spec; valid subcases for "
                          f"{spec.algebra}: {near}")
    row = hits[0]
    if len(hits) > 1:  # pragma: no cover - the table is disjoint by construction
        raise DomainError("ambiguous catalog lookup")
    if spec.algebra != "division" and spec.n < row.n_min:
        raise DomainError(f"symbol {row.symbol} requires n >= {row.n_min}, got n = {spec.n}")
    rank = _absolute_rank(row, spec)
    e = spec.d if row.key == "division" else row.e
    out = {"symbol": row.symbol, "tex": row.tex, "key": row.key, "e": e,
           "quasi_split": row.quasi_split, "n": spec.n}
    out["folding"] = folding_datum(row, rank)
    return out


def folding_datum(row: CatalogEntry, rank: int) -> dict:
    """Group specifier for root_data plus the expected relative rank after folding."""
    spec: dict = {"type": row.absolute_type, "rank": rank}
    if row.inertia == "flip":
        spec["automorphism"] = {"order": 2, "permutation": list(range(rank - 1, -1, -1))}
        rel = (rank + 1) // 2
    elif row.inertia == "swap":
        perm = list(range(rank))
        perm[-2], perm[-1] = perm[-1], perm[-2]
        spec["automorphism"] = {"order": 2, "permutation": perm}
        rel = rank - 1
    else:
        rel = rank
    return {"group": spec, "relative_rank": rel}


def division_order_presentation(s: int, d: int) -> dict:
    """Relations X^d = u, f X = X sigma(f)^s and the monomial matrix n_s(u).

    The matrix sends e_i to e_{tau^s(i)} for tau = (1 2 ... d), except that
    e_d goes to u e_{tau^s(d)}.  It is returned as 0-indexed columns with
    the exponent of u on each nonzero entry.
    """
    if d < 2 or not 0 < s < d:
        raise DomainError(f"need 0 < s < d with d >= 2, got s = {s}, d = {d}")
    if gcd(s, d) != 1:
        raise DomainError(f"gcd(s, d) = {gcd(s, d)} must be 1")
    perm = [(i + s) % d for i in range(d)]        # column i -> row perm[i]
    exps = [0] * (d - 1) + [1]
    return {
        "generator": "X",
        "relations": [f"X^{d} = u", f"f*X = X*sigma(f)^{s}"],
        "degree": d,
        "twist": s,
        "monomial_matrix": {"rows": perm, "u_exponents": exps},
    }


def monomial_power(mat: Mapping, k: int) -> tuple[list[int], list[int]]:
    """k-th power of a monomial matrix given as (rows, u_exponents) per column."""
    rows, exps = list(mat["rows"]), list(mat["u_exponents"])
    d = len(rows)
    cur_r, cur_e = list(range(d)), [0] * d
    for _ in range(k):
        cur_r, cur_e = [rows[cur_r[i]] for i in range(d)], [cur_e[i] + exps[cur_r[i]] for i in range(d)]
    return cur_r, cur_e
