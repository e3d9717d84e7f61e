"""Exact integer Laurent polynomials in one variable v (with q = v^2)."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


class Laurent:
    """Immutable sum of c_k v^k with integer c_k; zero terms are dropped."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for k, c in items:
            acc[int(k)] = acc.get(int(k), 0) + int(c)
        self._terms = tuple(sorted((k, c) for k, c in acc.items() if c))
        self._hash = hash(self._terms)

    @classmethod
    def const(cls, c: int) -> "Laurent":
        return cls({0: c})

    @classmethod
    def v(cls, k: int = 1, c: int = 1) -> "Laurent":
        return cls({k: c})

    @classmethod
    def q(cls, k: int = 1) -> "Laurent":
        return cls({2 * k: 1})

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Laurent.const(other)
        return isinstance(other, Laurent) and self._terms == other._terms

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other) -> "Laurent":
        if isinstance(other, int):
            other = Laurent.const(other)
        return Laurent(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        return Laurent((k, -c) for k, c in self._terms)

    def __sub__(self, other) -> "Laurent":
        if isinstance(other, int):
            other = Laurent.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "Laurent":
        return Laurent.const(other) - self

    def __mul__(self, other) -> "Laurent":
        if isinstance(other, int):
            return Laurent((k, c * other) for k, c in self._terms)
        return Laurent((a + b, x * y) for a, x in self._terms for b, y in other._terms)

    __rmul__ = __mul__

    def shift(self, k: int) -> "Laurent":
        """Multiply by v^k."""
        return Laurent((e + k, c) for e, c in self._terms)

    def at_v(self, v: int) -> Fraction:
        """Exact value at a nonzero integer v."""
        return sum((Fraction(v) ** k * c for k, c in self._terms), Fraction(0))

    def at_q_one(self) -> int:
        return sum(c for _, c in self._terms)

    def to_json(self) -> list[list[int]]:
        return [[k, c] for k, c in self._terms]

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c}*v^{k}" for k, c in self._terms)
