"""Monomial ideal arithmetic: cover ideals, powers, symbolic powers,
intersections, membership and generator degrees.

Monomials are exponent tuples.  Ideals are always kept in canonical form
(minimal generating set under divisibility, sorted lexicographically), so
ideal equality is plain sequence comparison.
"""

from __future__ import annotations

import itertools
import warnings

from .hypergraph import Hypergraph

Monomial = tuple  # exponent vector, one nonnegative integer per variable


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimalize(gens):
    """Drop generators divisible by another; dedupe; sort lex."""
    uniq = sorted(set(gens))
    keep = []
    for g in uniq:
        if not any(h != g and _divides(h, g) for h in uniq):
            keep.append(g)
    return tuple(keep)


class MonomialIdeal:
    """A monomial ideal given by its minimal generating set."""

    __slots__ = ("n", "gens")

    def __init__(self, n: int, gens):
        checked = []
        for g in gens:
            g = tuple(int(x) for x in g)
            if len(g) != n:
                raise ValueError(f"generator {g} has length {len(g)}, ambient is {n}")
            if any(x < 0 for x in g):
                raise ValueError(f"generator {g} has a negative exponent")
            checked.append(g)
        self.n = n
        self.gens = _minimalize(checked)

    @classmethod
    def zero(cls, n: int) -> "MonomialIdeal":
        return cls(n, [])

    @classmethod
    def unit(cls, n: int) -> "MonomialIdeal":
        return cls(n, [(0,) * n])

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.n,)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialIdeal)
            and self.n == other.n
            and self.gens == other.gens
        )

    def __hash__(self):
        return hash((self.n, self.gens))

    def __repr__(self):
        return f"MonomialIdeal(n={self.n}, gens={[monomial_str(g) for g in self.gens]})"

    # -- operations ------------------------------------------------------

    def contains(self, m) -> bool:
        """True iff some generator divides the monomial."""
        m = tuple(m)
        if len(m) != self.n:
            raise ValueError("monomial length != ambient variable count")
        return any(_divides(g, m) for g in self.gens)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def multiply(self, other: "MonomialIdeal") -> "MonomialIdeal":
        if self.n != other.n:
            raise ValueError("ambient mismatch")
        prods = [
            tuple(a + b for a, b in zip(g, h))
            for g in self.gens
            for h in other.gens
        ]
        return MonomialIdeal(self.n, prods)

    def power(self, s: int) -> "MonomialIdeal":
        """Minimal generators of the s-th power."""
        if s < 0:
            raise ValueError("negative power")
        if s == 0:
            warnings.warn("power(I, 0) returns the unit ideal by convention", stacklevel=2)
            return MonomialIdeal.unit(self.n)
        out = self
        for _ in range(s - 1):
            out = out.multiply(self)
        return out

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        """Generated by pairwise lcms (componentwise max)."""
        if self.n != other.n:
            raise ValueError("ambient mismatch")
        lcms = [
            tuple(max(a, b) for a, b in zip(g, h))
            for g in self.gens
            for h in other.gens
        ]
        return MonomialIdeal(self.n, lcms)

    def max_gen_degree(self) -> int:
        """Maximum total degree among the minimal generators."""
        if self.is_zero:
            raise ValueError("max_gen_degree of the zero ideal")
        return max(sum(g) for g in self.gens)


def monomial_str(g) -> str:
    parts = []
    for i, e in enumerate(g, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) if parts else "1"


def cover_ideal(h: Hypergraph) -> MonomialIdeal:
    """Squarefree ideal generated by the minimal vertex covers of `h`.

    Equals the intersection of the edge primes (checked in tests).
    """
    if not h.edges:
        raise ValueError("cover ideal undefined: hypergraph has no edges")
    if not h.is_simple():
        raise ValueError("cover_ideal requires a simple hypergraph; call simplify() first")
    gens = [
        tuple(1 if v in cov else 0 for v in h.vertices)
        for cov in h.minimal_vertex_covers()
    ]
    return MonomialIdeal(h.n, gens)


def edge_prime_power(n: int, edge, s: int) -> MonomialIdeal:
    """(x_i | i in edge)^s: all degree-s monomials supported on the edge."""
    edge = sorted(edge)
    gens = []
    for combo in itertools.combinations_with_replacement(edge, s):
        g = [0] * n
        for v in combo:
            g[v - 1] += 1
        gens.append(tuple(g))
    return MonomialIdeal(n, gens)


def symbolic_power_cover(h: Hypergraph, s: int) -> MonomialIdeal:
    """s-th symbolic power of the cover ideal: intersection of edge-prime powers."""
    if s < 1:
        raise ValueError("symbolic power needs s >= 1")
    if not h.edges:
        raise ValueError("symbolic power undefined: hypergraph has no edges")
    if not h.is_simple():
        raise ValueError("symbolic_power_cover requires a simple hypergraph")
    out = None
    for e in h.edges:
        piece = edge_prime_power(h.n, e, s)
        out = piece if out is None else out.intersect(piece)
    return out


def krull_dim_quotient(h: Hypergraph) -> int:
    """Krull dimension of R / J(h): n minus the minimum edge size."""
    if not h.edges:
        raise ValueError("dimension of R/J undefined: hypergraph has no edges")
    if not h.is_simple():
        raise ValueError("krull_dim_quotient requires a simple hypergraph")
    return h.n - min(len(e) for e in h.edges)
