"""Simplicial complexes, degree complexes and reduced simplicial homology.

The void complex (no faces at all) and the irrelevant complex {emptyset}
are distinct values here: the void complex has no homology in any degree,
while {emptyset} has one dimension of reduced homology in degree -1.  The
Takayama machinery in `cohomology` depends on that distinction.
"""

from __future__ import annotations

import itertools
from collections import defaultdict

from .exactlin import int_rank
from .hypergraph import Hypergraph
from .monomial import MonomialIdeal


def negative_support(alpha) -> frozenset:
    """G_alpha: the 1-based positions where the degree vector is negative."""
    return frozenset(i for i, a in enumerate(alpha, start=1) if a < 0)


class SimplicialComplex:
    """Facet-presented complex on ambient vertices 1..n; facets=None is Void."""

    __slots__ = ("n", "facets")

    def __init__(self, n: int, facets=None):
        self.n = n
        if facets is None:
            self.facets = None
            return
        fs = []
        for f in facets:
            f = frozenset(f)
            for v in f:
                if not 1 <= v <= n:
                    raise ValueError(f"facet vertex {v} outside 1..{n}")
            fs.append(f)
        maximal = []
        for f in fs:
            if not any(f < g for g in fs) and f not in maximal:
                maximal.append(f)
        if not maximal:
            self.facets = None
        else:
            maximal.sort(key=lambda f: (len(f), sorted(f)))
            self.facets = tuple(maximal)

    @classmethod
    def void(cls, n: int) -> "SimplicialComplex":
        return cls(n, None)

    @classmethod
    def from_facets(cls, n: int, facets) -> "SimplicialComplex":
        return cls(n, facets)

    @property
    def is_void(self) -> bool:
        return self.facets is None

    @property
    def is_irrelevant(self) -> bool:
        """True for the complex {emptyset}."""
        return self.facets == (frozenset(),)

    @property
    def dim(self) -> int | None:
        if self.is_void:
            return None
        return max(len(f) for f in self.facets) - 1

    def facet_sets(self) -> frozenset:
        if self.is_void:
            return frozenset()
        return frozenset(self.facets)

    def faces(self) -> dict:
        """All faces by dimension (closure of the facets); {} when void."""
        if self.is_void:
            return {}
        found = set()
        for f in self.facets:
            fl = sorted(f)
            for k in range(len(fl) + 1):
                found.update(itertools.combinations(fl, k))
        byd = defaultdict(list)
        for face in found:
            byd[len(face) - 1].append(face)
        return {d: sorted(fs) for d, fs in sorted(byd.items())}

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.n == other.n
            and self.facets == other.facets
        )

    def __hash__(self):
        return hash((self.n, self.facets))

    def __repr__(self):
        if self.is_void:
            return f"SimplicialComplex(n={self.n}, VOID)"
        return f"SimplicialComplex(n={self.n}, facets={[sorted(f) for f in self.facets]})"


# -- degree complexes -----------------------------------------------------
#
# Both constructions below go through bitmask form: vertex v <-> bit v-1.


def _nonface_masks(gens, alpha, wmask: int):
    """Minimal non-face masks of the degree complex, or None when the
    monomial x^alpha lies in the ideal after inverting everything off W.

    A subset F of W is a face iff no generator mask is contained in F.
    """
    raw = set()
    for g in gens:
        m = 0
        probe = wmask
        while probe:
            bit = probe & -probe
            i = bit.bit_length() - 1
            if g[i] > alpha[i]:
                m |= bit
            probe ^= bit
        if m == 0:
            return None
        raw.add(m)
    minimal = frozenset(
        m for m in raw if not any(o != m and o & m == o for o in raw)
    )
    return minimal


def minimal_transversal_masks(masks) -> list[int]:
    """Inclusion-minimal hitting sets of a family of bitmasks, brute force."""
    masks = list(masks)
    union = 0
    for m in masks:
        union |= m
    bits = [1 << i for i in range(union.bit_length()) if union >> i & 1]
    found = []
    for idx in range(1 << len(bits)):
        sub = 0
        for k, bit in enumerate(bits):
            if idx >> k & 1:
                sub |= bit
        if any(not (sub & m) for m in masks):
            continue
        minimal = True
        probe = sub
        while probe:
            bit = probe & -probe
            smaller = sub & ~bit
            if all(smaller & m for m in masks):
                minimal = False
                break
            probe ^= bit
        if minimal:
            found.append(sub)
    found.sort()
    return found


_FACETS_MEMO: dict = {}


def _facets_from_masks(n: int, wmask: int, masks: frozenset) -> tuple:
    """Facets (as masks) of the complex on W whose minimal non-faces are `masks`."""
    key = (n, wmask, masks)
    hit = _FACETS_MEMO.get(key)
    if hit is None:
        hit = tuple(wmask & ~t for t in minimal_transversal_masks(masks))
        _FACETS_MEMO[key] = hit
    return hit


def _mask_to_set(m: int) -> frozenset:
    return frozenset(i + 1 for i in range(m.bit_length()) if m >> i & 1)


def degree_complex_general(ideal: MonomialIdeal, alpha) -> SimplicialComplex:
    """The degree complex of a monomial ideal at a degree vector.

    F (inside the complement of the negative support G) is a face iff no
    generator g satisfies g_i <= alpha_i for every i outside F union G:
    exponents on inverted variables are ignored.  Entries below -1 behave
    exactly like -1.
    """
    n = ideal.n
    alpha = tuple(alpha)
    if len(alpha) != n:
        raise ValueError("degree vector length != ambient variable count")
    wmask = 0
    for i, a in enumerate(alpha):
        if a >= 0:
            wmask |= 1 << i
    if ideal.is_zero:
        return SimplicialComplex(n, [_mask_to_set(wmask)])
    masks = _nonface_masks(ideal.gens, alpha, wmask)
    if masks is None:
        return SimplicialComplex.void(n)
    facets = [_mask_to_set(f) for f in _facets_from_masks(n, wmask, masks)]
    return SimplicialComplex(n, facets)


def degree_complex_unimodular(h: Hypergraph, s: int, alpha) -> SimplicialComplex:
    """Degree complex of J(h)^s via the unimodular fast path.

    Facets are the edge complements V \\ E over edges whose alpha-sum is at
    most s-1.  Requires a simple unimodular hypergraph and alpha >= 0
    componentwise (localize away negative coordinates first).
    """
    if s < 1:
        raise ValueError("power s must be >= 1")
    if not h.is_simple():
        raise ValueError("degree_complex_unimodular requires a simple hypergraph")
    alpha = tuple(alpha)
    if len(alpha) != h.n:
        raise ValueError("degree vector length != vertex count")
    if any(a < 0 for a in alpha):
        raise ValueError("negative entry in alpha: localize first")
    all_v = frozenset(h.vertices)
    facets = [all_v - e for e in h.edges if sum(alpha[i - 1] for i in e) <= s - 1]
    if not facets:
        return SimplicialComplex.void(h.n)
    return SimplicialComplex(h.n, facets)


# -- homology -------------------------------------------------------------

_HOMOLOGY_CACHE: dict = {}


def reduced_homology_dims(cx: SimplicialComplex, field: int | None = None) -> dict:
    """Dimensions of reduced simplicial homology, degree -1 .. dim.

    `field` is None for Q or a prime p for F_p.  The void complex has no
    homology at all (empty map); {emptyset} has dimension 1 in degree -1.
    Results are cached by facet set and field.
    """
    if cx.is_void:
        return {}
    key = (cx.facet_sets(), field)
    hit = _HOMOLOGY_CACHE.get(key)
    if hit is None:
        hit = _compute_homology(cx, field)
        _HOMOLOGY_CACHE[key] = hit
    return dict(hit)


def _compute_homology(cx: SimplicialComplex, field) -> dict:
    faces = cx.faces()
    top = max(faces)
    counts = {d: len(fs) for d, fs in faces.items()}
    index = {d: {f: i for i, f in enumerate(fs)} for d, fs in faces.items()}

    # rank of the boundary map C_d -> C_{d-1}; d = 0 maps onto C_{-1}.
    ranks = {}
    for d in range(0, top + 1):
        cols = faces.get(d, [])
        if not cols:
            ranks[d] = 0
            continue
        if d == 0:
            ranks[d] = 1  # augmentation map: all vertices hit the empty face
            continue
        rows = [[0] * len(cols) for _ in range(counts[d - 1])]
        lower = index[d - 1]
        for j, face in enumerate(cols):
            for k in range(len(face)):
                sub = face[:k] + face[k + 1 :]
                rows[lower[sub]][j] = -1 if k % 2 else 1
        ranks[d] = int_rank(rows, len(cols), modulus=field)

    dims = {}
    for d in range(-1, top + 1):
        f_d = counts.get(d, 0)
        dims[d] = f_d - ranks.get(d, 0) - ranks.get(d + 1, 0)
    return dims


def is_acyclic(cx: SimplicialComplex, field: int | None = None) -> bool:
    """True iff every reduced homology dimension vanishes."""
    return all(v == 0 for v in reduced_homology_dims(cx, field).values())
