"""Hypergraphs: construction, simplification, incidence matrices,
total-unimodularity checking, vertex covers and localization.

Vertices are labelled 1..n throughout.  Edge order is preserved from input
everywhere so that downstream pattern enumeration stays deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exactlin import CapExceeded, RationalMatrix, _bareiss_det

DEFAULT_TU_CAP = 12

VertexSet = frozenset  # subsets of {1..n}


class ValidationError(ValueError):
    """Malformed hypergraph input (JSON or constructor arguments)."""


class Hypergraph:
    """Vertex set {1..n} plus a tuple of distinct nonempty edges."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges):
        if not isinstance(n, int) or n < 0:
            raise ValidationError(f"vertex count must be a nonnegative integer, got {n!r}")
        seen = set()
        out = []
        for k, raw in enumerate(edges):
            members = list(raw)
            e = frozenset(members)
            if not e:
                raise ValidationError(f"edge #{k + 1} is empty")
            if len(e) != len(members):
                raise ValidationError(f"edge #{k + 1} repeats a vertex")
            for v in e:
                if not isinstance(v, int) or not 1 <= v <= n:
                    raise ValidationError(f"edge #{k + 1}: vertex {v!r} outside 1..{n}")
            if e in seen:
                raise ValidationError(f"edge #{k + 1} duplicates an earlier edge")
            seen.add(e)
            out.append(e)
        self.n = n
        self.edges = tuple(out)

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def is_simple(self) -> bool:
        return all(
            not (e1 < e2 or e2 < e1)
            for e1, e2 in itertools.combinations(self.edges, 2)
        )

    def rank(self) -> int:
        """Maximum edge cardinality."""
        if not self.edges:
            raise ValueError("rank undefined: hypergraph has no edges")
        return max(len(e) for e in self.edges)

    def is_graph(self) -> bool:
        return bool(self.edges) and self.rank() <= 2

    def __eq__(self, other):
        return (
            isinstance(other, Hypergraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        shown = [sorted(e) for e in self.edges]
        return f"Hypergraph(n={self.n}, edges={shown})"

    # -- operations ----------------------------------------------------

    def simplify(self) -> "Hypergraph":
        """Keep only inclusion-minimal edges; vertex count unchanged."""
        keep = []
        for e in self.edges:
            if not any(other < e for other in self.edges):
                keep.append(e)
        return Hypergraph(self.n, keep)

    def incidence_matrix(self) -> RationalMatrix:
        """n x m 0/1 matrix; rows are vertices, columns follow edge order."""
        return RationalMatrix(
            [[1 if i in e else 0 for e in self.edges] for i in self.vertices]
        )

    def minimal_vertex_covers(self) -> tuple[VertexSet, ...]:
        """All inclusion-minimal transversals, in lexicographic order.

        Brute force over vertex subsets; fine at desk scale.
        """
        if not self.is_simple():
            raise ValueError("minimal_vertex_covers requires a simple hypergraph")
        masks = [sum(1 << (v - 1) for v in e) for e in self.edges]
        covers = []
        for sub in range(1 << self.n):
            if any(not (sub & em) for em in masks):
                continue
            minimal = True
            probe = sub
            while probe:
                bit = probe & -probe
                smaller = sub & ~bit
                if all(smaller & em for em in masks):
                    minimal = False
                    break
                probe ^= bit
            if minimal:
                covers.append(
                    frozenset(v for v in self.vertices if sub & (1 << (v - 1)))
                )
        covers.sort(key=lambda c: tuple(sorted(c)))
        return tuple(covers)

    def localize(self, gone) -> "Localization":
        """Remove the vertices in `gone`, keeping only edges inside the rest.

        The surviving vertices are relabelled 1..|V'| preserving order; the
        original labels are recorded on the result.
        """
        gone = frozenset(gone)
        for v in gone:
            if not 1 <= v <= self.n:
                raise ValueError(f"vertex {v} outside 1..{self.n}")
        stay = [v for v in self.vertices if v not in gone]
        new_label = {v: i + 1 for i, v in enumerate(stay)}
        kept = [frozenset(new_label[v] for v in e) for e in self.edges if e <= set(stay)]
        sub = Hypergraph(len(stay), kept).simplify()
        return Localization(sub, tuple(stay))

    # -- JSON interface -------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"n": self.n, "edges": [sorted(e) for e in self.edges]}

    @classmethod
    def from_json_dict(cls, obj) -> "Hypergraph":
        """Strict parse of {"n": int, "edges": [[int, ...], ...]}."""
        if not isinstance(obj, dict):
            raise ValidationError("top level must be a JSON object")
        extra = set(obj) - {"n", "edges"}
        if extra:
            raise ValidationError(f"unknown field(s): {sorted(extra)}")
        if "n" not in obj:
            raise ValidationError("missing field 'n'")
        if "edges" not in obj:
            raise ValidationError("missing field 'edges'")
        n = obj["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ValidationError("field 'n': expected a positive integer")
        edges = obj["edges"]
        if not isinstance(edges, list):
            raise ValidationError("field 'edges': expected a list of edges")
        for k, e in enumerate(edges):
            if not isinstance(e, list):
                raise ValidationError(f"field 'edges[{k}]': expected a list of vertices")
            for v in e:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise ValidationError(f"field 'edges[{k}]': vertex {v!r} is not an integer")
        try:
            return cls(n, edges)
        except ValidationError as exc:
            raise ValidationError(f"field 'edges': {exc}") from None


@dataclass(frozen=True)
class Localization:
    """A localized hypergraph plus the order-preserving label map.

    `old_labels[i - 1]` is the original name of new vertex i.
    """

    hypergraph: Hypergraph
    old_labels: tuple[int, ...]

    def original(self, v: int) -> int:
        return self.old_labels[v - 1]


# -- total unimodularity ------------------------------------------------


@dataclass(frozen=True)
class TUResult:
    ok: bool
    witness_rows: tuple[int, ...] | None = None
    witness_cols: tuple[int, ...] | None = None
    witness_det: int | None = None

    def __bool__(self):
        return self.ok


def is_totally_unimodular(matrix: RationalMatrix, cap: int = DEFAULT_TU_CAP) -> TUResult:
    """Exhaustive check that every square minor has determinant -1, 0 or 1.

    Exponential in the matrix size, so it refuses matrices larger than
    `cap` in either dimension.  On failure the witness is the first (by
    size, then lexicographic row/column order) offending submatrix, so it
    is minor-minimal.
    """
    if matrix.rows > cap or matrix.cols > cap:
        raise CapExceeded(
            f"TU check refused: {matrix.rows}x{matrix.cols} exceeds cap {cap}x{cap}"
        )
    if not matrix.is_integer():
        # A non-integer entry is already a bad 1x1 minor.
        for i in range(matrix.rows):
            for j in range(matrix.cols):
                if matrix.at(i, j).denominator != 1:
                    return TUResult(False, (i,), (j,), None)
    ints = [[int(x) for x in matrix.row(i)] for i in range(matrix.rows)]
    nr, nc = matrix.rows, matrix.cols
    for i in range(nr):
        for j in range(nc):
            if ints[i][j] not in (-1, 0, 1):
                return TUResult(False, (i,), (j,), ints[i][j])
    # Once every entry is in {-1, 0, 1}, a submatrix with a zero row or
    # column has det 0, and one with a single nonzero in some row/column
    # expands to a strictly smaller minor checked at an earlier size.  So
    # only submatrices with >= 2 nonzeros in every row and column matter.
    row_support = [sum(1 << j for j in range(nc) if ints[i][j]) for i in range(nr)]
    col_support = [sum(1 << i for i in range(nr) if ints[i][j]) for j in range(nc)]
    fat_rows = [i for i in range(nr) if row_support[i].bit_count() >= 2]
    fat_cols = [j for j in range(nc) if col_support[j].bit_count() >= 2]
    for k in range(2, min(len(fat_rows), len(fat_cols)) + 1):
        for rows in itertools.combinations(fat_rows, k):
            rbits = sum(1 << i for i in rows)
            candidates = [j for j in fat_cols if (col_support[j] & rbits).bit_count() >= 2]
            if len(candidates) < k:
                continue
            for cols in itertools.combinations(candidates, k):
                cbits = sum(1 << j for j in cols)
                if any((row_support[i] & cbits).bit_count() < 2 for i in rows):
                    continue
                sub = [[ints[i][j] for j in cols] for i in rows]
                d = _bareiss_det(sub)
                if d not in (-1, 0, 1):
                    return TUResult(False, rows, cols, d)
    return TUResult(True)


_UNIMODULAR_CACHE: dict[Hypergraph, bool] = {}


def is_unimodular(h: Hypergraph, cap: int = DEFAULT_TU_CAP) -> bool:
    """TU verdict for a hypergraph's incidence matrix, cached per hypergraph."""
    hit = _UNIMODULAR_CACHE.get(h)
    if hit is None:
        hit = bool(is_totally_unimodular(h.incidence_matrix(), cap=cap))
        _UNIMODULAR_CACHE[h] = hit
    return hit


# -- constructors ---------------------------------------------------------


def cycle(n: int) -> Hypergraph:
    """The cycle graph C_n."""
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    edges = [[i, i + 1] for i in range(1, n)] + [[n, 1]]
    return Hypergraph(n, edges)


def path(n: int) -> Hypergraph:
    """The path graph P_n on n vertices."""
    if n < 2:
        raise ValueError("path needs at least 2 vertices")
    return Hypergraph(n, [[i, i + 1] for i in range(1, n)])


def complete_bipartite(a: int, b: int) -> Hypergraph:
    """K_{a,b} with sides {1..a} and {a+1..a+b}."""
    if a < 1 or b < 1:
        raise ValueError("complete_bipartite needs positive side sizes")
    return Hypergraph(a + b, [[i, a + j] for i in range(1, a + 1) for j in range(1, b + 1)])


def bipartite_from_edge_list(n: int, edges) -> Hypergraph:
    """Graph from an edge list, verified 2-colorable (hence unimodular)."""
    h = Hypergraph(n, edges)
    if any(len(e) != 2 for e in h.edges):
        raise ValueError("bipartite_from_edge_list: every edge must have 2 vertices")
    color = {}
    adj = {v: [] for v in h.vertices}
    for e in h.edges:
        u, v = sorted(e)
        adj[u].append(v)
        adj[v].append(u)
    for start in h.vertices:
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop()
            for w in adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    raise ValueError("edge list is not bipartite")
    return h


def interval_hypergraph(n: int, intervals) -> Hypergraph:
    """Edges are integer intervals [lo..hi] on the line 1..n.

    Interval incidence matrices have consecutive ones in each column, so
    these hypergraphs are always unimodular.
    """
    edges = []
    for k, (lo, hi) in enumerate(intervals):
        if not (1 <= lo <= hi <= n):
            raise ValueError(f"interval #{k + 1}: need 1 <= {lo} <= {hi} <= {n}")
        edges.append(list(range(lo, hi + 1)))
    return Hypergraph(n, edges)


def is_bipartite_graph(h: Hypergraph) -> bool:
    """True when every edge has two vertices and the graph is 2-colorable."""
    if not h.edges or h.rank() > 2 or any(len(e) != 2 for e in h.edges):
        return False
    try:
        bipartite_from_edge_list(h.n, [sorted(e) for e in h.edges])
    except ValueError:
        return False
    return True
