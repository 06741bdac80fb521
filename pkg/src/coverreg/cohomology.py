"""Graded local cohomology via degree complexes, a_i-invariants by two
independent routes, regularity of powers, and the linearity checks.

The two a_i routes are deliberately independent:

* `ai_oracle` scans every degree vector in a provably complete box,
  evaluating the general degree complex of the explicit power ideal.
* `ai_patterns` enumerates localizations and lower/upper edge patterns,
  reading the top degree off an exact LP over the pattern polytope.

Their exact agreement on the corpus is the central correctness check.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .complexes import (
    SimplicialComplex,
    _facets_from_masks,
    _mask_to_set,
    degree_complex_general,
    negative_support,
    reduced_homology_dims,
)
from .exactlin import CapExceeded, lp_solve
from .hypergraph import DEFAULT_TU_CAP, Hypergraph, is_bipartite_graph, is_unimodular
from .monomial import MonomialIdeal, cover_ideal, krull_dim_quotient
from .polytopes import EdgePattern, build_P

DEFAULT_SCAN_BUDGET = 5_000_000


class _NegInfinityType:
    """Explicit minus infinity for a_i values; compares below every integer."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "-oo"

    def __lt__(self, other):
        return not isinstance(other, _NegInfinityType)

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return isinstance(other, _NegInfinityType)

    def __eq__(self, other):
        return isinstance(other, _NegInfinityType)

    def __hash__(self):
        return hash("NEG_INF")

    def __add__(self, other):
        return self

    __radd__ = __add__


NEG_INF = _NegInfinityType()

AiValue = int | _NegInfinityType


def is_finite(v) -> bool:
    return isinstance(v, int)


def field_label(field: int | None) -> str:
    return "q" if field is None else f"fp:{field}"


class MethodDisagreement(RuntimeError):
    """The oracle and pattern routes produced different a_i tables."""

    def __init__(self, mismatches):
        self.mismatches = tuple(mismatches)
        lines = ", ".join(
            f"(p={p}, s={s}): oracle {o} vs patterns {q}" for p, s, o, q in self.mismatches
        )
        super().__init__(f"a_i method disagreement: {lines}")


def local_cohomology_dim(ideal: MonomialIdeal, p: int, alpha, field: int | None = None) -> int:
    """dim of the degree-alpha piece of the p-th local cohomology of R/I.

    Evaluates the reduced homology of the degree complex in degree
    p - |G_alpha| - 1 (Takayama's formula).
    """
    cx = degree_complex_general(ideal, alpha)
    shift = len(negative_support(alpha))
    return reduced_homology_dims(cx, field).get(p - shift - 1, 0)


# -- oracle route ----------------------------------------------------------

_DIMS_CACHE: dict = {}
_ORACLE_CACHE: dict = {}


def _dims_for_masks(n: int, wmask: int, raw_masks: frozenset, field) -> dict:
    """Nonzero homology dims of the complex with the given non-face masks."""
    key = (n, wmask, raw_masks, field)
    hit = _DIMS_CACHE.get(key)
    if hit is None:
        minimal = frozenset(
            m for m in raw_masks if not any(o != m and o & m == o for o in raw_masks)
        )
        facets = _facets_from_masks(n, wmask, minimal)
        cx = SimplicialComplex(n, [_mask_to_set(f) for f in facets])
        dims = reduced_homology_dims(cx, field)
        hit = {d: v for d, v in dims.items() if v}
        _DIMS_CACHE[key] = hit
    return hit


def ai_oracle_table(
    ideal: MonomialIdeal,
    s: int,
    field: int | None = None,
    box_budget: int = DEFAULT_SCAN_BUDGET,
) -> dict:
    """All a_p values of R/ideal at once, by exhaustive box scan.

    The ideal must be the s-th power of a cover ideal of a unimodular
    hypergraph; then every coordinate of a top nonvanishing degree may be
    assumed in {-1} union [0, s]: entries below -1 leave the degree complex
    unchanged while lowering the total degree, and an entry above s makes
    its vertex a cone apex of every relevant complex.

    Returns a dict holding the finite a_p only.
    """
    if s < 1:
        raise ValueError("power s must be >= 1")
    if ideal.is_zero:
        raise ValueError("a_i scan needs a nonzero ideal")
    n = ideal.n
    box = (s + 2) ** n
    if box > box_budget:
        raise CapExceeded(
            f"scan box ({s + 2})^{n} = {box} points exceeds budget {box_budget}"
        )
    key = (ideal, s, field)
    hit = _ORACLE_CACHE.get(key)
    if hit is not None:
        return dict(hit)
    gens = ideal.gens
    best: dict = {}
    for gmask in range(1 << n):
        gsize = gmask.bit_count()
        wbits = [i for i in range(n) if not gmask >> i & 1]
        gw = [tuple((g[i], 1 << i) for i in wbits) for g in gens]
        wmask = 0
        for i in wbits:
            wmask |= 1 << i
        for vals in itertools.product(range(s + 1), repeat=len(wbits)):
            raw = set()
            in_ideal = False
            for g in gw:
                m = 0
                for (ge, bit), av in zip(g, vals):
                    if ge > av:
                        m |= bit
                if not m:
                    in_ideal = True
                    break
                raw.add(m)
            if in_ideal:
                continue
            dims = _dims_for_masks(n, wmask, frozenset(raw), field)
            if not dims:
                continue
            total = sum(vals) - gsize
            for deg in dims:
                p = deg + gsize + 1
                cur = best.get(p)
                if cur is None or total > cur:
                    best[p] = total
    _ORACLE_CACHE[key] = best
    return dict(best)


def ai_oracle(
    ideal: MonomialIdeal,
    p: int,
    s: int,
    field: int | None = None,
    box_budget: int = DEFAULT_SCAN_BUDGET,
) -> AiValue:
    """a_p(R/ideal) by exhaustive scan; NEG_INF when the module vanishes."""
    return ai_oracle_table(ideal, s, field, box_budget).get(p, NEG_INF)


# -- pattern route -----------------------------------------------------------

_PATTERN_CACHE: dict = {}


def _pattern_scan(h: Hypergraph, s: int, field, tu_cap: int):
    if s < 1:
        raise ValueError("power s must be >= 1")
    if not h.edges:
        raise ValueError("pattern scan needs at least one edge")
    if not h.is_simple():
        raise ValueError("pattern scan requires a simple hypergraph")
    if not is_unimodular(h, cap=tu_cap):
        raise ValueError("pattern scan requires a totally unimodular hypergraph")
    key = (h, s, field)
    hit = _PATTERN_CACHE.get(key)
    if hit is not None:
        return hit
    n = h.n
    best: dict = {}
    realized = []
    for gmask in range(1 << n):
        gone = [i + 1 for i in range(n) if gmask >> i & 1]
        if len(gone) == n:
            # G = V would need the {emptyset} complex, i.e. a zero ideal.
            continue
        sub = h.localize(gone).hypergraph
        if not sub.edges:
            continue
        gsize = len(gone)
        m = len(sub.edges)
        allv = set(sub.vertices)
        for lower_mask in range(1, 1 << m):
            lower = [j for j in range(m) if lower_mask >> j & 1]
            covered = set()
            for j in lower:
                covered |= sub.edges[j]
            if covered != allv:
                # some vertex sits in every chosen facet: cone, acyclic;
                # the same condition keeps P_t bounded.
                continue
            facets = [frozenset(allv) - sub.edges[j] for j in lower]
            cx = SimplicialComplex(sub.n, facets)
            dims = reduced_homology_dims(cx, field)
            nonzero = [d for d, v in dims.items() if v]
            if not nonzero:
                continue
            pattern = EdgePattern(sub, lower)
            out = lp_solve(build_P(pattern, s))
            if out.status == "infeasible":
                continue
            if out.status == "unbounded":
                raise RuntimeError(
                    f"P_{s} unbounded for covered pattern {pattern!r}: internal inconsistency"
                )
            if out.value.denominator != 1:
                raise RuntimeError(
                    f"delta(P_{s}) = {out.value} non-integral over a unimodular base"
                )
            val = int(out.value) - gsize
            realized.append(pattern)
            for deg in nonzero:
                p = deg + gsize + 1
                cur = best.get(p)
                if cur is None or val > cur:
                    best[p] = val
    hit = (best, tuple(realized))
    _PATTERN_CACHE[key] = hit
    return hit


def ai_patterns_table(
    h: Hypergraph, s: int, field: int | None = None, tu_cap: int = DEFAULT_TU_CAP
) -> dict:
    """All finite a_p(R/J(h)^s) via localization patterns and exact LPs."""
    best, _ = _pattern_scan(h, s, field, tu_cap)
    return dict(best)


def ai_patterns(
    h: Hypergraph, p: int, s: int, field: int | None = None, tu_cap: int = DEFAULT_TU_CAP
) -> AiValue:
    """a_p(R/J(h)^s) by the pattern route; NEG_INF when nothing qualifies."""
    return ai_patterns_table(h, s, field, tu_cap).get(p, NEG_INF)


def realized_patterns(
    h: Hypergraph, s: int, field: int | None = None, tu_cap: int = DEFAULT_TU_CAP
) -> tuple:
    """Edge patterns that realized nonvanishing cohomology at power s."""
    _, realized = _pattern_scan(h, s, field, tu_cap)
    return realized


# -- tables, regularity, fits ------------------------------------------------


@dataclass(frozen=True)
class AiTable:
    """a_p values for a sweep of powers, tagged with provenance metadata."""

    hypergraph: str
    method: str
    field_label: str
    entries: dict  # (p, s) -> AiValue

    def value(self, p: int, s: int) -> AiValue:
        return self.entries.get((p, s), NEG_INF)


def ai_table(
    h: Hypergraph,
    s_values,
    method: str = "patterns",
    field: int | None = None,
    name: str = "",
    box_budget: int = DEFAULT_SCAN_BUDGET,
    tu_cap: int = DEFAULT_TU_CAP,
) -> AiTable:
    """Tabulate a_p(R/J(h)^s) for p = 0..dim R/J and the given powers."""
    dim = krull_dim_quotient(h)
    entries = {}
    for s in s_values:
        table = _table_by_method(h, s, method, field, box_budget, tu_cap)
        for p in range(dim + 1):
            entries[(p, s)] = table.get(p, NEG_INF)
    return AiTable(name, method, field_label(field), entries)


def _table_by_method(h, s, method, field, box_budget, tu_cap) -> dict:
    if method == "patterns":
        return ai_patterns_table(h, s, field, tu_cap)
    if method == "oracle":
        ideal = cover_ideal(h).power(s)
        return ai_oracle_table(ideal, s, field, box_budget)
    if method == "both":
        pat = ai_patterns_table(h, s, field, tu_cap)
        ora = ai_oracle_table(cover_ideal(h).power(s), s, field, box_budget)
        dim = krull_dim_quotient(h)
        mismatches = [
            (p, s, ora.get(p, NEG_INF), pat.get(p, NEG_INF))
            for p in range(dim + 1)
            if ora.get(p, NEG_INF) != pat.get(p, NEG_INF)
        ]
        if mismatches:
            raise MethodDisagreement(mismatches)
        return pat
    raise ValueError(f"unknown method {method!r}")


def regularity(
    h: Hypergraph,
    s: int,
    field: int | None = None,
    method: str = "patterns",
    box_budget: int = DEFAULT_SCAN_BUDGET,
    tu_cap: int = DEFAULT_TU_CAP,
) -> int:
    """reg J(h)^s = 1 + max over p of (a_p(R/J^s) + p)."""
    dim = krull_dim_quotient(h)
    table = _table_by_method(h, s, method, field, box_budget, tu_cap)
    bad = [p for p in table if p > dim]
    if bad:
        raise RuntimeError(f"a_p finite above dim R/J = {dim}: p = {bad}")
    if not table:
        raise RuntimeError("every a_p came back -infinity; R/J^s cannot be like that")
    return 1 + max(v + p for p, v in table.items())


@dataclass(frozen=True)
class LinearFit:
    """An exact affine tail: value = d*s - e for every observed s >= onset."""

    d: int
    e: int
    onset: int

    def value_at(self, s: int) -> int:
        return self.d * s - self.e

    @property
    def intercept(self) -> int:
        """e in the `d*s + e` convention used for regularity statements."""
        return -self.e


def fit_linear(values, expected_slope: int | None = None) -> LinearFit | None:
    """Largest exactly-affine suffix of a map s -> integer.

    Keys must be consecutive integers.  Returns None when fewer than two
    values are supplied (no line is determined); raises if an expected
    slope is given and the fitted one differs.
    """
    ss = sorted(values)
    if len(ss) < 2:
        return None
    if ss != list(range(ss[0], ss[-1] + 1)):
        raise ValueError("fit_linear needs consecutive integer keys")
    vs = [values[s] for s in ss]
    d = vs[-1] - vs[-2]
    start = len(ss) - 2
    while start > 0 and vs[start] - vs[start - 1] == d:
        start -= 1
    onset = ss[start]
    fit = LinearFit(d=d, e=d * onset - values[onset], onset=onset)
    if expected_slope is not None and fit.d != expected_slope:
        raise ValueError(f"fitted slope {fit.d} != expected {expected_slope}")
    return fit


# -- theorem verification -----------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: dict

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class TheoremReport:
    """Outcome of the linearity/threshold checks on one hypergraph."""

    n: int
    r: int
    dim_quotient: int
    d_of_j: int
    bipartite: bool
    threshold_reg: int
    threshold_ai: int
    threshold_bipartite: int | None
    s_values: tuple
    reg_values: dict
    reg_fit: LinearFit | None
    ai_values: dict  # p -> {s: AiValue}
    ai_fits: dict  # p -> LinearFit | None
    checks: tuple
    notes: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        def ai_repr(v):
            return v if is_finite(v) else "-inf"

        def fit_repr(f):
            return None if f is None else {"d": f.d, "e": f.e, "onset": f.onset}

        return {
            "n": self.n,
            "rank": self.r,
            "dim_quotient": self.dim_quotient,
            "d_of_J": self.d_of_j,
            "bipartite": self.bipartite,
            "thresholds": {
                "reg": self.threshold_reg,
                "ai": self.threshold_ai,
                "bipartite": self.threshold_bipartite,
            },
            "s_values": list(self.s_values),
            "reg_values": {str(s): v for s, v in sorted(self.reg_values.items())},
            "reg_fit": fit_repr(self.reg_fit),
            "ai_values": {
                str(p): {str(s): ai_repr(v) for s, v in sorted(row.items())}
                for p, row in sorted(self.ai_values.items())
            },
            "ai_fits": {str(p): fit_repr(f) for p, f in sorted(self.ai_fits.items())},
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
            "passed": self.passed,
        }


def verify_theorems(
    h: Hypergraph,
    s_max: int | None = None,
    field: int | None = None,
    tu_cap: int = DEFAULT_TU_CAP,
) -> TheoremReport:
    """Check the linearity statements and bounds over an observed power range.

    Uses the pattern route for the sweeps (it scales in s); the oracle
    cross-check lives in the verify command / acceptance suite.  Threshold
    assertions are made only when the threshold lies inside the swept
    range.  Eventually-constant-looking a_p rows are reported as
    inconclusive rather than asserted against.
    """
    if not h.edges:
        raise ValueError("verify_theorems needs at least one edge")
    if not h.is_simple():
        raise ValueError("verify_theorems requires a simple hypergraph")
    if not is_unimodular(h, cap=tu_cap):
        raise ValueError("verify_theorems requires a totally unimodular hypergraph")

    n = h.n
    r = h.rank()
    dim = krull_dim_quotient(h)
    d_of_j = cover_ideal(h).max_gen_degree()
    thr_reg = r * math.ceil(n / 2) + 1
    thr_ai = n * n
    bipartite = is_bipartite_graph(h)
    thr_bip = n + 2 if bipartite else None
    if s_max is None:
        s_max = thr_reg + 1
    s_max = max(s_max, 3)
    s_values = tuple(range(1, s_max + 1))

    tables = {s: ai_patterns_table(h, s, field, tu_cap) for s in s_values}
    ai_values = {
        p: {s: tables[s].get(p, NEG_INF) for s in s_values} for p in range(dim + 1)
    }
    reg_values = {}
    for s in s_values:
        finite = [(p, v) for p, v in tables[s].items()]
        if not finite:
            raise RuntimeError(f"every a_p of R/J^{s} came back -infinity")
        reg_values[s] = 1 + max(v + p for p, v in finite)

    checks = []
    notes = []

    reg_fit = fit_linear(reg_values)
    checks.append(
        CheckResult(
            "reg_slope_equals_d_of_J",
            reg_fit is not None and reg_fit.d == d_of_j,
            {"expected": d_of_j, "got": None if reg_fit is None else reg_fit.d},
        )
    )
    if reg_fit is not None:
        if thr_reg <= s_max:
            checks.append(
                CheckResult(
                    "reg_onset_within_threshold",
                    reg_fit.onset <= thr_reg,
                    {"onset": reg_fit.onset, "threshold": thr_reg},
                )
            )
        else:
            notes.append(
                f"reg threshold {thr_reg} beyond swept range {s_max}; onset check skipped"
            )
        e_reg = reg_fit.intercept
        checks.append(
            CheckResult(
                "reg_intercept_bound",
                0 <= e_reg <= dim - d_of_j + 1,
                {"e": e_reg, "upper": dim - d_of_j + 1},
            )
        )
        if bipartite:
            if thr_bip <= s_max:
                checks.append(
                    CheckResult(
                        "bipartite_onset",
                        reg_fit.onset <= thr_bip,
                        {"onset": reg_fit.onset, "threshold": thr_bip},
                    )
                )
            else:
                notes.append(
                    f"bipartite threshold {thr_bip} beyond swept range {s_max}; check skipped"
                )

    ai_fits = {}
    for p in range(dim + 1):
        row = ai_values[p]
        finite_s = [s for s in s_values if is_finite(row[s])]
        if not finite_s:
            ai_fits[p] = None
            continue
        # fit on the trailing run of consecutive finite values
        tail = [finite_s[-1]]
        for s in reversed(finite_s[:-1]):
            if s == tail[0] - 1:
                tail.insert(0, s)
            else:
                break
        fit = fit_linear({s: row[s] for s in tail}) if len(tail) >= 2 else None
        ai_fits[p] = fit
        if fit is None:
            notes.append(f"a_{p}: too few finite values to fit; inconclusive")
            continue
        if fit.d == 0:
            notes.append(
                f"a_{p}: fitted slope 0 over observed range; eventually-constant "
                "candidate, reported but not asserted"
            )
            continue
        checks.append(
            CheckResult(
                f"a_{p}_slope_le_intercept",
                fit.d <= fit.e,
                {"p": p, "d": fit.d, "e": fit.e},
            )
        )
        checks.append(
            CheckResult(
                f"a_{p}_intercept_le_n_squared",
                fit.e <= thr_ai,
                {"p": p, "e": fit.e, "n_squared": thr_ai},
            )
        )

    return TheoremReport(
        n=n,
        r=r,
        dim_quotient=dim,
        d_of_j=d_of_j,
        bipartite=bipartite,
        threshold_reg=thr_reg,
        threshold_ai=thr_ai,
        threshold_bipartite=thr_bip,
        s_values=s_values,
        reg_values=reg_values,
        reg_fit=reg_fit,
        ai_values=ai_values,
        ai_fits=ai_fits,
        checks=tuple(checks),
        notes=tuple(notes),
    )
