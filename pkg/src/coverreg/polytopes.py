"""The parametric polytopes P_t and C_t cut out by an edge pattern.

A pattern splits the edges of a (localized) hypergraph into "lower" edges,
whose coordinate sums are bounded above, and "upper" edges, bounded below.
P_t uses t-1 as the upper bound, C_t uses t; delta(S) is the maximum
coordinate sum over S.  The asymptotics delta(P_t) = d*t - e drive the
regularity theorems, and the dual LP recovers (d, e) independently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exactlin import GE, LE, CapExceeded, LinearProgram, lp_dual, lp_solve
from .hypergraph import Hypergraph, is_unimodular


class PatternError(ValueError):
    """An edge pattern violating its invariants."""


class BoundednessError(RuntimeError):
    """An LP came back unbounded where the pattern guard forbids it."""


class EdgePattern:
    """A lower/upper split of the edges of a base hypergraph.

    `lower` holds 0-based indices into base.edges; the remaining edges are
    the upper ones.  By default every vertex must lie in some lower edge
    (otherwise P_t and C_t are unbounded); pass enforce_cover=False to
    build raw, possibly unbounded systems.
    """

    __slots__ = ("base", "lower")

    def __init__(self, base: Hypergraph, lower, enforce_cover: bool = True):
        m = len(base.edges)
        low = frozenset(int(j) for j in lower)
        for j in low:
            if not 0 <= j < m:
                raise PatternError(f"lower edge index {j} outside 0..{m - 1}")
        if base.n < 1:
            raise PatternError("pattern needs at least one vertex")
        if enforce_cover:
            covered = set()
            for j in low:
                covered |= base.edges[j]
            missing = set(base.vertices) - covered
            if missing:
                raise PatternError(
                    f"vertices {sorted(missing)} lie in no lower edge (unbounded pattern)"
                )
        self.base = base
        self.lower = low

    @property
    def upper(self) -> tuple[int, ...]:
        return tuple(j for j in range(len(self.base.edges)) if j not in self.lower)

    @property
    def lower_sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.lower))

    def covers_all_vertices(self) -> bool:
        covered = set()
        for j in self.lower:
            covered |= self.base.edges[j]
        return covered == set(self.base.vertices)

    def __eq__(self, other):
        return (
            isinstance(other, EdgePattern)
            and self.base == other.base
            and self.lower == other.lower
        )

    def __hash__(self):
        return hash((self.base, self.lower))

    def __repr__(self):
        return f"EdgePattern(base={self.base!r}, lower={sorted(self.lower)}, upper={list(self.upper)})"


def _edge_row(base: Hypergraph, j: int):
    e = base.edges[j]
    return tuple(1 if v in e else 0 for v in base.vertices)


def build_P(pattern: EdgePattern, t: int) -> LinearProgram:
    """max sum(x) s.t. lower edge sums <= t-1, upper edge sums >= t, x >= 0."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    cons = [(_edge_row(pattern.base, j), LE, t - 1) for j in pattern.lower_sorted]
    cons += [(_edge_row(pattern.base, j), GE, t) for j in pattern.upper]
    return LinearProgram.maximize([1] * pattern.base.n, cons)


def build_C(pattern: EdgePattern, t: int) -> LinearProgram:
    """Same as build_P but with lower edge sums <= t."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    cons = [(_edge_row(pattern.base, j), LE, t) for j in pattern.lower_sorted]
    cons += [(_edge_row(pattern.base, j), GE, t) for j in pattern.upper]
    return LinearProgram.maximize([1] * pattern.base.n, cons)


def _known_unimodular(pattern: EdgePattern) -> bool:
    try:
        return is_unimodular(pattern.base)
    except CapExceeded:
        return False


def _check_integral(outcome, what: str):
    if outcome.value.denominator != 1 or any(x.denominator != 1 for x in outcome.point):
        raise BoundednessError(
            f"{what}: optimum of a totally unimodular system came back non-integral "
            f"(value {outcome.value}, point {outcome.point})"
        )


def delta(pattern: EdgePattern, t: int) -> Fraction | None:
    """delta(P_t): the exact LP optimum, or None when P_t is empty.

    For unimodular bases the optimum and its vertex are checked integral.
    """
    out = lp_solve(build_P(pattern, t))
    if out.status == "infeasible":
        return None
    if out.status == "unbounded":
        raise BoundednessError(f"P_{t} unbounded: boundedness guard violated for {pattern!r}")
    if _known_unimodular(pattern):
        _check_integral(out, f"delta(P_{t})")
    return out.value


def delta_C(pattern: EdgePattern, t: int) -> Fraction | None:
    out = lp_solve(build_C(pattern, t))
    if out.status == "infeasible":
        return None
    if out.status == "unbounded":
        raise BoundednessError(f"C_{t} unbounded: boundedness guard violated for {pattern!r}")
    return out.value


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str


@dataclass(frozen=True)
class DeltaSequence:
    """A sweep of delta(P_t) with the fitted slope/intercept and checks.

    values[t] is None when P_t is empty.  e_values[t] = d*t - delta(P_t).
    """

    pattern: EdgePattern
    values: dict
    d: int | None
    e: int | None
    onset: int | None
    e_values: dict
    realized: bool
    p_n_nonempty: bool | None
    violations: tuple[Violation, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.violations


def delta_sequence(pattern: EdgePattern, t_range, realized: bool = False) -> DeltaSequence:
    """Sweep delta(P_t) over a contiguous range and check its asymptotics.

    Checks recorded as violations rather than raised: nonemptiness persists
    once it starts; e_t is non-increasing; the stabilized e is at most n^2;
    stabilization onset is within the rank threshold when the sweep reaches
    it; and P_n is nonempty for realized patterns.
    """
    ts = sorted(int(t) for t in t_range)
    if not ts or ts != list(range(ts[0], ts[-1] + 1)) or ts[0] < 1:
        raise ValueError("t_range must be a contiguous range of positive integers")
    base = pattern.base
    violations = []

    values = {t: delta(pattern, t) for t in ts}

    c1 = lp_solve(build_C(pattern, 1))
    if c1.status != "optimal":
        violations.append(Violation("slope", f"C_1 is {c1.status}; slope d undefined"))
        d = None
    else:
        if _known_unimodular(pattern):
            _check_integral(c1, "delta(C_1)")
        d = int(c1.value) if c1.value.denominator == 1 else None
        if d is None:
            violations.append(Violation("slope", f"delta(C_1) = {c1.value} is not an integer"))

    seen_nonempty = False
    for t in ts:
        if values[t] is not None:
            seen_nonempty = True
        elif seen_nonempty:
            violations.append(Violation("persistence", f"P_{t} empty after a nonempty P_t"))

    e_values = {}
    if d is not None:
        for t in ts:
            if values[t] is not None:
                e_values[t] = d * t - values[t]
        defined = [t for t in ts if t in e_values]
        for prev, cur in zip(defined, defined[1:]):
            if e_values[cur] > e_values[prev]:
                violations.append(
                    Violation(
                        "e_monotone",
                        f"e_{cur} = {e_values[cur]} > e_{prev} = {e_values[prev]}",
                    )
                )

    e = None
    onset = None
    if e_values:
        last = max(e_values)
        final = e_values[last]
        if final.denominator == 1:
            e = int(final)
        onset = last
        for t in reversed([t for t in ts if t in e_values]):
            if e_values[t] == final:
                onset = t
            else:
                break
        if e is not None and e > base.n**2:
            violations.append(Violation("e_bound", f"stabilized e = {e} > n^2 = {base.n ** 2}"))
        if base.edges:
            threshold = base.rank() * math.ceil(base.n / 2) + 1
            if threshold <= ts[-1] and onset > threshold:
                violations.append(
                    Violation("onset", f"stabilization onset {onset} > threshold {threshold}")
                )

    p_n_nonempty = None
    if realized:
        val_n = values[base.n] if ts[0] <= base.n <= ts[-1] else delta(pattern, base.n)
        p_n_nonempty = val_n is not None
        if not p_n_nonempty:
            violations.append(Violation("p_n", f"P_n empty at n = {base.n} for a realized pattern"))

    return DeltaSequence(
        pattern=pattern,
        values=values,
        d=d,
        e=e,
        onset=onset,
        e_values=e_values,
        realized=realized,
        p_n_nonempty=p_n_nonempty,
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class DualFitResult:
    a: int
    b: int
    d: int | None
    e: int | None
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def dual_fit(pattern: EdgePattern, t_pair=None) -> DualFitResult:
    """Recover the affine form of delta(P_t) from the dual LP at two t values.

    Solves the dual of build_P at t1 < t2 (default onset+7, onset+8), reads
    off a*t - b through the two optima, and checks (a, b) against (d, e)
    from the primal sweep plus the duality inequality a <= b.
    """
    base = pattern.base
    threshold = base.rank() * math.ceil(base.n / 2) + 1 if base.edges else base.n + 1
    seq = delta_sequence(pattern, range(1, threshold + 2))
    if t_pair is None:
        start = seq.onset if seq.onset is not None else threshold
        t_pair = (start + 7, start + 8)
    t1, t2 = (int(t) for t in t_pair)
    if t1 >= t2:
        raise ValueError("t_pair must be strictly increasing")

    violations = list(seq.violations)
    duals = {}
    for t in (t1, t2):
        out = lp_solve(lp_dual(build_P(pattern, t)))
        if out.status != "optimal":
            violations.append(Violation("dual", f"dual of P_{t} came back {out.status}"))
            return DualFitResult(0, 0, seq.d, seq.e, tuple(violations))
        duals[t] = -out.value  # dual was returned as a negated maximization

    a_frac = (duals[t2] - duals[t1]) / (t2 - t1)
    b_frac = a_frac * t1 - duals[t1]
    if a_frac.denominator != 1 or b_frac.denominator != 1:
        violations.append(Violation("dual_fit", f"non-integer fit a={a_frac}, b={b_frac}"))
        return DualFitResult(0, 0, seq.d, seq.e, tuple(violations))
    a, b = int(a_frac), int(b_frac)
    if a > b:
        violations.append(Violation("duality", f"a = {a} > b = {b} contradicts d <= e"))
    if seq.d is not None and a != seq.d:
        violations.append(Violation("dual_fit", f"dual slope a = {a} != primal d = {seq.d}"))
    if seq.e is not None and b != seq.e:
        violations.append(Violation("dual_fit", f"dual intercept b = {b} != primal e = {seq.e}"))
    return DualFitResult(a, b, seq.d, seq.e, tuple(violations))
