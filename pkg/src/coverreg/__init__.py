"""coverreg: exact a_i-invariants and regularity of powers of cover ideals
of unimodular hypergraphs."""

from .cohomology import (
    NEG_INF,
    AiTable,
    LinearFit,
    MethodDisagreement,
    TheoremReport,
    ai_oracle,
    ai_oracle_table,
    ai_patterns,
    ai_patterns_table,
    ai_table,
    fit_linear,
    local_cohomology_dim,
    realized_patterns,
    regularity,
    verify_theorems,
)
from .complexes import (
    SimplicialComplex,
    degree_complex_general,
    degree_complex_unimodular,
    is_acyclic,
    negative_support,
    reduced_homology_dims,
)
from .exactlin import (
    EQ,
    GE,
    LE,
    CapExceeded,
    Constraint,
    LinearProgram,
    LpOutcome,
    RationalMatrix,
    lp_dual,
    lp_solve,
)
from .hypergraph import (
    Hypergraph,
    Localization,
    TUResult,
    ValidationError,
    bipartite_from_edge_list,
    complete_bipartite,
    cycle,
    interval_hypergraph,
    is_bipartite_graph,
    is_totally_unimodular,
    is_unimodular,
    path,
)
from .monomial import (
    MonomialIdeal,
    cover_ideal,
    edge_prime_power,
    krull_dim_quotient,
    monomial_str,
    symbolic_power_cover,
)
from .polytopes import (
    DeltaSequence,
    DualFitResult,
    EdgePattern,
    PatternError,
    build_C,
    build_P,
    delta,
    delta_sequence,
    dual_fit,
)

__version__ = "0.1.0"
