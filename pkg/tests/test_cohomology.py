import pytest

from coverreg.cohomology import (
    NEG_INF,
    MethodDisagreement,
    ai_oracle,
    ai_oracle_table,
    ai_patterns,
    ai_patterns_table,
    ai_table,
    fit_linear,
    is_finite,
    local_cohomology_dim,
    regularity,
    verify_theorems,
)
from coverreg.exactlin import CapExceeded
from coverreg.hypergraph import Hypergraph, cycle, path
from coverreg.monomial import MonomialIdeal, cover_ideal, krull_dim_quotient

from conftest import tu_corpus


def test_neg_inf_behavior():
    assert NEG_INF < 0
    assert NEG_INF < -10**9
    assert not (NEG_INF < NEG_INF)
    assert NEG_INF + 5 == NEG_INF
    assert 5 + NEG_INF == NEG_INF
    assert max(NEG_INF, -3) == -3
    assert not is_finite(NEG_INF) and is_finite(0)


def test_local_cohomology_dim_c4():
    j = cover_ideal(cycle(4))
    assert local_cohomology_dim(j, 2, (0, 0, 0, 0)) == 1
    assert local_cohomology_dim(j, 0, (0, 0, 0, 0)) == 0


def test_local_cohomology_dim_one_variable():
    # R = K[x1]: H^1 of R/(x1) = K vanishes everywhere (the degree complex
    # at alpha = (-1) is void because x1 gets inverted); H^1 of R itself is
    # K[x1^-1] in degrees <= -1, where the complex is {emptyset}.
    principal = MonomialIdeal(1, [(1,)])
    assert local_cohomology_dim(principal, 1, (-1,)) == 0
    assert local_cohomology_dim(principal, 0, (0,)) == 1
    zero = MonomialIdeal.zero(1)
    assert local_cohomology_dim(zero, 1, (-1,)) == 1
    assert local_cohomology_dim(zero, 1, (-2,)) == 1


def test_ai_oracle_maximal_ideal_power():
    # J of a single edge is the maximal ideal; H^0_m(R/m^s) tops out at s-1
    maximal = cover_ideal(Hypergraph(2, [[1, 2]]))
    for s in (1, 2, 3, 4, 5):
        table = ai_oracle_table(maximal.power(s), s)
        assert table == {0: s - 1}


def test_ai_oracle_c4():
    j = cover_ideal(cycle(4))
    assert ai_oracle(j, 2, 1) == 0
    assert ai_oracle(j, 1, 1) == NEG_INF
    assert ai_oracle(j.power(2), 2, 2) == 2


def test_ai_oracle_budget_refusal():
    j = cover_ideal(cycle(4))
    with pytest.raises(CapExceeded, match="budget"):
        ai_oracle_table(j, 1, box_budget=10)


def test_ai_patterns_c4_linear():
    c4 = cycle(4)
    for s in (1, 2, 3, 4):
        assert ai_patterns(c4, 2, s) == 2 * s - 2
        assert ai_patterns(c4, 1, s) == NEG_INF


def test_ai_patterns_above_dimension():
    for h in (cycle(4), path(3)):
        dim = krull_dim_quotient(h)
        for p in range(dim + 1, dim + 4):
            assert ai_patterns(h, p, 2) == NEG_INF


def test_ai_patterns_rejects_non_tu():
    with pytest.raises(ValueError, match="unimodular"):
        ai_patterns(cycle(3), 1, 1)


def test_single_edge_patterns_match_oracle():
    edge = Hypergraph(2, [[1, 2]])
    ideal = cover_ideal(edge)
    for s in (1, 2, 3, 4, 5):
        assert ai_patterns_table(edge, s) == ai_oracle_table(ideal.power(s), s)


def test_method_equivalence_small_corpus():
    for name, h in tu_corpus().items():
        ideal = cover_ideal(h)
        for s in (1, 2):
            oracle = ai_oracle_table(ideal.power(s), s)
            patterns = ai_patterns_table(h, s)
            assert oracle == patterns, (name, s)


def test_method_equivalence_isolated_vertex():
    # the pattern route reaches isolated vertices only through localization
    h = Hypergraph(3, [[1, 2]])
    ideal = cover_ideal(h)
    for s in (1, 2, 3, 4):
        assert ai_patterns_table(h, s) == ai_oracle_table(ideal.power(s), s)
        assert ai_patterns(h, 1, s) == s - 2 if s > 1 else True


def test_method_equivalence_singleton_edges():
    h = Hypergraph(2, [[1], [2]])
    ideal = cover_ideal(h)
    assert ideal.gens == ((1, 1),)
    for s in (1, 2, 3):
        assert ai_patterns_table(h, s) == ai_oracle_table(ideal.power(s), s) == {1: 2 * s - 2}


def test_verify_theorems_rank_one():
    report = verify_theorems(Hypergraph(1, [[1]]), s_max=4)
    assert report.passed
    assert report.reg_values == {1: 1, 2: 2, 3: 3, 4: 4}


def test_finiteness_is_monotone_in_s():
    # once a_p shows up it stays, over the observed range
    for name, h in tu_corpus().items():
        dim = krull_dim_quotient(h)
        tables = {s: ai_patterns_table(h, s) for s in range(1, 6)}
        for p in range(dim + 1):
            seen = False
            for s in range(1, 6):
                if p in tables[s]:
                    seen = True
                elif seen:
                    pytest.fail(f"{name}: a_{p} finite then -inf at s={s}")


def test_regularity_examples():
    c4 = cycle(4)
    assert regularity(c4, 1, method="both") == 3
    assert regularity(c4, 2, method="both") == 5
    edge = Hypergraph(2, [[1, 2]])
    for s in (1, 2, 3, 4):
        assert regularity(edge, s, method="both") == s


def test_regularity_frozen_tables():
    # values produced by the box-scan oracle and pinned; patterns must agree
    expected = {
        "path3": [2, 4, 6, 8],
        "path4": [2, 4, 6, 8],
        "k22": [3, 5, 7, 9],
        "k23": [4, 7, 10, 13],
        "interval3": [2, 4, 6, 8],
        "cycle6": [4, 8, 12, 16],
    }
    corpus = tu_corpus()
    for name, regs in expected.items():
        h = corpus[name]
        got = [regularity(h, s, method="both") for s in (1, 2, 3, 4)]
        assert got == regs, name


def test_regularity_dominates_every_ai():
    for name, h in tu_corpus().items():
        dim = krull_dim_quotient(h)
        for s in (1, 2, 3):
            table = ai_patterns_table(h, s)
            reg_quotient = regularity(h, s) - 1
            values = [table.get(p, NEG_INF) + p for p in range(dim + 1)]
            assert all(reg_quotient >= v for v in values if is_finite(v))
            assert reg_quotient in values


def test_ai_table_builder():
    tab = ai_table(cycle(4), range(1, 4), method="patterns", name="c4")
    assert tab.hypergraph == "c4"
    assert tab.field_label == "q"
    assert tab.value(2, 3) == 4
    assert tab.value(0, 1) == NEG_INF
    assert tab.value(1, 7) == NEG_INF  # outside the sweep


def test_fit_linear_examples():
    fit = fit_linear({1: 3, 2: 5, 3: 7})
    assert (fit.d, fit.e, fit.onset) == (2, -1, 1)
    assert fit.intercept == 1
    fit = fit_linear({1: 0, 2: 2, 3: 4})
    assert (fit.d, fit.e, fit.onset) == (2, 2, 1)
    fit = fit_linear({1: 5, 2: 6, 3: 8, 4: 10})
    assert (fit.d, fit.onset) == (2, 2)


def test_fit_linear_validation():
    with pytest.raises(ValueError, match="consecutive"):
        fit_linear({1: 1, 3: 3})
    with pytest.raises(ValueError, match="slope"):
        fit_linear({1: 2, 2: 4, 3: 6}, expected_slope=3)
    assert fit_linear({1: 5}) is None
    assert fit_linear({1: 2, 2: 4, 3: 6}, expected_slope=2).d == 2


def test_verify_theorems_c4():
    report = verify_theorems(cycle(4), s_max=6)
    assert report.passed
    assert report.reg_fit.d == 2 and report.reg_fit.intercept == 1
    assert report.reg_fit.onset == 1
    assert report.threshold_reg == 5 and report.threshold_bipartite == 6
    names = {c.name for c in report.checks}
    assert "reg_onset_within_threshold" in names
    assert "bipartite_onset" in names
    assert report.ai_fits[2].d == 2 and report.ai_fits[2].e == 2


def test_verify_theorems_single_edge():
    report = verify_theorems(Hypergraph(2, [[1, 2]]), s_max=4)
    assert report.passed
    assert report.reg_fit.d == 1 and report.reg_fit.intercept == 0


def test_verify_theorems_path3():
    report = verify_theorems(path(3), s_max=5)
    assert report.passed
    assert report.reg_fit.d == 2 == report.d_of_j
    assert report.reg_fit.intercept == 0
    assert report.dim_quotient - report.d_of_j + 1 == 0


def test_verify_theorems_rejects_non_tu():
    with pytest.raises(ValueError, match="unimodular"):
        verify_theorems(cycle(5))


def test_method_disagreement_reporting():
    # sanity: 'both' on a real input never raises
    tab = ai_table(cycle(4), range(1, 3), method="both", name="c4")
    assert tab.value(2, 2) == 2
    with pytest.raises(MethodDisagreement):
        raise MethodDisagreement([(2, 1, 0, 1)])
