from fractions import Fraction

import pytest

from lhg.analysis import (
    check_thm3,
    check_twzz,
    construction_lower_bound,
    double_count_identity,
    grs_lower_bound,
    grs_upper_bound,
    is_site,
    lemma1_reports,
    lemma1_sites,
    lemma1_verify,
)
from lhg.constructions import crown_free_construction, grs_construction
from lhg.core import LinearHypergraph

from conftest import acceptance_hosts


def test_grs_bounds():
    assert grs_lower_bound(7) == 6
    assert grs_lower_bound(9) == 7
    assert grs_lower_bound(10) == 9
    assert grs_lower_bound(8) == 6
    with pytest.raises(ValueError):
        grs_lower_bound(2)
    assert grs_upper_bound(7) == 14 and grs_upper_bound(0) == 0 and grs_upper_bound(100) == 200
    assert all(grs_lower_bound(n) <= grs_upper_bound(n) for n in range(3, 500))


def test_construction_lower_bound():
    assert construction_lower_bound(4, 13).value == 12
    assert construction_lower_bound(3, 7).value == 6 == grs_lower_bound(7)
    assert construction_lower_bound(5, 21).value == 20
    assert construction_lower_bound(5, 21).constructive
    assert not construction_lower_bound(7, 50).constructive
    with pytest.raises(ValueError):
        construction_lower_bound(4, 3)


def test_twzz_examples():
    rep = check_twzz(grs_construction(1))
    assert sorted(grs_construction(1).degrees(), reverse=True) == [3, 3, 3, 3, 2, 2, 2]
    assert (rep.s, rep.bound_value, rep.satisfied, rep.free) == (0, Fraction(21, 2), True, True)
    rep = check_twzz(grs_construction(3))
    assert (rep.n, rep.s, rep.bound_value, rep.edge_count) == (15, 3, 18, 18)
    assert rep.satisfied and not rep.falsified
    rep = check_twzz(LinearHypergraph(5, 3))
    assert (rep.s, rep.bound_value, rep.satisfied) == (0, Fraction(15, 2), True)
    with pytest.raises(ValueError):
        check_twzz(crown_free_construction(4, 1))


def test_thm3_examples():
    rep = check_thm3(crown_free_construction(4, 4))
    assert (rep.n, rep.s, rep.bound_value, rep.edge_count, rep.satisfied) == (40, 4, 96, 48, True)
    rep = check_thm3(crown_free_construction(4, 1))
    assert (rep.s, rep.bound_value, rep.edge_count, rep.satisfied) == (0, Fraction(104, 3), 12, True)


def test_thm3_matches_twzz_at_r3():
    graphs = [g for g in acceptance_hosts(seed=11, count=80) if g.r == 3]
    graphs += [grs_construction(m) for m in (1, 2, 3, 4)]
    graphs.append(crown_free_construction(3, 3, apex_edge=True))
    for g in graphs:
        a, b = check_thm3(g), check_twzz(g)
        assert (a.s, a.bound_value, a.satisfied, a.free) == (b.s, b.bound_value, b.satisfied, b.free)


def test_falsification_flag():
    # a non-free graph may exceed the bound; that is not a falsification
    star = LinearHypergraph.from_edges(13, 3, [(0, 2 * i + 1, 2 * i + 2) for i in range(6)])
    rep = check_twzz(star)
    assert rep.s == 1 and rep.satisfied and not rep.falsified


def _hand_site():
    # edge {0,1,2} with degrees 5, 5, 4; every other edge uses fresh vertices
    g = LinearHypergraph(25, 3)
    g.add_edge((0, 1, 2))
    nxt = 3
    for v, extra in ((0, 4), (1, 4), (2, 3)):
        for _ in range(extra):
            g.add_edge((v, nxt, nxt + 1))
            nxt += 2
    return g


def test_lemma_sites():
    assert lemma1_sites(crown_free_construction(3, 1)) == []
    g = _hand_site()
    assert [sum(1 for e in g.edges if v in e) for v in (0, 1, 2)] == [5, 5, 4]
    assert lemma1_sites(g) == [0]
    low = crown_free_construction(4, 2)  # max degree 6 < 9
    assert lemma1_sites(low) == []
    with pytest.raises(ValueError):
        lemma1_verify(low, 0)


def test_lemma_on_extremal_structure():
    g = crown_free_construction(3, 2, apex_edge=True)
    reports = lemma1_reports(g)
    assert len(reports) == 1
    rep = reports[0]
    assert rep.free and rep.ok and not rep.falsified
    assert (rep.S_size, rep.max_degree_in_S, rep.E_S_size) == (11, 5, 13)
    assert set(rep.edge) <= set(range(g.n))


def test_lemma_report_consistency():
    g = _hand_site()
    rep = lemma1_verify(g, 0)
    meeting = {i for i, f in enumerate(g.edges) if set(f) & {0, 1, 2}}
    S = {v for i in meeting for v in g.edges[i]}
    assert {0, 1, 2} <= S and rep.S_size == len(S)
    assert rep.E_S_size >= len(meeting)
    # the hand-built graph is not crown-free, so the failed conclusion is no refutation
    assert rep.free is False and not rep.falsified


def test_double_count():
    dc = double_count_identity(grs_construction(2))
    assert dc.isolated == 0 and dc.lhs == 11 == dc.rhs and dc.equal
    one = LinearHypergraph.from_edges(4, 4, [(0, 1, 2, 3)])
    assert double_count_identity(one).lhs == 4
    empty = double_count_identity(LinearHypergraph(4, 3))
    assert (empty.lhs, empty.rhs, empty.isolated, empty.equal) == (0, 4, 4, False)


def test_double_count_offset_is_isolated_count():
    for g in acceptance_hosts(seed=3, count=60):
        dc = double_count_identity(g)
        assert dc.lhs == dc.rhs - dc.isolated
        assert isinstance(dc.lhs, Fraction)


def test_is_site_uses_sorted_degrees():
    g = _hand_site()
    assert is_site(g, 0)
    assert not is_site(g, 1)
