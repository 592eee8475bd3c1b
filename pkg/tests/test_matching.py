import pytest

from oracles import brute_pdpm_exists, brute_perfect_matchings
from pdpm.matching import (
    Budget,
    classify,
    count_perfect_matchings,
    enumerate_perfect_matchings,
    find_pdpm,
    max_pdpm,
    parity_check,
)
from pdpm.multigraph import (
    Multigraph,
    MultigraphError,
    complete_graph,
    cycle_graph,
    theta_graph,
)
from pdpm.petersen import petersen


def test_enumeration_counts():
    assert count_perfect_matchings(complete_graph(4)) == 3
    assert count_perfect_matchings(complete_graph(6)) == 15
    assert count_perfect_matchings(cycle_graph(6)) == 2
    assert count_perfect_matchings(petersen()) == 6
    assert count_perfect_matchings(theta_graph(5)) == 5
    assert count_perfect_matchings(cycle_graph(5)) == 0


def test_enumeration_matches_oracle():
    for g in (complete_graph(6), petersen(), theta_graph(3)):
        ours = set(enumerate_perfect_matchings(g))
        brute = set(brute_perfect_matchings(g.n, g.pairs()))
        assert ours == brute


def test_find_pdpm_basics():
    res = find_pdpm(complete_graph(4), 3)
    assert res.found
    assert res.witness.k == 3
    union = set()
    for m in res.witness.matchings:
        assert len(m) == 2
        assert not union & m
        union |= m
    assert union == set(range(6))

    assert find_pdpm(petersen(), 1).found
    none = find_pdpm(petersen(), 2)
    assert none.status == "none"
    assert none.witness is None
    assert none.nodes > 0


def test_find_pdpm_odd_and_empty():
    assert find_pdpm(cycle_graph(5), 1).status == "none"
    res = find_pdpm(Multigraph(0), 2)
    assert res.found
    assert res.witness.matchings == (frozenset(), frozenset())
    with pytest.raises(MultigraphError):
        find_pdpm(complete_graph(4), 0)


def test_contain_and_avoid():
    g = complete_graph(6)
    res = find_pdpm(g, 2, contain=(0,))
    assert res.found
    assert any(0 in m for m in res.witness.matchings)

    res = find_pdpm(g, 3, avoid=(0, 1))
    assert res.found
    assert all(not {0, 1} & m for m in res.witness.matchings)

    # avoiding a whole vertex star kills every perfect matching
    star = tuple(g.incident(0))
    assert find_pdpm(g, 1, avoid=star).status == "none"


def test_contain_slots():
    g = complete_graph(6)
    res = find_pdpm(g, 3, contain_slots={0: 2, 7: 0})
    assert res.found
    assert 0 in res.witness.matchings[2]
    assert 7 in res.witness.matchings[0]
    # contradictory slots are a caller error, rejected before the search
    e1, e2 = g.incident(0)[0], g.incident(0)[1]
    with pytest.raises(MultigraphError):
        find_pdpm(g, 2, contain_slots={e1: 0, e2: 0})


def test_budget_statuses():
    g = petersen()
    res = find_pdpm(g, 2, budget=Budget(max_nodes=1))
    assert res.status == "budget"
    assert res.nodes <= 1
    full = find_pdpm(g, 2)
    again = find_pdpm(g, 2)
    assert full.nodes == again.nodes  # deterministic node counts
    # zero is a real cap, not "unlimited"
    res = find_pdpm(g, 1, budget=Budget(max_nodes=0))
    assert res.status == "budget"
    assert res.nodes == 0


def test_max_pdpm():
    res = max_pdpm(petersen())
    assert res.k == 1
    assert res.status == "exact"
    res = max_pdpm(complete_graph(4))
    assert res.k == 3
    assert res.witness.k == 3
    res = max_pdpm(theta_graph(5))
    assert res.k == 5


def test_classify():
    verdict = classify(petersen())
    assert verdict.label == 2
    assert verdict.r == 3
    verdict = classify(complete_graph(6))
    assert verdict.label == 1
    assert verdict.witness.k == 5
    with pytest.raises(MultigraphError):
        classify(Multigraph(3, [(0, 1), (1, 2)]))  # not regular


def test_classify_budget_none():
    verdict = classify(petersen(), budget=Budget(max_nodes=1))
    assert verdict.label is None


def test_parity_check():
    g = petersen()
    m = enumerate_perfect_matchings(g)[0]
    # a perfect matching crosses every odd set an odd number of times
    for X in ({0}, {0, 1, 2}, {0, 2, 4, 6, 8}):
        assert parity_check(g, m, X)


def test_none_results_match_oracle():
    gs = [petersen(), cycle_graph(6), complete_graph(6), theta_graph(3)]
    for g in gs:
        r = int(g.degrees().max())
        for k in range(1, r + 1):
            ours = find_pdpm(g, k).found
            assert ours == brute_pdpm_exists(g.n, g.pairs(), k), (g, k)
