import math

import pytest

from pdpm.matching import Budget, count_perfect_matchings, find_pdpm
from pdpm.multigraph import MultigraphError
from pdpm.petersen import (
    build_stack,
    check_type_coverage,
    matching_type,
    petersen,
    petersen_matchings,
    stack_report,
    vertex_pairs,
)


def test_petersen_shape():
    g = petersen()
    assert g.n == 10
    assert g.m == 15
    assert g.regularity() == 3
    assert g.mu_max() == 1


def test_six_matchings_pairwise_intersection():
    g = petersen()
    ms = petersen_matchings()  # pair-sets in the fixed labeling
    assert len(ms) == 6
    for m in ms:
        assert len(m) == 5
    for i in range(6):
        for j in range(i + 1, 6):
            assert len(ms[i] & ms[j]) == 1
    # each pair lies in exactly two of the six
    loads = {}
    for m in ms:
        for pair in m:
            loads[pair] = loads.get(pair, 0) + 1
    assert sorted(loads.values()) == [2] * 15
    assert len(loads) == g.m


def test_type_zero_is_the_spoke_matching():
    ms = petersen_matchings()
    spokes = frozenset((i, 5 + i) for i in range(5))
    assert ms[0] == spokes
    # type j > 0 is the unique other matching through spoke j
    for j in range(1, 6):
        assert (j - 1, j + 4) in ms[j]
        assert ms[j] != ms[0]


def test_matching_type():
    from pdpm.matching import enumerate_perfect_matchings

    g = petersen()
    labels = petersen_matchings()
    seen = set()
    for pm in enumerate_perfect_matchings(g):
        t = matching_type(g, pm)
        assert vertex_pairs(g, pm) == labels[t]
        seen.add(t)
    assert seen == set(range(6))
    with pytest.raises(MultigraphError):
        matching_type(g, frozenset(range(5)))  # outer arc ids, not a PM


def test_vertex_pairs_rejects_parallel_instances():
    stack = build_stack((0,))[0]
    dup = [e for e in range(stack.m)
           if stack.endpoints(e) == (0, 5)]
    assert len(dup) == 2
    with pytest.raises(MultigraphError):
        vertex_pairs(stack, dup)


def test_build_stack_shapes():
    g, prov = build_stack(())
    assert g.n == 10 and g.m == 15
    g, prov = build_stack((0, 1, 2))
    assert g.n == 10
    assert g.m == 30
    assert g.regularity() == 6
    prov.check_total(g)
    tags = {tag for tag, _ in prov.edges.values()}
    assert tags == {"base", "type0", "type1", "type2"}
    with pytest.raises(MultigraphError):
        build_stack((6,))


# frozen perfect-matching counts for the stacks the suite leans on,
# cross-checked against the per-pair multiplicity product formula
_PM_COUNTS = {
    (): 6,
    (5,): 42,
    (0, 0): 258,
    (0, 1, 2): 240,
    (0, 1, 2, 3): 464,
    (0, 0, 0): 1044,
}


def _formula_count(types) -> int:
    """Sum over the six base matchings of the product of multiplicities."""
    stack = build_stack(types)[0]
    total = 0
    for m in petersen_matchings():
        prod = 1
        for u, v in m:
            prod *= stack.mu(u, v)
        total += prod
    return total


@pytest.mark.parametrize("types", sorted(_PM_COUNTS))
def test_stack_pm_counts_frozen_and_formula(types):
    stack = build_stack(types)[0]
    assert count_perfect_matchings(stack) == _PM_COUNTS[types]
    assert _formula_count(types) == _PM_COUNTS[types]


def test_type_coverage_small_cases():
    rep = check_type_coverage(())
    assert rep.verified
    assert rep.pm_count == 6
    rep = check_type_coverage((0,))
    assert rep.verified
    assert rep.status == "verified"
    rep = check_type_coverage((2, 4))
    assert rep.verified
    assert rep.counterexample is None
    assert rep.nodes > 0


def test_type_coverage_budget():
    rep = check_type_coverage((0, 1), budget=Budget(max_nodes=1))
    assert rep.status == "budget"
    assert not rep.verified


def test_stack_report_single():
    rep = stack_report((0,))
    assert rep.r == 4
    assert rep.mu_max == 2
    assert rep.multiplicity_ok
    assert rep.regular
    assert rep.edge_connectivity == 4
    assert rep.class_label == 2
    assert rep.verified


def test_stack_report_multiplicity_gate():
    # stacking the same matching twice pushes mu to 3 > floor(5/2)
    rep = stack_report((0, 0))
    assert rep.r == 5
    assert rep.mu_max == 3
    assert not rep.multiplicity_ok
    assert rep.regular is None
    assert not rep.verified


def test_stack_is_class_two():
    stack = build_stack((0,))[0]
    assert find_pdpm(stack, 4).status == "none"
    # one more disjoint matching than the stack multiset is impossible
    assert find_pdpm(stack, 2).found
