import pytest

from leetile import (
    AbelianGroup,
    SearchOptions,
    SearchOutcome,
    brute_force_search,
    check_conditions,
    TilingCandidate,
    enumerate_groups,
    search_all,
    search_group,
)

Z5 = AbelianGroup((5,))
Z13 = AbelianGroup((13,))

NO_REDUCTION = SearchOptions(use_automorphism_reduction=False)

Z5_SOLUTIONS = (((0,), (1,), (4,)), ((0,), (2,), (3,)))
Z13_SOLUTIONS = (
    ((0,), (1,), (5,), (8,), (12,)),
    ((0,), (2,), (3,), (10,), (11,)),
    ((0,), (4,), (6,), (7,), (9,)),
)


def test_z5_unreduced():
    outcome = search_group(Z5, 1, NO_REDUCTION)
    assert outcome.solutions == Z5_SOLUTIONS
    assert outcome.exhausted


def test_z5_reduced():
    outcome = search_group(Z5, 1, SearchOptions(use_automorphism_reduction=True))
    assert outcome.solutions == (Z5_SOLUTIONS[0],)


def test_z13_unreduced():
    outcome = search_group(Z13, 2, NO_REDUCTION)
    assert outcome.solutions == Z13_SOLUTIONS


def test_z13_reduced_single_representative():
    outcome = search_group(Z13, 2, SearchOptions(use_automorphism_reduction=True))
    assert outcome.solutions == (Z13_SOLUTIONS[0],)


def test_solutions_reverify(candidate_n2):
    outcome = search_group(Z13, 2, NO_REDUCTION)
    for sol in outcome.solutions:
        assert check_conditions(TilingCandidate(Z13, 2, sol)).accepted
    assert candidate_n2.arms in outcome.solutions


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pruned_agrees_with_brute_force(n):
    order = 2 * n * n + 2 * n + 1
    for group in enumerate_groups(order):
        pruned = search_group(group, n, NO_REDUCTION)
        assert pruned.solutions == brute_force_search(group, n)


def test_empty_for_n3_through_n5():
    for n in (3, 4, 5):
        outcomes = search_all(n, NO_REDUCTION)
        assert len(outcomes) == len(enumerate_groups(2 * n * n + 2 * n + 1))
        for o in outcomes:
            assert o.exhausted
            assert o.solutions == ()


def test_search_all_n3_covers_both_groups():
    outcomes = search_all(3, NO_REDUCTION)
    assert [o.group.invariant_factors for o in outcomes] == [(25,), (5, 5)]


def test_deterministic_across_partition_counts():
    reference = search_group(Z13, 2, SearchOptions(use_automorphism_reduction=False, worker_partitions=1))
    for k in (2, 3, 5):
        outcome = search_group(
            Z13, 2, SearchOptions(use_automorphism_reduction=False, worker_partitions=k)
        )
        assert outcome.solutions == reference.solutions
        assert outcome.nodes_explored == reference.nodes_explored


def test_deterministic_across_runs():
    a = search_group(Z13, 2, NO_REDUCTION)
    b = search_group(Z13, 2, NO_REDUCTION)
    assert a.nodes_explored == b.nodes_explored
    assert a.solutions == b.solutions


def test_budget_exhaustion_reported():
    full = search_group(Z13, 2, NO_REDUCTION)
    capped = search_group(
        Z13, 2, SearchOptions(use_automorphism_reduction=False, node_budget=3)
    )
    assert not capped.exhausted
    assert capped.nodes_explored <= 3
    assert set(capped.solutions) <= set(full.solutions)
    generous = search_group(
        Z13, 2, SearchOptions(use_automorphism_reduction=False, node_budget=10**6)
    )
    assert generous.exhausted
    assert generous.solutions == full.solutions


def test_budget_required_for_large_n():
    group = enumerate_groups(2 * 7 * 7 + 2 * 7 + 1)[0]
    with pytest.raises(ValueError):
        search_group(group, 7)
    outcome = search_group(group, 7, SearchOptions(node_budget=1000))
    assert not outcome.exhausted


def test_n7_exhausts_with_generous_budget():
    # stretch dimension: the reduced search over Z113 completes quickly
    group = enumerate_groups(2 * 7 * 7 + 2 * 7 + 1)[0]
    outcome = search_group(group, 7, SearchOptions(node_budget=10**7))
    assert outcome.exhausted
    assert outcome.solutions == ()


def test_order_mismatch_rejected():
    with pytest.raises(ValueError):
        search_group(Z5, 2)


def test_options_validation():
    with pytest.raises(ValueError):
        SearchOptions(worker_partitions=0)
    with pytest.raises(ValueError):
        SearchOptions(node_budget=-1)


def test_outcome_round_trip():
    outcome = search_group(Z13, 2, NO_REDUCTION)
    assert SearchOutcome.from_dict(outcome.to_dict()) == outcome
