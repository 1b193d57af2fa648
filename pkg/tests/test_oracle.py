import pytest

from spreadlab.bounds import exact_pairing_lb, merge_upper_bound, theorem1_lower_bound
from spreadlab.core import Shape, is_monotonic, max_spread
from spreadlab.oracle import (
    BudgetExceededError,
    SearchConfig,
    brute_force_optimal,
    verify_smalls_dominance,
)


def test_known_optima():
    assert brute_force_optimal(SearchConfig(Shape((2, 2))))[0] == 2
    assert brute_force_optimal(SearchConfig(Shape((2, 2, 2))))[0] == 4
    assert brute_force_optimal(SearchConfig(Shape((3, 3))))[0] == 5


def test_witness_achieves_value_and_is_lex_least():
    value, witness = brute_force_optimal(SearchConfig(Shape((2, 2))))
    assert max_spread(witness, 1).max_spread == value
    assert witness.grid.tolist() == [[0, 1], [2, 3]]


def test_monotone_matches_full_where_both_run():
    for sizes in [(2, 2), (2, 2, 2)]:
        full, _ = brute_force_optimal(SearchConfig(Shape(sizes), mode="full"))
        mono, w = brute_force_optimal(SearchConfig(Shape(sizes), mode="monotone"))
        assert full == mono
        assert is_monotonic(w)


def test_monotone_4x4_matches_formula():
    value, witness = brute_force_optimal(SearchConfig(Shape((4, 4)), mode="monotone"))
    assert value == merge_upper_bound(4, 2) == 9
    assert max_spread(witness, 1).max_spread == 9


def test_partial_m_supported_in_full_mode():
    value, witness = brute_force_optimal(SearchConfig(Shape((2, 2)), m=2))
    assert value == 0  # two values never share a line
    assert witness.m == 2


def test_prune_bound_tightens_or_errors():
    value, _ = brute_force_optimal(SearchConfig(Shape((2, 2)), prune_bound=3))
    assert value == 2
    with pytest.raises(ValueError):
        brute_force_optimal(SearchConfig(Shape((2, 2)), prune_bound=1))


def test_budget_refusal_upfront():
    with pytest.raises(BudgetExceededError) as err:
        brute_force_optimal(SearchConfig(Shape((4, 4)), mode="full"))
    assert err.value.estimate is not None


def test_budget_refusal_mid_search():
    with pytest.raises(BudgetExceededError):
        brute_force_optimal(SearchConfig(Shape((2, 2, 2)), budget=50))


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("SPREADLAB_BUDGET", "10")
    with pytest.raises(BudgetExceededError):
        brute_force_optimal(SearchConfig(Shape((2, 2, 2))))


def test_monotone_requires_full_box():
    from spreadlab.core import UnsupportedInputError

    with pytest.raises(UnsupportedInputError):
        SearchConfig(Shape((2, 2)), m=3, mode="monotone")


def test_sandwich_on_small_instances():
    for n, k in [(2, 2), (3, 2), (2, 3)]:
        optimum, _ = brute_force_optimal(SearchConfig(Shape((n,) * k)))
        assert theorem1_lower_bound(n, k) <= exact_pairing_lb(n, k, 1)
        assert exact_pairing_lb(n, k, 1) <= optimum <= merge_upper_bound(n, k)


def test_dominance_small():
    assert verify_smalls_dominance(2, 2, 1)


def test_dominance_budget_guard():
    with pytest.raises(BudgetExceededError):
        verify_smalls_dominance(3, 3, 1, budget=1000)
