import pytest

from spreadlab.bounds import merge_upper_bound
from spreadlab.core import Shape, is_monotonic, max_spread
from spreadlab.herringbone import herringbone_min
from spreadlab.merge import (
    MergeLayout,
    herringbone_merge,
    merge_spread_check,
    multi_failure_check,
)

# Even-n cube instances where the constructed spread is ground truth and
# the displayed closed form undershoots it; see bounds.KNOWN_DISPLAY_GAPS.
EVEN_N_GAPS = {
    (4, 3): (43, 40),
    (6, 3): (149, 142),
    (2, 4): (11, 10),
    (4, 4): (199, 192),
}


def test_worked_examples():
    assert max_spread(herringbone_merge(2, 2), 1).max_spread == 2
    assert max_spread(herringbone_merge(3, 2), 1).max_spread == 5
    assert max_spread(herringbone_merge(2, 3), 1).max_spread == 4


def test_merge_3x2_grid():
    a = herringbone_merge(3, 2)
    assert a.grid.tolist() == [[0, 2, 5], [1, 3, 6], [4, 7, 8]]


def test_spread_check_examples():
    assert merge_spread_check(3, 2) == (5, 5, True)
    assert merge_spread_check(1, 3) == (0, 0, True)
    assert merge_spread_check(3, 3) == (17, 17, True)


def test_bijection_everywhere():
    for n, k in [(1, 1), (2, 2), (3, 2), (4, 2), (2, 3), (3, 3), (4, 3), (2, 4)]:
        a = herringbone_merge(n, k)
        assert a.is_full
        assert sorted(a.grid.reshape(-1).tolist()) == list(range(n**k))


def test_merge_is_monotonic():
    for n, k in [(2, 2), (3, 2), (4, 2), (3, 3), (2, 3)]:
        assert is_monotonic(herringbone_merge(n, k))


def test_layout_half_partition():
    layout = MergeLayout(3, 2)
    assert layout.threshold == 2
    shape = Shape((3, 3))
    lower = [c for c in shape.cells() if layout.in_lower_half(c)]
    assert len(lower) == 6
    with pytest.raises(ValueError):
        MergeLayout(0, 2)


def test_formula_matches_measurement_where_claimed():
    # odd n everywhere; plus the k <= 2 and hypercube even cases
    for n, k in [(3, 2), (5, 2), (7, 2), (3, 3), (5, 3), (7, 3), (3, 4)] + [
        (2, 2), (4, 2), (6, 2), (8, 2), (2, 3), (1, 2)
    ]:
        measured, formula, equal = merge_spread_check(n, k)
        assert equal, (n, k, measured, formula)


def test_even_n_reconciliation_frozen():
    # these mismatches are known; anything new (or newly matching) fails
    for (n, k), (measured, formula) in EVEN_N_GAPS.items():
        got = merge_spread_check(n, k)
        assert got == (measured, formula, False), (
            f"even-n reconciliation drifted at n={n}, k={k}: {got}; "
            "the three-case displayed value is the suspect"
        )


def test_central_line_achieves_the_maximum():
    # non-central lines may tie, but some line with all fixed coordinates
    # in the middle pair always attains the worst spread
    for n, k in [(3, 2), (4, 2), (5, 2), (3, 3), (2, 3)]:
        rep = max_spread(herringbone_merge(n, k), 1, per_slice=True)
        lo, hi = (n - 1) // 2, n // 2
        central_best = max(
            v
            for s, v in rep.per_slice.items()
            if all(c in (lo, hi) for _, c in s.fixed)
        )
        assert central_best == rep.max_spread, (n, k)


def test_first_quadrant_is_renumbered_minima_herringbone():
    for n, k in [(3, 2), (5, 2), (4, 2), (3, 3)]:
        a = herringbone_merge(n, k)
        side = -(-n // 2)
        quadrant = herringbone_min(Shape((side,) * k))
        # values inside the quadrant appear in herringbone order
        import itertools

        cells = sorted(
            itertools.product(range(side), repeat=k), key=lambda c: a.value_at(c)
        )
        expected = sorted(cells, key=lambda c: quadrant.value_at(c))
        assert cells == expected


def test_multi_failure_check_odd_grid():
    for n, k in [(3, 3), (3, 4)]:
        for l in range(1, k):
            measured, formula, equal = multi_failure_check(n, k, l)
            assert equal, (n, k, l, measured, formula)
