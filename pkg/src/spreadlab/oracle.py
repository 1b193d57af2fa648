"""Ground-truth optimal spreads by exhaustive search.

Two admissible classes: every bijection of m values onto the cells
(full mode), or only fully monotonic arrangements (monotone mode, valid
for the line-spread objective on completely filled boxes because any
full arrangement can be made monotonic without increasing its worst
line spread).  Monotone arrangements are enumerated as standard
fillings: values placed in increasing order, each at a cell whose
lower neighbors are all filled, which is exponentially sparser than m!.

Search is depth-first with branch-and-bound: the running worst spread
only grows as values are placed in increasing order, so a partial
assignment already at the incumbent can be cut.  Budgets are node-count
ceilings; exceeding one raises instead of silently truncating.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .core import Arrangement, Shape, UnsupportedInputError, smalls_sequence
from .herringbone import herringbone_min

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "SPREADLAB_BUDGET"

FULL = "full"
MONOTONE = "monotone"


class BudgetExceededError(RuntimeError):
    """Search would need (or has spent) more nodes than allowed."""

    def __init__(self, message: str, estimate: int | None = None):
        super().__init__(message)
        self.estimate = estimate


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class SearchConfig:
    """What to optimize and how hard we are allowed to try."""

    shape: Shape
    m: int | None = None  # values to place; defaults to a full box
    l: int = 1  # slice dimension of the objective
    mode: str = FULL
    prune_bound: int | None = None  # incumbent seed for branch-and-bound
    budget: int | None = None  # node ceiling; None -> env or default

    def __post_init__(self):
        if self.mode not in (FULL, MONOTONE):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 1 <= self.l <= self.shape.k:
            raise ValueError(f"l={self.l} out of range 1..{self.shape.k}")
        count = self.shape.cell_count
        if self.m is not None and not 1 <= self.m <= count:
            raise ValueError(f"m={self.m} out of range 1..{count}")
        if self.mode == MONOTONE and self.m not in (None, count):
            raise UnsupportedInputError("monotone mode needs a completely filled box")

    @property
    def values(self) -> int:
        return self.shape.cell_count if self.m is None else self.m

    @property
    def node_budget(self) -> int:
        return self.budget if self.budget is not None else default_budget()


def _slices_by_cell(shape: Shape, l: int):
    """(number of slices, per-cell list of slice ids) for the l-objective."""
    sizes = shape.sizes
    k = shape.k
    slice_ids: list[list[int]] = [[] for _ in range(shape.cell_count)]
    next_id = 0
    for free in itertools.combinations(range(k), l):
        fixed_dims = [d for d in range(k) if d not in free]
        base: dict[tuple[int, ...], int] = {}
        for idx, cell in enumerate(shape.cells()):
            key = tuple(cell[d] for d in fixed_dims)
            sid = base.get(key)
            if sid is None:
                sid = next_id
                base[key] = sid
                next_id += 1
            slice_ids[idx].append(sid)
    return next_id, slice_ids


def _estimate_full(count: int, m: int) -> int:
    est = 1
    for i in range(m):
        est *= count - i
        if est > 10**18:
            break
    return est


def brute_force_optimal(cfg: SearchConfig) -> tuple[int, Arrangement]:
    """Exact minimum worst l-slice spread over the admissible class.

    Returns the optimal value and the lexicographically least optimal
    arrangement (cells compared in lexicographic order, values placed
    ascending).  Raises BudgetExceededError rather than truncating.
    """
    shape = cfg.shape
    count = shape.cell_count
    m = cfg.values
    budget = cfg.node_budget

    if cfg.mode == FULL:
        estimate = _estimate_full(count, m)
        if estimate > budget:
            raise BudgetExceededError(
                f"full enumeration needs about {estimate} nodes, budget {budget}",
                estimate=estimate,
            )

    n_slices, slice_ids = _slices_by_cell(shape, cfg.l)
    cells = list(shape.cells())
    lower_neighbors: list[list[int]] = []
    index_of = {cell: i for i, cell in enumerate(cells)}
    for cell in cells:
        nbrs = []
        for d in range(shape.k):
            if cell[d] > 0:
                prev = list(cell)
                prev[d] -= 1
                nbrs.append(index_of[tuple(prev)])
        lower_neighbors.append(nbrs)

    seed = cfg.prune_bound
    best_value = seed + 1 if seed is not None else m  # spread < m always
    best_order: list[int] | None = None
    slice_min = [-1] * n_slices
    filled = [False] * count
    placed_at: list[int] = []
    nodes = 0
    monotone = cfg.mode == MONOTONE

    def candidates() -> list[int]:
        if not monotone:
            return [i for i in range(count) if not filled[i]]
        return [
            i
            for i in range(count)
            if not filled[i] and all(filled[j] for j in lower_neighbors[i])
        ]

    def dfs(value: int, worst: int):
        nonlocal best_value, best_order, nodes
        if value == m:
            if worst < best_value:
                best_value = worst
                best_order = placed_at.copy()
            return
        for idx in candidates():
            new_worst = worst
            for sid in slice_ids[idx]:
                if slice_min[sid] >= 0:
                    spread = value - slice_min[sid]
                    if spread > new_worst:
                        new_worst = spread
            if new_worst >= best_value:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError(
                    f"node budget {budget} exhausted after {nodes} placements"
                )
            touched = []
            for sid in slice_ids[idx]:
                if slice_min[sid] < 0:
                    slice_min[sid] = value
                    touched.append(sid)
            filled[idx] = True
            placed_at.append(idx)
            dfs(value + 1, new_worst)
            placed_at.pop()
            filled[idx] = False
            for sid in touched:
                slice_min[sid] = -1

    dfs(0, 0)
    if best_order is None:
        raise ValueError(
            "no admissible arrangement beats the prune bound "
            f"{cfg.prune_bound}; raise it or drop it"
        )
    optimum = best_value

    # Second pass: accept ties, first hit is the lexicographically least
    # optimal arrangement under the ascending-value search order.
    best_value = optimum + 1
    best_order = None
    found: list[int] | None = None

    def dfs_canonical(value: int, worst: int) -> bool:
        nonlocal nodes, found
        if value == m:
            found = placed_at.copy()
            return True
        for idx in candidates():
            new_worst = worst
            for sid in slice_ids[idx]:
                if slice_min[sid] >= 0:
                    spread = value - slice_min[sid]
                    if spread > new_worst:
                        new_worst = spread
            if new_worst > optimum:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError(
                    f"node budget {budget} exhausted after {nodes} placements"
                )
            touched = []
            for sid in slice_ids[idx]:
                if slice_min[sid] < 0:
                    slice_min[sid] = value
                    touched.append(sid)
            filled[idx] = True
            placed_at.append(idx)
            done = dfs_canonical(value + 1, new_worst)
            placed_at.pop()
            filled[idx] = False
            for sid in touched:
                slice_min[sid] = -1
            if done:
                return True
        return False

    dfs_canonical(0, 0)
    assert found is not None
    witness = Arrangement.from_value_order(shape, [cells[i] for i in found])
    return optimum, witness


def verify_smalls_dominance(n: int, k: int, l: int = 1, budget: int | None = None) -> bool:
    """Check the herringbone's smalls list dominates every arrangement's.

    Enumerates all (n^k)! full arrangements and compares the ascending
    per-slice-minimum lists elementwise.  Small instances only; guarded
    by the node budget.
    """
    shape = Shape((n,) * k)
    count = shape.cell_count
    limit = budget if budget is not None else default_budget()
    estimate = _estimate_full(count, count)
    if estimate > limit:
        raise BudgetExceededError(
            f"dominance check needs {estimate} arrangements, budget {limit}",
            estimate=estimate,
        )

    reference = smalls_sequence(herringbone_min(shape), l)
    _, slice_ids = _slices_by_cell(shape, l)
    n_slices = max(max(ids) for ids in slice_ids) + 1
    members: list[list[int]] = [[] for _ in range(n_slices)]
    for idx, ids in enumerate(slice_ids):
        for sid in ids:
            members[sid].append(idx)

    for perm in itertools.permutations(range(count)):
        mins = sorted(min(perm[i] for i in cells) for cells in members)
        for ref_j, got_j in zip(reference, mins):
            if ref_j < got_j:
                return False
    return True
