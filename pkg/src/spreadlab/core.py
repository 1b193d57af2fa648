"""Arrangements of integers in k-dimensional matrices and their spread.

An arrangement places the values 0..m-1 into distinct cells of a
k-dimensional box.  The quantities of interest are per-slice spreads
(max minus min value within an axis-aligned submatrix), the sorted
lists of per-slice minima ("smalls") and maxima ("bigs"), and the
pairing lower bound derived from two such lists.

Dimensions are 0-indexed throughout, cells are coordinate tuples, and
empty grid cells are stored as -1.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

import numpy as np

# Guard for total cell counts: anything near this is unusable anyway and
# larger products would silently wrap in the int64 grids we allocate.
MAX_CELLS = 2**62

EMPTY = -1


class ShapeMismatchError(ValueError):
    """A cell, slice, or arrangement does not fit the expected shape."""


class UnsupportedInputError(ValueError):
    """Input is structurally valid but outside an operation's domain."""


@dataclass(frozen=True)
class Shape:
    """Box geometry: per-dimension extents ``sizes``, dimension count ``k``."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(n) for n in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if len(sizes) < 1:
            raise ShapeMismatchError("shape needs at least one dimension")
        if any(n < 1 for n in sizes):
            raise ShapeMismatchError(f"every extent must be >= 1, got {sizes}")
        total = 1
        for n in sizes:
            total *= n
            if total > MAX_CELLS:
                raise ShapeMismatchError(
                    f"cell count {'x'.join(map(str, sizes))} exceeds guard {MAX_CELLS}"
                )

    @property
    def k(self) -> int:
        return len(self.sizes)

    @property
    def cell_count(self) -> int:
        total = 1
        for n in self.sizes:
            total *= n
        return total

    @property
    def is_cubic(self) -> bool:
        return len(set(self.sizes)) == 1

    def contains(self, cell: tuple[int, ...]) -> bool:
        return len(cell) == self.k and all(
            0 <= c < n for c, n in zip(cell, self.sizes)
        )

    def cells(self):
        """Iterate all cells in lexicographic order."""
        return itertools.product(*(range(n) for n in self.sizes))

    def __str__(self) -> str:
        return "x".join(map(str, self.sizes))


def check_cell(shape: Shape, cell: tuple[int, ...]) -> tuple[int, ...]:
    cell = tuple(int(c) for c in cell)
    if not shape.contains(cell):
        raise ShapeMismatchError(f"cell {cell} outside shape {shape}")
    return cell


@dataclass(frozen=True)
class SliceSpec:
    """An l-dimensional slice: ``free_dims`` vary, ``fixed`` pins the rest.

    ``fixed`` is stored as a sorted tuple of (dimension, coordinate) pairs
    so specs are hashable and order-independent.
    """

    free_dims: tuple[int, ...]
    fixed: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "free_dims", tuple(sorted(self.free_dims)))
        object.__setattr__(self, "fixed", tuple(sorted(self.fixed)))

    @classmethod
    def of(cls, free_dims, fixed: dict[int, int]) -> "SliceSpec":
        return cls(tuple(free_dims), tuple(fixed.items()))

    @property
    def l(self) -> int:
        return len(self.free_dims)

    @property
    def fixed_map(self) -> dict[int, int]:
        return dict(self.fixed)

    def validate(self, shape: Shape) -> None:
        dims = set(self.free_dims) | {d for d, _ in self.fixed}
        if sorted(dims) != list(range(shape.k)) or len(self.free_dims) + len(
            self.fixed
        ) != shape.k:
            raise ShapeMismatchError(
                f"slice dims {self.free_dims}+{self.fixed} do not partition 0..{shape.k - 1}"
            )
        if not 1 <= self.l <= shape.k:
            raise ShapeMismatchError(f"slice dimension l={self.l} out of range")
        for d, c in self.fixed:
            if not 0 <= c < shape.sizes[d]:
                raise ShapeMismatchError(
                    f"fixed coordinate {c} out of range in dimension {d}"
                )

    def index_expr(self, shape: Shape):
        """numpy index selecting the slice from a grid of this shape."""
        idx: list = [slice(None)] * shape.k
        for d, c in self.fixed:
            idx[d] = c
        return tuple(idx)

    def __str__(self) -> str:
        fixed = self.fixed_map
        parts = ["*" if d in self.free_dims else str(fixed[d]) for d in
                 range(len(self.free_dims) + len(self.fixed))]
        return "(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class SpreadReport:
    """Worst l-slice spread, the slice achieving it, optional per-slice map."""

    l: int
    max_spread: int
    witness: SliceSpec
    per_slice: dict[SliceSpec, int] | None = None


class Arrangement:
    """A partial bijection from the cells of a box onto {0, ..., m-1}.

    Backed by an int64 grid (EMPTY marks unfilled cells) plus the inverse
    list mapping each value to its cell.  Instances are treated as
    immutable values; every operation returns a new arrangement.
    """

    def __init__(self, shape: Shape, grid: np.ndarray, inverse: list[tuple[int, ...]]):
        self.shape = shape
        self.grid = grid
        self.inverse = inverse
        grid.setflags(write=False)

    # -- construction ------------------------------------------------

    @classmethod
    def from_placement(cls, shape: Shape, placement: dict[tuple[int, ...], int]) -> "Arrangement":
        grid = np.full(shape.sizes, EMPTY, dtype=np.int64)
        m = len(placement)
        inverse: list[tuple[int, ...] | None] = [None] * m
        for cell, value in placement.items():
            cell = check_cell(shape, cell)
            value = int(value)
            if not 0 <= value < m:
                raise ShapeMismatchError(
                    f"value {value} outside 0..{m - 1}; placement must cover exactly 0..m-1"
                )
            if grid[cell] != EMPTY:
                raise ShapeMismatchError(f"cell {cell} assigned twice")
            if inverse[value] is not None:
                raise ShapeMismatchError(f"value {value} assigned twice")
            grid[cell] = value
            inverse[value] = cell
        return cls(shape, grid, inverse)  # type: ignore[arg-type]

    @classmethod
    def from_grid(cls, grid_like) -> "Arrangement":
        grid = np.asarray(grid_like, dtype=np.int64)
        shape = Shape(grid.shape)
        values = grid[grid != EMPTY]
        m = values.size
        if m and (sorted(values.tolist()) != list(range(m))):
            raise ShapeMismatchError("grid values must be exactly 0..m-1")
        inverse: list[tuple[int, ...]] = [()] * m
        for cell in np.argwhere(grid != EMPTY):
            c = tuple(int(x) for x in cell)
            inverse[int(grid[c])] = c
        return cls(shape, grid.copy(), inverse)

    @classmethod
    def from_value_order(cls, shape: Shape, cells_in_order) -> "Arrangement":
        """Place 0, 1, 2, ... at the given cells, in the given order."""
        grid = np.full(shape.sizes, EMPTY, dtype=np.int64)
        inverse = []
        for value, cell in enumerate(cells_in_order):
            cell = check_cell(shape, cell)
            if grid[cell] != EMPTY:
                raise ShapeMismatchError(f"cell {cell} assigned twice")
            grid[cell] = value
            inverse.append(cell)
        return cls(shape, grid, inverse)

    # -- basic queries -----------------------------------------------

    @property
    def m(self) -> int:
        return len(self.inverse)

    @property
    def is_full(self) -> bool:
        return self.m == self.shape.cell_count

    def value_at(self, cell: tuple[int, ...]) -> int | None:
        v = int(self.grid[check_cell(self.shape, cell)])
        return None if v == EMPTY else v

    def cell_of(self, value: int) -> tuple[int, ...]:
        if not 0 <= value < self.m:
            raise ShapeMismatchError(f"value {value} not placed (m={self.m})")
        return self.inverse[value]

    def complemented(self) -> "Arrangement":
        """Map every value v to m-1-v (cells unchanged)."""
        grid = self.grid.copy()
        mask = grid != EMPTY
        grid[mask] = self.m - 1 - grid[mask]
        return Arrangement(self.shape, grid, list(reversed(self.inverse)))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Arrangement)
            and self.shape == other.shape
            and np.array_equal(self.grid, other.grid)
        )

    def __hash__(self):
        return hash((self.shape, self.grid.tobytes()))

    def __repr__(self) -> str:
        return f"Arrangement(shape={self.shape}, m={self.m})"

    # -- serialization (the interchange format) ----------------------

    def to_json_dict(self) -> dict:
        return {
            "sizes": list(self.shape.sizes),
            "m": self.m,
            "cells": [
                {"coords": list(cell), "value": value}
                for value, cell in enumerate(self.inverse)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Arrangement":
        shape = Shape(tuple(doc["sizes"]))
        cells = doc["cells"]
        if len(cells) != doc.get("m", len(cells)):
            raise ShapeMismatchError("m does not match the number of listed cells")
        placement = {tuple(entry["coords"]): entry["value"] for entry in cells}
        if len(placement) != len(cells):
            raise ShapeMismatchError("duplicate coords in cell list")
        return cls.from_placement(shape, placement)

    @classmethod
    def from_json(cls, text: str) -> "Arrangement":
        return cls.from_json_dict(json.loads(text))


# -- slice enumeration and spreads -----------------------------------


def iter_slices(shape: Shape, l: int):
    """All l-dimensional slices, free-dim combinations then fixed coords,
    both in lexicographic order."""
    if not 1 <= l <= shape.k:
        raise ShapeMismatchError(f"l={l} out of range 1..{shape.k}")
    for free in itertools.combinations(range(shape.k), l):
        fixed_dims = [d for d in range(shape.k) if d not in free]
        for coords in itertools.product(*(range(shape.sizes[d]) for d in fixed_dims)):
            yield SliceSpec(free, tuple(zip(fixed_dims, coords)))


def slice_values(a: Arrangement, s: SliceSpec) -> np.ndarray:
    """Placed values inside the slice, unordered."""
    s.validate(a.shape)
    sub = a.grid[s.index_expr(a.shape)]
    sub = np.atleast_1d(sub)
    return sub[sub != EMPTY]


def slice_spread(a: Arrangement, s: SliceSpec) -> int | None:
    """Max minus min of placed values in the slice; None when empty."""
    vals = slice_values(a, s)
    if vals.size == 0:
        return None
    return int(vals.max() - vals.min())


def _minmax_over_free(a: Arrangement, free: tuple[int, ...]):
    """Per-slice (count, min, max) arrays over all fixed coords for one
    free-dim choice.  Arrays are indexed by the fixed coordinates in
    dimension order."""
    axes = tuple(free)
    counts = (a.grid != EMPTY).sum(axis=axes)
    maxes = a.grid.max(axis=axes)
    sentinel = np.where(a.grid == EMPTY, np.iinfo(np.int64).max, a.grid)
    mins = sentinel.min(axis=axes)
    return counts, mins, maxes


def max_spread(a: Arrangement, l: int, per_slice: bool = False) -> SpreadReport:
    """Worst spread over all nonempty l-slices.

    The witness is deterministic: among maximizers, the lexicographically
    least free-dim combination, then the lexicographically least fixed
    coordinates.  Empty slices are skipped.
    """
    if a.m == 0:
        raise UnsupportedInputError("max_spread of an empty arrangement")
    if not 1 <= l <= a.shape.k:
        raise ShapeMismatchError(f"l={l} out of range 1..{a.shape.k}")
    best = -1
    witness = None
    detail: dict[SliceSpec, int] | None = {} if per_slice else None
    for free in itertools.combinations(range(a.shape.k), l):
        fixed_dims = [d for d in range(a.shape.k) if d not in free]
        counts, mins, maxes = _minmax_over_free(a, free)
        spreads = maxes - mins
        flat_counts = np.asarray(counts).reshape(-1)
        flat_spreads = np.asarray(spreads).reshape(-1)
        if detail is not None or flat_counts.min() == 0:
            shape_fixed = [a.shape.sizes[d] for d in fixed_dims]
            for i, coords in enumerate(itertools.product(*(range(n) for n in shape_fixed))):
                if flat_counts[i] == 0:
                    continue
                sp = int(flat_spreads[i])
                if detail is not None:
                    detail[SliceSpec(free, tuple(zip(fixed_dims, coords)))] = sp
                if sp > best:
                    best = sp
                    witness = SliceSpec(free, tuple(zip(fixed_dims, coords)))
        else:
            idx = int(np.argmax(flat_spreads))
            sp = int(flat_spreads[idx])
            if sp > best:
                best = sp
                coords = np.unravel_index(idx, spreads.shape) if spreads.ndim else ()
                witness = SliceSpec(
                    free, tuple(zip(fixed_dims, (int(c) for c in coords)))
                )
    if witness is None:
        raise UnsupportedInputError("no nonempty slice found")
    return SpreadReport(l=l, max_spread=best, witness=witness, per_slice=detail)


def _extrema_list(a: Arrangement, l: int, which: str) -> list[int]:
    if a.m == 0:
        raise UnsupportedInputError("sequence of an empty arrangement")
    out: list[int] = []
    for free in itertools.combinations(range(a.shape.k), l):
        counts, mins, maxes = _minmax_over_free(a, free)
        sel = counts.reshape(-1) > 0
        src = (mins if which == "min" else maxes).reshape(-1)[sel]
        out.extend(int(v) for v in src)
    out.sort()
    return out


def smalls_sequence(a: Arrangement, l: int = 1) -> list[int]:
    """Ascending list of per-slice minima, one entry per nonempty l-slice.

    A value minimal in several slices appears once per slice.
    """
    if not 1 <= l <= a.shape.k:
        raise ShapeMismatchError(f"l={l} out of range 1..{a.shape.k}")
    return _extrema_list(a, l, "min")


def bigs_sequence(a: Arrangement, l: int = 1) -> list[int]:
    """Ascending list of per-slice maxima; mirror of smalls_sequence."""
    if not 1 <= l <= a.shape.k:
        raise ShapeMismatchError(f"l={l} out of range 1..{a.shape.k}")
    return _extrema_list(a, l, "max")


def pairing_bound(smalls, bigs) -> int:
    """max_j (bigs[j] - smalls[j]) over the two ascending sequences.

    Pairing the j-th smallest entries against each other is the optimal
    one-to-one matching (the classic ski-instructor argument), so this is
    a valid spread lower bound for any arrangement whose smalls list is
    elementwise <= ``smalls`` and bigs list elementwise >= ``bigs``.
    """
    smalls = list(smalls)
    bigs = list(bigs)
    if len(smalls) != len(bigs):
        raise ValueError(f"length mismatch: {len(smalls)} smalls vs {len(bigs)} bigs")
    if not smalls:
        raise ValueError("empty sequences")
    if any(x > y for x, y in zip(smalls, smalls[1:])) or any(
        x > y for x, y in zip(bigs, bigs[1:])
    ):
        raise ValueError("sequences must be ascending")
    return max(b - s for s, b in zip(smalls, bigs))


# -- monotonic arrangements ------------------------------------------


def is_monotonic(a: Arrangement) -> bool:
    """True iff values strictly increase along every line, every dimension.

    Defined for completely filled arrangements only.
    """
    if not a.is_full:
        raise UnsupportedInputError("is_monotonic requires a completely filled arrangement")
    for axis in range(a.shape.k):
        if a.shape.sizes[axis] > 1 and not (np.diff(a.grid, axis=axis) > 0).all():
            return False
    return True


def make_monotonic(a: Arrangement) -> Arrangement:
    """Sort values ascending along every line, one dimension at a time,
    innermost dimension first (rows before columns in 2-D).

    Each pass preserves the monotonicity established by earlier passes,
    so the result is fully monotonic, and in-line sorts never increase
    the worst line spread.
    """
    if not a.is_full:
        raise UnsupportedInputError("make_monotonic requires a completely filled arrangement")
    grid = a.grid
    for axis in reversed(range(a.shape.k)):
        grid = np.sort(grid, axis=axis)
    return Arrangement.from_grid(grid)
