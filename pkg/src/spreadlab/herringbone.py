"""Herringbone arrangements of completely filled rectangular matrices.

The construction grows the filled region one boundary slice at a time:
among the dimensions not yet exhausted, extend the one whose adjacent
slice has the largest volume (ties broken by a configurable coordinate
order), and fill that slice recursively with the (k-1)-dimensional
herringbone.  The result is fully monotonic and, layer by layer, packs
early values into the smallest possible subcube, which is what makes
its per-line minima sequence extremal.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .core import Arrangement, Shape, UnsupportedInputError, check_cell

MINIMA = "minima"
MAXIMA = "maxima"


@dataclass(frozen=True)
class HerringboneSpec:
    """Shape plus the construction's two degrees of freedom.

    ``coordinate_order`` is the dimension preference used to break
    volume ties while growing (identity by default).  ``orientation``
    selects the minima-facing construction (values grow away from the
    origin) or the maxima-facing one (its mirror image: the value at
    cell c is total-1 minus the minima value at the reversed,
    coordinate-complemented cell).
    """

    shape: Shape
    coordinate_order: tuple[int, ...] | None = None
    orientation: str = MINIMA

    def __post_init__(self):
        if self.coordinate_order is not None:
            order = tuple(self.coordinate_order)
            if sorted(order) != list(range(self.shape.k)):
                raise UnsupportedInputError(
                    f"coordinate_order {order} is not a permutation of 0..{self.shape.k - 1}"
                )
            object.__setattr__(self, "coordinate_order", order)
        if self.orientation not in (MINIMA, MAXIMA):
            raise UnsupportedInputError(f"unknown orientation {self.orientation!r}")


def _cells_in_order(sizes: tuple[int, ...], order: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Cells of the box, listed in construction (= value) order.

    ``order`` ranks dimensions for tie-breaking: earlier dimensions are
    extended first when adjacent slices tie on volume.
    """
    k = len(sizes)
    if k == 0:
        return [()]
    if any(n == 0 for n in sizes):
        return []
    cells: list[tuple[int, ...]] = [(0,) * k]
    extent = [1] * k
    while extent != list(sizes):
        best_dim = -1
        best_vol = -1
        for p in order:
            if extent[p] >= sizes[p]:
                continue
            vol = prod(extent[q] for q in range(k) if q != p)
            if vol > best_vol:
                best_dim, best_vol = p, vol
        p = best_dim
        rest_dims = [q for q in range(k) if q != p]
        rest_sizes = tuple(extent[q] for q in rest_dims)
        rest_order = tuple(sorted(range(k - 1), key=lambda i: order.index(rest_dims[i])))
        for sub in _cells_in_order(rest_sizes, rest_order):
            cell = list(sub)
            cell.insert(p, extent[p])
            cells.append(tuple(cell))
        extent[p] += 1
    return cells


def _count_sum_bounded(extents, budget: int) -> int:
    """|{x : 0 <= x_q < extents[q], sum(x) <= budget}| by a prefix-sum DP."""
    if budget < 0:
        return 0
    counts = [1] + [0] * budget
    for e in extents:
        new = [0] * (budget + 1)
        run = 0
        for s in range(budget + 1):
            run += counts[s]
            if s - e >= 0:
                run -= counts[s - e]
            new[s] = run
        counts = new
    return sum(counts)


def clipped_cells(
    sizes: tuple[int, ...], budget: int, order: tuple[int, ...]
) -> list[tuple[int, ...]]:
    """Herringbone construction order over {x in box : sum(x) <= budget}.

    Same growth rule as the unrestricted construction, but each adjacent
    slice is clipped to the coordinate-sum budget before its volume is
    compared, and clipped-away cells are never placed.
    """
    k = len(sizes)
    if k == 0:
        return [()] if budget >= 0 else []
    if budget < 0 or any(s == 0 for s in sizes):
        return []
    cells: list[tuple[int, ...]] = [(0,) * k]
    extent = [1] * k
    while extent != list(sizes):
        best_dim = -1
        best_vol = -1
        for p in order:
            if extent[p] >= sizes[p]:
                continue
            vol = _count_sum_bounded(
                [extent[q] for q in range(k) if q != p], budget - extent[p]
            )
            if vol > best_vol:
                best_dim, best_vol = p, vol
        p = best_dim
        rest_dims = [q for q in range(k) if q != p]
        rest_sizes = tuple(extent[q] for q in rest_dims)
        rest_order = tuple(sorted(range(k - 1), key=lambda i: order.index(rest_dims[i])))
        for sub in clipped_cells(rest_sizes, budget - extent[p], rest_order):
            cell = list(sub)
            cell.insert(p, extent[p])
            cells.append(tuple(cell))
        extent[p] += 1
    return cells


def herringbone_recursive(spec: HerringboneSpec) -> Arrangement:
    """Build the full herringbone arrangement described by ``spec``."""
    shape = spec.shape
    order = spec.coordinate_order or tuple(range(shape.k))
    if spec.orientation == MINIMA:
        return Arrangement.from_value_order(shape, _cells_in_order(shape.sizes, order))
    if not shape.is_cubic:
        raise UnsupportedInputError("maxima-facing herringbone is defined for cubes only")
    base = Arrangement.from_value_order(shape, _cells_in_order(shape.sizes, order))
    return _mirror(base)


def _mirror(a: Arrangement) -> Arrangement:
    """total-1 - value at the reversed, coordinate-complemented cell."""
    k = a.shape.k
    grid = a.m - 1 - np.flip(a.grid.transpose(tuple(reversed(range(k)))))
    return Arrangement.from_grid(grid)


def herringbone_min(shape: Shape) -> Arrangement:
    """Minima-facing herringbone with the default (identity) order."""
    return herringbone_recursive(HerringboneSpec(shape))


def hb_max_arrangement(spec: HerringboneSpec) -> Arrangement:
    """Maxima-facing herringbone of a cube: the construction run with the
    reversed coordinate order, starting from the far corner downward."""
    return herringbone_recursive(
        HerringboneSpec(spec.shape, spec.coordinate_order, MAXIMA)
    )


def herringbone_max(shape: Shape) -> Arrangement:
    return hb_max_arrangement(HerringboneSpec(shape))


def hb_closed_form(cell: tuple[int, ...], shape: Shape) -> int:
    """Closed form for the cubic herringbone value at ``cell``.

    Let i_p be the largest coordinate (the largest dimension index on
    ties, 1-based p).  Exactly (i_p+1)^(p-1) * i_p^(k-p+1) values are
    placed before the boundary slab holding the cell; the offset inside
    that slab is the same expression one dimension down.
    """
    if not shape.is_cubic:
        raise UnsupportedInputError("closed form is defined for cubic shapes only")
    coords = list(check_cell(shape, cell))
    total = 0
    while coords:
        k = len(coords)
        i_max = max(coords)
        p = k - 1 - coords[::-1].index(i_max)  # largest index attaining the max
        total += (i_max + 1) ** p * i_max ** (k - p)
        del coords[p]
    return total


def hb_min_central_line(n: int, k: int, d: int) -> int:
    """Minimum herringbone value on the central line with free dimension d.

    The central line fixes every other coordinate at (n-1)/2; its
    minimum sits at coordinate 0 of dimension d and equals
    ((n+1)/2)^k - (n-1)/2 - ((n+1)/2)^d.  Odd n only: even-n central
    lines are evaluated directly on the constructed arrangement instead.
    """
    if n < 1 or n % 2 == 0:
        raise UnsupportedInputError("central-line closed form requires odd n")
    if not 0 <= d < k:
        raise UnsupportedInputError(f"dimension {d} out of range 0..{k - 1}")
    half_up = (n + 1) // 2
    return half_up**k - (n - 1) // 2 - half_up**d
