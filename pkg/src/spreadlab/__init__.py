"""Low-spread arrangements of integers in k-dimensional matrices.

Constructions (herringbone, merged herringbone, diagonals), closed-form
bounds, exhaustive optimality oracles, and the matching multi-channel
erasure distortion reports, plus a CLI tying them together.
"""

from .core import (
    Arrangement,
    Shape,
    ShapeMismatchError,
    SliceSpec,
    SpreadReport,
    UnsupportedInputError,
    bigs_sequence,
    is_monotonic,
    make_monotonic,
    max_spread,
    pairing_bound,
    slice_spread,
    smalls_sequence,
)
from .herringbone import HerringboneSpec, herringbone_max, herringbone_min, herringbone_recursive
from .merge import herringbone_merge

__all__ = [
    "Arrangement",
    "HerringboneSpec",
    "Shape",
    "ShapeMismatchError",
    "SliceSpec",
    "SpreadReport",
    "UnsupportedInputError",
    "bigs_sequence",
    "herringbone_max",
    "herringbone_merge",
    "herringbone_min",
    "herringbone_recursive",
    "is_monotonic",
    "make_monotonic",
    "max_spread",
    "pairing_bound",
    "slice_spread",
    "smalls_sequence",
]

__version__ = "0.1.0"
