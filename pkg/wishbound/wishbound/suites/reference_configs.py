"""
Reference configurations shared by the verification suites.
"""

from itertools import combinations
from typing import Iterator, List, Tuple

from ..wishart import Dimensions, IndexSplit, split_from_indices

# (alpha, expected diversity exponent) for the 3x3 and 4x4 curve families
THREE_BY_THREE = Dimensions(3, 3)
THREE_BY_THREE_CURVES: List[Tuple[str, int]] = [
    ("1,0,0", 9),
    ("0,1,0", 4),
    ("0,0,1", 1),
    ("0.1,0,1", 9),
    ("3,0,5", 9),
]

FOUR_BY_FOUR = Dimensions(4, 4)
# the last two put 100 times the best weight on the smallest eigenvalue
FOUR_BY_FOUR_CURVES: List[Tuple[str, int]] = [
    ("1,0,0,0", 16),
    ("0,1,0,100", 9),
    ("0,0,1,100", 4),
]

ASYMPTOTE_GRID = "0:40:5"
SLOPE_TOLERANCE = 0.02


def all_dimensions(max_dim: int) -> Iterator[Dimensions]:
    for n in range(1, max_dim + 1):
        for m in range(1, max_dim + 1):
            yield Dimensions(n, m)


def sweep_configurations(max_dim: int) -> Iterator[Tuple[Dimensions, IndexSplit]]:
    """Every (N, M <= max_dim) with every nonempty p-subset of 1..Y."""
    for dims in all_dimensions(max_dim):
        indices = dims.variables
        for k in range(1, dims.y + 1):
            for p in combinations(indices, k):
                yield dims, split_from_indices(p, dims.y)


def format_indices(indices) -> str:
    return ",".join(str(i) for i in indices)
