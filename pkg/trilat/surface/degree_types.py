"""
Admissible degree types: curvature partitions (k_1, ..., k_l) of 12 with
1 <= k_i <= 5.
"""
from collections import Counter
from typing import Iterable, List, Tuple

from trilat.surface.triangulation import Triangulation, degree_type

ADMISSIBLE_COUNT = 47


def _partitions(total, largest):
    if total == 0:
        yield ()
        return
    for k in range(min(total, largest), 0, -1):
        for rest in _partitions(total - k, k):
            yield (k,) + rest


def admissible_degree_types() -> List[Tuple[int, ...]]:
    types = [p for p in _partitions(12, 5) if len(p) >= 3]
    assert len(types) == ADMISSIBLE_COUNT, "expected %d degree types, got %d" % (ADMISSIBLE_COUNT, len(types))
    return types


def census(triangulations: Iterable[Triangulation]) -> Counter:
    """Occurrences of each degree type among the given triangulations.

    Raises:
      ValueError: a partition outside the admissible list.
    """
    allowed = set(admissible_degree_types())
    counts = Counter()
    for T in triangulations:
        p = degree_type(T).partition
        if p not in allowed:
            raise ValueError("degree type %s is not admissible" % (p,))
        counts[p] += 1
    return counts
