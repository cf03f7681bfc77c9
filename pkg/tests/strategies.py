from hypothesis import strategies as st

from sncover.characters import partitions_of
from sncover.diagram import Partition


def partitions(max_part: int = 8, max_rows: int = 8, min_rows: int = 0):
    return st.lists(st.integers(1, max_part), min_size=min_rows, max_size=max_rows).map(
        lambda xs: Partition(tuple(sorted(xs, reverse=True)))
    )


def partitions_of_size(n: int):
    return st.sampled_from(partitions_of(n))


def sizes(low: int = 1, high: int = 8):
    return st.integers(low, high)


def same_size(k: int, low: int = 1, high: int = 8):
    """k partitions of one common n."""
    return sizes(low, high).flatmap(lambda n: st.tuples(*[partitions_of_size(n)] * k))
