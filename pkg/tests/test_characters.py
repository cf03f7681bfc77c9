import math
import time

import pytest
from hypothesis import given

from sncover.characters import (
    build_character_table,
    character,
    character_table,
    class_order,
    class_sign,
    clear_table_memory,
    partitions_of,
)
from sncover.config import use_config
from sncover.diagram import Partition, conjugate, dimension
from sncover.errors import InvalidArgumentError, ResourceLimitError
from tests.strategies import partitions_of_size


def test_partition_counts_and_order():
    assert [len(partitions_of(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert partitions_of(4) == [Partition(r) for r in [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]]


def test_enumeration_cap(config):
    with use_config(config.model_copy(update={"enumeration_cap": 5})):
        with pytest.raises(ResourceLimitError):
            partitions_of(6)


def test_class_order_and_sign():
    assert class_order(Partition((1, 1, 1))) == 6
    assert class_order(Partition((2, 1))) == 2
    assert class_order(Partition((3,))) == 3
    assert class_sign(Partition((2, 1))) == -1
    assert class_sign(Partition((3,))) == 1


@pytest.mark.parametrize(
    "lam, rho, value",
    [
        ((2, 1), (1, 1, 1), 2),
        ((2, 1), (2, 1), 0),
        ((2, 1), (3,), -1),
        ((3, 1), (2, 2), -1),
        ((2, 2), (3, 1), -1),
        ((3, 2, 1), (5, 1), 1),
        ((3, 2, 1), (3, 3), -2),
    ],
)
def test_known_values(lam, rho, value):
    assert character(Partition(lam), Partition(rho)) == value


def test_mismatched_sizes():
    with pytest.raises(InvalidArgumentError):
        character(Partition((2,)), Partition((1, 1, 1)))


@given(partitions_of_size(7))
def test_identity_class_gives_dimension(lam):
    assert character(lam, Partition((1,) * 7)) == dimension(lam)


@given(partitions_of_size(6), partitions_of_size(6))
def test_sign_twist(lam, rho):
    assert character(conjugate(lam), rho) == class_sign(rho) * character(lam, rho)


@pytest.mark.parametrize("n", range(1, 11))
def test_table_identities(n):
    table = character_table(n)
    assert table.row_orthogonality_holds()
    assert table.column_orthogonality_holds()
    assert table.identity_column_matches_dimensions()
    assert table.sign_twist_holds()
    assert table.classes[0] == Partition((1,) * n)
    assert sum(math.factorial(n) // z for z in table.class_orders) == math.factorial(n)


def test_threads_do_not_change_the_table():
    assert build_character_table(6, threads=2) == build_character_table(6, threads=1)


@pytest.mark.slow
def test_n10_builds_quickly():
    start = time.perf_counter()
    build_character_table(10)
    assert time.perf_counter() - start < 10


def test_table_cap(config):
    with use_config(config.model_copy(update={"table_cap": 4})):
        with pytest.raises(ResourceLimitError):
            character_table(5)


def test_table_is_written_to_and_read_from_the_cache(config):
    clear_table_memory()
    first = character_table(5)
    path = config.cache_dir / "chartable-v1-n5.txt"
    assert path.exists()
    clear_table_memory()
    assert character_table(5) == first


def test_corrupt_cache_is_rebuilt(config, caplog):
    character_table(4)
    path = config.cache_dir / "chartable-v1-n4.txt"
    path.write_text("garbage\n", encoding="utf-8")
    clear_table_memory()
    table = character_table(4)
    assert table.row_orthogonality_holds()
    assert "rebuilding" in caplog.text
