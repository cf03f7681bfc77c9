"""
Exact symmetric group characters (Murnaghan-Nakayama rule) and character tables.
"""

import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .config import get_config
from .diagram import Partition, conjugate, dimension
from .errors import CacheCorruptError, InvalidArgumentError, ResourceLimitError
from .telemetry import get_tracer

logger = logging.getLogger(__name__)
tracer = get_tracer()

# A conjugacy class of S_n is labelled by its cycle type.
ClassLabel = Partition


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for tail in _partitions(n - first, first):
            out.append((first,) + tail)
    return tuple(out)


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order."""
    if n < 0:
        raise InvalidArgumentError(f"n must be nonnegative, got {n}")
    cap = get_config().enumeration_cap
    if n > cap:
        raise ResourceLimitError("n", n, cap)
    return [Partition(rows) for rows in _partitions(n, n)]


def class_order(rho: ClassLabel) -> int:
    """Centralizer order z_rho = prod i^m_i * m_i!."""
    return math.prod(i**m * math.factorial(m) for i, m in Counter(rho.rows).items())


def class_sign(rho: ClassLabel) -> int:
    return -1 if (rho.size - len(rho)) % 2 else 1


@lru_cache(maxsize=1 << 20)
def _mn(rows: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1 if not rows else 0
    r, rest = cycles[0], cycles[1:]
    k = len(rows)
    beta = [rows[i] + (k - 1 - i) for i in range(k)]
    present = set(beta)
    total = 0
    for b in beta:
        t = b - r
        if t < 0 or t in present:
            continue
        # leg length of the removed border strip
        height = sum(1 for c in beta if t < c < b)
        moved = sorted((present - {b}) | {t}, reverse=True)
        shape = tuple(x - (k - 1 - i) for i, x in enumerate(moved))
        value = _mn(tuple(s for s in shape if s > 0), rest)
        total += -value if height % 2 else value
    return total


def character(lam: Partition, rho: ClassLabel) -> int:
    """chi^lam(rho) by border-strip removal, largest cycle first."""
    if lam.size != rho.size:
        raise InvalidArgumentError(f"character needs equal sizes, got {lam.size} and {rho.size}")
    return _mn(lam.rows, rho.rows)


@dataclass(frozen=True)
class CharacterTable:
    n: int
    irreps: tuple[Partition, ...]
    classes: tuple[ClassLabel, ...]
    values: tuple[tuple[int, ...], ...]
    class_orders: tuple[int, ...]

    @cached_property
    def index(self) -> dict[Partition, int]:
        return {p: i for i, p in enumerate(self.irreps)}

    @cached_property
    def class_index(self) -> dict[Partition, int]:
        return {c: i for i, c in enumerate(self.classes)}

    @cached_property
    def matrix(self) -> np.ndarray:
        """Exact values as an object-dtype array (rows irreps, columns classes)."""
        m = np.empty((len(self.irreps), len(self.classes)), dtype=object)
        for i, row in enumerate(self.values):
            m[i, :] = row
        return m

    @cached_property
    def class_sizes(self) -> np.ndarray:
        """n!/z_rho per class, as Python integers."""
        fact = math.factorial(self.n)
        return np.array([fact // z for z in self.class_orders], dtype=object)

    def value(self, lam: Partition, rho: ClassLabel) -> int:
        return self.values[self.index[lam]][self.class_index[rho]]

    def row_orthogonality_holds(self) -> bool:
        """sum_rho (n!/z_rho) chi^a chi^b == n! delta_ab, in integers."""
        fact = math.factorial(self.n)
        gram = (self.matrix * self.class_sizes) @ self.matrix.T
        expected = np.identity(len(self.irreps), dtype=object) * fact
        return bool((gram == expected).all())

    def column_orthogonality_holds(self) -> bool:
        gram = self.matrix.T @ self.matrix
        expected = np.diag(np.array(self.class_orders, dtype=object))
        return bool((gram == expected).all())

    def identity_column_matches_dimensions(self) -> bool:
        col = self.class_index[Partition((1,) * self.n)] if self.n else 0
        return all(self.values[i][col] == dimension(p) for i, p in enumerate(self.irreps))

    def sign_twist_holds(self) -> bool:
        signs = [class_sign(c) for c in self.classes]
        for i, p in enumerate(self.irreps):
            twisted = self.values[self.index[conjugate(p)]]
            if any(twisted[j] != self.values[i][j] * signs[j] for j in range(len(signs))):
                return False
        return True


def _table_row(rows: tuple[int, ...], classes: Sequence[tuple[int, ...]]) -> tuple[int, ...]:
    return tuple(_mn(rows, c) for c in classes)


def build_character_table(n: int, threads: int = 1) -> CharacterTable:
    """Compute a table from scratch; the result does not depend on threads."""
    irreps = tuple(Partition(r) for r in _partitions(n, n))
    classes = tuple(reversed(irreps))
    class_rows = [c.rows for c in classes]
    with tracer.start_as_current_span("character_table.build") as span:
        span.set_attribute("n", n)
        span.set_attribute("threads", threads)
        if threads > 1 and len(irreps) > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                values = tuple(pool.map(_table_row, [p.rows for p in irreps], [class_rows] * len(irreps)))
        else:
            values = tuple(_table_row(p.rows, class_rows) for p in irreps)
    return CharacterTable(n, irreps, classes, values, tuple(class_order(c) for c in classes))


_tables: dict[int, CharacterTable] = {}


def character_table(n: int) -> CharacterTable:
    """Full table for S_n, served from memory, then the disk cache, then built."""
    from . import tablecache

    if n < 1:
        raise InvalidArgumentError(f"character_table needs n >= 1, got {n}")
    cfg = get_config()
    if n > cfg.table_cap:
        raise ResourceLimitError("n", n, cfg.table_cap)
    if n in _tables:
        return _tables[n]
    path = tablecache.cache_path(cfg.cache_dir, n)
    table = None
    if path.exists():
        try:
            table = tablecache.read_table(path, n)
            logger.debug("loaded character table n=%d from %s", n, path)
        except CacheCorruptError as exc:
            logger.warning("rebuilding character table n=%d: %s", n, exc)
    if table is None:
        table = build_character_table(n, cfg.threads)
        try:
            tablecache.write_table(path, table)
        except OSError as exc:
            logger.warning("could not write table cache %s: %s", path, exc)
    _tables[n] = table
    return table


def clear_table_memory() -> None:
    _tables.clear()
