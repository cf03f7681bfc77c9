"""
Partitions and Young diagram algebra.

A Partition is an immutable tuple of weakly decreasing positive row lengths.
Everything here is pure and exact (Python integers throughout).
"""

import math
import operator
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import InvalidArgumentError, PreconditionError

_TEXT = re.compile(r"^\s*\[\s*(\d+(\s*,\s*\d+)*)?\s*\]\s*$")


@dataclass(frozen=True)
class Partition:
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        try:
            rows = tuple(operator.index(r) for r in self.rows)
        except TypeError as exc:
            raise InvalidArgumentError(f"row lengths must be integers, got {self.rows!r}") from exc
        if any(r < 0 for r in rows):
            raise InvalidArgumentError(f"negative row length in {rows}")
        if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
            raise InvalidArgumentError(f"row lengths must be weakly decreasing: {rows}")
        # only a trailing run of zeros can be left at this point
        object.__setattr__(self, "rows", tuple(r for r in rows if r > 0))

    @classmethod
    def of(cls, *rows: int) -> "Partition":
        return cls(tuple(rows))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the ``[a,b,c]`` text form; ``[]`` is the empty partition."""
        if not _TEXT.match(text):
            raise InvalidArgumentError(f"malformed partition {text!r}, expected e.g. [4,2,1]")
        body = text.strip()[1:-1].strip()
        return cls(tuple(int(x) for x in body.split(",")) if body else ())

    @property
    def size(self) -> int:
        return sum(self.rows)

    @property
    def height(self) -> int:
        return len(self.rows)

    @property
    def width(self) -> int:
        return self.rows[0] if self.rows else 0

    def row(self, i: int) -> int:
        return self.rows[i] if i < len(self.rows) else 0

    def sort_key(self) -> tuple[int, ...]:
        """Ascending sort by this key gives reverse-lexicographic order."""
        return tuple(-r for r in self.rows)

    def cells(self) -> Iterable[tuple[int, int]]:
        for i, r in enumerate(self.rows):
            for j in range(r):
                yield i, j

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def __bool__(self) -> bool:
        return bool(self.rows)

    def __str__(self) -> str:
        return "[" + ",".join(str(r) for r in self.rows) + "]"

    def __repr__(self) -> str:
        return f"Partition{self.rows!r}"


EMPTY = Partition()


def as_partition(p) -> Partition:
    if isinstance(p, Partition):
        return p
    if isinstance(p, str):
        return Partition.parse(p)
    return Partition(tuple(p))


# -- named shapes -------------------------------------------------------------

def row(n: int) -> Partition:
    """1_n, the trivial representation (a single row). row(0) is empty."""
    return Partition((n,))


def column(n: int) -> Partition:
    """1^n, the alternating representation (a single column)."""
    return Partition((1,) * n)


def staircase(r: int) -> Partition:
    return Partition(tuple(range(r, 0, -1)))


def rect(a: int, b: int) -> Partition:
    """Rect(a, b): b rows of length a."""
    return Partition((a,) * b) if a > 0 else EMPTY


def hook(a: int, b: int) -> Partition:
    """Hook(a, b) = (a, 1^(b-1)), a partition of a+b-1."""
    if a < 1 or b < 1:
        raise InvalidArgumentError(f"hook({a},{b}) needs both arms >= 1")
    return Partition((a,) + (1,) * (b - 1))


_SHAPES = {
    "trivial": (row, 1),
    "column": (column, 1),
    "staircase": (staircase, 1),
    "rect": (rect, 2),
    "hook": (hook, 2),
}


def make_shape(kind: str, *params: int) -> Partition:
    if kind not in _SHAPES:
        raise InvalidArgumentError(f"unknown shape {kind!r}; choose from {sorted(_SHAPES)}")
    builder, arity = _SHAPES[kind]
    if len(params) != arity:
        raise InvalidArgumentError(f"{kind} takes {arity} size parameter(s), got {len(params)}")
    if any(p < 1 for p in params):
        raise InvalidArgumentError(f"{kind}{params}: size parameters must be >= 1")
    return builder(*params)


# -- sums and conjugation -----------------------------------------------------

def conjugate(p: Partition) -> Partition:
    if not p:
        return EMPTY
    return Partition(tuple(sum(1 for r in p.rows if r > j) for j in range(p.rows[0])))


def hsum(p: Partition, q: Partition) -> Partition:
    n = max(len(p), len(q))
    return Partition(tuple(p.row(i) + q.row(i) for i in range(n)))


def vsum(p: Partition, q: Partition) -> Partition:
    return Partition(tuple(sorted(p.rows + q.rows, reverse=True)))


def hsum_all(parts: Iterable[Partition]) -> Partition:
    out = EMPTY
    for p in parts:
        out = hsum(out, p)
    return out


def vsum_all(parts: Iterable[Partition]) -> Partition:
    return Partition(tuple(sorted((r for p in parts for r in p.rows), reverse=True)))


# -- distances and row statistics ---------------------------------------------

def blockwise_distance(p: Partition, q: Partition) -> int:
    """Number of boxes that must move to turn p into q (equal sizes only)."""
    if p.size != q.size:
        raise InvalidArgumentError(f"blockwise distance needs equal sizes, got {p.size} and {q.size}")
    n = max(len(p), len(q))
    return sum(max(0, p.row(i) - q.row(i)) for i in range(n))


def dist_rows(p: Partition) -> int:
    return len(set(p.rows))


def shared_dist_rows(ps: Sequence[Partition]) -> int:
    return len(shared_row_lengths(ps))


def shared_row_lengths(ps: Sequence[Partition]) -> list[int]:
    """Row lengths common to every partition, largest first."""
    if not ps:
        raise InvalidArgumentError("shared_dist_rows needs at least one partition")
    common = set(ps[0].rows)
    for p in ps[1:]:
        common &= set(p.rows)
    return sorted(common, reverse=True)


def staircase_decompose(
    p: Partition, r: int, chosen: Optional[Iterable[int]] = None
) -> tuple[Partition, Partition]:
    """Split p as mu +_V (nu +_H staircase(r)).

    One row of each chosen length moves into the staircase part; by default the
    r largest distinct lengths are chosen.
    """
    if r < 1:
        raise InvalidArgumentError("r must be positive")
    distinct = sorted(set(p.rows), reverse=True)
    if len(distinct) < r:
        raise PreconditionError(f"{p} has {len(distinct)} distinct row lengths, fewer than r={r}")
    if chosen is None:
        lengths = distinct[:r]
    else:
        lengths = sorted(set(chosen), reverse=True)
        if len(lengths) != r or not set(lengths) <= set(distinct):
            raise PreconditionError(f"chosen lengths {lengths} are not {r} distinct row lengths of {p}")
    remaining = Counter(p.rows)
    remaining.subtract(lengths)
    mu = Partition(tuple(sorted(remaining.elements(), reverse=True)))
    nu = Partition(tuple(length - (r - i) for i, length in enumerate(lengths)))
    return mu, nu


# -- hooks and dimensions -----------------------------------------------------

class HookLength(NamedTuple):
    length: int
    row_part: int
    column_part: int


def hook_lengths(p: Partition) -> dict[tuple[int, int], HookLength]:
    """Hook length per cell, split as H = H_r + H_c - 1 (arm+1 and leg+1)."""
    cols = conjugate(p)
    table = {}
    for i, j in p.cells():
        arm = p.rows[i] - j - 1
        leg = cols.rows[j] - i - 1
        table[(i, j)] = HookLength(arm + leg + 1, arm + 1, leg + 1)
    return table


def dimension(p: Partition) -> int:
    return math.factorial(p.size) // math.prod(h.length for h in hook_lengths(p).values())


# -- explicit decompositions --------------------------------------------------

class RectBlock(NamedTuple):
    h: int
    nu: Partition


def krect_decompose(p: Partition, k: int) -> list[RectBlock]:
    """Cut p into bands of k rows, each band Rect(k*h, k) +_H nu.

    h = floor(last row of the band / k); the final band is padded with empty rows.
    """
    if k < 1:
        raise InvalidArgumentError("k must be positive")
    blocks = []
    for start in range(0, len(p), k):
        band = [p.row(i) for i in range(start, start + k)]
        h = band[-1] // k
        blocks.append(RectBlock(h, Partition(tuple(r - k * h for r in band))))
    return blocks


def krect_reassemble(blocks: Sequence[RectBlock], k: int) -> Partition:
    return vsum_all(hsum(rect(k * b.h, k), b.nu) for b in blocks)


def finish_split(parts: Sequence[int]) -> list[Partition]:
    """Greedy column assignment: each part takes the next column lengths 1, 2, ...

    while they fit and then one leftover column for what remains.
    """
    if not parts:
        raise InvalidArgumentError("finish_split needs at least one part")
    if any(n <= 0 for n in parts):
        raise InvalidArgumentError(f"parts must be positive, got {list(parts)}")
    out = []
    nxt = 1
    for n in parts:
        cols = []
        room = n
        while nxt <= room:
            cols.append(nxt)
            room -= nxt
            nxt += 1
        if room:
            cols.append(room)
        out.append(conjugate(Partition(tuple(sorted(cols, reverse=True)))))
    return out


def hat_decompose(p: Partition) -> tuple[Partition, int]:
    """Write p = hat +_H 1_m with hat's first row min(a1, max(a2, b1))."""
    if not p:
        raise InvalidArgumentError("hat_decompose needs a nonempty partition")
    top = min(p.rows[0], max(p.row(1), len(p)))
    m = p.rows[0] - top
    return Partition((top,) + p.rows[1:]), m


def hat_dimension_bounds(p: Partition) -> tuple[int, int]:
    """Lower and upper bounds for dimension(p) from the hat decomposition.

    lower = max(dim(hat), C(n-M, k-M)), upper = dim(hat) * C(n, k) where
    M is the hat's first row and k its size.
    """
    hat, _ = hat_decompose(p)
    n, k, top = p.size, hat.size, hat.width
    d = dimension(hat)
    return max(d, math.comb(n - top, k - top)), d * math.comb(n, k)


def durfee_size(p: Partition) -> int:
    return sum(1 for i, r in enumerate(p.rows) if r > i)
