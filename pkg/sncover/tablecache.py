"""
On-disk cache for character tables.

Text layout, one item per line:

    SNCHARTABLE <version> <n> <p(n)>
    irreps
    [3]
    ...
    classes
    [1,1,1]
    ...
    orders
    6
    ...
    values
    1 1 1
    ...
    end
"""

import os
import tempfile
from pathlib import Path

from .characters import CharacterTable
from .diagram import Partition
from .errors import CacheCorruptError, InvalidArgumentError

MAGIC = "SNCHARTABLE"
FORMAT_VERSION = 1


def cache_path(cache_dir: Path, n: int) -> Path:
    return Path(cache_dir) / f"chartable-v{FORMAT_VERSION}-n{n}.txt"


def dump_table(table: CharacterTable) -> str:
    p = len(table.irreps)
    lines = [f"{MAGIC} {FORMAT_VERSION} {table.n} {p}", "irreps"]
    lines += [str(x) for x in table.irreps]
    lines.append("classes")
    lines += [str(c) for c in table.classes]
    lines.append("orders")
    lines += [str(z) for z in table.class_orders]
    lines.append("values")
    lines += [" ".join(str(v) for v in row) for row in table.values]
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_table(text: str, expected_n: int | None = None) -> CharacterTable:
    lines = text.splitlines()
    try:
        magic, version, n, p = lines[0].split()
        n, p = int(n), int(p)
        if magic != MAGIC or int(version) != FORMAT_VERSION:
            raise CacheCorruptError(f"bad header {lines[0]!r}")
        if expected_n is not None and n != expected_n:
            raise CacheCorruptError(f"header says n={n}, expected {expected_n}")
        sections = {}
        pos = 1
        for name in ("irreps", "classes", "orders", "values"):
            if lines[pos] != name:
                raise CacheCorruptError(f"line {pos + 1}: expected section {name!r}")
            sections[name] = lines[pos + 1: pos + 1 + p]
            pos += 1 + p
        if lines[pos] != "end" or len(lines) != pos + 1:
            raise CacheCorruptError(f"line {pos + 1}: expected end marker")
        irreps = tuple(Partition.parse(s) for s in sections["irreps"])
        classes = tuple(Partition.parse(s) for s in sections["classes"])
        orders = tuple(int(s) for s in sections["orders"])
        values = tuple(tuple(int(v) for v in s.split()) for s in sections["values"])
    except (IndexError, ValueError, InvalidArgumentError) as exc:
        raise CacheCorruptError(f"unreadable table: {exc}") from exc
    if any(len(row) != p for row in values) or any(x.size != n for x in irreps + classes):
        raise CacheCorruptError("table body does not match its header")
    return CharacterTable(n, irreps, classes, values, orders)


def read_table(path: Path, expected_n: int | None = None) -> CharacterTable:
    return parse_table(Path(path).read_text(encoding="utf-8"), expected_n)


def write_table(path: Path, table: CharacterTable) -> None:
    """Write atomically: a temp file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(dump_table(table))
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
