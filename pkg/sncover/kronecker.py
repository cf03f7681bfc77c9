"""
Brute-force Kronecker oracle.

Coefficients come from exact character sums: for partitions of n,

    g(l_1, ..., l_k) = sum_rho (n!/z_rho) prod_i chi^{l_i}(rho) / n!

Supports (sets of constituents, no multiplicities) of products of reducible
representations are found with one matrix-vector product: since every
constituent appears with a nonnegative coefficient, nu lies in the support of
(sum S_1) x ... x (sum S_k) iff <prod_i sum_{a in S_i} chi^a, chi^nu> > 0.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Literal, Optional, Sequence, Union

import numpy as np

from .characters import CharacterTable, character_table, partitions_of
from .config import get_config
from .diagram import EMPTY, Partition, as_partition, row
from .errors import InternalInconsistencyError, InvalidArgumentError, ResourceLimitError
from .telemetry import get_tracer

logger = logging.getLogger(__name__)
tracer = get_tracer()


@dataclass(frozen=True)
class Support:
    n: int
    members: frozenset[Partition]

    def __post_init__(self):
        bad = [p for p in self.members if p.size != self.n]
        if bad:
            raise InvalidArgumentError(f"support members {bad} are not partitions of {self.n}")

    @classmethod
    def of(cls, parts: Iterable[Partition], n: Optional[int] = None) -> "Support":
        parts = frozenset(as_partition(p) for p in parts)
        if n is None:
            if not parts:
                raise InvalidArgumentError("cannot infer n for an empty support")
            n = next(iter(parts)).size
        return cls(n, parts)

    @classmethod
    def parse(cls, text: str) -> "Support":
        """';'-separated partitions, e.g. ``[3];[2,1]``."""
        return cls.of(Partition.parse(s) for s in text.split(";") if s.strip())

    def sorted(self) -> list[Partition]:
        return sorted(self.members, key=Partition.sort_key)

    def __contains__(self, p) -> bool:
        return as_partition(p) in self.members

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return ";".join(str(p) for p in self.sorted())


Factor = Union[Support, Partition]


def tau_support(n: int) -> Support:
    """The standard representation tau_n = (n) + (n-1,1) as a support."""
    if n < 2:
        raise InvalidArgumentError("tau_n needs n >= 2")
    return Support.of([row(n), Partition((n - 1, 1))])


def _common_size(parts: Sequence[Partition]) -> int:
    sizes = {p.size for p in parts}
    if len(sizes) != 1:
        raise InvalidArgumentError(f"partitions have different sizes {sorted(sizes)}")
    return sizes.pop()


def _check_cap(n: int, which: str = "oracle_cap") -> None:
    cap = getattr(get_config(), which)
    if n > cap:
        raise ResourceLimitError("n", n, cap)


def _exact_divide(total, n: int) -> int:
    fact = math.factorial(n)
    q, rem = divmod(int(total), fact)
    if rem:
        raise InternalInconsistencyError(f"character sum {total} not divisible by {n}!")
    return q


def extended_kronecker(ls: Sequence[Partition]) -> int:
    """Multiplicity of the trivial representation in the tensor product of ls."""
    ls = [as_partition(p) for p in ls]
    if len(ls) < 3:
        raise InvalidArgumentError(f"extended Kronecker coefficients take >= 3 partitions, got {len(ls)}")
    n = _common_size(ls)
    if n == 0:
        return 1
    _check_cap(n)
    table = character_table(n)
    prod = table.class_sizes.copy()
    for p in ls:
        prod = prod * table.matrix[table.index[p]]
    return _exact_divide(prod.sum(), n)


def kronecker(lam: Partition, mu: Partition, nu: Partition) -> int:
    return extended_kronecker([lam, mu, nu])


def _indicator_sum(table: CharacterTable, factor: Factor) -> np.ndarray:
    if isinstance(factor, Partition):
        return table.matrix[table.index[factor]]
    rows = [table.index[p] for p in factor.members]
    return table.matrix[rows].sum(axis=0)


def _support_from_class_function(table: CharacterTable, f: np.ndarray) -> Support:
    coeffs = table.matrix @ (table.class_sizes * f)
    return Support(table.n, frozenset(p for p, c in zip(table.irreps, coeffs) if c > 0))


PAIR_CACHE_SIZE = 4096


@lru_cache(maxsize=PAIR_CACHE_SIZE)
def _pair_support(lam: Partition, mu: Partition) -> Support:
    table = character_table(lam.size)
    f = table.matrix[table.index[lam]] * table.matrix[table.index[mu]]
    return _support_from_class_function(table, f)


def tensor_support(lam: Partition, mu: Partition) -> Support:
    """{nu : g(lam, mu, nu) > 0}."""
    lam, mu = as_partition(lam), as_partition(mu)
    n = _common_size([lam, mu])
    if n == 0:
        return Support(0, frozenset([EMPTY]))
    _check_cap(n)
    return _pair_support(*((lam, mu) if lam.sort_key() <= mu.sort_key() else (mu, lam)))


def product_support(factors: Sequence[Factor]) -> Support:
    """Support of the tensor product of the factors, folded left to right."""
    if not factors:
        raise InvalidArgumentError("product_support needs at least one factor")
    sizes = {f.size if isinstance(f, Partition) else f.n for f in factors}
    if len(sizes) != 1:
        raise InvalidArgumentError(f"factors have different sizes {sorted(sizes)}")
    n = sizes.pop()
    if n == 0:
        return Support(0, frozenset([EMPTY]))
    first = factors[0]
    current = Support(n, frozenset([first])) if isinstance(first, Partition) else first
    if len(factors) == 1:
        return current
    _check_cap(n, "product_cap")
    table = character_table(n)
    with tracer.start_as_current_span("product_support") as span:
        span.set_attribute("n", n)
        span.set_attribute("factors", len(factors))
        for factor in factors[1:]:
            f = _indicator_sum(table, current) * _indicator_sum(table, factor)
            current = _support_from_class_function(table, f)
        span.set_attribute("support.size", len(current))
    return current


def tensor_power_support(lam: Partition, t: int) -> Support:
    if t < 1:
        raise InvalidArgumentError("tensor power needs t >= 1")
    return product_support([lam] * t)


def covers(s: Support) -> bool:
    """True iff s contains every irreducible of S_n."""
    return len(s.members) == len(partitions_of(s.n)) and s.members == frozenset(partitions_of(s.n))


def saxl_check(lam: Partition) -> bool:
    return covers(tensor_support(lam, lam))


@dataclass(frozen=True)
class CoverPower:
    status: Literal["covers", "exceeds", "never"]
    power: Optional[int]
    support: Support
    t_max: int

    def __str__(self) -> str:
        if self.status == "covers":
            return str(self.power)
        if self.status == "exceeds":
            return f"exceeds {self.t_max}"
        return f"never (support stabilized at {self.support})"


def min_cover_power(lam: Partition, t_max: int) -> CoverPower:
    """Least t with lam^t covering Irrep(S_n).

    The supports S_{t+1} = S_t x lam form a deterministic sequence, so a repeated
    support without covering means no power ever covers.
    """
    lam = as_partition(lam)
    if t_max < 1:
        raise InvalidArgumentError("t_max must be positive")
    n = lam.size
    _check_cap(n, "product_cap")
    with tracer.start_as_current_span("min_cover_power") as span:
        span.set_attribute("partition", str(lam))
        span.set_attribute("t_max", t_max)
        current = Support(n, frozenset([lam]))
        seen = {current.members}
        t = 1
        while True:
            if covers(current):
                span.set_attribute("result", t)
                return CoverPower("covers", t, current, t_max)
            if t >= t_max:
                return CoverPower("exceeds", None, current, t_max)
            current = product_support([current, lam])
            t += 1
            if current.members in seen:
                logger.debug("support of %s repeats at t=%d", lam, t)
                span.set_attribute("result", "never")
                return CoverPower("never", None, current, t_max)
            seen.add(current.members)


def height_bound_check(lam: Partition, mu: Partition) -> bool:
    """Every nu in lam x mu has at most ht(lam) * ht(mu) rows."""
    bound = lam.height * mu.height
    return all(nu.height <= bound for nu in tensor_support(lam, mu).members)


def dimension_consistency_holds(lam: Partition, mu: Partition) -> bool:
    """sum_nu g(lam, mu, nu) dim(nu) == dim(lam) dim(mu)."""
    n = _common_size([lam, mu])
    table = character_table(n)
    ident = table.class_index[Partition((1,) * n)]
    dims = table.matrix[:, ident]
    total = sum(kronecker(lam, mu, nu) * dims[table.index[nu]] for nu in tensor_support(lam, mu).members)
    return total == dims[table.index[lam]] * dims[table.index[mu]]


def clear_pair_cache() -> None:
    _pair_support.cache_clear()
