"""
Desk-scale experiments composed from the oracle: Saxl sweeps, tensor power
boundaries, empirical constants and the covering criteria for pairs with
shared rows.

Every result model carries the run configuration so the numbers can be
reproduced.
"""

import logging
import math
from typing import Optional, Sequence

from pydantic import BaseModel, Field, computed_field

from .characters import partitions_of
from .config import Provenance
from .diagram import (
    Partition,
    as_partition,
    blockwise_distance,
    dimension,
    dist_rows,
    hook,
    hsum,
    row,
    shared_dist_rows,
    staircase,
)
from .errors import InvalidArgumentError, PreconditionError
from .kronecker import covers, min_cover_power, product_support, saxl_check, tau_support, tensor_power_support
from .lemmas import Variant, pieri_chain_target
from .random_partitions import make_rng
from .telemetry import get_tracer

logger = logging.getLogger(__name__)
tracer = get_tracer()


def _triangular_root(n: int) -> Optional[int]:
    r = (math.isqrt(8 * n + 1) - 1) // 2
    return r if r * (r + 1) // 2 == n else None


class SaxlSweep(BaseModel):
    n: int
    checked: int
    covering: list[str]
    staircase_covers: Optional[bool] = None
    provenance: Provenance = Field(default_factory=Provenance)

    @computed_field
    @property
    def exceptional(self) -> bool:
        return not self.covering


def saxl_sweep(n: int) -> SaxlSweep:
    """Every lam |- n whose tensor square covers."""
    if n < 1:
        raise InvalidArgumentError("n must be positive")
    with tracer.start_as_current_span("saxl_sweep") as span:
        span.set_attribute("n", n)
        parts = partitions_of(n)
        covering = [str(p) for p in parts if saxl_check(p)]
        r = _triangular_root(n)
        span.set_attribute("covering", len(covering))
    return SaxlSweep(
        n=n, checked=len(parts), covering=covering,
        staircase_covers=saxl_check(staircase(r)) if r else None,
    )


def saxl_exceptions(n_min: int, n_max: int) -> list[int]:
    """The n in range for which no tensor square covers."""
    return [n for n in range(n_min, n_max + 1) if saxl_sweep(n).exceptional]


def fourth_power_saxl(r: int) -> bool:
    if r < 1:
        raise InvalidArgumentError("r must be positive")
    return covers(tensor_power_support(staircase(r), 4))


class TauBoundary(BaseModel):
    n: int
    below_covers: bool
    at_n_covers: bool
    provenance: Provenance = Field(default_factory=Provenance)


def tau_power_boundary(n: int) -> TauBoundary:
    """Coverage of tau_n^(n-2) and tau_n^n."""
    if n < 3:
        raise InvalidArgumentError("tau boundary needs n >= 3")
    tau = tau_support(n)
    return TauBoundary(
        n=n,
        below_covers=covers(product_support([tau] * (n - 2))),
        at_n_covers=covers(product_support([tau] * n)),
    )


def _t_max(n: int) -> int:
    return 4 * n


class ConstantRow(BaseModel):
    n: int
    value: float
    achiever: str
    t_min: int


class ConstantAudit(BaseModel):
    rows: list[ConstantRow]
    provenance: Provenance = Field(default_factory=Provenance)

    @computed_field
    @property
    def max_ratio(self) -> float:
        values = [r.value for r in self.rows]
        return max(values) / values[0] if values and values[0] > 0 else math.inf

    @computed_field
    @property
    def trend_ok(self) -> bool:
        return self.max_ratio <= 2.0


def constant_audit(n_min: int = 5, n_max: int = 10) -> ConstantAudit:
    """max over lam |- n with dim > 1 of t_min(lam) log dim(lam) / (n log n)."""
    if n_min < 5 or n_max < n_min:
        raise InvalidArgumentError("constant audit needs 5 <= n_min <= n_max")
    rows = []
    with tracer.start_as_current_span("constant_audit") as span:
        for n in range(n_min, n_max + 1):
            best: Optional[ConstantRow] = None
            for lam in partitions_of(n):
                d = dimension(lam)
                if d == 1:
                    continue
                result = min_cover_power(lam, _t_max(n))
                if result.status != "covers":
                    raise PreconditionError(f"{lam} has no covering power up to {_t_max(n)}")
                value = result.power * math.log(d) / (n * math.log(n))
                if best is None or value > best.value:
                    best = ConstantRow(n=n, value=value, achiever=str(lam), t_min=result.power)
            rows.append(best)
            logger.info("n=%d constant %.4f at %s", n, best.value, best.achiever)
        span.set_attribute("rows", len(rows))
    return ConstantAudit(rows=rows)


class DistinctRowsAudit(BaseModel):
    n: int
    max_value: float
    achiever: str
    rows: dict[str, float]
    provenance: Provenance = Field(default_factory=Provenance)


def distinct_rows_audit(n: int) -> DistinctRowsAudit:
    """t_min(lam) * r^2 / n for every lam with r = DistRows(lam) >= 2."""
    values: dict[str, float] = {}
    for lam in partitions_of(n):
        r = dist_rows(lam)
        if r < 2:
            continue
        result = min_cover_power(lam, _t_max(n))
        if result.status != "covers":
            continue
        values[str(lam)] = result.power * r * r / n
    if not values:
        raise PreconditionError(f"no partition of {n} has two distinct row lengths")
    achiever = max(values, key=values.get)
    return DistinctRowsAudit(n=n, max_value=values[achiever], achiever=achiever, rows=values)


def eligible_pairs(n: int, r: int) -> list[tuple[Partition, Partition]]:
    """Pairs sharing >= r distinct rows at blockwise distance <= r^2/8."""
    parts = [p for p in partitions_of(n) if dist_rows(p) >= r]
    limit = r * r / 8
    return [
        (a, b) for a in parts for b in parts
        if shared_dist_rows([a, b]) >= r and blockwise_distance(a, b) <= limit
    ]


class CriterionExperiment(BaseModel):
    n: int
    r: int
    k: int
    trials: int
    covered: int
    eligible: int
    provenance: Provenance

    @computed_field
    @property
    def frequency(self) -> float:
        return self.covered / self.trials


def criterion_experiment(n: int, r: int, k: int, trials: int, seed: int) -> CriterionExperiment:
    if min(n, r, k, trials) < 1:
        raise InvalidArgumentError("n, r, k and trials must be positive")
    pairs = eligible_pairs(n, r)
    if not pairs:
        raise PreconditionError(f"no pairs of partitions of {n} share {r} distinct rows")
    covered = 0
    with tracer.start_as_current_span("criterion_experiment") as span:
        span.set_attribute("n", n)
        span.set_attribute("eligible", len(pairs))
        for t in range(trials):
            rng = make_rng(seed, t)
            chosen = [pairs[int(i)] for i in rng.integers(len(pairs), size=k)]
            if covers(product_support([p for pair in chosen for p in pair])):
                covered += 1
        span.set_attribute("covered", covered)
    return CriterionExperiment(
        n=n, r=r, k=k, trials=trials, covered=covered, eligible=len(pairs),
        provenance=Provenance(seed=seed),
    )


def staircase_square_power(r: int) -> int:
    """Least alpha with rho_r^(2 alpha) covering."""
    result = min_cover_power(staircase(r), _t_max(r * (r + 1) // 2))
    if result.status != "covers":
        raise PreconditionError(f"staircase({r}) has no covering power")
    return math.ceil(result.power / 2)


class TwoPairCheck(BaseModel):
    n: int
    r: int
    d: int
    alpha: int
    s: int
    targets: int
    missing: list[str]
    provenance: Provenance = Field(default_factory=Provenance)

    @computed_field
    @property
    def contains_all(self) -> bool:
        return not self.missing


def two_pair_check(pairs: Sequence[tuple[Partition, Partition]], r: int, d: int) -> TwoPairCheck:
    """Does the product over 2 alpha_r pairs contain 1_{n-s} +_H mu for all mu |- s?"""
    if d < 0:
        raise InvalidArgumentError("d must be nonnegative")
    alpha = staircase_square_power(r)
    if len(pairs) < 2 * alpha:
        raise PreconditionError(f"need {2 * alpha} pairs, got {len(pairs)}")
    factors = [as_partition(p) for pair in pairs[: 2 * alpha] for p in pair]
    n = factors[0].size
    s = r * (r + 1) // 2 - 2 * d
    if s < 0 or s > n:
        raise PreconditionError(f"s = {s} is out of range for n = {n}")
    support = product_support(factors)
    targets = [hsum(row(n - s), mu) for mu in partitions_of(s)]
    return TwoPairCheck(
        n=n, r=r, d=d, alpha=alpha, s=s, targets=len(targets),
        missing=[str(t) for t in targets if t not in support],
    )


class FinishCheck(BaseModel):
    n: int
    k: int
    h: int
    variant: str
    base: str
    target: str
    found: bool
    provenance: Provenance = Field(default_factory=Provenance)


def finish_power_check(n: int, k: int, h: int, variant: Variant = "two_row") -> FinishCheck:
    if variant == "two_row":
        if n < (h + 1) * k:
            raise PreconditionError(f"two-row finish needs n >= (h+1)k, got n={n}, h={h}, k={k}")
        base = Partition((n - k, k))
    elif variant == "hook":
        if n < h * k or n <= k:
            raise PreconditionError(f"hook finish needs n >= hk and n > k, got n={n}, h={h}, k={k}")
        base = hook(n - k + 1, k)
    else:
        raise InvalidArgumentError(f"unknown variant {variant!r}")
    target = pieri_chain_target(n, k, h, variant)
    return FinishCheck(
        n=n, k=k, h=h, variant=variant, base=str(base), target=str(target),
        found=target in tensor_power_support(base, h),
    )


class FaithfulPowerCheck(BaseModel):
    n: int
    powers: dict[str, Optional[int]]
    unexpected: list[str]
    provenance: Provenance = Field(default_factory=Provenance)

    @computed_field
    @property
    def holds(self) -> bool:
        return not self.unexpected


def faithful_power_check(n: int) -> FaithfulPowerCheck:
    """Some power covers iff dim > 1; at n = 4, (2,2) factors through S_3."""
    if n < 2:
        raise InvalidArgumentError("n must be >= 2")
    exceptions = {Partition((2, 2))} if n == 4 else set()
    powers: dict[str, Optional[int]] = {}
    unexpected = []
    for lam in partitions_of(n):
        result = min_cover_power(lam, _t_max(n))
        powers[str(lam)] = result.power
        should_cover = dimension(lam) > 1 and lam not in exceptions
        if (result.status == "covers") != should_cover:
            unexpected.append(str(lam))
    return FaithfulPowerCheck(n=n, powers=powers, unexpected=unexpected)
