"""
Plancherel measure of supports and the covering criterion built on it.

If M(V) + M(W) > 1 then V x W covers every irreducible; tensoring with an
irreducible never lowers M. The affine group of F_p shows the criterion
fails when M is replaced by the uniform measure on irreducibles.
"""

import itertools
import logging
import math
from fractions import Fraction
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, computed_field
from sympy import isprime

from .characters import partitions_of
from .config import Provenance, get_config
from .diagram import Partition, as_partition, dimension, staircase
from .errors import InvalidArgumentError, ResourceLimitError
from .kronecker import Support, covers, product_support
from .random_partitions import make_rng
from .telemetry import get_tracer

logger = logging.getLogger(__name__)
tracer = get_tracer()

Outcome = Literal["pass", "fail", "not-applicable"]


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def plancherel_measure(s: Support) -> Fraction:
    """Sum of dim(lam)^2 / n! over the members of s."""
    cap = get_config().oracle_cap
    if s.n > cap:
        raise ResourceLimitError("n", s.n, cap)
    total = sum(dimension(p) ** 2 for p in s.members)
    return Fraction(total, math.factorial(s.n))


class MeasuredSupport(BaseModel):
    support: str
    n: int
    measure: str
    measure_float: float

    @classmethod
    def of(cls, s: Support) -> "MeasuredSupport":
        m = plancherel_measure(s)
        return cls(support=str(s), n=s.n, measure=format_fraction(m), measure_float=float(m))


class PigeonholeReport(BaseModel):
    n: int
    v: MeasuredSupport
    w: MeasuredSupport
    measure_sum: str
    outcome: Outcome
    product_covers: Optional[bool] = None


def pigeonhole_check(v: Support, w: Support) -> PigeonholeReport:
    if v.n != w.n:
        raise InvalidArgumentError(f"supports of different n: {v.n} and {w.n}")
    mv, mw = plancherel_measure(v), plancherel_measure(w)
    total = mv + mw
    report = PigeonholeReport(
        n=v.n, v=MeasuredSupport.of(v), w=MeasuredSupport.of(w),
        measure_sum=format_fraction(total), outcome="not-applicable",
    )
    if total <= 1:
        return report
    report.product_covers = covers(product_support([v, w]))
    report.outcome = "pass" if report.product_covers else "fail"
    if report.outcome == "fail":
        logger.error("pigeonhole failure at n=%d: %s x %s", v.n, v, w)
    return report


class MonotonicityReport(BaseModel):
    n: int
    v: MeasuredSupport
    factor: str
    product: MeasuredSupport
    outcome: Outcome

    @computed_field
    @property
    def strict(self) -> bool:
        return self.product.measure_float > self.v.measure_float


def monotonicity_check(v: Support, lam: Partition) -> MonotonicityReport:
    """M(V x lam) >= M(V)."""
    lam = as_partition(lam)
    if lam.size != v.n:
        raise InvalidArgumentError(f"{lam} is not a partition of {v.n}")
    product = product_support([v, lam])
    ok = plancherel_measure(product) >= plancherel_measure(v)
    return MonotonicityReport(
        n=v.n, v=MeasuredSupport.of(v), factor=str(lam),
        product=MeasuredSupport.of(product), outcome="pass" if ok else "fail",
    )


class SweepSummary(BaseModel):
    name: str
    n: int
    checked: int
    applicable: int
    failures: list[str] = Field(default_factory=list)
    provenance: Provenance = Field(default_factory=Provenance)

    @computed_field
    @property
    def passed(self) -> bool:
        return not self.failures


def _random_support(parts: list[Partition], rng: np.random.Generator, n: int) -> Support:
    # bias toward large supports so the measure condition is met often
    keep = rng.random(len(parts)) < rng.uniform(0.3, 1.0)
    chosen = [p for p, k in zip(parts, keep) if k] or [parts[int(rng.integers(len(parts)))]]
    return Support(n, frozenset(chosen))


def pigeonhole_sweep(n: int, pairs: int, seed: int) -> SweepSummary:
    """Random support pairs plus every pair of tensor-square supports."""
    parts = partitions_of(n)
    rng = make_rng(seed)
    squares = [product_support([p, p]) for p in parts]
    candidates = [(_random_support(parts, rng, n), _random_support(parts, rng, n)) for _ in range(pairs)]
    candidates += list(itertools.combinations_with_replacement(squares, 2))
    summary = SweepSummary(name="pigeonhole", n=n, checked=0, applicable=0,
                           provenance=Provenance(seed=seed))
    with tracer.start_as_current_span("pigeonhole_sweep") as span:
        span.set_attribute("n", n)
        span.set_attribute("pairs", len(candidates))
        for v, w in candidates:
            report = pigeonhole_check(v, w)
            summary.checked += 1
            if report.outcome != "not-applicable":
                summary.applicable += 1
            if report.outcome == "fail":
                summary.failures.append(f"{v} x {w}")
        span.set_attribute("failures", len(summary.failures))
    return summary


def monotonicity_sweep(n: int) -> SweepSummary:
    """Every singleton V against every lam, both partitions of n."""
    parts = partitions_of(n)
    summary = SweepSummary(name="monotonicity", n=n, checked=0, applicable=0,
                           provenance=Provenance())
    with tracer.start_as_current_span("monotonicity_sweep") as span:
        span.set_attribute("n", n)
        for mu, lam in itertools.product(parts, repeat=2):
            report = monotonicity_check(Support(n, frozenset([mu])), lam)
            summary.checked += 1
            summary.applicable += 1
            if report.outcome == "fail":
                summary.failures.append(f"{mu} x {lam}")
    return summary


class TrendRow(BaseModel):
    r: int
    n: int
    measure: str
    measure_float: float
    covers: bool


def saxl_measure_trend(r_max: int) -> list[TrendRow]:
    """M(rho_r x rho_r) for r = 2 .. r_max."""
    if r_max < 2:
        raise InvalidArgumentError("r_max must be >= 2")
    rows = []
    for r in range(2, r_max + 1):
        rho = staircase(r)
        s = product_support([rho, rho])
        m = plancherel_measure(s)
        rows.append(TrendRow(r=r, n=rho.size, measure=format_fraction(m), measure_float=float(m), covers=covers(s)))
    return rows


class AffineDemo(BaseModel):
    """Dimension-level model of the affine group x -> ax + b over F_p."""

    p: int
    group_order: int
    dimensions: list[int]
    v: list[int]
    w: list[int]
    product: list[int]
    uniform_sum: str
    plancherel_sum: str

    @computed_field
    @property
    def product_covers(self) -> bool:
        return len(self.product) == len(self.dimensions)

    @computed_field
    @property
    def uniform_criterion_fails(self) -> bool:
        return Fraction(self.uniform_sum) > 1 and not self.product_covers


def affine_counterexample_demo(p: int) -> AffineDemo:
    if p < 3 or not isprime(p):
        raise InvalidArgumentError(f"p must be a prime >= 3, got {p}")
    order = p * (p - 1)
    # irreps 0 .. p-2 are the characters of F_p^*, irrep p-1 has dimension p-1
    dims = [1] * (p - 1) + [p - 1]
    linear = list(range(p - 1))
    # products of linear characters are linear: the characters form a cyclic group
    product = sorted({(i + j) % (p - 1) for i in linear for j in linear})
    uniform = Fraction(len(linear), len(dims))
    plancherel = Fraction(sum(dims[i] ** 2 for i in linear), order)
    return AffineDemo(
        p=p, group_order=order, dimensions=dims, v=linear, w=linear, product=product,
        uniform_sum=format_fraction(2 * uniform), plancherel_sum=format_fraction(2 * plancherel),
    )
