"""
Random partitions under the Plancherel and uniform measures, and the
statistics gathered over them.

Randomness comes from a counter-based Philox generator keyed by
(seed, trial), so every trial can be replayed on its own.
"""

import bisect
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Callable, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, computed_field, model_validator
from scipy import integrate
from sympy import divisors

from .config import Provenance, get_config
from .diagram import Partition, dist_rows
from .errors import InvalidArgumentError, ResourceLimitError
from .kronecker import covers, product_support
from .shapes import lsvk_shape, rescaled_shape_distance, uniform_limit_shape
from .telemetry import get_tracer

logger = logging.getLogger(__name__)
tracer = get_tracer()

Measure = Literal["plancherel", "uniform"]
Coupling = Literal["independent", "identical"]

ALGORITHMS = {
    "plancherel": "philox/rsk-row-insertion/v1",
    "uniform": "philox/divisor-unranking/v1",
}

ALPHA_CLOSED_FORM = 32 / (3 * math.pi**2)
UNIFORM_DISTROWS_CONSTANT = math.sqrt(6) / math.pi


def make_rng(seed: int, trial: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(trial,))))


def randbelow(rng: np.random.Generator, m: int) -> int:
    """Exactly uniform integer in [0, m) for arbitrarily large m."""
    if m < 1:
        raise InvalidArgumentError("randbelow needs m >= 1")
    bits = (m - 1).bit_length()
    if bits == 0:
        return 0
    words = (bits + 63) // 64
    excess = words * 64 - bits
    while True:
        value = 0
        for w in rng.bit_generator.random_raw(words):
            value = (value << 64) | int(w)
        value >>= excess
        if value < m:
            return value


@lru_cache(maxsize=4)
def partition_counts(n: int) -> tuple[int, ...]:
    """p(0), ..., p(n) by Euler's pentagonal number recurrence."""
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return tuple(p)


@lru_cache(maxsize=4)
def _divisor_sums(n: int) -> tuple[int, ...]:
    sigma = np.zeros(n + 1, dtype=np.int64)
    for d in range(1, n + 1):
        sigma[d::d] += d
    return tuple(int(s) for s in sigma)


def _uniform(n: int, rng: np.random.Generator) -> Partition:
    # m p(m) = sum_s sigma(s) p(m-s): pick s, then a divisor d of s with
    # probability d / sigma(s), and add s/d parts equal to d.
    p = partition_counts(n)
    sigma = _divisor_sums(n)
    parts: list[int] = []
    m = n
    while m > 0:
        u = randbelow(rng, m * p[m])
        s = 0
        acc = 0
        while acc <= u:
            s += 1
            acc += sigma[s] * p[m - s]
        v = randbelow(rng, sigma[s])
        for d in divisors(s):
            if v < d:
                break
            v -= d
        parts.extend([d] * (s // d))
        m -= s
    return Partition(tuple(sorted(parts, reverse=True)))


def _plancherel(n: int, rng: np.random.Generator) -> Partition:
    """Shape of the row-insertion tableau of a uniformly random permutation."""
    rows: list[list[int]] = []
    for x in rng.permutation(n).tolist():
        for r in rows:
            i = bisect.bisect_right(r, x)
            if i == len(r):
                r.append(x)
                break
            r[i], x = x, r[i]
        else:
            rows.append([x])
    return Partition(tuple(len(r) for r in rows))


_SAMPLERS: dict[str, Callable[[int, np.random.Generator], Partition]] = {
    "plancherel": _plancherel,
    "uniform": _uniform,
}


def sample(measure: Measure, n: int, seed: int, trial: int = 0) -> Partition:
    if n < 1:
        raise InvalidArgumentError("n must be >= 1")
    if measure not in _SAMPLERS:
        raise InvalidArgumentError(f"unknown measure {measure!r}")
    if measure == "uniform":
        cap = get_config().uniform_cap
        if n > cap:
            raise ResourceLimitError("n", n, cap)
    return _SAMPLERS[measure](n, make_rng(seed, trial))


def plancherel_sample(n: int, seed: int, trial: int = 0) -> Partition:
    return sample("plancherel", n, seed, trial)


def uniform_sample(n: int, seed: int, trial: int = 0) -> Partition:
    return sample("uniform", n, seed, trial)


def v_density(a: float) -> float:
    """Limiting density of distinct row lengths along the Plancherel curve."""
    if abs(a) > 2:
        raise InvalidArgumentError(f"v_density is defined on [-2, 2], got {a}")
    theta = math.acos(max(-1.0, min(1.0, a / 2)))
    p = theta / math.pi
    s = math.sin(theta) / math.pi
    return p - p * p + s * s


def alpha_constant(tolerance: float = 1e-9) -> float:
    if tolerance <= 0:
        raise InvalidArgumentError("tolerance must be positive")
    value, _ = integrate.quad(v_density, -2.0, 2.0, epsabs=tolerance, epsrel=tolerance, limit=200)
    return value


class SampleStats(BaseModel):
    measure: str
    n: int
    seed: int
    algorithm: str
    dist_rows: list[int]
    shape_distances: Optional[list[float]] = None
    provenance: Provenance = Field(default_factory=Provenance)

    @model_validator(mode="after")
    def _lengths_agree(self):
        if self.shape_distances is not None and len(self.shape_distances) != len(self.dist_rows):
            raise ValueError("one shape distance per trial expected")
        return self

    @computed_field
    @property
    def trials(self) -> int:
        return len(self.dist_rows)

    @computed_field
    @property
    def mean(self) -> float:
        return float(np.mean(self.dist_rows)) if self.dist_rows else 0.0

    @computed_field
    @property
    def variance(self) -> float:
        return float(np.var(self.dist_rows, ddof=1)) if len(self.dist_rows) > 1 else 0.0

    @computed_field
    @property
    def normalized_mean(self) -> float:
        return self.mean / math.sqrt(self.n)

    @computed_field
    @property
    def median_shape_distance(self) -> Optional[float]:
        return float(np.median(self.shape_distances)) if self.shape_distances else None


def _trial_row(args: tuple[str, int, int, int, bool]) -> tuple[int, Optional[float]]:
    measure, n, seed, trial, with_shape = args
    lam = _SAMPLERS[measure](n, make_rng(seed, trial))
    distance = None
    if with_shape:
        shape = lsvk_shape() if measure == "plancherel" else uniform_limit_shape()
        distance = rescaled_shape_distance(lam, shape)
    return dist_rows(lam), distance


def _run_trials(measure: Measure, n: int, trials: int, seed: int, with_shape: bool) -> SampleStats:
    if trials < 1:
        raise InvalidArgumentError("trials must be >= 1")
    if measure not in _SAMPLERS:
        raise InvalidArgumentError(f"unknown measure {measure!r}")
    cfg = get_config()
    if measure == "uniform" and n > cfg.uniform_cap:
        raise ResourceLimitError("n", n, cfg.uniform_cap)
    if measure == "uniform":
        partition_counts(n)
    jobs = [(measure, n, seed, t, with_shape) for t in range(trials)]
    with tracer.start_as_current_span("random_partitions.trials") as span:
        span.set_attribute("measure", measure)
        span.set_attribute("n", n)
        span.set_attribute("trials", trials)
        if cfg.threads > 1 and trials > 1:
            with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
                rows = list(pool.map(_trial_row, jobs, chunksize=max(1, trials // (4 * cfg.threads))))
        else:
            rows = [_trial_row(job) for job in jobs]
    return SampleStats(
        measure=measure, n=n, seed=seed, algorithm=ALGORITHMS[measure],
        dist_rows=[r for r, _ in rows],
        shape_distances=[d for _, d in rows] if with_shape else None,
        provenance=Provenance(seed=seed, config=cfg.fingerprint()),
    )


def distrows_experiment(measure: Measure, n: int, trials: int, seed: int) -> SampleStats:
    return _run_trials(measure, n, trials, seed, with_shape=False)


def shape_distance_experiment(measure: Measure, n: int, trials: int, seed: int) -> SampleStats:
    return _run_trials(measure, n, trials, seed, with_shape=True)


class CoverExperiment(BaseModel):
    measure: str
    coupling: str
    k: int
    n: int
    trials: int
    seed: int
    algorithm: str
    covered: int
    samples: list[list[str]] = Field(default_factory=list)
    provenance: Provenance = Field(default_factory=Provenance)

    @computed_field
    @property
    def frequency(self) -> float:
        return self.covered / self.trials


def coupled_cover_experiment(
    measure: Measure,
    k: int,
    n: int,
    trials: int,
    coupling: Coupling,
    seed: int,
    sampler: Optional[Callable[[int, np.random.Generator], Partition]] = None,
) -> CoverExperiment:
    """Fraction of trials in which the product of k coupled samples covers."""
    if k < 1 or trials < 1:
        raise InvalidArgumentError("k and trials must be >= 1")
    if coupling not in ("independent", "identical"):
        raise InvalidArgumentError(f"unknown coupling {coupling!r}")
    draw = sampler or _SAMPLERS.get(measure)
    if draw is None:
        raise InvalidArgumentError(f"unknown measure {measure!r}")
    covered = 0
    samples = []
    with tracer.start_as_current_span("coupled_cover_experiment") as span:
        span.set_attribute("n", n)
        span.set_attribute("k", k)
        span.set_attribute("coupling", coupling)
        for t in range(trials):
            rng = make_rng(seed, t)
            if coupling == "identical":
                lams = [draw(n, rng)] * k
            else:
                lams = [draw(n, rng) for _ in range(k)]
            if covers(product_support(lams)):
                covered += 1
            samples.append([str(x) for x in lams])
        span.set_attribute("covered", covered)
    return CoverExperiment(
        measure=measure, coupling=coupling, k=k, n=n, trials=trials, seed=seed,
        algorithm=ALGORITHMS.get(measure, "custom"), covered=covered, samples=samples,
        provenance=Provenance(seed=seed),
    )
