"""
Continuous Young diagrams and the rescaled distance between a partition and one.

Shapes are stored as column-height functions h(x), x >= 0, in English
coordinates after rescaling both axes by 1/sqrt(n), so every shape here has
area 1.
"""

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate, optimize

from .diagram import Partition, conjugate
from .errors import InvalidArgumentError

DEFAULT_RESOLUTION = 1e-3
DEFAULT_TOLERANCE = 1e-6

UNIFORM_RATE = math.pi / math.sqrt(6)


@dataclass(frozen=True)
class ContinuousShape:
    name: str
    height: Callable[[float], float] = field(compare=False)
    box: float
    resolution: float = DEFAULT_RESOLUTION
    tolerance: float = DEFAULT_TOLERANCE
    breakpoints: tuple[float, ...] = ()

    def heights(self, xs: np.ndarray) -> np.ndarray:
        return np.array([self.height(float(x)) for x in xs], dtype=float)

    def area(self) -> float:
        points = [b for b in self.breakpoints if 0 < b < self.box] or None
        value, _ = integrate.quad(
            self.height, 0.0, self.box, epsabs=self.tolerance / 10,
            limit=max(500, 4 * len(points or ())), points=points,
        )
        return value

    def check_area(self) -> bool:
        return abs(self.area() - 1.0) <= self.tolerance


def lsvk_omega(u: float) -> float:
    """The Plancherel limit curve in rotated coordinates (|u| >= 2 is the boundary |u|)."""
    if abs(u) >= 2:
        return abs(u)
    return (2 / math.pi) * (u * math.asin(u / 2) + math.sqrt(4 - u * u))


def _lsvk_height(x: float) -> float:
    if x >= 2:
        return 0.0

    def excess(y: float) -> float:
        return lsvk_omega(x - y) - x - y

    if excess(0.0) <= 0:
        return 0.0
    if excess(2.0) >= 0:
        return 2.0
    return optimize.brentq(excess, 0.0, 2.0, xtol=1e-12)


def lsvk_shape(resolution: float = DEFAULT_RESOLUTION, tolerance: float = DEFAULT_TOLERANCE) -> ContinuousShape:
    return ContinuousShape("lsvk", _lsvk_height, 2.0, resolution, tolerance)


def _uniform_height(x: float) -> float:
    if x <= 0:
        return math.inf
    tail = -math.expm1(-UNIFORM_RATE * x)
    return -math.log(tail) / UNIFORM_RATE


def uniform_limit_shape(
    resolution: float = DEFAULT_RESOLUTION, tolerance: float = DEFAULT_TOLERANCE
) -> ContinuousShape:
    """exp(-c x) + exp(-c y) = 1, truncated where the tail mass drops below tolerance."""
    box = math.ceil(-math.log(tolerance * UNIFORM_RATE**2 / 10) / UNIFORM_RATE)
    return ContinuousShape("uniform", _uniform_height, float(box), resolution, tolerance)


def shape_from_partition(
    p: Partition, resolution: float = DEFAULT_RESOLUTION, tolerance: float = DEFAULT_TOLERANCE
) -> ContinuousShape:
    """The diagram of p with both axes divided by sqrt(|p|)."""
    if not p:
        raise InvalidArgumentError("cannot rescale the empty partition")
    scale = math.sqrt(p.size)
    cols = conjugate(p).rows

    def height(x: float) -> float:
        j = int(math.floor(x * scale))
        return cols[j] / scale if 0 <= j < len(cols) else 0.0

    box = max(p.width, p.height) / scale
    steps = tuple(j / scale for j in range(1, len(cols)))
    return ContinuousShape(f"diagram{p}", height, box, resolution, tolerance, steps)


def rescaled_shape_distance(p: Partition, shape: ContinuousShape, resolution: float | None = None) -> float:
    """L1 area between the sqrt(n)-rescaled diagram of p and the shape.

    Midpoint rule on a grid of step resolution * box width; the box is widened
    to cover p's first row when that sticks out.
    """
    if not p:
        raise InvalidArgumentError("rescaled_shape_distance needs a nonempty partition")
    resolution = shape.resolution if resolution is None else resolution
    scale = math.sqrt(p.size)
    box = max(shape.box, p.width / scale)
    step = resolution * box
    xs = (np.arange(math.ceil(box / step)) + 0.5) * step
    cols = np.array(conjugate(p).rows, dtype=float) / scale
    idx = np.floor(xs * scale).astype(np.int64)
    ours = np.where(idx < len(cols), cols[np.minimum(idx, len(cols) - 1)], 0.0)
    theirs = np.where(xs < shape.box, shape.heights(xs), 0.0)
    return float(np.sum(np.abs(ours - theirs)) * step)


def shape_from_samples(
    xs, hs, name: str = "sampled", resolution: float = DEFAULT_RESOLUTION, tolerance: float = DEFAULT_TOLERANCE
) -> ContinuousShape:
    """A boundary given by sampled points (x, h(x)), linearly interpolated and 0 past the last x."""
    xs = np.asarray(xs, dtype=float)
    hs = np.asarray(hs, dtype=float)
    if xs.ndim != 1 or xs.shape != hs.shape or len(xs) < 2:
        raise InvalidArgumentError("need at least two (x, h) samples of equal length")
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(hs))):
        raise InvalidArgumentError("samples must be finite")
    if xs[0] < 0 or np.any(np.diff(xs) <= 0):
        raise InvalidArgumentError("sample x values must be nonnegative and strictly increasing")
    if np.any(hs < 0) or np.any(np.diff(hs) > 0):
        raise InvalidArgumentError("sampled heights must be nonnegative and weakly decreasing")

    def height(x: float) -> float:
        return float(np.interp(x, xs, hs, right=0.0))

    return ContinuousShape(name, height, float(xs[-1]), resolution, tolerance, tuple(float(x) for x in xs))
