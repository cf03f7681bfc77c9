"""
Certificate builders for the constructive covering lemmas.

Each builder returns a Certificate whose leaves are trivial-pair identities,
symmetric-cube axioms or oracle-checked relations, glued together with the
semigroup rules from certificates.py.
"""

import logging
from typing import Literal, Optional

from .certificates import (
    Certificate,
    axiom_oracle,
    axiom_symmetric_cube,
    axiom_trivial_pair,
    combine_hsum,
    combine_vsum,
    conjugate_pair,
    hsum_all,
    permute,
    splice,
    vsum_all,
)
from .characters import partitions_of
from .diagram import (
    EMPTY,
    Partition,
    as_partition,
    blockwise_distance,
    column,
    hook,
    hsum,
    krect_decompose,
    rect,
    row,
    shared_row_lengths,
    staircase,
    staircase_decompose,
    vsum,
)
from .errors import InternalInconsistencyError, InvalidArgumentError, PreconditionError
from .kronecker import kronecker, tensor_support
from .telemetry import get_tracer

logger = logging.getLogger(__name__)
tracer = get_tracer()

Variant = Literal["two_row", "hook"]


def _positive(*values: int) -> None:
    if any(v < 1 for v in values):
        raise InvalidArgumentError(f"parameters must be positive integers, got {values}")


def lemma_rectcube(a: int, b: int, c: int = 0) -> Certificate:
    """c(Rect(ab+c, a), Rect(ab+c, a), Rect(ab, a) +_H 1_{ac})."""
    _positive(a, b)
    if c < 0:
        raise InvalidArgumentError("c must be nonnegative")
    cube = axiom_symmetric_cube(rect(a, a))
    body = hsum_all([cube] * b)
    if c == 0:
        return body
    return combine_hsum(body, axiom_trivial_pair(rect(c, a)))


def lemma_rectsquare(x: int, y: int, z: int) -> Certificate:
    """c(Rect(xyz, xz), Rect(xyz, xz), Rect(yz^2, x^2))."""
    _positive(x, y, z)
    square = rect(x, x)
    base = conjugate_pair(axiom_trivial_pair(square), 1, 2)
    band = hsum_all([base] * (y * z))
    return vsum_all([band] * z, {0, 1})


def lemma_rect_squaring(width: int, height: int) -> list[Certificate]:
    """Chain of tensor squares Rect(W, H) -> Rect(W/H, H^2) -> ...

    Each step is rectsquare with z = 1 and needs H | W; the chain stops before
    the next rectangle would be taller than it is wide.
    """
    _positive(width, height)
    if width < height:
        raise PreconditionError(f"Rect({width},{height}) is taller than it is wide")
    steps = []
    w, h = width, height
    while w % h == 0 and w // h >= h * h:
        steps.append(lemma_rectsquare(h, w // h, 1))
        w, h = w // h, h * h
    return steps


def lemma_squarecube(k: int) -> tuple[Certificate, Partition]:
    """c(Rect(2k,2k) x3, witness) where the witness has 2k-1 distinct rows.

    mu_j = j copies of (4) plus k-j copies of (2,2), horizontally summed, is
    (2k+2j, 2k-2j); vertically summing the k relations on all four positions
    gives the witness.
    """
    _positive(k)
    square = rect(2, 2)
    with_row = axiom_oracle((square, square, square, row(4)))
    with_square = axiom_oracle((square, square, square, square))
    bands = [hsum_all([with_row] * j + [with_square] * (k - j)) for j in range(1, k + 1)]
    cert = vsum_all(bands, {0, 1, 2, 3})
    return cert, cert.entries[3]


def lemma_hookidempotent(a: int, b: int) -> Certificate:
    """c(Hook(a,b), Hook(a,b), Hook(max(a,b), min(a,b)))."""
    _positive(a, b)
    if a < b:
        return conjugate_pair(lemma_hookidempotent(b, a), 0, 1)
    cube = axiom_symmetric_cube(hook(b, b))
    if a == b:
        return cube
    return combine_hsum(cube, axiom_trivial_pair(row(a - b)))


def lemma_hooksquare(x: int, y: int, m: int) -> Certificate:
    """c(Hook(x,y), Hook(x,y), Rect(2, m-1) +_H 1_{x+y-2m+1})."""
    _positive(x, y, m)
    if x < m or y < m:
        raise PreconditionError(f"hooksquare needs x, y >= m, got x={x}, y={y}, m={m}")
    if m == 1:
        return axiom_trivial_pair(hook(x, y))
    pair = axiom_trivial_pair(column(m - 1))
    core = combine_hsum(permute(pair, (0, 2, 1)), permute(pair, (2, 0, 1)))
    if x > m:
        core = combine_hsum(core, axiom_trivial_pair(row(x - m)))
    return combine_vsum(core, axiom_trivial_pair(column(y - m + 1)), {0, 1})


def lemma_pieri(mu: Partition, k: int, variant: Variant = "two_row") -> Certificate:
    """Move a horizontal strip of k boxes.

    two_row: c((n-k, k), mu +_H 1_k, mu +_V 1_k)
    hook:    c(Hook(n-k+1, k), mu +_H 1_k, mu +_H 1^k)
    """
    mu = as_partition(mu)
    _positive(k)
    if not mu:
        raise PreconditionError("pieri needs a nonempty mu")
    base = permute(axiom_trivial_pair(mu), (2, 0, 1))
    if variant == "two_row":
        if mu.size < k:
            raise PreconditionError(f"(n-k, k) is not a partition: |mu|={mu.size} < k={k}")
        return combine_vsum(base, axiom_trivial_pair(row(k)), {0, 2})
    if variant == "hook":
        return combine_hsum(base, permute(axiom_trivial_pair(column(k)), (0, 2, 1)))
    raise InvalidArgumentError(f"unknown pieri variant {variant!r}")


def pieri_chain_target(n: int, k: int, h: int, variant: Variant) -> Partition:
    if variant == "two_row":
        return vsum(row(n - h * k), rect(k, h))
    return hsum(rect(h, k), row(n - h * k))


def lemma_pieri_chain(n: int, k: int, h: int, variant: Variant = "two_row") -> Certificate:
    """c(lam, ..., lam (h times), 1_n, target) for the two-row or hook lam.

    Iterates Pieri steps starting from 1_n: each step turns nu_i in lam^i into
    nu_{i+1} in lam^{i+1}, and consecutive steps are spliced along nu.
    """
    _positive(n, k, h)
    if variant == "two_row" and n < (h + 1) * k:
        raise PreconditionError(f"two-row chain needs n >= (h+1)k, got n={n}, h={h}, k={k}")
    if variant == "hook" and (n < h * k or n <= k):
        raise PreconditionError(f"hook chain needs n >= hk and n > k, got n={n}, h={h}, k={k}")
    nu = row(n)
    chain: Optional[Certificate] = None
    for _ in range(h):
        mu = Partition((nu.rows[0] - k,) + nu.rows[1:])
        step = lemma_pieri(mu, k, variant)
        # step is c(lam, nu, nu_next)
        if chain is None:
            chain = step
        else:
            chain = splice(chain, chain.conclusion.arity - 1, step, 1)
        nu = step.entries[2]
    # chain is c(lam, 1_n, lam, ..., lam, target); move 1_n next to the target
    arity = chain.conclusion.arity
    order = [0] + list(range(2, arity - 1)) + [1, arity - 1]
    result = permute(chain, order)
    expected = pieri_chain_target(n, k, h, variant)
    if result.entries[-1] != expected:
        raise InternalInconsistencyError(f"pieri chain ended at {result.entries[-1]}, expected {expected}")
    return result


def lemma_neartensor(lam: Partition, lam_t: Partition) -> tuple[Certificate, Partition]:
    """Find theta |- 2d with c(lam, lam_t, 1_{n-2d} +_H theta), d the blockwise distance."""
    lam, lam_t = as_partition(lam), as_partition(lam_t)
    d = blockwise_distance(lam, lam_t)
    n = lam.size
    if 2 * d > n:
        raise PreconditionError(f"blockwise distance {d} exceeds n/2 = {n / 2}")
    with tracer.start_as_current_span("lemma_neartensor") as span:
        span.set_attribute("n", n)
        span.set_attribute("distance", d)
        for theta in partitions_of(2 * d):
            target = hsum(row(n - 2 * d), theta)
            if kronecker(lam, lam_t, target) > 0:
                span.set_attribute("theta", str(theta))
                return axiom_oracle((lam, lam_t, target)), theta
    raise InternalInconsistencyError(f"no theta |- {2 * d} found for {lam}, {lam_t}")


def lemma_nearsharedrows(
    lam: Partition, lam_t: Partition, r: int, nu_choice: Partition
) -> tuple[Certificate, Partition]:
    """c(lam, lam_t, 1_m +_H theta +_H nu_choice) for nu_choice in rho_r x rho_r.

    The r largest shared row lengths form mu = rho_r +_H gamma; the remaining
    rows chi, chi_t are joined by lemma_neartensor, and m = n - C(r+1, 2) - 2d
    with d = d(chi, chi_t).
    """
    lam, lam_t, nu_choice = as_partition(lam), as_partition(lam_t), as_partition(nu_choice)
    _positive(r)
    if lam.size != lam_t.size:
        raise InvalidArgumentError("lam and lam_t must have equal sizes")
    shared = shared_row_lengths([lam, lam_t])
    if len(shared) < r:
        raise PreconditionError(f"{lam} and {lam_t} share {len(shared)} distinct row lengths, fewer than {r}")
    chosen = shared[:r]
    chi, gamma = staircase_decompose(lam, r, chosen)
    chi_t, _ = staircase_decompose(lam_t, r, chosen)
    stair = staircase(r)
    if nu_choice.size != stair.size:
        raise PreconditionError(f"{nu_choice} is not a partition of {stair.size}")
    if nu_choice not in tensor_support(stair, stair):
        raise PreconditionError(f"{nu_choice} is not in the tensor square of {stair}")

    shared_part = axiom_oracle((stair, stair, nu_choice))
    if gamma:
        shared_part = combine_hsum(shared_part, axiom_trivial_pair(gamma))
    if not chi:
        return shared_part, EMPTY
    rest, theta = lemma_neartensor(chi, chi_t)
    return combine_vsum(shared_part, rest, {0, 1}), theta


def lemma_krectsinside(lam: Partition, k: int) -> Certificate:
    """c(lam, lam, Rect(k * sum h_i, k) +_H 1_{sum |nu_i|}) from krect_decompose."""
    lam = as_partition(lam)
    _positive(k)
    if not lam:
        raise InvalidArgumentError("krectsinside needs a nonempty partition")
    bands = []
    for block in krect_decompose(lam, k):
        parts = []
        if block.h:
            parts.append(lemma_rectcube(k, block.h))
        if block.nu:
            parts.append(axiom_trivial_pair(block.nu))
        bands.append(hsum_all(parts))
    cert = vsum_all(bands, {0, 1})
    if cert.entries[0] != lam:
        raise InternalInconsistencyError(f"krect reassembly gave {cert.entries[0]}, expected {lam}")
    return cert


def semigroup_example() -> Certificate:
    """c((3,2,1),(6),(3,2,1)) +_H c((4),(1^4),(1^4)) = c((7,2,1),(7,1,1,1),(4,3,2,1))."""
    left = permute(axiom_trivial_pair(staircase(3)), (0, 2, 1))
    right = permute(axiom_trivial_pair(column(4)), (2, 0, 1))
    return combine_hsum(left, right)


BUILDERS = {
    "rectcube": lemma_rectcube,
    "rectsquare": lemma_rectsquare,
    "squarecube": lambda k: lemma_squarecube(k)[0],
    "hookidempotent": lemma_hookidempotent,
    "hooksquare": lemma_hooksquare,
    "pieri": lemma_pieri,
    "pieri-chain": lemma_pieri_chain,
    "neartensor": lambda lam, lam_t: lemma_neartensor(lam, lam_t)[0],
    "nearsharedrows": lambda lam, lam_t, r, nu: lemma_nearsharedrows(lam, lam_t, r, nu)[0],
    "krectsinside": lemma_krectsinside,
    "semigroup-example": semigroup_example,
}
