"""Statistics for tossing points uniformly at random onto a block of pixels.

If n points land independently and uniformly on p pixels, two or more points
on the same pixel collide and only one pixel lights up. This module gives:

- the exact distribution of the collision count k (``collision_pmf``),
- a brute-force enumeration oracle for that distribution (``brute_force_pmf``),
- the closed-form expected number of lit pixels (``expected_occupied``),
- the inverse problem, how many points produce a wanted lit-pixel count
  (``inverse_occupancy``),
- the largest uniform sampling fraction that keeps a displayed density ratio
  within a tolerated decay (``uniform_ratio_for_decay``).

The collision pmf is computed exactly: with m = n - k distinct occupied
pixels, the number of assignments is C(p, m) * Surj(n, m), where
Surj(n, m) = m! * S(n, m) counts the surjections from n points onto m chosen
pixels (S is the Stirling number of the second kind). Dividing by p^n gives
Pr(k). All of this is done in big-integer rationals and converted to floats
only at the edges; the alternating-sum form of Surj is catastrophically
unstable in floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DecayUnachievableError, SizeLimitError

#: Exact-arithmetic limits for collision_pmf. Beyond these the big-integer
#: work (p^n has n*log2(p) bits) stops being interactive.
MAX_EXACT_POINTS = 512
MAX_EXACT_PIXELS = 4096

#: brute_force_pmf enumerates all p^n assignments; keep that countable.
MAX_BRUTE_FORCE_ASSIGNMENTS = 10_000_000


@dataclass(frozen=True)
class TossParams:
    """n points tossed uniformly at random onto p pixels."""

    n: int
    p: int

    def __post_init__(self):
        if int(self.n) != self.n or int(self.p) != self.p:
            raise ValueError("point and pixel counts must be integers")
        if self.p < 1:
            raise ValueError(f"pixel count must be >= 1, got {self.p}")
        if self.n < 0:
            raise ValueError(f"point count must be >= 0, got {self.n}")


@dataclass(frozen=True)
class CollisionPmf:
    """Exact distribution of the collision count k for one toss.

    ``mass`` maps each k with positive probability to an exact rational
    probability. For n >= 1 the support is [max(0, n - p), n - 1]; fewer
    collisions than n - p are impossible and k >= n never happens.
    """

    params: TossParams
    mass: dict[int, Fraction]

    def prob(self, k: int) -> Fraction:
        """Pr(exactly k collisions); zero for k outside the support."""
        return self.mass.get(k, Fraction(0))

    def support(self) -> list[int]:
        return sorted(self.mass)

    def total(self) -> Fraction:
        return sum(self.mass.values(), Fraction(0))

    def mean(self) -> float:
        """E[k] as a float (computed exactly, converted once)."""
        return float(sum(Fraction(k) * w for k, w in self.mass.items()))


@dataclass(frozen=True)
class OccupancySummary:
    """Expected occupied / colliding / free breakdown of one toss.

    Fractions follow the axes of the collision curves: collisions are
    reported relative to the point count n, occupied and free pixels
    relative to the pixel count p.
    """

    params: TossParams
    expected_occupied: float
    expected_collisions: float
    expected_free: float
    occupied_fraction: float
    collision_fraction: float
    free_fraction: float


@lru_cache(maxsize=8)
def _stirling_row(n: int) -> tuple[int, ...]:
    """Row n of the Stirling-second-kind triangle, S(n, 0..n), exact."""
    row = [1]  # S(0, 0)
    for i in range(1, n + 1):
        prev = row
        row = [0] * (i + 1)
        for m in range(1, i + 1):
            row[m] = m * prev[m] + prev[m - 1] if m < i else 1
        # S(i, i) = 1 handled above; S(i, 0) = 0 for i >= 1
    return tuple(row)


def collision_pmf(params: TossParams) -> CollisionPmf:
    """Exact pmf of the collision count for n points on p pixels.

    count(k) = C(p, n - k) * (n - k)! * S(n, n - k) assignments show exactly
    k collisions; Pr(k) = count(k) / p^n. Raises SizeLimitError beyond
    (n, p) = (512, 4096).
    """
    n, p = params.n, params.p
    if n > MAX_EXACT_POINTS or p > MAX_EXACT_PIXELS:
        raise SizeLimitError(
            f"collision_pmf supports n <= {MAX_EXACT_POINTS} and "
            f"p <= {MAX_EXACT_PIXELS}, got n={n}, p={p}"
        )
    if n == 0:
        return CollisionPmf(params, {0: Fraction(1)})
    total = p**n
    stirling = _stirling_row(n)
    mass = {}
    for m in range(1, min(n, p) + 1):  # m distinct occupied pixels
        count = math.comb(p, m) * math.factorial(m) * stirling[m]
        mass[n - m] = Fraction(count, total)
    return CollisionPmf(params, mass)


def brute_force_pmf(params: TossParams) -> CollisionPmf:
    """Collision pmf by enumerating all p^n point-to-pixel assignments.

    Independent oracle for collision_pmf; only feasible for tiny (n, p).
    """
    n, p = params.n, params.p
    if n == 0:
        return CollisionPmf(params, {0: Fraction(1)})
    total = p**n
    if total > MAX_BRUTE_FORCE_ASSIGNMENTS:
        raise SizeLimitError(
            f"brute force would enumerate {total} assignments "
            f"(limit {MAX_BRUTE_FORCE_ASSIGNMENTS})"
        )
    codes = np.arange(total, dtype=np.int64)
    digits = np.empty((total, n), dtype=np.int16)
    for i in range(n):
        digits[:, i] = (codes // p**i) % p
    digits.sort(axis=1)
    distinct = 1 + (np.diff(digits, axis=1) != 0).sum(axis=1)
    collisions = n - distinct
    counts = np.bincount(collisions, minlength=n)
    mass = {
        int(k): Fraction(int(c), total) for k, c in enumerate(counts) if c
    }
    return CollisionPmf(params, mass)


def expected_occupied(n: int, p: int) -> float:
    """Expected number of distinct occupied pixels: p * (1 - (1 - 1/p)^n).

    Each pixel stays dark with probability (1 - 1/p)^n; linearity of
    expectation does the rest. Valid for every n, p with no combinatorics.
    """
    if p < 1:
        raise ValueError(f"pixel count must be >= 1, got {p}")
    if n < 0:
        raise ValueError(f"point count must be >= 0, got {n}")
    if n == 0:
        return 0.0
    if p == 1:
        return 1.0
    return p * -math.expm1(n * math.log1p(-1.0 / p))


def occupancy_summary(params: TossParams) -> OccupancySummary:
    """Expected occupied, colliding and free counts with their fractions."""
    n, p = params.n, params.p
    occupied = expected_occupied(n, p)
    collisions = n - occupied
    free = p - occupied
    return OccupancySummary(
        params=params,
        expected_occupied=occupied,
        expected_collisions=collisions,
        expected_free=free,
        occupied_fraction=occupied / p,
        collision_fraction=collisions / n if n else 0.0,
        free_fraction=free / p,
    )


def inverse_occupancy(target: float, p: int) -> int | None:
    """Point count whose expected occupancy is closest to ``target``.

    Returns the non-negative integer n minimizing
    |expected_occupied(n, p) - target|, breaking ties toward the smaller n
    (removing more points is the conservative declutter choice). A target of
    exactly p is unreachable at any finite n and yields None, meaning
    "retain all points".
    """
    if p < 1:
        raise ValueError(f"pixel count must be >= 1, got {p}")
    if not 0 <= target <= p:
        raise ValueError(f"target must lie in [0, {p}], got {target}")
    if target == p:
        return None
    if target == 0:
        return 0
    hi = 1
    while expected_occupied(hi, p) < target:
        hi *= 2
    lo = hi // 2  # expected_occupied(lo) < target <= expected_occupied(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if expected_occupied(mid, p) < target:
            lo = mid
        else:
            hi = mid
    below, above = hi - 1, hi
    if abs(expected_occupied(below, p) - target) <= abs(
        expected_occupied(above, p) - target
    ):
        return below
    return above


def _round_half_up(num: int, den: int) -> int:
    """floor(num/den + 1/2) in exact integer arithmetic."""
    return (2 * num + den) // (2 * den)


def uniform_ratio_for_decay(
    n1: int, n2: int, p: int, max_decay: float
) -> float:
    """Largest uniform sampling fraction keeping a density ratio readable.

    Two areas hold n1 < n2 points; their true density ratio is n2/n1 but the
    displayed ratio of lit pixels is smaller because the denser area
    saturates. Scanning fractions s on the grid j/n2 (so retained counts are
    round(s*n2) and round(s*n1), half-up), returns the largest s whose
    displayed ratio

        expected_occupied(round(s*n2), p) / expected_occupied(round(s*n1), p)

    still reaches (n2/n1) * (1 - max_decay). Returns 1.0 when the unsampled
    data already qualifies. Raises DecayUnachievableError, carrying the
    smallest achievable decay, when no fraction on the grid qualifies.
    """
    if not 0 < n1 < n2:
        raise ValueError(f"need 0 < n1 < n2, got n1={n1}, n2={n2}")
    if not 0 < max_decay < 1:
        raise ValueError(f"max_decay must lie in (0, 1), got {max_decay}")
    true_ratio = n2 / n1
    bound = true_ratio * (1.0 - max_decay)

    def displayed(j: int) -> float | None:
        m1 = _round_half_up(j * n1, n2)
        if m1 < 1:
            return None
        return expected_occupied(j, p) / expected_occupied(m1, p)

    # The displayed ratio decays toward saturation but the retained-count
    # rounding adds a sawtooth, so walk the grid from s = 1 downward and
    # return the first fraction that qualifies; that is exactly the largest.
    best = 0.0
    for j in range(n2, 0, -1):
        ratio = displayed(j)
        if ratio is None:
            break
        if ratio >= bound:
            return j / n2
        best = max(best, ratio)
    raise DecayUnachievableError(smallest_decay=1.0 - best / true_ratio)
