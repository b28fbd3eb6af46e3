"""Integer partitions of a UAV budget and candidate tier allocations.

Candidates are canonical (non-decreasing parts). The full enumeration is
guarded at budgets above 60 because the partition count grows like
exp(pi*sqrt(2M/3)).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import SearchBudgetExceeded

MAX_ENUMERATION_BUDGET = 60


class Provenance(str, enum.Enum):
    """How a candidate entered the search set."""

    FULL = "full"
    REDUCED = "reduced"
    DIRECT = "direct"
    ASYM_LOW_SNR = "asym_low_snr"
    ASYM_HIGH_SNR = "asym_high_snr"


@dataclass(frozen=True)
class PartitionCandidate:
    """A tier allocation: positive parts in non-decreasing order, summing
    to the budget."""

    parts: tuple[int, ...]
    budget: int
    provenance: Provenance = Provenance.FULL

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive integers, got {parts}")
        if list(parts) != sorted(parts):
            raise ValueError(f"parts must be non-decreasing, got {parts}")
        if sum(parts) != self.budget:
            raise ValueError(f"parts {parts} do not sum to budget {self.budget}")
        object.__setattr__(self, "parts", parts)

    @property
    def tier_count(self) -> int:
        """Number of component matrices when the allocation is deployed
        between a fixed transmit and receive side."""
        return len(self.parts) + 1


def _ascending_partitions(m: int) -> Iterator[tuple[int, ...]]:
    # Kelleher's accelerated ascending-composition generator
    a = [0] * (m + 1)
    k = 1
    a[1] = m
    while k != 0:
        x = a[k - 1] + 1
        y = a[k] - 1
        k -= 1
        while x <= y:
            a[k] = x
            y -= x
            k += 1
        a[k] = x + y
        yield tuple(a[: k + 1])


def _check_budget(m: int) -> int:
    m = int(m)
    if m < 1:
        raise ValueError(f"budget must be >= 1, got {m}")
    return m


@lru_cache(maxsize=None)
def _enumerated(m: int) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(_ascending_partitions(m), key=lambda p: (-len(p), p)))


def enumerate_partitions(m: int) -> list[PartitionCandidate]:
    """All partitions of m, most parts first, then lexicographic."""
    m = _check_budget(m)
    if m > MAX_ENUMERATION_BUDGET:
        raise SearchBudgetExceeded(
            f"enumerating partitions of {m} exceeds the budget of "
            f"{MAX_ENUMERATION_BUDGET} (about 1e6 partitions)"
        )
    return [PartitionCandidate(p, m, Provenance.FULL) for p in _enumerated(m)]


def count_partitions(m: int) -> int:
    """Exact partition count p(m) by the pentagonal-number recurrence."""
    m = _check_budget(m)
    table = [1] + [0] * m
    for n in range(1, m + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * table[n - g1]
            if g2 <= n:
                total += sign * table[n - g2]
            k += 1
        table[n] = total
    return table[m]


def hardy_ramanujan_estimate(m: int) -> float:
    """Asymptotic partition-count estimate exp(pi*sqrt(2m/3))/(4*sqrt(3)*m)."""
    m = _check_budget(m)
    return math.exp(math.pi * math.sqrt(2.0 * m / 3.0)) / (4.0 * math.sqrt(3.0) * m)


def optimal_tier_count(m: int, n0: int, nk: int) -> int:
    """Tier count that fills every relay tier up to the end-side minimum:
    max(1 + floor(m / min(n0, nk)), 2)."""
    m = _check_budget(m)
    if n0 < 1 or nk < 1:
        raise ValueError("antenna counts must be >= 1")
    return max(1 + m // min(n0, nk), 2)


def reduced_candidates(m: int, n0: int, nk: int) -> list[PartitionCandidate]:
    """Allocations that fill tiers with b = min(n0, nk) antennas and spread
    the remainder.

    With K from optimal_tier_count and remainder R = m - (K-1)*b, each
    partition (r_1..r_t) of R with t <= K-1 tops up the last t tiers.
    A two-tier result collapses to the single allocation {m}.
    """
    b = min(int(n0), int(nk))
    k = optimal_tier_count(m, n0, nk)
    if k == 2:
        return [PartitionCandidate((m,), m, Provenance.REDUCED)]
    r = m - (k - 1) * b
    if r == 0:
        return [PartitionCandidate((b,) * (k - 1), m, Provenance.REDUCED)]
    out: list[PartitionCandidate] = []
    seen: set[tuple[int, ...]] = set()
    for rp in _enumerated(r):
        t = len(rp)
        if t > k - 1:
            continue
        parts = tuple(sorted([b] * (k - 1 - t) + [b + ri for ri in rp]))
        if parts not in seen:
            seen.add(parts)
            out.append(PartitionCandidate(parts, m, Provenance.REDUCED))
    return out


def direct_candidate(m: int, n0: int, nk: int) -> PartitionCandidate:
    """Single shortcut allocation: fill K-2 tiers with b and put b plus the
    whole remainder on the last tier."""
    b = min(int(n0), int(nk))
    k = optimal_tier_count(m, n0, nk)
    if k == 2:
        return PartitionCandidate((m,), m, Provenance.DIRECT)
    r = m - (k - 1) * b
    parts = tuple(sorted([b] * (k - 2) + [b + r]))
    return PartitionCandidate(parts, m, Provenance.DIRECT)


def asymptotic_candidates(m: int) -> list[PartitionCandidate]:
    """The two SNR-extreme allocations: one antenna per tier (high SNR)
    and a single tier holding everything (low SNR)."""
    m = _check_budget(m)
    high = PartitionCandidate((1,) * m, m, Provenance.ASYM_HIGH_SNR)
    if m == 1:
        return [high]
    low = PartitionCandidate((m,), m, Provenance.ASYM_LOW_SNR)
    return [high, low]


@lru_cache(maxsize=None)
def _display_order(m: int) -> dict[tuple[int, ...], int]:
    # ascending lexicographic order on the descending part lists;
    # all-ones gets index 1 and the single-part allocation comes last
    ordered = sorted(tuple(sorted(p, reverse=True)) for p in _ascending_partitions(m))
    return {p: i + 1 for i, p in enumerate(ordered)}


def display_index(parts, budget: int | None = None) -> int:
    """1-based label of a partition in the display ordering used by sweep
    tables (lexicographic on descending part lists)."""
    parts = tuple(int(p) for p in parts)
    m = sum(parts) if budget is None else int(budget)
    if sum(parts) != m:
        raise ValueError(f"parts {parts} do not sum to budget {m}")
    if m > MAX_ENUMERATION_BUDGET:
        raise SearchBudgetExceeded(f"display ordering is capped at budget {MAX_ENUMERATION_BUDGET}")
    key = tuple(sorted(parts, reverse=True))
    return _display_order(m)[key]
