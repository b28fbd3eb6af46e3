"""Closed-form capacity bounds built from integer harmonic sums.

The ergodic capacity of a product channel is invariant under permutations
of its dimension list, so every formula here permutes the list internally
and lets the smallest dimension play the receive side. All outputs are in
nats per channel use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .channel import ChannelSpec, SnrValue, _as_q

# Euler-Mascheroni constant, 20 significant digits.
EULER_GAMMA = 0.57721566490153286061


@lru_cache(maxsize=None)
def harmonic(n: int) -> float:
    """H_n = sum_{r=1..n} 1/r with H_0 = 0.

    Compensated summation from the smallest term first, so the result is
    the correctly rounded double of the exact rational value.
    """
    n = int(n)
    if n < 0:
        raise ValueError("harmonic numbers need n >= 0")
    return math.fsum(1.0 / r for r in range(n, 0, -1))


def digamma_int(n: int) -> float:
    """Digamma at a positive integer: psi(n) = -gamma + H_{n-1}."""
    n = int(n)
    if n < 1:
        raise ValueError("digamma_int needs n >= 1")
    return harmonic(n - 1) - EULER_GAMMA


class GapFloor(NamedTuple):
    """Asymptotic floors on the upper-minus-lower bound gap."""

    tight: float
    loose: float


@dataclass(frozen=True)
class BoundsReport:
    """Bounds and gap diagnostics for one (channel, SNR) pair."""

    lower: float
    upper: float
    g: float
    gap_floor: GapFloor
    spec: ChannelSpec
    q: SnrValue


def _min_split(spec: ChannelSpec) -> tuple[int, tuple[int, ...]]:
    # smallest dimension designated as the receive side; ties resolved by
    # taking one occurrence (all formulas are invariant to the choice)
    dims = sorted(spec.dims)
    return dims[0], tuple(dims[1:])


def _softplus(x: float) -> float:
    # ln(1 + e^x) without overflow for large x
    if x > 40.0:
        return x
    return math.log1p(math.exp(x))


def g_factor(spec: ChannelSpec) -> float:
    """Normalized harmonic double sum over the non-minimal dimensions.

    g = (1/n0) * sum_k sum_{l=1..n0} H_{N_k - l}, where n0 is the smallest
    dimension and k runs over the remaining ones. Empty inner sums
    (N_k = l) contribute zero.
    """
    n0, rest = _min_split(spec)
    return math.fsum(harmonic(nk - l) for nk in rest for l in range(1, n0 + 1)) / n0


def logdet_moment(spec: ChannelSpec) -> float:
    """Mean of ln det of the smaller Gram: sum_k sum_l psi(N_k - l + 1)."""
    n0, _ = _min_split(spec)
    return n0 * (g_factor(spec) - spec.tier_count * EULER_GAMMA)


def lower_bound(spec: ChannelSpec, q) -> float:
    """Capacity lower bound n0 * ln(1 + q * exp(g - K*gamma)).

    Asymptotically tight as q grows.
    """
    q = _as_q(q)
    if q <= 0.0:
        raise ValueError("SNR must be positive")
    n0, _ = _min_split(spec)
    k = spec.tier_count
    return n0 * _softplus(math.log(q) + g_factor(spec) - k * EULER_GAMMA)


def upper_bound(spec: ChannelSpec, q) -> float:
    """Mean-channel capacity bound n0 * ln(1 + q * prod of other dims)."""
    q = _as_q(q)
    if q <= 0.0:
        raise ValueError("SNR must be positive")
    n0, rest = _min_split(spec)
    return n0 * _softplus(math.log(q) + math.fsum(math.log(nk) for nk in rest))


def gap_floor(spec: ChannelSpec) -> GapFloor:
    """Floors under the asymptotic gap between the two bounds.

    The tight floor sums 1/(2(N_k - l + 1)) over the non-minimal
    dimensions and l = 1..n0; the loose floor is n0 * sum_k 1/(2 N_k).
    """
    n0, rest = _min_split(spec)
    tight = math.fsum(0.5 / (nk - l + 1) for nk in rest for l in range(1, n0 + 1))
    loose = n0 * math.fsum(0.5 / nk for nk in rest)
    return GapFloor(tight=tight, loose=loose)


def high_snr_capacity(spec: ChannelSpec, q) -> float:
    """Large-q capacity asymptote n0*ln(q) + mean log-det."""
    q = _as_q(q)
    if q <= 0.0:
        raise ValueError("SNR must be positive")
    n0, _ = _min_split(spec)
    return n0 * (math.log(q) + g_factor(spec) - spec.tier_count * EULER_GAMMA)


def increment_one_antenna(spec: ChannelSpec, tier: int) -> float:
    """High-SNR capacity gain from growing dimension `tier` by one antenna.

    Equals sum_{l=1..n0} 1/(N_tier + 1 - l). Valid only while the smallest
    dimension stays the smallest; growing a unique minimum changes the
    multiplexing order, so compare high_snr_capacity directly instead.
    """
    k = spec.tier_count
    if not 1 <= tier <= k:
        raise ValueError(f"tier must be in 1..{k}, got {tier}")
    n_t = spec.dims[tier]
    n0 = spec.min_dim()
    if n_t == n0 and spec.dims.count(n0) == 1:
        raise ValueError(
            "growing the unique smallest dimension changes the multiplexing "
            "order; use high_snr_capacity differences instead"
        )
    return math.fsum(1.0 / (n_t + 1 - l) for l in range(1, n0 + 1))


def rect_vs_square_delta(spec: ChannelSpec) -> float:
    """High-SNR capacity surplus of `spec` over the all-square channel.

    Triple sum of 1/(s - l + 1) for each non-minimal dimension N_k,
    l = 1..n0 and s = n0..N_k-1; zero when every dimension equals n0.
    Independent of q because the n0*ln(q) terms cancel.
    """
    n0, rest = _min_split(spec)
    return math.fsum(
        1.0 / (s - l + 1)
        for nk in rest
        for l in range(1, n0 + 1)
        for s in range(n0, nk)
    )


def bounds_report(spec: ChannelSpec, q) -> BoundsReport:
    """Bundle both bounds, the g factor and the gap floors."""
    qv = q if isinstance(q, SnrValue) else SnrValue(float(q))
    return BoundsReport(
        lower=lower_bound(spec, qv),
        upper=upper_bound(spec, qv),
        g=g_factor(spec),
        gap_floor=gap_floor(spec),
        spec=spec.sorted_spec(),
        q=qv,
    )
