"""Tier allocation search: effective SNR model, objectives, and ranking.

A candidate allocation (N1..N_{K-1}) deployed between n0 transmit and nk
receive antennas forms the channel (n0, N1, ..., N_{K-1}, nk). The
effective SNR combines per-antenna relay power, path-loss reduction from
splitting the link into K hops, and the per-hop amplifier normalization:

    q = K^alpha * ptilde^(K-1) / (n0 * N1 * ... * N_{K-2})

with ptilde^(K-1) = c * p0 * p^(K-1). Parts are placed in non-decreasing
order so the largest tier sits last, which minimizes the denominator and
therefore maximizes q for the same multiset of parts.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from . import bounds
from .channel import CapacityEstimate, ChannelSpec, SnrValue, mc_ergodic_capacity
from .errors import NumericFailure
from .partitions import (
    PartitionCandidate,
    asymptotic_candidates,
    direct_candidate,
    display_index,
    enumerate_partitions,
    reduced_candidates,
)

METHODS = ("upper", "lower", "mc")
SEARCHES = ("full", "reduced", "direct", "combined")

DEFAULT_SAMPLES = 20_000
DEFAULT_SEED = 42


@dataclass(frozen=True)
class PowerModel:
    """Physical link parameters, all linear scale.

    p is the per-UAV-antenna transmit power, p0 the per-user power, c the
    end-to-end attenuation constant (absorbs the total distance), and
    alpha the path-loss exponent.
    """

    p: float
    p0: float = 1.0
    c: float = 1.0
    alpha: float = 2.0

    def __post_init__(self):
        for name in ("p", "p0", "c"):
            v = float(getattr(self, name))
            if not (v > 0.0 and math.isfinite(v)):
                raise ValueError(f"{name} must be finite and positive, got {v!r}")
            object.__setattr__(self, name, v)
        alpha = float(self.alpha)
        if not 1.5 <= alpha <= 6.0:
            raise ValueError(f"alpha must lie in [1.5, 6], got {alpha}")
        if not 2.0 <= alpha <= 4.0:
            warnings.warn(
                f"path-loss exponent {alpha} is outside the typical range [2, 4]",
                stacklevel=2,
            )
        object.__setattr__(self, "alpha", alpha)

    def log_gain(self, tiers: int) -> float:
        """ln of c * p0 * p^(K-1) for a K-tier deployment."""
        return math.log(self.c * self.p0) + (tiers - 1) * math.log(self.p)


@dataclass(frozen=True)
class RankedCandidate:
    candidate: PartitionCandidate
    tier_count: int
    snr: SnrValue
    objective: float
    estimate: Optional[CapacityEstimate] = None


@dataclass(frozen=True)
class OptimizationResult:
    """Candidates ranked by objective, best first."""

    ranked: tuple[RankedCandidate, ...]
    method: str
    search: str
    tiebreak_trace: tuple[str, ...]

    @property
    def best(self) -> RankedCandidate:
        return self.ranked[0]


def order_parts_for_power(candidate: PartitionCandidate, n0: int, nk: int) -> tuple[int, ...]:
    """Physical tier order for the SNR model.

    The last relay tier is excluded from the amplifier denominator, so the
    largest part goes last; order among the rest does not change the
    product. Canonical non-decreasing order satisfies both.
    """
    return tuple(sorted(candidate.parts))


def assemble_spec(candidate: PartitionCandidate, n0: int, nk: int) -> ChannelSpec:
    """Channel dimensions for a deployed candidate."""
    return ChannelSpec((int(n0), *order_parts_for_power(candidate, n0, nk), int(nk)))


def effective_snr(candidate: PartitionCandidate, n0: int, nk: int, power: PowerModel) -> SnrValue:
    """Effective SNR of the deployed candidate, computed in log domain so
    intermediate powers cannot overflow."""
    if n0 < 1 or nk < 1:
        raise ValueError("antenna counts must be >= 1")
    parts = order_parts_for_power(candidate, n0, nk)
    k = len(parts) + 1
    log_q = power.alpha * math.log(k) + power.log_gain(k)
    log_q -= math.log(n0) + math.fsum(math.log(x) for x in parts[:-1])
    q = math.exp(log_q)
    if not math.isfinite(q) or q <= 0.0:
        raise NumericFailure(f"effective SNR out of range (ln q = {log_q:.1f})")
    return SnrValue(q)


def objective_upper(candidate, n0, nk, power: PowerModel) -> float:
    """Mean-channel capacity bound at the candidate's effective SNR."""
    return bounds.upper_bound(assemble_spec(candidate, n0, nk), effective_snr(candidate, n0, nk, power))


def objective_lower(candidate, n0, nk, power: PowerModel) -> float:
    """Harmonic-sum capacity lower bound at the candidate's effective SNR."""
    return bounds.lower_bound(assemble_spec(candidate, n0, nk), effective_snr(candidate, n0, nk, power))


def objective_mc(
    candidate,
    n0,
    nk,
    power: PowerModel,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> CapacityEstimate:
    """Monte Carlo capacity of the deployed candidate.

    The same (seed, samples) pair is reused for every candidate so a run
    is reproducible end to end.
    """
    if samples < 100:
        raise ValueError("Monte Carlo objective needs at least 100 samples")
    spec = assemble_spec(candidate, n0, nk)
    return mc_ergodic_capacity(spec, effective_snr(candidate, n0, nk, power), samples, seed, workers)


def _candidate_set(m: int, n0: int, nk: int, search: str) -> list[PartitionCandidate]:
    if search == "full":
        return enumerate_partitions(m)
    if search == "reduced":
        return reduced_candidates(m, n0, nk)
    if search == "direct":
        return [direct_candidate(m, n0, nk)]
    if search == "combined":
        cands = reduced_candidates(m, n0, nk)
        present = {c.parts for c in cands}
        cands += [a for a in asymptotic_candidates(m) if a.parts not in present]
        return cands
    raise ValueError(f"search must be one of {SEARCHES}, got {search!r}")


def optimize(
    m: int,
    n0: int,
    nk: int,
    power: PowerModel,
    method: str = "lower",
    search: str = "combined",
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> OptimizationResult:
    """Score every candidate of the chosen search set and rank them.

    Ranking is by objective, descending. Exact ties are broken toward
    fewer tiers, then lexicographically smallest parts; with the Monte
    Carlo objective, adjacent candidates closer than twice their combined
    standard error are flagged in the tie-break trace instead of being
    re-ordered.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    scored = []
    for cand in _candidate_set(int(m), int(n0), int(nk), search):
        snr = effective_snr(cand, n0, nk, power)
        estimate = None
        if method == "mc":
            estimate = objective_mc(cand, n0, nk, power, samples, seed, workers)
            objective = estimate.mean
        elif method == "lower":
            objective = bounds.lower_bound(assemble_spec(cand, n0, nk), snr)
        else:
            objective = bounds.upper_bound(assemble_spec(cand, n0, nk), snr)
        scored.append(
            RankedCandidate(cand, cand.tier_count, snr, objective, estimate)
        )
    ranked = sorted(scored, key=lambda r: (-r.objective, r.tier_count, r.candidate.parts))

    trace = []
    for a, b in zip(ranked, ranked[1:]):
        if a.objective == b.objective:
            trace.append(
                f"exact tie {a.candidate.parts} vs {b.candidate.parts}: "
                "kept fewer tiers, then lexicographic order"
            )
        elif method == "mc":
            margin = 2.0 * math.hypot(a.estimate.stderr, b.estimate.stderr)
            if a.objective - b.objective <= margin:
                trace.append(
                    f"near tie {a.candidate.parts} vs {b.candidate.parts}: "
                    f"gap {a.objective - b.objective:.4g} within 2x combined stderr {margin:.4g}"
                )
    return OptimizationResult(tuple(ranked), method, search, tuple(trace))


def grid_cell(index: int, cols: int = 8) -> tuple[int, int]:
    """Antenna pair for one sweep cell: n0 = floor((i-1)/cols)+1 and
    nk = ((i-1) mod cols)+1."""
    index = int(index)
    if index < 1:
        raise ValueError("cell index starts at 1")
    return (index - 1) // cols + 1, (index - 1) % cols + 1


def sweep_grid(
    m: int,
    power: PowerModel,
    method: str = "lower",
    search: str = "combined",
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    rows: int = 8,
    cols: int = 8,
    workers: int = 1,
) -> list[dict]:
    """Optimize every (n0, nk) cell of a rows x cols antenna grid.

    Returns one record per cell; failures land in the record's `error`
    field without aborting the sweep. The display_index column labels the
    winning allocation when the budget is 10, matching the customary
    ordering of the 42 allocations of that budget.
    """
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be >= 1")
    records = []
    for idx in range(1, rows * cols + 1):
        n0, nk = grid_cell(idx, cols)
        rec: dict = {
            "cell": idx,
            "n0": n0,
            "nk": nk,
            "parts": None,
            "tier_count": None,
            "q_db": None,
            "objective": None,
            "mc_stderr": None,
            "display_index": None,
            "error": "",
        }
        try:
            result = optimize(m, n0, nk, power, method, search, samples, seed, workers)
            best = result.best
            rec["parts"] = best.candidate.parts
            rec["tier_count"] = best.tier_count
            rec["q_db"] = best.snr.db
            rec["objective"] = best.objective
            if best.estimate is not None:
                rec["mc_stderr"] = best.estimate.stderr
            if m == 10:
                rec["display_index"] = display_index(best.candidate.parts, m)
        except (ValueError, NumericFailure) as exc:
            rec["error"] = str(exc)
        records.append(rec)
    return records
