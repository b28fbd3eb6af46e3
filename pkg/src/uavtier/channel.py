"""Rayleigh product channel sampling and Monte Carlo capacity estimation.

A channel with dimension list (N0, N1, ..., NK) is the matrix product
Q_K @ ... @ Q_1 where Q_k has shape N_k x N_{k-1} and i.i.d. circularly
symmetric complex Gaussian entries with unit variance per complex entry
(variance 1/2 per real component). Capacity samples are
ln det(I + q * G) on the Gram matrix G of the smaller side, in nats per
channel use.

Every Monte Carlo sample draws from its own counter-based substream
derived from (seed, sample index), so estimates are bit-identical no
matter how the sample loop is scheduled across threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import NumericFailure

_SQRT_HALF = math.sqrt(0.5)

# Relative eigenvalue floor: eigenvalues of the Gram matrix below
# RANK_FLOOR * ||G|| are structural zeros of a rank-deficient product
# (the product cannot have rank above its smallest dimension), and
# negatives beyond the floor mean the Gram lost positive semidefiniteness.
_RANK_FLOOR = 1e-12

# Draws whose smallest Gram eigenvalue sits below this are reported as
# singular by logdet_gram_sample (the sentinel is -inf).
_SINGULAR_EIG = 1e-300

_MAX_SEED = 2**64


@dataclass(frozen=True)
class ChannelSpec:
    """Ordered antenna counts (N0, ..., NK) of a product channel.

    N0 is the transmit side, NK the receive side, and each interior entry
    one relay tier. The number of matrices in the product is K.
    """

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 2:
            raise ValueError("a product channel needs at least two dimensions")
        if any(d < 1 for d in dims):
            raise ValueError(f"all dimensions must be >= 1, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def tier_count(self) -> int:
        """Number of component matrices K."""
        return len(self.dims) - 1

    def min_dim(self) -> int:
        """Smallest dimension; sets the spatial multiplexing order."""
        return min(self.dims)

    def sorted_spec(self) -> "ChannelSpec":
        """Permuted view with dimensions in non-decreasing order."""
        return ChannelSpec(tuple(sorted(self.dims)))

    def dim_gaps(self) -> tuple[int, ...]:
        """Offsets of each later dimension from N0."""
        return tuple(d - self.dims[0] for d in self.dims[1:])


@dataclass(frozen=True)
class SnrValue:
    """Effective SNR on linear scale."""

    q: float

    def __post_init__(self):
        q = float(self.q)
        if not (q > 0.0) or not math.isfinite(q):
            raise ValueError(f"SNR must be finite and positive, got {q!r}")
        object.__setattr__(self, "q", q)

    @classmethod
    def from_db(cls, db: float) -> "SnrValue":
        return cls(10.0 ** (float(db) / 10.0))

    @property
    def db(self) -> float:
        return 10.0 * math.log10(self.q)


@dataclass(frozen=True)
class CapacityEstimate:
    """Monte Carlo mean with standard error, in nats per channel use."""

    mean: float
    stderr: float
    samples: int
    seed: int
    discarded: int = 0


def _as_q(q) -> float:
    return q.q if isinstance(q, SnrValue) else float(q)


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed < _MAX_SEED:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def substream(seed: int, index: int) -> np.random.Generator:
    """Generator for one Monte Carlo sample, independent of all others.

    Sample `index` owns the counter block [index << 64, (index+1) << 64) of
    a Philox stream keyed by `seed`, so any subset of samples can be drawn
    in any order with identical results.
    """
    return np.random.Generator(np.random.Philox(key=_check_seed(seed), counter=index << 64))


class _SubstreamSampler:
    """Reusable equivalent of substream(): seek() repositions the counter.

    Constructing a Philox generator per sample costs more than drawing the
    sample; resetting the counter on one long-lived instance produces the
    same stream bit for bit.
    """

    def __init__(self, seed: int):
        self._bg = np.random.Philox(key=_check_seed(seed))
        self._rng = np.random.Generator(self._bg)

    def seek(self, index: int) -> np.random.Generator:
        st = self._bg.state
        counter = st["state"]["counter"]
        counter[:] = 0
        counter[1] = index
        st["buffer_pos"] = 4
        st["has_uint32"] = 0
        st["uinteger"] = 0
        self._bg.state = st
        return self._rng


def sample_channel(spec: ChannelSpec, rng: np.random.Generator) -> np.ndarray:
    """Draw one realization of the product channel; shape NK x N0."""
    dims = spec.dims
    out = None
    for k in range(1, len(dims)):
        z = rng.standard_normal((2, dims[k], dims[k - 1]))
        q_k = _SQRT_HALF * (z[0] + 1j * z[1])
        out = q_k if out is None else q_k @ out
    return out


def _gram(h: np.ndarray) -> np.ndarray:
    # ln det(I + q H^H H) = ln det(I + q H H^H); use the cheaper side
    rows, cols = h.shape
    return h.conj().T @ h if cols <= rows else h @ h.conj().T


def capacity_sample(h: np.ndarray, q) -> float:
    """Instantaneous capacity ln det(I + q G) in nats, G the smaller Gram.

    Computed through the eigenvalues of the Hermitian Gram matrix;
    eigenvalues under the numerical rank floor are clamped to zero so that
    rank-deficient products stay exact even for astronomically large q.
    """
    q = _as_q(q)
    if q < 0.0:
        raise ValueError("SNR must be nonnegative")
    h = np.asarray(h)
    if not np.isfinite(h).all():
        raise NumericFailure("channel matrix contains non-finite entries")
    w = np.linalg.eigvalsh(_gram(h))
    floor = _RANK_FLOOR * max(abs(w[0]), abs(w[-1]))
    if w[0] < -floor:
        raise NumericFailure("Gram matrix is not positive semidefinite")
    w = np.where(w > floor, w, 0.0)
    return float(np.log1p(q * w).sum())


def logdet_gram_sample(h: np.ndarray) -> float:
    """ln det of the smaller Gram matrix of one realization.

    Numerically singular draws return -inf; callers count and discard
    them (they are measure zero when the smallest dimension sits at an
    end of the dimension list).
    """
    h = np.asarray(h)
    if not np.isfinite(h).all():
        raise NumericFailure("channel matrix contains non-finite entries")
    w = np.linalg.eigvalsh(_gram(h))
    if w[0] < _SINGULAR_EIG:
        return -math.inf
    return float(np.log(w).sum())


def _mc_values(spec: ChannelSpec, sample_fn, samples: int, seed: int, workers: int) -> np.ndarray:
    values = np.empty(samples)

    def run_block(lo: int, hi: int):
        sampler = _SubstreamSampler(seed)
        for i in range(lo, hi):
            values[i] = sample_fn(sample_channel(spec, sampler.seek(i)))

    if workers <= 1:
        run_block(0, samples)
    else:
        step = -(-samples // workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(run_block, lo, min(lo + step, samples))
                for lo in range(0, samples, step)
            ]
            for f in futures:
                f.result()
    return values


def mc_ergodic_capacity(
    spec: ChannelSpec,
    q,
    samples: int,
    seed: int = 42,
    workers: int = 1,
) -> CapacityEstimate:
    """Monte Carlo mean capacity over independent channel draws.

    Deterministic for fixed (spec, q, samples, seed) regardless of the
    worker count.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples for a standard error")
    seed = _check_seed(seed)
    q = _as_q(q)
    values = _mc_values(spec, lambda h: capacity_sample(h, q), samples, seed, workers)
    bad = ~np.isfinite(values)
    if bad.any():
        raise NumericFailure(f"non-finite capacity sample at index {int(np.argmax(bad))}")
    return CapacityEstimate(
        mean=float(values.mean()),
        stderr=float(values.std(ddof=1) / math.sqrt(samples)),
        samples=samples,
        seed=seed,
    )


def mc_logdet_moment(
    spec: ChannelSpec,
    samples: int,
    seed: int = 42,
    workers: int = 1,
) -> CapacityEstimate:
    """Monte Carlo mean of ln det of the smaller Gram matrix.

    Singular draws are discarded and counted; more than 0.1% of them
    means the requested moment does not exist for this dimension order
    (put the smallest dimension first) and raises NumericFailure.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples for a standard error")
    seed = _check_seed(seed)
    values = _mc_values(spec, logdet_gram_sample, samples, seed, workers)
    singular = np.isneginf(values)
    bad = ~np.isfinite(values) & ~singular
    if bad.any():
        raise NumericFailure(f"non-finite log-det sample at index {int(np.argmax(bad))}")
    discarded = int(singular.sum())
    if discarded > 0.001 * samples:
        raise NumericFailure(
            f"{discarded} of {samples} draws were numerically singular; "
            "the log-det moment is not finite for this dimension order"
        )
    kept = values[~singular]
    if kept.size < 2:
        raise NumericFailure("fewer than 2 usable draws after discarding singular ones")
    return CapacityEstimate(
        mean=float(kept.mean()),
        stderr=float(kept.std(ddof=1) / math.sqrt(kept.size)),
        samples=int(kept.size),
        seed=seed,
        discarded=discarded,
    )
