"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Statistical criteria run at fixed seeds; tolerances are stated inline.
"""

import json
import math
import time

import pytest
import scipy.special as sp

from uavtier import (
    ChannelSpec,
    PowerModel,
    asymptotic_candidates,
    count_partitions,
    enumerate_partitions,
    grid_cell,
    lower_bound,
    mc_ergodic_capacity,
    mc_logdet_moment,
    optimal_tier_count,
    optimize,
    reduced_candidates,
    upper_bound,
)
from uavtier.cli import main

GAMMA = 0.57721566490153286061

TIER_TABLE_ROWS = {
    2: [11] * 8,
    4: [6] * 8,
    6: [4] * 8,
    8: [3] * 8,
    10: [3] * 8,
    12: [3, 2, 2, 2, 2, 2, 2, 2],
    14: [3, 2, 2, 2, 2, 2, 2, 2],
    16: [3, 2, 2, 2, 2, 2, 2, 2],
}
TIER_TABLE_COLS = [8, 16, 32, 48, 64, 96, 128, 256]


def check(num: int, label: str, ok: bool, detail: str = ""):
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num:02d} {label}: {detail}")
    assert ok, f"criterion {num:02d} {label}: {detail}"


def test_01_tier_count_table():
    t0 = time.perf_counter()
    mismatches = [
        (n0, nk, optimal_tier_count(20, n0, nk), expected)
        for n0, row in TIER_TABLE_ROWS.items()
        for nk, expected in zip(TIER_TABLE_COLS, row)
        if optimal_tier_count(20, n0, nk) != expected
    ]
    elapsed = time.perf_counter() - t0
    check(
        1,
        "tier-count table",
        not mismatches and elapsed < 1.0,
        f"{64 - len(mismatches)}/64 entries in {elapsed:.3f}s",
    )


def test_02_partition_counts():
    ok = (
        count_partitions(10) == 42
        and count_partitions(16) == 231
        and len(enumerate_partitions(10)) == 42
        and len(enumerate_partitions(16)) == 231
    )
    check(2, "partition counts", ok, "p(10)=42, p(16)=231, enumerations agree")


def test_03_square_wishart_moment():
    t0 = time.perf_counter()
    est = mc_logdet_moment(ChannelSpec((2, 2)), 100_000, seed=123)
    elapsed = time.perf_counter() - t0
    target = 1 - 2 * GAMMA
    dev = abs(est.mean - target)
    ok = dev < 3 * est.stderr and elapsed < 5.0
    check(
        3,
        "square Gram log-det moment",
        ok,
        f"mean {est.mean:.5f} vs {target:.5f} ({dev / est.stderr:.2f} stderr) in {elapsed:.2f}s",
    )


def test_04_moment_additivity():
    est = mc_logdet_moment(ChannelSpec((2, 3, 4)), 100_000, seed=7)
    target = sum(float(sp.digamma(nk - l + 1)) for nk in (3, 4) for l in (1, 2))
    dev = abs(est.mean - target)
    check(
        4,
        "product moment closed form",
        dev < 3 * est.stderr,
        f"mean {est.mean:.5f} vs {target:.5f} ({dev / est.stderr:.2f} stderr)",
    )


def test_05_permutation_invariance():
    a = mc_ergodic_capacity(ChannelSpec((2, 3, 4)), 10.0, 100_000, seed=21)
    b = mc_ergodic_capacity(ChannelSpec((4, 2, 3)), 10.0, 100_000, seed=22)
    combined = math.hypot(a.stderr, b.stderr)
    dev = abs(a.mean - b.mean)
    check(
        5,
        "permutation invariance",
        dev < 3 * combined,
        f"means {a.mean:.4f} / {b.mean:.4f}, gap {dev:.4f} < {3 * combined:.4f}",
    )


def test_06_bound_sandwich_and_tightening():
    t0 = time.perf_counter()
    spec = ChannelSpec((4, 4, 4, 8))
    gaps = {}
    sandwich_ok = True
    for q in (1.0, 10.0, 1e2, 1e3, 1e4):
        est = mc_ergodic_capacity(spec, q, 20_000, seed=42)
        lo, hi = lower_bound(spec, q), upper_bound(spec, q)
        sandwich_ok &= lo <= est.mean + 3 * est.stderr
        sandwich_ok &= est.mean <= hi + 3 * est.stderr
        gaps[q] = est.mean - lo
    elapsed = time.perf_counter() - t0
    ok = sandwich_ok and gaps[1e4] < gaps[1.0] and elapsed < 60.0
    check(
        6,
        "bound sandwich and tightening",
        ok,
        f"gap(q=1)={gaps[1.0]:.3f} -> gap(q=1e4)={gaps[1e4]:.3f} in {elapsed:.1f}s",
    )


def test_07_antenna_increment_steps():
    q = 1e4
    base = mc_ergodic_capacity(ChannelSpec((3, 4, 4, 4, 8)), q, 20_000, seed=101)
    one = mc_ergodic_capacity(ChannelSpec((3, 4, 4, 5, 8)), q, 20_000, seed=102)
    three = mc_ergodic_capacity(ChannelSpec((3, 4, 5, 6, 8)), q, 20_000, seed=103)
    d1 = one.mean - base.mean
    d3 = three.mean - base.mean
    se1 = 3 * math.hypot(one.stderr, base.stderr)
    se3 = 3 * math.hypot(three.stderr, base.stderr)
    ok = abs(d1 - 13 / 12) < 0.1 and abs(d3 - 2.95) < 0.15 and se1 < 0.1 and se3 < 0.15
    check(
        7,
        "capacity increments from extra antennas",
        ok,
        f"step {d1:.3f} vs 1.083 (3se {se1:.3f}), cumulative {d3:.3f} vs 2.95 (3se {se3:.3f})",
    )


def test_08_gap_floor():
    spec = ChannelSpec((2, 2, 2))
    gap = upper_bound(spec, 1e6) - lower_bound(spec, 1e6)
    check(8, "bound gap exceeds floor", gap > 1.5 - 1e-6, f"gap {gap:.4f} > 1.5")


@pytest.mark.parametrize(
    "p_db,expected",
    [(-15.0, (8,)), (15.0, (4, 4)), (20.0, (1,) * 8)],
    ids=["-15dB->single-tier", "15dB->two-tiers", "20dB->all-ones"],
)
def test_09_regime_transitions(p_db, expected):
    t0 = time.perf_counter()
    pm = PowerModel(p=10.0 ** (p_db / 10.0), p0=1.0, c=1.0, alpha=3.0)
    res = optimize(8, 4, 8, pm, method="mc", search="full", samples=20_000, seed=42)
    elapsed = time.perf_counter() - t0
    best = res.best.candidate.parts
    ok = best == expected and elapsed < 100.0
    check(
        9,
        f"regime transition at {p_db:g} dB",
        ok,
        f"best {best} (expected {expected}) in {elapsed:.1f}s",
    )


def test_10_reduced_search_sufficiency():
    pm = PowerModel(p=100.0, alpha=2.0)
    asym = {c.parts for c in asymptotic_candidates(10)}
    discrepancies = []
    for idx in range(1, 65):
        n0, nk = grid_cell(idx)
        res = optimize(10, n0, nk, pm, method="lower", search="full")
        best = res.best.candidate.parts
        union = {c.parts for c in reduced_candidates(10, n0, nk)} | asym
        if best not in union:
            discrepancies.append((idx, n0, nk, best))
    check(
        10,
        "reduced-search sufficiency",
        not discrepancies,
        f"{len(discrepancies)} of 64 cells outside the per-cell reduced+asymptotic set "
        f"(first: {discrepancies[:3]})",
    )


def test_11_byte_identical_reports(capsys):
    argv = [
        "optimize", "--m", "6", "--n0", "4", "--nk", "8", "--p-db", "10",
        "--method", "mc", "--search", "full", "--samples", "2000", "--seed", "42",
    ]

    def run(workers):
        code = main(argv + ["--workers", str(workers)])
        out = capsys.readouterr().out
        assert code == 0
        return out

    serial_a = run(1)
    serial_b = run(1)
    threaded_a = run(3)
    threaded_b = run(3)
    same_bytes = serial_a == serial_b and threaded_a == threaded_b
    same_results = (
        json.loads(serial_a)["results"] == json.loads(threaded_a)["results"]
    )
    check(
        11,
        "byte-identical reports",
        same_bytes and same_results,
        "repeat runs identical; worker count does not change results",
    )
