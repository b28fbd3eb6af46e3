"""Command-line front end.

Subcommands: capacity, optimize, sweep, partitions. Reports are JSON
(schema-versioned), RFC-4180 CSV, or a human-readable summary. Powers are
taken in dB on the command line and converted once at this boundary; all
internal math is linear. Capacities default to nats per channel use;
--bits divides them by ln 2.

Exit codes: 0 success, 2 usage or validation error, 3 numeric failure,
4 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import bounds, optimizer, partitions
from .channel import ChannelSpec, SnrValue, mc_ergodic_capacity
from .errors import NumericFailure, SearchBudgetExceeded
from .optimizer import DEFAULT_SAMPLES, DEFAULT_SEED, PowerModel

SCHEMA_VERSION = "1"
_LN2 = math.log(2.0)


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"--dims expects comma-separated integers, got {text!r}")
    return dims


def _units(bits: bool) -> str:
    return "bits/channel-use" if bits else "nats/channel-use"


def _scale(value: float, bits: bool) -> float:
    return value / _LN2 if bits else value


def _add_common(sub, samples_default=DEFAULT_SAMPLES):
    sub.add_argument("--samples", type=int, default=samples_default,
                     help=f"Monte Carlo draws (default {samples_default})")
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED,
                     help=f"base seed for per-sample substreams (default {DEFAULT_SEED})")
    sub.add_argument("--workers", type=int, default=1,
                     help="worker threads for Monte Carlo loops (results do not depend on this)")


def _add_output(sub, default="json"):
    sub.add_argument("--output", choices=("json", "csv", "pretty"), default=default)
    sub.add_argument("--bits", action="store_true",
                     help="report capacities in bits instead of nats")


def _add_power(sub):
    sub.add_argument("--p-db", type=float, required=True,
                     help="per-UAV-antenna transmit power in dB")
    sub.add_argument("--alpha", type=float, default=2.0,
                     help="path-loss exponent (default 2)")
    sub.add_argument("--cp0", type=float, default=1.0,
                     help="combined attenuation constant times user power, linear (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uavtier",
        description="Capacity estimates, closed-form bounds, and tier planning "
                    "for multi-hop relay channels.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    cap = subs.add_parser("capacity", help="Monte Carlo capacity and bounds for a channel")
    cap.add_argument("--dims", type=_parse_dims, required=True,
                     help="comma-separated dimensions, e.g. 4,4,4,8")
    cap.add_argument("--q-db", type=float, required=True, help="effective SNR in dB")
    _add_common(cap)
    _add_output(cap)
    cap.set_defaults(handler=cmd_capacity)

    opt = subs.add_parser("optimize", help="rank tier allocations for a UAV budget")
    opt.add_argument("--m", type=int, required=True, help="total number of UAVs")
    opt.add_argument("--n0", type=int, required=True, help="user-side antennas")
    opt.add_argument("--nk", type=int, required=True, help="base-station antennas")
    _add_power(opt)
    opt.add_argument("--method", choices=optimizer.METHODS, default="lower")
    opt.add_argument("--search", choices=optimizer.SEARCHES, default="combined")
    _add_common(opt)
    _add_output(opt)
    opt.set_defaults(handler=cmd_optimize)

    sw = subs.add_parser("sweep", help="optimize over an antenna-count grid")
    sw.add_argument("--m", type=int, required=True)
    _add_power(sw)
    sw.add_argument("--method", choices=optimizer.METHODS, default="lower")
    sw.add_argument("--search", choices=optimizer.SEARCHES, default="combined")
    sw.add_argument("--rows", type=int, default=8)
    sw.add_argument("--cols", type=int, default=8)
    _add_common(sw)
    _add_output(sw, default="csv")
    sw.set_defaults(handler=cmd_sweep)

    pt = subs.add_parser("partitions", help="partition tooling for a UAV budget")
    pt.add_argument("--m", type=int, required=True)
    pt.add_argument("--mode", choices=("list", "count", "estimate", "reduced", "direct"),
                    required=True)
    pt.add_argument("--n0", type=int, default=None)
    pt.add_argument("--nk", type=int, default=None)
    _add_output(pt)
    pt.set_defaults(handler=cmd_partitions)

    return parser


def cmd_capacity(args) -> dict:
    spec = ChannelSpec(args.dims)
    q = SnrValue.from_db(args.q_db)
    est = mc_ergodic_capacity(spec, q, args.samples, args.seed, args.workers)
    rep = bounds.bounds_report(spec, q)
    bits = args.bits
    results = {
        "mc_mean": _scale(est.mean, bits),
        "mc_stderr": _scale(est.stderr, bits),
        "samples": est.samples,
        "lower": _scale(rep.lower, bits),
        "upper": _scale(rep.upper, bits),
        "g": rep.g,
        "gap_floor": {
            "tight": _scale(rep.gap_floor.tight, bits),
            "loose": _scale(rep.gap_floor.loose, bits),
        },
        "units": _units(bits),
    }
    config = {
        "dims": list(spec.dims),
        "q_db": args.q_db,
        "samples": args.samples,
        "seed": args.seed,
        "workers": args.workers,
        "bits": bits,
        "output": args.output,
    }
    return _report("capacity", config, results)


def _power_model(args) -> PowerModel:
    return PowerModel(p=10.0 ** (args.p_db / 10.0), p0=1.0, c=args.cp0, alpha=args.alpha)


def _ranking_entry(r: optimizer.RankedCandidate, bits: bool) -> dict:
    entry = {
        "parts": list(r.candidate.parts),
        "tier_count": r.tier_count,
        "q_db": r.snr.db,
        "objective": _scale(r.objective, bits),
        "provenance": r.candidate.provenance.value,
    }
    if r.estimate is not None:
        entry["mc_mean"] = _scale(r.estimate.mean, bits)
        entry["mc_stderr"] = _scale(r.estimate.stderr, bits)
    return entry


def cmd_optimize(args) -> dict:
    result = optimizer.optimize(
        args.m, args.n0, args.nk, _power_model(args),
        method=args.method, search=args.search,
        samples=args.samples, seed=args.seed, workers=args.workers,
    )
    bits = args.bits
    ranking = [_ranking_entry(r, bits) for r in result.ranked]
    results = {
        "method": result.method,
        "search": result.search,
        "best": ranking[0],
        "ranking": ranking,
        "tiebreak_trace": list(result.tiebreak_trace),
        "units": _units(bits),
    }
    config = {
        "m": args.m, "n0": args.n0, "nk": args.nk,
        "p_db": args.p_db, "alpha": args.alpha, "cp0": args.cp0,
        "method": args.method, "search": args.search,
        "samples": args.samples, "seed": args.seed, "workers": args.workers,
        "bits": bits, "output": args.output,
    }
    return _report("optimize", config, results)


def cmd_sweep(args) -> dict:
    records = optimizer.sweep_grid(
        args.m, _power_model(args), method=args.method, search=args.search,
        samples=args.samples, seed=args.seed,
        rows=args.rows, cols=args.cols, workers=args.workers,
    )
    if all(rec["error"] for rec in records):
        raise NumericFailure("every sweep cell failed; first error: " + records[0]["error"])
    bits = args.bits
    rows = []
    for rec in records:
        row = dict(rec)
        if row["parts"] is not None:
            row["parts"] = list(row["parts"])
        if bits and row["objective"] is not None:
            row["objective"] = _scale(row["objective"], bits)
        if bits and row["mc_stderr"] is not None:
            row["mc_stderr"] = _scale(row["mc_stderr"], bits)
        rows.append(row)
    results = {"rows": rows, "units": _units(bits)}
    config = {
        "m": args.m, "p_db": args.p_db, "alpha": args.alpha, "cp0": args.cp0,
        "method": args.method, "search": args.search,
        "rows": args.rows, "cols": args.cols,
        "samples": args.samples, "seed": args.seed, "workers": args.workers,
        "bits": bits, "output": args.output,
    }
    return _report("sweep", config, results)


def cmd_partitions(args) -> dict:
    mode = args.mode
    results: dict = {"mode": mode}
    if mode == "list":
        cands = partitions.enumerate_partitions(args.m)
        listing = [{"parts": list(c.parts)} for c in cands]
        if args.m == 10:
            for item in listing:
                item["display_index"] = partitions.display_index(item["parts"], args.m)
        results["partitions"] = listing
        results["count"] = len(listing)
    elif mode == "count":
        results["count"] = partitions.count_partitions(args.m)
    elif mode == "estimate":
        results["estimate"] = partitions.hardy_ramanujan_estimate(args.m)
        results["count"] = partitions.count_partitions(args.m)
    else:
        if args.n0 is None or args.nk is None:
            raise ValueError(f"mode {mode!r} requires --n0 and --nk")
        results["tier_count"] = partitions.optimal_tier_count(args.m, args.n0, args.nk)
        if mode == "reduced":
            results["candidates"] = [
                {"parts": list(c.parts)} for c in partitions.reduced_candidates(args.m, args.n0, args.nk)
            ]
        else:
            results["parts"] = list(partitions.direct_candidate(args.m, args.n0, args.nk).parts)
    config = {
        "m": args.m, "mode": mode, "n0": args.n0, "nk": args.nk,
        "bits": args.bits, "output": args.output,
    }
    return _report("partitions", config, results)


def _report(command: str, config: dict, results: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "results": results,
    }


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return "+".join(str(v) for v in value)
    return str(value)


def _csv_text(report: dict) -> str:
    command = report["command"]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    results = report["results"]
    if command == "sweep":
        headers = ["cell", "n0", "nk", "parts", "tier_count", "q_db",
                   "objective", "mc_stderr", "display_index", "error"]
        writer.writerow(headers)
        for row in results["rows"]:
            writer.writerow([_fmt(row[h]) for h in headers])
    elif command == "optimize":
        headers = ["rank", "parts", "tier_count", "q_db", "objective",
                   "mc_mean", "mc_stderr", "provenance"]
        writer.writerow(headers)
        for i, entry in enumerate(results["ranking"], start=1):
            writer.writerow([
                i, _fmt(entry["parts"]), entry["tier_count"], entry["q_db"],
                entry["objective"], _fmt(entry.get("mc_mean")),
                _fmt(entry.get("mc_stderr")), entry["provenance"],
            ])
    elif command == "capacity":
        headers = ["mc_mean", "mc_stderr", "samples", "lower", "upper", "g",
                   "gap_floor_tight", "gap_floor_loose", "units"]
        writer.writerow(headers)
        writer.writerow([
            results["mc_mean"], results["mc_stderr"], results["samples"],
            results["lower"], results["upper"], results["g"],
            results["gap_floor"]["tight"], results["gap_floor"]["loose"],
            results["units"],
        ])
    else:
        mode = results["mode"]
        if mode == "list":
            writer.writerow(["parts", "display_index"])
            for item in results["partitions"]:
                writer.writerow([_fmt(item["parts"]), _fmt(item.get("display_index"))])
        elif mode == "reduced":
            writer.writerow(["parts", "tier_count"])
            for item in results["candidates"]:
                writer.writerow([_fmt(item["parts"]), results["tier_count"]])
        else:
            keys = [k for k in ("count", "estimate", "tier_count", "parts") if k in results]
            writer.writerow(keys)
            writer.writerow([_fmt(results[k]) for k in keys])
    return buf.getvalue()


def _pretty_text(report: dict) -> str:
    command = report["command"]
    results = report["results"]
    lines = [f"uavtier {command}"]
    for key, value in report["config"].items():
        lines.append(f"  {key} = {value}")
    lines.append("")
    if command == "capacity":
        lines += [
            f"mc capacity : {results['mc_mean']:.6f} +- {results['mc_stderr']:.6f} ({results['units']})",
            f"lower bound : {results['lower']:.6f}",
            f"upper bound : {results['upper']:.6f}",
            f"g factor    : {results['g']:.6f}",
            f"gap floor   : tight {results['gap_floor']['tight']:.6f}, "
            f"loose {results['gap_floor']['loose']:.6f}",
        ]
    elif command == "optimize":
        lines.append(f"{'rank':>4} {'parts':>24} {'K':>3} {'q_db':>10} {'objective':>14}")
        for i, entry in enumerate(results["ranking"], start=1):
            lines.append(
                f"{i:>4} {_fmt(entry['parts']):>24} {entry['tier_count']:>3} "
                f"{entry['q_db']:>10.3f} {entry['objective']:>14.6f}"
            )
        for note in results["tiebreak_trace"]:
            lines.append(f"note: {note}")
    elif command == "sweep":
        lines.append(f"{'cell':>4} {'n0':>3} {'nk':>3} {'parts':>20} {'objective':>14} error")
        for row in results["rows"]:
            obj = "" if row["objective"] is None else f"{row['objective']:.4f}"
            lines.append(
                f"{row['cell']:>4} {row['n0']:>3} {row['nk']:>3} "
                f"{_fmt(row['parts']):>20} {obj:>14} {row['error']}"
            )
    else:
        for key, value in results.items():
            if key == "partitions":
                for item in value:
                    lines.append(f"  {_fmt(item['parts'])}")
            elif key == "candidates":
                for item in value:
                    lines.append(f"  {_fmt(item['parts'])}")
            else:
                lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def render(report: dict, output: str) -> str:
    if output == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    if output == "csv":
        return _csv_text(report)
    return _pretty_text(report)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.handler(args)
    except SearchBudgetExceeded as exc:
        print(f"uavtier: budget exceeded: {exc}", file=sys.stderr)
        return 4
    except NumericFailure as exc:
        print(f"uavtier: numeric failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OverflowError) as exc:
        print(f"uavtier: invalid input: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(report, args.output))
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
