"""Command-line interface.

Subcommands mirror the two halves of the workflow plus test tooling:
`estimate` (static sizing from a profile), `simulate` (one cache run),
`sweep` (full design-space exploration with reports), `gen` (synthetic
workloads).  Exit codes: 0 success, 2 bad input, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import InputError
from .estimator import (
    CacheConfig,
    Criterion,
    block_length_metrics,
    estimate_config,
    estimate_line_size,
    estimate_num_lines,
)
from .explorer import (
    DEFAULT_SWEEP_VALUES,
    DOMINANT_ACCURACY_FLOOR_PERCENT,
    accuracy,
    equal_size_variation,
    rebalance_config,
    sweep,
    write_sweep_csv,
)
from .formats import (
    detect_input_kind,
    parse_edge_profile,
    parse_profile,
    parse_program,
    parse_trace,
    serialize_program,
    serialize_trace,
)
from .program import (
    ARM,
    PISA,
    IsaProfile,
    frequencies_from_edges,
    frequencies_from_trace,
    validate_trace,
)
from .simulator import TimingModel, simulate_trace
from .workload import WorkloadShape, WorkloadSpec, generate


def resolve_isa(text: str) -> IsaProfile:
    """Map an --isa argument to a profile: arm, pisa, or custom:<bytes>."""
    if text == "arm":
        return ARM
    if text == "pisa":
        return PISA
    if text.startswith("custom:"):
        raw = text[len("custom:"):]
        try:
            width = int(raw)
        except ValueError:
            raise InputError(f"bad custom ISA width {raw!r}") from None
        return IsaProfile(text, width)
    raise InputError(f"unknown ISA {text!r} (expected arm, pisa, or custom:<bytes>)")


def _parse_pow2_list(text: str, flag: str) -> list[int]:
    values = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            values.append(int(token))
        except ValueError:
            raise InputError(f"{flag}: bad value {token!r}") from None
    if not values:
        raise InputError(f"{flag}: empty list")
    return values


def _fmt_kb(total_bytes: int) -> str:
    return f"{total_bytes / 1024:g}"


def _load_profile(data_path: Path, cfg, strict: bool):
    """Read the dynamic-data file (trace, block profile, or edge profile) and
    return (profile, trace-or-None)."""
    text = data_path.read_text(encoding="utf-8")
    kind = detect_input_kind(text)
    if kind == "profile":
        return parse_profile(text, cfg), None
    if kind == "edges":
        edge_counts, entry_count = parse_edge_profile(text)
        return frequencies_from_edges(edge_counts, cfg, entry_count), None
    trace = parse_trace(text)
    return frequencies_from_trace(trace, cfg, strict=strict), trace


def _cmd_estimate(args: argparse.Namespace) -> int:
    cfg = parse_program(Path(args.program).read_text(encoding="utf-8"))
    isa = resolve_isa(args.isa)
    profile, _ = _load_profile(Path(args.data), cfg, args.strict)
    criterion = Criterion(args.criterion)
    config, metrics = estimate_config(cfg, profile, criterion, isa)
    print(f"blocks={cfg.num_blocks}")
    print(f"average_length={metrics.average:.6f}")
    print(f"dominant_length={metrics.dominant} dominant_block={metrics.dominant_block_id}")
    print(f"largest_length={metrics.largest} largest_block={metrics.largest_block_id}")
    print(f"criterion={criterion.value} width_bytes={isa.instruction_width_bytes}")
    print(
        f"line_size={config.line_size_bytes} num_lines={config.num_lines} "
        f"total_kb={_fmt_kb(config.total_bytes)}"
    )
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    cfg = parse_program(Path(args.program).read_text(encoding="utf-8"))
    trace = parse_trace(Path(args.trace).read_text(encoding="utf-8"))
    if args.strict:
        validate_trace(trace, cfg, strict=True)
    isa = resolve_isa(args.isa)
    config = CacheConfig(args.line_size, args.num_lines)
    timing = TimingModel(args.base_cpi, args.miss_penalty)
    result = simulate_trace(cfg, trace, isa, config, timing)
    print(
        f"accesses={result.accesses} misses={result.misses} "
        f"miss_rate={result.miss_rate:.6f} cycles={result.cycles:.6f} "
        f"ipc={result.ipc:.6f}"
    )
    return 0


def _rebalance_row(cfg, trace, isa, timing, entry) -> dict | None:
    """IPC delta for the one-halving rebalance of an estimated config, or None
    when the rebalance would leave the representable bounds."""
    try:
        rebalanced = rebalance_config(entry.config, 1)
    except InputError:
        return None
    result = simulate_trace(cfg, trace, isa, rebalanced, timing)
    return {
        "line_size": rebalanced.line_size_bytes,
        "num_lines": rebalanced.num_lines,
        "ipc": result.ipc,
        "ipc_delta_percent": 100.0 * (result.ipc - entry.ipc) / entry.ipc,
    }


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = parse_program(Path(args.program).read_text(encoding="utf-8"))
    trace = parse_trace(Path(args.trace).read_text(encoding="utf-8"))
    isa = resolve_isa(args.isa)
    timing = TimingModel(args.base_cpi, args.miss_penalty)
    line_sizes = (
        _parse_pow2_list(args.line_sizes, "--line-sizes")
        if args.line_sizes
        else DEFAULT_SWEEP_VALUES
    )
    num_lines_set = (
        _parse_pow2_list(args.num_lines, "--num-lines")
        if args.num_lines
        else DEFAULT_SWEEP_VALUES
    )

    profile = frequencies_from_trace(trace, cfg, strict=args.strict)
    metrics = block_length_metrics(cfg, profile)
    lines_estimate = estimate_num_lines(cfg)
    estimates = {
        criterion: CacheConfig(estimate_line_size(metrics, criterion, isa), lines_estimate)
        for criterion in Criterion
    }

    grid = sweep(cfg, trace, isa, line_sizes, num_lines_set, timing)
    report = accuracy(grid, estimates)
    byte_count = write_sweep_csv(grid, args.out)

    print(f"configs={len(grid.entries)} csv={args.out} bytes={byte_count}")
    best = report.best_config
    print(
        f"max_ipc={report.max_ipc:.6f} best_line_size={best.line_size_bytes} "
        f"best_num_lines={best.num_lines}"
    )
    criteria_json = []
    for entry in report.entries:
        rebalanced = _rebalance_row(cfg, trace, isa, timing, entry)
        print(
            f"{entry.criterion.value}: line_size={entry.config.line_size_bytes} "
            f"num_lines={entry.config.num_lines} "
            f"total_kb={_fmt_kb(entry.config.total_bytes)} "
            f"ipc={entry.ipc:.6f} accuracy={entry.accuracy_percent:.2f}%"
        )
        if rebalanced is None:
            print(f"rebalance {entry.criterion.value}: not representable")
        else:
            print(
                f"rebalance {entry.criterion.value}: line_size={rebalanced['line_size']} "
                f"num_lines={rebalanced['num_lines']} ipc={rebalanced['ipc']:.6f} "
                f"ipc_delta={rebalanced['ipc_delta_percent']:+.2f}%"
            )
        criteria_json.append(
            {
                "criterion": entry.criterion.value,
                "line_size": entry.config.line_size_bytes,
                "num_lines": entry.config.num_lines,
                "total_kb": entry.config.total_bytes / 1024,
                "ipc": entry.ipc,
                "max_ipc": entry.max_ipc,
                "accuracy_percent": entry.accuracy_percent,
                "rebalanced": rebalanced,
            }
        )
    floor_met = report.dominant_meets_floor
    print(
        f"dominant_floor_{DOMINANT_ACCURACY_FLOOR_PERCENT:.0f}pct="
        + ("met" if floor_met else "missed")
    )

    if args.equal_size is not None:
        variation = equal_size_variation(grid, args.equal_size)
        best_cfg, best_res = variation.best
        worst_cfg, worst_res = variation.worst
        print(
            f"equal_size={args.equal_size}B "
            f"best=({best_cfg.line_size_bytes},{best_cfg.num_lines}) ipc={best_res.ipc:.6f} "
            f"worst=({worst_cfg.line_size_bytes},{worst_cfg.num_lines}) ipc={worst_res.ipc:.6f} "
            f"variation={variation.variation_percent:.2f}%"
        )

    if args.accuracy_out:
        payload = {
            "max_ipc": report.max_ipc,
            "best": {
                "line_size": best.line_size_bytes,
                "num_lines": best.num_lines,
            },
            "floor_percent": DOMINANT_ACCURACY_FLOOR_PERCENT,
            "dominant_meets_floor": report.dominant_meets_floor,
            "criteria": criteria_json,
        }
        Path(args.accuracy_out).write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
        print(f"accuracy_json={args.accuracy_out}")

    if args.fig_dir:
        from .figures import render_sweep_figures

        for path in render_sweep_figures(grid, report, args.fig_dir):
            print(f"figure={path}")
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = WorkloadSpec(
        seed=args.seed,
        num_blocks=args.blocks,
        min_len=args.min_len,
        max_len=args.max_len,
        hot_fraction=args.hot_fraction,
        trace_len=args.trace_len,
        shape=WorkloadShape(args.shape),
    )
    cfg, trace = generate(spec)
    program_path = Path(f"{args.out_prefix}.program")
    trace_path = Path(f"{args.out_prefix}.trace")
    program_path.write_bytes(serialize_program(cfg).encode("utf-8"))
    trace_path.write_bytes(serialize_trace(trace).encode("utf-8"))
    print(f"wrote {program_path}")
    print(f"wrote {trace_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icachefit",
        description="Instruction-cache geometry estimation and trace-driven validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_est = sub.add_parser("estimate", help="estimate cache geometry from a profile")
    p_est.add_argument("program", help="program file")
    p_est.add_argument("data", help="trace, block-profile, or edge-profile file")
    p_est.add_argument(
        "--criterion",
        choices=[c.value for c in Criterion],
        default=Criterion.DOMINANT.value,
    )
    p_est.add_argument("--isa", default="arm", help="arm, pisa, or custom:<bytes>")
    p_est.add_argument("--strict", action="store_true", help="validate traces as edge walks")
    p_est.set_defaults(func=_cmd_estimate)

    p_sim = sub.add_parser("simulate", help="simulate one cache configuration")
    p_sim.add_argument("program")
    p_sim.add_argument("trace")
    p_sim.add_argument("--line-size", type=int, required=True)
    p_sim.add_argument("--num-lines", type=int, required=True)
    p_sim.add_argument("--base-cpi", type=float, default=1.0)
    p_sim.add_argument("--miss-penalty", type=int, default=10)
    p_sim.add_argument("--isa", default="arm")
    p_sim.add_argument("--strict", action="store_true")
    p_sim.set_defaults(func=_cmd_simulate)

    p_sweep = sub.add_parser("sweep", help="sweep the design space and score estimates")
    p_sweep.add_argument("program")
    p_sweep.add_argument("trace")
    p_sweep.add_argument("--isa", default="arm")
    p_sweep.add_argument("--line-sizes", help="comma-separated powers of two")
    p_sweep.add_argument("--num-lines", help="comma-separated powers of two")
    p_sweep.add_argument("--base-cpi", type=float, default=1.0)
    p_sweep.add_argument("--miss-penalty", type=int, default=10)
    p_sweep.add_argument("--out", required=True, help="sweep CSV destination")
    p_sweep.add_argument("--accuracy-out", help="write the accuracy report as JSON")
    p_sweep.add_argument("--fig-dir", help="render figures into this directory")
    p_sweep.add_argument(
        "--equal-size",
        type=int,
        help="report IPC variation among grid entries of this total byte size",
    )
    p_sweep.add_argument("--strict", action="store_true")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_gen = sub.add_parser("gen", help="generate a synthetic workload")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument(
        "--shape", choices=[s.value for s in WorkloadShape], default="loopnest"
    )
    p_gen.add_argument("--blocks", type=int, required=True)
    p_gen.add_argument("--trace-len", type=int, required=True)
    p_gen.add_argument("--min-len", type=int, default=2)
    p_gen.add_argument("--max-len", type=int, default=12)
    p_gen.add_argument("--hot-fraction", type=float, default=0.3)
    p_gen.add_argument("--out-prefix", required=True)
    p_gen.set_defaults(func=_cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # exit-code contract: 1 marks an internal failure
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
