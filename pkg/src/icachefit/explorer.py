"""Design-space exploration over (line size, line count) configurations.

Sweeps the power-of-2 grid with the trace-driven simulator, scores estimated
configurations against the grid maximum IPC, measures IPC variation among
equal-size geometries, and emits a byte-deterministic CSV.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .errors import ValidationError
from .estimator import (
    LINE_SIZE_MAX_BYTES,
    LINE_SIZE_MIN_BYTES,
    NUM_LINES_MAX,
    NUM_LINES_MIN,
    CacheConfig,
    Criterion,
    is_pow2,
)
from .program import BlockTrace, ControlFlowGraph, IsaProfile
from .simulator import (
    SimResult,
    TimingModel,
    compute_ipc,
    expand_trace,
    layout_blocks,
    simulate_direct_mapped,
)

# Default sweep axes: every power of two from 8 to 1024, both for line size
# in bytes and for the number of lines.
DEFAULT_SWEEP_VALUES = (8, 16, 32, 64, 128, 256, 512, 1024)

# Qualitative accuracy floor the dominant criterion is expected to clear;
# reported as a flag, never asserted by the sweep itself.
DOMINANT_ACCURACY_FLOOR_PERCENT = 68.0


@dataclass(frozen=True)
class SweepGrid:
    """Simulation results for every swept configuration, in canonical
    (line_size, num_lines) ascending order."""

    entries: tuple[tuple[CacheConfig, SimResult], ...]

    def result_for(self, config: CacheConfig) -> SimResult | None:
        for candidate, result in self.entries:
            if candidate == config:
                return result
        return None

    def max_ipc(self) -> float:
        return max(result.ipc for _, result in self.entries)

    def best_entry(self) -> tuple[CacheConfig, SimResult]:
        best = self.entries[0]
        for entry in self.entries[1:]:
            if entry[1].ipc > best[1].ipc:
                best = entry
        return best


@dataclass(frozen=True)
class CriterionAccuracy:
    criterion: Criterion
    config: CacheConfig
    ipc: float
    max_ipc: float
    accuracy_percent: float


@dataclass(frozen=True)
class AccuracyReport:
    """Per-criterion IPC accuracy against the sweep maximum."""

    entries: tuple[CriterionAccuracy, ...]
    max_ipc: float
    best_config: CacheConfig
    dominant_meets_floor: bool | None


@dataclass(frozen=True)
class EqualSizeVariation:
    best: tuple[CacheConfig, SimResult]
    worst: tuple[CacheConfig, SimResult]
    variation_percent: float


def _validated_axis(values: Iterable[int], what: str, low: int, high: int) -> list[int]:
    axis = sorted(set(values))
    if not axis:
        raise ValidationError(f"empty {what} range")
    for value in axis:
        if not is_pow2(value):
            raise ValidationError(f"{what} {value} is not a power of two")
        if not low <= value <= high:
            raise ValidationError(f"{what} {value} outside [{low}, {high}]")
    return axis


def sweep(
    cfg: ControlFlowGraph,
    trace: BlockTrace,
    isa: IsaProfile,
    line_sizes: Iterable[int] = DEFAULT_SWEEP_VALUES,
    num_lines_set: Iterable[int] = DEFAULT_SWEEP_VALUES,
    timing: TimingModel = TimingModel(),
) -> SweepGrid:
    """Simulate every (line size, num lines) pair on the same address stream."""
    sizes = _validated_axis(line_sizes, "line size", LINE_SIZE_MIN_BYTES, LINE_SIZE_MAX_BYTES)
    lines = _validated_axis(num_lines_set, "num lines", NUM_LINES_MIN, NUM_LINES_MAX)
    layout = layout_blocks(cfg, isa)
    addresses = list(expand_trace(trace, cfg, layout, isa))
    entries = []
    for line_size in sizes:
        for num_lines in lines:
            config = CacheConfig(line_size, num_lines)
            accesses, misses = simulate_direct_mapped(addresses, config)
            entries.append((config, compute_ipc(accesses, misses, timing)))
    return SweepGrid(entries=tuple(entries))


def accuracy(
    grid: SweepGrid, estimates: Mapping[Criterion, CacheConfig]
) -> AccuracyReport:
    """Score estimated configurations against the sweep's maximum IPC.

    Every estimate must be one of the swept configurations; widening the
    sweep ranges is the fix when it is not.
    """
    if not estimates:
        raise ValidationError("no estimates to score")
    results = {config: result for config, result in grid.entries}
    max_ipc = grid.max_ipc()
    best_config = grid.best_entry()[0]
    entries = []
    dominant_meets_floor = None
    for criterion in Criterion:
        if criterion not in estimates:
            continue
        config = estimates[criterion]
        result = results.get(config)
        if result is None:
            raise ValidationError(
                "estimate not in sweep grid: "
                f"line_size={config.line_size_bytes} num_lines={config.num_lines}"
            )
        accuracy_percent = 100.0 * result.ipc / max_ipc
        entries.append(
            CriterionAccuracy(
                criterion=criterion,
                config=config,
                ipc=result.ipc,
                max_ipc=max_ipc,
                accuracy_percent=accuracy_percent,
            )
        )
        if criterion is Criterion.DOMINANT:
            dominant_meets_floor = accuracy_percent >= DOMINANT_ACCURACY_FLOOR_PERCENT
    return AccuracyReport(
        entries=tuple(entries),
        max_ipc=max_ipc,
        best_config=best_config,
        dominant_meets_floor=dominant_meets_floor,
    )


def equal_size_variation(grid: SweepGrid, total_bytes: int) -> EqualSizeVariation:
    """Best-vs-worst IPC spread among grid entries of one total cache size."""
    same_size = [e for e in grid.entries if e[0].total_bytes == total_bytes]
    if len(same_size) < 2:
        raise ValidationError(
            f"fewer than 2 grid entries with total size {total_bytes} bytes"
        )
    best = worst = same_size[0]
    for entry in same_size[1:]:
        if entry[1].ipc > best[1].ipc:
            best = entry
        if entry[1].ipc < worst[1].ipc:
            worst = entry
    variation = 100.0 * (best[1].ipc - worst[1].ipc) / worst[1].ipc
    return EqualSizeVariation(best=best, worst=worst, variation_percent=variation)


def rebalance_config(config: CacheConfig, halvings: int) -> CacheConfig:
    """Trade line size for line count at constant total size.

    Halves the line size and doubles the line count `halvings` times; useful
    when the estimated line size is larger than practically realizable.
    """
    if halvings < 1:
        raise ValidationError(f"halvings must be >= 1, got {halvings}")
    factor = 1 << halvings
    new_line_size = config.line_size_bytes // factor
    new_num_lines = config.num_lines * factor
    if new_line_size < LINE_SIZE_MIN_BYTES:
        raise ValidationError(
            f"rebalanced line size {new_line_size} below minimum {LINE_SIZE_MIN_BYTES}"
        )
    if new_num_lines > NUM_LINES_MAX:
        raise ValidationError(
            f"rebalanced num lines {new_num_lines} above maximum {NUM_LINES_MAX}"
        )
    return CacheConfig(new_line_size, new_num_lines)


def render_sweep_csv(grid: SweepGrid) -> str:
    """Canonical CSV for the sweep; floats carry 6 decimal digits."""
    rows = ["line_size,num_lines,total_bytes,accesses,misses,miss_rate,cycles,ipc"]
    for config, result in grid.entries:
        rows.append(
            f"{config.line_size_bytes},{config.num_lines},{config.total_bytes},"
            f"{result.accesses},{result.misses},"
            f"{result.miss_rate:.6f},{result.cycles:.6f},{result.ipc:.6f}"
        )
    return "\n".join(rows) + "\n"


def write_sweep_csv(grid: SweepGrid, destination: str | Path) -> int:
    """Write the sweep CSV; returns the number of bytes written."""
    data = render_sweep_csv(grid).encode("utf-8")
    Path(destination).write_bytes(data)
    return len(data)
