"""Trace-driven direct-mapped instruction-cache simulation.

Blocks are packed contiguously in id order in a model address space, a block
trace expands to one fetch address per instruction, and a cold direct-mapped
cache counts misses.  A two-parameter timing model (base CPI, flat miss
penalty) turns the counts into cycles and IPC.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ValidationError
from .estimator import CacheConfig
from .program import BlockTrace, ControlFlowGraph, IsaProfile, validate_trace


@dataclass(frozen=True)
class MemoryLayout:
    """Byte address of each block (indexed by id) plus the total footprint."""

    start_addr: tuple[int, ...]
    footprint_bytes: int


@dataclass(frozen=True)
class TimingModel:
    """Simple fetch timing: base_cpi cycles per instruction plus a flat
    per-miss penalty."""

    base_cpi: float = 1.0
    miss_penalty_cycles: int = 10

    def __post_init__(self):
        if self.base_cpi <= 0:
            raise ValidationError(f"base CPI must be positive, got {self.base_cpi}")
        if self.miss_penalty_cycles < 0:
            raise ValidationError(
                f"miss penalty must be non-negative, got {self.miss_penalty_cycles}"
            )


@dataclass(frozen=True)
class SimResult:
    accesses: int
    misses: int
    miss_rate: float
    cycles: float
    ipc: float


def layout_blocks(cfg: ControlFlowGraph, isa: IsaProfile) -> MemoryLayout:
    """Pack blocks contiguously in id order, no alignment padding."""
    width = isa.instruction_width_bytes
    starts = []
    addr = 0
    for block in cfg.blocks:
        starts.append(addr)
        addr += block.length * width
    return MemoryLayout(start_addr=tuple(starts), footprint_bytes=addr)


def expand_trace(
    trace: BlockTrace, cfg: ControlFlowGraph, layout: MemoryLayout, isa: IsaProfile
) -> Iterator[int]:
    """Expand a block trace into its instruction-fetch address stream.

    Yields start, start+w, ..., start+(len-1)*w for each block occurrence;
    validation happens eagerly, before the first address is produced.
    """
    validate_trace(trace, cfg)
    width = isa.instruction_width_bytes
    starts = layout.start_addr
    lengths = cfg.lengths()

    def stream() -> Iterator[int]:
        for block_id in trace.seq:
            start = starts[block_id]
            for k in range(lengths[block_id]):
                yield start + k * width
    return stream()


def simulate_direct_mapped(
    addresses: Iterable[int], config: CacheConfig
) -> tuple[int, int]:
    """Run an address stream through a cold direct-mapped cache.

    Returns (accesses, misses).  Each slot stores the resident memory line
    number; comparing line numbers is equivalent to comparing tags at a fixed
    index.
    """
    line_size = config.line_size_bytes
    num_lines = config.num_lines
    slots: list[int | None] = [None] * num_lines
    accesses = 0
    misses = 0
    for addr in addresses:
        accesses += 1
        line = addr // line_size
        slot = line % num_lines
        if slots[slot] != line:
            misses += 1
            slots[slot] = line
    if accesses == 0:
        raise ValidationError("empty address stream")
    return accesses, misses


def compute_ipc(accesses: int, misses: int, timing: TimingModel = TimingModel()) -> SimResult:
    """Convert access/miss counts to cycles and IPC under the timing model."""
    if accesses < 1:
        raise ValidationError(f"accesses must be >= 1, got {accesses}")
    if not 0 <= misses <= accesses:
        raise ValidationError(f"misses {misses} outside [0, {accesses}]")
    cycles = accesses * timing.base_cpi + misses * timing.miss_penalty_cycles
    return SimResult(
        accesses=accesses,
        misses=misses,
        miss_rate=misses / accesses,
        cycles=cycles,
        ipc=accesses / cycles,
    )


def simulate_trace(
    cfg: ControlFlowGraph,
    trace: BlockTrace,
    isa: IsaProfile,
    config: CacheConfig,
    timing: TimingModel = TimingModel(),
) -> SimResult:
    """Convenience pipeline: layout, expand, simulate, convert to IPC."""
    layout = layout_blocks(cfg, isa)
    accesses, misses = simulate_direct_mapped(
        expand_trace(trace, cfg, layout, isa), config
    )
    return compute_ipc(accesses, misses, timing)
