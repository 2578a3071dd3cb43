"""Program model: basic blocks, control flow, execution profiles, block traces.

Block ids are dense integers 0..n-1 and double as indices everywhere. All
types are immutable value objects and every operation is a pure function, so
values can be shared freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import ValidationError

VALID_INSTRUCTION_WIDTHS = (1, 2, 4, 8, 16)


@dataclass(frozen=True)
class BasicBlock:
    """A straight-line run of IR instructions, identified by a dense id."""

    id: int
    length: int

    def __post_init__(self):
        if self.id < 0:
            raise ValidationError(f"block id must be non-negative, got {self.id}")
        if self.length < 1:
            raise ValidationError(
                f"block {self.id}: length must be >= 1, got {self.length}"
            )


@dataclass(frozen=True)
class ControlFlowGraph:
    """Static program structure: blocks in id order, directed edges, entry."""

    blocks: tuple[BasicBlock, ...]
    edges: frozenset[tuple[int, int]]
    entry: int

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        object.__setattr__(self, "edges", frozenset(self.edges))
        if not self.blocks:
            raise ValidationError("program must contain at least one block")
        for position, block in enumerate(self.blocks):
            if block.id != position:
                raise ValidationError(
                    "block ids must be dense 0..n-1 in id order, "
                    f"found id {block.id} at position {position}"
                )
        n = len(self.blocks)
        for src, dst in self.edges:
            if not (0 <= src < n and 0 <= dst < n):
                raise ValidationError(f"edge to unknown id: ({src}, {dst})")
        if not 0 <= self.entry < n:
            raise ValidationError(f"entry references unknown block id {self.entry}")

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    def lengths(self) -> tuple[int, ...]:
        return tuple(block.length for block in self.blocks)


@dataclass(frozen=True)
class ExecutionProfile:
    """Per-block execution counts; counts[b] is the count of block b."""

    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(self.counts))
        if not self.counts:
            raise ValidationError("profile must cover at least one block")
        for block_id, count in enumerate(self.counts):
            if count < 0:
                raise ValidationError(
                    f"block {block_id}: negative count {count}"
                )
        if not any(self.counts):
            raise ValidationError("profile must contain at least one positive count")

    def __getitem__(self, block_id: int) -> int:
        return self.counts[block_id]

    @property
    def total(self) -> int:
        return sum(self.counts)

    @classmethod
    def from_mapping(cls, freq: Mapping[int, int], num_blocks: int) -> "ExecutionProfile":
        """Build a dense profile from an id -> count mapping; absent ids get 0."""
        counts = [0] * num_blocks
        for block_id, count in freq.items():
            if not 0 <= block_id < num_blocks:
                raise ValidationError(f"unknown block id in profile: {block_id}")
            counts[block_id] = count
        return cls(tuple(counts))


@dataclass(frozen=True)
class BlockTrace:
    """Ordered record of executed block ids."""

    seq: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(self.seq))
        if not self.seq:
            raise ValidationError("trace must be non-empty")
        for block_id in self.seq:
            if block_id < 0:
                raise ValidationError(f"trace contains negative block id {block_id}")

    def __len__(self) -> int:
        return len(self.seq)


@dataclass(frozen=True)
class IsaProfile:
    """Target ISA as far as sizing cares: a name and a fixed encoding width."""

    name: str
    instruction_width_bytes: int

    def __post_init__(self):
        if self.instruction_width_bytes not in VALID_INSTRUCTION_WIDTHS:
            raise ValidationError(
                "instruction width must be one of "
                f"{VALID_INSTRUCTION_WIDTHS}, got {self.instruction_width_bytes}"
            )


ARM = IsaProfile("arm", 4)
PISA = IsaProfile("pisa", 8)


def validate_trace(trace: BlockTrace, cfg: ControlFlowGraph, strict: bool = False) -> None:
    """Check trace ids against cfg; in strict mode also check it is an edge walk
    starting at the entry block."""
    n = cfg.num_blocks
    for block_id in trace.seq:
        if block_id >= n:
            raise ValidationError(f"unknown block id in trace: {block_id}")
    if strict:
        if trace.seq[0] != cfg.entry:
            raise ValidationError(
                f"strict trace must start at entry block {cfg.entry}, got {trace.seq[0]}"
            )
        for src, dst in zip(trace.seq, trace.seq[1:]):
            if (src, dst) not in cfg.edges:
                raise ValidationError(f"trace step ({src}, {dst}) is not a CFG edge")


def frequencies_from_trace(
    trace: BlockTrace, cfg: ControlFlowGraph, strict: bool = False
) -> ExecutionProfile:
    """Count block occurrences in a trace; blocks absent from the trace get 0."""
    validate_trace(trace, cfg, strict=strict)
    counts = [0] * cfg.num_blocks
    for block_id in trace.seq:
        counts[block_id] += 1
    return ExecutionProfile(tuple(counts))


def frequencies_from_edges(
    edge_counts: Mapping[tuple[int, int], int],
    cfg: ControlFlowGraph,
    entry_count: int,
) -> ExecutionProfile:
    """Derive block counts from edge traversal counts.

    A block's count is the sum over its incoming counted edges; the entry
    block additionally receives entry_count (invocations entering the
    program, which no edge records).
    """
    if entry_count < 0:
        raise ValidationError(f"entry count must be non-negative, got {entry_count}")
    counts = [0] * cfg.num_blocks
    for edge, count in edge_counts.items():
        if edge not in cfg.edges:
            raise ValidationError(f"count on unknown edge: {edge}")
        if count < 0:
            raise ValidationError(f"negative count on edge {edge}: {count}")
        counts[edge[1]] += count
    counts[cfg.entry] += entry_count
    return ExecutionProfile(tuple(counts))
