"""Cache geometry estimation from block-length statistics.

Three sizing criteria are supported, each reducing the profiled program to a
single block length in IR instructions:

  average   frequency-weighted mean block length,
  dominant  length of the block with the largest frequency*length product,
  largest   maximum block length over all blocks (frequency-ignored).

The chosen length is scaled to bytes by the ISA instruction width and rounded
to the nearest power of two (ties round down).  The number of cache lines is
the block count rounded up to a power of two, one line per block.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ValidationError
from .program import BasicBlock, ControlFlowGraph, ExecutionProfile, IsaProfile

LINE_SIZE_MIN_BYTES = 8
LINE_SIZE_MAX_BYTES = 4096
NUM_LINES_MIN = 1
NUM_LINES_MAX = 65536


class Criterion(enum.Enum):
    """Which block-length statistic drives the line-size estimate."""

    AVERAGE = "average"
    DOMINANT = "dominant"
    LARGEST = "largest"


@dataclass(frozen=True)
class BlockLengthMetrics:
    """The three block-length statistics of a profiled program."""

    average: float
    dominant: int
    dominant_block_id: int
    largest: int
    largest_block_id: int

    def __post_init__(self):
        if self.average <= 0:
            raise ValidationError(f"average length must be positive, got {self.average}")
        if self.dominant < 1 or self.largest < 1:
            raise ValidationError("block lengths must be >= 1")
        if self.dominant > self.largest:
            raise ValidationError(
                f"dominant length {self.dominant} exceeds largest length {self.largest}"
            )
        if self.average > self.largest:
            raise ValidationError(
                f"average length {self.average} exceeds largest length {self.largest}"
            )

    def value(self, criterion: Criterion) -> float:
        if criterion is Criterion.AVERAGE:
            return self.average
        if criterion is Criterion.DOMINANT:
            return float(self.dominant)
        return float(self.largest)


@dataclass(frozen=True)
class CacheConfig:
    """A direct-mapped cache geometry: line size in bytes and line count,
    both powers of two within the tool's bounds."""

    line_size_bytes: int
    num_lines: int

    def __post_init__(self):
        if not is_pow2(self.line_size_bytes):
            raise ValidationError(
                f"line size {self.line_size_bytes} is not a power of two"
            )
        if not is_pow2(self.num_lines):
            raise ValidationError(f"num lines {self.num_lines} is not a power of two")
        if not LINE_SIZE_MIN_BYTES <= self.line_size_bytes <= LINE_SIZE_MAX_BYTES:
            raise ValidationError(
                f"line size {self.line_size_bytes} outside "
                f"[{LINE_SIZE_MIN_BYTES}, {LINE_SIZE_MAX_BYTES}]"
            )
        if not NUM_LINES_MIN <= self.num_lines <= NUM_LINES_MAX:
            raise ValidationError(
                f"num lines {self.num_lines} outside [{NUM_LINES_MIN}, {NUM_LINES_MAX}]"
            )

    @property
    def total_bytes(self) -> int:
        return self.line_size_bytes * self.num_lines


def is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def ceil_pow2(n: int) -> int:
    """Smallest power of two >= n."""
    if n < 1:
        raise ValidationError(f"ceil_pow2 needs n >= 1, got {n}")
    return 1 << (n - 1).bit_length()


def nearest_pow2(x: int) -> int:
    """Power of two with minimum linear distance to x; ties round DOWN.

    The only ties are at x = 3*2^k, exactly midway between 2^(k+1) and
    2^(k+2); those resolve to the lower power (48 -> 32, 96 -> 64).
    """
    if x < 1:
        raise ValidationError(f"nearest_pow2 needs x >= 1, got {x}")
    hi = ceil_pow2(x)
    if hi == x:
        return x
    lo = hi // 2
    return lo if (x - lo) <= (hi - x) else hi


def _round_half_up(value: float) -> int:
    return int(math.floor(value + 0.5))


def weighted_average_length(
    blocks: Sequence[BasicBlock],
    profile: ExecutionProfile,
    *,
    divide_by_block_count: bool = False,
) -> float:
    """Frequency-weighted mean block length: sum(f*len) / sum(f).

    With divide_by_block_count the weighted sum is divided by the number of
    blocks instead of the total frequency; that alternative normalization is
    kept only for auditing and is not used by the sizing pipeline.
    """
    if not blocks:
        raise ValidationError("no blocks to average")
    weighted_sum = 0
    total = 0
    for block in blocks:
        freq = _frequency_of(block, profile)
        weighted_sum += freq * block.length
        total += freq
    if total == 0:
        raise ValidationError("all-zero profile over the given blocks")
    if divide_by_block_count:
        return weighted_sum / len(blocks)
    return weighted_sum / total


def dominant_length(
    blocks: Sequence[BasicBlock], profile: ExecutionProfile
) -> tuple[int, int]:
    """Length and id of the block maximizing frequency*length.

    Ties on the product go to the longer block; remaining ties go to the
    smaller id.
    """
    if not blocks:
        raise ValidationError("no blocks to rank")
    best = None
    for block in blocks:
        freq = _frequency_of(block, profile)
        key = (freq * block.length, block.length, -block.id)
        if best is None or key > best[0]:
            best = (key, block)
    if best[0][0] == 0:
        raise ValidationError("all-zero profile over the given blocks")
    return best[1].length, best[1].id


def largest_length(blocks: Sequence[BasicBlock]) -> tuple[int, int]:
    """Maximum block length over all blocks (static); ties go to the smaller id."""
    if not blocks:
        raise ValidationError("no blocks to rank")
    best = max(blocks, key=lambda block: (block.length, -block.id))
    return best.length, best.id


def _frequency_of(block: BasicBlock, profile: ExecutionProfile) -> int:
    try:
        return profile[block.id]
    except IndexError:
        raise ValidationError(f"profile does not cover block id {block.id}") from None


def block_length_metrics(
    cfg: ControlFlowGraph, profile: ExecutionProfile
) -> BlockLengthMetrics:
    """Compute all three block-length statistics for a profiled program."""
    average = weighted_average_length(cfg.blocks, profile)
    dominant, dominant_id = dominant_length(cfg.blocks, profile)
    largest, largest_id = largest_length(cfg.blocks)
    return BlockLengthMetrics(
        average=average,
        dominant=dominant,
        dominant_block_id=dominant_id,
        largest=largest,
        largest_block_id=largest_id,
    )


def estimate_num_lines(cfg: ControlFlowGraph) -> int:
    """One cache line per basic block, rounded up to a power of two."""
    return ceil_pow2(cfg.num_blocks)


def estimate_line_size(
    metrics: BlockLengthMetrics, criterion: Criterion, isa: IsaProfile
) -> int:
    """Line size in bytes: criterion length * instruction width, rounded to the
    nearest power of two (half-up to an integer first for the real-valued
    average)."""
    scaled = metrics.value(criterion) * isa.instruction_width_bytes
    return nearest_pow2(_round_half_up(scaled))


def estimate_config(
    cfg: ControlFlowGraph,
    profile: ExecutionProfile,
    criterion: Criterion,
    isa: IsaProfile,
) -> tuple[CacheConfig, BlockLengthMetrics]:
    """Full estimation pipeline: metrics -> line size, block count -> line count.

    Raises ValidationError when the estimate falls outside the representable
    cache bounds (it is reported, never clamped).
    """
    metrics = block_length_metrics(cfg, profile)
    config = CacheConfig(
        line_size_bytes=estimate_line_size(metrics, criterion, isa),
        num_lines=estimate_num_lines(cfg),
    )
    return config, metrics
