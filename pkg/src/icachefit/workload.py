"""Deterministic synthetic workloads: CFG + strict-valid trace pairs.

Used where real benchmark profiles are unavailable.  Generation is a pure
function of the spec: the PRNG is SplitMix64, written out below, so the same
seed produces byte-identical workloads on every platform and Python build.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ValidationError
from .program import BasicBlock, BlockTrace, ControlFlowGraph

_MASK64 = 0xFFFFFFFFFFFFFFFF


class SplitMix64:
    """SplitMix64 generator.

    State advances by the golden-gamma constant; each output applies two
    xor-shift-multiply mixing rounds:

        state = (state + 0x9E3779B97F4A7C15) mod 2^64
        z = state
        z = ((z XOR (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
        z = ((z XOR (z >> 27)) * 0x94D049BB133111EB) mod 2^64
        output = z XOR (z >> 31)
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randint(self, low: int, high: int) -> int:
        """Uniform-ish integer in [low, high], both inclusive (modulo
        reduction; the tiny bias is irrelevant for workload shaping)."""
        if low > high:
            raise ValidationError(f"empty range [{low}, {high}]")
        return low + self.next_u64() % (high - low + 1)


class WorkloadShape(enum.Enum):
    LOOP_NEST = "loopnest"
    HOT_COLD = "hotcold"


@dataclass(frozen=True)
class WorkloadSpec:
    """Parameters of one synthetic workload."""

    seed: int
    num_blocks: int
    min_len: int = 2
    max_len: int = 12
    hot_fraction: float = 0.3
    trace_len: int = 1000
    shape: WorkloadShape = WorkloadShape.LOOP_NEST

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValidationError(f"seed must fit in 64 bits, got {self.seed}")
        if self.num_blocks < 1:
            raise ValidationError(f"num_blocks must be >= 1, got {self.num_blocks}")
        if self.shape is WorkloadShape.LOOP_NEST and self.num_blocks < 2:
            raise ValidationError("loopnest workloads need at least 2 blocks")
        if not 1 <= self.min_len <= self.max_len:
            raise ValidationError(
                f"need 1 <= min_len <= max_len, got [{self.min_len}, {self.max_len}]"
            )
        if not 0 < self.hot_fraction <= 1:
            raise ValidationError(
                f"hot_fraction must be in (0, 1], got {self.hot_fraction}"
            )
        if self.trace_len < 1:
            raise ValidationError(f"trace_len must be >= 1, got {self.trace_len}")


def generate(spec: WorkloadSpec) -> tuple[ControlFlowGraph, BlockTrace]:
    """Generate a (CFG, trace) pair; the trace is strict-valid by construction
    and has exactly spec.trace_len entries."""
    rng = SplitMix64(spec.seed)
    if spec.shape is WorkloadShape.LOOP_NEST:
        return _generate_loop_nest(spec, rng)
    return _generate_hot_cold(spec, rng)


def _random_lengths(spec: WorkloadSpec, rng: SplitMix64) -> list[int]:
    return [rng.randint(spec.min_len, spec.max_len) for _ in range(spec.num_blocks)]


def _generate_loop_nest(
    spec: WorkloadSpec, rng: SplitMix64
) -> tuple[ControlFlowGraph, BlockTrace]:
    """A chain 0 -> 1 -> ... -> n-1 with a back-edge closing a hot inner loop
    and an outer back-edge from the last block to the entry.

    The walk stays inside the inner loop until it has spent roughly
    hot_fraction of the trace budget there, then streams along the chain.
    """
    n = spec.num_blocks
    lengths = _random_lengths(spec, rng)
    loop_start = n // 3
    loop_end = min(loop_start + max(1, n // 4), n - 1)
    # Pin the longest block inside the hot loop so the dominant criterion
    # separates from the average.
    lengths[(loop_start + loop_end) // 2] = spec.max_len

    edges = {(i, i + 1) for i in range(n - 1)}
    edges.add((loop_end, loop_start))
    edges.add((n - 1, 0))

    hot_target = int(round(spec.hot_fraction * spec.trace_len))
    seq = [0]
    hot_visits = 1 if loop_start == 0 else 0
    pos = 0
    while len(seq) < spec.trace_len:
        if pos == loop_end and hot_visits < hot_target:
            nxt = loop_start
        elif pos == n - 1:
            nxt = 0
        else:
            nxt = pos + 1
        seq.append(nxt)
        if loop_start <= nxt <= loop_end:
            hot_visits += 1
        pos = nxt

    cfg = ControlFlowGraph(
        blocks=tuple(BasicBlock(i, lengths[i]) for i in range(n)),
        edges=frozenset(edges),
        entry=0,
    )
    return cfg, BlockTrace(tuple(seq))


def _generate_hot_cold(
    spec: WorkloadSpec, rng: SplitMix64
) -> tuple[ControlFlowGraph, BlockTrace]:
    """A hot cycle over the first ceil(hot_fraction * n) blocks with cold
    detour blocks hanging off the cycle end; cold blocks soak up ~10% of the
    visits, the hot set the rest."""
    n = spec.num_blocks
    num_hot = max(1, min(n, int(round(spec.hot_fraction * n))))
    cold_ids = list(range(num_hot, n))
    lengths = _random_lengths(spec, rng)
    lengths[num_hot // 2] = spec.max_len

    edges = {(i, i + 1) for i in range(num_hot - 1)}
    edges.add((num_hot - 1, 0))
    for cold in cold_ids:
        edges.add((num_hot - 1, cold))
        edges.add((cold, 0))

    seq = [0]
    cold_visits = 0
    pos = 0
    while len(seq) < spec.trace_len:
        if pos >= num_hot:
            nxt = 0
        elif pos == num_hot - 1 and cold_ids and (cold_visits + 1) * 10 <= len(seq) + 1:
            nxt = cold_ids[rng.randint(0, len(cold_ids) - 1)]
            cold_visits += 1
        else:
            nxt = 0 if pos == num_hot - 1 else pos + 1
        seq.append(nxt)
        pos = nxt

    cfg = ControlFlowGraph(
        blocks=tuple(BasicBlock(i, lengths[i]) for i in range(n)),
        edges=frozenset(edges),
        entry=0,
    )
    return cfg, BlockTrace(tuple(seq))
