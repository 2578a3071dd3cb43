"""Shared fixtures: the A/B conflict pair and benchmark-like profiled programs."""

import pytest

from icachefit import BasicBlock, BlockTrace, ControlFlowGraph, ExecutionProfile


def make_chain_cfg(lengths):
    """A linear CFG 0 -> 1 -> ... -> n-1 with the given block lengths."""
    blocks = tuple(BasicBlock(i, length) for i, length in enumerate(lengths))
    edges = frozenset((i, i + 1) for i in range(len(lengths) - 1))
    return ControlFlowGraph(blocks=blocks, edges=edges, entry=0)


@pytest.fixture
def ab_cfg():
    """Two blocks of 2 instructions each, alternating forever."""
    return ControlFlowGraph(
        blocks=(BasicBlock(0, 2), BasicBlock(1, 2)),
        edges=frozenset({(0, 1), (1, 0)}),
        entry=0,
    )


@pytest.fixture
def ab_trace():
    return BlockTrace((0, 1, 0, 1))


def qsort_like():
    """102-block program with average length exactly 8, dominant 15 (block 0),
    largest 19 (block 1).

    Weighted sum: 15*997 + 19*1 + 2*(65*12 + 35*11) = 14955 + 19 + 2330 = 17304;
    total frequency 997 + 1 + 1165 = 2163; 17304 / 2163 = 8 exactly.
    """
    lengths = [15, 19] + [2] * 100
    counts = [997, 1] + [12] * 65 + [11] * 35
    return make_chain_cfg(lengths), ExecutionProfile(tuple(counts))


def sha_like():
    """46-block program with dominant 23 (block 0) and largest 40 (block 1)."""
    lengths = [23, 40] + [3] * 44
    counts = [500, 1] + [7] * 44
    return make_chain_cfg(lengths), ExecutionProfile(tuple(counts))


def crc32_like():
    """11-block program where the dominant block is also the largest (20)."""
    lengths = [20, 13] + [5] * 9
    counts = [50, 10] + [3] * 9
    return make_chain_cfg(lengths), ExecutionProfile(tuple(counts))
