"""On-disk text formats: program files, traces, edge profiles, block profiles.

All serializers emit canonical, byte-deterministic output (sorted directives,
LF line endings, trailing newline) so identical inputs always produce
identical files.
"""

from __future__ import annotations

from typing import Iterator, Mapping

from .errors import ParseError
from .program import BasicBlock, BlockTrace, ControlFlowGraph, ExecutionProfile


def _directive_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    # '#' starts a comment; blank lines are skipped.
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            yield lineno, stripped.split()


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"line {lineno}: {what} must be an integer, got {token!r}") from None


def _expect_args(parts: list[str], count: int, lineno: int, usage: str) -> list[str]:
    if len(parts) - 1 != count:
        raise ParseError(f"line {lineno}: expected '{usage}'")
    return parts[1:]


def parse_program(text: str) -> ControlFlowGraph:
    """Parse a program file into a validated ControlFlowGraph.

    Directives: 'block <id> <length>', 'edge <src> <dst>', 'entry <id>'.
    Ids must be dense 0..n-1; nothing is renumbered silently.
    """
    blocks: dict[int, BasicBlock] = {}
    edges: list[tuple[int, int, int]] = []  # (src, dst, lineno)
    entry: int | None = None
    for lineno, parts in _directive_lines(text):
        kind = parts[0]
        if kind == "block":
            args = _expect_args(parts, 2, lineno, "block <id> <length>")
            block_id = _parse_int(args[0], lineno, "block id")
            length = _parse_int(args[1], lineno, "block length")
            if block_id in blocks:
                raise ParseError(f"line {lineno}: duplicate block id {block_id}")
            if length < 1:
                raise ParseError(f"line {lineno}: block length must be >= 1, got {length}")
            blocks[block_id] = BasicBlock(block_id, length)
        elif kind == "edge":
            args = _expect_args(parts, 2, lineno, "edge <src> <dst>")
            src = _parse_int(args[0], lineno, "edge source")
            dst = _parse_int(args[1], lineno, "edge target")
            edges.append((src, dst, lineno))
        elif kind == "entry":
            args = _expect_args(parts, 1, lineno, "entry <id>")
            if entry is not None:
                raise ParseError(f"line {lineno}: duplicate entry declaration")
            entry = _parse_int(args[0], lineno, "entry id")
        else:
            raise ParseError(f"line {lineno}: unknown directive {kind!r}")

    if not blocks:
        raise ParseError("program declares no blocks")
    if sorted(blocks) != list(range(len(blocks))):
        raise ParseError(
            f"non-dense block ids: expected exactly 0..{len(blocks) - 1}, "
            f"got {sorted(blocks)}"
        )
    if entry is None:
        raise ParseError("missing entry declaration")
    if entry not in blocks:
        raise ParseError(f"entry references unknown block id {entry}")

    edge_set: set[tuple[int, int]] = set()
    for src, dst, lineno in edges:
        if src not in blocks or dst not in blocks:
            raise ParseError(f"line {lineno}: edge to unknown id ({src}, {dst})")
        if (src, dst) in edge_set:
            raise ParseError(f"line {lineno}: duplicate edge ({src}, {dst})")
        edge_set.add((src, dst))

    return ControlFlowGraph(
        blocks=tuple(blocks[i] for i in range(len(blocks))),
        edges=frozenset(edge_set),
        entry=entry,
    )


def serialize_program(cfg: ControlFlowGraph) -> str:
    lines = [f"block {block.id} {block.length}" for block in cfg.blocks]
    lines += [f"edge {src} {dst}" for src, dst in sorted(cfg.edges)]
    lines.append(f"entry {cfg.entry}")
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> BlockTrace:
    """Parse a trace file: whitespace/newline-separated block ids."""
    tokens = text.split()
    if not tokens:
        raise ParseError("empty trace")
    seq = []
    for token in tokens:
        try:
            seq.append(int(token))
        except ValueError:
            raise ParseError(f"bad trace token {token!r} (expected a block id)") from None
    return BlockTrace(tuple(seq))


def serialize_trace(trace: BlockTrace) -> str:
    return "\n".join(str(block_id) for block_id in trace.seq) + "\n"


def parse_edge_profile(text: str) -> tuple[dict[tuple[int, int], int], int]:
    """Parse an edge-profile file into (edge counts, entry count).

    Directives: 'entrycount <n>' exactly once, 'edgecount <src> <dst> <count>'.
    """
    edge_counts: dict[tuple[int, int], int] = {}
    entry_count: int | None = None
    for lineno, parts in _directive_lines(text):
        kind = parts[0]
        if kind == "entrycount":
            args = _expect_args(parts, 1, lineno, "entrycount <n>")
            if entry_count is not None:
                raise ParseError(f"line {lineno}: duplicate entrycount declaration")
            entry_count = _parse_int(args[0], lineno, "entry count")
            if entry_count < 0:
                raise ParseError(f"line {lineno}: negative entry count {entry_count}")
        elif kind == "edgecount":
            args = _expect_args(parts, 3, lineno, "edgecount <src> <dst> <count>")
            src = _parse_int(args[0], lineno, "edge source")
            dst = _parse_int(args[1], lineno, "edge target")
            count = _parse_int(args[2], lineno, "edge count")
            if count < 0:
                raise ParseError(f"line {lineno}: negative count on edge ({src}, {dst})")
            if (src, dst) in edge_counts:
                raise ParseError(f"line {lineno}: duplicate edgecount for ({src}, {dst})")
            edge_counts[(src, dst)] = count
        else:
            raise ParseError(f"line {lineno}: unknown directive {kind!r}")
    if entry_count is None:
        raise ParseError("missing entrycount declaration")
    return edge_counts, entry_count


def serialize_edge_profile(edge_counts: Mapping[tuple[int, int], int], entry_count: int) -> str:
    lines = [f"entrycount {entry_count}"]
    lines += [f"edgecount {src} {dst} {count}" for (src, dst), count in sorted(edge_counts.items())]
    return "\n".join(lines) + "\n"


def parse_profile(text: str, cfg: ControlFlowGraph) -> ExecutionProfile:
    """Parse a block-profile file ('freq <id> <count>' lines) against a program.

    Every block id of the program must appear exactly once.
    """
    seen: dict[int, int] = {}
    for lineno, parts in _directive_lines(text):
        if parts[0] != "freq":
            raise ParseError(f"line {lineno}: unknown directive {parts[0]!r}")
        args = _expect_args(parts, 2, lineno, "freq <id> <count>")
        block_id = _parse_int(args[0], lineno, "block id")
        count = _parse_int(args[1], lineno, "count")
        if not 0 <= block_id < cfg.num_blocks:
            raise ParseError(f"line {lineno}: unknown block id {block_id}")
        if block_id in seen:
            raise ParseError(f"line {lineno}: duplicate freq entry for block {block_id}")
        if count < 0:
            raise ParseError(f"line {lineno}: negative count for block {block_id}")
        seen[block_id] = count
    missing = [i for i in range(cfg.num_blocks) if i not in seen]
    if missing:
        raise ParseError(f"missing freq entry for block {missing[0]}")
    return ExecutionProfile(tuple(seen[i] for i in range(cfg.num_blocks)))


def serialize_profile(profile: ExecutionProfile) -> str:
    lines = [f"freq {block_id} {count}" for block_id, count in enumerate(profile.counts)]
    return "\n".join(lines) + "\n"


def detect_input_kind(text: str) -> str:
    """Classify a dynamic-data file as 'profile', 'edges', or 'trace' by its
    first directive token."""
    for _, parts in _directive_lines(text):
        if parts[0] == "freq":
            return "profile"
        if parts[0] in ("entrycount", "edgecount"):
            return "edges"
        return "trace"
    return "trace"
