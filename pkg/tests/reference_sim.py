"""Naive reference implementations used as oracles.

Deliberately independent of the package internals: the cache model here keeps
an index -> tag dictionary and recomputes index/tag per access, so agreement
with the package's simulator is a genuine cross-check rather than a tautology.
"""


def naive_direct_mapped(addresses, line_size, num_lines):
    """Reference direct-mapped cold cache; returns (accesses, misses)."""
    stored_tags = {}
    accesses = 0
    misses = 0
    for address in addresses:
        accesses += 1
        line_number = address // line_size
        index = line_number % num_lines
        tag = line_number // num_lines
        if stored_tags.get(index) != tag:
            misses += 1
            stored_tags[index] = tag
    return accesses, misses


def naive_expand(lengths, starts, trace_ids, width):
    """Reference address expansion: explicit list building, no generators."""
    out = []
    for block_id in trace_ids:
        base = starts[block_id]
        for k in range(lengths[block_id]):
            out.append(base + k * width)
    return out
