"""Instruction-cache geometry estimation and trace-driven validation."""

from .errors import InputError, ParseError, ValidationError
from .estimator import (
    LINE_SIZE_MAX_BYTES,
    LINE_SIZE_MIN_BYTES,
    NUM_LINES_MAX,
    NUM_LINES_MIN,
    BlockLengthMetrics,
    CacheConfig,
    Criterion,
    block_length_metrics,
    ceil_pow2,
    dominant_length,
    estimate_config,
    estimate_line_size,
    estimate_num_lines,
    is_pow2,
    largest_length,
    nearest_pow2,
    weighted_average_length,
)
from .explorer import (
    DEFAULT_SWEEP_VALUES,
    DOMINANT_ACCURACY_FLOOR_PERCENT,
    AccuracyReport,
    CriterionAccuracy,
    EqualSizeVariation,
    SweepGrid,
    accuracy,
    equal_size_variation,
    rebalance_config,
    render_sweep_csv,
    sweep,
    write_sweep_csv,
)
from .formats import (
    detect_input_kind,
    parse_edge_profile,
    parse_profile,
    parse_program,
    parse_trace,
    serialize_edge_profile,
    serialize_profile,
    serialize_program,
    serialize_trace,
)
from .program import (
    ARM,
    PISA,
    BasicBlock,
    BlockTrace,
    ControlFlowGraph,
    ExecutionProfile,
    IsaProfile,
    frequencies_from_edges,
    frequencies_from_trace,
    validate_trace,
)
from .simulator import (
    MemoryLayout,
    SimResult,
    TimingModel,
    compute_ipc,
    expand_trace,
    layout_blocks,
    simulate_direct_mapped,
    simulate_trace,
)
from .workload import SplitMix64, WorkloadShape, WorkloadSpec, generate

__version__ = "0.1.0"
