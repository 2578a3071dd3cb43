import pytest

from icachefit import (
    SplitMix64,
    ValidationError,
    WorkloadShape,
    WorkloadSpec,
    frequencies_from_trace,
    generate,
    serialize_program,
    serialize_trace,
    validate_trace,
)

ALL_SHAPES = [WorkloadShape.LOOP_NEST, WorkloadShape.HOT_COLD]


def test_splitmix64_reference_outputs():
    # first outputs of the reference SplitMix64 stream for seed 0
    rng = SplitMix64(0)
    assert rng.next_u64() == 0xE220A8397B1DCDAF
    assert rng.next_u64() == 0x6E789E6AA1B965F4
    assert rng.next_u64() == 0x06C45D188009454F


def test_splitmix64_randint_bounds():
    rng = SplitMix64(99)
    values = [rng.randint(3, 9) for _ in range(500)]
    assert min(values) == 3
    assert max(values) == 9
    with pytest.raises(ValidationError):
        rng.randint(5, 4)


@pytest.mark.parametrize("shape", ALL_SHAPES)
def test_generation_is_deterministic(shape):
    spec = WorkloadSpec(seed=1, num_blocks=16, trace_len=300, shape=shape)
    cfg1, trace1 = generate(spec)
    cfg2, trace2 = generate(spec)
    assert serialize_program(cfg1) == serialize_program(cfg2)
    assert serialize_trace(trace1) == serialize_trace(trace2)


def test_different_seeds_differ():
    first = generate(WorkloadSpec(seed=1, num_blocks=16, trace_len=300))
    second = generate(WorkloadSpec(seed=2, num_blocks=16, trace_len=300))
    assert first != second


def test_two_block_loopnest_alternates():
    spec = WorkloadSpec(seed=5, num_blocks=2, trace_len=10, shape=WorkloadShape.LOOP_NEST)
    cfg, trace = generate(spec)
    assert trace.seq == (0, 1, 0, 1, 0, 1, 0, 1, 0, 1)
    validate_trace(trace, cfg, strict=True)


@pytest.mark.parametrize("shape", ALL_SHAPES)
@pytest.mark.parametrize("seed", [0, 1, 7, 123456, 2**63])
def test_generated_traces_are_strict_valid(shape, seed):
    spec = WorkloadSpec(
        seed=seed, num_blocks=2 + seed % 30, min_len=1, max_len=9,
        hot_fraction=0.25, trace_len=400, shape=shape,
    )
    cfg, trace = generate(spec)
    validate_trace(trace, cfg, strict=True)
    assert len(trace) == spec.trace_len
    profile = frequencies_from_trace(trace, cfg)
    assert profile.total == spec.trace_len


@pytest.mark.parametrize("shape", ALL_SHAPES)
def test_generated_lengths_within_bounds(shape):
    spec = WorkloadSpec(seed=11, num_blocks=25, min_len=3, max_len=7, shape=shape)
    cfg, _ = generate(spec)
    assert all(3 <= block.length <= 7 for block in cfg.blocks)


def test_hotcold_hot_share_near_ninety_percent():
    spec = WorkloadSpec(
        seed=9, num_blocks=20, hot_fraction=0.25, trace_len=2000,
        shape=WorkloadShape.HOT_COLD,
    )
    cfg, trace = generate(spec)
    profile = frequencies_from_trace(trace, cfg)
    num_hot = 5  # round(0.25 * 20)
    hot_share = sum(profile.counts[:num_hot]) / profile.total
    assert 0.85 <= hot_share <= 0.95


def test_loopnest_hot_loop_share_meets_target():
    spec = WorkloadSpec(
        seed=21, num_blocks=24, hot_fraction=0.5, trace_len=1500,
        shape=WorkloadShape.LOOP_NEST,
    )
    cfg, trace = generate(spec)
    loop_start = 24 // 3
    loop_end = loop_start + 24 // 4
    hot_visits = sum(1 for b in trace.seq if loop_start <= b <= loop_end)
    # the walk keeps looping until the budget is spent, then passes through
    assert hot_visits >= 0.5 * spec.trace_len
    assert hot_visits < spec.trace_len


def test_invalid_specs_rejected():
    with pytest.raises(ValidationError):
        WorkloadSpec(seed=1, num_blocks=1, shape=WorkloadShape.LOOP_NEST)
    with pytest.raises(ValidationError):
        WorkloadSpec(seed=1, num_blocks=0, shape=WorkloadShape.HOT_COLD)
    with pytest.raises(ValidationError):
        WorkloadSpec(seed=1, num_blocks=4, hot_fraction=0.0)
    with pytest.raises(ValidationError):
        WorkloadSpec(seed=1, num_blocks=4, hot_fraction=1.5)
    with pytest.raises(ValidationError):
        WorkloadSpec(seed=1, num_blocks=4, min_len=5, max_len=3)
    with pytest.raises(ValidationError):
        WorkloadSpec(seed=1, num_blocks=4, trace_len=0)
    with pytest.raises(ValidationError):
        WorkloadSpec(seed=2**64, num_blocks=4)
    with pytest.raises(ValidationError):
        WorkloadSpec(seed=-1, num_blocks=4)


def test_single_block_hotcold_self_loops():
    spec = WorkloadSpec(seed=3, num_blocks=1, trace_len=12, shape=WorkloadShape.HOT_COLD)
    cfg, trace = generate(spec)
    assert trace.seq == (0,) * 12
    validate_trace(trace, cfg, strict=True)
