import random

import pytest

from icachefit import (
    ARM,
    PISA,
    BasicBlock,
    BlockLengthMetrics,
    CacheConfig,
    Criterion,
    ExecutionProfile,
    ValidationError,
    block_length_metrics,
    ceil_pow2,
    dominant_length,
    estimate_config,
    estimate_line_size,
    estimate_num_lines,
    largest_length,
    nearest_pow2,
    weighted_average_length,
)
from conftest import crc32_like, make_chain_cfg, qsort_like, sha_like


def blocks_of(*lengths):
    return tuple(BasicBlock(i, length) for i, length in enumerate(lengths))


# --- weighted average -------------------------------------------------------

def test_weighted_average_two_blocks():
    # (10*5 + 3*100) / (5 + 100) = 350/105 = 10/3
    blocks = blocks_of(10, 3)
    profile = ExecutionProfile((5, 100))
    assert weighted_average_length(blocks, profile) == pytest.approx(10 / 3)


def test_weighted_average_single_block():
    assert weighted_average_length(blocks_of(7), ExecutionProfile((42,))) == 7.0


def test_weighted_average_constant_length_invariance():
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randint(1, 10)
        length = rng.randint(1, 30)
        counts = [rng.randint(0, 100) for _ in range(n)]
        if not any(counts):
            counts[0] = 1
        blocks = blocks_of(*([length] * n))
        assert weighted_average_length(blocks, ExecutionProfile(tuple(counts))) == length


def test_weighted_average_literal_normalization_flag():
    # same inputs divided by the block count instead of the total frequency
    blocks = blocks_of(10, 3)
    profile = ExecutionProfile((5, 100))
    assert weighted_average_length(blocks, profile, divide_by_block_count=True) == 175.0


def test_weighted_average_zero_profile_rejected():
    blocks = blocks_of(3, 4)
    profile = ExecutionProfile((0, 0, 1))  # positive only outside the block list
    with pytest.raises(ValidationError, match="all-zero"):
        weighted_average_length(blocks[:2], profile)


# --- dominant ---------------------------------------------------------------

def test_dominant_picks_largest_product():
    # products 50 vs 300: block 1 dominates although it is shorter
    blocks = blocks_of(10, 3)
    profile = ExecutionProfile((5, 100))
    assert dominant_length(blocks, profile) == (3, 1)


def test_dominant_product_tie_prefers_longer_block():
    # 4*6 == 8*3 == 24 -> the longer block wins
    blocks = blocks_of(4, 8)
    profile = ExecutionProfile((6, 3))
    assert dominant_length(blocks, profile) == (8, 1)


def test_dominant_full_tie_prefers_smaller_id():
    blocks = blocks_of(6, 6, 6)
    profile = ExecutionProfile((2, 2, 2))
    assert dominant_length(blocks, profile) == (6, 0)


def test_dominant_on_qsort_like_fixture():
    cfg, profile = qsort_like()
    assert dominant_length(cfg.blocks, profile) == (15, 0)
    assert largest_length(cfg.blocks) == (19, 1)


def test_dominant_frequency_scaling_invariance():
    rng = random.Random(17)
    for _ in range(30):
        n = rng.randint(1, 12)
        blocks = blocks_of(*(rng.randint(1, 20) for _ in range(n)))
        counts = [rng.randint(0, 50) for _ in range(n)]
        if not any(counts):
            counts[0] = 1
        base = dominant_length(blocks, ExecutionProfile(tuple(counts)))
        scaled = dominant_length(
            blocks, ExecutionProfile(tuple(7 * c for c in counts))
        )
        assert base == scaled


def test_dominant_matches_bruteforce_oracle():
    rng = random.Random(29)
    for _ in range(100):
        n = rng.randint(1, 10)
        blocks = blocks_of(*(rng.randint(1, 25) for _ in range(n)))
        counts = [rng.randint(0, 40) for _ in range(n)]
        if not any(counts):
            counts[-1] = 3
        profile = ExecutionProfile(tuple(counts))
        # oracle: explicit scan with the documented tie rules
        best_id = 0
        for block in blocks:
            best = blocks[best_id]
            cand = (counts[block.id] * block.length, block.length, -block.id)
            incumbent = (counts[best.id] * best.length, best.length, -best.id)
            if cand > incumbent:
                best_id = block.id
        assert dominant_length(blocks, profile) == (blocks[best_id].length, best_id)


# --- largest ----------------------------------------------------------------

def test_largest_basic_and_ties():
    assert largest_length(blocks_of(10, 3)) == (10, 0)
    assert largest_length(blocks_of(4, 9, 9)) == (9, 1)  # tie -> smaller id


def test_largest_on_fixtures():
    sha_cfg, _ = sha_like()
    assert largest_length(sha_cfg.blocks)[0] == 40
    fft_cfg = make_chain_cfg([119] + [4] * 64)
    assert largest_length(fft_cfg.blocks)[0] == 119


def test_largest_ignores_frequencies():
    cfg, profile = sha_like()
    assert largest_length(cfg.blocks) == (40, 1)  # block 1 has frequency 1


# --- power-of-two rounding --------------------------------------------------

@pytest.mark.parametrize(
    "value,expected",
    [
        (60, 64),
        (76, 64),
        (48, 32),   # exact midpoint rounds down
        (96, 64),   # exact midpoint rounds down
        (64, 64),
        (1, 1),
        (3, 2),
        (476, 512),
        (952, 1024),
    ],
)
def test_nearest_pow2_cases(value, expected):
    assert nearest_pow2(value) == expected


def test_nearest_pow2_exhaustive_against_oracle():
    powers = [1 << k for k in range(16)]
    for x in range(1, 8193):
        # oracle: minimize |p - x|, preferring the smaller power on ties
        expected = min(powers, key=lambda p: (abs(p - x), p))
        assert nearest_pow2(x) == expected


def test_nearest_pow2_adjacent_distance_property():
    for x in range(1, 3000):
        p = nearest_pow2(x)
        assert abs(p - x) <= abs(2 * p - x)
        if p > 1:
            assert abs(p - x) <= abs(p // 2 - x)


def test_nearest_pow2_rejects_nonpositive():
    with pytest.raises(ValidationError):
        nearest_pow2(0)


@pytest.mark.parametrize("value,expected", [(102, 128), (32, 32), (11, 16), (1, 1), (65, 128)])
def test_ceil_pow2_cases(value, expected):
    assert ceil_pow2(value) == expected


def test_ceil_pow2_properties():
    for n in range(1, 4098):
        p = ceil_pow2(n)
        assert p >= n
        if n > 1:
            assert p // 2 < n
    with pytest.raises(ValidationError):
        ceil_pow2(0)


# --- line count -------------------------------------------------------------

@pytest.mark.parametrize("num_blocks,expected", [(49, 64), (46, 64), (1, 1), (102, 128)])
def test_estimate_num_lines(num_blocks, expected):
    cfg = make_chain_cfg([1] * num_blocks)
    assert estimate_num_lines(cfg) == expected


# --- line size --------------------------------------------------------------

def metrics(average, dominant, largest):
    return BlockLengthMetrics(
        average=average,
        dominant=dominant,
        dominant_block_id=0,
        largest=largest,
        largest_block_id=0,
    )


@pytest.mark.parametrize(
    "m,criterion,isa,expected",
    [
        (metrics(8, 15, 19), Criterion.DOMINANT, ARM, 64),     # 60 -> 64
        (metrics(8, 15, 19), Criterion.DOMINANT, PISA, 128),   # 120 -> 128
        (metrics(13, 119, 119), Criterion.LARGEST, PISA, 1024),  # 952 -> 1024
        (metrics(5, 9, 26), Criterion.AVERAGE, ARM, 16),       # 20 -> 16
        (metrics(12, 23, 40), Criterion.AVERAGE, ARM, 32),     # 48 -> 32 (tie)
        (metrics(12, 23, 40), Criterion.AVERAGE, PISA, 64),    # 96 -> 64 (tie)
    ],
)
def test_estimate_line_size(m, criterion, isa, expected):
    assert estimate_line_size(m, criterion, isa) == expected


def test_estimate_line_size_rounds_real_average_half_up():
    # 2.6 * 4 = 10.4 -> 10 -> 8;  3.3 * 4 = 13.2 -> 13 -> 16
    assert estimate_line_size(metrics(2.6, 5, 9), Criterion.AVERAGE, ARM) == 8
    assert estimate_line_size(metrics(3.3, 5, 9), Criterion.AVERAGE, ARM) == 16
    # half-up at the integer step: 2.625 * 4 = 10.5 -> 11 -> 8 (11 is closer to 8)
    assert estimate_line_size(metrics(2.625, 5, 9), Criterion.AVERAGE, ARM) == 8


# --- full configuration -----------------------------------------------------

def test_estimate_config_qsort_like_arm_dominant():
    cfg, profile = qsort_like()
    config, m = estimate_config(cfg, profile, Criterion.DOMINANT, ARM)
    assert (config.line_size_bytes, config.num_lines) == (64, 128)
    assert config.total_bytes == 8 * 1024
    assert m.dominant == 15


def test_estimate_config_sha_like_pisa_dominant():
    cfg, profile = sha_like()
    config, _ = estimate_config(cfg, profile, Criterion.DOMINANT, PISA)
    assert (config.line_size_bytes, config.num_lines) == (128, 64)
    assert config.total_bytes == 8 * 1024


def test_estimate_config_crc32_like_arm_largest():
    cfg, profile = crc32_like()
    config, _ = estimate_config(cfg, profile, Criterion.LARGEST, ARM)
    assert (config.line_size_bytes, config.num_lines) == (64, 16)
    assert config.total_bytes == 1024


def test_estimate_config_out_of_bounds_is_an_error():
    # tiny average: 1 * 4 = 4 B line, below the 8 B minimum -> error, not clamp
    cfg = make_chain_cfg([1, 1])
    profile = ExecutionProfile((3, 3))
    with pytest.raises(ValidationError, match="line size"):
        estimate_config(cfg, profile, Criterion.AVERAGE, ARM)
    # oversized block: 1030 * 8 = 8240 -> 8192 B line, above the 4096 maximum
    big = make_chain_cfg([1030, 1])
    big_profile = ExecutionProfile((5, 1))
    with pytest.raises(ValidationError, match="line size"):
        estimate_config(big, big_profile, Criterion.LARGEST, PISA)


def test_largest_dominates_other_metrics():
    # the maximum bounds any weighted mean and any single block length
    rng = random.Random(61)
    for _ in range(50):
        n = rng.randint(1, 15)
        cfg = make_chain_cfg([rng.randint(1, 30) for _ in range(n)])
        counts = [rng.randint(0, 60) for _ in range(n)]
        if not any(counts):
            counts[0] = 1
        profile = ExecutionProfile(tuple(counts))
        m = block_length_metrics(cfg, profile)
        assert m.dominant <= m.largest
        assert m.average <= m.largest


def test_block_length_metrics_consistency():
    cfg, profile = qsort_like()
    m = block_length_metrics(cfg, profile)
    assert m.dominant <= m.largest
    assert m.average <= m.largest
    assert cfg.blocks[m.dominant_block_id].length == m.dominant
    assert cfg.blocks[m.largest_block_id].length == m.largest


def test_metrics_invariants_enforced():
    with pytest.raises(ValidationError):
        metrics(8, 21, 19)  # dominant > largest
    with pytest.raises(ValidationError):
        metrics(20, 15, 19)  # average > largest
    with pytest.raises(ValidationError):
        metrics(0, 1, 1)


def test_cache_config_validation():
    with pytest.raises(ValidationError, match="not a power of two"):
        CacheConfig(24, 16)
    with pytest.raises(ValidationError, match="not a power of two"):
        CacheConfig(64, 3)
    with pytest.raises(ValidationError, match="line size"):
        CacheConfig(4, 16)
    with pytest.raises(ValidationError, match="line size"):
        CacheConfig(8192, 16)
    with pytest.raises(ValidationError, match="num lines"):
        CacheConfig(64, 131072)
    config = CacheConfig(64, 128)
    assert config.total_bytes == 8192
