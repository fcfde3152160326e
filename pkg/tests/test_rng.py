import numpy as np
import pytest

from ngbandit.rng import MASK64, RngStream, mix64, splitmix64


def test_splitmix_reference_values():
    # first outputs of the reference splitmix64 generator seeded with 0,
    # i.e. splitmix64 applied to 0, gamma, 2*gamma
    gamma = 0x9E3779B97F4A7C15
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert splitmix64(gamma) == 0x6E789E6AA1B965F4
    assert splitmix64((2 * gamma) & MASK64) == 0x06C45D188009454F


def test_same_pair_same_sequence():
    a = RngStream(7, 3).generator.random(16)
    b = RngStream(7, 3).generator.random(16)
    assert np.array_equal(a, b)


def test_replay_restarts():
    s = RngStream(1, 2)
    first = s.generator.standard_normal(5)
    again = s.replay().generator.standard_normal(5)
    assert np.array_equal(first, again)


def test_distinct_streams_differ_and_are_uncorrelated():
    xs = RngStream(0, 0).generator.standard_normal(200_000)
    ys = RngStream(0, 1).generator.standard_normal(200_000)
    assert not np.array_equal(xs[:10], ys[:10])
    assert abs(np.corrcoef(xs, ys)[0, 1]) < 5 / np.sqrt(xs.size)


def test_substream_is_a_function_of_parent_and_tag():
    p = RngStream(11, 5)
    assert p.substream(3).stream_id == mix64(5, 3)
    assert np.array_equal(p.substream(3).generator.random(4), RngStream(11, 5).substream(3).generator.random(4))
    assert p.substream(3).stream_id != p.substream(4).stream_id


@pytest.mark.parametrize("bad", [-1, 1 << 64, 1.5, True])
def test_rejects_bad_words(bad):
    with pytest.raises((ValueError, TypeError)):
        RngStream(bad, 0)
