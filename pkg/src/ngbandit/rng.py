"""Reproducible, splittable random streams.

A stream is identified by ``(seed, stream_id)``.  The pair is folded into one
64-bit word with a splitmix64 avalanche, which then seeds a PCG64 bit
generator.  Child streams are obtained by hashing a tag into the parent's
``stream_id``, so a replication index, an agent tag, and so on can be used to
derive statistically independent streams from one base seed.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def mix64(a: int, b: int) -> int:
    """Combine two 64-bit words into one well-avalanched word."""
    return splitmix64((a & MASK64) ^ splitmix64(b & MASK64))


def _check_word(name: str, value) -> int:
    if isinstance(value, (bool, np.bool_)) or not isinstance(value, (int, np.integer)):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    value = int(value)
    if not 0 <= value <= MASK64:
        raise ValueError(f"{name} must lie in [0, 2**64), got {value}")
    return value


class RngStream:
    """A seeded random stream.

    Parameters
    ----------
    seed : int
        Base seed, ``0 <= seed < 2**64``.
    stream_id : int
        Replication or purpose index, ``0 <= stream_id < 2**64``.

    The underlying :class:`numpy.random.Generator` is exposed as
    ``generator`` and is consumed by every sampling operation that receives
    this stream.  Use :meth:`replay` to obtain a fresh copy positioned at the
    start of the same sequence.
    """

    __slots__ = ("seed", "stream_id", "generator")

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = _check_word("seed", seed)
        self.stream_id = _check_word("stream_id", stream_id)
        self.generator = np.random.Generator(np.random.PCG64(mix64(self.seed, self.stream_id)))

    def substream(self, tag: int) -> "RngStream":
        """Independent child stream labelled by ``tag``."""
        return RngStream(self.seed, mix64(self.stream_id, _check_word("tag", tag)))

    def replay(self) -> "RngStream":
        return RngStream(self.seed, self.stream_id)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"
