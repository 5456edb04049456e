"""Reproducible random streams on top of the Philox counter-based generator.

Every stochastic operation in the package draws from an :class:`RngStream`.
A stream is identified by a ``(seed, stream)`` pair; identical pairs produce
identical draw sequences on every platform, and child streams derived with
the same tags are equally stable. This is what lets per-image work run in
any order (or in parallel) without changing results.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (x ^ (x >> 31)) & _MASK64


def _mix(*parts: int) -> int:
    acc = 0
    for p in parts:
        acc = _splitmix64(acc ^ (p & _MASK64))
    return acc


def _tag_to_int(tag: int | str) -> int:
    if isinstance(tag, bool):
        raise TypeError("bool is not a valid stream tag")
    if isinstance(tag, int):
        return tag & _MASK64
    if isinstance(tag, str):
        digest = hashlib.sha256(tag.encode("utf-8")).digest()
        return int.from_bytes(digest[:8], "little")
    raise TypeError(f"stream tags must be int or str, got {type(tag).__name__}")


class RngStream:
    """A seeded, forkable random stream.

    Args:
        seed: Master seed, 64-bit unsigned.
        stream: Stream id distinguishing independent streams under one seed.
    """

    def __init__(self, seed: int, stream: int = 0):
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise TypeError("seed must be an int")
        if not 0 <= seed <= _MASK64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if not isinstance(stream, int) or not 0 <= stream <= _MASK64:
            raise ValueError("stream must be a 64-bit unsigned int")
        self.seed = seed
        self.stream = stream
        key = (_mix(seed, 0x5EED) << 64) | _mix(stream, 0x57E3A)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def child(self, *tags: int | str) -> "RngStream":
        """Derive an independent stream keyed by ``tags``.

        The same parent and tags always yield the same child, regardless of
        how many draws the parent has made.
        """
        if not tags:
            raise ValueError("child() needs at least one tag")
        new_stream = _mix(self.stream, *(_tag_to_int(t) for t in tags))
        return RngStream(self.seed, new_stream)

    # Thin delegations; all consume this stream's state in call order.

    def standard_normal(self, shape, dtype=np.float32) -> np.ndarray:
        return self._gen.standard_normal(size=tuple(shape), dtype=dtype)

    def uniform(self, low: float = 0.0, high: float = 1.0, size=None):
        return self._gen.uniform(low, high, size=size)

    def integers(self, low: int, high: int, size=None):
        return self._gen.integers(low, high, size=size)

    def permutation(self, n: int) -> np.ndarray:
        return self._gen.permutation(n)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream={self.stream:#x})"
