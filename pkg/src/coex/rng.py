"""Deterministic pseudo-random streams.

All randomness in the runtime (synthetic datasets, the stochastic natives)
comes from xorshift64* streams. A stream is identified by a name; its state
is seeded as ``seed XOR fnv1a64(name)`` (with an extra mixing term for
dataset occurrences), so draws are a pure function of (seed, name, index)
and identical across execution modes and replays.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_MULT = 0x2545F4914F6CDD1D
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3

# Substitute state for the (astronomically unlikely) all-zero seed; the
# xorshift recurrence is stuck at zero otherwise.
_ZERO_STATE = 0x9E3779B97F4A7C15


def fnv1a64(text: str) -> int:
    h = _FNV_OFFSET
    for b in text.encode("utf-8"):
        h ^= b
        h = (h * _FNV_PRIME) & _MASK64
    return h


class Xorshift64Star:
    """xorshift64* generator; each draw maps the top 53 bits to [0, 1)."""

    def __init__(self, state: int):
        state &= _MASK64
        self.state = state if state != 0 else _ZERO_STATE

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x = (x ^ (x << 25)) & _MASK64
        x ^= x >> 27
        self.state = x
        return (x * _MULT) & _MASK64

    def next_unit(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53


def stream_state(seed: int, name: str, mix: int = 0) -> int:
    return (seed ^ fnv1a64(name) ^ mix) & _MASK64


def draw_at(seed: int, name: str, index: int) -> float:
    """The index-th unit draw of the named stream (index >= 0)."""
    if index < 0:
        raise ValueError(f"negative draw index {index}")
    gen = Xorshift64Star(stream_state(seed, name))
    for _ in range(index):
        gen.next_u64()
    return gen.next_unit()
