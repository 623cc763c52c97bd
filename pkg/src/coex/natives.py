"""Host-side native call registry.

Natives stand in for third-party library calls: they run on the
interpreter side, take host values (tensors are materialized by the caller
first), and must be deterministic in (name, arguments, step index) so a
replayed step reproduces them exactly. The stochastic ones draw from the
seeded "native" stream at index ``step * 31 + k``.
"""

from __future__ import annotations

import time

from .errors import NativeArityError, UnknownNative
from .rng import draw_at

_STREAM = "native"


def _as_number(name: str, v, step: int):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise NativeArityError(f"native {name}: expected a number, got {type(v).__name__}", step)
    return v


def _as_index(name: str, v, step: int) -> int:
    v = _as_number(name, v, step)
    if isinstance(v, float):
        if not v.is_integer():
            raise NativeArityError(f"native {name}: expected an integer, got {v!r}", step)
        v = int(v)
    if v < 0:
        raise NativeArityError(f"native {name}: expected a non-negative integer, got {v}", step)
    return v


def _coin(ctx, args):
    k = _as_index("coin", args[0], ctx.step)
    return draw_at(ctx.seed, _STREAM, ctx.step * 31 + k) >= 0.5


def _choice(ctx, args):
    n = _as_index("choice", args[0], ctx.step)
    k = _as_index("choice", args[1], ctx.step)
    if n < 1:
        raise NativeArityError("native choice: population must be >= 1", ctx.step)
    return int(draw_at(ctx.seed, _STREAM, ctx.step * 31 + k) * n)


def _clip(ctx, args):
    xs, lo, hi = args
    lo = _as_number("clip", lo, ctx.step)
    hi = _as_number("clip", hi, ctx.step)

    def rec(v):
        if isinstance(v, list):
            return [rec(x) for x in v]
        v = _as_number("clip", v, ctx.step)
        return min(max(v, lo), hi)

    return rec(xs)


def _len(ctx, args):
    xs = args[0]
    if not isinstance(xs, (list, str)):
        raise NativeArityError(f"native len: expected a list or string, got {type(xs).__name__}", ctx.step)
    return len(xs)


def _mod(ctx, args):
    a = _as_number("mod", args[0], ctx.step)
    b = _as_number("mod", args[1], ctx.step)
    if b == 0:
        raise NativeArityError("native mod: modulus is zero", ctx.step)
    return a % b


def _spin(ctx, args):
    """Busy-wait the given number of microseconds; emulates host-side
    bookkeeping work that occupies the interpreter."""
    us = _as_number("spin", args[0], ctx.step)
    deadline = time.perf_counter() + us * 1e-6
    while time.perf_counter() < deadline:
        pass
    return 0


_REGISTRY = {
    "coin": (1, _coin),
    "choice": (2, _choice),
    "clip": (3, _clip),
    "len": (1, _len),
    "mod": (2, _mod),
    "spin": (1, _spin),
}

NATIVE_ARITY = {name: arity for name, (arity, _) in _REGISTRY.items()}


class NativeContext:
    __slots__ = ("seed", "step")

    def __init__(self, seed: int, step: int):
        self.seed = seed
        self.step = step


def eval_native(name: str, args: list, seed: int, step: int):
    if name not in _REGISTRY:
        raise UnknownNative(f"unknown native {name!r}", step)
    arity, fn = _REGISTRY[name]
    if len(args) != arity:
        raise NativeArityError(f"native {name} takes {arity} argument(s), got {len(args)}", step)
    return fn(NativeContext(seed, max(step, 0)), args)
