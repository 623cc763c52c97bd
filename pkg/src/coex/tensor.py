"""Tensor value model and the deterministic kernel set.

Every tensor is dense float64, row-major. Kernels pin their accumulation
orders (MatMul accumulates along the inner dimension in increasing order,
reductions accumulate in row-major element order) so that repeated runs,
replays, and both execution engines produce bitwise-identical data.

A synthetic cost model can attach a per-kernel latency (slept, not
computed) to emulate an accelerator for benchmarking; by default every
kernel costs nothing.
"""

from __future__ import annotations

import enum
import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import BadAttrs, ShapeMismatch

Shape = tuple[int, ...]
AttrValue = "int | float | str | Shape"
Attrs = dict


class OpKind(enum.Enum):
    MATMUL = "matmul"
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    NEG = "neg"
    RELU = "relu"
    SIGMOID = "sigmoid"
    SUM = "sum"
    MEAN = "mean"
    TRANSPOSE = "transpose"
    RESHAPE = "reshape"
    FILL = "fill"
    READ_VAR = "read_var"
    ASSIGN_VAR = "assign_var"


ARITY = {
    OpKind.MATMUL: 2,
    OpKind.ADD: 2,
    OpKind.SUB: 2,
    OpKind.MUL: 2,
    OpKind.NEG: 1,
    OpKind.RELU: 1,
    OpKind.SIGMOID: 1,
    OpKind.SUM: 1,
    OpKind.MEAN: 1,
    OpKind.TRANSPOSE: 1,
    OpKind.RESHAPE: 1,
    OpKind.FILL: 0,
    OpKind.READ_VAR: 0,
    OpKind.ASSIGN_VAR: 1,
}


def shape_size(shape: Shape) -> int:
    return math.prod(shape)


class Tensor:
    """Immutable dense float64 tensor. ``data`` is a read-only ndarray
    whose shape equals ``shape`` (a rank-0 tensor holds one element)."""

    __slots__ = ("shape", "data")

    def __init__(self, shape: Shape, data: np.ndarray):
        shape = tuple(int(d) for d in shape)
        arr = np.ascontiguousarray(data, dtype=np.float64).reshape(shape)
        arr.flags.writeable = False
        self.shape = shape
        self.data = arr

    @classmethod
    def from_nested(cls, value) -> "Tensor":
        arr = np.asarray(value, dtype=np.float64)
        return cls(tuple(arr.shape), arr)

    @classmethod
    def scalar(cls, value: float) -> "Tensor":
        return cls((), np.asarray(float(value)))

    @classmethod
    def full(cls, shape: Shape, value: float) -> "Tensor":
        return cls(shape, np.full(shape, float(value)))

    def rank(self) -> int:
        return len(self.shape)

    def size(self) -> int:
        return shape_size(self.shape)

    def to_nested(self):
        return self.data.tolist()

    def same_bits(self, other: "Tensor") -> bool:
        return self.shape == other.shape and self.data.tobytes() == other.data.tobytes()

    def __repr__(self):
        return f"Tensor(shape={self.shape}, data={self.data.tolist()!r})"


def canonical_attrs(attrs: Attrs) -> tuple:
    """Attrs compare as their sorted key/value sequences."""
    return tuple(sorted(attrs.items()))


def _require_arity(kind: OpKind, n: int):
    if ARITY[kind] != n:
        raise BadAttrs(f"{kind.value} expects {ARITY[kind]} tensor input(s), got {n}")


def _elementwise_pair(kind: OpKind, a: Shape, b: Shape) -> Shape:
    if a == b:
        return a
    if a == ():
        return b
    if b == ():
        return a
    raise ShapeMismatch(f"{kind.value}: incompatible shapes {list(a)} and {list(b)}")


def infer_shape(
    kind: OpKind,
    attrs: Attrs,
    input_shapes: list[Shape],
    var_shapes: dict[str, Shape] | None = None,
) -> list[Shape]:
    """Output shapes for one kernel invocation.

    ``var_shapes`` supplies the current shape of named variables; it is
    required only for READ_VAR, whose result shape is runtime state.
    """
    _require_arity(kind, len(input_shapes))
    if kind in (OpKind.ADD, OpKind.SUB, OpKind.MUL):
        return [_elementwise_pair(kind, input_shapes[0], input_shapes[1])]
    if kind in (OpKind.NEG, OpKind.RELU, OpKind.SIGMOID):
        return [input_shapes[0]]
    if kind in (OpKind.SUM, OpKind.MEAN):
        return [()]
    if kind == OpKind.MATMUL:
        a, b = input_shapes
        if len(a) != 2 or len(b) != 2:
            raise ShapeMismatch(f"matmul: rank-2 operands required, got {list(a)} and {list(b)}")
        if a[1] != b[0]:
            raise ShapeMismatch(f"matmul: inner dimensions differ ({list(a)} x {list(b)})")
        return [(a[0], b[1])]
    if kind == OpKind.TRANSPOSE:
        perm = attrs.get("perm")
        a = input_shapes[0]
        if not isinstance(perm, tuple) or sorted(perm) != list(range(len(a))):
            raise BadAttrs(f"transpose: perm {perm!r} is not a permutation of rank {len(a)}")
        return [tuple(a[p] for p in perm)]
    if kind == OpKind.RESHAPE:
        target = attrs.get("target_shape")
        if not isinstance(target, tuple) or any(not isinstance(d, int) or d < 0 for d in target):
            raise BadAttrs(f"reshape: bad target shape {target!r}")
        if shape_size(target) != shape_size(input_shapes[0]):
            raise BadAttrs(
                f"reshape: target size {shape_size(target)} != input size {shape_size(input_shapes[0])}"
            )
        return [target]
    if kind == OpKind.FILL:
        shape = attrs.get("shape")
        if not isinstance(shape, tuple) or any(not isinstance(d, int) or d < 0 for d in shape):
            raise BadAttrs(f"fill: bad shape {shape!r}")
        if not isinstance(attrs.get("value"), float):
            raise BadAttrs("fill: missing float value attribute")
        return [shape]
    if kind == OpKind.READ_VAR:
        name = attrs.get("var_name")
        if var_shapes is None or name not in var_shapes:
            raise BadAttrs(f"read_var: unknown variable {name!r}")
        return [var_shapes[name]]
    if kind == OpKind.ASSIGN_VAR:
        if not isinstance(attrs.get("var_name"), str):
            raise BadAttrs("assign_var: missing var_name attribute")
        return [input_shapes[0]]
    raise BadAttrs(f"unknown op kind {kind!r}")


@dataclass
class CostConfig:
    """Per-kind synthetic kernel latency: base microseconds plus
    microseconds per output element. Unconfigured kinds cost 0."""

    base_us: dict[OpKind, float] = field(default_factory=dict)
    per_element_us: dict[OpKind, float] = field(default_factory=dict)

    @classmethod
    def zero(cls) -> "CostConfig":
        return cls()

    @classmethod
    def from_json(cls, path: str) -> "CostConfig":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        cfg = cls()
        for name, entry in raw.items():
            kind = OpKind(name)
            cfg.base_us[kind] = float(entry.get("base_us", 0.0))
            cfg.per_element_us[kind] = float(entry.get("per_element_us", 0.0))
        return cfg


def kernel_cost(kind: OpKind, out_shapes: list[Shape], cost: CostConfig) -> float:
    """Synthetic latency in microseconds for one kernel invocation."""
    base = cost.base_us.get(kind, 0.0)
    per = cost.per_element_us.get(kind, 0.0)
    if base == 0.0 and per == 0.0:
        return 0.0
    return base + per * sum(shape_size(s) for s in out_shapes)


def _sleep_us(us: float):
    if us > 0.0:
        time.sleep(us * 1e-6)


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # Accumulate along k in increasing order (i-k-j order); bitwise
    # equivalent to the scalar triple loop, unlike BLAS matmul.
    m, kdim = a.shape
    n = b.shape[1]
    out = np.zeros((m, n), dtype=np.float64)
    for k in range(kdim):
        out += np.multiply.outer(a[:, k], b[k, :])
    return out


def _reduce_seq(arr: np.ndarray) -> float:
    acc = 0.0
    for v in arr.ravel(order="C").tolist():
        acc += v
    return acc


def execute_kernel(
    kind: OpKind,
    attrs: Attrs,
    inputs: list[Tensor],
    cost: CostConfig | None = None,
    var_shapes: dict[str, Shape] | None = None,
) -> list[Tensor]:
    """Run one kernel. READ_VAR has no data source here and is handled by
    the callers that own a variable store; everything else is pure."""
    out_shapes = infer_shape(kind, attrs, [t.shape for t in inputs], var_shapes)
    if kind == OpKind.READ_VAR:
        raise BadAttrs("read_var is executed against a variable store, not as a kernel")

    if kind == OpKind.MATMUL:
        out = [Tensor(out_shapes[0], _matmul(inputs[0].data, inputs[1].data))]
    elif kind in (OpKind.ADD, OpKind.SUB, OpKind.MUL):
        ops = {OpKind.ADD: np.add, OpKind.SUB: np.subtract, OpKind.MUL: np.multiply}
        out = [Tensor(out_shapes[0], ops[kind](inputs[0].data, inputs[1].data))]
    elif kind == OpKind.NEG:
        out = [Tensor(out_shapes[0], np.negative(inputs[0].data))]
    elif kind == OpKind.RELU:
        out = [Tensor(out_shapes[0], np.maximum(inputs[0].data, 0.0))]
    elif kind == OpKind.SIGMOID:
        with np.errstate(over="ignore"):
            out = [Tensor(out_shapes[0], 1.0 / (1.0 + np.exp(-inputs[0].data)))]
    elif kind == OpKind.SUM:
        out = [Tensor.scalar(_reduce_seq(inputs[0].data))]
    elif kind == OpKind.MEAN:
        n = inputs[0].size()
        if n == 0:
            raise ShapeMismatch("mean of an empty tensor")
        out = [Tensor.scalar(_reduce_seq(inputs[0].data) / n)]
    elif kind == OpKind.TRANSPOSE:
        out = [Tensor(out_shapes[0], np.transpose(inputs[0].data, attrs["perm"]))]
    elif kind == OpKind.RESHAPE:
        out = [Tensor(out_shapes[0], inputs[0].data.reshape(attrs["target_shape"]))]
    elif kind == OpKind.FILL:
        out = [Tensor.full(attrs["shape"], attrs["value"])]
    elif kind == OpKind.ASSIGN_VAR:
        out = [inputs[0]]
    else:  # pragma: no cover - closed enum
        raise BadAttrs(f"unknown op kind {kind!r}")

    if cost is not None:
        _sleep_us(kernel_cost(kind, out_shapes, cost))
    return out
