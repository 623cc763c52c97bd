"""Dataset sources backing ``input(name)``.

File datasets are JSON lines, one record per line:
``{"name": "x", "shape": [2, 2], "data": [1.0, 2.0, 3.0, 4.0]}``;
records are consumed per name in file order. Synthetic datasets draw
standard-uniform values in [-1, 1) from a stream keyed by
(seed, name, occurrence), so a given occurrence always yields identical
data regardless of execution mode or replays.

Cursors (the per-name occurrence counters) are the only mutable state;
they can be snapshotted and restored so an aborted step can be replayed.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import DatasetExhausted, EvalError
from .rng import Xorshift64Star, stream_state
from .tensor import Shape, Tensor, shape_size

_OCC_MIX = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1


class DatasetSource:
    def next(self, name: str, shape: Shape | None, step: int) -> Tensor:
        raise NotImplementedError

    def snapshot(self) -> dict:
        raise NotImplementedError

    def restore(self, snap: dict):
        raise NotImplementedError


class SyntheticDataset(DatasetSource):
    def __init__(self, seed: int):
        self.seed = seed
        self._cursors: dict[str, int] = {}

    def next(self, name: str, shape: Shape | None, step: int) -> Tensor:
        if shape is None:
            raise EvalError(f"input({name!r}): the synthetic dataset needs an explicit shape", step)
        occ = self._cursors.get(name, 0)
        self._cursors[name] = occ + 1
        gen = Xorshift64Star(stream_state(self.seed, name, (occ * _OCC_MIX) & _MASK64))
        data = [gen.next_unit() * 2.0 - 1.0 for _ in range(shape_size(shape))]
        return Tensor(shape, np.asarray(data))

    def snapshot(self) -> dict:
        return dict(self._cursors)

    def restore(self, snap: dict):
        self._cursors = dict(snap)


class FileDataset(DatasetSource):
    def __init__(self, path: str):
        self.path = path
        self._records: dict[str, list[Tensor]] = {}
        self._cursors: dict[str, int] = {}
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                    tensor = Tensor(tuple(rec["shape"]), np.asarray(rec["data"], dtype=float))
                    name = rec["name"]
                except (KeyError, ValueError, TypeError) as exc:
                    raise EvalError(f"{path}:{lineno}: bad dataset record ({exc})") from exc
                self._records.setdefault(name, []).append(tensor)

    def next(self, name: str, shape: Shape | None, step: int) -> Tensor:
        recs = self._records.get(name, [])
        idx = self._cursors.get(name, 0)
        if idx >= len(recs):
            raise DatasetExhausted(f"input({name!r}): dataset exhausted after {idx} record(s)", step)
        self._cursors[name] = idx + 1
        t = recs[idx]
        if shape is not None and t.shape != shape:
            raise EvalError(
                f"input({name!r}): record {idx} has shape {list(t.shape)}, expected {list(shape)}", step
            )
        return t

    def snapshot(self) -> dict:
        return dict(self._cursors)

    def restore(self, snap: dict):
        self._cursors = dict(snap)
