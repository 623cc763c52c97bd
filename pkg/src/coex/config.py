"""Run configuration shared by the CLI and the orchestrator."""

from __future__ import annotations

from dataclasses import dataclass, field

from .tensor import CostConfig

DEFAULT_MAX_OPS = 10_000
DEFAULT_CHANNEL_CAPACITY = 64


@dataclass
class RunConfig:
    seed: int = 0
    cost: CostConfig = field(default_factory=CostConfig.zero)
    max_ops: int = DEFAULT_MAX_OPS
    channel_capacity: int = DEFAULT_CHANNEL_CAPACITY
    # extra per-event consistency assertions (skeleton-check mode)
    check: bool = False
