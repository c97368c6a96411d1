from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from ..tour import Tour

# Heuristic randomness comes from Python's random.Random (Mersenne Twister
# MT19937, seeded with the integer seed); recorded in tour metadata.
GENERATOR_NAME = "python-random-mt19937"


class StopReason(enum.Enum):
    COMPLETED = "completed"
    TIME_LIMIT = "time_limit"
    TARGET_REACHED = "target_reached"


@dataclass(frozen=True)
class SearchConfig:
    mode: str = "heuristic"
    closed: bool = False
    time_limit: Optional[float] = None
    seed: int = 0
    restarts: int = 64
    beam_width: int = 1
    threads: int = 1
    target_length: Optional[int] = None

    def __post_init__(self) -> None:
        if self.mode not in ("exhaustive", "heuristic"):
            raise ValueError(f"mode must be 'exhaustive' or 'heuristic', got {self.mode!r}")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")
        for name in ("restarts", "beam_width", "threads"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if self.target_length is not None and self.target_length < 0:
            raise ValueError("target_length must be non-negative")


@dataclass
class SearchResult:
    best: Tour
    optimal: bool
    nodes_expanded: int = 0
    restarts_done: int = 0
    elapsed: float = 0.0
    stopped_by: StopReason = StopReason.COMPLETED
    history: list[int] = field(default_factory=list)

    @property
    def length(self) -> int:
        return self.best.length
