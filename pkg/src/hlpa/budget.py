from __future__ import annotations

import os

from .errors import BudgetExhausted

DEFAULT_MAX_STEPS = 10**7


def max_steps() -> int:
    """Step cap from ``HLPA_MAX_STEPS`` (read on every call)."""
    raw = os.environ.get("HLPA_MAX_STEPS")
    if not raw:
        return DEFAULT_MAX_STEPS
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_MAX_STEPS
    return value if value > 0 else DEFAULT_MAX_STEPS


class StepCounter:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None) -> None:
        self.limit = max_steps() if limit is None else limit
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExhausted(self.limit)
