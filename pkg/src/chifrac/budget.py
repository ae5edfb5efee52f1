"""Node budgets for the exact searches.

Every potentially-exponential search ticks a :class:`NodeBudget`. The limit
comes from an explicit argument, the ``CHIFRAC_NODE_BUDGET`` environment
variable, or the default of 10^7 nodes, in that order.
"""

from __future__ import annotations

import os

from .errors import GraphInputError

DEFAULT_NODE_BUDGET = 10_000_000
_ENV_VAR = "CHIFRAC_NODE_BUDGET"


class BudgetExhausted(Exception):
    """Internal signal; callers convert it to ResourceLimitError with
    whatever partial bounds they hold."""


def resolve_node_budget(explicit: int | None = None) -> int:
    if explicit is not None:
        if explicit <= 0:
            raise GraphInputError(f"node budget must be positive, got {explicit}")
        return explicit
    raw = os.environ.get(_ENV_VAR)
    if raw:
        try:
            value = int(raw)
        except ValueError as exc:
            raise GraphInputError(f"{_ENV_VAR} must be an integer, got {raw!r}") from exc
        if value <= 0:
            raise GraphInputError(f"{_ENV_VAR} must be positive, got {value}")
        return value
    return DEFAULT_NODE_BUDGET


class NodeBudget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None):
        self.limit = resolve_node_budget(limit)
        self.used = 0

    def tick(self, count: int = 1) -> None:
        self.used += count
        if self.used > self.limit:
            raise BudgetExhausted
