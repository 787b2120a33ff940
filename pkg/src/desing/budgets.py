"""Resource budgets for the exact-arithmetic kernel.

Groebner bases over Q can blow up; the engine fails loudly instead of
truncating.  Budgets travel in a context variable so worker threads started
with `copy_context` inherit the caller's caps.
"""

from __future__ import annotations

import contextvars
from dataclasses import dataclass

DEFAULT_MAX_SPAIRS = 200_000
DEFAULT_MAX_COEFF_BITS = 100_000
DEFAULT_MAX_STEPS = 500


@dataclass(frozen=True)
class Budget:
    max_spairs: int = DEFAULT_MAX_SPAIRS
    max_coeff_bits: int = DEFAULT_MAX_COEFF_BITS
    max_steps: int = DEFAULT_MAX_STEPS


_current: contextvars.ContextVar[Budget] = contextvars.ContextVar(
    "desing_budget", default=Budget()
)


def current_budget() -> Budget:
    return _current.get()


def set_budget(budget: Budget) -> contextvars.Token:
    return _current.set(budget)


def reset_budget(token: contextvars.Token) -> None:
    _current.reset(token)


class budget_scope:
    """`with budget_scope(Budget(...)):` installs caps for the dynamic extent."""

    def __init__(self, budget: Budget):
        self.budget = budget
        self._token = None

    def __enter__(self):
        self._token = _current.set(self.budget)
        return self.budget

    def __exit__(self, *exc):
        _current.reset(self._token)
        return False
