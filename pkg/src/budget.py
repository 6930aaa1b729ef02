"""Resource caps shared by every engine.

Exceeding a cap never produces an answer: it raises BudgetExceededError,
which callers report as INDETERMINATE.
"""

import time
from dataclasses import dataclass


class BudgetExceededError(RuntimeError):
    """A computation hit one of its configured caps."""

    def __init__(self, reason_code: str, detail: str):
        super().__init__(f"{reason_code}: {detail}")
        self.reason_code = reason_code
        self.detail = detail


@dataclass(frozen=True)
class Budget:
    """Per-call caps on internal degree, homological steps, matrix size and time."""
    max_degree: int = 40
    max_steps: int = 8
    max_rank: int = 400
    time_limit: float = 900.0

    def __post_init__(self):
        for name in ('max_degree', 'max_steps', 'max_rank', 'time_limit'):
            if getattr(self, name) <= 0:
                raise ValueError(f"Budget cap {name} must be positive, got {getattr(self, name)}")

    def start(self) -> 'Stopwatch':
        return Stopwatch(self)

    def check_degree(self, degree: int, where: str) -> None:
        if degree > self.max_degree:
            raise BudgetExceededError('DEGREE_CAP', f"{where}: degree {degree} > {self.max_degree}")

    def check_rank(self, rank: int, where: str) -> None:
        if rank > self.max_rank:
            raise BudgetExceededError('RANK_CAP', f"{where}: rank {rank} > {self.max_rank}")

    def check_steps(self, steps: int, where: str) -> None:
        if steps > self.max_steps:
            raise BudgetExceededError('STEP_CAP', f"{where}: {steps} steps > {self.max_steps}")


class Stopwatch:
    """Wall-clock guard started at the top of a budgeted computation."""

    def __init__(self, budget: Budget):
        self.budget = budget
        self.started = time.monotonic()

    def elapsed(self) -> float:
        return time.monotonic() - self.started

    def check(self, where: str) -> None:
        if self.elapsed() > self.budget.time_limit:
            raise BudgetExceededError(
                'TIME_LIMIT', f"{where}: {self.elapsed():.1f}s > {self.budget.time_limit}s")
