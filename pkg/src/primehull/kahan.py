"""Compensated (Kahan) float summation with exact-state serialization."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class KahanSum:
    """Running compensated sum.

    The (total, compensation) pair is the whole state: serializing both via
    ``repr`` (shortest round-trip decimal strings) and restoring them
    reproduces the accumulator bit for bit, so checkpointed sums resume
    exactly.
    """

    total: float = 0.0
    compensation: float = 0.0

    def add(self, value: float) -> None:
        y = value - self.compensation
        t = self.total + y
        self.compensation = (t - self.total) - y
        self.total = t

    @property
    def value(self) -> float:
        return self.total

    def state_strings(self) -> tuple[str, str]:
        return repr(self.total), repr(self.compensation)

    @classmethod
    def from_state_strings(cls, total: str, compensation: str) -> "KahanSum":
        return cls(float(total), float(compensation))
