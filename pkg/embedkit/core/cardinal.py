#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Cardinal dimensions: a nonnegative integer or "infinite".

Kernel dimensions and range codimensions of the operators we classify are
either finite or infinite, and that distinction is all the necessary
condition for embeddability looks at.

本模块提供基数维度（有限或无穷）。
"""

from dataclasses import dataclass
from functools import total_ordering
from typing import Optional, Union


@total_ordering
@dataclass(frozen=True)
class CardinalDim:
    """Finite(n) for n >= 0, or Infinite (``count is None``)."""

    count: Optional[int]

    def __post_init__(self):
        if self.count is not None:
            if isinstance(self.count, bool) or int(self.count) != self.count:
                raise ValueError(f"Finite cardinal must be an integer, got {self.count!r}")
            if self.count < 0:
                raise ValueError(f"Finite cardinal must be nonnegative, got {self.count}")
            object.__setattr__(self, "count", int(self.count))

    @classmethod
    def finite(cls, n: int) -> "CardinalDim":
        return cls(n)

    @classmethod
    def infinite(cls) -> "CardinalDim":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.count is None

    @property
    def is_zero(self) -> bool:
        return self.count == 0

    @property
    def is_finite_nonzero(self) -> bool:
        """True exactly for Finite(n) with n >= 1."""
        return self.count is not None and self.count > 0

    def __add__(self, other: "CardinalDim") -> "CardinalDim":
        if not isinstance(other, CardinalDim):
            return NotImplemented
        if self.is_infinite or other.is_infinite:
            return INFINITE
        return CardinalDim(self.count + other.count)

    def __lt__(self, other: "CardinalDim") -> bool:
        if not isinstance(other, CardinalDim):
            return NotImplemented
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.count < other.count

    def __str__(self) -> str:
        return "Infinite" if self.is_infinite else f"Finite({self.count})"

    def to_value(self) -> Union[int, str]:
        """Plain value for report files: the integer, or ``"infinite"``."""
        return "infinite" if self.is_infinite else self.count


INFINITE = CardinalDim(None)
ZERO = CardinalDim(0)


def cardinal_sum(*dims: CardinalDim) -> CardinalDim:
    """Cardinal sum of any number of dimensions (Finite(0) for none)."""
    total = ZERO
    for dim in dims:
        total = total + dim
    return total
