"""Compensated summation of long series of positive and signed terms.

Examples:

    >>> from pyteich.summation import KahanSum
    >>> acc = KahanSum().extend([1.0, 1e-16, 1e-16])
    >>> acc.value
    1.0000000000000002
"""
from __future__ import annotations
from typing import Iterable

class KahanSum:
    """Second-order compensated accumulator (Klein's refinement of the
    Neumaier variant of Kahan's algorithm). The running sum is stored as
    three floats: the main sum and two orders of carried round-off.

    Args:
        value : Initial value.

    Attributes:
        count : Number of added terms.
    """
    __slots__ = ('_sum', '_carry', '_carry2', 'count')

    def __init__(self, value: float=0.0) -> None:
        self._sum, self._carry, self._carry2 = float(value), 0.0, 0.0
        self.count = 0

    @staticmethod
    def _two_sum(first: float, second: float):
        total = first + second
        if abs(first) >= abs(second):
            return total, (first - total) + second
        return total, (second - total) + first

    def add(self, term: float) -> KahanSum:
        """Add a term to the sum.

        Args:
            term : Value to add.

        Returns:
            The accumulator itself.
        """
        self._sum, carry = self._two_sum(self._sum, float(term))
        self._carry, carry2 = self._two_sum(self._carry, carry)
        self._carry2 += carry2
        self.count += 1
        return self

    def __iadd__(self, term: float) -> KahanSum:
        return self.add(term)

    def extend(self, terms: Iterable[float]) -> KahanSum:
        for term in terms:
            self.add(term)
        return self

    def merge(self, other: KahanSum) -> KahanSum:
        """Merge the partial sum of another block of terms into this one.
        The identity sums keep one partial sum per worker block and merge
        them by block index, so a fixed thread count gives a reproducible
        result.

        Args:
            other : Partial sum.

        Returns:
            The accumulator itself.
        """
        count = self.count
        for part in (other._sum, other._carry, other._carry2):
            self.add(part)
        self.count = count + other.count
        return self

    @property
    def value(self) -> float:
        return self._sum + (self._carry + self._carry2)

    def __float__(self) -> float:
        return self.value

    def __getstate__(self):
        return (self._sum, self._carry, self._carry2, self.count)

    def __setstate__(self, state) -> None:
        self._sum, self._carry, self._carry2, self.count = state

    def __repr__(self) -> str:
        return f'KahanSum({self.value!r}, count={self.count:d})'
