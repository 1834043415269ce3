"""Combinatorics of the simple closed curves on a one-holed torus. A simple
closed curve is labelled by its slope, a primitive homology class (p, q)
taken up to sign. Two curves meet :func:`intersection_number` times, Farey
neighbours meet exactly once, and the mapping class group acts on the
slopes through :class:`MappingClass` matrices of SL(2, Z).

Examples:

    >>> import pyteich as pt
    >>> pt.normalize_slope(-2, -4)
    Slope(p=1, q=2)
    >>> pt.farey_children(pt.Slope(1, 1), pt.Slope(0, 1))
    (Slope(p=1, q=2), Slope(p=1, q=0))
    >>> str(pt.Slope.parse('1/0'))
    '1/0'
"""
from __future__ import annotations
from collections import namedtuple
from math import gcd
from typing import Iterator, List, Set, Tuple

INT64_LIMIT = 2**63

def _check_int(value: int, name: str) -> int:
    if isinstance(value, float):
        if not value.is_integer():
            raise ValueError(f'{name} must be an integer: {value}')
    value = int(value)
    if abs(value) >= INT64_LIMIT:
        raise OverflowError(f'{name} = {value:d} exceeds the 64-bit integer range')
    return value

class Slope(namedtuple('Slope', ['p', 'q'])):
    """Normalized slope of a simple closed curve: gcd(|p|, |q|) = 1,
    q > 0 or (p, q) = (1, 0). Use :func:`normalize_slope` to build a slope
    from an arbitrary integer vector.

    Args:
        p : First homology coordinate.
        q : Second homology coordinate.

    Raises:
        ValueError : If (p, q) is not primitive or not normalized.
        OverflowError : If a coordinate doesn't fit a signed 64-bit integer.
    """
    __slots__ = ()

    def __new__(cls, p: int, q: int) -> Slope:
        p, q = _check_int(p, 'p'), _check_int(q, 'q')
        if p == 0 and q == 0:
            raise ValueError('Slope (0, 0) is not a simple closed curve')
        if gcd(p, q) != 1:
            raise ValueError(f'Slope ({p:d}, {q:d}) is not primitive')
        if q < 0 or (q == 0 and p != 1):
            raise ValueError(f'Slope ({p:d}, {q:d}) is not normalized')
        return super().__new__(cls, p, q)

    @classmethod
    def parse(cls, string: str) -> Slope:
        """Parse a slope written as 'p/q' ('1/0' for the slope at infinity).
        The result is normalized.

        Args:
            string : Slope in 'p/q' notation.

        Returns:
            Normalized slope.

        Raises:
            ValueError : If `string` is not in 'p/q' notation.
        """
        parts = str(string).strip().split('/')
        if len(parts) != 2:
            raise ValueError(f"Invalid slope '{string}', expected 'p/q'")
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError as err:
            raise ValueError(f"Invalid slope '{string}', expected 'p/q'") from err
        return normalize_slope(p, q)

    def __neg__(self) -> Tuple[int, int]:
        return (-self.p, -self.q)

    def __str__(self) -> str:
        return f'{self.p:d}/{self.q:d}'

class MappingClass(namedtuple('MappingClass', ['a', 'b', 'c', 'd'])):
    """Element of SL(2, Z) acting on slopes as a mapping class of the
    torus: (p, q) -> (a p + b q, c p + d q).

    Args:
        a : Upper left entry.
        b : Upper right entry.
        c : Lower left entry.
        d : Lower right entry.

    Raises:
        ValueError : If the determinant is not 1.
    """
    __slots__ = ()

    def __new__(cls, a: int, b: int, c: int, d: int) -> MappingClass:
        a, b, c, d = (_check_int(val, name) for val, name in zip((a, b, c, d), 'abcd'))
        if a * d - b * c != 1:
            raise ValueError(f'Determinant of [[{a:d}, {b:d}], [{c:d}, {d:d}]] '\
                             f'is {a * d - b * c:d}, must be 1')
        return super().__new__(cls, a, b, c, d)

    @classmethod
    def identity(cls) -> MappingClass:
        return cls(1, 0, 0, 1)

    @classmethod
    def from_columns(cls, first: Tuple[int, int], second: Tuple[int, int]) -> MappingClass:
        """Return the matrix with the integer vectors `first` and `second`
        as columns.

        Raises:
            ValueError : If det(first, second) is not 1.
        """
        return cls(first[0], second[0], first[1], second[1])

    @classmethod
    def dehn_twist(cls, slope: Slope) -> MappingClass:
        """Return the Dehn twist along `slope`, acting on homology as
        v -> v + det(v, slope) slope. For any Farey neighbour v of `slope`
        with det(v, slope) = 1 the twist maps v to v + slope.
        """
        p, q = slope
        return cls(1 + p * q, -p * p, q * q, 1 - p * q)

    def __matmul__(self, other: MappingClass) -> MappingClass:
        if not isinstance(other, MappingClass):
            return NotImplemented
        return MappingClass(self.a * other.a + self.b * other.c,
                            self.a * other.b + self.b * other.d,
                            self.c * other.a + self.d * other.c,
                            self.c * other.b + self.d * other.d)

    def __pow__(self, power: int) -> MappingClass:
        base = self if power >= 0 else self.inverse()
        result = MappingClass.identity()
        for _ in range(abs(int(power))):
            result = result @ base
        return result

    def __call__(self, vec: Tuple[int, int]) -> Tuple[int, int]:
        return (self.a * vec[0] + self.b * vec[1], self.c * vec[0] + self.d * vec[1])

    def inverse(self) -> MappingClass:
        return MappingClass(self.d, -self.b, -self.c, self.a)

def normalize_slope(p: int, q: int) -> Slope:
    """Return the normalized slope of the integer vector (p, q): divided by
    gcd(|p|, |q|) and with the sign fixed so that q > 0, or (p, q) = (1, 0).

    Args:
        p : First coordinate.
        q : Second coordinate.

    Returns:
        Normalized slope.

    Raises:
        ValueError : If (p, q) = (0, 0).
        OverflowError : If a coordinate doesn't fit a signed 64-bit integer.
    """
    p, q = _check_int(p, 'p'), _check_int(q, 'q')
    if p == 0 and q == 0:
        raise ValueError('Zero vector (0, 0) has no slope')
    div = gcd(p, q)
    p, q = p // div, q // div
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return Slope(p, q)

def slope_determinant(first: Tuple[int, int], second: Tuple[int, int]) -> int:
    """Signed algebraic intersection p1 q2 - p2 q1 of two integer vectors."""
    return first[0] * second[1] - second[0] * first[1]

def intersection_number(first: Slope, second: Slope) -> int:
    """Return the geometric intersection number |p1 q2 - p2 q1| of two
    simple closed curves.
    """
    return abs(slope_determinant(first, second))

def is_farey_neighbor(first: Slope, second: Slope) -> bool:
    return intersection_number(first, second) == 1

def farey_children(first: Slope, second: Slope) -> Tuple[Slope, Slope]:
    """Return the two slopes completing a pair of Farey neighbours to a
    Farey triangle.

    Args:
        first : First slope.
        second : Second slope, a Farey neighbour of `first`.

    Returns:
        A tuple of two slopes ('mediant', 'difference'), the normalized
        sum and difference of the two vectors.

    Raises:
        ValueError : If the slopes are not Farey neighbours.
    """
    if not is_farey_neighbor(first, second):
        raise ValueError(f'Slopes {first!s} and {second!s} are not Farey neighbours')
    return (normalize_slope(first.p + second.p, first.q + second.q),
            normalize_slope(first.p - second.p, first.q - second.q))

def farey_companion(first: Slope, second: Slope, slope: Slope) -> Slope:
    """Return the other Farey child of (`first`, `second`): the slope that
    replaces `slope` in a Vieta flip of the triangle.

    Raises:
        ValueError : If `slope` is not a Farey child of `first` and `second`.
    """
    mediant, difference = farey_children(first, second)
    if slope == mediant:
        return difference
    if slope == difference:
        return mediant
    raise ValueError(f'Slope {slope!s} does not complete {first!s}, {second!s} '\
                     'to a Farey triangle')

def apply_mapping_class(mapping: MappingClass, slope: Slope) -> Slope:
    """Return the image of `slope` under the mapping class `mapping`."""
    return normalize_slope(*mapping(slope))

def _extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        quot, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - quot * x1
        y0, y1 = y1, y0 - quot * y1
    return a, x0, y0

def farey_neighbor(slope: Slope) -> Slope:
    """Return a canonical Farey neighbour of `slope` found by the extended
    Euclidean algorithm.
    """
    if slope.q == 0:
        return Slope(0, 1)
    div, x, y = _extended_gcd(slope.p, slope.q)
    # p x + q y = div = +-1
    return normalize_slope(-y * div, x * div)

def oriented_basis(first: Slope, second: Slope) -> MappingClass:
    """Return the mapping class sending (1, 0) to `first` and (0, 1) to
    `second` (or its negative vector), so that the columns form a positively
    oriented basis of the homology.

    Raises:
        ValueError : If the slopes are not Farey neighbours.
    """
    det = slope_determinant(first, second)
    if abs(det) != 1:
        raise ValueError(f'Slopes {first!s} and {second!s} are not Farey neighbours')
    return MappingClass.from_columns(first, (det * second.p, det * second.q))

BASE_TRIANGLE = (Slope(1, 0), Slope(0, 1), Slope(1, 1))

def farey_slopes(height: int) -> Iterator[Slope]:
    """Iterate over every slope with max(|p|, |q|) <= `height`, generated
    from the base triangle (1/0, 0/1, 1/1) by repeated Farey children. The
    height of the new child grows along each branch, so a branch is cut as
    soon as its child is too high.

    Args:
        height : Maximal height of the slopes.

    Returns:
        An iterator of distinct slopes in the order of discovery.
    """
    if height < 1:
        return
    yield from BASE_TRIANGLE
    stack = [(BASE_TRIANGLE[0], BASE_TRIANGLE[2], BASE_TRIANGLE[1]),
             (BASE_TRIANGLE[1], BASE_TRIANGLE[2], BASE_TRIANGLE[0])]
    # the difference child of (1, 0) and (0, 1)
    stack.append((BASE_TRIANGLE[0], BASE_TRIANGLE[1], BASE_TRIANGLE[2]))
    while stack:
        first, second, parent = stack.pop()
        child = farey_companion(first, second, parent)
        if max(abs(child.p), abs(child.q)) > height:
            continue
        yield child
        stack.append((first, child, second))
        stack.append((second, child, first))

def coprime_slopes(height: int) -> List[Slope]:
    """Return every slope with max(|p|, |q|) <= `height` by direct
    enumeration of the coprime pairs, sorted lexicographically.
    """
    slopes: Set[Slope] = set()
    for p in range(-height, height + 1):
        for q in range(0, height + 1):
            if (p, q) != (0, 0) and gcd(p, q) == 1 and (q > 0 or p == 1):
                slopes.add(Slope(p, q))
    return sorted(slopes)
