"""Simple length spectrum statistics: the systole, the counting function
N(t) = #{simple closed geodesics of length < t} and its quadratic growth,
and the collar and product inequalities checked on enumerated curves.
"""
from __future__ import annotations
from typing import Iterable, List, Tuple
import numpy as np
from .data_container import DataContainer
from .farey import Slope, intersection_number
from .markoff import (GeodesicRecord, SurfacePoint, enumerate_geodesics,
                      enumerate_neighbor_pairs, sink_triple)

class SpectrumSummary(DataContainer):
    """Counting function of the simple length spectrum.

    Args:
        systole_length : Length of the shortest geodesic.
        systole_slope : Its slope.
        counts : List of (t, N(t)) pairs.
        growth_ratio : N(T) / N(T / 2) for the largest threshold T, NaN if
            N(T / 2) is 0.
    """
    attr_set = {'systole_length', 'systole_slope', 'counts', 'growth_ratio'}

    systole_length : float
    systole_slope : Slope
    counts : List[Tuple[float, int]]
    growth_ratio : float

class Violation(DataContainer):
    """A pair of curves failing an inequality lhs <= rhs."""
    attr_set = {'first', 'second', 'lhs', 'rhs'}

    first : Slope
    second : Slope
    lhs : float
    rhs : float

def systole(point: SurfacePoint) -> GeodesicRecord:
    """Return the shortest simple closed geodesic, the smallest member of
    the sink triple. Ties are broken by the slope order.
    """
    triple = sink_triple(point)
    x_min = min(triple.traces)
    slope = min(slope for slope, trace in zip(triple.slopes, triple.traces) if trace == x_min)
    return GeodesicRecord.from_trace(x_min, slope)

def length_spectrum(point: SurfacePoint, cutoff: float, num_threads: int=1,
                    verbose: bool=False) -> List[GeodesicRecord]:
    """Return the geodesics shorter than `cutoff` sorted by length (and by
    slope for equal lengths).
    """
    records = list(enumerate_geodesics(point, cutoff, num_threads=num_threads,
                                       verbose=verbose))
    return sorted(records, key=lambda rec: (rec.length, rec.slope))

def multiplicities(lengths: Iterable[float], rtol: float=1e-9) -> List[Tuple[float, int]]:
    """Group sorted lengths into (length, multiplicity) pairs. Consecutive
    lengths closer than `rtol` (relative) are counted as equal.
    """
    groups: List[Tuple[float, int]] = []
    for length in sorted(lengths):
        if groups and length - groups[-1][0] < rtol * max(1.0, length):
            groups[-1] = (groups[-1][0], groups[-1][1] + 1)
        else:
            groups.append((length, 1))
    return groups

def counting_function(point: SurfacePoint, thresholds: Iterable[float], num_threads: int=1,
                      verbose: bool=False) -> SpectrumSummary:
    """Count the simple closed geodesics shorter than every threshold.

    Args:
        point : Surface point.
        thresholds : Length thresholds.
        num_threads : Number of worker processes used by the enumeration.
        verbose : Show a progress bar if True.

    Returns:
        Summary with the counts and the growth ratio.

    Raises:
        ValueError : If `thresholds` is empty.
    """
    thresholds = sorted(float(t) for t in thresholds)
    if not thresholds:
        raise ValueError('No thresholds provided')
    largest = thresholds[-1]
    lengths = np.sort([rec.length for rec in enumerate_geodesics(point, largest, num_threads,
                                                                 verbose)])
    counts = [(t, int(np.searchsorted(lengths, t, side='left'))) for t in thresholds]
    half = int(np.searchsorted(lengths, 0.5 * largest, side='left'))
    growth_ratio = counts[-1][1] / half if half else np.nan
    record = systole(point)
    return SpectrumSummary(systole_length=record.length, systole_slope=record.slope,
                           counts=counts, growth_ratio=float(growth_ratio))

def collar_width(l_mu: float) -> float:
    """Return the collar width 2 arcsinh(1 / sinh(l / 2)) of a geodesic.

    Raises:
        ValueError : If `l_mu` is not positive.
    """
    if not l_mu > 0.0:
        raise ValueError(f'Length must be positive: {l_mu}')
    return float(2.0 * np.arcsinh(1.0 / np.sinh(0.5 * l_mu)))

def collar_check(point: SurfacePoint, cutoff: float) -> List[Violation]:
    """Check i(gamma, mu) w(l_mu) <= l_gamma for every ordered pair of
    distinct geodesics shorter than `cutoff`.

    Returns:
        List of violations, empty on a hyperbolic surface.
    """
    records = list(enumerate_geodesics(point, cutoff))
    violations = []
    for mu in records:
        width = collar_width(mu.length)
        for gamma in records:
            if gamma.slope == mu.slope:
                continue
            lhs = intersection_number(gamma.slope, mu.slope) * width
            if lhs > gamma.length * (1.0 + 1e-12):
                violations.append(Violation(first=gamma.slope, second=mu.slope, lhs=lhs,
                                            rhs=gamma.length))
    return violations

def product_lower_bound_check(point: SurfacePoint, cutoff: float) -> List[Violation]:
    """Check sinh(l_a / 2) sinh(l_b / 2) >= sinh(sys / 2) (l_a + l_b) / 4 for
    every pair of geodesics meeting once with both lengths below `cutoff`.

    Returns:
        List of violations, the inequality holds on every surface.
    """
    sinh_sys = np.sinh(0.5 * systole(point).length)
    violations = []
    for first, second in enumerate_neighbor_pairs(point, cutoff):
        lhs = np.sinh(0.5 * first.length) * np.sinh(0.5 * second.length)
        rhs = 0.25 * sinh_sys * (first.length + second.length)
        if lhs < rhs:
            violations.append(Violation(first=first.slope, second=second.slope,
                                        lhs=float(lhs), rhs=float(rhs)))
    return violations
