"""Length series over the simple closed geodesics of a one-holed torus:

* McShane's identity for a punctured torus, sum of 2 / (1 + exp(l)) = 1.
* The arctan identity, sum of arctan(cosh(l_delta / 4) / sinh(l / 2)) =
  3 pi / 2 for every boundary length.
* The telescoped sum of the angles along a twist orbit.
* The variation of the angle series along a twist flow, which vanishes.
* The limit of sum f(sech(l / 2)) as the systole shrinks to zero.

Every series is summed with :class:`pyteich.summation.KahanSum` and
reported in a :class:`SeriesReport` with an estimate of the omitted tail.
The tail estimates bound the number of curves in [t, t + 1) by A (2 t + 1)
with the counting constant A = 2 max N(t) / t**2 fitted on the enumerated
curves, so they are only as rigorous as this empirical constant.
"""
from __future__ import annotations
from typing import Callable, Dict, List, Optional, Tuple
import numpy as np
from scipy.integrate import quad
from scipy.special import expit
from .data_container import DataContainer
from .farey import (Slope, farey_neighbor, intersection_number, normalize_slope,
                    slope_determinant)
from .geometry import (TwistFlow, angle_cosine_rule, angle_differential, length_from_trace,
                       twist_orbit)
from .markoff import (SurfacePoint, enumerate_geodesics, enumerate_neighbor_pairs,
                      trace_of_slope)
from .spectrum import collar_width, systole
from .summation import KahanSum

Profile = Callable[[np.ndarray], np.ndarray]
AMPLITUDE_SLACK = 1e-9
N_SHELLS = 400
ORBIT_SPAN = 40.0

class SeriesReport(DataContainer):
    """Partial sum of a length series.

    Args:
        name : Series name.
        value : Partial sum.
        terms_used : Number of summed terms.
        cutoff_length : Truncation cutoff.
        tail_bound : Estimate of the omitted tail (inf if unknown).
        target : Exact value of the full series.
        abs_error_vs_target : |value - target|.
        components : Named auxiliary sums.
    """
    attr_set = {'name', 'value', 'terms_used', 'cutoff_length', 'tail_bound'}
    init_set = {'target', 'abs_error_vs_target', 'components'}

    name : str
    value : float
    terms_used : int
    cutoff_length : float
    tail_bound : float
    target : Optional[float]
    abs_error_vs_target : Optional[float]
    components : Optional[Dict[str, float]]

    def __init__(self, **kwargs) -> None:
        target = kwargs.get('target')
        if target is not None and kwargs.get('abs_error_vs_target') is None:
            kwargs['abs_error_vs_target'] = abs(kwargs['value'] - target)
        super().__init__(**kwargs)

    def passed(self, tolerance: float) -> bool:
        """Return True if the partial sum is closer to the target than
        `tolerance`.
        """
        if self.target is None:
            return False
        return bool(self.abs_error_vs_target < tolerance)

def mcshane_term(length: np.ndarray) -> np.ndarray:
    """Return 2 / (1 + exp(l))."""
    return 2.0 * expit(-np.asarray(length, dtype=float))

def arctan_term(length: np.ndarray, l_delta: float) -> np.ndarray:
    """Return arctan(cosh(l_delta / 4) / sinh(l / 2))."""
    return np.arctan(np.cosh(0.25 * l_delta) / np.sinh(0.5 * np.asarray(length, dtype=float)))

def _accumulate(terms: np.ndarray, order: str, num_threads: int=1) -> KahanSum:
    if order == 'descending':
        terms = np.sort(terms)[::-1]
    elif order != 'enumeration':
        raise ValueError(f"Invalid order '{order}', must be 'enumeration' or 'descending'")
    # one partial sum per worker block, merged by block index
    acc = KahanSum()
    for block in np.array_split(terms, max(num_threads, 1)):
        acc.merge(KahanSum().extend(block.tolist()))
    return acc

def _counting_constant(lengths: np.ndarray, sys_length: float, cutoff: float) -> float:
    lengths = np.sort(lengths)
    start = max(0.5 * cutoff, sys_length)
    window = lengths[(lengths >= start) & (lengths <= cutoff)]
    points = np.concatenate(([start], window))
    counts = np.searchsorted(lengths, points, side='right')
    return 2.0 * float(np.max(counts / points**2))

def _majorant(term_kind: str, l_delta: float, width: float) -> Callable[[np.ndarray], np.ndarray]:
    cosh_r = np.cosh(0.25 * l_delta)
    if term_kind == 'mcshane':
        return mcshane_term
    if term_kind == 'arctan':
        return lambda t: arctan_term(t, l_delta)
    if term_kind == 'variation':
        return lambda t: 4.0 * cosh_r * t * np.exp(-0.5 * t) / width
    raise ValueError(f"Invalid term kind '{term_kind}', must be 'mcshane', 'arctan' "\
                     "or 'variation'")

def _tail_bound(lengths: np.ndarray, sys_length: float, cutoff: float, term_kind: str,
                l_delta: float, width: float=1.0) -> float:
    if cutoff < sys_length:
        raise ValueError(f'Cutoff {cutoff} is below the systole {sys_length}')
    majorant = _majorant(term_kind, l_delta, width)
    if not lengths.size:
        return np.inf
    const = _counting_constant(lengths, sys_length, cutoff)
    shells = cutoff + np.arange(N_SHELLS, dtype=float)
    return float(np.sum(const * (2.0 * shells + 1.0) * majorant(shells)))

def _pair_lengths(point: SurfacePoint, cutoff: float) -> np.ndarray:
    sums = [first.length + second.length
            for first, second in enumerate_neighbor_pairs(point, cutoff)]
    return np.array([val for val in sums if val < cutoff], dtype=float)

def tail_estimate(point: SurfacePoint, cutoff: float, term_kind: str,
                  mu: Optional[Slope]=None, num_threads: int=1) -> float:
    """Estimate the sum of the terms of a series over the curves longer than
    `cutoff`. The curves in every shell [t, t + 1) are counted by
    A (2 t + 1) with A = 2 max N(t) / t**2 over t in
    [max(cutoff / 2, systole), cutoff] and weighted by the largest term in
    the shell. Pairs of the variation series are counted by l_u + l_v.

    Args:
        point : Surface point.
        cutoff : Truncation cutoff.
        term_kind : 'mcshane', 'arctan' or 'variation'.
        mu : Twisting curve, required for the 'variation' kind.
        num_threads : Number of worker processes used by the enumeration.

    Returns:
        Tail estimate.

    Raises:
        ValueError : If `cutoff` is below the systole, `term_kind` is
            invalid or `mu` is missing for the variation kind.
    """
    sys_length = systole(point).length
    if cutoff < sys_length:
        raise ValueError(f'Cutoff {cutoff} is below the systole {sys_length}')
    if term_kind == 'variation':
        if mu is None:
            raise ValueError('The variation tail needs a twisting curve mu')
        width = collar_width(length_from_trace(trace_of_slope(point, mu)))
        return _tail_bound(_pair_lengths(point, cutoff), sys_length, cutoff, term_kind,
                           point.l_delta, width)
    lengths = np.array([rec.length for rec in enumerate_geodesics(point, cutoff, num_threads)])
    return _tail_bound(lengths, sys_length, cutoff, term_kind, point.l_delta)

def _identity_sum(point: SurfacePoint, cutoff: float, name: str, term_kind: str,
                  target: float, order: str, num_threads: int, verbose: bool) -> SeriesReport:
    lengths = np.array([rec.length for rec in enumerate_geodesics(point, cutoff, num_threads,
                                                                  verbose)], dtype=float)
    if term_kind == 'mcshane':
        terms = mcshane_term(lengths)
    else:
        terms = arctan_term(lengths, point.l_delta)
    acc = _accumulate(terms, order, num_threads)
    sys_length = systole(point).length
    if cutoff < sys_length:
        tail = np.inf
    else:
        tail = _tail_bound(lengths, sys_length, cutoff, term_kind, point.l_delta)
    return SeriesReport(name=name, value=acc.value, terms_used=acc.count,
                        cutoff_length=float(cutoff), tail_bound=tail, target=target)

def mcshane_sum(point: SurfacePoint, cutoff: float, order: str='enumeration',
                num_threads: int=1, verbose: bool=False) -> SeriesReport:
    """Sum 2 / (1 + exp(l)) over the simple closed geodesics shorter than
    `cutoff` of a punctured torus. The full sum is 1.

    Args:
        point : Surface point with a cusp.
        cutoff : Truncation cutoff.
        order : Summation order, 'enumeration' or 'descending'.
        num_threads : Number of worker processes used by the enumeration.
        verbose : Show a progress bar if True.

    Returns:
        Series report.

    Raises:
        ValueError : If the point has a geodesic boundary.
    """
    if not point.is_cusp:
        raise ValueError(f"McShane's identity needs a cusp, l_delta = {point.l_delta}")
    return _identity_sum(point, cutoff, 'mcshane', 'mcshane', 1.0, order, num_threads, verbose)

def arctan_sum(point: SurfacePoint, cutoff: float, order: str='enumeration',
               num_threads: int=1, verbose: bool=False) -> SeriesReport:
    """Sum arctan(cosh(l_delta / 4) / sinh(l / 2)) over the simple closed
    geodesics shorter than `cutoff`. The full sum is 3 pi / 2 for every
    boundary length.

    Args:
        point : Surface point.
        cutoff : Truncation cutoff.
        order : Summation order, 'enumeration' or 'descending'.
        num_threads : Number of worker processes used by the enumeration.
        verbose : Show a progress bar if True.

    Returns:
        Series report.
    """
    return _identity_sum(point, cutoff, 'arctan', 'arctan', 1.5 * np.pi, order, num_threads,
                         verbose)

def telescoping_target(point: SurfacePoint, gamma: Slope) -> float:
    """Return pi - 2 arctan(cosh(l_delta / 4) / sinh(l_gamma / 2))."""
    l_gamma = length_from_trace(trace_of_slope(point, gamma))
    return float(np.pi - 2.0 * arctan_term(l_gamma, point.l_delta))

def telescoping_sum(point: SurfacePoint, gamma: Slope, gamma_prime: Slope,
                    n_terms: int) -> SeriesReport:
    """Sum the angles between the consecutive curves gamma_prime + n gamma
    and gamma_prime + (n + 1) gamma (third side gamma) for n = -N, ..., N - 1.
    The full sum is pi - 2 arctan(cosh(l_delta / 4) / sinh(l_gamma / 2)).

    Args:
        point : Surface point.
        gamma : Twisting curve.
        gamma_prime : A Farey neighbour of `gamma`.
        n_terms : Number N of terms on either side.

    Returns:
        Series report. The tail is the closed form remainder of the orbit
        angles beyond N.

    Raises:
        ValueError : If `n_terms` is negative or the slopes are not Farey
            neighbours.
    """
    if n_terms < 0:
        raise ValueError(f'Number of terms must be non-negative: {n_terms}')
    orbit = twist_orbit(point, gamma, gamma_prime)
    x_gamma = trace_of_slope(point, gamma)
    traces = [trace_of_slope(point, orbit.slope(n)) for n in range(-n_terms, n_terms + 1)]
    acc = KahanSum()
    for first, second in zip(traces[:-1], traces[1:]):
        acc += angle_cosine_rule(first, second, x_gamma, point.l_delta).angle

    # remaining angles from the closed form orbit lengths
    span = int(np.ceil(ORBIT_SPAN / orbit.l_gamma)) + 8
    steps = np.concatenate((np.arange(n_terms, n_terms + span),
                            np.arange(-n_terms - span, -n_terms)))
    cosh_n = 0.5 * orbit.traces(steps * orbit.l_gamma)
    cosh_next = 0.5 * orbit.traces((steps + 1) * orbit.l_gamma)
    num = cosh_n * cosh_next - 0.5 * x_gamma
    tail = np.sum(np.arctan2(np.cosh(0.25 * point.l_delta), num))
    return SeriesReport(name='telescoping', value=acc.value, terms_used=acc.count,
                        cutoff_length=float(n_terms), tail_bound=float(tail),
                        target=telescoping_target(point, gamma))

def _orbit_grouped_term(length: float, dl: float, l_delta: float) -> float:
    # derivative of pi - 2 arctan(cosh(l_delta / 4) / sinh(l / 2))
    cosh_r = np.cosh(0.25 * l_delta)
    return cosh_r * np.cosh(0.5 * length) / (np.sinh(0.5 * length)**2 + cosh_r**2) * dl

def variation_sum(point: SurfacePoint, mu: Slope, cutoff: float,
                  h: float=1e-4) -> SeriesReport:
    """Sum the variations along the twist flow of `mu` of the angles at the
    crossings of every pair of curves meeting once with l_u + l_v < `cutoff`.
    Every Farey edge gives the ordered pairs (u, v) and (v, -u) with
    det(u, v) = 1, the angle of (u, v) has the third side v - u. The two
    angles are supplementary, so the full sum vanishes.

    Args:
        point : Surface point.
        mu : Twisting curve.
        cutoff : Upper bound on l_u + l_v.
        h : Twist distance used for the central differences.

    Returns:
        Series report with the components:

        * `absolute` : Sum of the absolute values of the terms.
        * `orbit_grouped` : Sum over the single curves gamma of the variation
          of pi - 2 arctan(cosh(l_delta / 4) / sinh(l_gamma / 2)).
        * `amplitude_violations` : Number of curves with |dl| > i(gamma, mu).
    """
    flow = TwistFlow(point, mu, h)
    variations: Dict[Slope, float] = {}

    def variation(slope: Slope) -> float:
        if slope not in variations:
            variations[slope] = flow.derivative(slope)
        return variations[slope]

    acc, absolute = KahanSum(), KahanSum()
    sums: List[float] = []
    for first, second in enumerate_neighbor_pairs(point, cutoff):
        if first.length + second.length >= cutoff:
            continue
        sums.append(first.length + second.length)
        if slope_determinant(first.slope, second.slope) < 0:
            first, second = second, first
        u_slope, v_slope = first.slope, second.slope
        x_u, x_v = first.trace, second.trace
        x_diff = trace_of_slope(point, normalize_slope(v_slope.p - u_slope.p,
                                                       v_slope.q - u_slope.q))
        x_sum = x_u * x_v - x_diff
        dl_u, dl_v = variation(u_slope), variation(v_slope)
        for (a_tr, b_tr, dl_a, dl_b, x_third) in ((x_u, x_v, dl_u, dl_v, x_diff),
                                                  (x_v, x_u, dl_v, dl_u, x_sum)):
            branch = 'acute' if x_third < 0.5 * x_u * x_v else 'obtuse'
            term = angle_differential(a_tr, b_tr, point.l_delta, dl_a, dl_b, branch)
            acc += term
            absolute += abs(term)

    grouped = KahanSum()
    violations = 0
    for slope, dl in variations.items():
        trace = trace_of_slope(point, slope)
        grouped += _orbit_grouped_term(length_from_trace(trace), dl, point.l_delta)
        if abs(dl) > intersection_number(slope, mu) + AMPLITUDE_SLACK:
            violations += 1

    sys_length = systole(point).length
    if cutoff < sys_length:
        tail = np.inf
    else:
        width = collar_width(length_from_trace(trace_of_slope(point, mu)))
        tail = _tail_bound(np.array(sums, dtype=float), sys_length, cutoff, 'variation',
                           point.l_delta, width)
    return SeriesReport(name='variation', value=acc.value, terms_used=acc.count,
                        cutoff_length=float(cutoff), tail_bound=tail, target=0.0,
                        components={'absolute': absolute.value, 'orbit_grouped': grouped.value,
                                    'amplitude_violations': violations})

def _shortest_crossing(point: SurfacePoint, sys_slope: Slope, neighbor: Slope) -> float:
    orbit = twist_orbit(point, sys_slope, neighbor)
    center = -2.0 * orbit.theta / orbit.l_gamma
    steps = np.floor(center) + np.arange(-1, 3)
    return float(np.min(2.0 * np.arccosh(0.5 * orbit.traces(steps * orbit.l_gamma))))

def tail_bound_cusp(point: SurfacePoint, n_min: int, t: float) -> float:
    """Bound the sum of exp(-t l_gamma) over the simple closed geodesics
    meeting the systole at least `n_min` times by the double geometric
    series

        (1 + r_a) / (1 - r_a) * r_b**n_min / (1 - r_b),

    r = exp(-t K l) with K = 1 / 2, l_a the systole and l_b the shortest
    curve crossing it once.

    Raises:
        ValueError : If `t` is not positive or `n_min` is smaller than 1.
    """
    if not t > 0.0:
        raise ValueError(f'Decay rate must be positive: {t}')
    if n_min < 1:
        raise ValueError(f'Intersection number must be at least 1: {n_min}')
    record = systole(point)
    sys_slope = record.slope
    neighbor = farey_neighbor(sys_slope)
    l_cross = _shortest_crossing(point, sys_slope, neighbor)
    r_a, r_b = np.exp(-0.5 * t * record.length), np.exp(-0.5 * t * l_cross)
    return float((1.0 + r_a) / (1.0 - r_a) * r_b**n_min / (1.0 - r_b))

def _sech(x: float) -> float:
    # 1 / cosh(x) without overflow for large |x|
    decay = np.exp(-abs(x))
    return 2.0 * decay / (1.0 + decay * decay)

def sech_linear(u: np.ndarray) -> np.ndarray:
    return np.asarray(u, dtype=float)

def mcshane_profile(u: np.ndarray) -> np.ndarray:
    """McShane's term 2 / (1 + exp(l)) written in u = sech(l / 2)."""
    u = np.asarray(u, dtype=float)
    return 2.0 * u * u / (u * u + (1.0 + np.sqrt(1.0 - u * u))**2)

def arctan_profile(l_delta: float) -> Profile:
    """The arctan term written in u = sech(l / 2)."""
    cosh_r = np.cosh(0.25 * l_delta)

    def profile(u: np.ndarray) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return np.arctan2(cosh_r * u, np.sqrt(1.0 - u * u))

    return profile

DEGENERATION_PROFILES: Dict[str, Callable[[float], Tuple[Profile, float]]] = {
    'sech-linear': lambda l_delta: (sech_linear, 1.0),
    'arctan': lambda l_delta: (arctan_profile(l_delta), float(np.cosh(0.25 * l_delta))),
    'mcshane': lambda l_delta: (mcshane_profile, 0.0)}

def degeneration_limit(l_delta: float, epsilon: float, f: Profile, f_prime0: float,
                       remainder_cutoff: float=40.0, name: str='degeneration') -> SeriesReport:
    """Evaluate sum f(sech(l_gamma / 2)) over the simple closed geodesics of
    the near cusp point with systole `epsilon`, split into the systole, the
    twist orbit of the curves crossing it once (summed in closed form) and
    the enumerated curves crossing it at least twice. As `epsilon` goes to 0
    the sum tends to f(1) + pi sech(l_delta / 4) f'(0).

    Args:
        l_delta : Boundary length.
        epsilon : Systole length.
        f : Vectorised profile defined on [0, 1].
        f_prime0 : Derivative of `f` at 0.
        remainder_cutoff : Length cutoff of the enumerated remainder.
        name : Report name.

    Returns:
        Series report with the components `systole`, `orbit`,
        `orbit_target`, `orbit_integral`, `remainder` and
        `remainder_bound`.

    Raises:
        ValueError : If `epsilon` is too large to be the systole.
    """
    point = SurfacePoint.near_cusp(epsilon, l_delta)
    sys_slope, cross = Slope(1, 0), Slope(0, 1)
    sys_term = float(f(1.0 / np.cosh(0.5 * epsilon)))

    orbit = twist_orbit(point, sys_slope, cross)
    n_max = int(np.ceil(ORBIT_SPAN / (0.5 * orbit.l_gamma)))
    steps = np.arange(-n_max, n_max + 1, dtype=float)
    orbit_acc = KahanSum().extend(f(orbit.sech_half_lengths(steps * orbit.l_gamma)).tolist())
    cosh_perp = np.cosh(orbit.perp)
    integral, _ = quad(lambda x: float(f(_sech(x) / cosh_perp)), -np.inf, np.inf,
                       epsabs=1e-14, epsrel=1e-12, limit=200)
    orbit_integral = integral / (0.5 * orbit.l_gamma)

    remainder = KahanSum()
    for record in enumerate_geodesics(point, remainder_cutoff):
        if intersection_number(record.slope, sys_slope) >= 2:
            remainder += float(f(1.0 / np.cosh(0.5 * record.length)))

    if f_prime0 != 0.0:
        remainder_bound = 2.0 * abs(f_prime0) * tail_bound_cusp(point, 2, 0.5)
    else:
        remainder_bound = 2.0 * tail_bound_cusp(point, 2, 1.0)
    orbit_target = np.pi * f_prime0 / np.cosh(0.25 * l_delta)

    value = KahanSum(sys_term).merge(orbit_acc).merge(remainder)
    return SeriesReport(name=name, value=value.value,
                        terms_used=1 + orbit_acc.count + remainder.count,
                        cutoff_length=float(remainder_cutoff), tail_bound=remainder_bound,
                        target=float(f(1.0)) + orbit_target,
                        components={'systole': sys_term, 'orbit': orbit_acc.value,
                                    'orbit_target': orbit_target,
                                    'orbit_integral': orbit_integral,
                                    'remainder': remainder.value,
                                    'remainder_bound': remainder_bound})
