"""Lengths and intersection angles of simple closed geodesics. Two curves
meeting once with half-lengths a, b bound together with the curve of their
difference (half-length c) a triangle on the quotient of the surface by the
elliptic involution, and the angle at their intersection obeys

    cos(angle) = (cosh(a) cosh(b) - cosh(c)) / (sinh(a) sinh(b)),
    sinh(a) sinh(b) sin(angle) = cosh(l_delta / 4).

A twist along a simple closed curve moves along an orbit of the curves
crossing it once, :class:`TwistOrbit` gives the lengths along this orbit in
closed form, :class:`TwistFlow` the twist flow on trace coordinates.

Examples:

    >>> import pyteich as pt
    >>> pair = pt.angle_cosine_rule(3.0, 3.0, 3.0, 0.0)
    >>> round(pair.angle, 7)
    0.9272952
"""
from __future__ import annotations
from typing import Tuple, Union
import numpy as np
from .data_container import DataContainer, dict_to_object
from .farey import (MappingClass, Slope, apply_mapping_class, farey_neighbor, intersection_number,
                    normalize_slope, oriented_basis)
from .markoff import (FareyTriple, SurfacePoint, boundary_of_kappa, cubic_residual,
                      kappa_of_boundary, trace_of_slope)

CUBIC_RTOL = 1e-6
CLAMP_SLACK = 1e-12
SINE_RTOL = 1e-6
SINGULAR_RTOL = 1e-10
FD_STEP = 1e-4

def length_from_trace(trace: float) -> float:
    """Return the length 2 arccosh(x / 2) of a geodesic with trace x.

    Raises:
        ValueError : If the trace is not larger than 2.
    """
    if not trace > 2.0:
        raise ValueError(f'Trace must be larger than 2: {trace}')
    return 2.0 * np.arccosh(0.5 * trace)

def trace_from_length(length: float) -> float:
    """Return the trace 2 cosh(l / 2) of a geodesic of length l.

    Raises:
        ValueError : If the length is not positive.
    """
    if not length > 0.0:
        raise ValueError(f'Length must be positive: {length}')
    return 2.0 * np.cosh(0.5 * length)

def _check_traces(*traces: float) -> None:
    if not min(traces) > 2.0:
        raise ValueError(f"Traces must be larger than 2: {', '.join(map(str, traces))}")

def _half_sinh(trace: float) -> float:
    # sinh(l / 2) for the trace 2 cosh(l / 2)
    half = 0.5 * trace
    return np.sqrt((half - 1.0) * (half + 1.0))

class AnglePair(DataContainer):
    """Angle at the intersection of two simple closed geodesics meeting once.

    Args:
        alpha : Trace of the first geodesic.
        beta : Trace of the second geodesic.
        third_trace : Trace of the third side of the triangle.
        angle : Angle in (0, pi).
        l_delta : Boundary length.
    """
    attr_set = {'alpha', 'beta', 'third_trace', 'angle', 'l_delta'}

    alpha : float
    beta : float
    third_trace : float
    angle : float
    l_delta : float

    @property
    def branch(self) -> str:
        return 'acute' if self.angle <= 0.5 * np.pi else 'obtuse'

    def cosine_residual(self) -> float:
        """Absolute residual of the cosine rule."""
        cos = (0.25 * self.alpha * self.beta - 0.5 * self.third_trace) / \
              (_half_sinh(self.alpha) * _half_sinh(self.beta))
        return abs(np.cos(self.angle) - cos)

    def sine_residual(self) -> float:
        """Residual of the sine relation relative to cosh(l_delta / 4)**2."""
        cosh_r2 = np.cosh(0.25 * self.l_delta)**2
        prod = (_half_sinh(self.alpha) * _half_sinh(self.beta) * np.sin(self.angle))**2
        return abs(prod - cosh_r2) / cosh_r2

def angle_cosine_rule(a_tr: float, b_tr: float, c_tr: float, l_delta: float) -> AnglePair:
    """Return the angle between two geodesics meeting once with traces
    `a_tr` and `b_tr` and the third side `c_tr`. The angle is evaluated as
    atan2(cosh(l_delta / 4), cosh(a) cosh(b) - cosh(c)) and checked against
    the cosine rule and the sine relation.

    Args:
        a_tr : Trace of the first geodesic.
        b_tr : Trace of the second geodesic.
        c_tr : Trace of the third side.
        l_delta : Boundary length.

    Returns:
        The angle pair.

    Raises:
        ValueError : If the traces don't satisfy the Markoff cubic.
        FloatingPointError : If the cosine is beyond [-1, 1] or the sine
            relation fails.
    """
    kappa = kappa_of_boundary(l_delta)
    _check_traces(a_tr, b_tr, c_tr)
    residual = cubic_residual((a_tr, b_tr, c_tr), kappa)
    if residual > CUBIC_RTOL:
        raise ValueError(f'Traces ({a_tr}, {b_tr}, {c_tr}) violate the Markoff cubic '\
                         f'for l_delta = {l_delta}: relative residual {residual:.3e}')
    cosh_r = np.cosh(0.25 * l_delta)
    num = 0.25 * a_tr * b_tr - 0.5 * c_tr
    den = _half_sinh(a_tr) * _half_sinh(b_tr)
    cos = num / den
    if abs(cos) > 1.0 + CLAMP_SLACK:
        raise FloatingPointError(f'Cosine {cos} is out of [-1, 1]')
    # sinh(a) sinh(b) sin(angle) = cosh(l_delta / 4) > 0 on the cubic, a cosine
    # rounded to 1 belongs to a long pair with an angle below the ulp
    angle = np.arctan2(cosh_r, num)
    sine = cosh_r / den
    if abs(sine * sine + cos * cos - 1.0) > SINE_RTOL:
        raise FloatingPointError(f'Sine relation fails for ({a_tr}, {b_tr}, {c_tr}): '\
                                 f'sin = {sine}, cos = {cos}')
    return AnglePair(alpha=float(a_tr), beta=float(b_tr), third_trace=float(c_tr),
                     angle=float(angle), l_delta=float(l_delta))

def angle_arcsin(a_tr: float, b_tr: float, l_delta: float) -> float:
    """Return the acute angle arcsin(cosh(l_delta / 4) / (sinh(a) sinh(b)))
    at the intersection of two geodesics meeting once.

    Raises:
        ValueError : If a trace is not larger than 2 or the argument
            exceeds 1 beyond the rounding slack.
    """
    _check_traces(a_tr, b_tr)
    arg = np.cosh(0.25 * l_delta) / (_half_sinh(a_tr) * _half_sinh(b_tr))
    if arg > 1.0 + CLAMP_SLACK:
        raise ValueError(f'arcsin argument {arg} exceeds 1 for the traces ({a_tr}, {b_tr})')
    return float(np.arcsin(min(arg, 1.0)))

def angle_differential(a_tr: float, b_tr: float, l_delta: float, dl_alpha: float,
                       dl_beta: float, branch: str='acute') -> float:
    """Return the differential of the intersection angle of two geodesics
    meeting once, given the length variations `dl_alpha` and `dl_beta`:

        -cosh(r) (coth(a) dl_alpha + coth(b) dl_beta) / (2 sqrt(sinh(a)**2 sinh(b)**2 - cosh(r)**2))

    with r = l_delta / 4. It's negated for the obtuse angle and extended by
    0 on the right angle locus.

    Args:
        a_tr : Trace of the first geodesic.
        b_tr : Trace of the second geodesic.
        l_delta : Boundary length.
        dl_alpha : Variation of the first length.
        dl_beta : Variation of the second length.
        branch : 'acute' or 'obtuse'.

    Returns:
        The angle variation.

    Raises:
        ValueError : If `branch` is invalid or a trace is not larger than 2.
    """
    if branch not in ('acute', 'obtuse'):
        raise ValueError(f"Invalid branch '{branch}', must be 'acute' or 'obtuse'")
    _check_traces(a_tr, b_tr)
    cosh_r2 = np.cosh(0.25 * l_delta)**2
    sinh_a, sinh_b = _half_sinh(a_tr), _half_sinh(b_tr)
    disc = (sinh_a * sinh_b)**2 - cosh_r2
    if disc < SINGULAR_RTOL * cosh_r2:
        return 0.0
    coth_a, coth_b = 0.5 * a_tr / sinh_a, 0.5 * b_tr / sinh_b
    diff = -np.sqrt(cosh_r2) * (coth_a * dl_alpha + coth_b * dl_beta) / (2.0 * np.sqrt(disc))
    return float(diff if branch == 'acute' else -diff)

class TwistOrbit(DataContainer):
    """Orbit of a curve `gamma_prime` under the twist along a curve `gamma`
    it meets once. The n-th curve of the orbit is gamma_prime + n gamma, its
    length l_n follows

        cosh(l_n / 2) = cosh(n l_gamma / 2 + theta) cosh(perp).

    Args:
        gamma : Twisting curve.
        gamma_prime : Twisted curve.
        l_gamma : Length of `gamma`.
        perp : Length of the common perpendicular, sinh(perp) sinh(l_gamma / 2)
            = cosh(l_delta / 4).
        theta : Offset of `gamma_prime` along `gamma`.
        l_delta : Boundary length.
    """
    attr_set = {'gamma', 'gamma_prime', 'l_gamma', 'perp', 'theta', 'l_delta'}

    gamma : Slope
    gamma_prime : Slope
    l_gamma : float
    perp : float
    theta : float
    l_delta : float

    @dict_to_object
    def twist(self, distance: float) -> TwistOrbit:
        """Return the orbit after the twist by `distance` along `gamma`."""
        return {'theta': self.theta + 0.5 * distance}

    def slope(self, n: int) -> Slope:
        return normalize_slope(self.gamma_prime.p + n * self.gamma.p,
                               self.gamma_prime.q + n * self.gamma.q)

    def sech_half_lengths(self, distance: np.ndarray) -> np.ndarray:
        """Return sech(l / 2) along the orbit at the twist distances
        `distance` (vectorised).
        """
        arg = np.abs(0.5 * np.asarray(distance, dtype=float) + self.theta)
        # 1 / cosh(x) without overflow for large x
        return 2.0 * np.exp(-arg) / (1.0 + np.exp(-2.0 * arg)) / np.cosh(self.perp)

    def traces(self, distance: np.ndarray) -> np.ndarray:
        return 2.0 * np.cosh(0.5 * np.asarray(distance, dtype=float) + self.theta) * \
               np.cosh(self.perp)

def twist_orbit(point: SurfacePoint, gamma: Slope, gamma_prime: Slope) -> TwistOrbit:
    """Return the twist orbit of `gamma_prime` along `gamma`. The offset is
    theta = arcsinh((x_+ - x_-) / (4 sinh(l_gamma / 2) cosh(perp))) with
    x_+ and x_- the traces of gamma_prime + gamma and gamma_prime - gamma, so
    that the first step of the orbit is gamma_prime + gamma.

    Raises:
        ValueError : If the slopes are not Farey neighbours.
        FloatingPointError : If the orbit doesn't reproduce the length of
            `gamma_prime`.
    """
    if intersection_number(gamma, gamma_prime) != 1:
        raise ValueError(f'Slopes {gamma!s} and {gamma_prime!s} are not Farey neighbours')
    x_gamma, x_prime = trace_of_slope(point, gamma), trace_of_slope(point, gamma_prime)
    x_plus = trace_of_slope(point, normalize_slope(gamma_prime.p + gamma.p,
                                                   gamma_prime.q + gamma.q))
    x_minus = trace_of_slope(point, normalize_slope(gamma_prime.p - gamma.p,
                                                    gamma_prime.q - gamma.q))
    sinh_g = _half_sinh(x_gamma)
    perp = np.arcsinh(np.cosh(0.25 * point.l_delta) / sinh_g)
    theta = np.arcsinh((x_plus - x_minus) / (4.0 * sinh_g * np.cosh(perp)))
    expected = 2.0 * np.cosh(theta) * np.cosh(perp)
    if abs(expected - x_prime) > 1e-9 * x_prime:
        raise FloatingPointError(f'Twist orbit of {gamma_prime!s} along {gamma!s} is '\
                                 f'inconsistent: {expected} != {x_prime}')
    return TwistOrbit(gamma=gamma, gamma_prime=gamma_prime, l_gamma=length_from_trace(x_gamma),
                      perp=float(perp), theta=float(theta), l_delta=point.l_delta)

def orbit_length(orbit: TwistOrbit, n: Union[int, float]) -> float:
    """Return the length along the orbit. An integer `n` is the n-th
    curve gamma_prime + n gamma (twist distance n l_gamma), a float is the
    twist distance itself.
    """
    if isinstance(n, (int, np.integer)):
        distance = n * orbit.l_gamma
    else:
        distance = float(n)
    cosh_half = np.cosh(0.5 * distance + orbit.theta) * np.cosh(orbit.perp)
    return float(2.0 * np.arccosh(cosh_half))

def wolpert_derivative_check(point: SurfacePoint, gamma: Slope, gamma_prime: Slope,
                             h: float=FD_STEP) -> Tuple[float, float]:
    """Compare the twist derivative of the length of `gamma_prime` along
    `gamma` with the cosine of their intersection angle.

    Args:
        point : Surface point.
        gamma : Twisting curve.
        gamma_prime : A Farey neighbour of `gamma`.
        h : Finite difference step.

    Returns:
        A tuple of two elements ('analytic', 'finite_diff'). `analytic` is
        the cosine of the angle at the crossing whose third side is
        gamma_prime - gamma, `finite_diff` the central difference of
        :func:`orbit_length` at zero twist.
    """
    orbit = twist_orbit(point, gamma, gamma_prime)
    x_diff = trace_of_slope(point, normalize_slope(gamma_prime.p - gamma.p,
                                                   gamma_prime.q - gamma.q))
    pair = angle_cosine_rule(trace_of_slope(point, gamma), trace_of_slope(point, gamma_prime),
                             x_diff, point.l_delta)
    finite_diff = (orbit_length(orbit, float(h)) - orbit_length(orbit, -float(h))) / (2.0 * h)
    return float(np.cos(pair.angle)), float(finite_diff)

class TwistFlow(DataContainer):
    """Twist flow along a simple closed curve `mu` on trace coordinates.
    The point is written in twist coordinates along `mu` in the basis
    (`mu`, `nu`) of :func:`pyteich.oriented_basis`, the flow shifts the
    offset by half the twist distance. A positive twist by l_mu acts on
    the slopes as the Dehn twist v -> v + det(mu, v) mu.

    Args:
        point : Surface point.
        mu : Twisting curve.
        step : Twist distance used for the central differences.
        nu : A Farey neighbour of `mu`, :func:`pyteich.farey_neighbor`
            by default.
    """
    attr_set = {'point', 'mu', 'basis', 'l_mu', 'theta', 'step', 'shifted'}

    point : SurfacePoint
    mu : Slope
    basis : MappingClass
    l_mu : float
    theta : float
    step : float
    shifted : Tuple[SurfacePoint, SurfacePoint]

    def __init__(self, point: SurfacePoint, mu: Slope, step: float=FD_STEP,
                 nu: Slope=None) -> None:
        if nu is None:
            nu = farey_neighbor(mu)
        basis = oriented_basis(mu, nu)
        column = (basis.b, basis.d)
        x_mu = trace_of_slope(point, mu)
        x_plus = trace_of_slope(point, normalize_slope(column[0] + mu.p, column[1] + mu.q))
        x_minus = trace_of_slope(point, normalize_slope(column[0] - mu.p, column[1] - mu.q))
        sinh_g = _half_sinh(x_mu)
        cosh_perp = np.sqrt(1.0 + (np.cosh(0.25 * point.l_delta) / sinh_g)**2)
        theta = float(np.arcsinh((x_plus - x_minus) / (4.0 * sinh_g * cosh_perp)))
        l_mu = length_from_trace(x_mu)
        shifted = tuple(SurfacePoint.from_twist_coordinates(l_mu, theta + 0.5 * dist,
                                                            point.l_delta)
                        for dist in (-step, step))
        super().__init__(point=point, mu=mu, basis=basis, l_mu=l_mu, theta=theta,
                         step=float(step), shifted=shifted)

    def point_at(self, distance: float) -> SurfacePoint:
        """Return the point twisted by `distance`, in the basis `basis`."""
        return SurfacePoint.from_twist_coordinates(self.l_mu, self.theta + 0.5 * distance,
                                                   self.point.l_delta)

    def local_slope(self, slope: Slope) -> Slope:
        return apply_mapping_class(self.basis.inverse(), slope)

    def trace(self, slope: Slope, distance: float=0.0) -> float:
        return trace_of_slope(self.point_at(distance), self.local_slope(slope))

    def derivative(self, slope: Slope) -> float:
        """Return d l / d s of the length of `slope` at zero twist by
        central differences.
        """
        local = self.local_slope(slope)
        minus, plus = (length_from_trace(trace_of_slope(pt, local)) for pt in self.shifted)
        return (plus - minus) / (2.0 * self.step)

def twist_derivative(point: SurfacePoint, mu: Slope, slope: Slope, h: float=FD_STEP) -> float:
    """Return the derivative of the length of `slope` along the twist flow
    of `mu`.
    """
    return TwistFlow(point, mu, h).derivative(slope)

def triangle_angles(triple: FareyTriple) -> Tuple[AnglePair, AnglePair, AnglePair]:
    """Return the three interior angles of the triangle of a Farey triple.
    The angle between two of the curves takes the third member of the
    triple as its third side.
    """
    l_delta = boundary_of_kappa(triple.kappa)
    x = triple.traces
    return tuple(angle_cosine_rule(x[i], x[j], x[k], l_delta)
                 for i, j, k in ((1, 2, 0), (0, 2, 1), (0, 1, 2)))
