import numpy as np
import pytest
import pyteich as pt

ARCCOS_06 = 0.9272952180016122
PERP_HEXAGONAL = 0.5 * np.log(5.0)

@pytest.fixture(scope='module')
def hex_orbit() -> pt.TwistOrbit:
    return pt.twist_orbit(pt.SurfacePoint.hexagonal(), pt.Slope(1, 1), pt.Slope(1, 0))

@pytest.mark.geometry
def test_length_trace():
    assert pt.length_from_trace(3.0) == pytest.approx(1.9248473002384139)
    assert pt.trace_from_length(pt.length_from_trace(7.5)) == pytest.approx(7.5, rel=1e-14)
    with pytest.raises(ValueError):
        pt.length_from_trace(2.0)
    with pytest.raises(ValueError):
        pt.trace_from_length(0.0)

@pytest.mark.geometry
def test_angle_cosine_rule():
    pair = pt.angle_cosine_rule(3.0, 3.0, 3.0, 0.0)
    assert pair.angle == pytest.approx(ARCCOS_06, abs=1e-12)
    assert pair.branch == 'acute'
    assert pair.cosine_residual() < 1e-14 and pair.sine_residual() < 1e-12
    obtuse = pt.angle_cosine_rule(3.0, 3.0, 6.0, 0.0)
    assert obtuse.branch == 'obtuse'
    assert obtuse.angle + pair.angle == pytest.approx(np.pi, abs=1e-12)
    assert pt.angle_arcsin(3.0, 3.0, 0.0) == pytest.approx(ARCCOS_06, abs=1e-12)

@pytest.mark.geometry
def test_angle_errors():
    with pytest.raises(ValueError):
        pt.angle_cosine_rule(3.0, 3.0, 4.0, 0.0)
    with pytest.raises(ValueError):
        pt.angle_cosine_rule(3.0, 3.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        pt.angle_differential(3.0, 3.0, 0.0, 1.0, 1.0, branch='right')

@pytest.mark.geometry
def test_triangle_angles(rng: np.random.Generator, n_points: int, l_delta: float):
    for _ in range(n_points):
        point = pt.random_surface_point(rng, l_delta=l_delta)
        for triple in pt.enumerate_triples(point, 20.0):
            for pair in pt.triangle_angles(triple):
                assert 0.0 < pair.angle < np.pi
                assert pair.sine_residual() < 1e-9
                assert pair.cosine_residual() < 1e-9

@pytest.mark.geometry
def test_hexagonal_angles(hexagonal: pt.SurfacePoint):
    angles = pt.triangle_angles(hexagonal.seed)
    assert [pair.angle for pair in angles] == pytest.approx([ARCCOS_06] * 3)

@pytest.mark.geometry
def test_twist_orbit(hexagonal: pt.SurfacePoint, hex_orbit: pt.TwistOrbit):
    assert hex_orbit.perp == pytest.approx(PERP_HEXAGONAL, rel=1e-12)
    assert hex_orbit.perp == pytest.approx(0.8047190, abs=1e-7)
    assert hex_orbit.theta == pytest.approx(0.25 * hex_orbit.l_gamma, rel=1e-12)
    steps = np.arange(-3, 4)
    traces = hex_orbit.traces(steps * hex_orbit.l_gamma)
    assert traces == pytest.approx([15.0, 6.0, 3.0, 3.0, 6.0, 15.0, 39.0], rel=1e-12)
    for n in steps:
        slope = hex_orbit.slope(int(n))
        assert pt.orbit_length(hex_orbit, int(n)) == \
               pytest.approx(hexagonal.length(slope), rel=1e-12)

@pytest.mark.geometry
def test_orbit_twist(hex_orbit: pt.TwistOrbit):
    shifted = hex_orbit.twist(hex_orbit.l_gamma)
    assert shifted.traces(0.0) == pytest.approx(hex_orbit.traces(hex_orbit.l_gamma))
    assert pt.orbit_length(hex_orbit, 0.3) == pytest.approx(pt.orbit_length(shifted, 0.3 - hex_orbit.l_gamma))
    distance = np.array([0.0, 1.0, 1e4])
    sech = hex_orbit.sech_half_lengths(distance)
    assert sech[:2] == pytest.approx(2.0 / hex_orbit.traces(distance[:2]))
    assert sech[2] == 0.0

@pytest.mark.geometry
def test_twist_orbit_errors(hexagonal: pt.SurfacePoint):
    with pytest.raises(ValueError):
        pt.twist_orbit(hexagonal, pt.Slope(1, 0), pt.Slope(1, 2))

@pytest.mark.geometry
@pytest.mark.parametrize('gamma, gamma_prime', [((1, 0), (0, 1)), ((1, 1), (1, 0)),
                                                ((1, 2), (0, 1))])
def test_wolpert_derivative(rng: np.random.Generator, gamma, gamma_prime):
    point = pt.random_surface_point(rng)
    analytic, finite_diff = pt.wolpert_derivative_check(point, pt.Slope(*gamma),
                                                        pt.Slope(*gamma_prime))
    assert finite_diff == pytest.approx(analytic, abs=1e-7)
    assert abs(finite_diff) <= 1.0

@pytest.mark.geometry
def test_twist_flow(hexagonal: pt.SurfacePoint):
    mu = pt.Slope(1, 0)
    flow = pt.TwistFlow(hexagonal, mu)
    assert flow.trace(pt.Slope(0, 1)) == pytest.approx(3.0, rel=1e-12)
    assert flow.derivative(mu) == pytest.approx(0.0, abs=1e-9)
    _, finite_diff = pt.wolpert_derivative_check(hexagonal, mu, pt.Slope(0, 1))
    assert pt.twist_derivative(hexagonal, mu, pt.Slope(0, 1)) == \
           pytest.approx(finite_diff, abs=1e-8)
    assert finite_diff == pytest.approx(-0.6, abs=1e-7)

@pytest.mark.geometry
def test_twist_flow_dehn_twist(rng: np.random.Generator):
    point = pt.random_surface_point(rng)
    mu = pt.Slope(1, 2)
    flow = pt.TwistFlow(point, mu)
    twisted = flow.point_at(flow.l_mu)
    # v -> v + det(mu, v) mu
    twist = pt.MappingClass.dehn_twist(mu).inverse()
    for slope in pt.coprime_slopes(3):
        assert pt.trace_of_slope(twisted, flow.local_slope(slope)) == \
               pytest.approx(pt.trace_of_slope(point, pt.apply_mapping_class(twist, slope)),
                             rel=1e-9)

@pytest.mark.geometry
def test_amplitude_bound(rng: np.random.Generator):
    point = pt.random_surface_point(rng)
    mu = pt.Slope(-1, 2)
    flow = pt.TwistFlow(point, mu)
    for slope in pt.coprime_slopes(4):
        assert abs(flow.derivative(slope)) <= pt.intersection_number(slope, mu) + 1e-9

@pytest.mark.geometry
def test_angle_differential(hexagonal: pt.SurfacePoint):
    flow = pt.TwistFlow(hexagonal, pt.Slope(1, 1))
    slopes = (pt.Slope(1, 0), pt.Slope(0, 1), pt.Slope(-1, 1))
    h = 1e-4
    angles = [pt.angle_cosine_rule(*(flow.trace(slope, dist) for slope in slopes), 0.0).angle
              for dist in (-h, h)]
    pair = pt.angle_cosine_rule(*(flow.trace(slope) for slope in slopes), 0.0)
    diff = pt.angle_differential(pair.alpha, pair.beta, 0.0, flow.derivative(slopes[0]),
                                 flow.derivative(slopes[1]), pair.branch)
    assert diff == pytest.approx((angles[1] - angles[0]) / (2.0 * h), abs=1e-7)

@pytest.mark.geometry
def test_angle_long_pair():
    # consecutive curves of the twist orbit along a trace 3 curve at the
    # hexagonal point, the cosine rounds to 1
    a_tr, b_tr = 189737958.0, 72473451.0
    pair = pt.angle_cosine_rule(a_tr, b_tr, 3.0, 0.0)
    assert 0.0 < pair.angle < 1e-15
    assert pair.angle == pytest.approx(4.0 / (a_tr * b_tr), rel=1e-6)
    obtuse = pt.angle_cosine_rule(a_tr, 3.0, a_tr * 3.0 - b_tr, 0.0)
    assert obtuse.branch == 'obtuse'

@pytest.mark.geometry
def test_angle_arcsin():
    assert pt.angle_arcsin(2.0 * np.sqrt(2.0), 2.0 * np.sqrt(2.0), 0.0) == \
           pytest.approx(0.5 * np.pi, abs=1e-7)
    expected = np.arcsin(1.0 / (np.sinh(np.arccosh(3.0)) * np.sinh(np.arccosh(7.5))))
    assert pt.angle_arcsin(6.0, 15.0, 0.0) == pytest.approx(expected, rel=1e-12)
    pair = pt.angle_cosine_rule(6.0, 15.0, 3.0, 0.0)
    assert pair.branch == 'acute'
    assert pair.angle == pytest.approx(expected, rel=1e-12)

@pytest.mark.geometry
def test_angle_domain_errors():
    with pytest.raises(ValueError):
        pt.angle_arcsin(1.5, 3.0, 0.0)
    with pytest.raises(ValueError):
        pt.angle_arcsin(2.1, 2.1, 0.0)
    with pytest.raises(ValueError):
        pt.angle_differential(1.5, 3.0, 0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        pt.angle_differential(3.0, 2.0, 0.0, 1.0, 1.0)

@pytest.mark.geometry
def test_angle_differential_sign():
    assert pt.angle_differential(3.0, 3.0, 0.0, 0.0, 0.0) == 0.0
    assert pt.angle_differential(3.0, 3.0, 0.0, 1.0, 1.0) < 0.0
    assert pt.angle_differential(3.0, 3.0, 0.0, 1.0, 1.0, 'obtuse') > 0.0

@pytest.mark.geometry
def test_angle_differential_convergence():
    length = pt.length_from_trace(3.0)
    diff = pt.angle_differential(3.0, 3.0, 0.0, 1.0, 0.0)
    errors = []
    for h in (1e-3, 1e-4):
        upper = pt.angle_arcsin(pt.trace_from_length(length + h), 3.0, 0.0)
        lower = pt.angle_arcsin(pt.trace_from_length(length - h), 3.0, 0.0)
        errors.append(abs((upper - lower) / (2.0 * h) - diff))
    assert errors[0] < 1e-5 and errors[1] < 1e-7
    assert errors[1] <= 0.05 * errors[0] + 1e-11

@pytest.mark.geometry
def test_triangle_angle_sum(hexagonal: pt.SurfacePoint, rng: np.random.Generator):
    points = [hexagonal] + [pt.random_surface_point(rng) for _ in range(3)]
    n_triples = 0
    for point in points:
        for triple in pt.enumerate_triples(point, 20.0):
            total = sum(pair.angle for pair in pt.triangle_angles(triple))
            assert 0.0 < np.pi - total
            n_triples += 1
    assert n_triples >= 100

@pytest.mark.geometry
def test_orbit_length_random(rng: np.random.Generator):
    for _ in range(3):
        point = pt.random_surface_point(rng)
        for gamma, gamma_prime in [((1, 0), (0, 1)), ((1, 1), (1, 0)), ((-1, 2), (0, 1))]:
            orbit = pt.twist_orbit(point, pt.Slope(*gamma), pt.Slope(*gamma_prime))
            for n in range(-8, 9):
                assert pt.orbit_length(orbit, n) == \
                       pytest.approx(point.length(orbit.slope(n)), rel=1e-9)
