from typing import List
import numpy as np
import pytest
import pyteich as pt

@pytest.fixture
def random_points(rng: np.random.Generator, n_points: int) -> List[pt.SurfacePoint]:
    return [pt.random_surface_point(rng) for _ in range(n_points)]

@pytest.mark.markoff
def test_kappa(l_delta: float):
    kappa = pt.kappa_of_boundary(l_delta)
    assert kappa <= 0.0
    assert np.isclose(pt.boundary_of_kappa(kappa), l_delta, atol=1e-12)
    with pytest.raises(ValueError):
        pt.kappa_of_boundary(-1.0)

@pytest.mark.markoff
def test_make_surface_point():
    assert pt.make_surface_point(3.0, 3.0, 0.0, 'smaller').traces == (3.0, 3.0, 3.0)
    assert np.isclose(pt.make_surface_point(3.0, 3.0, 0.0, 'larger').traces[2], 6.0)
    point = pt.make_surface_point(3.2, 3.2, 2.0, 'smaller')
    assert point.seed.residual() < 1e-12
    assert not point.is_cusp
    with pytest.raises(ValueError):
        pt.make_surface_point(2.5, 2.5, 0.0)
    with pytest.raises(ValueError):
        pt.make_surface_point(1.5, 3.0, 0.0)
    with pytest.raises(ValueError):
        pt.make_surface_point(3.0, 3.0, 0.0, 'middle')
    with pytest.raises(ValueError):
        pt.SurfacePoint.from_traces(3.0, 3.0, 3.1, 0.0)

@pytest.mark.markoff
def test_vieta_flip(hexagonal: pt.SurfacePoint):
    triple = hexagonal.seed
    flipped = pt.vieta_flip(triple, 2)
    assert flipped.traces == (3.0, 3.0, 6.0)
    assert flipped.slopes[2] == pt.Slope(-1, 1)
    back = pt.vieta_flip(flipped, 2)
    assert back.traces == triple.traces and back.slopes == triple.slopes

@pytest.mark.markoff
def test_sink_triple():
    point = pt.SurfacePoint.from_twist_coordinates(1.0, 2.5, 0.0)
    sink = pt.sink_triple(point)
    assert min(sink.traces) == pytest.approx(2.0 * np.cosh(0.5))
    for index in range(3):
        assert max(pt.vieta_flip(sink, index).traces) >= max(sink.traces)

@pytest.mark.markoff
@pytest.mark.parametrize('slope, trace', [((1, 2), 6.0), ((2, 3), 15.0), ((-1, 2), 15.0),
                                          ((-1, 1), 6.0), ((1, 0), 3.0)])
def test_trace_of_slope(hexagonal: pt.SurfacePoint, slope, trace):
    assert pt.trace_of_slope(hexagonal, pt.Slope(*slope)) == pytest.approx(trace, rel=1e-14)
    assert pt.fricke_oracle(hexagonal, pt.Slope(*slope)) == pytest.approx(trace, rel=1e-12)

@pytest.mark.markoff
def test_fricke_oracle(random_points: List[pt.SurfacePoint]):
    for point in random_points:
        assert pt.commutator_trace(point) == pytest.approx(point.kappa - 2.0, abs=1e-9)
        for slope in pt.coprime_slopes(6):
            assert pt.fricke_oracle(point, slope) == \
                   pytest.approx(pt.trace_of_slope(point, slope), rel=1e-9)

@pytest.mark.markoff
@pytest.mark.parametrize('cutoff, traces', [(1.0, []), (2.0, [3.0] * 3),
                                            (3.6, [3.0] * 3 + [6.0] * 3)])
def test_enumerate_small(hexagonal: pt.SurfacePoint, cutoff, traces):
    records = list(pt.enumerate_geodesics(hexagonal, cutoff))
    assert sorted(rec.trace for rec in records) == pytest.approx(traces)

@pytest.mark.markoff
def test_enumerate_complete(random_points: List[pt.SurfacePoint]):
    for point in random_points:
        records = list(pt.enumerate_geodesics(point, 8.0))
        slopes = [rec.slope for rec in records]
        assert len(slopes) == len(set(slopes))
        brute = pt.brute_force_geodesics(point, 8.0, 20)
        assert set(slopes) == set(rec.slope for rec in brute)
        for rec in records:
            assert rec.length < 8.0
            assert rec.trace == pytest.approx(pt.trace_of_slope(point, rec.slope), rel=1e-9)

@pytest.mark.markoff
def test_enumerate_threads(hexagonal: pt.SurfacePoint):
    serial = list(pt.enumerate_geodesics(hexagonal, 14.0))
    parallel = list(pt.enumerate_geodesics(hexagonal, 14.0, num_threads=2))
    assert sorted(rec.slope for rec in serial) == sorted(rec.slope for rec in parallel)
    assert len(parallel) == len(set(rec.slope for rec in parallel))

@pytest.mark.markoff
def test_enumerate_overflow(hexagonal: pt.SurfacePoint):
    with pytest.raises(OverflowError):
        list(pt.enumerate_geodesics(hexagonal, 700.0))

@pytest.mark.markoff
def test_triples_and_pairs(hexagonal: pt.SurfacePoint):
    for triple in pt.enumerate_triples(hexagonal, 10.0):
        assert triple.residual() < 1e-9
    pairs = list(pt.enumerate_neighbor_pairs(hexagonal, 10.0))
    edges = [frozenset((first.slope, second.slope)) for first, second in pairs]
    assert len(edges) == len(set(edges))
    for first, second in pairs:
        assert pt.is_farey_neighbor(first.slope, second.slope)
    records = list(pt.enumerate_geodesics(hexagonal, 10.0))
    # every curve but the three seeds closes two edges with its parents
    assert len(edges) == 2 * len(records) - 3

@pytest.mark.markoff
def test_near_cusp():
    point = pt.SurfacePoint.near_cusp(0.1)
    assert point.traces[0] == pytest.approx(2.0 * np.cosh(0.05))
    assert point.seed.residual() < 1e-9
    with pytest.raises(ValueError):
        pt.SurfacePoint.near_cusp(3.0)
    with pytest.raises(ValueError):
        pt.SurfacePoint.near_cusp(0.0)

@pytest.mark.markoff
@pytest.mark.slow
def test_fricke_oracle_height(random_points: List[pt.SurfacePoint]):
    slopes = pt.coprime_slopes(50)
    for point in random_points:
        for slope in slopes:
            assert pt.fricke_oracle(point, slope) == \
                   pytest.approx(pt.trace_of_slope(point, slope), rel=1e-9)

@pytest.mark.markoff
def test_trace_of_slope_runs(hexagonal: pt.SurfacePoint):
    # traces along the twist orbits n/1 and -1/n through the seed
    traces = [3.0, 3.0]
    for _ in range(30):
        traces.append(3.0 * traces[-1] - traces[-2])
    for n in range(1, 31):
        assert pt.trace_of_slope(hexagonal, pt.Slope(n, 1)) == \
               pytest.approx(traces[n], rel=1e-13)
        assert pt.trace_of_slope(hexagonal, pt.Slope(-1, n)) == \
               pytest.approx(traces[n + 1], rel=1e-13)

@pytest.mark.markoff
@pytest.mark.parametrize('slope', [(1, 3_000_000), (1, 2**40), (2**40 + 1, 2**40)])
def test_trace_of_slope_overflow(hexagonal: pt.SurfacePoint, slope):
    with pytest.raises(OverflowError):
        pt.trace_of_slope(hexagonal, pt.Slope(*slope))

@pytest.mark.markoff
def test_monotone_growth(hexagonal: pt.SurfacePoint, random_points: List[pt.SurfacePoint]):
    for point in [hexagonal] + random_points:
        for triple in pt.enumerate_triples(point, 15.0):
            top = triple.max_index()
            for index in range(3):
                if index != top:
                    assert max(pt.vieta_flip(triple, index).traces) > max(triple.traces)

@pytest.mark.markoff
def test_swap_symmetry(hexagonal: pt.SurfacePoint):
    for rec in pt.enumerate_geodesics(hexagonal, 12.0):
        swapped = pt.normalize_slope(rec.slope.q, rec.slope.p)
        assert hexagonal.length(swapped) == pytest.approx(rec.length, rel=1e-12)
