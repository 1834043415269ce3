"""Markoff trace coordinates on the Teichmueller space of the one-holed
torus. A point of the space is given by the boundary length and a seed
triple of traces x = 2 cosh(l / 2) of three simple closed geodesics meeting
pairwise once, with

    x1**2 + x2**2 + x3**2 - x1 * x2 * x3 = kappa = 2 - 2 cosh(l_delta / 2).

Every other simple closed geodesic is reached from the seed by Vieta flips
x_i -> x_j * x_k - x_i, which makes the set of simple geodesics a trivalent
tree walked by :func:`enumerate_geodesics`.

Examples:

    >>> import pyteich as pt
    >>> point = pt.make_surface_point(3.0, 3.0, 0.0)
    >>> point.traces
    (3.0, 3.0, 3.0)
    >>> [rec.trace for rec in pt.enumerate_geodesics(point, 3.6)]
    [3.0, 3.0, 3.0, 6.0, 6.0, 6.0]
"""
from __future__ import annotations
from functools import partial
import heapq
from itertools import count
from multiprocessing import Pool
from typing import Iterator, List, NamedTuple, Optional, Set, Tuple
import numpy as np
from tqdm.auto import tqdm
from .data_container import DataContainer
from .farey import (BASE_TRIANGLE, Slope, coprime_slopes, farey_companion,
                    is_farey_neighbor)

MAX_LENGTH = 600.0
CUBIC_RTOL = 1e-9
BAR_FORMAT = '{desc} {n_fmt} records [{elapsed}, {rate_fmt}{postfix}]'

def kappa_of_boundary(l_delta: float) -> float:
    """Return the constant of the Markoff cubic for the boundary length
    `l_delta` (0 for a cusp).

    Raises:
        ValueError : If `l_delta` is negative.
    """
    if l_delta < 0.0:
        raise ValueError(f'Boundary length must be non-negative: {l_delta}')
    return 2.0 - 2.0 * np.cosh(0.5 * l_delta)

def boundary_of_kappa(kappa: float) -> float:
    """Inverse of :func:`kappa_of_boundary`."""
    if kappa > 0.0:
        raise ValueError(f'kappa must be non-positive: {kappa}')
    return 4.0 * np.arcsinh(0.5 * np.sqrt(-kappa))

def cubic_residual(traces: Tuple[float, float, float], kappa: float) -> float:
    """Return the Markoff cubic residual relative to x1 * x2 * x3."""
    x1, x2, x3 = traces
    return abs(x1 * x1 + x2 * x2 + x3 * x3 - x1 * x2 * x3 - kappa) / abs(x1 * x2 * x3)

class FareyTriple(DataContainer):
    """Three simple closed geodesics meeting pairwise once (a Farey
    triangle of slopes) together with their traces.

    Args:
        slopes : Three pairwise Farey neighbour slopes.
        traces : Their traces.
        kappa : Constant of the Markoff cubic.
        check : Validate the cubic if True.

    Raises:
        ValueError : If the slopes are not pairwise neighbours, a trace is
            not larger than 2, or the traces violate the cubic.
    """
    attr_set = {'slopes', 'traces', 'kappa'}

    slopes : Tuple[Slope, Slope, Slope]
    traces : Tuple[float, float, float]
    kappa : float

    def __init__(self, slopes: Tuple[Slope, Slope, Slope], traces: Tuple[float, float, float],
                 kappa: float, check: bool=True) -> None:
        super().__init__(slopes=tuple(slopes), traces=tuple(float(x) for x in traces),
                         kappa=float(kappa))
        if check:
            for i in range(3):
                if not is_farey_neighbor(self.slopes[i - 1], self.slopes[i]):
                    raise ValueError(f'Slopes {self.slopes[i - 1]!s} and {self.slopes[i]!s} '\
                                     'are not Farey neighbours')
            if min(self.traces) <= 2.0:
                raise ValueError(f'Traces must be larger than 2: {self.traces}')
            if self.residual() > CUBIC_RTOL:
                raise ValueError(f'Traces {self.traces} violate the Markoff cubic '\
                                 f'(kappa = {self.kappa}), relative residual {self.residual():.3e}')

    def residual(self) -> float:
        return cubic_residual(self.traces, self.kappa)

    def flip(self, index: int) -> FareyTriple:
        return vieta_flip(self, index)

    def max_index(self) -> int:
        return int(np.argmax(self.traces))

class GeodesicRecord(DataContainer):
    """Simple closed geodesic at a surface point.

    Args:
        trace : Trace 2 cosh(length / 2), larger than 2.
        length : Geodesic length.
        slope : Slope of the curve. None for anonymous traces.
    """
    attr_set = {'trace', 'length'}
    init_set = {'slope'}

    slope : Optional[Slope]
    trace : float
    length : float

    @classmethod
    def from_trace(cls, trace: float, slope: Optional[Slope]=None) -> GeodesicRecord:
        if not trace > 2.0:
            raise ValueError(f'Trace must be larger than 2: {trace}')
        return cls(trace=trace, length=2.0 * np.arccosh(0.5 * trace), slope=slope)

class SurfacePoint(DataContainer):
    """A point of the Teichmueller space of the one-holed torus with the
    boundary length `l_delta`. The seed triple sits on the base triangle
    of slopes (1/0, 0/1, 1/1).

    Args:
        l_delta : Boundary length, 0 for a punctured torus.
        kappa : Constant of the Markoff cubic.
        seed : Seed triple.

    Raises:
        ValueError : If `kappa` doesn't match `l_delta` or the seed isn't
            on the base triangle.
    """
    attr_set = {'l_delta', 'kappa', 'seed'}

    l_delta : float
    kappa : float
    seed : FareyTriple

    def __init__(self, l_delta: float, kappa: float, seed: FareyTriple) -> None:
        super().__init__(l_delta=float(l_delta), kappa=float(kappa), seed=seed)
        expected = kappa_of_boundary(self.l_delta)
        if abs(self.kappa - expected) > 1e-12 * max(1.0, abs(expected)):
            raise ValueError(f'kappa = {kappa} does not match l_delta = {l_delta}')
        if seed.slopes != BASE_TRIANGLE or seed.kappa != self.kappa:
            raise ValueError('Seed triple must sit on the base triangle (1/0, 0/1, 1/1)')

    @property
    def traces(self) -> Tuple[float, float, float]:
        return self.seed.traces

    @property
    def is_cusp(self) -> bool:
        return self.l_delta == 0.0

    def trace(self, slope: Slope) -> float:
        return trace_of_slope(self, slope)

    def length(self, slope: Slope) -> float:
        return 2.0 * np.arccosh(0.5 * trace_of_slope(self, slope))

    @classmethod
    def from_traces(cls, x1: float, x2: float, x3: float, l_delta: float) -> SurfacePoint:
        """Build a point from the full seed triple.

        Raises:
            ValueError : If the triple violates the cubic for `l_delta`.
        """
        kappa = kappa_of_boundary(l_delta)
        return cls(l_delta=l_delta, kappa=kappa,
                   seed=FareyTriple(BASE_TRIANGLE, (x1, x2, x3), kappa))

    @classmethod
    def from_twist_coordinates(cls, l_alpha: float, twist: float, l_delta: float) -> SurfacePoint:
        """Build a point from twist coordinates along 1/0: the curve 1/0 has
        length `l_alpha`, the curves 0/1 and 1/1 cross its perpendicular
        at the offsets `twist` and `twist` + `l_alpha` / 2.

        Args:
            l_alpha : Length of the curve 1/0.
            twist : Signed twist offset of 0/1.
            l_delta : Boundary length.

        Returns:
            A new surface point.

        Raises:
            ValueError : If `l_alpha` is not positive.
        """
        if l_alpha <= 0.0:
            raise ValueError(f'Length must be positive: {l_alpha}')
        half = 0.5 * l_alpha
        cosh_perp = np.sqrt(1.0 + (np.cosh(0.25 * l_delta) / np.sinh(half))**2)
        return cls.from_traces(2.0 * np.cosh(half), 2.0 * np.cosh(twist) * cosh_perp,
                               2.0 * np.cosh(half + twist) * cosh_perp, l_delta)

    @classmethod
    def near_cusp(cls, epsilon: float, l_delta: float=0.0) -> SurfacePoint:
        """Return the degeneration family point with the systole 1/0 of
        length `epsilon` crossed by 0/1 at zero twist offset.

        Raises:
            ValueError : If `epsilon` is not the systole of the point.
        """
        if epsilon <= 0.0:
            raise ValueError(f'epsilon must be positive: {epsilon}')
        perp = np.arcsinh(np.cosh(0.25 * l_delta) / np.sinh(0.5 * epsilon))
        if epsilon >= 2.0 * perp:
            raise ValueError(f'epsilon = {epsilon} is not the systole, the crossing curve '\
                             f'has length {2.0 * perp}')
        return cls.from_twist_coordinates(epsilon, 0.0, l_delta)

    @classmethod
    def hexagonal(cls) -> SurfacePoint:
        """Return the most symmetric punctured torus (3, 3, 3)."""
        return cls.from_traces(3.0, 3.0, 3.0, 0.0)

def make_surface_point(x1: float, x2: float, l_delta: float, root: str='smaller') -> SurfacePoint:
    """Solve the Markoff cubic for the third seed trace.

    Args:
        x1 : Trace of 1/0, larger than 2.
        x2 : Trace of 0/1, larger than 2.
        l_delta : Boundary length.
        root : Either 'smaller' or 'larger' root of the quadratic in x3.

    Returns:
        A new surface point.

    Raises:
        ValueError : If a trace is not larger than 2, the discriminant is
            negative or the chosen root is not larger than 2.
    """
    if x1 <= 2.0 or x2 <= 2.0:
        raise ValueError(f'Traces must be larger than 2: {x1}, {x2}')
    if root not in ('smaller', 'larger'):
        raise ValueError(f"Invalid root '{root}', must be 'smaller' or 'larger'")
    kappa = kappa_of_boundary(l_delta)
    const = x1 * x1 + x2 * x2 - kappa
    disc = (x1 * x2)**2 - 4.0 * const
    if disc < 0.0:
        raise ValueError(f'No real root for x1 = {x1}, x2 = {x2}, l_delta = {l_delta}: '\
                         f'discriminant = {disc}')
    larger = 0.5 * (x1 * x2 + np.sqrt(disc))
    x3 = larger if root == 'larger' else const / larger
    if x3 <= 2.0:
        raise ValueError(f'The {root} root x3 = {x3} is not larger than 2 '\
                         f'(discriminant = {disc})')
    return SurfacePoint.from_traces(x1, x2, x3, l_delta)

def random_surface_point(rng: np.random.Generator, trace_range: Tuple[float, float]=(3.0, 4.5),
                         l_delta: Optional[float]=None) -> SurfacePoint:
    """Draw a random point with x1, x2 uniform in `trace_range` and the
    smaller root for x3. `l_delta` is uniform in [0, 2] if not provided.
    """
    if l_delta is None:
        l_delta = rng.uniform(0.0, 2.0)
    x1, x2 = rng.uniform(*trace_range, size=2)
    return make_surface_point(float(x1), float(x2), float(l_delta), 'smaller')

def vieta_flip(triple: FareyTriple, index: int) -> FareyTriple:
    """Replace the `index`-th trace by the other root of the cubic and its
    slope by the other Farey child of the two kept slopes.
    """
    j, k = [i for i in range(3) if i != index]
    traces, slopes = list(triple.traces), list(triple.slopes)
    traces[index] = traces[j] * traces[k] - traces[index]
    slopes[index] = farey_companion(slopes[j], slopes[k], slopes[index])
    return FareyTriple(slopes, traces, triple.kappa)

def sink_triple(point: SurfacePoint) -> FareyTriple:
    """Flip the largest trace while it decreases. The resulting triple
    holds the smallest trace of the point.
    """
    triple = point.seed
    while True:
        index = triple.max_index()
        j, k = [i for i in range(3) if i != index]
        if triple.traces[j] * triple.traces[k] - triple.traces[index] >= triple.traces[index]:
            return triple
        triple = vieta_flip(triple, index)

def trace_of_slope(point: SurfacePoint, slope: Slope) -> float:
    """Return the trace of a slope by the Stern-Brocot descent from the base
    triangle, using tr(u + v) = tr(u) tr(v) - tr(u - v). A run of k steps
    towards the same side is the k-th power of the transfer matrix
    [[x, -1], [1, 0]] with x the trace of the fixed side, so the descent
    takes as many matrix powers as the continued fraction of the slope has
    terms.

    Args:
        point : Surface point.
        slope : Normalized slope.

    Returns:
        Trace of the geodesic.

    Raises:
        OverflowError : If the trace is not finite.
    """
    x1, x2, x3 = point.traces
    if slope == BASE_TRIANGLE[0]:
        return x1
    if slope.p == 0:
        return x2
    positive, runs = _continued_fraction_runs(slope)
    if positive:
        t_left, t_right, t_mid = x2, x1, x3
    else:
        t_left, t_right, t_mid = x1, x2, x1 * x2 - x3
    steps = 0
    try:
        with np.errstate(over='raise', invalid='raise'):
            for is_left, length in runs:
                if is_left:
                    t_mid, t_right = _transfer(t_left, length) @ (t_mid, t_right)
                else:
                    t_mid, t_left = _transfer(t_right, length) @ (t_mid, t_left)
                steps += length
                if not np.isfinite(t_mid):
                    raise FloatingPointError
    except FloatingPointError as err:
        raise OverflowError(f'Trace of {slope!s} overflows after {steps:d} '\
                            'Stern-Brocot steps') from err
    return float(t_mid)

def _transfer(trace: float, length: int) -> np.ndarray:
    return np.linalg.matrix_power(np.array([[trace, -1.0], [1.0, 0.0]]), length)

def _continued_fraction_runs(slope: Slope) -> Tuple[bool, List[Tuple[bool, int]]]:
    # Stern-Brocot path from the base mid-point as (is_left, run length)
    # runs, read off the continued fraction of |p| / q. The negative half
    # mirrors the positive one.
    positive = slope.p > 0
    num, den = abs(slope.p), slope.q
    terms = []
    while den:
        terms.append(num // den)
        num, den = den, num % den
    terms[-1] -= 1
    runs: List[Tuple[bool, int]] = []
    for index, length in enumerate(terms):
        if length:
            runs.append(((index % 2 == 1) == positive, length))
    return positive, runs

def fricke_matrices(point: SurfacePoint) -> Tuple[np.ndarray, np.ndarray]:
    """Return SL(2, R) matrices A, B with tr A = x1, tr B = x2 and
    tr AB = x3, the holonomies of the curves 1/0 and 0/1.

    Returns:
        A tuple of two 2x2 arrays ('A', 'B'). `A` is diagonal and `B` has
        positive entries.
    """
    x1, x2, x3 = point.traces
    lam = 0.5 * (x1 + np.sqrt(x1 * x1 - 4.0))
    a = (lam * x3 - x2) / (lam * lam - 1.0)
    d = x2 - a
    mat_a = np.array([[lam, 0.0], [0.0, 1.0 / lam]])
    mat_b = np.array([[a, 1.0], [a * d - 1.0, d]])
    return mat_a, mat_b

def fricke_oracle(point: SurfacePoint, slope: Slope) -> float:
    """Return the trace of a slope computed from the explicit holonomy
    matrices. The word of the slope is assembled from the continued
    fraction runs of its Stern-Brocot path with matrix powers.

    Args:
        point : Surface point.
        slope : Normalized slope.

    Returns:
        Trace of the geodesic.
    """
    mat_a, mat_b = fricke_matrices(point)
    if slope == BASE_TRIANGLE[0]:
        return float(np.trace(mat_a))
    if slope.p == 0:
        return float(np.trace(mat_b))
    positive, runs = _continued_fraction_runs(slope)
    if positive:
        word_left, word_right = mat_b, mat_a
    else:
        word_left, word_right = np.linalg.inv(mat_a), mat_b
    try:
        with np.errstate(over='raise'):
            for is_left, length in runs:
                if is_left:
                    word_right = np.linalg.matrix_power(word_left, length) @ word_right
                else:
                    word_left = word_left @ np.linalg.matrix_power(word_right, length)
            return float(np.trace(word_left @ word_right))
    except FloatingPointError as err:
        raise OverflowError(f'Holonomy of {slope!s} overflows') from err

def commutator_trace(point: SurfacePoint) -> float:
    """Return tr(A B A^-1 B^-1) = kappa - 2, the boundary holonomy trace."""
    mat_a, mat_b = fricke_matrices(point)
    return float(np.trace(mat_a @ mat_b @ np.linalg.inv(mat_a) @ np.linalg.inv(mat_b)))

class _Node(NamedTuple):
    traces: Tuple[float, float, float]
    slopes: Tuple[Slope, Slope, Slope]
    parent: int
    level: int

    @classmethod
    def root(cls, triple: FareyTriple) -> _Node:
        return cls(triple.traces, triple.slopes, -1, 0)

def _children(node: _Node, trace_cutoff: float) -> Iterator[_Node]:
    for index in range(3):
        if index == node.parent:
            continue
        j, k = [i for i in range(3) if i != index]
        value = node.traces[j] * node.traces[k] - node.traces[index]
        if not np.isfinite(value):
            raise OverflowError(f'Trace overflow at tree level {node.level + 1:d}')
        # beyond the sink every descendant is longer than the new curve
        if value >= trace_cutoff and value > node.traces[j] and value > node.traces[k]:
            continue
        traces, slopes = list(node.traces), list(node.slopes)
        traces[index] = value
        slopes[index] = farey_companion(node.slopes[j], node.slopes[k], node.slopes[index])
        yield _Node(tuple(traces), tuple(slopes), index, node.level + 1)

def _walk(root: _Node, trace_cutoff: float) -> Iterator[_Node]:
    heap = [(max(root.traces), 0, root)]
    counter = count(1)
    while heap:
        _, _, node = heapq.heappop(heap)
        yield node
        for child in _children(node, trace_cutoff):
            heapq.heappush(heap, (max(child.traces), next(counter), child))

def _trace_cutoff(length_cutoff: float) -> float:
    if length_cutoff > MAX_LENGTH:
        raise OverflowError(f'Length cutoff {length_cutoff} exceeds the limit {MAX_LENGTH}')
    return 2.0 * np.cosh(0.5 * length_cutoff)

def _node_records(node: _Node, trace_cutoff: float, seen: Set[Slope]) -> List[GeodesicRecord]:
    indices = range(3) if node.parent < 0 else (node.parent,)
    records = []
    for index in indices:
        slope, trace = node.slopes[index], node.traces[index]
        if trace < trace_cutoff and slope not in seen:
            seen.add(slope)
            records.append(GeodesicRecord.from_trace(trace, slope))
    return records

def _subtree_records(root: _Node, trace_cutoff: float) -> List[GeodesicRecord]:
    seen: Set[Slope] = set()
    records = []
    for node in _walk(root, trace_cutoff):
        records.extend(_node_records(node, trace_cutoff, seen))
    return records

def initializer(trace_cutoff: float) -> None:
    global worker
    worker = partial(_subtree_records, trace_cutoff=trace_cutoff)

def walk_subtree(root: _Node) -> List[GeodesicRecord]:
    return worker(root)

def _split_frontier(point: SurfacePoint, trace_cutoff: float,
                    size: int) -> Tuple[List[_Node], List[_Node]]:
    root = _Node.root(point.seed)
    heap = [(max(root.traces), 0, root)]
    counter = count(1)
    expanded = []
    while heap and len(heap) < size:
        _, _, node = heapq.heappop(heap)
        expanded.append(node)
        for child in _children(node, trace_cutoff):
            heapq.heappush(heap, (max(child.traces), next(counter), child))
    return expanded, [node for _, _, node in sorted(heap, key=lambda item: item[:2])]

def enumerate_geodesics(point: SurfacePoint, length_cutoff: float, num_threads: int=1,
                        verbose: bool=False) -> Iterator[GeodesicRecord]:
    """Stream every simple closed geodesic shorter than `length_cutoff`,
    each exactly once, in near-length order. The tree of Farey triangles is
    walked best-first (smallest maximal trace first). A branch is cut when
    its new trace is beyond the cutoff and larger than the two kept ones,
    since the traces grow monotonically away from the sink.

    Args:
        point : Surface point.
        length_cutoff : Strict upper bound on the lengths.
        num_threads : Number of worker processes. The frontier is split into
            disjoint subtrees if it's larger than 1.
        verbose : Show a progress bar if True.

    Returns:
        An iterator of :class:`GeodesicRecord` records. The records of the
        root part come first, followed by every subtree in order.

    Raises:
        OverflowError : If `length_cutoff` exceeds :data:`MAX_LENGTH` or a
            trace is not finite.
    """
    trace_cutoff = _trace_cutoff(length_cutoff)
    itor = tqdm(disable=not verbose, desc='Enumerating geodesics', bar_format=BAR_FORMAT)
    with itor:
        if num_threads <= 1:
            seen: Set[Slope] = set()
            for node in _walk(_Node.root(point.seed), trace_cutoff):
                for record in _node_records(node, trace_cutoff, seen):
                    itor.update()
                    yield record
            return

        expanded, subtrees = _split_frontier(point, trace_cutoff, 4 * num_threads)
        seen = set()
        for node in expanded:
            for record in _node_records(node, trace_cutoff, seen):
                itor.update()
                yield record
        with Pool(processes=num_threads, initializer=initializer,
                  initargs=(trace_cutoff,)) as pool:
            for records in pool.imap(walk_subtree, subtrees):
                itor.update(len(records))
                yield from records

def enumerate_triples(point: SurfacePoint, cutoff: float) -> Iterator[FareyTriple]:
    """Iterate over every Farey triple with all three lengths below
    `cutoff`.
    """
    trace_cutoff = _trace_cutoff(cutoff)
    for node in _walk(_Node.root(point.seed), trace_cutoff):
        if max(node.traces) < trace_cutoff:
            yield FareyTriple(node.slopes, node.traces, point.kappa)

def enumerate_neighbor_pairs(point: SurfacePoint,
                             cutoff: float) -> Iterator[Tuple[GeodesicRecord, GeodesicRecord]]:
    """Iterate over every pair of simple closed geodesics meeting once
    (every edge of the Farey graph) with both lengths below `cutoff`. Each
    edge is reported once, by the triangle where its younger end appears.
    """
    trace_cutoff = _trace_cutoff(cutoff)
    for node in _walk(_Node.root(point.seed), trace_cutoff):
        if node.parent < 0:
            edges = [(0, 1), (1, 2), (0, 2)]
        else:
            edges = [(i, node.parent) for i in range(3) if i != node.parent]
        for i, j in edges:
            if node.traces[i] < trace_cutoff and node.traces[j] < trace_cutoff:
                yield (GeodesicRecord.from_trace(node.traces[i], node.slopes[i]),
                       GeodesicRecord.from_trace(node.traces[j], node.slopes[j]))

def brute_force_geodesics(point: SurfacePoint, length_cutoff: float,
                          height: int) -> List[GeodesicRecord]:
    """Return the geodesics shorter than `length_cutoff` among the slopes of
    height at most `height`, with traces from :func:`fricke_oracle`.
    """
    trace_cutoff = _trace_cutoff(length_cutoff)
    records = []
    for slope in coprime_slopes(height):
        trace = fricke_oracle(point, slope)
        if trace < trace_cutoff:
            records.append(GeodesicRecord.from_trace(trace, slope))
    return records
