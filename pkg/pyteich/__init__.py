"""`pyteich` is a Python library for the Teichmueller space of the one-holed
torus in Markoff trace coordinates. It enumerates the simple closed
geodesics of a hyperbolic one-holed torus by walking the Markoff tree,
computes their lengths and intersection angles, and checks the length
series identities (McShane's identity, the arctan identity, the twist
orbit sums, the variation series and the degeneration limits) with
compensated summation and tail estimates.

Examples:

    >>> import pyteich as pt
    >>> point = pt.SurfacePoint.hexagonal()
    >>> pt.trace_of_slope(point, pt.Slope(1, 2))
    6.0
    >>> report = pt.mcshane_sum(point, 2.0)
    >>> round(report.value, 7)
    0.763932
"""
from __future__ import absolute_import

from .summation import KahanSum
from .farey import (Slope, MappingClass, normalize_slope, slope_determinant, intersection_number,
                    is_farey_neighbor, farey_children, farey_companion, apply_mapping_class,
                    farey_neighbor, oriented_basis, farey_slopes, coprime_slopes, BASE_TRIANGLE)
from .markoff import (FareyTriple, GeodesicRecord, SurfacePoint, kappa_of_boundary,
                      boundary_of_kappa, make_surface_point, random_surface_point, vieta_flip,
                      sink_triple, trace_of_slope, fricke_oracle, commutator_trace,
                      enumerate_geodesics, enumerate_triples, enumerate_neighbor_pairs,
                      brute_force_geodesics)
from .geometry import (AnglePair, TwistOrbit, TwistFlow, length_from_trace, trace_from_length,
                       angle_cosine_rule, angle_arcsin, angle_differential, twist_orbit,
                       orbit_length, wolpert_derivative_check, twist_derivative, triangle_angles)
from .series import (SeriesReport, mcshane_sum, arctan_sum, telescoping_sum, variation_sum,
                     tail_estimate, degeneration_limit, tail_bound_cusp, DEGENERATION_PROFILES)
from .spectrum import (SpectrumSummary, Violation, systole, length_spectrum, multiplicities,
                       counting_function, collar_width, collar_check, product_lower_bound_check)

__version__ = '0.1.0'
