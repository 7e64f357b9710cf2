"""Reversible signed-particle dynamics on the frame bundle of a simplicial complex."""

from .bundle import Bundle, bundle_of, partner, rotate_left
from .complex import (EMPTY, SimplicialComplex, classify_walls, closure_of, combinatorial_summary,
                      curvature_report, dual_graph, is_ds_manifold, is_ds_sphere, join,
                      sphere_decomposition, whitney)
from .dynamics import (Configuration, fermion_step, involution_a, involution_b, orbit, reduce_eddies,
                       step, step_inverse, tracer_orbit)
from .generators import cross_polytope, cycle, full_simplex, path

__version__ = "0.1.0"
