"""Fixed points of maps ordered by convex cones: sampled property
certificates, iteration with error bounds, and low-dimensional degree."""
from .cones import (TAU, IceCream, OrderRelation, Orthant, compare, contains, delta_K,
                    gauge_norm, geometry, inf_orthant, lambda_coefficient, leq_lambda_2d,
                    opening_angle, parse_cone_spec, sup_orthant, weighted_max_norm)
from .maps import (Activation, Builtin, DenseLayer, FunctionMap, Map, Network, Symmetric,
                   eval_activation, eval_map, parse_map_spec, unimodal_sigmoid_layer)
from .certify import (FeasiblePoint, PropertyReport, SampleConfig, check_guiding_G,
                      check_guiding_G2, check_monotone, check_norm_monotone, check_scalable,
                      check_subhomogeneous, check_sup_monotone, estimate_contraction,
                      find_feasible, find_invariant_icecream, probe_Sf_bounded, replay)
from .solvers import (ContractionViolation, HypothesisViolation, IterationTrace,
                      MonotonicityViolation, SolveResult, contraction_solve, iterate,
                      monotone_descent, multistart_uniqueness)
from .degree import (Annulus, Box, DegreeReport, Disk, Interval, OrderBody, TheoremReport,
                     check_theorem, degree_1d, degree_2d, locate_fixed_points,
                     parse_region_spec)

__version__ = "0.1.0"
