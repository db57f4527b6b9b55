"""Exact stable norms on weighted polygon-gluing surfaces."""
from .errors import SurfNormError
from .surface import ChainVector, SurfaceComplex, connected_sum, is_simple_on_surface
from .fileformat import load_surface, parse_surface, serialize_surface
from .homology import HomologyBasis, class_of_cycle, homology_h1
from .cover import DoubleCover, classify_curve, eigenspaces, lift_cycle, orientation_cover, pushforward
from .pairing import IntersectionForm, check_lagrangian, int_number, intersection_form
from .ratlp import LinearProgram, LpSolution, solve_weighted_l1
from .stablenorm import (
    Flat,
    NormBall,
    dual_norm,
    flat_of,
    minimizing_cycles,
    stable_norm,
    unit_ball,
)
from .polyconstruct import (
    Certificate,
    PrescriptionProblem,
    max_disjoint_systems,
    normalize_lengths,
    penalize_outside,
    verify_prescription,
)

__version__ = "0.1.0"
