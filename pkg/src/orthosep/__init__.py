"""Orbits and separating invariants of O_2^+(F_q) acting on m-tuples of plane vectors."""

from .gf import FieldElement, FieldSpec, field_make, primitive_element
from .group import GroupElement, PointTuple, Vector2, all_elements, point, sigma, tau, vec
from .invariants import (InvariantDescriptor, InvariantSet, expand_set, make_invariant,
                         minimal_set, set_chen, set_Tm, set_Tm2)
from .orbits import (CanonicalForm, canonicalize, orbit_count_formula, orbit_reps_enumerate,
                     same_orbit)
from .poly import Poly, parse_poly
from .separate import (beta_sep, gamma_sep_check, is_minimal, is_separating,
                       min_separating_subset, sigma_sep_bounded)

__version__ = "0.1.0"
