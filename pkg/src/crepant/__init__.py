"""Symbolic-numeric mirror symmetry for two crepant-resolution pairs.

Rank-4 pair: the weighted projective plane with weights (1,1,2) and the
second Hirzebruch surface.  Rank-6 pair: the weighted projective space with
weights (1,1,1,3) and the corresponding toric resolution threefold.

Modules:
  algebra  - (orbifold) cohomology algebras, pairing, Hard Lefschetz
  scalars  - pluggable exact / symbolic / high-precision scalar fields
  jets     - analytic functional calculus on nilpotent elements
  series   - Laurent-in-z cohomology-valued series, JSON persistence
  models   - toric data, I-functions, Picard-Fuchs systems
  mirror   - mirror maps, inverses, J-functions, flat-coordinate match
  barnes   - Mellin-Barnes analytic continuation of the I-functions
  givental - symplectic transformations and their structural checks
  lg       - Landau-Ginzburg mirrors, critical points, residue pairing
  compare  - comparison isomorphisms Theta and their verification
  cli      - command-line front end
"""

from .algebra import (build_model_algebra, build_fake_rank4_algebra,
                      poincare_pair, hard_lefschetz_check)
from .models import build_toric_model, i_function, pf_operators, pf_check
from .mirror import (mirror_map, inverse_mirror_map,
                     f2_closed_form_mirror_map, flat_compare_p1113)
from .givental import (paper_u_matrix, derived_u_matrix, u_matrix,
                       check_symplectic, check_grading, check_opposite,
                       check_monodromy_equivariance,
                       check_continuation_identity)
from .barnes import (continued_coeff, barnes_integral, continued_value,
                     residue_at_negative_integer)
from .lg import (build_lg_model, critical_points, residue_pairing,
                 quantum_ring, gram_check, connection_matrix_p1113)
from .compare import (theta_p1113, theta_p112,
                      verify_theta_conjugation_p1113,
                      verify_specialization_p112, appendix_b_pipeline)

__version__ = "0.1.0"

__all__ = [
    "build_model_algebra", "build_fake_rank4_algebra", "poincare_pair",
    "hard_lefschetz_check", "build_toric_model", "i_function",
    "pf_operators", "pf_check", "mirror_map", "inverse_mirror_map",
    "f2_closed_form_mirror_map", "flat_compare_p1113", "paper_u_matrix",
    "derived_u_matrix", "u_matrix", "check_symplectic", "check_grading",
    "check_opposite", "check_monodromy_equivariance",
    "check_continuation_identity", "continued_coeff", "barnes_integral",
    "continued_value", "residue_at_negative_integer", "build_lg_model",
    "critical_points", "residue_pairing", "quantum_ring", "gram_check",
    "connection_matrix_p1113", "theta_p1113", "theta_p112",
    "verify_theta_conjugation_p1113", "verify_specialization_p112",
    "appendix_b_pipeline", "__version__",
]
