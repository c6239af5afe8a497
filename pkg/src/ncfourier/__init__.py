"""Exact computational algebra for degree-truncated noncommutative rings,
central-extension lifting, microlocalization, and finite-abelian kernel
transforms.

Everything computes over exact arithmetic (rationals, cyclotomic
integers); every check in the package is an equality, never a
tolerance.
"""

from .words import NcPoly, all_words, commutator_poly, word_key
from .linalg import Subspace, solve_matrix
from .truncated import (Presentation, TruncatedAlgebra, build_truncated,
                        AlgebraError, PresentationError,
                        InconsistentPresentation, DegreeOverflow)
from .filtration import (lcs_term, commutator_ideal, nc_filtration,
                         in_nilpotency_class, quotient_rd, abelianization)
from .algebroid import (LieAlgebroidPresentation, enveloping_presentation,
                        pbw_dimension_check, JacobiFailure)
from .etale import (AlgebraMorphism, CentralExtension, EtaleDiagram,
                    central_quotient, standard_etale, standard_etale_data,
                    lift_standard, solve_lifts, check_formally_etale,
                    CentralBimoduleData, derivation_transfer_check,
                    nd_closure_check, topological_invariance_harness,
                    lift_test_family, closure_family, square_zero_diagram,
                    rational_base, class_one_free_base,
                    NotCentralExtension, PreimageMismatch, LiftInconsistent)
from .microloc import (FilteredAlgebra, GradedAlgebraView, MicroGraded,
                       associated_graded, gr_n, graded_iso_report,
                       projection_report, rees_model_check, localize_deg0,
                       lift_comparison, lift_independence, filtration_ideals,
                       shift_bimodule, shift_checks, limit_tower,
                       TAdicModule, rank_one_criterion, NotFiltered,
                       ZeroSymbol, BadLift, HypothesisFailure)
from .cyclotomic import Cyclotomic, CyclotomicField, cyclotomic_polynomial
from .groups import (FiniteAbGroup, dual_group, character_table,
                     pairing_nondegenerate, orthogonality_table)
from .fmkernel import (Kernel, TransKernel, QuasiSpecialAlgebra,
                       GradedModule, poincare, inverse_kernel,
                       transform_kernel, inverse_transform_kernel,
                       recognize_trans, transform_trans,
                       quasi_special_algebra, transform_algebra,
                       transform_algebra_report, double_transform_report,
                       check_module_action, transform_module,
                       inverse_transform_module, module_transform_report,
                       random_kernel, random_module, KernelError,
                       GroupMismatch, NotClosed, NotAModule)
from .dsl import (parse_presentation, print_presentation, parse_poly,
                  print_poly, parse_group, print_group, parse_fm_gens,
                  poly_to_json, poly_from_json, presentation_to_json,
                  presentation_from_json, diagram_to_json, diagram_from_json,
                  morphism_to_json, morphism_from_json, ParseError,
                  UnknownGenerator, ZeroModulus)
from .report import make_report, dump_report, report_bytes, VERSION
from .oracles import (filtration_oracle, orthogonality_oracle, assoc_oracle,
                      BudgetExceeded, budget_limit)

__version__ = VERSION
