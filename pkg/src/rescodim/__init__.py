"""Exact restricted root systems, resonant codimension, and an averaging simulator."""
from .averaging import (AveragingStep, AveragingTrace, InvarianceSet,
                        ReplayResult, Rule, choose_base, choose_beta_prime,
                        replay, root_string, run_averaging, select_beta_hat,
                        select_s1, select_s2)
from .dims import (DimensionReport, GroupSpec, d_prime_of, known_dims, r_of,
                   theorem_hypothesis, v_of_split)
from .errors import *  # noqa: F401,F403
from .kernels import BACKEND
from .linalg import in_span as rational_span_membership
from .linalg import strict_feasibility
from .parabolic import (ParabolicSubalgebra, SaturatedSubalgebra,
                        is_parabolic_for_some_base, maximal_parabolic_table,
                        minimal_resonant_codimension, resonant_codimension,
                        standard_parabolic, verify_prop25)
from .resonance import (ExponentSet, OutcomeReport, Verdict, classify_outcome,
                        nonresonant_subalgebra, resonant_roots)
from .roots import (CoarseRoot, RootSystem, RootSystemType, WeylElement,
                    build_root_system, coarse_classes, highest_root,
                    root_system, second_highest_root, simple_reflection,
                    weyl_orbit_search)

__version__ = "0.1.0"
