"""Exact-arithmetic inverse MILP solver and verification toolkit."""

from .decision import (
    Answer,
    Certificate,
    ReductionArtifacts,
    build_certificate,
    decide_imdvp,
    decide_imovp,
    decide_impvp,
    decide_mdvp,
    decide_movp,
    decide_mpvp,
    lemma3_constants,
    reduce_mdvp_to_impvp,
    reduce_mpvp_to_imdvp,
    verify_certificate,
    vertex_complexity,
)
from .bruteforce import EnumeratedRegion, brute_forward_opt, brute_inverse_opt, enumerate_region
from .errors import DimensionError, DomainError, InvMilpError, SolverError, UnsupportedError
from .geometry import ConeClass, ConeQuery, in_D, in_K, kstar_classify
from .instance import InverseInstance, MilpInstance, is_member_S, is_member_S_plus
from .inverse import Cut, InHull, InverseSolution, fenchel_separate, solve_inverse
from .io import ParseError, RunResult, emit_result, parse_instance, parse_result
from .kernels import BACKEND
from .lp import LpOutcome, LpProblem, check_lp_certificate, solve_lp
from .milp import MilpOutcome, is_feasible_objective, solve_milp
from .rational import Norm, encoding_length_rat, encoding_length_vec, parse_rational

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
