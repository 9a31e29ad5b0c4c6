"""Exact and greedy searches for min-homogeneous and homogeneous sets,
small regressive Ramsey numbers, and CNF export."""
from .cnf import InstanceTooLarge, decode_model, export_cnf
from .exact import max_homogeneous, max_min_homogeneous
from .greedy import (PreconditionViolation, certified_N, greedy_guarantee, greedy_homogeneous,
                     greedy_min_hom, homogeneous_guarantee_N, upper_bound_N)
from .nu import NuResult, has_bad_coloring, nu_exact
from .outcome import Mode, NoneUpTo, SearchBudget, SearchOutcome, Witness

__all__ = [
    "InstanceTooLarge", "Mode", "NoneUpTo", "NuResult", "PreconditionViolation", "SearchBudget",
    "SearchOutcome", "Witness", "certified_N", "decode_model", "export_cnf", "greedy_guarantee",
    "greedy_homogeneous", "greedy_min_hom", "has_bad_coloring", "homogeneous_guarantee_N",
    "max_homogeneous", "max_min_homogeneous", "nu_exact", "upper_bound_N",
]
