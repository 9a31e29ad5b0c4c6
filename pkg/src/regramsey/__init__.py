"""Regressive Ramsey numbers: fast-growing hierarchies, bad colorings,
greedy extraction and exact search."""
from .arith import CappedNat, IndeterminateComparison, ilog, iroot, pair_decode, pair_encode
from .hierarchy import (Schedule, ack_approx, beta_inverse, beta_of, check_growth_inequalities,
                        fg_eval, ft_eval, mu_g)

__version__ = "0.1.0"

__all__ = [
    "CappedNat", "IndeterminateComparison", "Schedule", "ack_approx", "beta_inverse", "beta_of",
    "check_growth_inequalities", "fg_eval", "ft_eval", "ilog", "iroot", "mu_g", "pair_decode",
    "pair_encode",
]
