"""Exact computations for two-dimensional cyclic quotient and smoothable
semi-log-terminal singularities: resolution chains, the lambda/mu/tau
expansions, degrees of the full sheaves ``F(-nK)``, local intersection
numbers and the Gorenstein index bound.  Each closed formula comes with an
independent brute-force route."""

from .contfrac import eval_minus, eval_plus, minus_expand, plus_expand
from .cyclic_quotient import pullback_coeffs, pullback_oracle, resolve
from .fullsheaf import DivisorVector, fullsheaf_degrees, fullsheaf_oracle, nu
from .index_bound import B_max, verify_index_bound
from .pairing import pair, toric_pair_oracle
from .slt_model import build_classT, build_nonnormal, gorenstein_index

__all__ = [
    "plus_expand", "minus_expand", "eval_plus", "eval_minus",
    "resolve", "pullback_coeffs", "pullback_oracle",
    "build_classT", "build_nonnormal", "gorenstein_index",
    "DivisorVector", "nu", "fullsheaf_degrees", "fullsheaf_oracle",
    "pair", "toric_pair_oracle",
    "B_max", "verify_index_bound",
]
