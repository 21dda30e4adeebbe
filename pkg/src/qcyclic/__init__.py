"""Quaternary cyclic codes of length 4^m - 1 defined by base-4 digit-weight parity."""

from .codes import CyclicCode, LinearCode, build_code, dual, even_weight_subcode, extend, is_duadic_pair, is_lcd
from .distance import WeightDistribution, macwilliams, min_distance, weight_distribution
from .galois import GF4, build_context
from .weights import DefiningSet, defining_set, w2, w4

__all__ = [
    "GF4", "build_context", "DefiningSet", "defining_set", "w2", "w4",
    "CyclicCode", "LinearCode", "build_code", "dual", "even_weight_subcode", "extend",
    "is_duadic_pair", "is_lcd", "WeightDistribution", "macwilliams", "min_distance",
    "weight_distribution",
]
