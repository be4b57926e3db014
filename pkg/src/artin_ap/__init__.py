"""Primitive-root densities in arithmetic progressions, two ways, plus a prime census."""

from .arith import GInvariants, g_invariants, kronecker, u0
from .census import (
    CensusConfig,
    CensusResult,
    chebotarev_check,
    error_diagnostic,
    is_primitive_root,
    li,
    p_k_count,
    run_census,
    squarefree_shift_count,
)
from .density import ArtinMultiple, artin_constant, delta, delta_natural, hooley_density
from .errors import ArtinError, DegenerateH, InvalidG, NotCoprime, NotSquarefree, PreconditionViolated
from .interval import IntervalReal
from .lenstra import c_a, delta_series, field_degree
from .shift import ShiftContext, euler_product, residue_sum, residue_sum_mobius, shift_leading_constant

__version__ = "0.1.0"

__all__ = [
    "ArtinError",
    "ArtinMultiple",
    "CensusConfig",
    "CensusResult",
    "DegenerateH",
    "GInvariants",
    "IntervalReal",
    "InvalidG",
    "NotCoprime",
    "NotSquarefree",
    "PreconditionViolated",
    "ShiftContext",
    "artin_constant",
    "c_a",
    "chebotarev_check",
    "delta",
    "delta_natural",
    "delta_series",
    "error_diagnostic",
    "euler_product",
    "field_degree",
    "g_invariants",
    "hooley_density",
    "is_primitive_root",
    "kronecker",
    "li",
    "p_k_count",
    "residue_sum",
    "residue_sum_mobius",
    "run_census",
    "shift_leading_constant",
    "squarefree_shift_count",
    "u0",
]
