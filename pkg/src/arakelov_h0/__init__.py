"""h0 of Arakelov divisors of number fields.

Typical use::

    from arakelov_h0 import field_from_spec, ArakelovDivisor, h0
"""

from .arakelov import ArakelovDivisor, degree, effectivity, principal_divisor, translate_to_degree_zero
from .errors import ArakelovError, DomainError, InvariantError, ParameterError, PrecisionError
from .field import FieldElement, NumberField, build_field, field_from_spec
from .ideals import FracIdeal, ideal_mul, unit_ideal
from .kernels import BACKEND
from .pipeline import ReductionOutcome, add_reduce, good_divisor, h0, jump, reduce_divisor, sweep
from .theta import H0Result, choose_M, tail_bound

__version__ = "0.1.0"

__all__ = [
    "ArakelovDivisor",
    "ArakelovError",
    "BACKEND",
    "DomainError",
    "FieldElement",
    "FracIdeal",
    "H0Result",
    "InvariantError",
    "NumberField",
    "ParameterError",
    "PrecisionError",
    "ReductionOutcome",
    "add_reduce",
    "build_field",
    "choose_M",
    "degree",
    "effectivity",
    "field_from_spec",
    "good_divisor",
    "h0",
    "ideal_mul",
    "jump",
    "principal_divisor",
    "reduce_divisor",
    "sweep",
    "tail_bound",
    "translate_to_degree_zero",
    "unit_ideal",
]
