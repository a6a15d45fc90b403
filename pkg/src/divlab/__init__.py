"""divlab: exact tools for counting subset s-divisors and probing anti-pencils."""

__version__ = "0.1.0"

from divlab.core import (  # noqa: E402
    GroundSet,
    OpenInterval,
    SDivisor,
    SubsetMask,
    Union,
    check_chain_bound,
    count_divisors,
    count_predicate,
    divisor_chain,
    is_anti_pencil,
    is_s_divisor,
    mms_count,
    normalize,
)

__all__ = [
    "GroundSet",
    "OpenInterval",
    "SDivisor",
    "SubsetMask",
    "Union",
    "check_chain_bound",
    "count_divisors",
    "count_predicate",
    "divisor_chain",
    "is_anti_pencil",
    "is_s_divisor",
    "mms_count",
    "normalize",
]
