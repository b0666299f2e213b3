"""Mixed-alphabet MDS expander codes.

Rationals are accepted as int, str ("3/4", "0.75") or fractions.Fraction and
returned as fractions.Fraction. Field elements are integer indices.
"""

from ._mixmds import (
    ExpanderCode,
    Graph,
    MixedMdsCode,
    MixmdsError,
    RsCode,
    Tower,
    balance,
    compare_sec2e,
    dist_bound_eq6,
    ramanujan_gamma,
    rate_bound_eq5,
    sweep2,
    sweep3,
    verify_good,
)

__all__ = [
    "ExpanderCode",
    "Graph",
    "MixedMdsCode",
    "MixmdsError",
    "RsCode",
    "Tower",
    "balance",
    "compare_sec2e",
    "dist_bound_eq6",
    "ramanujan_gamma",
    "rate_bound_eq5",
    "sweep2",
    "sweep3",
    "verify_good",
]
