"""Minimal walks on countable ordinals below epsilon_0.

Ordinal notations, the canonical C-sequence, walk traces, rho_1, the
oscillation and mu-based colourings, and the L-space structures built
from them.
"""

__version__ = "0.1.0"

from .ordinal import ONE, OMEGA, ZERO, NotationError, Ordinal, classify, code, compare, decode, format_ordinal, parse
from .csequence import count_below, fundamental, max_below, members_below, min_above
from .walks import WalkTrace, delta_probe, e_values, lower_set, lower_trace, rho1, upper_trace, walk
from .coloring import (
    CantorPoint,
    ClopenWeighting,
    Osc,
    c,
    enumeration,
    eval_weighting,
    f,
    mu,
    mu_eval,
    o,
    o_star,
    osc,
    osc_set,
    osc_star,
    star,
    w_of,
    z_of,
)
from .structures import BasicOpenSet, basic_open_member, in_W, square_discrete_family, tree_node


def clear_caches() -> None:
    """Drop every memo table (useful before timing runs)."""
    from . import coloring, csequence, ordinal, walks

    for fn in (walks.walk, csequence._split, csequence.least_index, coloring.enumeration, coloring.w_of, coloring.z_of):
        fn.cache_clear()
    ordinal._code_cache.clear()
