"""The canonical C-sequence built from standard fundamental sequences.

For a successor ``g + 1`` the ladder is ``{0, g}``.  For a limit ``b`` it is
``{0} | {b[n] : n in omega}`` where, writing ``b = g + w^e``,

* ``b[n] = g + w^(e') * n`` when ``e = e' + 1``
* ``b[n] = g + w^(e[n])`` when ``e`` is a limit.

All queries are answered in closed form by locating the least index ``n``
with ``b[n] >= a``; nothing is enumerated.
"""

from __future__ import annotations

from functools import lru_cache
from typing import List

from .ordinal import ZERO, Ordinal

__all__ = [
    "CSequenceError",
    "fundamental",
    "least_index",
    "min_above",
    "max_below",
    "count_below",
    "members_below",
    "ladder_step",
    "CSequenceOracle",
]


class CSequenceError(ValueError):
    pass


@lru_cache(maxsize=1 << 16)
def _split(b: Ordinal):
    """Split ``b`` as ``(g, e)`` with ``b = g + w^e``."""
    e, _ = b.terms[-1]
    return b.drop_last(), e


def fundamental(b: Ordinal, n: int) -> Ordinal:
    """The ``n``-th element of the fundamental sequence of the limit ``b``."""
    if not b.is_limit:
        raise CSequenceError(f"{b} is not a limit ordinal")
    if n < 0:
        raise CSequenceError("index must be a natural number")
    g, e = _split(b)
    if e.is_successor:
        return g.append_term(e.drop_last(), n)
    return g.append_term(fundamental(e, n), 1)


def _suffix(a: Ordinal, g: Ordinal) -> Ordinal:
    # a > g and a < g + w^e with e <= last exponent of g, so the terms of g
    # are a prefix of the terms of a.
    return Ordinal._trusted(a.terms[len(g.terms):])


@lru_cache(maxsize=1 << 16)
def least_index(b: Ordinal, a: Ordinal) -> int:
    """Least ``n`` with ``b[n] >= a``, for a limit ``b`` and ``a < b``.

    Equivalently the number of ``n`` with ``b[n] < a``.
    """
    if not a.terms:
        return 0
    g, e = _split(b)
    if a <= g:
        return 0
    d = _suffix(a, g)
    d_exp, d_coef = d.terms[0]
    if e.is_successor:
        e_pred = e.drop_last()
        if d_exp < e_pred:
            return 1
        # d_exp == e_pred since d < w^e
        return d_coef if len(d.terms) == 1 else d_coef + 1
    # w^(e[n]) >= d iff e[n] > d_exp, or e[n] == d_exp and d == w^d_exp
    n = least_index(e, d_exp)
    if fundamental(e, n) == d_exp and not (d_coef == 1 and len(d.terms) == 1):
        n += 1
    return n


def _check_pair(b: Ordinal, a: Ordinal, strict: bool = True):
    if strict and not a < b:
        raise CSequenceError(f"expected {a} < {b}")
    if not strict and not a <= b:
        raise CSequenceError(f"expected {a} <= {b}")


def min_above(b: Ordinal, a: Ordinal) -> Ordinal:
    """``min(C_b \\ a)``: the least ladder element of ``b`` that is ``>= a``."""
    _check_pair(b, a)
    if not a.terms:
        return ZERO
    if b.is_successor:
        return b.drop_last()
    return fundamental(b, least_index(b, a))


def max_below(b: Ordinal, a: Ordinal) -> Ordinal:
    """``max(C_b & a)`` for ``1 <= a < b``."""
    _check_pair(b, a)
    if not a.terms:
        raise CSequenceError("C_b & 0 is empty")
    if b.is_successor:
        g = b.drop_last()
        return g if g < a else ZERO
    n = least_index(b, a)
    return fundamental(b, n - 1) if n else ZERO


def count_below(b: Ordinal, a: Ordinal) -> int:
    """``|C_b & a|`` for ``a <= b`` (``a < b`` when ``b`` is a limit)."""
    _check_pair(b, a, strict=False)
    if not a.terms:
        return 0
    if b.is_successor:
        g = b.drop_last()
        return 2 if g.terms and g < a else 1
    if a == b:
        raise CSequenceError(f"C_{b} is infinite")
    n = least_index(b, a)
    return n if fundamental(b, 0) == ZERO else n + 1


def members_below(b: Ordinal, a: Ordinal) -> List[Ordinal]:
    """``C_b & a`` listed increasingly."""
    _check_pair(b, a, strict=False)
    if not a.terms:
        return []
    if b.is_successor:
        g = b.drop_last()
        return [ZERO, g] if g.terms and g < a else [ZERO]
    if a == b:
        raise CSequenceError(f"C_{b} is infinite")
    out = [ZERO]
    for n in range(least_index(b, a)):
        x = fundamental(b, n)
        if x.terms:
            out.append(x)
    return out


def ladder_step(b: Ordinal, a: Ordinal):
    """``(min(C_b \\ a), max(C_b & a), |C_b & a|)`` in one pass, ``1 <= a < b``.

    Used by the walk loop; equivalent to calling the three queries.
    """
    if b.is_successor:
        g, _ = _split(b)
        if g < a:
            # only reachable when a == g + 1 == b, excluded by a < b
            raise CSequenceError(f"expected {a} < {b}")
        return g, ZERO, 1
    g, e = _split(b)
    n = least_index(b, a)
    hi = fundamental(b, n)
    if n == 0:
        return hi, ZERO, 1
    lo = fundamental(b, n - 1)
    zero_first = not g.terms and e.is_successor
    return hi, lo, n if zero_first else n + 1


class CSequenceOracle:
    """Object facade over the module functions.

    Stateless; kept so callers can pass a ladder system around as a value.
    """

    fundamental = staticmethod(fundamental)
    min_above = staticmethod(min_above)
    max_below = staticmethod(max_below)
    count_below = staticmethod(count_below)
    members_below = staticmethod(members_below)

    def __repr__(self):
        return "CSequenceOracle()"
