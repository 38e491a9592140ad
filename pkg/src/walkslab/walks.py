"""Minimal walks: upper trace, lower trace and the maximal weight rho_1.

The walk from ``beta`` down to ``alpha`` visits
``beta = b_0 > b_1 > ... > b_{l-1}`` with ``b_{j+1} = min(C_{b_j} \\ alpha)``.
:func:`walk` records the whole walk once (memoised); the trace functions read
it off.  The ``*_recursive`` functions follow the defining recursions
literally and exist as independent cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .csequence import count_below, ladder_step, max_below, min_above
from .ordinal import Ordinal, format_ordinal

__all__ = [
    "WalkError",
    "WalkTrace",
    "walk",
    "upper_trace",
    "upper_trace_recursive",
    "lower_trace",
    "lower_set",
    "lower_trace_recursive",
    "running_maxima",
    "rho1",
    "rho1_recursive",
    "e_values",
    "delta_probe",
    "probe_set",
]


class WalkError(ValueError):
    pass


@dataclass(frozen=True)
class WalkTrace:
    """Full record of the walk from ``beta`` down to ``alpha``.

    ``step_maxima[j]`` is ``max(C_{upper[j]} & alpha)`` and ``weights[j]`` is
    ``|C_{upper[j]} & alpha|``.  For ``alpha == 0`` the maxima are undefined
    and ``step_maxima`` is empty.
    """

    alpha: Ordinal
    beta: Ordinal
    upper: Tuple[Ordinal, ...]
    step_maxima: Tuple[Ordinal, ...]
    lower: Tuple[Ordinal, ...]
    weights: Tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.upper)

    @property
    def lower_set(self) -> Tuple[Ordinal, ...]:
        return tuple(sorted(set(self.lower)))

    @property
    def rho1(self) -> int:
        return max(self.weights, default=0)

    def to_dict(self) -> dict:
        f = format_ordinal
        return {
            "alpha": f(self.alpha),
            "beta": f(self.beta),
            "upper": [f(x) for x in self.upper],
            "step_maxima": [f(x) for x in self.step_maxima],
            "lower": [f(x) for x in self.lower],
            "lower_set": [f(x) for x in self.lower_set],
            "weights": list(self.weights),
            "rho1": self.rho1,
        }


def running_maxima(values: Sequence[Ordinal]) -> Tuple[Ordinal, ...]:
    out = []
    current = None
    for v in values:
        if current is None or v > current:
            current = v
        out.append(current)
    return tuple(out)


@lru_cache(maxsize=1 << 18)
def walk(alpha: Ordinal, beta: Ordinal) -> WalkTrace:
    if alpha > beta:
        raise WalkError("alpha must be below beta")
    upper: List[Ordinal] = []
    maxima: List[Ordinal] = []
    weights: List[int] = []
    cur = beta
    if not alpha.terms:
        # 0 is in every ladder, so the walk to 0 is a single step of weight 0
        if beta.terms:
            upper.append(beta)
            weights.append(0)
        cur = alpha
    while cur != alpha:
        upper.append(cur)
        cur, m, w = ladder_step(cur, alpha)
        maxima.append(m)
        weights.append(w)
    return WalkTrace(
        alpha=alpha,
        beta=beta,
        upper=tuple(upper),
        step_maxima=tuple(maxima),
        lower=running_maxima(maxima),
        weights=tuple(weights),
    )


def upper_trace(alpha: Ordinal, beta: Ordinal) -> List[Ordinal]:
    """``Tr(alpha, beta)`` as a decreasing list starting at ``beta``."""
    return list(walk(alpha, beta).upper)


def upper_trace_recursive(alpha: Ordinal, beta: Ordinal) -> List[Ordinal]:
    """``Tr(alpha, beta) = Tr(alpha, min(C_beta \\ alpha)) | {beta}``, decreasing."""
    if alpha > beta:
        raise WalkError("alpha must be below beta")
    if alpha == beta:
        return []
    return [beta] + upper_trace_recursive(alpha, min_above(beta, alpha))


def _check_lower(alpha: Ordinal, beta: Ordinal):
    if not alpha.terms:
        raise WalkError("the lower trace needs alpha >= 1")
    if alpha > beta:
        raise WalkError("alpha must be below beta")


def lower_trace(alpha: Ordinal, beta: Ordinal) -> List[Ordinal]:
    """The listing ``xi_0 <= ... <= xi_{l-1}`` of running maxima."""
    _check_lower(alpha, beta)
    return list(walk(alpha, beta).lower)


def lower_set(alpha: Ordinal, beta: Ordinal) -> Tuple[Ordinal, ...]:
    """``L(alpha, beta)`` as an increasing tuple of distinct ordinals."""
    _check_lower(alpha, beta)
    return walk(alpha, beta).lower_set


def lower_trace_recursive(alpha: Ordinal, beta: Ordinal) -> Tuple[Ordinal, ...]:
    """``L(alpha, beta)`` by the defining recursion.

    ``L(a, b) = (L(a, min(C_b \\ a)) | {m}) \\ m`` with ``m = max(C_b & a)``,
    where ``\\ m`` removes every element below the ordinal ``m``.
    """
    _check_lower(alpha, beta)
    if alpha == beta:
        return ()
    m = max_below(beta, alpha)
    rest = lower_trace_recursive(alpha, min_above(beta, alpha))
    return tuple(sorted({x for x in rest if not x < m} | {m}))


def rho1(alpha: Ordinal, beta: Ordinal) -> int:
    """Maximal weight ``rho_1(alpha, beta)``, i.e. ``e_beta(alpha)``."""
    return walk(alpha, beta).rho1


def rho1_recursive(alpha: Ordinal, beta: Ordinal) -> int:
    if alpha > beta:
        raise WalkError("alpha must be below beta")
    if alpha == beta:
        return 0
    return max(count_below(beta, alpha), rho1_recursive(alpha, min_above(beta, alpha)))


def probe_set(probes: Iterable[Ordinal], bound: Optional[Ordinal] = None) -> Tuple[Ordinal, ...]:
    """Normalise probes to a strictly increasing tuple, optionally bounded."""
    out = tuple(sorted(set(probes)))
    if bound is not None and out and not out[-1] < bound:
        raise WalkError(f"probe {out[-1]} is not below {bound}")
    return out


def e_values(beta: Ordinal, probes: Iterable[Ordinal]) -> Dict[Ordinal, int]:
    """Pointwise ``e_beta`` on the probes."""
    return {xi: rho1(xi, beta) for xi in probe_set(probes, beta)}


def delta_probe(alpha: Ordinal, beta: Ordinal, probes: Iterable[Ordinal]) -> Optional[Ordinal]:
    """Least probe where ``e_alpha`` and ``e_beta`` disagree, or ``None``.

    Only a probe-relative stand-in for the true least disagreement point.
    """
    bound = min(alpha, beta)
    for xi in probe_set(probes, bound):
        if rho1(xi, alpha) != rho1(xi, beta):
            return xi
    return None
