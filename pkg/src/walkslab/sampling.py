"""Seeded sampling of ordinal notations.

All randomness comes from numpy's Philox4x32 counter-based generator seeded
with the experiment seed, so streams are identical on every platform.
Sampling is uniform over CNF *shapes* (number of terms, exponents,
coefficients) with bounded term count and coefficients, then rejected if
not below the universe bound.  It is not uniform over order type.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from .ordinal import ZERO, Ordinal

__all__ = ["make_rng", "sample_below", "sample_at_most", "sample_many", "sample_pairs", "sample_sorted_set"]

PRNG_NAME = "numpy.random.Philox"


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox generator for ``seed``; distinct ``stream`` values give independent streams."""
    return np.random.Generator(np.random.Philox(key=[seed & 0xFFFFFFFFFFFFFFFF, stream]))


def sample_at_most(bound: Ordinal, rng, max_terms: int = 3, max_coeff: int = 9) -> Ordinal:
    if bound.is_finite:
        return Ordinal.from_int(int(rng.integers(0, bound.to_int() + 1)))
    return sample_below(bound.successor(), rng, max_terms, max_coeff)


def sample_below(bound: Ordinal, rng, max_terms: int = 3, max_coeff: int = 9, min_value: Ordinal = ZERO) -> Ordinal:
    """Draw a notation ``x`` with ``min_value <= x < bound``."""
    if not min_value < bound:
        raise ValueError(f"empty range [{min_value}, {bound})")
    if bound.is_finite:
        return Ordinal.from_int(int(rng.integers(min_value.to_int(), bound.to_int())))
    lead = bound.leading_exponent
    while True:
        k = int(rng.integers(1, max_terms + 1))
        exps = {sample_at_most(lead, rng, max_terms, max_coeff) for _ in range(k)}
        terms = [(e, int(rng.integers(1, max_coeff + 1))) for e in sorted(exps, reverse=True)]
        x = Ordinal(terms)
        if min_value <= x < bound:
            return x


def sample_many(bound: Ordinal, n: int, rng, max_terms: int = 3, max_coeff: int = 9, min_value: Ordinal = ZERO) -> List[Ordinal]:
    return [sample_below(bound, rng, max_terms, max_coeff, min_value) for _ in range(n)]


def sample_pairs(bound: Ordinal, n: int, rng, max_terms: int = 3, max_coeff: int = 9) -> List[Tuple[Ordinal, Ordinal]]:
    """``n`` pairs ``1 <= alpha < beta < bound``."""
    one = Ordinal.from_int(1)
    out = []
    while len(out) < n:
        a = sample_below(bound, rng, max_terms, max_coeff, one)
        b = sample_below(bound, rng, max_terms, max_coeff, one)
        if a == b:
            continue
        out.append((a, b) if a < b else (b, a))
    return out


def sample_sorted_set(bound: Ordinal, n: int, rng, max_terms: int = 3, max_coeff: int = 9, tries: int = 50) -> List[Ordinal]:
    """Up to ``n`` distinct notations in ``[1, bound)``, increasing."""
    one = Ordinal.from_int(1)
    seen = set()
    for _ in range(n * tries):
        if len(seen) >= n:
            break
        seen.add(sample_below(bound, rng, max_terms, max_coeff, one))
    return sorted(seen)
