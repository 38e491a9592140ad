"""The characteristic mu and the colourings derived from it.

Weighted clopen partitions of Cantor space are finite full binary trees with
a natural weight on each leaf.  They are enumerated by a bijection with the
naturals (even ``n`` is a leaf of weight ``n // 2``; odd ``n`` is a node
whose children are the two halves of ``unpair((n - 1) // 2)``).  The ordinal
``xi`` gets ``w_xi = enumeration(unpair(code(xi))[1])`` so each weighting
recurs infinitely often, and ``z_xi`` is the Elias gamma code of
``code(xi) + 1`` followed by zeros.

Prime indices are 0-based: ``star(1) == 0`` because the least prime not
dividing 1 is 2, the 0th prime.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import isqrt
from typing import Dict, Iterable, List, Mapping, Tuple, Union

from .ordinal import ZERO, NotationError, Ordinal, code, decode
from .csequence import max_below, min_above
from .walks import lower_set, rho1, walk

__all__ = [
    "ColoringError",
    "ClopenWeighting",
    "CantorPoint",
    "pair",
    "unpair",
    "enumeration",
    "weighting_index",
    "w_of",
    "z_of",
    "eval_weighting",
    "mu",
    "mu_recursive",
    "mu_eval",
    "osc_set",
    "osc_set_scan",
    "Osc",
    "osc",
    "nth_prime",
    "star",
    "osc_star",
    "o",
    "o_star",
    "c",
    "f",
]


class ColoringError(ValueError):
    pass


def pair(x: int, y: int) -> int:
    """Cantor pairing."""
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(n: int) -> Tuple[int, int]:
    s = (isqrt(8 * n + 1) - 1) // 2
    y = n - s * (s + 1) // 2
    return s - y, y


Tree = Union[int, Tuple["Tree", "Tree"]]


class ClopenWeighting:
    """An element of C(2^omega, omega) given as a weighted prefix tree.

    A leaf is an ``int`` weight; an internal node is a ``(left, right)``
    pair, the left branch reading bit 0.
    """

    __slots__ = ("root", "_hash")

    def __init__(self, root: Tree):
        _validate(root)
        self.root = root
        self._hash = hash(root)

    def __eq__(self, other):
        if not isinstance(other, ClopenWeighting):
            return NotImplemented
        return self.root == other.root

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"ClopenWeighting({self.root!r})"

    @classmethod
    def constant(cls, weight: int) -> "ClopenWeighting":
        return cls(weight)

    @classmethod
    def from_leaves(cls, leaves: Mapping[str, int]) -> "ClopenWeighting":
        """Build from ``{prefix: weight}``; the prefixes must form a complete code."""

        def build(prefix: str) -> Tree:
            if prefix in leaves:
                return leaves[prefix]
            if len(prefix) > max(map(len, leaves)):
                raise ColoringError("prefixes do not form a complete prefix code")
            return (build(prefix + "0"), build(prefix + "1"))

        tree = build("")
        if len(list(_leaves(tree, ""))) != len(leaves):
            raise ColoringError("prefixes do not form a prefix code")
        return cls(tree)

    def leaves(self) -> List[Tuple[str, int]]:
        return list(_leaves(self.root, ""))

    @property
    def depth(self) -> int:
        return _depth(self.root)

    def __call__(self, z: "CantorPoint") -> int:
        return eval_weighting(self, z)

    def to_dict(self) -> dict:
        return {p or "": w for p, w in self.leaves()}


def _validate(tree):
    stack = [tree]
    while stack:
        t = stack.pop()
        if isinstance(t, tuple):
            if len(t) != 2:
                raise ColoringError("internal nodes must have two children")
            stack.extend(t)
        elif not isinstance(t, int) or isinstance(t, bool) or t < 0:
            raise ColoringError(f"leaf weights must be naturals, got {t!r}")


def _leaves(tree, prefix):
    if isinstance(tree, tuple):
        yield from _leaves(tree[0], prefix + "0")
        yield from _leaves(tree[1], prefix + "1")
    else:
        yield prefix, tree


def _depth(tree) -> int:
    if isinstance(tree, tuple):
        return 1 + max(_depth(tree[0]), _depth(tree[1]))
    return 0


def _enum_tree(n: int) -> Tree:
    if n % 2 == 0:
        return n // 2
    a, b = unpair((n - 1) // 2)
    return (_enum_tree(a), _enum_tree(b))


@lru_cache(maxsize=1 << 16)
def enumeration(n: int) -> ClopenWeighting:
    """The ``n``-th weighting; a bijection from naturals onto weighted trees."""
    if n < 0:
        raise ColoringError("enumeration index must be a natural")
    return ClopenWeighting(_enum_tree(n))


def _tree_index(tree) -> int:
    if isinstance(tree, tuple):
        return 2 * pair(_tree_index(tree[0]), _tree_index(tree[1])) + 1
    return 2 * tree


def weighting_index(w: ClopenWeighting) -> int:
    """Inverse of :func:`enumeration`."""
    return _tree_index(w.root)


@lru_cache(maxsize=1 << 16)
def w_of(xi: Ordinal) -> ClopenWeighting:
    return enumeration(unpair(code(xi))[1])


class CantorPoint:
    """A point of 2^omega that is eventually zero: ``prefix`` then zeros."""

    __slots__ = ("prefix",)

    def __init__(self, prefix: str):
        if set(prefix) - {"0", "1"}:
            raise ColoringError("prefix must be a binary string")
        self.prefix = prefix

    def bit(self, i: int) -> int:
        return 1 if i < len(self.prefix) and self.prefix[i] == "1" else 0

    def __eq__(self, other):
        if not isinstance(other, CantorPoint):
            return NotImplemented
        return self.prefix.rstrip("0") == other.prefix.rstrip("0")

    def __hash__(self):
        return hash(self.prefix.rstrip("0"))

    def __repr__(self):
        return f"CantorPoint({self.prefix!r})"


def _elias_gamma(n: int) -> str:
    b = bin(n)[2:]
    return "0" * (len(b) - 1) + b


@lru_cache(maxsize=1 << 16)
def z_of(xi: Ordinal) -> CantorPoint:
    return CantorPoint(_elias_gamma(code(xi) + 1))


def eval_weighting(w: ClopenWeighting, z: CantorPoint) -> int:
    """Weight of the leaf whose prefix ``z`` extends."""
    t = w.root
    i = 0
    prefix = z.prefix
    n = len(prefix)
    while isinstance(t, tuple):
        t = t[1] if i < n and prefix[i] == "1" else t[0]
        i += 1
    return t


# -- mu -----------------------------------------------------------------------


def _check_pair(alpha: Ordinal, beta: Ordinal):
    if not alpha.terms:
        raise ColoringError("alpha must be at least 1")
    if not alpha < beta:
        raise ColoringError("alpha must be below beta")


def mu(alpha: Ordinal, beta: Ordinal) -> Dict[Ordinal, ClopenWeighting]:
    """``mu(alpha, beta)`` via ``xi_i -> w_{beta_i}`` at each new running maximum."""
    _check_pair(alpha, beta)
    tr = walk(alpha, beta)
    out: Dict[Ordinal, ClopenWeighting] = {}
    prev = None
    for b, xi in zip(tr.upper, tr.lower):
        if prev is None or prev < xi:
            out[xi] = w_of(b)
        prev = xi
    return out


def mu_recursive(alpha: Ordinal, beta: Ordinal) -> Dict[Ordinal, ClopenWeighting]:
    """``mu(alpha, beta)`` by the defining recursion along the walk."""
    _check_pair(alpha, beta)

    def rec(b: Ordinal) -> Dict[Ordinal, ClopenWeighting]:
        if b == alpha:
            return {}
        m = max_below(b, alpha)
        below = rec(min_above(b, alpha))
        out = {g: v for g, v in below.items() if g > m}
        out[m] = w_of(b)
        return out

    return dict(sorted(rec(beta).items()))


def mu_eval(alpha: Ordinal, beta: Ordinal, xi: Ordinal) -> Dict[Ordinal, int]:
    """``mu(alpha, beta; xi)``: each weighting of ``mu`` evaluated at ``z_xi``."""
    z = z_of(xi)
    return {g: eval_weighting(w, z) for g, w in mu(alpha, beta).items()}


# -- oscillation ----------------------------------------------------------------


def osc_set(s: Mapping[Ordinal, int], t: Mapping[Ordinal, int], F: Iterable[Ordinal]) -> List[Ordinal]:
    """``Osc(s, t; F)``: points where ``s`` crosses from ``<= t`` to ``> t``."""
    F = sorted(set(F))
    missing = [x for x in F if x not in s or x not in t]
    if missing:
        raise ColoringError(f"s and t must be defined on all of F; missing {missing[0]}")
    return [x for prev, x in zip(F, F[1:]) if s[prev] <= t[prev] and s[x] > t[x]]


def osc_set_scan(s: Mapping[Ordinal, int], t: Mapping[Ordinal, int], F: Iterable[Ordinal]) -> List[Ordinal]:
    """Second, deliberately naive evaluation of ``Osc`` used as an oracle."""
    F = list(set(F))
    out = []
    for x in F:
        below = [y for y in F if y < x]
        if not below:
            continue
        prev = max(below)
        if s[prev] <= t[prev] and s[x] > t[x]:
            out.append(x)
    return sorted(out)


def Osc(alpha: Ordinal, beta: Ordinal) -> List[Ordinal]:
    """``Osc(e_alpha, e_beta; L(alpha, beta))``."""
    _check_pair(alpha, beta)
    L = lower_set(alpha, beta)
    s = {x: rho1(x, alpha) for x in L}
    t = {x: rho1(x, beta) for x in L}
    return osc_set(s, t, L)


def osc(alpha: Ordinal, beta: Ordinal) -> int:
    return len(Osc(alpha, beta))


# -- the * function and the colourings ------------------------------------------

_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def nth_prime(n: int) -> int:
    """The ``n``-th prime, counting from 0 (``nth_prime(0) == 2``)."""
    while len(_PRIMES) <= n:
        k = _PRIMES[-1] + 2
        while any(k % p == 0 for p in _PRIMES if p * p <= k):
            k += 2
        _PRIMES.append(k)
    return _PRIMES[n]


def star(m: int) -> int:
    """0 for 0, otherwise the index of the least prime not dividing ``m``."""
    if m < 0:
        raise ColoringError("star is defined on naturals")
    if m == 0:
        return 0
    n = 0
    while m % nth_prime(n) == 0:
        n += 1
    return n


def osc_star(alpha: Ordinal, beta: Ordinal) -> int:
    return star(osc(alpha, beta))


def o(alpha: Ordinal, beta: Ordinal) -> int:
    """Sum over nonzero values ``q`` of ``|mu(alpha, beta; alpha)^-1(q)| mod q``."""
    counts = Counter(mu_eval(alpha, beta, alpha).values())
    return sum(n % q for q, n in counts.items() if q != 0)


def o_star(alpha: Ordinal, beta: Ordinal) -> int:
    return star(o(alpha, beta))


def c(alpha: Ordinal, beta: Ordinal) -> int:
    return o(alpha, beta) % 2


def f(alpha: Ordinal, beta: Ordinal) -> Ordinal:
    """The ordinal coded by ``osc*(alpha, beta)`` if it lies below ``beta``, else 0."""
    value = osc_star(alpha, beta)
    try:
        xi = decode(value)
    except NotationError:
        return ZERO
    return xi if xi < beta else ZERO
