"""Topology and relation structures induced by the colouring ``c``.

``W_a = {a} | {b > a : c(a, b) = 1}`` generates the clopen sets of the
L-space topology.  Everything here is evaluated pointwise on finite samples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .coloring import c, o
from .ordinal import ONE, Ordinal, format_ordinal

__all__ = [
    "StructureError",
    "in_W",
    "BasicOpenSet",
    "basic_open_member",
    "TreeNodeView",
    "tree_node",
    "SquarePair",
    "SquareFamily",
    "square_discrete_family",
    "verify_square_family",
    "RelationHandle",
    "relation_R",
    "rel_R_X_member",
    "relation_R_X",
    "rel_meet",
    "rel_join",
    "rel_sum",
    "tukey_check_on_sample",
]


class StructureError(ValueError):
    pass


def in_W(alpha: Ordinal, beta: Ordinal) -> bool:
    """Whether ``beta`` lies in ``W_alpha``."""
    if not alpha.terms:
        raise StructureError("W_alpha is defined for alpha >= 1")
    if beta == alpha:
        return True
    return alpha < beta and c(alpha, beta) == 1


@dataclass(frozen=True)
class BasicOpenSet:
    """``(intersection of W_p for p in positives) minus (union of W_n for n in negatives)``.

    ``carrier`` optionally restricts to a subspace ``X``.
    """

    positives: frozenset = frozenset()
    negatives: frozenset = frozenset()
    carrier: Optional[frozenset] = None

    def __post_init__(self):
        object.__setattr__(self, "positives", frozenset(self.positives))
        object.__setattr__(self, "negatives", frozenset(self.negatives))
        if self.carrier is not None:
            object.__setattr__(self, "carrier", frozenset(self.carrier))
        if self.positives & self.negatives:
            raise StructureError("positives and negatives must be disjoint")
        if any(not p.terms for p in self.positives | self.negatives):
            raise StructureError("W_0 is not defined")

    def __contains__(self, beta: Ordinal) -> bool:
        return basic_open_member(self, beta)


def basic_open_member(U: BasicOpenSet, beta: Ordinal) -> bool:
    if U.carrier is not None and beta not in U.carrier:
        return False
    return all(in_W(p, beta) for p in sorted(U.positives)) and not any(
        in_W(n, beta) for n in sorted(U.negatives)
    )


@dataclass(frozen=True)
class TreeNodeView:
    """The node ``o(., beta)`` of the tree T(o), restricted to the probe level."""

    level: Tuple[Ordinal, ...]
    witness: Ordinal
    values: Dict[Ordinal, int]

    def signature(self) -> Tuple[Tuple[Ordinal, int], ...]:
        return tuple(self.values.items())

    def c_values(self) -> Dict[Ordinal, int]:
        return {k: v % 2 for k, v in self.values.items()}

    def to_dict(self) -> dict:
        return {
            "level": [format_ordinal(x) for x in self.level],
            "witness": format_ordinal(self.witness),
            "values": {format_ordinal(k): v for k, v in self.values.items()},
        }


def tree_node(beta: Ordinal, probes: Iterable[Ordinal]) -> TreeNodeView:
    level = tuple(sorted(set(probes)))
    values = {xi: o(xi, beta) for xi in level if xi.terms and xi < beta}
    return TreeNodeView(level, beta, values)


# -- square discrete family ------------------------------------------------------


@dataclass(frozen=True)
class SquarePair:
    index: Ordinal  # the xi of the construction
    lower: Ordinal  # beta^0_xi
    upper: Ordinal  # beta^1_xi
    anchors: Tuple[Ordinal, ...]  # points where o(., lower) and o(., upper) were matched


@dataclass
class SquareFamily:
    pairs: List[SquarePair]
    target: int
    complete: bool
    verdicts: List[dict] = field(default_factory=list)
    construction_failures: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return all(v["ok"] for v in self.verdicts)

    def to_dict(self) -> dict:
        f = format_ordinal
        return {
            "target": self.target,
            "size": len(self.pairs),
            "complete": self.complete,
            "verified": self.verified,
            "pairs": [
                {"xi": f(p.index), "beta0": f(p.lower), "beta1": f(p.upper), "anchors": [f(a) for a in p.anchors]}
                for p in self.pairs
            ],
            "verdicts": self.verdicts,
            "construction_failures": self.construction_failures,
            "notes": self.notes,
        }


def _in_U(p: SquarePair, point: Tuple[Ordinal, Ordinal]) -> bool:
    # U = (W_{beta0} \ W_{beta1}) x W_{beta1}
    x, y = point
    return in_W(p.lower, x) and not in_W(p.upper, x) and in_W(p.upper, y)


def verify_square_family(pairs: Sequence[SquarePair]) -> List[dict]:
    """Exact check that the ``xi``-th neighbourhood contains only the ``xi``-th pair.

    Uses nothing but ``c`` on the finite family.
    """
    verdicts = []
    for i, p in enumerate(pairs):
        hits = [j for j, q in enumerate(pairs) if _in_U(p, (q.lower, q.upper))]
        verdicts.append({"xi": format_ordinal(p.index), "contains": hits, "ok": hits == [i]})
    return verdicts


def square_discrete_family(
    X: Iterable[Ordinal],
    probes: Iterable[Ordinal],
    target: int,
    anchor_previous: bool = True,
) -> SquareFamily:
    """Greedily build pairs ``beta0 < beta1`` from ``X`` towards a discrete subspace of the square.

    Conditions: both members of ``X`` and above ``xi``; earlier ``beta1`` below
    ``xi``; ``o(., beta0)`` and ``o(., beta1)`` agree on the probes below ``xi``
    (and, with ``anchor_previous``, on every earlier ``beta1``).  The
    resulting family is then verified exactly.
    """
    X = sorted({x for x in X if x.terms})
    probes = sorted({p for p in probes if p.terms})
    pairs: List[SquarePair] = []
    failures: List[str] = []
    xi = ONE
    while len(pairs) < target:
        anchors = [p for p in probes if p < xi]
        if anchor_previous:
            anchors = sorted(set(anchors) | {q.upper for q in pairs})
        seen: Dict[tuple, Ordinal] = {}
        found = None
        for beta in X:
            if not xi < beta:
                continue
            sig = tuple(o(a, beta) for a in anchors)
            if sig in seen:
                found = (seen[sig], beta)
                break
            seen[sig] = beta
        if found is None:
            failures.append(f"no pair above {format_ordinal(xi)} agrees on {len(anchors)} anchors")
            break
        pairs.append(SquarePair(xi, found[0], found[1], tuple(anchors)))
        xi = found[1].successor()
    notes = ["neighbourhoods read as (W_beta0 \\ W_beta1) x W_beta1"]
    if not anchor_previous:
        notes.append("agreement enforced on probes only")
    return SquareFamily(
        pairs=pairs,
        target=target,
        complete=len(pairs) >= target,
        verdicts=verify_square_family(pairs),
        construction_failures=failures,
        notes=notes,
    )


# -- relations -------------------------------------------------------------------


@dataclass(frozen=True)
class RelationHandle:
    """A binary relation sampled on finite carriers."""

    domain: Tuple[Hashable, ...]
    range: Tuple[Hashable, ...]
    member: Callable[[Hashable, Hashable], bool]
    name: str = "R"

    def __call__(self, x, y) -> bool:
        return bool(self.member(x, y))

    def pairs(self):
        return [(x, y) for x in self.domain for y in self.range if self(x, y)]


def _R(alpha: Ordinal, beta: Ordinal) -> bool:
    return alpha == beta or (alpha < beta and c(alpha, beta) == 1)


def relation_R(sample: Iterable[Ordinal]) -> RelationHandle:
    """``a R b`` iff ``a == b`` or ``a < b`` and ``c(a, b) == 1``, on a sample."""
    s = tuple(sorted(set(sample)))
    return RelationHandle(s, s, _R, "R")


def rel_R_X_member(X, alpha: Ordinal, beta: Ordinal) -> bool:
    """Membership in ``R_X``; ``X`` is a predicate or a container."""
    in_X = X(alpha) if callable(X) else alpha in X
    return bool(in_X) and _R(alpha, beta)


def relation_R_X(X: Iterable[Ordinal], range_sample: Iterable[Ordinal]) -> RelationHandle:
    X = tuple(sorted(set(X)))
    members = frozenset(X)
    return RelationHandle(
        X, tuple(sorted(set(range_sample))), lambda a, b: rel_R_X_member(members, a, b), "R_X"
    )


def rel_meet(R: RelationHandle, S: RelationHandle) -> RelationHandle:
    """``(a, b) R^S (c, d)`` iff ``a R c`` or ``b S d``."""
    return RelationHandle(
        tuple((a, b) for a in R.domain for b in S.domain),
        tuple((x, y) for x in R.range for y in S.range),
        lambda p, q: R(p[0], q[0]) or S(p[1], q[1]),
        f"({R.name} ^ {S.name})",
    )


def rel_join(R: RelationHandle, S: RelationHandle) -> RelationHandle:
    """``(a, b) RvS (c, d)`` iff ``a R c`` and ``b S d``."""
    return RelationHandle(
        tuple((a, b) for a in R.domain for b in S.domain),
        tuple((x, y) for x in R.range for y in S.range),
        lambda p, q: R(p[0], q[0]) and S(p[1], q[1]),
        f"({R.name} v {S.name})",
    )


def rel_sum(R: RelationHandle, S: RelationHandle) -> RelationHandle:
    """Disjoint union; elements are tagged ``(0, x)`` for R and ``(1, x)`` for S."""
    parts = (R, S)
    return RelationHandle(
        tuple((0, a) for a in R.domain) + tuple((1, b) for b in S.domain),
        tuple((0, a) for a in R.range) + tuple((1, b) for b in S.range),
        lambda p, q: p[0] == q[0] and parts[p[0]](p[1], q[1]),
        f"({R.name} + {S.name})",
    )


def tukey_check_on_sample(
    fmap: Mapping,
    gmap: Mapping,
    R: RelationHandle,
    S: RelationHandle,
    pairs: Optional[Iterable[Tuple]] = None,
) -> List[Tuple]:
    """Sampled ``(x, y)`` with ``f(x) S y`` but not ``x R g(y)``.

    ``pairs`` defaults to ``R.domain x S.range``.  An empty result means the
    pair of maps is a Tukey reduction on the sample.
    """
    if pairs is None:
        pairs = [(x, y) for x in R.domain for y in S.range]
    out = []
    for x, y in pairs:
        if x not in fmap:
            raise StructureError(f"f is undefined at {x!r}")
        if y not in gmap:
            raise StructureError(f"g is undefined at {y!r}")
        if S(fmap[x], y) and not R(x, gmap[y]):
            out.append((x, y))
    return out
