"""Graphviz DOT rendering of a single walk."""

from __future__ import annotations

from ..ordinal import Ordinal, format_ordinal
from ..walks import WalkError, walk


def _quote(s: str) -> str:
    # backslash escapes such as \n are intentional DOT line breaks
    return '"' + s.replace('"', '\\"') + '"'


def emit_walk_dot(alpha: Ordinal, beta: Ordinal) -> str:
    """One node per upper-trace ordinal, edges labelled with step maxima and weights."""
    if not alpha.terms:
        raise WalkError("alpha must be at least 1")
    if not alpha < beta:
        raise WalkError("alpha must be below beta")
    tr = walk(alpha, beta)
    f = format_ordinal
    lines = [
        "digraph walk {",
        "  rankdir=TB;",
        "  node [shape=box];",
        f"  label={_quote(f'walk from {f(beta)} down to {f(alpha)}; rho1={tr.rho1}')};",
    ]
    last = len(tr.upper) - 1
    for j, (b, m, xi, w) in enumerate(zip(tr.upper, tr.step_maxima, tr.lower, tr.weights)):
        label = f"{f(b)}\\nmax(C & alpha)={f(m)}\\n|C & alpha|={w}\\nlower={f(xi)}"
        if j == last:
            label += f"\\narrives at {f(alpha)}"
        lines.append(f"  n{j} [label={_quote(label)}];")
    for j in range(last):
        m, w = tr.step_maxima[j], tr.weights[j]
        lines.append(f"  n{j} -> n{j + 1} [label={_quote(f'max={f(m)}, weight={w}')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
