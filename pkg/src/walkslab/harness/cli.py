"""Command line interface: ``walkslab <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (bad notation, alpha not
below beta, ...) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Callable, List, Optional

from .. import __version__
from ..coloring import c, f, mu, mu_eval, o, o_star, osc, osc_star, Osc
from ..ordinal import Ordinal, format_ordinal, parse
from ..structures import BasicOpenSet, basic_open_member, in_W, tree_node
from ..walks import rho1, walk, WalkError
from .dot import emit_walk_dot
from .experiments import ExperimentConfig, run_experiment
from .report import dumps_report, histogram_csv

EXPERIMENTS = {
    "facts": "fact_suite",
    "osc": "osc_coverage",
    "pattern": "pattern_search",
    "tree": "tree_stats",
    "square": "square_discrete",
}
COLORS = {"o": o, "ostar": o_star, "c": c, "f": f}
CACHE_ENV = "WALKSLAB_CACHE_DIR"


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: error: {message}")


class ValueCache:
    """Optional on-disk memo of scalar values, enabled by ``WALKSLAB_CACHE_DIR``.

    Values are pure functions of their key, so the cache never changes output.
    """

    def __init__(self, directory: Optional[str]):
        self.path = Path(directory) / "values.json" if directory else None
        self.data = {}
        if self.path and self.path.exists():
            try:
                self.data = json.loads(self.path.read_text(encoding="utf-8"))
            except (OSError, ValueError):
                self.data = {}

    def get(self, key: str, compute: Callable[[], object]):
        if self.path is None:
            return compute()
        if key not in self.data:
            self.data[key] = compute()
            self.path.parent.mkdir(parents=True, exist_ok=True)
            tmp = self.path.with_suffix(".tmp")
            tmp.write_text(json.dumps(self.data, sort_keys=True), encoding="utf-8")
            tmp.replace(self.path)
        return self.data[key]


def _ordinal_arg(text: str) -> Ordinal:
    return parse(text)


def _ordinal_list(text: str) -> List[Ordinal]:
    return [parse(t) for t in text.split(",") if t.strip()]


def _int_list(text: str) -> List[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="walkslab", description="Minimal walks on ordinals below epsilon_0.")
    p.add_argument("--version", action="version", version=f"walkslab {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pair_cmd(name, help_, formats=("json", "text")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--alpha", required=True)
        sp.add_argument("--beta", required=True)
        sp.add_argument("--format", choices=formats, default=formats[-1] if "text" in formats else formats[0])
        sp.add_argument("--out")
        return sp

    pair_cmd("trace", "walk record for alpha <= beta", ("json", "text", "dot"))
    pair_cmd("rho1", "maximal weight rho_1(alpha, beta)")
    pair_cmd("osc", "oscillation count on the lower trace")
    mu_p = pair_cmd("mu", "the characteristic mu(alpha, beta)")
    mu_p.add_argument("--at", help="evaluate at z_xi for this ordinal (default: alpha)")

    col = pair_cmd("color", "one of the colourings o, o*, c, f")
    col.add_argument("which", choices=sorted(COLORS))

    nb = sub.add_parser("neighborhood", help="membership of beta in a basic clopen set")
    nb.add_argument("--alpha", action="append", default=[], help="required W_alpha membership (repeatable)")
    nb.add_argument("--exclude", action="append", default=[], help="forbidden W_alpha membership (repeatable)")
    nb.add_argument("--beta", required=True)
    nb.add_argument("--format", choices=("json", "text"), default="text")
    nb.add_argument("--out")

    tn = sub.add_parser("tree-node", help="o(., beta) restricted to a probe set")
    tn.add_argument("--beta", required=True)
    tn.add_argument("--probes", required=True, help="comma-separated notations")
    tn.add_argument("--format", choices=("json", "text"), default="json")
    tn.add_argument("--out")

    ex = sub.add_parser("experiment", help="run a seeded experiment and emit a JSON report")
    ex.add_argument("kind", choices=sorted(EXPERIMENTS))
    ex.add_argument("--universe")
    ex.add_argument("--size", type=int)
    ex.add_argument("--seed", type=int, default=0)
    ex.add_argument("--max-terms", type=int, default=3)
    ex.add_argument("--max-coeff", type=int, default=9)
    ex.add_argument("--probes", type=int, default=50)
    ex.add_argument("--k", type=int, default=1)
    ex.add_argument("--l", type=int, default=1)
    ex.add_argument("--chi", type=_int_list)
    ex.add_argument("--pi", type=_int_list)
    ex.add_argument("--target", type=int, default=10)
    ex.add_argument("--workers", type=int, default=1)
    ex.add_argument("--timing", action="store_true", help="record wall-clock time (breaks byte-identity)")
    ex.add_argument("--format", choices=("json", "csv", "text"), default="json")
    ex.add_argument("--out")

    dp = sub.add_parser("dot", help="DOT graph of the walk from beta to alpha")
    dp.add_argument("--alpha", required=True)
    dp.add_argument("--beta", required=True)
    dp.add_argument("--format", choices=("dot",), default="dot")
    dp.add_argument("--out")
    return p


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _pair(args):
    return parse(args.alpha), parse(args.beta)


def _key(name, a, b) -> str:
    return f"{name}:{format_ordinal(a)}:{format_ordinal(b)}"


def _run(args, cache: ValueCache) -> str:
    cmd = args.command
    if cmd in ("trace", "dot"):
        a, b = _pair(args)
        if a > b:
            raise WalkError("alpha must be below beta")
        if cmd == "dot" or args.format == "dot":
            return emit_walk_dot(a, b)
        tr = walk(a, b)
        if args.format == "json":
            return _dump(tr.to_dict())
        d = tr.to_dict()
        return "".join(f"{k}: {v}\n" for k, v in d.items())
    if cmd == "rho1":
        a, b = _pair(args)
        if a > b:
            raise WalkError("alpha must be below beta")
        value = cache.get(_key("rho1", a, b), lambda: rho1(a, b))
        return _dump({"alpha": args.alpha, "beta": args.beta, "rho1": value}) if args.format == "json" else f"{value}\n"
    if cmd == "osc":
        a, b = _pair(args)
        if args.format == "json":
            pts = Osc(a, b)
            return _dump({
                "alpha": format_ordinal(a),
                "beta": format_ordinal(b),
                "Osc": [format_ordinal(x) for x in pts],
                "osc": len(pts),
                "osc_star": osc_star(a, b),
            })
        return f"{cache.get(_key('osc', a, b), lambda: osc(a, b))}\n"
    if cmd == "mu":
        a, b = _pair(args)
        at = parse(args.at) if args.at else a
        assignment = mu(a, b)
        values = mu_eval(a, b, at)
        if args.format == "json":
            return _dump({
                "alpha": format_ordinal(a),
                "beta": format_ordinal(b),
                "evaluated_at": format_ordinal(at),
                "mu": {format_ordinal(g): w.to_dict() for g, w in assignment.items()},
                "values": {format_ordinal(g): v for g, v in values.items()},
            })
        return "".join(f"{format_ordinal(g)}: {v}\n" for g, v in values.items())
    if cmd == "color":
        a, b = _pair(args)
        fn = COLORS[args.which]
        if args.which == "f":
            value = format_ordinal(fn(a, b))
        else:
            value = cache.get(_key(args.which, a, b), lambda: fn(a, b))
        return _dump({"alpha": args.alpha, "beta": args.beta, args.which: value}) if args.format == "json" else f"{value}\n"
    if cmd == "neighborhood":
        b = parse(args.beta)
        U = BasicOpenSet(frozenset(map(parse, args.alpha)), frozenset(map(parse, args.exclude)))
        member = basic_open_member(U, b)
        if args.format == "json":
            return _dump({
                "beta": format_ordinal(b),
                "positives": {x: in_W(parse(x), b) for x in args.alpha},
                "negatives": {x: in_W(parse(x), b) for x in args.exclude},
                "member": member,
            })
        return f"{str(member).lower()}\n"
    if cmd == "tree-node":
        node = tree_node(parse(args.beta), _ordinal_list(args.probes))
        if args.format == "json":
            return _dump(node.to_dict())
        return "".join(f"{format_ordinal(k)}: {v}\n" for k, v in node.values.items())
    if cmd == "experiment":
        cfg = ExperimentConfig(
            kind=EXPERIMENTS[args.kind],
            universe=args.universe,
            size=args.size,
            seed=args.seed,
            max_terms=args.max_terms,
            max_coeff=args.max_coeff,
            probes=args.probes,
            k=args.k,
            l=args.l,
            chi=args.chi,
            pi=args.pi,
            target=args.target,
            workers=args.workers,
            record_timing=args.timing,
        )
        report = run_experiment(cfg)
        if args.format == "csv":
            return histogram_csv(report)
        if args.format == "text":
            lines = [f"{v['status'].upper():4}  {v['check']}  ({v['checked']} checked, {v['violations']} violations)" for v in report["verdicts"]]
            return "\n".join(lines) + "\n"
        return dumps_report(report)
    raise _Usage(f"unknown command {cmd!r}")


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    cache = ValueCache(os.environ.get(CACHE_ENV))
    try:
        out = _run(args, cache)
    except _Usage as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
