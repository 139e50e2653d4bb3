"""Command-line front end.

Reports go to stdout as JSON (or plain lines for constructions and
enumerations); human-readable summaries go to stderr.  Exit status is 0 on
success, 1 when a verification fails and 2 for usage or parse errors.
"""
from __future__ import annotations

import argparse
import inspect
import json
import os
import sys

from . import designs as D
from . import enumeration as E
from . import spectral as S
from .graphs import (FAMILY_NAMES, Graph, Graph6Error, GraphError, family,
                     graph6_decode, graph6_encode, graph_isomorphic)
from .suites import SUITES


class UsageError(Exception):
    pass


def _read_arg(text: str) -> str:
    if os.path.isfile(text):
        with open(text) as fh:
            return fh.read()
    return text


def parse_graph(text: str) -> Graph:
    """A graph6 string, a JSON graph, or a file holding either."""
    raw = _read_arg(text).strip()
    if raw.startswith(("{", "[")):
        try:
            return Graph.from_json(raw)
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"bad JSON graph: {exc}")
    try:
        return graph6_decode(raw)
    except Graph6Error as exc:
        raise UsageError(f"graph6 parse error: {exc}")


def parse_design(text: str) -> D.Design:
    raw = _read_arg(text).strip()
    try:
        if raw.startswith("{"):
            return D.Design.from_json(raw)
        return D.Design.from_text(raw)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad design: {exc}")


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


# --- subcommands -----------------------------------------------------------

def cmd_family(args) -> int:
    try:
        g = family(args.name, args.k)
    except GraphError as exc:
        raise UsageError(str(exc))
    print(graph6_encode(g) if args.format == "graph6" else g.to_json())
    print(S.char_poly_of(g))
    return 0


NAMED_DESIGNS = {
    "fano": D.fano,
    "complement-fano": lambda: D.complement_design(D.fano()),
    "pseudo-731": S.pseudo_731,
    "pseudo-742": S.pseudo_742,
    **{n: (lambda n=n: D.named_pseudo(n)) for n in ("D1", "D2", "D3", "D4")},
}


def cmd_design(args) -> int:
    if args.action == "show":
        if args.target not in NAMED_DESIGNS:
            raise UsageError(f"unknown design {args.target!r}; choose from {', '.join(NAMED_DESIGNS)}")
        d = NAMED_DESIGNS[args.target]()
        print(d.to_json() if args.format == "json" else d.to_text(), end="" if args.format == "text" else "\n")
        return 0
    d = parse_design(args.target)
    if args.action == "check":
        out: dict = {"v": d.v, "b": d.b}
        try:
            if args.bibd:
                out["is_bibd"] = D.is_bibd(d, D.BibdParams(*args.bibd))
            if args.pseudo:
                p = D.PseudoParams(*args.pseudo)
                out["is_pseudo"] = D.is_pseudo(d, p)
                out["primary"] = D.is_primary(p)
                out["conditions"] = D.marrero_conditions(p) if out["primary"] else []
        except D.DesignError as exc:
            raise UsageError(str(exc))
        _emit(out)
        return 0
    try:
        sp = D.split_primary(d)
    except D.DesignError as exc:
        raise UsageError(str(exc))
    _emit({"f": sp.f, "y": sp.y, "s1": sp.s1, "s2": sp.s2,
           "M": list(sp.M_params), "N": list(sp.N_params), "columns": list(sp.columns)})
    return 0


def cmd_spectrum(args) -> int:
    g = parse_graph(args.graph)
    p = S.char_poly_of(g)
    print(p)
    pat = S.recognize(p)
    if pat is not None:
        print(pat)
    return 0


def cmd_cospectral(args) -> int:
    a, b = parse_graph(args.a), parse_graph(args.b)
    _emit({"cospectral": S.char_poly_of(a) == S.char_poly_of(b)})
    return 0


def cmd_iso(args) -> int:
    a, b = parse_graph(args.a), parse_graph(args.b)
    _emit({"isomorphic": graph_isomorphic(a, b)})
    return 0


def cmd_enumerate(args) -> int:
    try:
        if args.kind == "pseudo":
            if None in (args.v, args.k, args.lam):
                raise UsageError("enumerate pseudo needs --v, --k and --lambda")
            for d in E.enumerate_pseudo(D.PseudoParams(args.v, args.k, args.lam)):
                print(d.to_json())
        else:
            if None in (args.n, args.m):
                raise UsageError("enumerate bipartite needs --n and --m")
            for g in E.enumerate_bipartite_graphs(args.n, args.m):
                print(graph6_encode(g))
    except (E.SizeGuardError, D.DesignError) as exc:
        raise UsageError(str(exc))
    return 0


def cmd_verify(args) -> int:
    fn = SUITES[args.suite]
    accepted = inspect.signature(fn).parameters
    kwargs = {"seed": args.seed} if "seed" in accepted else {}
    for opt in ("k", "vmax", "nmax"):
        if getattr(args, opt) is not None:
            if opt not in accepted:
                raise UsageError(f"suite {args.suite} does not take --{opt}")
            kwargs[opt] = getattr(args, opt)
    try:
        rep = fn(**kwargs)
    except (ValueError, GraphError) as exc:
        raise UsageError(str(exc))
    _emit(rep.to_dict())
    passed = sum(a.ok for a in rep.assertions)
    print(f"{args.suite}: {passed}/{len(rep.assertions)} assertions passed", file=sys.stderr)
    bad = rep.first_failure()
    if bad is not None:
        print(f"first failure: {bad.name}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="specdesign",
                                     description="Exact spectra, pseudo designs and their graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", help="build a named graph")
    p.add_argument("name", choices=FAMILY_NAMES)
    p.add_argument("--k", type=int)
    p.add_argument("--format", choices=("graph6", "json"), default="graph6")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("design", help="show, check or split a design")
    p.add_argument("action", choices=("show", "check", "split"))
    p.add_argument("target", help="design name (show) or design file/text")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--bibd", type=int, nargs=5, metavar=("B", "V", "R", "K", "LAMBDA"))
    p.add_argument("--pseudo", type=int, nargs=3, metavar=("V", "K", "LAMBDA"))
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("spectrum", help="characteristic polynomial of a graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_spectrum)

    for name, func in (("cospectral", cmd_cospectral), ("iso", cmd_iso)):
        p = sub.add_parser(name, help=f"{name} test for two graphs")
        p.add_argument("a")
        p.add_argument("b")
        p.set_defaults(func=func)

    p = sub.add_parser("enumerate", help="isomorph-free enumeration")
    p.add_argument("kind", choices=("pseudo", "bipartite"))
    p.add_argument("--v", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--k", type=int)
    p.add_argument("--vmax", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the randomized relabelling checks")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
