"""Command-line interface.

Exit codes: 0 answered / verified, 1 mathematically refuted (or a
predicate is false), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import kernel_certificates as cert
from .element_catalog import WAJNRYB_SCRIPT, dump, e6_graph, resolve_labeling
from .coxeter_core import build_root_system, named_graph, parse_graph_text
from .errors import GarsideKitError
from .garside_engine import artin_group
from .homology_rep import SymplecticSpace, find_curve_classes, format_matrix, transvection
from .report import format_report
from .word_language import Environment, expand, load_script, names_in, parse

CATALOG_NAMES = {"b", "w", "kappa", "delta"}


class UsageError(Exception):
    pass


def _n_range(text: str) -> range:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    if lo < 1 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return range(lo, hi + 1)


def _gens(text: str) -> list[int]:
    out = []
    for tok in text.replace(",", " ").split():
        tok = tok.strip()
        if tok.startswith("a"):
            tok = tok[1:]
        if not tok.isdigit():
            raise argparse.ArgumentTypeError(f"bad generator {tok!r}")
        out.append(int(tok))
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    sel = common.add_mutually_exclusive_group()
    sel.add_argument("--type", dest="type_name", metavar="NAME", help="A1..A9, D4..D9, E6, E7, E8")
    sel.add_argument("--graph", metavar="FILE", help="graph file: 'vertices: n' then 'i j' edges")
    common.add_argument("--script", metavar="FILE", help="file of 'let name = expr;' bindings")
    common.add_argument("--expr", action="append", default=[], metavar="STRING", help="expression (repeatable)")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="garsidekit", description="Garside normal forms in spherical Artin groups")
    sub = p.add_subparsers(dest="command", required=True)

    for name, nargs, hlp in (
        ("nf", "*", "left normal form"),
        ("eq", "*", "decide equality of two elements"),
        ("deg", "*", "exponent sum"),
        ("absorbs", "*", "does the first element absorb the second"),
    ):
        sp = sub.add_parser(name, parents=[common], help=hlp)
        sp.add_argument("exprs", nargs=nargs, metavar="EXPR")

    sp = sub.add_parser("parabolic", parents=[common], help="membership in a standard parabolic subgroup")
    sp.add_argument("exprs", nargs="*", metavar="EXPR")
    sp.add_argument("--gens", type=_gens, required=True, metavar="LIST", help="e.g. 2,5 or a2,a5")

    sub.add_parser("roots", parents=[common], help="positive roots of the graph")

    sp = sub.add_parser("catalog", parents=[common], help="named elements")
    sp.add_argument("action", choices=("dump",))

    sp = sub.add_parser("rep", parents=[common], help="homology representation")
    sp.add_argument("action", choices=("show",))
    sp.add_argument("--genus", type=int, default=3)

    sp = sub.add_parser("verify", parents=[common], help="certificate pipelines")
    sp.add_argument("claim", choices=("wajnryb", "normalizer", "torsion", "free", "all"))
    sp.add_argument("--profile", choices=("quick", "full"), default="quick")
    sp.add_argument("--max-power", type=int, default=None, metavar="K")
    sp.add_argument("--n-range", type=_n_range, default=None, metavar="A..B")
    sp.add_argument("--max-word-len", type=int, default=None, metavar="L")
    sp.add_argument("--timings", action="store_true", help="include wall-clock durations")
    return p


def _select_graph(args, needs_catalog: bool):
    if args.graph:
        return parse_graph_text(Path(args.graph).read_text())
    if args.type_name:
        if args.type_name.upper() == "E6":
            return e6_graph()
        return named_graph(args.type_name)
    if needs_catalog:
        return e6_graph()
    raise UsageError("a graph is required: pass --type NAME or --graph FILE")


def _environment(args, graph) -> Environment:
    if graph == e6_graph():
        env = load_script(WAJNRYB_SCRIPT)
    else:
        G = artin_group(graph)
        env = Environment({"delta": parse(G.delta_word().to_text())})
    if args.script:
        env = env.merged(load_script(Path(args.script).read_text(encoding="utf-8")))
    return env


def _exprs(args) -> list[str]:
    return list(getattr(args, "exprs", [])) + list(args.expr)


def _mentions_catalog(args, exprs) -> bool:
    script_names = set()
    if args.script:
        script_names = set(load_script(Path(args.script).read_text(encoding="utf-8")))
    for e in exprs:
        if (set(names_in(parse(e))) - script_names) & CATALOG_NAMES:
            return True
    return False


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args)
    except (UsageError, GarsideKitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _run(args) -> int:
    cmd = args.command
    if cmd == "verify":
        return _verify(args)
    if cmd == "catalog":
        _select_graph(args, needs_catalog=True)
        res = resolve_labeling()
        text = dump()
        _emit(args, {"labeling": res.labeling.name, "script": text}, text.rstrip("\n"))
        return 0
    if cmd == "roots":
        graph = _select_graph(args, needs_catalog=False)
        R = build_root_system(graph)
        lines = [f"type: {graph.type_name}", f"positive roots: {len(R.positive_roots)}"]
        lines += [" ".join(map(str, r)) for r in R.positive_roots]
        _emit(args, {"type": graph.type_name, "positive_roots": [list(r) for r in R.positive_roots]}, "\n".join(lines))
        return 0
    if cmd == "rep":
        graph = _select_graph(args, needs_catalog=False)
        space = SymplecticSpace(args.genus)
        classes = find_curve_classes(space, graph)
        mats = [transvection(space, c) for c in classes]
        lines = [f"type: {graph.type_name}", f"genus: {args.genus}"]
        for i, c in enumerate(classes, 1):
            lines.append(f"a{i}: " + " ".join(map(str, c.vector)))
        for i, m in enumerate(mats, 1):
            lines.append(f"T{i}:")
            lines.append(format_matrix(m))
        _emit(args, {"type": graph.type_name, "genus": args.genus,
                     "curve_classes": [list(c.vector) for c in classes],
                     "transvections": [[list(r) for r in m] for m in mats]}, "\n".join(lines))
        return 0

    exprs = _exprs(args)
    want = {"nf": 1, "deg": 1, "parabolic": 1, "eq": 2, "absorbs": 2}[cmd]
    if len(exprs) != want:
        raise UsageError(f"'{cmd}' takes {want} expression(s), got {len(exprs)}")
    graph = _select_graph(args, needs_catalog=_mentions_catalog(args, exprs))
    env = _environment(args, graph)
    G = artin_group(graph)
    words = [expand(e, env) for e in exprs]
    for wd in words:
        for i, _ in wd:
            if not 1 <= i <= graph.rank:
                raise UsageError(f"generator a{i} does not exist in {graph.type_name}")
    if cmd == "nf":
        x = G.normalize(words[0])
        _emit(args, {"normal_form": x.to_text(), "inf": x.inf, "sup": x.sup}, x.to_text())
        return 0
    if cmd == "deg":
        d = words[0].degree()
        _emit(args, {"degree": d}, str(d))
        return 0
    if cmd == "eq":
        ans = G.equal(*words)
    elif cmd == "absorbs":
        ans = G.absorbs(*words)
    else:
        ans = G.in_standard_parabolic(words[0], args.gens)
    _emit(args, {"result": ans}, "true" if ans else "false")
    return 0 if ans else 1


def _verify(args) -> int:
    _select_graph(args, needs_catalog=True)
    if args.graph or (args.type_name and args.type_name.upper() != "E6"):
        raise UsageError("verification pipelines live in A(E6); use --type E6 or omit the flag")
    prof = cert.PROFILES[args.profile]
    max_power = args.max_power or prof["torsion"]
    n_range = args.n_range or prof["n_range"]
    max_len = args.max_word_len or prof["max_word_length"]
    if max_power < 1 or max_len < 1:
        raise UsageError("--max-power and --max-word-len must be >= 1")
    claim = args.claim
    if claim == "all":
        reports = [cert.verify_wajnryb(), cert.verify_normalizer(), cert.verify_torsion(max_power),
                   cert.freeness_certificate(n_range, max_len)]
    elif claim == "wajnryb":
        reports = [cert.verify_wajnryb()]
    elif claim == "normalizer":
        reports = [cert.verify_normalizer()]
    elif claim == "torsion":
        reports = [cert.verify_torsion(max_power)]
    else:
        reports = [cert.freeness_certificate(n_range, max_len)]
    sys.stdout.write(format_report(reports, args.format, include_timing=args.timings).decode())
    return 0 if cert.aggregate_status(reports) == cert.VERIFIED else 1


def main(argv=None):
    sys.exit(dispatch(argv))


if __name__ == "__main__":
    main()
