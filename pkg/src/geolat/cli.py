"""Command-line front end.

Exit codes: 0 when every checked claim holds, 1 when a claim is violated,
2 on input or resource errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import asdict
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from . import coxeter
from .chain_graph import (
    build_facet_ridge_graph,
    build_glex,
    diameter,
    directed_distances_to_sink,
    distances_from,
    max_directed_eccentricity,
    shortcut_pairs,
    check_reversal_paths,
)
from .config import Caps
from .descent_order import build_descent_order, check_hasse_equals_glex
from .descent_path import atom_order_for_chain, connect, reversal_chain, straighten
from .dot import descent_order_dot, facet_ridge_dot, glex_dot, lattice_dot
from .errors import CapExceededError, ClaimViolation, DisconnectedGraphError, InputError
from .labeling import (
    AtomOrder,
    ascending_chain,
    format_chain,
    labeling,
    parse_chain,
    verify_el,
)
from .lattice import FlatsLattice, build_lattice, verify_geometric
from .matroid import atoms_of
from .specfile import CORPUS, load_spec, read_spec
from .sweep import (
    FINDING_COLUMNS,
    SharpnessRow,
    orders_for,
    random_instances,
    run_sweep,
    to_csv,
)

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2

log = logging.getLogger("geolat")


class Violation(Exception):
    """Raised by a subcommand after its report is printed, to set exit code 1."""


def _caps(args: argparse.Namespace) -> Caps:
    caps = Caps(atoms=args.cap_atoms, flats=args.cap_flats, chains=args.cap_chains)
    if min(caps.atoms, caps.flats, caps.chains) < 1:
        raise InputError("caps must be positive")
    return caps


def _lattice(args: argparse.Namespace) -> FlatsLattice:
    caps = _caps(args)
    return build_lattice(load_spec(args.spec, cap=caps.atoms), caps)


def _orders(args: argparse.Namespace, n: int) -> list[AtomOrder]:
    if args.all_orders:
        mode = "all"
    elif args.random_orders:
        mode = f"random:{args.random_orders}"
    elif args.order:
        mode = args.order
    else:
        mode = "natural"
    return orders_for(n, args.seed, Path(args.spec).stem if getattr(args, "spec", None) else "", mode)


def _single_order(args: argparse.Namespace, n: int) -> AtomOrder:
    return AtomOrder.parse(args.order) if args.order else AtomOrder.natural(n)


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")


def _chain_info(L: FlatsLattice, lab, chain) -> dict[str, Any]:
    return {"chain": format_chain(L, chain), "labels": list(lab.sequence(chain))}


# -- subcommands; each returns a JSON-able report dict ---------------------------------


def cmd_lattice(args: argparse.Namespace) -> dict[str, Any]:
    L = _lattice(args)
    rep = verify_geometric(L)
    _write(args.dot, lattice_dot(L))
    return {
        "spec": args.spec,
        "rank": L.r,
        "flat_count": len(L),
        "flats": [{"flat": ",".join(map(str, atoms_of(f))), "rank": L.rank_of[i]} for i, f in enumerate(L.flats)],
        "covers": sum(len(c) for c in L.covers_up),
        "geometric": rep.results,
    }


def cmd_verify(args: argparse.Namespace) -> dict[str, Any]:
    L = _lattice(args)
    geo = verify_geometric(L)
    orders = _orders(args, L.n)
    failures = []
    checked = 0
    for o in orders:
        rep = verify_el(L, o)
        checked += rep.intervals_checked
        for v in rep.violations:
            failures.append({
                "order": str(o),
                "interval": f"[{L.label(v.lo)}, {L.label(v.hi)}]",
                "reason": v.reason,
                "witness": [format_chain(L, c) for c in v.witness],
            })
    report = {
        "spec": args.spec,
        "geometric": geo.results,
        "geometric_witnesses": geo.witnesses,
        "orders_checked": len(orders),
        "intervals_checked": checked,
        "el_violations": failures,
        "verdict": "pass" if geo.ok and not failures else "VIOLATION",
    }
    if report["verdict"] != "pass":
        raise Violation(report)
    return report


def cmd_diameter(args: argparse.Namespace) -> dict[str, Any]:
    L = _lattice(args)
    G = build_facet_ridge_graph(L, _caps(args))
    _write(args.dot, facet_ridge_dot(G))
    d, (a, b) = diameter(G)
    bound = math.comb(L.r, 2)
    report: dict[str, Any] = {
        "spec": args.spec,
        "rank": L.r,
        "chains": len(G),
        "diameter": d,
        "binom_r_2": bound,
        "witness": [format_chain(L, G.chains[a]), format_chain(L, G.chains[b])],
        "verdict": "bound holds" if d <= bound else "VIOLATION",
        "tight": d == bound,
    }
    if args.pairs:
        report["pair_distances"] = [
            {"from": format_chain(L, G.chains[s]), "to": format_chain(L, G.chains[t]), "distance": dist[t]}
            for s in range(len(G))
            for dist in [distances_from(G, s)]
            for t in range(s + 1, len(G))
        ]
    if d > bound:
        raise Violation(report)
    return report


def cmd_glex(args: argparse.Namespace) -> dict[str, Any]:
    L = _lattice(args)
    o = _single_order(args, L.n)
    fr = build_facet_ridge_graph(L, _caps(args))
    G = build_glex(L, o, chains=fr.chains)
    _write(args.dot, glex_dot(G))
    lab = G.labeling
    dist = directed_distances_to_sink(G)
    ecc, far = max_directed_eccentricity(G)
    return {
        "spec": args.spec,
        "order": str(o),
        "sink": format_chain(L, G.chains[G.sink]),
        "edges": [
            {
                "from": format_chain(L, G.chains[e.src]),
                "to": format_chain(L, G.chains[e.dst]),
                "rank": e.rank,
                "descent": list(e.before),
                "ascent": list(e.after),
            }
            for e in G.edges
        ],
        "distance_to_sink": [
            {**_chain_info(L, lab, c), "directed": dist[v]} for v, c in enumerate(G.chains)
        ],
        "max_directed_ecc": ecc,
        "farthest": format_chain(L, G.chains[far]),
        "shortcut_pairs": len(shortcut_pairs(fr, G)),
    }


def _straighten_report(L: FlatsLattice, o: AtomOrder, chain) -> dict[str, Any]:
    lab = labeling(L, o)
    res = straighten(L, lab, chain)
    r = max(L.r, 1)
    return {
        "order": str(o),
        "word": list(res.word),
        "expression": list(res.expression),
        "length": res.length,
        "binom_r_2": math.comb(L.r, 2),
        "reduced": res.reduced and coxeter.is_reduced_by_length(res.word, r),
        "path": [_chain_info(L, lab, c) for c in res.path],
    }


def cmd_straighten(args: argparse.Namespace) -> dict[str, Any]:
    L = _lattice(args)
    o = _single_order(args, L.n)
    report = {"spec": args.spec, **_straighten_report(L, o, parse_chain(L, args.chain))}
    if not report["reduced"] or report["length"] > report["binom_r_2"]:
        raise Violation(report)
    return report


def cmd_connect(args: argparse.Namespace) -> dict[str, Any]:
    L = _lattice(args)
    m1, m2 = parse_chain(L, args.source), parse_chain(L, args.target)
    o = atom_order_for_chain(L, m2)
    lab = labeling(L, o)
    path = connect(L, m1, m2)
    fr = build_facet_ridge_graph(L, _caps(args))
    bfs = distances_from(fr, m1)[fr.vertex(m2)]
    report = {
        "spec": args.spec,
        "order": str(o),
        "length": len(path) - 1,
        "bfs_distance": bfs,
        "binom_r_2": math.comb(L.r, 2),
        "path": [_chain_info(L, lab, c) for c in path],
    }
    if report["length"] > report["binom_r_2"]:
        raise Violation(report)
    return report


def cmd_reversal(args: argparse.Namespace) -> dict[str, Any]:
    L = _lattice(args)
    o = _single_order(args, L.n)
    lab = labeling(L, o)
    chain = reversal_chain(L, lab)
    G = build_glex(L, lab, caps=_caps(args))
    bad = check_reversal_paths(G)
    report = {
        "spec": args.spec,
        "order": str(o),
        "ascending": _chain_info(L, lab, ascending_chain(L, lab)),
        "reversal": _chain_info(L, lab, chain),
        "directed_distance": directed_distances_to_sink(G)[G.vertex(chain)],
        "binom_r_2": math.comb(L.r, 2),
        "path_violations": bad,
    }
    if bad or report["directed_distance"] != report["binom_r_2"]:
        raise Violation(report)
    return report


def cmd_sharpness(args: argparse.Namespace) -> dict[str, Any]:
    L = _lattice(args)
    fr = build_facet_ridge_graph(L, _caps(args))
    d, _ = diameter(fr)
    bound = math.comb(L.r, 2)
    spec_id = Path(args.spec).stem
    rows: list[SharpnessRow] = []
    extra = []
    for o in _orders(args, L.n):
        lab = labeling(L, o)
        G = build_glex(L, lab, chains=fr.chains)
        ecc, _ = max_directed_eccentricity(G)
        rev = reversal_chain(L, lab)
        rows.append(SharpnessRow(spec_id, str(o), L.r, len(fr), d, ecc, bound, ecc == bound))
        extra.append({
            "reversal": format_chain(L, rev),
            "reversal_distance": directed_distances_to_sink(G)[G.vertex(rev)],
        })
    _write(args.csv, to_csv(rows))
    report = {
        "spec": args.spec,
        "rows": [{**asdict(row), **x} for row, x in zip(rows, extra)],
        "verdict": "tight" if all(r.tight for r in rows) else "VIOLATION",
    }
    if report["verdict"] != "tight":
        raise Violation(report)
    return report


def cmd_descent_order(args: argparse.Namespace) -> dict[str, Any]:
    L = _lattice(args)
    o = _single_order(args, L.n)
    P = build_descent_order(L, o, caps=_caps(args))
    _write(args.dot, descent_order_dot(L, P))
    report: dict[str, Any] = {
        "spec": args.spec,
        "order": str(o),
        "elements": len(P.chains),
        "relations": len(P.relation),
        "hasse_edges": [[format_chain(L, P.chains[v]), format_chain(L, P.chains[u])] for v, u in sorted(P.hasse_edges)],
        "minimum": format_chain(L, P.chains[P.minimum]),
    }
    if args.check_glex:
        cmp = check_hasse_equals_glex(L, o, order=P)
        report["hasse_equals_glex"] = cmp.equal
        report["hasse_only"] = [[format_chain(L, P.chains[a]), format_chain(L, P.chains[b])] for a, b in cmp.hasse_only]
        report["glex_only"] = [[format_chain(L, P.chains[a]), format_chain(L, P.chains[b])] for a, b in cmp.glex_only]
        if not cmp.equal:
            raise Violation(report)
    return report


def cmd_wiring(args: argparse.Namespace) -> dict[str, Any]:
    word = coxeter.parse_word(args.word)
    r = args.r if args.r else max(word, default=0) + 1
    wd = coxeter.wiring_diagram(word, r)
    return {
        "word": list(word),
        "r": r,
        "permutation": list(wd.final),
        "crossings": [list(p) for p in wd.crossings],
        "double_crossings": [list(p) for p in wd.double_crossings],
        "reduced": wd.reduced,
        "inversions": coxeter.inversions(wd.final),
        "diagram": wd.render(),
    }


def cmd_sweep(args: argparse.Namespace) -> dict[str, Any]:
    caps = _caps(args)
    instances: list[tuple[str, dict[str, Any]]] = []
    if args.corpus or not (args.specs or args.random_graphic or args.random_linear):
        instances.extend(CORPUS.items())
    for path in args.specs:
        instances.append((Path(path).stem, read_spec(path)))
    instances.extend(random_instances(
        args.seed,
        graphic=args.random_graphic,
        vertices=args.vertices,
        linear=args.random_linear,
        prime=args.prime,
        dim=args.dim,
        elements=args.elements,
    ))
    if args.all_orders:
        mode = "all"
    elif args.random_orders:
        mode = f"random:{args.random_orders}"
    else:
        mode = args.order
    results = run_sweep(instances, seed=args.seed, caps=caps, orders_mode=mode, jobs=args.jobs)
    findings = [f for res in results for f in res.findings]
    _write(args.csv, to_csv(findings) or ",".join(FINDING_COLUMNS) + "\n")
    rows = [r for res in results for r in res.rows]
    _write(args.sharpness_csv, to_csv(rows))
    report = {
        "instances": [sid for sid, _ in instances],
        "violations": [asdict(f) for f in findings if f.severity == "violation"],
        "errors": [asdict(f) for f in findings if f.severity == "error"],
        "summary": [asdict(f) for f in findings if f.severity == "info"],
        "sharpness_rows": len(rows),
        "all_tight": all(r.tight for r in rows),
    }
    if report["violations"]:
        raise Violation(report)
    if report["errors"]:
        raise InputError(f"{len(report['errors'])} instance(s) could not be processed")
    return report


# -- output ---------------------------------------------------------------------------


def render_text(report: dict[str, Any]) -> str:
    """Human form of a report: the same content as the JSON, laid out as lines."""
    lines = []
    for key, val in report.items():
        if isinstance(val, str) and "\n" in val:
            lines.append(f"{key}:")
            lines.extend("  " + ln for ln in val.splitlines())
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{key}:")
            for item in val:
                lines.append("  " + "  ".join(f"{k}={_fmt(v)}" for k, v in item.items()))
        elif isinstance(val, dict):
            lines.append(f"{key}: " + ", ".join(f"{k}={_fmt(v)}" for k, v in val.items()))
        else:
            lines.append(f"{key}: {_fmt(val)}")
    return "\n".join(lines) + "\n"


def _fmt(v: Any) -> str:
    if isinstance(v, list):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    if isinstance(v, str) and v == "":
        return "''"
    return str(v)


def _emit(report: dict[str, Any], fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=False) + "\n")
    else:
        sys.stdout.write(render_text(report))


COMMANDS = {
    "lattice": cmd_lattice,
    "verify": cmd_verify,
    "diameter": cmd_diameter,
    "glex": cmd_glex,
    "straighten": cmd_straighten,
    "connect": cmd_connect,
    "reversal": cmd_reversal,
    "sharpness": cmd_sharpness,
    "descent-order": cmd_descent_order,
    "wiring": cmd_wiring,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--order", help="atom order as a comma list, smallest first (default natural)")
    common.add_argument("--all-orders", action="store_true")
    common.add_argument("--random-orders", type=int, metavar="N", default=0)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--dot", metavar="PATH")
    common.add_argument("--csv", metavar="PATH")
    common.add_argument("--cap-atoms", type=int, default=Caps.atoms)
    common.add_argument("--cap-flats", type=int, default=Caps.flats)
    common.add_argument("--cap-chains", type=int, default=Caps.chains)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="geolat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def spec_cmd(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.add_argument("spec", help="matroid-spec v1 JSON file")
        return sp

    spec_cmd("lattice", "build the lattice of flats")
    spec_cmd("verify", "check geometric axioms and the EL property")
    spec_cmd("diameter", "facet-ridge graph diameter vs C(r,2)").add_argument(
        "--pairs", action="store_true", help="list the distance of every chain pair"
    )
    spec_cmd("glex", "build the oriented graph G_lex")
    spec_cmd("straighten", "straighten a chain to the ascending chain").add_argument(
        "--chain", required=True, help="e.g. ';4;3,4;1,2,3,4'"
    )
    sp = spec_cmd("connect", "facet-ridge path between two chains")
    sp.add_argument("--from", dest="source", required=True)
    sp.add_argument("--to", dest="target", required=True)
    spec_cmd("reversal", "chain with reversed ascending labels and its G_lex distance")
    spec_cmd("sharpness", "max directed G_lex distance per atom order")
    spec_cmd("descent-order", "maximal chain descent order").add_argument("--check-glex", action="store_true")

    wp = sub.add_parser("wiring", parents=[common], help="wiring diagram of a word")
    wp.add_argument("word", help="comma-separated generator indices, e.g. 1,2,3,1,2,1")
    wp.add_argument("--r", type=int, default=0, help="number of wires (default: largest index + 1)")

    sw = sub.add_parser("sweep", parents=[common], help="run every invariant over many instances")
    sw.add_argument("specs", nargs="*", help="spec files (default: the built-in corpus)")
    sw.add_argument("--corpus", action="store_true", help="include the built-in corpus")
    sw.add_argument("--random-graphic", type=int, default=0, metavar="N")
    sw.add_argument("--vertices", type=int, default=5)
    sw.add_argument("--random-linear", type=int, default=0, metavar="N")
    sw.add_argument("--prime", type=int, default=2)
    sw.add_argument("--dim", type=int, default=3)
    sw.add_argument("--elements", type=int, default=5)
    sw.add_argument("--sharpness-csv", metavar="PATH")
    sw.add_argument("--jobs", type=int, default=1)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        report = COMMANDS[args.command](args)
    except Violation as v:
        _emit(v.args[0], args.format)
        return EXIT_VIOLATION
    except ClaimViolation as exc:
        _emit({"verdict": "VIOLATION", "claim": exc.claim, "detail": str(exc), "witness": repr(exc.witness)}, args.format)
        return EXIT_VIOLATION
    except DisconnectedGraphError as exc:
        _emit({"verdict": "VIOLATION", "claim": "facet-ridge-connected", "detail": str(exc),
               "components": exc.components}, args.format)
        return EXIT_VIOLATION
    except (InputError, CapExceededError) as exc:
        print(f"geolat: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(report, args.format)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
