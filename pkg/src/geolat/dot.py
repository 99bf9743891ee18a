"""Graphviz DOT text for lattices, facet-ridge graphs, G_lex and descent orders."""

from __future__ import annotations

from .chain_graph import FacetRidgeGraph, GlexGraph
from .descent_order import DescentOrder
from .labeling import format_chain
from .lattice import FlatsLattice, flats_by_rank


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def lattice_dot(L: FlatsLattice) -> str:
    lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=plaintext];"]
    for k, level in enumerate(flats_by_rank(L)):
        lines.append(f"  subgraph rank_{k} {{ rank=same; " + " ".join(f"f{u};" for u in level) + " }")
    for u in range(len(L)):
        lines.append(f"  f{u} [label={_q(L.label(u))}];")
    for u, ups in enumerate(L.covers_up):
        for v in ups:
            lines.append(f"  f{u} -> f{v} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def facet_ridge_dot(G: FacetRidgeGraph) -> str:
    L = G.lattice
    lines = ["graph facet_ridge {"]
    for v, c in enumerate(G.chains):
        lines.append(f"  c{v} [label={_q(format_chain(L, c))}];")
    for u, v in G.edges():
        lines.append(f"  c{u} -- c{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def glex_dot(G: GlexGraph) -> str:
    L = G.lattice
    lines = ["digraph glex {"]
    for v, c in enumerate(G.chains):
        lines.append(f"  c{v} [label={_q(format_chain(L, c))}];")
    for e in G.edges:
        (j, i), (i2, j2) = e.before, e.after
        lines.append(f"  c{e.src} -> c{e.dst} [label={_q(f'T{e.rank}: ({j},{i})->({i2},{j2})')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def descent_order_dot(L: FlatsLattice, P: DescentOrder) -> str:
    lines = ["digraph descent_order {", "  rankdir=BT;"]
    for v, c in enumerate(P.chains):
        lines.append(f"  c{v} [label={_q(format_chain(L, c))}];")
    for v, u in sorted(P.hasse_edges):
        lines.append(f"  c{u} -> c{v} [arrowhead=none];")
    lines.append("}")
    return "\n".join(lines) + "\n"
