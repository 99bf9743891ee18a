"""The maximal chain descent order: transitive closure of polygon moves."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import networkx as nx

from .chain_graph import GlexGraph, build_glex
from .config import DEFAULT_CAPS, Caps
from .errors import ClaimViolation
from .labeling import (
    AtomOrder,
    Chain,
    MinimalLabeling,
    enumerate_maximal_chains,
    is_weakly_ascending,
    labeling,
    saturated_chains,
)
from .lattice import FlatsLattice


def polygon_moves(L: FlatsLattice, ord: AtomOrder | MinimalLabeling, chain: Sequence[int]) -> list[tuple[int, Chain]]:
    """(rank, new chain) for every descent of ``chain``.

    The ascending chain of [x_{i-1}, x_{i+1}] is found by exhaustive search
    rather than the greedy walk used by the T moves.
    """
    lab = labeling(L, ord)
    chain = tuple(chain)
    key = lab.key(chain)
    moves = []
    for i in range(1, len(chain) - 1):
        if key[i - 1] <= key[i]:
            continue
        asc = [c for c in saturated_chains(L, chain[i - 1], chain[i + 1]) if is_weakly_ascending(lab.key(c))]
        if len(asc) != 1:
            raise ClaimViolation("el-labeling", f"{len(asc)} ascending chains in a rank-2 interval", chain)
        moves.append((i, chain[: i - 1] + asc[0] + chain[i + 2 :]))
    return moves


@dataclass(eq=False)
class DescentOrder:
    chains: list[Chain]
    moves: set[tuple[int, int]]  # polygon move v -> u, i.e. v > u
    relation: set[tuple[int, int]]  # strict part of the closure
    hasse_edges: set[tuple[int, int]]
    minimum: int
    graph: nx.DiGraph = field(repr=False)

    def greater(self, v: int, u: int) -> bool:
        return v == u or (v, u) in self.relation


def build_descent_order(
    L: FlatsLattice,
    ord: AtomOrder | MinimalLabeling | None = None,
    chains: list[Chain] | None = None,
    caps: Caps = DEFAULT_CAPS,
) -> DescentOrder:
    lab = labeling(L, ord)
    if chains is None:
        chains = enumerate_maximal_chains(L, caps.chains)
    index = {c: i for i, c in enumerate(chains)}
    g = nx.DiGraph()
    g.add_nodes_from(range(len(chains)))
    for v, c in enumerate(chains):
        for _, u in polygon_moves(L, lab, c):
            g.add_edge(v, index[u])
    if not nx.is_directed_acyclic_graph(g):
        cycle = nx.find_cycle(g)
        raise ClaimViolation("descent-order-antisymmetry", "polygon moves contain a cycle", cycle)
    closure = nx.transitive_closure_dag(g)
    hasse = nx.transitive_reduction(g)
    minima = [v for v in g if g.out_degree(v) == 0]
    if len(minima) != 1:
        raise ClaimViolation("descent-order-minimum", f"{len(minima)} minimal chains", minima)
    return DescentOrder(
        chains=chains,
        moves=set(g.edges),
        relation=set(closure.edges),
        hasse_edges=set(hasse.edges),
        minimum=minima[0],
        graph=g,
    )


@dataclass
class HasseComparison:
    hasse_only: list[tuple[int, int]]
    glex_only: list[tuple[int, int]]

    @property
    def equal(self) -> bool:
        return not self.hasse_only and not self.glex_only


def check_hasse_equals_glex(
    L: FlatsLattice,
    ord: AtomOrder | MinimalLabeling | None = None,
    order: DescentOrder | None = None,
    glex: GlexGraph | None = None,
) -> HasseComparison:
    lab = labeling(L, ord)
    if order is None:
        order = build_descent_order(L, lab)
    if glex is None:
        glex = build_glex(L, lab, chains=order.chains)
    # compare in the descent order's vertex numbering
    to_order = {c: i for i, c in enumerate(order.chains)}
    g_edges = {(to_order[glex.chains[e.src]], to_order[glex.chains[e.dst]]) for e in glex.edges}
    return HasseComparison(
        hasse_only=sorted(order.hasse_edges - g_edges),
        glex_only=sorted(g_edges - order.hasse_edges),
    )
