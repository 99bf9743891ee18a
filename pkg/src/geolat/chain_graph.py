"""Facet-ridge graph of the order complex and its lexicographic orientation G_lex.

Vertices are maximal chains (bottom and top included; they lie in every facet,
so adjacency is the same as for the pruned complex). Two chains are adjacent
when they differ in exactly one interior element.
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from collections.abc import Sequence
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter

from .config import DEFAULT_CAPS, Caps
from .coxeter import inversions
from .descent_path import apply_t, reversal_chain
from .errors import ClaimViolation, DisconnectedGraphError, InputError
from .labeling import (
    AtomOrder,
    Chain,
    MinimalLabeling,
    ascending_chain,
    descents,
    enumerate_maximal_chains,
    labeling,
)
from .lattice import FlatsLattice


@dataclass(eq=False)
class FacetRidgeGraph:
    lattice: FlatsLattice
    chains: list[Chain]
    adj: list[list[int]]
    index: dict[Chain, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.index = {c: i for i, c in enumerate(self.chains)}

    def __len__(self) -> int:
        return len(self.chains)

    def vertex(self, chain: Sequence[int]) -> int:
        try:
            return self.index[tuple(chain)]
        except KeyError:
            raise InputError("chain is not a vertex of this graph") from None

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, vs in enumerate(self.adj) for v in vs if u < v]

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]


def build_facet_ridge_graph(L: FlatsLattice, caps: Caps = DEFAULT_CAPS) -> FacetRidgeGraph:
    chains = enumerate_maximal_chains(L, caps.chains)
    ridges: dict[tuple[int, Chain], list[int]] = defaultdict(list)
    for idx, c in enumerate(chains):
        for k in range(1, len(c) - 1):
            ridges[k, c[:k] + c[k + 1 :]].append(idx)
    adj: list[set[int]] = [set() for _ in chains]
    for members in ridges.values():
        for a in members:
            adj[a].update(b for b in members if b != a)
    return FacetRidgeGraph(L, chains, [sorted(s) for s in adj])


@dataclass(frozen=True)
class GlexEdge:
    src: int
    dst: int
    rank: int
    before: tuple[int, int]  # the descent (j, i)
    after: tuple[int, int]  # the ascent (i, j') replacing it


@dataclass(eq=False)
class GlexGraph:
    lattice: FlatsLattice
    labeling: MinimalLabeling
    chains: list[Chain]
    edges: list[GlexEdge]
    index: dict[Chain, int] = field(init=False, repr=False)
    out: list[list[GlexEdge]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.index = {c: i for i, c in enumerate(self.chains)}
        self.out = [[] for _ in self.chains]
        for e in self.edges:
            self.out[e.src].append(e)

    def __len__(self) -> int:
        return len(self.chains)

    def vertex(self, chain: Sequence[int]) -> int:
        try:
            return self.index[tuple(chain)]
        except KeyError:
            raise InputError("chain is not a vertex of this graph") from None

    @property
    def sinks(self) -> list[int]:
        return [v for v, es in enumerate(self.out) if not es]

    @property
    def sink(self) -> int:
        return self.vertex(ascending_chain(self.lattice, self.labeling))

    def edge_set(self) -> set[tuple[int, int]]:
        return {(e.src, e.dst) for e in self.edges}


def build_glex(
    L: FlatsLattice,
    ord: AtomOrder | MinimalLabeling | None = None,
    chains: list[Chain] | None = None,
    caps: Caps = DEFAULT_CAPS,
) -> GlexGraph:
    """One edge M -> T_i(M) for every chain M and every descent rank i of its labels."""
    lab = labeling(L, ord)
    if chains is None:
        chains = enumerate_maximal_chains(L, caps.chains)
    index = {c: i for i, c in enumerate(chains)}
    edges = []
    for src, c in enumerate(chains):
        seq = lab.sequence(c)
        for i in descents(seq, lab.order):
            d = apply_t(L, lab, c, i)
            dseq = lab.sequence(d)
            edges.append(GlexEdge(src, index[d], i, (seq[i - 1], seq[i]), (dseq[i - 1], dseq[i])))
    return GlexGraph(L, lab, chains, edges)


def _bfs(adj: Sequence[Sequence[int]], src: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def components(G: FacetRidgeGraph) -> list[list[int]]:
    seen = [False] * len(G)
    comps = []
    for s in range(len(G)):
        if not seen[s]:
            comp = [v for v, d in enumerate(_bfs(G.adj, s)) if d >= 0]
            for v in comp:
                seen[v] = True
            comps.append(comp)
    return comps


def _require_connected(G: FacetRidgeGraph, dist: list[int]) -> None:
    if any(d < 0 for d in dist):
        comps = components(G)
        raise DisconnectedGraphError(f"facet-ridge graph has {len(comps)} components", comps)


def distance(G: FacetRidgeGraph, a: Sequence[int] | int, b: Sequence[int] | int) -> int:
    ia = a if isinstance(a, int) else G.vertex(a)
    ib = b if isinstance(b, int) else G.vertex(b)
    dist = _bfs(G.adj, ia)
    if dist[ib] < 0:
        _require_connected(G, dist)
    return dist[ib]


def distances_from(G: FacetRidgeGraph, a: Sequence[int] | int) -> list[int]:
    ia = a if isinstance(a, int) else G.vertex(a)
    dist = _bfs(G.adj, ia)
    _require_connected(G, dist)
    return dist


def diameter(G: FacetRidgeGraph) -> tuple[int, tuple[int, int]]:
    """Largest BFS distance and the first pair (in canonical order) attaining it."""
    best, pair = -1, (0, 0)
    for s in range(len(G)):
        dist = _bfs(G.adj, s)
        _require_connected(G, dist)
        for t, d in enumerate(dist):
            if d > best:
                best, pair = d, (s, t)
    return max(best, 0), pair


def directed_distances_to_sink(G: GlexGraph) -> list[int]:
    """Shortest directed path length from each vertex to the ascending chain (reverse BFS)."""
    rev: list[list[int]] = [[] for _ in G.chains]
    for e in G.edges:
        rev[e.dst].append(e.src)
    sink = G.sink
    dist = _bfs(rev, sink)
    if any(d < 0 for d in dist):
        stuck = [v for v, d in enumerate(dist) if d < 0]
        raise ClaimViolation("glex-reachability", f"{len(stuck)} chains cannot reach the sink", stuck[:5])
    return dist


def directed_distance_to_sink(G: GlexGraph, a: Sequence[int] | int) -> int:
    ia = a if isinstance(a, int) else G.vertex(a)
    return directed_distances_to_sink(G)[ia]


def max_directed_eccentricity(G: GlexGraph) -> tuple[int, int]:
    """(max distance to sink, first chain index attaining it)."""
    dist = directed_distances_to_sink(G)
    best = max(dist)
    return best, dist.index(best)


def topological_order(G: GlexGraph) -> list[int] | None:
    """A topological order of G_lex, or None when it has a directed cycle."""
    ts: TopologicalSorter[int] = TopologicalSorter({v: [] for v in range(len(G))})
    for e in G.edges:
        ts.add(e.dst, e.src)
    try:
        return list(ts.static_order())
    except CycleError:
        return None


# -- invariant checks; each returns a list of human-readable violations -------------


def check_glex_structure(fr: FacetRidgeGraph, G: GlexGraph) -> list[str]:
    """Acyclic, unique sink at the ascending chain, spanning subgraph, j' <= j contract."""
    bad = []
    if topological_order(G) is None:
        bad.append("G_lex has a directed cycle")
    sinks = G.sinks
    if sinks != [G.sink]:
        bad.append(f"sinks {sinks} differ from the ascending chain {G.sink}")
    pos = G.labeling.order.position_of
    for e in G.edges:
        if fr.vertex(G.chains[e.dst]) not in fr.adj[fr.vertex(G.chains[e.src])]:
            bad.append(f"G_lex edge {e.src}->{e.dst} is not a facet-ridge edge")
        j, i = e.before
        i2, j2 = e.after
        if not (i2 == i and pos[i] < pos[j2] <= pos[j]):
            bad.append(f"edge {e.src}->{e.dst} at rank {e.rank}: ({j},{i}) -> ({i2},{j2}) breaks i < j' <= j")
    return bad


def check_distance_bounds(fr: FacetRidgeGraph, G: GlexGraph) -> list[str]:
    """undirected distance to sink <= directed distance <= C(r, 2) for every chain."""
    cap = math.comb(G.lattice.r, 2)
    directed = directed_distances_to_sink(G)
    undirected = distances_from(fr, G.chains[G.sink])
    bad = []
    for v, c in enumerate(G.chains):
        u = undirected[fr.vertex(c)]
        if not u <= directed[v] <= cap:
            bad.append(f"chain {v}: undirected {u}, directed {directed[v]}, C(r,2) = {cap}")
    return bad


def reversal_paths(G: GlexGraph, limit: int = 100_000) -> list[list[GlexEdge]]:
    """Every maximal directed path of G_lex leaving the reversal chain.

    Edges back into the current path are skipped, so a cyclic graph still terminates.
    """
    start = G.vertex(reversal_chain(G.lattice, G.labeling))
    paths: list[list[GlexEdge]] = []
    stack: list[GlexEdge] = []
    on_path = {start}

    def walk(v: int) -> None:
        if len(paths) >= limit:
            return
        nxt = [e for e in G.out[v] if e.dst not in on_path]
        if not nxt:
            paths.append(list(stack))
            return
        for e in nxt:
            stack.append(e)
            on_path.add(e.dst)
            walk(e.dst)
            on_path.discard(e.dst)
            stack.pop()

    walk(start)
    return paths


def check_reversal_paths(G: GlexGraph) -> list[str]:
    """Each maximal path from the reversal chain has C(r,2) edges, each removing one inversion."""
    if topological_order(G) is None:
        return ["G_lex has a directed cycle"]
    lab = G.labeling
    want = math.comb(G.lattice.r, 2)
    bad = []
    for path in reversal_paths(G):
        if len(path) != want:
            bad.append(f"path of length {len(path)} from the reversal chain, expected {want}")
        for e in path:
            drop = inversions(lab.key(G.chains[e.src])) - inversions(lab.key(G.chains[e.dst]))
            if drop != 1:
                bad.append(f"edge {e.src}->{e.dst} removes {drop} inversions")
        if bad:
            break
    return bad


def shortcut_pairs(fr: FacetRidgeGraph, G: GlexGraph) -> list[tuple[int, int]]:
    """Facet-ridge edges u - v with no G_lex edge u -> v although v is strictly closer to the sink."""
    directed = directed_distances_to_sink(G)
    glex = G.edge_set()
    out = []
    for u, c in enumerate(G.chains):
        for w in fr.adj[fr.vertex(c)]:
            v = G.vertex(fr.chains[w])
            if (u, v) not in glex and directed[v] < directed[u]:
                out.append((u, v))
    return out
