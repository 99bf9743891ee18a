"""Batch verification: run every invariant over many (matroid, atom order) instances."""

from __future__ import annotations

import csv
import io
import logging
import math
import random
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from itertools import combinations
from typing import Any

from . import coxeter
from .chain_graph import (
    FacetRidgeGraph,
    build_facet_ridge_graph,
    build_glex,
    check_distance_bounds,
    check_glex_structure,
    check_reversal_paths,
    diameter,
    max_directed_eccentricity,
)
from .config import DEFAULT_CAPS, Caps
from .descent_order import build_descent_order, check_hasse_equals_glex, polygon_moves
from .descent_path import connect, straighten
from .errors import CapExceededError, ClaimViolation, DisconnectedGraphError, InputError
from .labeling import (
    AtomOrder,
    MinimalLabeling,
    all_orders,
    ascending_chain,
    check_ascending_greedy,
    check_label_independence,
    check_lexmin_rearrangement,
    check_rearrangements,
    format_chain,
    labeling,
    verify_el,
)
from .lattice import FlatsLattice, build_lattice, verify_geometric
from .matroid import Matroid, check_closure_axioms, check_rank_axioms, from_spec, make_graphic, make_linear

log = logging.getLogger(__name__)

EXHAUSTIVE_ORDER_LIMIT = 5
RANDOM_ORDER_COUNT = 50
CONNECT_PAIR_LIMIT = 400  # chains; above this connect() is checked on a seeded sample of pairs


@dataclass(frozen=True)
class Finding:
    severity: str  # "info", "violation" or "error"
    claim: str
    instance: str
    witness: str


@dataclass(frozen=True)
class SharpnessRow:
    spec_id: str
    order: str
    r: int
    chains: int
    diameter_undirected: int
    max_directed_ecc: int
    binom_r_2: int
    tight: bool


def _rng(seed: int, spec_id: str) -> random.Random:
    return random.Random(f"{seed}/{spec_id}")


def random_orders(n: int, count: int, rng: random.Random) -> list[AtomOrder]:
    out = []
    for _ in range(count):
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        out.append(AtomOrder(tuple(perm)))
    return out


def default_orders(n: int, seed: int, spec_id: str) -> list[AtomOrder]:
    """All n! orders for n <= 5, otherwise 50 seeded random ones."""
    if n <= EXHAUSTIVE_ORDER_LIMIT:
        return all_orders(n)
    return random_orders(n, RANDOM_ORDER_COUNT, _rng(seed, spec_id))


def random_graphic(vertices: int, rng: random.Random, p: float = 0.5, tries: int = 1000) -> Matroid:
    """Cycle matroid of a connected Erdos-Renyi graph G(vertices, p)."""
    pairs = list(combinations(range(1, vertices + 1), 2))
    for _ in range(tries):
        edges = [list(e) for e in pairs if rng.random() < p]
        if not edges:
            continue
        m = make_graphic(vertices, edges)
        if m.r == vertices - 1:
            return m
    raise InputError(f"no connected graph on {vertices} vertices after {tries} draws")


def random_linear(prime: int, dim: int, elements: int, rng: random.Random, tries: int = 1000) -> Matroid:
    """``elements`` random nonzero, pairwise non-parallel vectors of GF(prime)^dim."""
    for _ in range(tries):
        vecs: list[list[int]] = []
        budget = 100 * elements
        while len(vecs) < elements and budget:
            budget -= 1
            v = [rng.randrange(prime) for _ in range(dim)]
            if not any(v) or any(_parallel(v, w, prime) for w in vecs):
                continue
            vecs.append(v)
        if len(vecs) == elements:
            return make_linear(prime, vecs)
    raise InputError(f"cannot draw {elements} non-parallel vectors in GF({prime})^{dim}")


def _parallel(v: Sequence[int], w: Sequence[int], p: int) -> bool:
    return any(all((c * b - a) % p == 0 for a, b in zip(v, w)) for c in range(1, p))


class _Collector:
    def __init__(self, instance: str):
        self.instance = instance
        self.findings: list[Finding] = []
        self.counts: dict[str, int] = {}

    def check(self, claim: str, problems: Iterable[str], where: str = "") -> None:
        self.counts[claim] = self.counts.get(claim, 0) + 1
        for p in problems:
            self.findings.append(Finding("violation", claim, self.instance, f"{where}{p}"))

    def run(self, claim: str, fn: Callable[[], Iterable[str]], where: str = "") -> None:
        try:
            self.check(claim, fn(), where)
        except ClaimViolation as exc:
            self.check(claim, [f"{exc} witness={exc.witness!r}"], where)
        except DisconnectedGraphError as exc:
            self.check(claim, [f"{exc} components={exc.components!r}"], where)
        except InputError as exc:
            # a contract failure raised mid-check (e.g. under a corrupted labeling)
            self.check(claim, [f"raised: {exc}"], where)


def _matroid_checks(c: _Collector, m: Matroid, seed: int) -> None:
    c.run("rank-axioms", lambda: check_rank_axioms(m, seed=seed))
    c.run("closure-axioms", lambda: check_closure_axioms(m, seed=seed))


def _lattice_checks(c: _Collector, L: FlatsLattice) -> None:
    c.run("geometric", lambda: [verify_geometric(L).summary()] if not verify_geometric(L).ok else [])

    def meet_closed() -> list[str]:
        flats = set(L.flats)
        pairs = combinations(L.flats, 2) if len(L) <= 2000 else []
        return [f"{a} & {b} is not a flat" for a, b in pairs if a & b not in flats]

    c.run("meet-closed", meet_closed)


def _connect_checks(L: FlatsLattice, fr: FacetRidgeGraph, rng: random.Random) -> list[str]:
    bound = math.comb(L.r, 2)
    n = len(fr)
    if n <= CONNECT_PAIR_LIMIT:
        pairs: Iterable[tuple[int, int]] = ((a, b) for a in range(n) for b in range(n))
    else:
        pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(CONNECT_PAIR_LIMIT)]
    bad = []
    for a, b in pairs:
        path = connect(L, fr.chains[a], fr.chains[b])
        if path[0] != fr.chains[a] or path[-1] != fr.chains[b] or len(path) - 1 > bound:
            bad.append(f"connect {a}->{b} returned length {len(path) - 1}")
        if any(fr.vertex(y) not in fr.adj[fr.vertex(x)] for x, y in zip(path, path[1:])):
            bad.append(f"connect {a}->{b} steps along a non-edge")
    return bad


def _order_checks(
    c: _Collector,
    L: FlatsLattice,
    fr: FacetRidgeGraph,
    lab: MinimalLabeling,
    rows: list[SharpnessRow],
    spec_id: str,
    undirected: int,
) -> None:
    order = lab.order
    where = f"order {order}: "
    r = L.r
    bound = math.comb(r, 2)

    c.run("el-labeling", lambda: [f"[{L.label(v.lo)}, {L.label(v.hi)}] {v.reason}" for v in verify_el(L, lab).violations], where)
    c.run("ascending-greedy", lambda: check_ascending_greedy(L, lab), where)
    c.run("label-independence", lambda: check_label_independence(L, lab), where)
    c.run("rearrangement-realizability", lambda: check_rearrangements(L, lab), where)
    c.run("lexmin-rearrangement", lambda: check_lexmin_rearrangement(L, lab), where)

    def straightening() -> list[str]:
        bad = []
        asc = ascending_chain(L, lab)
        for ch in fr.chains:
            res = straighten(L, lab, ch)
            w = res.word
            if res.terminal != asc:
                bad.append(f"{format_chain(L, ch)} ends at {format_chain(L, res.terminal)}")
            if not coxeter.is_reduced(w, max(r, 1)) or not coxeter.is_reduced_by_length(w, max(r, 1)):
                bad.append(f"{format_chain(L, ch)} gives non-reduced word {w}")
            if len(w) > bound:
                bad.append(f"{format_chain(L, ch)} needs {len(w)} > C(r,2) moves")
        return bad

    c.run("straightening", straightening, where)

    try:
        G = build_glex(L, lab, chains=fr.chains)
    except ClaimViolation as exc:
        c.check("glex", [str(exc)], where)
        return
    c.run("glex-structure", lambda: check_glex_structure(fr, G), where)
    c.run("glex-lex-decrease", lambda: [
        f"edge {e.src}->{e.dst} does not decrease labels"
        for e in G.edges
        if not lab.key(G.chains[e.dst]) < lab.key(G.chains[e.src])
    ], where)
    c.run("distance-bounds", lambda: check_distance_bounds(fr, G), where)

    asc_set = set(lab.sequence(ascending_chain(L, lab)))

    def descent_swapping() -> list[str]:
        return [
            f"edge {e.src}->{e.dst}: ({e.before[0]},{e.before[1]}) -> {e.after}"
            for e in G.edges
            if set(lab.sequence(G.chains[e.src])) == asc_set and e.after != (e.before[1], e.before[0])
        ]

    c.run("descent-swapping", descent_swapping, where)
    c.run("reversal-inversions", lambda: check_reversal_paths(G), where)

    ecc = -1
    try:
        ecc, _ = max_directed_eccentricity(G)
    except ClaimViolation as exc:
        c.check("sharpness-exact", [str(exc)], where)
    else:
        c.check("sharpness-exact", [] if ecc == bound else [f"max directed distance {ecc} != C(r,2) = {bound}"], where)
    rows.append(SharpnessRow(spec_id, str(order), r, len(fr), undirected, ecc, bound, ecc == bound))

    def polygon_vs_glex() -> list[str]:
        moves = {(s, G.vertex(t)) for s, ch in enumerate(G.chains) for _, t in polygon_moves(L, lab, ch)}
        diff = moves ^ G.edge_set()
        return [f"edge {a}->{b} in only one of polygon moves / G_lex" for a, b in sorted(diff)]

    c.run("polygon-equals-glex", polygon_vs_glex, where)

    def hasse() -> list[str]:
        P = build_descent_order(L, lab, chains=fr.chains)
        cmp = check_hasse_equals_glex(L, lab, order=P, glex=G)
        return [f"Hasse-only edge {e}" for e in cmp.hasse_only] + [f"G_lex-only edge {e}" for e in cmp.glex_only]

    c.run("hasse-equals-glex", hasse, where)


@dataclass
class InstanceResult:
    spec_id: str
    findings: list[Finding]
    rows: list[SharpnessRow]


def run_instance(
    spec_id: str,
    m: Matroid,
    orders: Sequence[AtomOrder] | None = None,
    seed: int = 0,
    caps: Caps = DEFAULT_CAPS,
    mutate: Callable[[MinimalLabeling], MinimalLabeling] | None = None,
) -> InstanceResult:
    """Run the full invariant suite on one matroid; never raises for claim failures.

    ``mutate`` post-processes each labeling before checking (fault injection).
    """
    c = _Collector(spec_id)
    rows: list[SharpnessRow] = []
    try:
        _matroid_checks(c, m, seed)
        L = build_lattice(m, caps)
        _lattice_checks(c, L)
        fr = build_facet_ridge_graph(L, caps)
        bound = math.comb(L.r, 2)
        undirected = -1
        try:
            undirected, pair = diameter(fr)
        except DisconnectedGraphError as exc:
            c.check("facet-ridge-connected", [f"{exc} components={exc.components!r}"])
        else:
            c.check("facet-ridge-connected", [])
            c.check("diameter-upper-bound", [] if undirected <= bound else [
                f"diameter {undirected} > C(r,2) = {bound} between "
                f"{format_chain(L, fr.chains[pair[0]])} and {format_chain(L, fr.chains[pair[1]])}"
            ])
        c.run("connect-path", lambda: _connect_checks(L, fr, _rng(seed, spec_id)))
        if orders is None:
            orders = default_orders(m.n, seed, spec_id)
        for order in orders:
            lab = labeling(L, order)
            if mutate is not None:
                lab = mutate(lab)
            _order_checks(c, L, fr, lab, rows, spec_id, undirected)
    except (InputError, CapExceededError) as exc:
        c.findings.append(Finding("error", "instance-error", spec_id, str(exc)))
    summary = ", ".join(f"{k}={v}" for k, v in sorted(c.counts.items()))
    c.findings.append(Finding("info", "checks-run", spec_id, summary))
    return InstanceResult(spec_id, c.findings, rows)


def _run_spec(args: tuple[str, dict[str, Any], int, Caps, str | None]) -> InstanceResult:
    spec_id, doc, seed, caps, orders_mode = args
    try:
        m = from_spec(doc, cap=caps.atoms)
    except InputError as exc:
        return InstanceResult(spec_id, [Finding("error", "instance-error", spec_id, str(exc))], [])
    return run_instance(spec_id, m, orders_for(m.n, seed, spec_id, orders_mode), seed, caps)


def orders_for(n: int, seed: int, spec_id: str, mode: str | None) -> list[AtomOrder]:
    if mode is None:
        return default_orders(n, seed, spec_id)
    if mode == "all":
        return all_orders(n)
    if mode == "natural":
        return [AtomOrder.natural(n)]
    if mode.startswith("random:"):
        return random_orders(n, int(mode.split(":", 1)[1]), _rng(seed, spec_id))
    return [AtomOrder.parse(mode)]


def run_sweep(
    instances: Sequence[tuple[str, dict[str, Any]]],
    seed: int = 0,
    caps: Caps = DEFAULT_CAPS,
    orders_mode: str | None = None,
    jobs: int = 1,
) -> list[InstanceResult]:
    """Results come back in instance order whatever the worker count."""
    work = [(sid, doc, seed, caps, orders_mode) for sid, doc in instances]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_spec, work))
    return [_run_spec(w) for w in work]


def random_instances(
    seed: int,
    graphic: int = 0,
    vertices: int = 5,
    linear: int = 0,
    prime: int = 2,
    dim: int = 3,
    elements: int = 5,
) -> list[tuple[str, dict[str, Any]]]:
    rng = random.Random(seed)
    out = []
    for k in range(graphic):
        m = random_graphic(vertices, rng)
        log.info("random graphic #%d: G(%d, 0.5), seed %d, %d edges", k, vertices, seed, m.n)
        out.append((f"graphic-{vertices}v-s{seed}-{k}", m.to_spec()))
    for k in range(linear):
        m = random_linear(prime, dim, elements, rng)
        log.info("random linear #%d: %d vectors in GF(%d)^%d, seed %d", k, elements, prime, dim, seed)
        out.append((f"linear-p{prime}d{dim}n{elements}-s{seed}-{k}", m.to_spec()))
    return out


def to_csv(rows: Sequence[Any]) -> str:
    """CSV text with a header taken from the dataclass fields; '\\n' line endings."""
    buf = io.StringIO()
    if not rows:
        return ""
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f.name for f in fields(rows[0])])
    for row in rows:
        w.writerow(astuple(row))
    return buf.getvalue()


FINDING_COLUMNS = [f.name for f in fields(Finding)]
SHARPNESS_COLUMNS = [f.name for f in fields(SharpnessRow)]
