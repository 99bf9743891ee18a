"""Acceptance criteria, one test each, at zero tolerance.

Each test prints ``ACCEPTANCE <n> PASS|FAIL <detail>``; the lines are repeated in
the terminal summary. Run this file directly for the lines alone.
"""

from __future__ import annotations

import math
import subprocess
import sys
import time
from collections.abc import Callable
from itertools import permutations, product
from pathlib import Path

import pytest

from geolat.chain_graph import (
    build_facet_ridge_graph,
    build_glex,
    check_reversal_paths,
    diameter,
    directed_distances_to_sink,
    distance,
    max_directed_eccentricity,
)
from geolat.coxeter import evaluate, inversions, is_reduced, is_reduced_by_length
from geolat.descent_order import build_descent_order, check_hasse_equals_glex
from geolat.descent_path import apply_word, reversal_chain, straighten
from geolat.labeling import (
    ascending_chain,
    check_label_independence,
    check_lexmin_rearrangement,
    check_rearrangements,
    labeling,
    parse_chain,
    verify_el,
)
from geolat.lattice import build_lattice
from geolat.matroid import atoms_of, from_spec, make_uniform
from geolat.specfile import CORPUS
from geolat.sweep import default_orders

SEED = 42
RESULTS: dict[int, tuple[bool, str]] = {}


def corpus_runs():
    """(spec_id, lattice, facet-ridge graph, swept orders) for every corpus lattice."""
    for sid, doc in CORPUS.items():
        L = build_lattice(from_spec(doc))
        yield sid, L, build_facet_ridge_graph(L), default_orders(L.n, SEED, sid)


def first(problems: list[str], count: int, what: str) -> tuple[bool, str]:
    if problems:
        return False, f"{len(problems)} violation(s); first: {problems[0]}"
    return True, f"{count} {what}, 0 violations"


def criterion_1() -> tuple[bool, str]:
    got = []
    b5_time = 0.0
    for r in (2, 3, 4, 5):
        t0 = time.perf_counter()
        fr = build_facet_ridge_graph(build_lattice(make_uniform(r, r)))
        d, _ = diameter(fr)
        if r == 5:
            b5_time = time.perf_counter() - t0
            assert len(fr) == 120
        got.append(d)
    want = [math.comb(r, 2) for r in (2, 3, 4, 5)]
    ok = got == want and b5_time < 10
    return ok, f"diameters {got} vs {want}; B_5 in {b5_time:.2f}s"


def criterion_2() -> tuple[bool, str]:
    L = build_lattice(from_spec(CORPUS["U34"]))
    lab = labeling(L)
    M = parse_chain(L, ";4;3,4;1,2,3,4")

    def seq(ranks):  # ranks in application order: T_1 T_2 (M) applies T_2 first
        return lab.sequence(apply_word(L, lab, M, ranks))

    got = {
        "M": lab.sequence(M),
        "T2": seq([2]), "T1T2": seq([2, 1]), "T2T1T2": seq([2, 1, 2]),
        "T1": seq([1]), "T2T1": seq([1, 2]), "T1T2T1": seq([1, 2, 1]),
    }
    want = {
        "M": (4, 3, 1),
        "T2": (4, 1, 2), "T1T2": (1, 4, 2), "T2T1T2": (1, 2, 3),
        "T1": (3, 4, 1), "T2T1": (3, 1, 2), "T1T2T1": (1, 3, 2),
    }
    same = apply_word(L, lab, M, [1, 2, 1, 2]) == apply_word(L, lab, M, [2, 1, 2])
    bad = [k for k in want if got[k] != want[k]]
    return not bad and same, f"mismatched {bad or 'none'}; T2T1T2T1(M) = T2T1T2(M): {same}"


def criterion_3() -> tuple[bool, str]:
    L = build_lattice(from_spec(CORPUS["line124"]))
    flats = sorted(sorted(atoms_of(f)) for f in L.flats)
    want = sorted([[], [1], [2], [3], [4], [1, 2, 4], [1, 3], [2, 3], [3, 4], [1, 2, 3, 4]])
    fr = build_facet_ridge_graph(L)
    dec, inc = parse_chain(L, ";4;3,4;1,2,3,4"), parse_chain(L, ";1;1,2,4;1,2,3,4")
    d = distance(fr, dec, inc)
    lab = labeling(L)
    path = [lab.sequence(c) for c in straighten(L, lab, dec).path]
    ok = flats == want and d == 2 and path == [(4, 3, 1), (4, 1, 3), (1, 2, 3)] and inc == ascending_chain(L, lab)
    return ok, f"{len(flats)} flats; decreasing-to-increasing distance {d}; labels {path}"


def criterion_4() -> tuple[bool, str]:
    bad, n = [], 0
    for sid, L, _, orders in corpus_runs():
        for o in orders:
            n += 1
            for v in verify_el(L, o).violations:
                bad.append(f"{sid} order {o}: [{L.label(v.lo)}, {L.label(v.hi)}] {v.reason}")
    return first(bad, n, "lattice/order pairs")


def criterion_5() -> tuple[bool, str]:
    bad, got = [], {}
    for sid, L, fr, _ in corpus_runs():
        d, _ = diameter(fr)
        got[sid] = (d, math.comb(L.r, 2))
        if d > math.comb(L.r, 2):
            bad.append(f"{sid}: {d} > {math.comb(L.r, 2)}")
    ok, detail = first(bad, len(got), "lattices")
    return ok, detail + "; (diameter, C(r,2)) " + ", ".join(f"{k}={v}" for k, v in got.items())


def criterion_6() -> tuple[bool, str]:
    bad, n = [], 0
    for sid, L, fr, orders in corpus_runs():
        cap = math.comb(L.r, 2)
        for o in orders:
            asc = ascending_chain(L, o)
            for c in fr.chains:
                n += 1
                res = straighten(L, o, c)
                w = res.word
                if res.terminal != asc:
                    bad.append(f"{sid} {o}: wrong terminal")
                if not (is_reduced(w, L.r) and is_reduced_by_length(w, L.r)):
                    bad.append(f"{sid} {o}: word {w} not reduced")
                if len(w) > cap:
                    bad.append(f"{sid} {o}: length {len(w)} > {cap}")
    return first(bad, n, "chain/order pairs straightened")


def criterion_7() -> tuple[bool, str]:
    bad, n = [], 0
    for sid, L, fr, orders in corpus_runs():
        cap = math.comb(L.r, 2)
        for o in orders:
            n += 1
            lab = labeling(L, o)
            G = build_glex(L, lab, chains=fr.chains)
            ecc, _ = max_directed_eccentricity(G)
            rev = G.vertex(reversal_chain(L, lab))
            rd = directed_distances_to_sink(G)[rev]
            if ecc != cap or rd != cap:
                bad.append(f"{sid} {o}: max {ecc}, reversal {rd}, C(r,2) {cap}")
            bad.extend(f"{sid} {o}: {p}" for p in check_reversal_paths(G))
    return first(bad, n, "lattice/order pairs tight")


def criterion_8() -> tuple[bool, str]:
    bad, n = [], 0
    for k in range(9):
        for w in product((1, 2, 3), repeat=k):
            n += 1
            if is_reduced(w, 4) != (len(w) == inversions(evaluate(w, 4))):
                bad.append(str(w))
    fig1, fig2 = (1, 2, 3, 1, 2, 1), (1, 2, 1, 3, 1)
    if not is_reduced(fig1, 4) or evaluate(fig1, 4) != (4, 3, 2, 1):
        bad.append("longest-element word")
    if is_reduced(fig2, 4):
        bad.append("double-crossing word")
    return first(bad, n, "words in S_4 of length <= 8")


def criterion_9() -> tuple[bool, str]:
    bad, n = [], 0
    for sid, L, fr, orders in corpus_runs():
        for o in orders:
            n += 1
            lab = labeling(L, o)
            for check in (check_rearrangements, check_lexmin_rearrangement, check_label_independence):
                bad.extend(f"{sid} {o}: {p}" for p in check(L, lab))
            if L.r <= 5:
                asc = lab.sequence(ascending_chain(L, lab))
                realized = {lab.sequence(c) for c in fr.chains}
                if len(set(permutations(asc)) - realized):
                    bad.append(f"{sid} {o}: missing rearrangement")
            asc_set = set(lab.sequence(ascending_chain(L, lab)))
            G = build_glex(L, lab, chains=fr.chains)
            for e in G.edges:
                if set(lab.sequence(G.chains[e.src])) == asc_set and e.after != e.before[::-1]:
                    bad.append(f"{sid} {o}: descent {e.before} became {e.after}")
    return first(bad, n, "lattice/order pairs")


def criterion_10() -> tuple[bool, str]:
    bad, n, edges = [], 0, 0
    for sid, L, fr, orders in corpus_runs():
        for o in orders:
            n += 1
            P = build_descent_order(L, o, chains=fr.chains)
            cmp = check_hasse_equals_glex(L, o, order=P)
            edges += len(P.hasse_edges)
            if not cmp.equal:
                bad.append(f"{sid} {o}: Hasse-only {cmp.hasse_only}, G_lex-only {cmp.glex_only}")
    ok, detail = first(bad, n, "lattice/order pairs")
    return ok, f"{detail}; {edges} Hasse edges compared"


def criterion_11(tmp: Path) -> tuple[bool, str]:
    outs = []
    for k in (1, 2):
        f, s = tmp / f"findings{k}.csv", tmp / f"sharp{k}.csv"
        proc = subprocess.run(
            [sys.executable, "-m", "geolat", "sweep", "--seed", "42", "--csv", str(f), "--sharpness-csv", str(s)],
            capture_output=True, check=False,
        )
        if proc.returncode != 0:
            return False, f"sweep exited {proc.returncode}: {proc.stderr.decode()[:200]}"
        outs.append((f.read_bytes(), s.read_bytes()))
    same = outs[0] == outs[1]
    return same, f"findings {len(outs[0][0])} bytes, sharpness {len(outs[0][1])} bytes, identical: {same}"


CRITERIA: dict[int, Callable[..., tuple[bool, str]]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5, 6: criterion_6,
    7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10, 11: criterion_11,
}


def evaluate_criterion(k: int, tmp: Path) -> tuple[bool, str]:
    fn = CRITERIA[k]
    ok, detail = fn(tmp) if k == 11 else fn()
    RESULTS[k] = (ok, detail)
    return ok, detail


def line(k: int) -> str:
    ok, detail = RESULTS[k]
    return f"ACCEPTANCE {k:>2} {'PASS' if ok else 'FAIL'} {detail}"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, tmp_path):
    ok, _ = evaluate_criterion(k, tmp_path)
    print(line(k))
    assert ok, line(k)


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as d:
        for k in sorted(CRITERIA):
            evaluate_criterion(k, Path(d))
            print(line(k))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
