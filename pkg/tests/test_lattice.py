from __future__ import annotations

import random

import pytest

from geolat.config import Caps
from geolat.errors import CapExceededError, InputError
from geolat.lattice import FlatsLattice, atom_set, atoms, build_lattice, interval, join, meet, verify_geometric
from geolat.matroid import atoms_of, from_spec, make_graphic, make_uniform, mask_of
from geolat.specfile import CORPUS, LINE124_FLATS

from .conftest import brute_flats, set_partitions


def labels(L):
    return [sorted(atoms_of(f)) for f in L.flats]


def test_u34_flats(u34):
    assert len(u34) == 12
    assert sorted({len(f) for f in labels(u34)}) == [0, 1, 2, 4]
    assert u34.r == 3


def test_boolean_b3(b3):
    assert len(b3) == 8
    assert [b3.rank_of[i] for i in range(8)] == [0, 1, 1, 1, 2, 2, 2, 3]


def test_line124_matches_hasse_diagram(line124):
    assert labels(line124) == [[], [1], [2], [3], [4], [1, 2, 4], [1, 3], [2, 3], [3, 4], [1, 2, 3, 4]]
    covers = {(line124.label(u), line124.label(v)) for u in range(len(line124)) for v in line124.covers_up[u]}
    drawn = {
        ("{}", "{1}"), ("{}", "{2}"), ("{}", "{3}"), ("{}", "{4}"),
        ("{1}", "{1,2,4}"), ("{2}", "{1,2,4}"), ("{4}", "{1,2,4}"),
        ("{1}", "{1,3}"), ("{3}", "{1,3}"), ("{2}", "{2,3}"), ("{3}", "{2,3}"),
        ("{3}", "{3,4}"), ("{4}", "{3,4}"),
        ("{1,2,4}", "{1,2,3,4}"), ("{1,3}", "{1,2,3,4}"), ("{2,3}", "{1,2,3,4}"), ("{3,4}", "{1,2,3,4}"),
    }
    assert covers == drawn


def test_k4_is_partition_lattice():
    L = build_lattice(from_spec(CORPUS["K4"]))
    assert len(L) == set_partitions(4) == 15
    assert L.r == 3


@pytest.mark.parametrize("spec_id", sorted(CORPUS))
def test_bfs_enumeration_matches_brute_force(spec_id):
    m = from_spec(CORPUS[spec_id])
    L = build_lattice(m)
    assert sorted(L.flats) == sorted(brute_flats(m))
    for i, f in enumerate(L.flats):
        assert L.rank_of[i] == m.rank(f)
    # canonical order: (rank, atom tuple)
    keys = [(L.rank_of[i], atoms_of(f)) for i, f in enumerate(L.flats)]
    assert keys == sorted(keys)


@pytest.mark.parametrize("spec_id", sorted(CORPUS))
def test_covers_are_exactly_rank_one_inclusions(spec_id):
    L = build_lattice(from_spec(CORPUS[spec_id]))
    for u in range(len(L)):
        want = [
            v for v in range(len(L))
            if v != u and L.leq(u, v) and L.rank_of[v] == L.rank_of[u] + 1
        ]
        assert list(L.covers_up[u]) == want


def test_join_meet_examples(u34, line124):
    one, two = u34.atom_flat(1), u34.atom_flat(2)
    assert u34.label(join(u34, one, two)) == "{1,2}"
    assert line124.label(join(line124, line124.atom_flat(1), line124.atom_flat(2))) == "{1,2,4}"
    for L in (u34, line124):
        for u in range(len(L)):
            assert meet(L, u, L.bottom) == L.bottom


@pytest.mark.parametrize("spec_id", sorted(CORPUS))
def test_join_meet_laws(spec_id):
    L = build_lattice(from_spec(CORPUS[spec_id]))
    rng = random.Random(7)
    n = len(L)
    for _ in range(300):
        a, b, c = (rng.randrange(n) for _ in range(3))
        assert join(L, a, b) == join(L, b, a)
        assert meet(L, a, b) == meet(L, b, a)
        assert join(L, a, a) == a and meet(L, a, a) == a
        assert join(L, join(L, a, b), c) == join(L, a, join(L, b, c))
        assert meet(L, meet(L, a, b), c) == meet(L, a, meet(L, b, c))
        j = join(L, a, b)
        assert L.leq(a, j) and L.leq(b, j)
        # least: any common upper bound is above j
        for u in range(n):
            if L.leq(a, u) and L.leq(b, u):
                assert L.leq(j, u)


def test_join_without_memo_matches():
    m = from_spec(CORPUS["K4"])
    small = build_lattice(m, Caps(memo_flats=0))
    big = build_lattice(m)
    for a in range(len(big)):
        for b in range(len(big)):
            assert small.join(a, b) == big.join(a, b)
    assert small._join_memo == {}


@pytest.mark.parametrize("spec_id", sorted(CORPUS))
def test_geometric_axioms_hold(spec_id):
    rep = verify_geometric(build_lattice(from_spec(CORPUS[spec_id])))
    assert rep.ok, rep.summary()


def test_non_atomic_fixture_is_named():
    # 0 < {1} < {1,2} < {1,2,3}: the only atom is {1}, so {1,2} is not a join of atoms
    L = FlatsLattice.from_sets(3, [0, 0b1, 0b11, 0b111])
    rep = verify_geometric(L)
    assert rep.failed() == ["atomic"]
    assert "{1,2}" in rep.witnesses["atomic"]


def test_non_semimodular_witness():
    sets = [f for f in brute_flats(make_uniform(3, 4)) if f != mask_of({1, 2})]
    rep = verify_geometric(FlatsLattice.from_sets(4, sets))
    assert rep.failed() == ["semimodular"]
    assert "{1} and {2}" in rep.witnesses["semimodular"]


def test_unbounded_and_ungraded_detected():
    rep = verify_geometric(FlatsLattice.from_sets(2, [0b01, 0b10]))
    assert not rep.results["bounded"]
    # 0 < {1} < {1,2} < {1,2,3} and 0 < {3} < {1,2,3}: covers skip a rank
    rep = verify_geometric(FlatsLattice.from_sets(3, [0, 0b001, 0b011, 0b100, 0b111]))
    assert not rep.results["graded"]


def test_atoms(u34, b4, line124):
    assert len(atoms(u34)) == 4
    assert len(atoms(b4)) == 4
    assert atom_set(line124, line124.index[mask_of({1, 2, 4})]) == {1, 2, 4}


def test_interval_examples(u34):
    whole = interval(u34, u34.bottom, u34.top)
    assert whole.elements == tuple(range(len(u34)))
    one = u34.atom_flat(1)
    iv = interval(u34, one, u34.top)
    brute = [i for i in range(len(u34)) if u34.flats[one] & ~u34.flats[i] == 0]
    assert list(iv.elements) == brute
    assert sorted(u34.label(i) for i in iv.elements) == ["{1,2,3,4}", "{1,2}", "{1,3}", "{1,4}", "{1}"]
    assert interval(u34, 5, 5).elements == (5,)
    with pytest.raises(InputError):
        interval(u34, u34.top, u34.bottom)


def test_interval_round_trip(line124):
    iv = interval(line124, line124.bottom, line124.top).to_lattice()
    assert iv.flats == line124.flats
    assert iv.covers_up == line124.covers_up


@pytest.mark.parametrize("spec_id", sorted(CORPUS))
def test_upper_intervals_are_geometric(spec_id):
    L = build_lattice(from_spec(CORPUS[spec_id]))
    for u in range(len(L)):
        assert verify_geometric(interval(L, u, L.top).to_lattice()).ok


def test_flat_cap():
    with pytest.raises(CapExceededError):
        build_lattice(make_uniform(4, 8), Caps(flats=20))


def test_degenerate_ranks():
    L1 = build_lattice(make_graphic(2, [[1, 2]]))
    assert L1.r == 1 and len(L1) == 2
    assert verify_geometric(L1).ok
    L0 = FlatsLattice.from_sets(1, [0])
    assert L0.r == 0 and verify_geometric(L0).ok


def test_line124_flats_constant_is_fixture():
    assert sorted(map(sorted, LINE124_FLATS)) == sorted(labels(build_lattice(from_spec(CORPUS["line124"]))))
