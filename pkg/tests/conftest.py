from __future__ import annotations

from itertools import combinations

import pytest

from geolat.labeling import parse_chain
from geolat.lattice import FlatsLattice, build_lattice
from geolat.matroid import Matroid, from_spec
from geolat.specfile import CORPUS


def lattice_of(spec_id: str) -> FlatsLattice:
    return build_lattice(from_spec(CORPUS[spec_id]))


@pytest.fixture(scope="session")
def corpus() -> dict[str, FlatsLattice]:
    return {sid: lattice_of(sid) for sid in CORPUS}


@pytest.fixture(scope="session")
def u34() -> FlatsLattice:
    return lattice_of("U34")


@pytest.fixture(scope="session")
def line124() -> FlatsLattice:
    return lattice_of("line124")


@pytest.fixture(scope="session")
def b3() -> FlatsLattice:
    return lattice_of("B3")


@pytest.fixture(scope="session")
def b4() -> FlatsLattice:
    return lattice_of("B4")


# chains used across the tests
U34_M = ";4;3,4;1,2,3,4"
L124_DECREASING = ";4;3,4;1,2,3,4"
L124_INCREASING = ";1;1,2,4;1,2,3,4"


def chain(L: FlatsLattice, text: str) -> tuple[int, ...]:
    return parse_chain(L, text)


# -- brute-force oracles, independent of the BFS flat enumeration --------------------------


def brute_flats(m: Matroid) -> list[int]:
    """Every subset S with r(S + x) > r(S) for all x outside S."""
    out = []
    for s in range(1 << m.n):
        rs = m.rank(s)
        if all(m.rank(s | 1 << x) > rs for x in range(m.n) if not s >> x & 1):
            out.append(s)
    return out


def brute_chain_count(m: Matroid) -> int:
    """Count rank-by-rank inclusion sequences of brute-force flats."""
    flats = brute_flats(m)
    rk = {f: m.rank(f) for f in flats}
    ways = {0: 1}
    for k in range(1, m.r + 1):
        level = [f for f in flats if rk[f] == k]
        ways = {
            g: sum(c for f, c in ways.items() if g & f == f) for g in level
        }
    return sum(ways.values())


def brute_adjacent(c1: tuple[int, ...], c2: tuple[int, ...]) -> bool:
    """Chains differ in exactly two flats of equal rank."""
    diff = set(c1) ^ set(c2)
    if len(diff) != 2:
        return False
    a, b = diff
    return (a in c1 and c1.index(a) == c2.index(b)) or (b in c1 and c1.index(b) == c2.index(a))


def set_partitions(n: int) -> int:
    """Bell number by enumerating partitions of range(n)."""

    def parts(items: list[int]) -> int:
        if not items:
            return 1
        first, rest = items[0], items[1:]
        total = 0
        for k in range(len(rest) + 1):
            for block in combinations(rest, k):
                total += parts([x for x in rest if x not in block])
        return total

    return parts(list(range(n)))


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS, line

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(line(k))
