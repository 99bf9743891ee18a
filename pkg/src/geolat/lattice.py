"""The lattice of flats: enumeration, covers, join/meet, intervals and axiom checks."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .config import DEFAULT_CAPS, Caps
from .errors import CapExceededError, InputError
from .matroid import Matroid, atoms_of


def _sort_key(mask: int, rank: int) -> tuple[int, tuple[int, ...]]:
    return rank, atoms_of(mask)


@dataclass(eq=False)
class FlatsLattice:
    """A finite lattice whose elements are atom sets ordered by inclusion.

    Elements are referred to by index into ``flats``; index 0 is the bottom
    and the last index the top. Flats are stored as bitmasks.
    """

    n: int
    flats: list[int]
    rank_of: list[int]
    covers_up: list[tuple[int, ...]]
    covers_down: list[tuple[int, ...]]
    matroid: Matroid | None = None
    memo_limit: int = DEFAULT_CAPS.memo_flats
    index: dict[int, int] = field(init=False, repr=False)
    _join_memo: dict[tuple[int, int], int] = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self) -> None:
        self.index = {f: i for i, f in enumerate(self.flats)}

    @classmethod
    def from_sets(
        cls,
        n: int,
        sets: Iterable[int],
        matroid: Matroid | None = None,
        memo_limit: int = DEFAULT_CAPS.memo_flats,
    ) -> FlatsLattice:
        """Inclusion order on an explicit family of bitmasks.

        Rank is the length of the longest chain from a minimal element, so a
        non-graded family still gets a well-defined (if inconsistent) rank.
        """
        family = sorted(set(sets), key=lambda m: (m.bit_count(), m))
        ups: dict[int, list[int]] = {f: [] for f in family}
        for i, u in enumerate(family):
            above = [v for v in family[i + 1 :] if v & u == u and v != u]
            for v in above:
                if not any(w != v and w & u == u and v & w == w for w in above):
                    ups[u].append(v)
        rank = {f: 0 for f in family}
        for u in family:  # sizes strictly increase along inclusion
            for v in ups[u]:
                rank[v] = max(rank[v], rank[u] + 1)
        return cls._assemble(n, rank, ups, matroid, memo_limit)

    @classmethod
    def _assemble(
        cls,
        n: int,
        rank: dict[int, int],
        ups: dict[int, list[int]],
        matroid: Matroid | None,
        memo_limit: int,
    ) -> FlatsLattice:
        flats = sorted(rank, key=lambda f: _sort_key(f, rank[f]))
        idx = {f: i for i, f in enumerate(flats)}
        covers_up = [tuple(sorted(idx[g] for g in ups[f])) for f in flats]
        down: list[list[int]] = [[] for _ in flats]
        for i, cs in enumerate(covers_up):
            for j in cs:
                down[j].append(i)
        return cls(
            n=n,
            flats=flats,
            rank_of=[rank[f] for f in flats],
            covers_up=covers_up,
            covers_down=[tuple(sorted(d)) for d in down],
            matroid=matroid,
            memo_limit=memo_limit,
        )

    def __len__(self) -> int:
        return len(self.flats)

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return len(self.flats) - 1

    @property
    def r(self) -> int:
        return self.rank_of[self.top]

    def leq(self, u: int, v: int) -> bool:
        fu = self.flats[u]
        return self.flats[v] & fu == fu

    def covers(self, u: int, v: int) -> bool:
        return v in self.covers_up[u]

    def close(self, mask: int) -> int:
        """Smallest element containing ``mask``, as a bitmask."""
        if self.matroid is not None and self.flats[0] == 0:
            return self.matroid.closure(mask)
        out = -1
        for f in self.flats:
            if f & mask == mask:
                out &= f
        if out == -1:
            raise InputError(f"no element contains {atoms_of(mask)}")
        return out

    def join(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        key = (u, v)
        memo = len(self.flats) <= self.memo_limit
        if memo and key in self._join_memo:
            return self._join_memo[key]
        j = self.index.get(self.close(self.flats[u] | self.flats[v]))
        if j is None:
            raise InputError("join is not an element of the family")
        if memo:
            self._join_memo[key] = j
        return j

    def meet(self, u: int, v: int) -> int:
        m = self.index.get(self.flats[u] & self.flats[v])
        if m is None:
            raise InputError("family is not intersection-closed; meet undefined")
        return m

    def join_mask(self, mask: int) -> int:
        """Index of the join of the atoms in ``mask``."""
        return self.index[self.close(mask)]

    def atom_set(self, u: int) -> frozenset[int]:
        return frozenset(atoms_of(self.flats[u]))

    def atoms(self) -> list[int]:
        return [i for i in range(len(self.flats)) if self.rank_of[i] == self.rank_of[0] + 1]

    def atom_flat(self, a: int) -> int:
        """Index of the rank-1 flat {a} (simple matroids only)."""
        return self.index[1 << (a - 1)]

    def label(self, u: int) -> str:
        return "{" + ",".join(map(str, atoms_of(self.flats[u]))) + "}"


def build_lattice(m: Matroid, caps: Caps = DEFAULT_CAPS) -> FlatsLattice:
    """Enumerate the flats of ``m`` rank by rank, closing flat + atom for every missing atom."""
    rank = {0: 0}
    ups: dict[int, list[int]] = {}
    level = [0]
    k = 0
    while level:
        nxt: dict[int, None] = {}
        for f in level:
            found: dict[int, None] = {}
            for x in range(m.n):
                bit = 1 << x
                if not f & bit:
                    found.setdefault(m.closure(f | bit))
            ups[f] = list(found)
            for g in found:
                nxt.setdefault(g)
        k += 1
        for g in nxt:
            rank[g] = k
        if len(rank) > caps.flats:
            raise CapExceededError(f"flat count exceeds cap {caps.flats}")
        level = list(nxt)
    return FlatsLattice._assemble(m.n, rank, ups, m, caps.memo_flats)


def join(L: FlatsLattice, u: int, v: int) -> int:
    return L.join(u, v)


def meet(L: FlatsLattice, u: int, v: int) -> int:
    return L.meet(u, v)


def atoms(L: FlatsLattice) -> list[int]:
    return L.atoms()


def atom_set(L: FlatsLattice, u: int) -> frozenset[int]:
    return L.atom_set(u)


@dataclass(frozen=True)
class Interval:
    lattice: FlatsLattice
    lo: int
    hi: int
    elements: tuple[int, ...]

    def covers_up(self, u: int) -> tuple[int, ...]:
        return tuple(v for v in self.lattice.covers_up[u] if self.lattice.leq(v, self.hi))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, u: object) -> bool:
        return u in self.elements

    def to_lattice(self) -> FlatsLattice:
        L = self.lattice
        return FlatsLattice.from_sets(L.n, [L.flats[e] for e in self.elements])


def interval(L: FlatsLattice, lo: int, hi: int) -> Interval:
    if not L.leq(lo, hi):
        raise InputError(f"{L.label(lo)} is not below {L.label(hi)}")
    elems = tuple(i for i in range(len(L)) if L.leq(lo, i) and L.leq(i, hi))
    return Interval(L, lo, hi, elems)


AXIOMS = ("bounded", "graded", "atomic", "semimodular")


@dataclass
class GeometricReport:
    results: dict[str, bool]
    witnesses: dict[str, str]

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def failed(self) -> list[str]:
        return [a for a in AXIOMS if not self.results[a]]

    def summary(self) -> str:
        if self.ok:
            return "all axioms hold"
        return "; ".join(f"{a} fails: {self.witnesses[a]}" for a in self.failed())


def verify_geometric(L: FlatsLattice) -> GeometricReport:
    """Check bounded, graded, atomic and semimodular, keeping one witness per failure."""
    results = dict.fromkeys(AXIOMS, True)
    wit: dict[str, str] = {}
    n = len(L)

    mins = [i for i in range(n) if not L.covers_down[i]]
    maxs = [i for i in range(n) if not L.covers_up[i]]
    if len(mins) != 1 or len(maxs) != 1:
        results["bounded"] = False
        wit["bounded"] = (
            f"minimal elements {[L.label(i) for i in mins]}, maximal elements {[L.label(i) for i in maxs]}"
        )

    for u in range(n):
        bad = [v for v in L.covers_up[u] if L.rank_of[v] != L.rank_of[u] + 1]
        if bad:
            results["graded"] = False
            wit["graded"] = f"cover {L.label(u)} < {L.label(bad[0])} skips a rank"
            break

    base = L.rank_of[mins[0]] if mins else 0
    atom_ids = [i for i in range(n) if L.rank_of[i] == base + 1]
    for u in range(n):
        if L.rank_of[u] <= base + 1:
            continue
        below = 0
        for a in atom_ids:
            if L.leq(a, u):
                below |= L.flats[a]
        try:
            j = L.index.get(L.close(below)) if below else mins[0]
        except InputError:
            j = None
        if j != u:
            results["atomic"] = False
            wit["atomic"] = f"{L.label(u)} is not the join of the atoms below it"
            break

    for x in range(n):
        ups = L.covers_up[x]
        hit = None
        for i, y in enumerate(ups):
            for y2 in ups[i + 1 :]:
                if not set(L.covers_up[y]) & set(L.covers_up[y2]):
                    hit = (y, y2)
                    break
            if hit:
                break
        if hit:
            results["semimodular"] = False
            wit["semimodular"] = (
                f"{L.label(hit[0])} and {L.label(hit[1])} both cover {L.label(x)} but have no common upper cover"
            )
            break
    return GeometricReport(results, wit)


def lattice_summary(L: FlatsLattice) -> dict[str, object]:
    return {
        "rank": L.r,
        "flats": [list(atoms_of(f)) for f in L.flats],
        "ranks": list(L.rank_of),
        "covers": [[u, v] for u in range(len(L)) for v in L.covers_up[u]],
    }


def flats_by_rank(L: FlatsLattice) -> list[list[int]]:
    out: list[list[int]] = [[] for _ in range(L.r + 1)]
    for i, k in enumerate(L.rank_of):
        if 0 <= k <= L.r:
            out[k].append(i)
    return out


def chain_from_sets(L: FlatsLattice, sets: Sequence[Iterable[int]]) -> tuple[int, ...]:
    """Flat indices for a chain written as atom lists; raises InputError on unknown flats."""
    from .matroid import mask_of

    out = []
    for s in sets:
        idx = L.index.get(mask_of(s))
        if idx is None:
            raise InputError(f"{sorted(s)} is not a flat of this lattice")
        out.append(idx)
    return tuple(out)
