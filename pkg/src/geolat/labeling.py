"""Minimal labelings induced by atom orders, maximal chains, and EL verification."""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import permutations
from weakref import WeakKeyDictionary

from .config import DEFAULT_CAPS
from .errors import CapExceededError, InputError
from .lattice import FlatsLattice, Interval, interval
from .matroid import atoms_of, mask_of

Chain = tuple[int, ...]
LabelSeq = tuple[int, ...]


@dataclass(frozen=True)
class AtomOrder:
    """A total order on the atoms 1..n, listed from smallest to largest."""

    order: tuple[int, ...]
    position_of: dict[int, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        order = tuple(int(a) for a in self.order)
        if sorted(order) != list(range(1, len(order) + 1)):
            raise InputError(f"atom order {list(order)} is not a permutation of 1..{len(order)}")
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "position_of", {a: i for i, a in enumerate(order)})

    @classmethod
    def natural(cls, n: int) -> AtomOrder:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> AtomOrder:
        try:
            return cls(tuple(int(t) for t in text.split(",") if t.strip()))
        except ValueError:
            raise InputError(f"cannot parse atom order {text!r}") from None

    @property
    def n(self) -> int:
        return len(self.order)

    def key(self, seq: Iterable[int]) -> tuple[int, ...]:
        """Positions of ``seq`` under this order; compares sequences lexicographically."""
        pos = self.position_of
        return tuple(pos[a] for a in seq)

    def __str__(self) -> str:
        return ",".join(map(str, self.order))


class MinimalLabeling:
    """Labels every cover u < v by the order-least atom of A(v) minus A(u)."""

    def __init__(self, L: FlatsLattice, order: AtomOrder):
        if order.n != L.n:
            raise InputError(f"atom order has {order.n} atoms, lattice has {L.n}")
        self.lattice = L
        self.order = order
        self.labels: dict[tuple[int, int], int] = {}
        ranked = [1 << (a - 1) for a in order.order]
        for u, ups in enumerate(L.covers_up):
            fu = L.flats[u]
            for v in ups:
                diff = L.flats[v] & ~fu
                bit = next(b for b in ranked if diff & b)
                self.labels[u, v] = bit.bit_length()

    def __call__(self, u: int, v: int) -> int:
        try:
            return self.labels[u, v]
        except KeyError:
            L = self.lattice
            raise InputError(f"{L.label(u)} is not covered by {L.label(v)}") from None

    def sequence(self, chain: Sequence[int]) -> LabelSeq:
        return tuple(self(chain[k], chain[k + 1]) for k in range(len(chain) - 1))

    def key(self, chain: Sequence[int]) -> tuple[int, ...]:
        return self.order.key(self.sequence(chain))

    def copy(self) -> MinimalLabeling:
        dup = object.__new__(MinimalLabeling)
        dup.lattice, dup.order, dup.labels = self.lattice, self.order, dict(self.labels)
        return dup


_CACHE: WeakKeyDictionary[FlatsLattice, dict[tuple[int, ...], MinimalLabeling]] = WeakKeyDictionary()


def labeling(L: FlatsLattice, ord: AtomOrder | MinimalLabeling | None = None) -> MinimalLabeling:
    """The minimal labeling of ``L`` for ``ord`` (natural order by default), cached per lattice."""
    if isinstance(ord, MinimalLabeling):
        return ord
    if ord is None:
        ord = AtomOrder.natural(L.n)
    per = _CACHE.setdefault(L, {})
    lab = per.get(ord.order)
    if lab is None:
        lab = per[ord.order] = MinimalLabeling(L, ord)
    return lab


def minimal_label(L: FlatsLattice, ord: AtomOrder | MinimalLabeling, u: int, v: int) -> int:
    return labeling(L, ord)(u, v)


def label_sequence(L: FlatsLattice, ord: AtomOrder | MinimalLabeling, chain: Sequence[int]) -> LabelSeq:
    lab = labeling(L, ord)
    if not is_maximal_chain(L, chain):
        raise InputError("not a maximal chain")
    return lab.sequence(chain)


def is_maximal_chain(L: FlatsLattice, chain: Sequence[int]) -> bool:
    if len(chain) != L.r + 1 or chain[0] != L.bottom or chain[-1] != L.top:
        return False
    return all(L.covers(chain[k], chain[k + 1]) for k in range(len(chain) - 1))


def saturated_chains(L: FlatsLattice, lo: int, hi: int, cap: int = DEFAULT_CAPS.chains) -> list[Chain]:
    """All saturated chains lo < ... < hi, in lexicographic order of index tuples."""
    out: list[Chain] = []
    path = [lo]

    def walk(u: int) -> None:
        if u == hi:
            out.append(tuple(path))
            if len(out) > cap:
                raise CapExceededError(f"more than {cap} saturated chains")
            return
        for w in L.covers_up[u]:
            if L.leq(w, hi):
                path.append(w)
                walk(w)
                path.pop()

    if L.leq(lo, hi):
        walk(lo)
    return out


def enumerate_maximal_chains(L: FlatsLattice, cap: int = DEFAULT_CAPS.chains) -> list[Chain]:
    return saturated_chains(L, L.bottom, L.top, cap)


def descents(seq: Sequence[int], ord: AtomOrder) -> list[int]:
    """1-based positions i with seq[i] > seq[i+1] (1-based) under ``ord``; ascents are <=."""
    k = ord.key(seq)
    return [i + 1 for i in range(len(k) - 1) if not k[i] <= k[i + 1]]


def ascending_chain(
    L: FlatsLattice, ord: AtomOrder | MinimalLabeling, iv: Interval | None = None
) -> Chain:
    """Greedy walk up ``iv`` (the whole lattice by default) always taking the least label."""
    lab = labeling(L, ord)
    pos = lab.order.position_of
    lo, hi = (L.bottom, L.top) if iv is None else (iv.lo, iv.hi)
    chain = [lo]
    u = lo
    while u != hi:
        u = min(
            (w for w in L.covers_up[u] if L.leq(w, hi)),
            key=lambda w: (pos[lab(chain[-1], w)], w),
        )
        chain.append(u)
    return tuple(chain)


def is_weakly_ascending(key: Sequence[int]) -> bool:
    return all(key[i] <= key[i + 1] for i in range(len(key) - 1))


@dataclass(frozen=True)
class ELViolation:
    lo: int
    hi: int
    reason: str
    witness: tuple[Chain, ...]


@dataclass
class ELReport:
    intervals_checked: int = 0
    violations: list[ELViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_el(
    L: FlatsLattice,
    ord: AtomOrder | MinimalLabeling | None = None,
    interval_cap: int = DEFAULT_CAPS.interval_chains,
) -> ELReport:
    """Check both EL conditions on every interval [u, v] with u < v."""
    lab = labeling(L, ord)
    report = ELReport()
    memo: dict[tuple[int, int], list[Chain]] = {}

    def chains(u: int, v: int) -> list[Chain]:
        got = memo.get((u, v))
        if got is None:
            if u == v:
                got = [(u,)]
            else:
                got = [(u, *rest) for w in L.covers_up[u] if L.leq(w, v) for rest in chains(w, v)]
            if len(got) > interval_cap:
                raise CapExceededError(f"interval has more than {interval_cap} saturated chains")
            memo[u, v] = got
        return got

    # bottom-up by the upper end so memoized sub-intervals are reused
    for v in range(len(L)):
        for u in range(len(L)):
            if u == v or not L.leq(u, v):
                continue
            report.intervals_checked += 1
            cs = chains(u, v)
            keys = [lab.key(c) for c in cs]
            asc = [i for i, k in enumerate(keys) if is_weakly_ascending(k)]
            if len(asc) != 1:
                report.violations.append(
                    ELViolation(u, v, f"{len(asc)} weakly ascending chains", tuple(cs[i] for i in asc))
                )
                continue
            a = asc[0]
            for i, k in enumerate(keys):
                if i != a and not keys[a] < k:
                    report.violations.append(
                        ELViolation(u, v, "ascending chain is not strictly lex-first", (cs[a], cs[i]))
                    )
                    break
    return report


def format_chain(L: FlatsLattice, chain: Sequence[int]) -> str:
    """``;4;3,4;1,2,3,4`` style: flats separated by ';', atoms by ','."""
    return ";".join(",".join(map(str, atoms_of(L.flats[u]))) for u in chain)


def parse_chain(L: FlatsLattice, text: str) -> Chain:
    out = []
    for tok in text.split(";"):
        try:
            atoms = [int(t) for t in tok.split(",") if t.strip()]
        except ValueError:
            raise InputError(f"cannot parse chain {text!r}") from None
        idx = L.index.get(mask_of(atoms))
        if idx is None:
            raise InputError(f"{{{','.join(map(str, atoms))}}} is not a flat")
        out.append(idx)
    chain = tuple(out)
    if not is_maximal_chain(L, chain):
        raise InputError(f"{text!r} is not a maximal chain")
    return chain


def chain_with_labels(L: FlatsLattice, lab: MinimalLabeling, labels: Sequence[int]) -> Chain:
    """The chain 0 < a1 < a1 v a2 < ... built by successive joins of ``labels``."""
    chain = [L.bottom]
    mask = 0
    for a in labels:
        mask |= 1 << (a - 1)
        chain.append(L.join_mask(mask))
    return tuple(chain)


# -- label properties over all maximal chains ---------------------------------------------


def _label_rank(L: FlatsLattice, labels: Iterable[int]) -> int:
    mask = mask_of(labels)
    if L.matroid is not None:
        return L.matroid.rank(mask)
    return L.rank_of[L.join_mask(mask)]


def check_label_independence(L: FlatsLattice, ord: AtomOrder | MinimalLabeling) -> list[str]:
    """Labels on every maximal chain are distinct and span rank r."""
    lab = labeling(L, ord)
    bad = []
    for c in enumerate_maximal_chains(L):
        seq = lab.sequence(c)
        if len(set(seq)) != len(seq) or _label_rank(L, seq) != L.r:
            bad.append(f"chain {format_chain(L, c)} labels {seq} are not independent")
    return bad


def check_rearrangements(L: FlatsLattice, ord: AtomOrder | MinimalLabeling, max_rank: int = 5) -> list[str]:
    """Every permutation of the ascending label sequence is realized by some maximal chain."""
    if L.r > max_rank:
        return []
    lab = labeling(L, ord)
    realized = {lab.sequence(c) for c in enumerate_maximal_chains(L)}
    asc = lab.sequence(ascending_chain(L, lab))
    missing = [p for p in permutations(asc) if p not in realized]
    return [f"rearrangement {p} of {asc} is not a chain label sequence" for p in missing]


def check_lexmin_rearrangement(L: FlatsLattice, ord: AtomOrder | MinimalLabeling) -> list[str]:
    """A chain's increasing rearrangement is realized iff it is the lex-least such rearrangement."""
    lab = labeling(L, ord)
    pos = lab.order.position_of
    seqs = [lab.sequence(c) for c in enumerate_maximal_chains(L)]
    realized = set(seqs)
    rearr = {tuple(sorted(s, key=pos.__getitem__)) for s in seqs}
    least = min(rearr, key=lab.order.key)
    bad = []
    for s in sorted(rearr, key=lab.order.key):
        if (s in realized) != (s == least):
            bad.append(f"increasing rearrangement {s}: realized={s in realized}, lex-least={s == least}")
    return bad


def all_orders(n: int) -> list[AtomOrder]:
    return [AtomOrder(p) for p in permutations(range(1, n + 1))]


def count_orders(n: int) -> int:
    return math.factorial(n)


def check_ascending_greedy(L: FlatsLattice, ord: AtomOrder | MinimalLabeling) -> list[str]:
    """Greedy ascending chain equals the exhaustively found one on every interval."""
    lab = labeling(L, ord)
    bad = []
    for v in range(len(L)):
        for u in range(len(L)):
            if u == v or not L.leq(u, v):
                continue
            cs = saturated_chains(L, u, v)
            asc = [c for c in cs if is_weakly_ascending(lab.key(c))]
            greedy = ascending_chain(L, lab, interval(L, u, v))
            if asc != [greedy]:
                bad.append(f"interval [{L.label(u)}, {L.label(v)}]: greedy {greedy}, exhaustive {asc}")
    return bad
