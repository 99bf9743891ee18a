"""Simple matroids on the ground set {1, ..., n} with rank and closure oracles.

Subsets of the ground set are handled internally as bitmasks (atom ``a`` is bit
``a - 1``); the public helpers accept any iterable of atoms.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .config import DEFAULT_CAPS
from .errors import InputError

KINDS = ("uniform", "graphic", "linear", "flats")
SMALL_PRIMES = (2, 3, 5, 7)


def mask_of(atoms: Iterable[int]) -> int:
    m = 0
    for a in atoms:
        m |= 1 << (a - 1)
    return m


def atoms_of(mask: int) -> tuple[int, ...]:
    """Sorted atoms of a bitmask."""
    out = []
    a = 1
    while mask:
        if mask & 1:
            out.append(a)
        mask >>= 1
        a += 1
    return tuple(out)


def _as_mask(s: int | Iterable[int]) -> int:
    return s if isinstance(s, int) else mask_of(s)


@dataclass(frozen=True, eq=False)
class Matroid:
    """An immutable simple matroid given by a rank oracle.

    ``params`` holds the constructor arguments in the JSON shape of a
    ``matroid-spec v1`` document, so ``to_spec`` round-trips.
    """

    n: int
    kind: str
    params: dict[str, Any]
    _rank_mask: Callable[[int], int] = field(repr=False)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def ground(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    def rank(self, s: int | Iterable[int]) -> int:
        mask = _as_mask(s)
        if mask & ~self.full:
            raise InputError(f"subset {atoms_of(mask)} is not inside the ground set 1..{self.n}")
        return self._rank_mask(mask)

    def closure(self, s: int | Iterable[int]) -> int:
        """Closure of ``s`` as a bitmask."""
        mask = _as_mask(s)
        r = self.rank(mask)
        out = mask
        for x in range(self.n):
            bit = 1 << x
            if not mask & bit and self._rank_mask(mask | bit) == r:
                out |= bit
        return out

    @property
    def r(self) -> int:
        return self._rank_mask(self.full)

    def to_spec(self) -> dict[str, Any]:
        return {"kind": self.kind, **self.params}

    def __repr__(self) -> str:
        return f"Matroid(kind={self.kind!r}, n={self.n}, rank={self.r})"


def rank(m: Matroid, s: int | Iterable[int]) -> int:
    return m.rank(s)


def closure(m: Matroid, s: int | Iterable[int]) -> frozenset[int]:
    return frozenset(atoms_of(m.closure(s)))


def _check_size(n: int, cap: int) -> None:
    if n < 1:
        raise InputError("ground set must contain at least one atom")
    if n > cap:
        raise InputError(f"ground set of {n} atoms exceeds the configured cap of {cap}")


def _require_simple(m: Matroid) -> Matroid:
    for x in range(1, m.n + 1):
        if m.rank(1 << (x - 1)) != 1:
            raise InputError(f"not simple: atom {x} is a loop")
    for x, y in combinations(range(1, m.n + 1), 2):
        if m.rank(mask_of((x, y))) != 2:
            raise InputError(f"not simple: atoms {x} and {y} are parallel")
    return m


def make_uniform(k: int, n: int, cap: int = DEFAULT_CAPS.atoms) -> Matroid:
    """The uniform matroid U(k, n): every k-subset is a basis."""
    _check_size(n, cap)
    if k < 2:
        raise InputError(f"uniform matroid of rank {k} < 2 is not simple")
    if k > n:
        raise InputError(f"uniform matroid rank {k} exceeds its size {n}")

    def rank_mask(mask: int) -> int:
        return min(mask.bit_count(), k)

    return Matroid(n, "uniform", {"rank": k, "elements": n}, rank_mask)


def make_graphic(vertices: int, edges: Sequence[Sequence[int]], cap: int = DEFAULT_CAPS.atoms) -> Matroid:
    """Cycle matroid of a simple graph; atom ``i`` is ``edges[i - 1]`` (vertices are 1-based)."""
    _check_size(len(edges), cap)
    if vertices < 1:
        raise InputError("graph needs at least one vertex")
    seen: dict[frozenset[int], int] = {}
    pairs = []
    for idx, e in enumerate(edges, start=1):
        if len(e) != 2:
            raise InputError(f"edge {idx} must be a vertex pair, got {list(e)}")
        u, v = int(e[0]), int(e[1])
        for w in (u, v):
            if not 1 <= w <= vertices:
                raise InputError(f"edge {idx} uses vertex {w} outside 1..{vertices}")
        if u == v:
            raise InputError(f"not simple: edge {idx} is a loop at vertex {u}")
        key = frozenset((u, v))
        if key in seen:
            raise InputError(f"not simple: edges {seen[key]} and {idx} are parallel ({u}-{v})")
        seen[key] = idx
        pairs.append((u - 1, v - 1))

    def rank_mask(mask: int) -> int:
        parent = list(range(vertices))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        joined = 0
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
                    joined += 1
        return joined

    params = {"vertices": vertices, "edges": [[u + 1, v + 1] for u, v in pairs]}
    return _require_simple(Matroid(len(pairs), "graphic", params, rank_mask))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def span_rank(vectors: Iterable[Sequence[int]], p: int) -> int:
    """Dimension of the span of ``vectors`` over GF(p), by elimination."""
    basis: dict[int, list[int]] = {}  # pivot column -> row normalized to 1 there
    for vec in vectors:
        row = [x % p for x in vec]
        for col, brow in basis.items():
            c = row[col]
            if c:
                row = [(a - c * b) % p for a, b in zip(row, brow)]
        pivot = next((j for j, x in enumerate(row) if x), None)
        if pivot is None:
            continue
        inv = pow(row[pivot], p - 2, p)
        row = [x * inv % p for x in row]
        for col, brow in list(basis.items()):
            c = brow[pivot]
            if c:
                basis[col] = [(a - c * b) % p for a, b in zip(brow, row)]
        basis[pivot] = row
    return len(basis)


def make_linear(p: int, vectors: Sequence[Sequence[int]], cap: int = DEFAULT_CAPS.atoms) -> Matroid:
    """Matroid of a vector configuration over GF(p); atom ``i`` is ``vectors[i - 1]``."""
    if not _is_prime(p):
        raise InputError(f"{p} is not prime")
    if p > 7:
        raise InputError(f"prime {p} is above the supported maximum 7")
    _check_size(len(vectors), cap)
    dims = {len(v) for v in vectors}
    if len(dims) != 1 or 0 in dims:
        raise InputError("all vectors must have the same positive length")
    vecs = [tuple(int(x) % p for x in v) for v in vectors]
    for i, v in enumerate(vecs, start=1):
        if not any(v):
            raise InputError(f"not simple: vector {i} is zero (a loop)")

    def rank_mask(mask: int) -> int:
        return span_rank((v for i, v in enumerate(vecs) if mask >> i & 1), p)

    params = {"prime": p, "vectors": [[int(x) for x in v] for v in vectors]}
    return _require_simple(Matroid(len(vecs), "linear", params, rank_mask))


def make_from_flats(ground: int, flats: Iterable[Iterable[int]], cap: int = DEFAULT_CAPS.atoms) -> Matroid:
    """Matroid whose flats are exactly ``flats``.

    The family must contain the empty set and the full ground set, be closed
    under intersection, and its inclusion order must be a geometric lattice
    whose atoms are the singletons.
    """
    from .lattice import FlatsLattice, verify_geometric

    _check_size(ground, cap)
    full = (1 << ground) - 1
    masks = []
    for f in flats:
        f = list(f)
        for a in f:
            if not 1 <= a <= ground:
                raise InputError(f"flat {sorted(f)} mentions atom {a} outside 1..{ground}")
        masks.append(mask_of(f))
    family = sorted(set(masks))
    if len(family) != len(masks):
        raise InputError("flat list contains duplicates")
    if 0 not in family:
        raise InputError("flat list must contain the empty set")
    if full not in family:
        raise InputError("flat list must contain the full ground set")
    members = set(family)
    for a, b in combinations(family, 2):
        if a & b not in members:
            raise InputError(
                f"flats are not closed under intersection: {list(atoms_of(a))} ∩ {list(atoms_of(b))} is missing"
            )
    lat = FlatsLattice.from_sets(ground, family)
    report = verify_geometric(lat)
    if not report.ok:
        raise InputError(f"flats do not form a geometric lattice: {report.summary()}")
    for x in range(ground):
        if 1 << x not in members:
            raise InputError(f"not simple: singleton {{{x + 1}}} is not a flat")

    index = {f: i for i, f in enumerate(lat.flats)}
    rank_of = lat.rank_of

    def rank_mask(mask: int) -> int:
        # smallest listed flat containing mask; the family is intersection-closed
        cl = full
        for f in family:
            if f & mask == mask:
                cl &= f
        return rank_of[index[cl]]

    params = {"ground": ground, "flats": [list(atoms_of(f)) for f in lat.flats]}
    return Matroid(ground, "flats", params, rank_mask)


def is_simple(m: Matroid) -> bool:
    try:
        _require_simple(m)
    except InputError:
        return False
    return True


def _subset_pairs(n: int, samples: int, seed: int) -> Iterable[tuple[int, int]]:
    if n <= 8:
        for s in range(1 << n):
            for t in range(1 << n):
                yield s, t
    else:
        rng = random.Random(seed)
        for _ in range(samples):
            yield rng.getrandbits(n), rng.getrandbits(n)


def check_rank_axioms(m: Matroid, samples: int = 10_000, seed: int = 0) -> list[str]:
    """Return a description of every rank-axiom violation found.

    Exhaustive over all subsets and subset pairs when n <= 8, otherwise
    ``samples`` seeded random pairs are checked for submodularity and the
    unit-increase axiom.
    """
    bad: list[str] = []
    if m.rank(0) != 0:
        bad.append(f"r(empty) = {m.rank(0)}")
    n = m.n
    subsets: Iterable[int]
    if n <= 8:
        subsets = range(1 << n)
    else:
        rng = random.Random(seed)
        subsets = [rng.getrandbits(n) for _ in range(samples)]
    for s in subsets:
        rs = m.rank(s)
        for x in range(n):
            rx = m.rank(s | 1 << x)
            if not rs <= rx <= rs + 1:
                bad.append(f"unit increase fails: r({atoms_of(s)})={rs}, adding {x + 1} gives {rx}")
    for s, t in _subset_pairs(n, samples, seed):
        if m.rank(s | t) + m.rank(s & t) > m.rank(s) + m.rank(t):
            bad.append(f"submodularity fails on S={atoms_of(s)}, T={atoms_of(t)}")
    return bad


def check_closure_axioms(m: Matroid, samples: int = 10_000, seed: int = 0) -> list[str]:
    """Idempotence, extensivity and monotonicity of closure (exhaustive for n <= 8)."""
    bad: list[str] = []
    n = m.n
    if n <= 8:
        subsets = list(range(1 << n))
    else:
        rng = random.Random(seed)
        subsets = [rng.getrandbits(n) for _ in range(min(samples, 2_000))]
    cl = {s: m.closure(s) for s in subsets}
    for s, c in cl.items():
        if c & s != s:
            bad.append(f"closure not extensive on {atoms_of(s)}")
        if m.closure(c) != c:
            bad.append(f"closure not idempotent on {atoms_of(s)}")
        for x in range(n):
            bigger = s | 1 << x
            if bigger != s and m.closure(bigger) & c != c:
                bad.append(f"closure not monotone: {atoms_of(s)} vs {atoms_of(bigger)}")
    return bad


def from_spec(doc: dict[str, Any], cap: int = DEFAULT_CAPS.atoms) -> Matroid:
    """Build a matroid from a parsed ``matroid-spec v1`` document."""
    if not isinstance(doc, dict):
        raise InputError("matroid spec must be a JSON object")
    kind = doc.get("kind")
    try:
        if kind == "uniform":
            return make_uniform(int(doc["rank"]), int(doc["elements"]), cap=cap)
        if kind == "graphic":
            return make_graphic(int(doc["vertices"]), doc["edges"], cap=cap)
        if kind == "linear":
            return make_linear(int(doc["prime"]), doc["vectors"], cap=cap)
        if kind == "flats":
            return make_from_flats(int(doc["ground"]), doc["flats"], cap=cap)
    except KeyError as exc:
        raise InputError(f"{kind} spec is missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed {kind} spec: {exc}") from None
    raise InputError(f"unknown matroid kind {kind!r}; expected one of {', '.join(KINDS)}")
