"""T_i moves on maximal chains and the constructive diameter argument built from them."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from . import coxeter
from .errors import ClaimViolation, InputError
from .lattice import FlatsLattice, interval
from .labeling import (
    AtomOrder,
    Chain,
    MinimalLabeling,
    ascending_chain,
    chain_with_labels,
    is_maximal_chain,
    labeling,
)


def apply_t(L: FlatsLattice, ord: AtomOrder | MinimalLabeling, chain: Sequence[int], i: int) -> Chain:
    """Replace the element at rank ``i`` so the descent there becomes an ascent.

    The rank-2 interval [x_{i-1}, x_{i+1}] is re-traversed by its ascending chain.
    """
    lab = labeling(L, ord)
    chain = tuple(chain)
    if not 1 <= i <= L.r - 1:
        raise InputError(f"rank {i} is outside 1..{L.r - 1}")
    key = lab.key(chain)
    if not key[i - 1] > key[i]:
        raise InputError(f"no descent at rank {i}: labels {lab.sequence(chain)}")
    sub = ascending_chain(L, lab, interval(L, chain[i - 1], chain[i + 1]))
    return chain[:i] + (sub[1],) + chain[i + 1 :]


def apply_word(L: FlatsLattice, ord: AtomOrder | MinimalLabeling, chain: Sequence[int], ranks: Sequence[int]) -> Chain:
    """Apply T moves in the given (first-applied first) order."""
    out = tuple(chain)
    for i in ranks:
        out = apply_t(L, ord, out, i)
    return out


@dataclass(frozen=True)
class StraighteningResult:
    r: int
    word: coxeter.Word  # letters in application order
    path: tuple[Chain, ...]

    @property
    def terminal(self) -> Chain:
        return self.path[-1]

    @property
    def expression(self) -> coxeter.Word:
        """The word as a product s_{i_1} ... s_{i_d}, whose rightmost letter acts first."""
        return tuple(reversed(self.word))

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def reduced(self) -> bool:
        return coxeter.is_reduced(self.word, max(self.r, 1))


def straighten(L: FlatsLattice, ord: AtomOrder | MinimalLabeling, chain: Sequence[int]) -> StraighteningResult:
    """Sort the labels of ``chain`` by sliding the k-th smallest label down to position k.

    Each slide applies T_{p-1}, T_{p-2}, ..., T_k where p is the label's current
    position; every step moves that same label down by one.
    """
    lab = labeling(L, ord)
    cur = tuple(chain)
    if not is_maximal_chain(L, cur):
        raise InputError("not a maximal chain")
    r = L.r
    word: list[int] = []
    path = [cur]
    for k in range(1, r + 1):
        key = lab.key(cur)
        p = min(range(k, r + 1), key=lambda q: key[q - 1])
        target = lab.sequence(cur)[p - 1]
        for i in range(p - 1, k - 1, -1):
            cur = apply_t(L, lab, cur, i)
            if lab.sequence(cur)[i - 1] != target:
                raise ClaimViolation(
                    "straightening",
                    f"T_{i} did not move label {target} down to position {i}",
                    (path[0], tuple(word), cur),
                )
            word.append(i)
            path.append(cur)
    if cur != ascending_chain(L, lab):
        raise ClaimViolation("straightening", "did not terminate at the ascending chain", (path[0], tuple(word)))
    return StraighteningResult(r, tuple(word), tuple(path))


def atom_order_for_chain(L: FlatsLattice, chain: Sequence[int]) -> AtomOrder:
    """Atoms new at rank 1 first, then those new at rank 2, ...; ties by atom index."""
    order: list[int] = []
    for k in range(1, len(chain)):
        new = L.atom_set(chain[k]) - L.atom_set(chain[k - 1])
        order.extend(sorted(new))
    return AtomOrder(tuple(order))


def connect(L: FlatsLattice, m1: Sequence[int], m2: Sequence[int]) -> tuple[Chain, ...]:
    """A facet-ridge path from m1 to m2 of length at most C(r, 2) (not necessarily shortest)."""
    ord = atom_order_for_chain(L, m2)
    res = straighten(L, ord, m1)
    if res.terminal != tuple(m2):
        raise ClaimViolation("connect", "straightening under the chosen order missed the target", (m1, m2))
    return res.path


def reversal_chain(L: FlatsLattice, ord: AtomOrder | MinimalLabeling) -> Chain:
    """The chain whose labels are the ascending chain's labels in reverse order."""
    lab = labeling(L, ord)
    asc = lab.sequence(ascending_chain(L, lab))
    rev = asc[::-1]
    chain = chain_with_labels(L, lab, rev)
    if not is_maximal_chain(L, chain) or lab.sequence(chain) != rev:
        raise ClaimViolation("rearrangement", f"reversed ascending labels {rev} are not realized", chain)
    return chain
