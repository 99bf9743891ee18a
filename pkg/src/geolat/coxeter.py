"""Words in the adjacent transpositions s_1, ..., s_{r-1} of S_r and their wiring diagrams.

A word acts on positions: reading left to right, letter ``i`` swaps whatever
wires currently sit at positions i and i+1. Permutations are one-line tuples
``p`` with ``p[k-1]`` the wire at position k, so ``evaluate`` is a monoid
morphism for the composition ``(p * q)(k) = p(q(k))``.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import InputError

Permutation = tuple[int, ...]
Word = tuple[int, ...]


def identity(r: int) -> Permutation:
    return tuple(range(1, r + 1))


def compose(p: Sequence[int], q: Sequence[int]) -> Permutation:
    """``p * q``: apply q first, then p."""
    return tuple(p[x - 1] for x in q)


def inverse(p: Sequence[int]) -> Permutation:
    out = [0] * len(p)
    for k, x in enumerate(p, start=1):
        out[x - 1] = k
    return tuple(out)


def _check(word: Sequence[int], r: int) -> None:
    for i in word:
        if not 1 <= i <= r - 1:
            raise InputError(f"generator s_{i} is out of range for S_{r}")


def evaluate(word: Sequence[int], r: int) -> Permutation:
    _check(word, r)
    wires = list(range(1, r + 1))
    for i in word:
        wires[i - 1], wires[i] = wires[i], wires[i - 1]
    return tuple(wires)


def inversions(p: Sequence[int]) -> int:
    return sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])


def length(p: Sequence[int]) -> int:
    """Coxeter length; in type A this is the inversion count."""
    return inversions(p)


def longest_element(r: int) -> Permutation:
    return tuple(range(r, 0, -1))


def reflection_sequence(word: Sequence[int], r: int | None = None) -> list[tuple[int, int]]:
    """The t-th entry is the pair of wires crossing at step t, smaller label first."""
    if r is None:
        r = max(word, default=0) + 1
    _check(word, r)
    wires = list(range(1, r + 1))
    out = []
    for i in word:
        a, b = wires[i - 1], wires[i]
        out.append((min(a, b), max(a, b)))
        wires[i - 1], wires[i] = b, a
    return out


def is_reduced(word: Sequence[int], r: int) -> bool:
    """No pair of wires crosses twice."""
    refl = reflection_sequence(word, r)
    return len(set(refl)) == len(refl)


def is_reduced_by_length(word: Sequence[int], r: int) -> bool:
    return len(word) == inversions(evaluate(word, r))


@dataclass(frozen=True)
class WiringDiagram:
    r: int
    word: Word
    crossings: tuple[tuple[int, int], ...]
    final: tuple[int, ...]  # wire labels top to bottom at the right end

    @property
    def double_crossings(self) -> list[tuple[int, int]]:
        counts = Counter(self.crossings)
        return sorted(p for p, c in counts.items() if c > 1)

    @property
    def reduced(self) -> bool:
        return not self.double_crossings

    def render(self) -> str:
        """Monospace drawing; wires enter on the left labeled 1..r top to bottom."""
        r = self.r
        rows = [[f"{k} -"] for k in range(1, r + 1)]
        gaps = [["   "] for _ in range(max(r - 1, 0))]
        for i in self.word:
            for k in range(r):
                if k == i - 1:
                    rows[k].append("\\ /-")
                elif k == i:
                    rows[k].append("/ \\-")
                else:
                    rows[k].append("----")
            for k in range(r - 1):
                gaps[k].append(" X  " if k == i - 1 else "    ")
        lines = []
        for k in range(r):
            lines.append("".join(rows[k]) + f" {self.final[k]}")
            if k < r - 1:
                lines.append("".join(gaps[k]).rstrip())
        return "\n".join(lines)


def wiring_diagram(word: Sequence[int], r: int) -> WiringDiagram:
    word = tuple(word)
    return WiringDiagram(r, word, tuple(reflection_sequence(word, r)), evaluate(word, r))


def parse_word(text: str) -> Word:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise InputError(f"cannot parse word {text!r}; expected comma-separated indices") from None
