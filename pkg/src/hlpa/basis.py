"""Nod-paths: the canonical linear basis, and the growth function they give."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .algebra import Word
from .hypergraph import Hypergraph, Letter


def is_nod_path(word: Word, H: Hypergraph) -> bool:
    """A lone vertex, or letters whose consecutive pairs are all allowed."""
    word = tuple(word)
    if not word:
        return False
    if len(word) == 1 and isinstance(word[0], str):
        return word[0] in H.vertex_set
    if any(not isinstance(x, Letter) or not H.has_letter(x) for x in word):
        return False
    g = H.letter_graph
    return all(g.allowed(x, y) for x, y in zip(word, word[1:]))


def enumerate_nod_paths(H: Hypergraph, max_len: int) -> Iterator[list[Word]]:
    """Yield, for n = 0..max_len, the sorted list of nod-paths of length n."""
    yield [(v,) for v in sorted(H.vertices)]
    if max_len < 1:
        return
    g = H.letter_graph
    frontier: list[Word] = [(x,) for x in g.letters]
    for n in range(1, max_len + 1):
        if n > 1:
            # frontier stays sorted: successors are listed in canonical order
            frontier = [p + (y,) for p in frontier for y in g.successors[p[-1]]]
        yield frontier
        if not frontier:
            for _ in range(n + 1, max_len + 1):
                yield []
            return


def iter_nod_paths(H: Hypergraph, max_len: int) -> Iterator[Word]:
    for level in enumerate_nod_paths(H, max_len):
        yield from level


@dataclass(frozen=True)
class GrowthTable:
    per_length: tuple[int, ...]
    cumulative: tuple[int, ...]


def growth_table(H: Hypergraph, max_len: int) -> GrowthTable:
    """Nod-path counts by length, via a transfer count over the letter graph."""
    g = H.letter_graph
    per = [len(H.vertices)]
    ends = {x: 1 for x in g.letters}
    for n in range(1, max_len + 1):
        if n > 1:
            nxt = dict.fromkeys(g.letters, 0)
            for x, c in ends.items():
                if c:
                    for y in g.successors[x]:
                        nxt[y] += c
            ends = nxt
        per.append(sum(ends.values()))
    cum = []
    total = 0
    for c in per:
        total += c
        cum.append(total)
    return GrowthTable(tuple(per), tuple(cum))
