"""Quasi-cycles, connectors and the Gelfand-Kirillov dimension of a finite hypergraph.

Forbidden words all have length two, so nod-paths are exactly walks in the
letter graph. That makes the connector question ("is there a nod-path ``o``,
not starting with ``p``, such that ``p o q`` is a nod-path?") a reachability
question in a finite automaton whose state is the last letter read together
with how much of ``p`` the connector has matched so far.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .algebra import Word, format_word, word_key
from .basis import is_nod_path
from .budget import StepCounter
from .errors import AlgebraError, InconsistencyError
from .hypergraph import Hypergraph, Letter


@dataclass(frozen=True)
class QuasiCycle:
    word: Word
    class_id: int

    def __str__(self) -> str:
        return format_word(self.word)


def shifts(word: Word) -> list[Word]:
    n = len(word)
    return [word[m:] + word[:m] for m in range(n)]


def _is_nod2(word: Word, H: Hypergraph) -> bool:
    return is_nod_path(word + word, H)


def is_quasi_cycle(word: Word, H: Hypergraph) -> bool:
    """``word`` squared is a nod-path and no shorter subword of the square is a nod^2-path."""
    word = tuple(word)
    if not word or not all(isinstance(x, Letter) for x in word):
        return False
    if not _is_nod2(word, H):
        return False
    n = len(word)
    sq = word + word
    for length in range(1, n):
        for start in range(n):
            if _is_nod2(sq[start : start + length], H):
                return False
    return True


def _closed_walks(H: Hypergraph, v: str, counter: StepCounter) -> list[Word]:
    """Letter-distinct closed walks at ``v`` in the double graph (d-paths, not nod)."""
    out: list[Word] = []
    by_source: dict[str, list[Letter]] = {}
    for x in H.letters:
        by_source.setdefault(H.letter_source(x), []).append(x)
    path: list[Letter] = []
    used: set[Letter] = set()

    def extend(at: str) -> None:
        for x in by_source.get(at, ()):
            if x in used:
                continue
            counter.tick()
            path.append(x)
            used.add(x)
            end = H.letter_range(x)
            if end == v:
                out.append(tuple(path))
            extend(end)
            path.pop()
            used.discard(x)

    extend(v)
    return out


def _closed_nod_walks(H: Hypergraph, v: str, counter: StepCounter) -> list[Word]:
    """Closed nod-walks at ``v`` that can still be quasi-cycles.

    A walk ``x_0 .. x_k`` with ``x_k x_a`` allowed for some ``a >= 1`` already
    contains the nod^2 word ``x_a .. x_k``, so no extension of it qualifies.
    When ``x_k x_0`` is allowed the walk is recorded and not extended further.
    """
    g = H.letter_graph
    out: list[Word] = []
    path: list[Letter] = []

    def extend(candidates) -> None:
        for x in candidates:
            counter.tick()
            if any(g.allowed(x, y) for y in path[1:]) or (x in path):
                continue
            path.append(x)
            if g.allowed(x, path[0]):
                out.append(tuple(path))
            else:
                extend(g.successors[x])
            path.pop()

    for first in g.starting_at.get(v, ()):
        counter.tick()
        path.append(first)
        if g.allowed(first, first):
            out.append((first,))
        else:
            extend(g.successors[first])
        path.pop()
    return out


def enumerate_quasi_cycles(
    H: Hypergraph, counter: StepCounter | None = None, *, prune: bool = True
) -> list[QuasiCycle]:
    """All quasi-cycles in canonical order; shifts share a ``class_id``.

    Per vertex, list letter-distinct closed walks, keep those whose square is
    a nod-path, then drop those whose square has a shorter nod^2 subword.
    ``prune=False`` walks all d-paths instead of only nod-paths.
    """
    counter = counter or StepCounter()
    found: set[Word] = set()
    walks = _closed_nod_walks if prune else _closed_walks
    for v in H.vertices:
        for p in walks(H, v, counter):
            if is_quasi_cycle(p, H):
                found.add(p)
    ordered = sorted(found, key=word_key)
    class_of: dict[Word, int] = {}
    next_id = 0
    out = []
    for p in ordered:
        if p not in class_of:
            for s in shifts(p):
                class_of[s] = next_id
            next_id += 1
        out.append(QuasiCycle(p, class_of[p]))
    return out


def connects_nod(p: Word, q: Word, H: Hypergraph, counter: StepCounter | None = None) -> Optional[Word]:
    """Shortest nod-path ``o`` with ``p`` not a prefix of ``o`` and ``p o q`` a nod-path."""
    p, q = tuple(p), tuple(q)
    if not (p and q and is_nod_path(p, H) and is_nod_path(q, H)):
        raise AlgebraError("connects_nod needs nod-paths of positive length")
    if not all(isinstance(x, Letter) for x in p + q):
        raise AlgebraError("connects_nod needs nod-paths of positive length")
    counter = counter or StepCounter()
    g = H.letter_graph
    n = len(p)
    free = -1  # progress marker: connector already deviates from p
    # state: (last letter, matched prefix length of p, or ``free``)
    parent: dict[tuple, tuple | None] = {}
    queue: deque = deque()
    for y in g.successors[p[-1]]:
        k = 1 if y == p[0] else free
        if k == n:
            continue
        st = (y, k)
        if st not in parent:
            parent[st] = None
            queue.append(st)
    while queue:
        st = queue.popleft()
        counter.tick()
        y, k = st
        if g.allowed(y, q[0]):
            o = []
            cur = st
            while cur is not None:
                o.append(cur[0])
                cur = parent[cur]
            return tuple(reversed(o))
        for z in g.successors[y]:
            if k == free:
                nk = free
            elif z == p[k]:
                nk = k + 1
            else:
                nk = free
            if nk == n:
                continue
            nst = (z, nk)
            if nst not in parent:
                parent[nst] = st
                queue.append(nst)
    return None


def connects(p: Word, q: Word, H: Hypergraph, counter: StepCounter | None = None) -> bool:
    p, q = tuple(p), tuple(q)
    if H.letter_graph.allowed(p[-1], q[0]) and is_nod_path(p, H) and is_nod_path(q, H):
        return True
    return connects_nod(p, q, H, counter) is not None


def selfconnected_witness(
    H: Hypergraph, cycles: list[QuasiCycle] | None = None, counter: StepCounter | None = None
) -> Optional[tuple[QuasiCycle, Word]]:
    counter = counter or StepCounter()
    if cycles is None:
        cycles = enumerate_quasi_cycles(H, counter)
    for c in cycles:
        o = connects_nod(c.word, c.word, H, counter)
        if o is not None:
            return c, o
    return None


@dataclass(frozen=True)
class ChainLink:
    cycle: QuasiCycle
    connector: Optional[Word]  # None: the two quasi-cycles are directly adjacent


def _arcs(H: Hypergraph, cycles: list[QuasiCycle], counter: StepCounter):
    """Arcs ``p -> q`` between quasi-cycles of different classes, with a connector."""
    g = H.letter_graph
    arcs: dict[int, list[tuple[int, Optional[Word]]]] = {}
    for a, p in enumerate(cycles):
        lst = []
        for b, q in enumerate(cycles):
            if p.class_id == q.class_id:
                continue
            if g.allowed(p.word[-1], q.word[0]):
                lst.append((b, None))
                continue
            o = connects_nod(p.word, q.word, H, counter)
            if o is not None:
                lst.append((b, o))
        arcs[a] = lst
    return arcs


def _check_class_dag(cycles: list[QuasiCycle], arcs) -> None:
    succ: dict[int, set[int]] = {}
    for a, lst in arcs.items():
        for b, _ in lst:
            succ.setdefault(cycles[a].class_id, set()).add(cycles[b].class_id)
    state: dict[int, int] = {}

    def visit(c: int) -> None:
        state[c] = 1
        for d in succ.get(c, ()):
            if state.get(d) == 1:
                raise InconsistencyError(
                    f"quasi-cycle classes {c} and {d} lie on a cycle of the chain relation "
                    "although no quasi-cycle is selfconnected"
                )
            if d not in state:
                visit(d)
        state[c] = 2

    for c in sorted(succ):
        if c not in state:
            visit(c)


def max_chain(
    H: Hypergraph, cycles: list[QuasiCycle] | None = None, counter: StepCounter | None = None
) -> tuple[int, list[ChainLink]]:
    """Longest chain of pairwise non-equivalent quasi-cycles (exhaustive DFS)."""
    counter = counter or StepCounter()
    if cycles is None:
        cycles = enumerate_quasi_cycles(H, counter)
    if selfconnected_witness(H, cycles, counter) is not None:
        raise AlgebraError("max_chain requires that no quasi-cycle is selfconnected")
    if not cycles:
        return 0, []
    arcs = _arcs(H, cycles, counter)
    _check_class_dag(cycles, arcs)

    best: list[tuple[int, Optional[Word]]] = []
    path: list[tuple[int, Optional[Word]]] = []
    used: set[int] = set()

    def dfs(a: int) -> None:
        nonlocal best
        counter.tick()
        if len(path) > len(best):
            best = list(path)
        for b, o in arcs[a]:
            cid = cycles[b].class_id
            if cid in used:
                continue
            used.add(cid)
            path.append((b, o))
            dfs(b)
            path.pop()
            used.discard(cid)

    for a, c in enumerate(cycles):
        used.add(c.class_id)
        path.append((a, None))
        dfs(a)
        path.pop()
        used.discard(c.class_id)
    return len(best), [ChainLink(cycles[b], o) for b, o in best]


@dataclass(frozen=True)
class GkResult:
    kind: str  # "finite" or "exponential"
    dimension: Optional[int] = None
    chain: tuple[ChainLink, ...] = ()
    witness: Optional[QuasiCycle] = None
    connector: Optional[Word] = None
    quasi_cycles: tuple[QuasiCycle, ...] = field(default=(), repr=False)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self) -> str:
        if self.is_finite:
            chain = ", ".join(format_word(link.cycle.word) for link in self.chain)
            return f"GKdim = {self.dimension}; chain: [{chain}]"
        return (
            f"GKdim = infinity (exponential growth); selfconnected quasi-cycle: "
            f"{format_word(self.witness.word)}; connector: {format_word(self.connector)}"
        )


def gk_dimension(H: Hypergraph, counter: StepCounter | None = None) -> GkResult:
    counter = counter or StepCounter()
    cycles = enumerate_quasi_cycles(H, counter)
    hit = selfconnected_witness(H, cycles, counter)
    if hit is not None:
        return GkResult("exponential", witness=hit[0], connector=hit[1], quasi_cycles=tuple(cycles))
    d, chain = max_chain(H, cycles, counter)
    return GkResult("finite", dimension=d, chain=tuple(chain), quasi_cycles=tuple(cycles))
