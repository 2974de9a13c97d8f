"""Presented commutative monoids: the V-monoid of a hypergraph and its group completion."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Optional, Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from .budget import StepCounter
from .errors import AlgebraError, HypergraphError
from .hypergraph import Hyperedge, Hypergraph

Vector = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class MonoidPresentation:
    """Commutative monoid on ``generators`` with relations ``lhs = rhs``."""

    generators: tuple[str, ...]
    relations: tuple[tuple[Vector, Vector], ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        n = len(self.generators)
        if len(set(self.generators)) != n:
            raise AlgebraError("duplicate generator names")
        for lhs, rhs in self.relations:
            if len(lhs) != n or len(rhs) != n:
                raise AlgebraError("relation vector has the wrong length")
            if any(c < 0 for c in lhs + rhs):
                raise AlgebraError("relation vectors must be nonnegative")
        if self.labels is not None and len(self.labels) != len(self.relations):
            raise AlgebraError("one label per relation")

    def vector(self, counts: dict[str, int]) -> Vector:
        idx = {g: k for k, g in enumerate(self.generators)}
        out = [0] * len(self.generators)
        for g, c in counts.items():
            if g not in idx:
                raise AlgebraError(f"unknown generator {g!r}")
            out[idx[g]] += c
        return tuple(out)

    def _named(self, vec: Vector) -> frozenset:
        return frozenset((g, c) for g, c in zip(self.generators, vec) if c)

    def normalized(self) -> tuple[frozenset, Counter]:
        """Order-free form: generator set and the multiset of relations (as unordered pairs)."""
        rels = Counter(frozenset({self._named(l), self._named(r)}) if l != r else frozenset({self._named(l)})
                       for l, r in self.relations)
        return frozenset(self.generators), rels

    def equivalent(self, other: "MonoidPresentation") -> bool:
        """Equal up to the order of generators, of relations and of relation sides."""
        return self.normalized() == other.normalized()

    def format_vector(self, vec: Vector) -> str:
        parts = [g if c == 1 else f"{c}{g}" for g, c in zip(self.generators, vec) if c]
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        rels = ", ".join(f"{self.format_vector(l)} = {self.format_vector(r)}" for l, r in self.relations)
        return f"<{', '.join(self.generators)} | {rels}>"

    def as_dict(self) -> dict:
        return {
            "generators": list(self.generators),
            "relations": [
                {"label": self.labels[k] if self.labels else None, "lhs": list(l), "rhs": list(r)}
                for k, (l, r) in enumerate(self.relations)
            ],
        }


def _multiplicities(seq: Sequence[str], gens: Sequence[str]) -> Vector:
    c = Counter(seq)
    return tuple(c.get(g, 0) for g in gens)


def v_monoid_presentation(H: Hypergraph) -> MonoidPresentation:
    """Generators: the vertices; one relation ``sum s(h) = sum r(h)`` per hyperedge."""
    gens = H.vertices
    rels = tuple((_multiplicities(e.source, gens), _multiplicities(e.range, gens)) for e in H.edges)
    return MonoidPresentation(gens, rels, tuple(e.name for e in H.edges))


def monoid_to_hypergraph(P: MonoidPresentation) -> Hypergraph:
    """Hypergraph whose V-monoid is presented by ``P`` (both sides of every relation nonzero)."""
    taken = set(P.generators)
    edges = []
    for k, (lhs, rhs) in enumerate(P.relations):
        if not any(lhs) or not any(rhs):
            raise HypergraphError(
                f"relation {k + 1} has an all-zero side; the presentation must be conical"
            )
        name = P.labels[k] if P.labels else f"h{k + 1}"
        while name in taken:
            name += "_"
        taken.add(name)
        src = tuple(g for g, c in zip(P.generators, lhs) for _ in range(c))
        rng = tuple(g for g, c in zip(P.generators, rhs) for _ in range(c))
        edges.append(Hyperedge(name, src, rng))
    return Hypergraph(P.generators, tuple(edges))


@dataclass(frozen=True)
class TraceStep:
    relation: int  # 0-based index into P.relations
    forward: bool  # True: replaced lhs by rhs
    result: Vector


@dataclass(frozen=True)
class WordProblemResult:
    status: str  # "equal" | "unknown"
    trace: tuple[TraceStep, ...] = ()

    @property
    def equal(self) -> bool:
        return self.status == "equal"


def apply_step(P: MonoidPresentation, x: Vector, rel: int, forward: bool) -> Optional[Vector]:
    lhs, rhs = P.relations[rel]
    take, give = (lhs, rhs) if forward else (rhs, lhs)
    if any(a < t for a, t in zip(x, take)):
        return None
    return tuple(a - t + g for a, t, g in zip(x, take, give))


def replay(P: MonoidPresentation, a: Vector, trace: Sequence[TraceStep]) -> Vector:
    x = tuple(a)
    for step in trace:
        y = apply_step(P, x, step.relation, step.forward)
        if y is None or y != step.result:
            raise AlgebraError("trace does not replay")
        x = y
    return x


def monoid_equal_bounded(
    P: MonoidPresentation, a: Sequence[int], b: Sequence[int], bound: int,
    counter: StepCounter | None = None,
) -> WordProblemResult:
    """Breadth-first search for a rewrite chain from ``a`` to ``b`` with all coordinates <= ``bound``.

    Sound but incomplete: ``unknown`` only means no chain was found in the box.
    """
    a, b = tuple(a), tuple(b)
    n = len(P.generators)
    if len(a) != n or len(b) != n:
        raise AlgebraError(f"vectors must have length {n}")
    if any(c < 0 for c in a + b):
        raise AlgebraError("vectors must be nonnegative")
    if a == b:
        return WordProblemResult("equal", ())
    counter = counter or StepCounter()
    parent: dict[Vector, Optional[tuple[Vector, int, bool]]] = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        counter.tick()
        for rel in range(len(P.relations)):
            for forward in (True, False):
                y = apply_step(P, x, rel, forward)
                if y is None or y in parent or max(y, default=0) > bound:
                    continue
                parent[y] = (x, rel, forward)
                if y == b:
                    steps = []
                    cur = y
                    while parent[cur] is not None:
                        prev, r, f = parent[cur]
                        steps.append(TraceStep(r, f, cur))
                        cur = prev
                    return WordProblemResult("equal", tuple(reversed(steps)))
                queue.append(y)
    return WordProblemResult("unknown", ())


@dataclass(frozen=True)
class GroupInvariant:
    """Z^free_rank + sum of Z/t for t in torsion."""

    free_rank: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def group_completion(P: MonoidPresentation) -> GroupInvariant:
    """Invariant factors of Z^generators / <lhs - rhs>."""
    n = len(P.generators)
    rows = [[l - r for l, r in zip(lhs, rhs)] for lhs, rhs in P.relations]
    rows = [r for r in rows if any(r)]
    if not rows or n == 0:
        return GroupInvariant(n, ())
    factors = [abs(int(f)) for f in invariant_factors(Matrix(rows), domain=ZZ)]
    nonzero = [f for f in factors if f]
    return GroupInvariant(n - len(nonzero), tuple(f for f in nonzero if f > 1))
