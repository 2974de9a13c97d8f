"""Z^d-gradings induced by admissible weight maps (written additively)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .algebra import AlgebraElement, Word
from .errors import AlgebraError, ParseError
from .hypergraph import Hypergraph, Letter

Degree = tuple  # tuple[int, ...] of length d


def vadd(a: Degree, b: Degree) -> Degree:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Degree, b: Degree) -> Degree:
    return tuple(x - y for x, y in zip(a, b))


def unit_vector(d: int, i: int) -> Degree:
    return tuple(1 if k == i else 0 for k in range(d))


@dataclass(frozen=True)
class WeightMap:
    """Weights of the direct letters ``h[i,j]``; stars get the negatives."""

    rank: int
    assign: Mapping[tuple[str, int, int], Degree]

    def weight(self, edge: str, i: int, j: int) -> Degree:
        try:
            return self.assign[(edge, i, j)]
        except KeyError:
            raise AlgebraError(f"weight map has no entry for {edge}[{i},{j}]") from None

    @property
    def zero(self) -> Degree:
        return (0,) * self.rank

    def degree_of_token(self, x) -> Degree:
        if isinstance(x, str):
            return self.zero
        w = self.weight(x.edge, x.i, x.j)
        return tuple(-c for c in w) if x.star else w

    def degree(self, word: Word) -> Degree:
        total = self.zero
        for x in word:
            total = vadd(total, self.degree_of_token(x))
        return total

    def violations(self, H: Hypergraph) -> list[str]:
        """Entries breaking ``w(h[i,j]) = w(h[i,1]) - w(h[1,1]) + w(h[1,j])``."""
        out = []
        for e in H.edges:
            for i in range(1, len(e.source) + 1):
                for j in range(1, len(e.range) + 1):
                    key = (e.name, i, j)
                    if key not in self.assign:
                        out.append(f"missing weight for {e.name}[{i},{j}]")
                        continue
                    if len(self.assign[key]) != self.rank:
                        out.append(f"weight of {e.name}[{i},{j}] has wrong length")
                        continue
            if out:
                continue
            w11 = self.assign[(e.name, 1, 1)]
            for i in range(1, len(e.source) + 1):
                for j in range(1, len(e.range) + 1):
                    want = vadd(vsub(self.assign[(e.name, i, 1)], w11), self.assign[(e.name, 1, j)])
                    if self.assign[(e.name, i, j)] != want:
                        out.append(
                            f"{e.name}[{i},{j}] has weight {self.assign[(e.name, i, j)]}, admissibility needs {want}"
                        )
        extra = {k for k in self.assign if not H.has_letter(Letter(k[0], k[1], k[2]))}
        out.extend(f"weight given for unknown letter {k[0]}[{k[1]},{k[2]}]" for k in sorted(extra))
        return out

    def is_admissible(self, H: Hypergraph) -> bool:
        return not self.violations(H)

    def require_admissible(self, H: Hypergraph) -> None:
        bad = self.violations(H)
        if bad:
            raise AlgebraError("inadmissible weight map: " + "; ".join(bad[:3]))


def standard_weight(H: Hypergraph) -> WeightMap:
    """``w(h[i,j]) = alpha_i`` in Z^n, n the largest source size."""
    d = max((len(e.source) for e in H.edges), default=0)
    assign = {}
    for e in H.edges:
        for i in range(1, len(e.source) + 1):
            for j in range(1, len(e.range) + 1):
                assign[(e.name, i, j)] = unit_vector(d, i - 1)
    return WeightMap(d, assign)


def double_weight(H: Hypergraph) -> WeightMap:
    """``w(h[i,j]) = (alpha_i, alpha_j)`` in Z^m + Z^n."""
    m = max((len(e.source) for e in H.edges), default=0)
    n = max((len(e.range) for e in H.edges), default=0)
    assign = {}
    for e in H.edges:
        for i in range(1, len(e.source) + 1):
            for j in range(1, len(e.range) + 1):
                assign[(e.name, i, j)] = unit_vector(m, i - 1) + unit_vector(n, j - 1)
    return WeightMap(m + n, assign)


_WEIGHT_LINE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s+(\d+)\s+(\d+)\s*:(.*)\Z")


def parse_weight_map(text: str, H: Hypergraph) -> WeightMap:
    """One line per direct letter: ``EDGE i j : c1 ... cd``. Must be admissible."""
    assign: dict[tuple[str, int, int], Degree] = {}
    rank = None
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _WEIGHT_LINE.match(line)
        if not m:
            raise ParseError("expected 'EDGE i j : integers'", n, 1)
        key = (m.group(1), int(m.group(2)), int(m.group(3)))
        try:
            vec = tuple(int(t) for t in m.group(4).split())
        except ValueError:
            raise ParseError("weight entries must be integers", n, line.index(":") + 2) from None
        if rank is None:
            rank = len(vec)
        elif len(vec) != rank:
            raise ParseError(f"expected {rank} integers, found {len(vec)}", n, line.index(":") + 2)
        if key in assign:
            raise ParseError(f"duplicate weight for {key[0]}[{key[1]},{key[2]}]", n, 1)
        assign[key] = vec
    w = WeightMap(rank or 0, assign)
    w.require_admissible(H)
    return w


def homogeneous_components(a: AlgebraElement, w: WeightMap) -> dict[Degree, AlgebraElement]:
    """Split ``a`` by degree; the components sum to ``a``."""
    w.require_admissible(a.hypergraph)
    parts: dict[Degree, dict] = {}
    for word, c in a.terms.items():
        parts.setdefault(w.degree(word), {})[word] = c
    return {g: AlgebraElement(a.hypergraph, a.field, t) for g, t in sorted(parts.items())}


def component(a: AlgebraElement, w: WeightMap, degree: Degree) -> AlgebraElement:
    """The homogeneous component of ``a`` in ``degree`` (no admissibility re-check)."""
    degree = tuple(degree)
    return AlgebraElement(
        a.hypergraph, a.field, {p: c for p, c in a.terms.items() if w.degree(p) == degree}
    )
