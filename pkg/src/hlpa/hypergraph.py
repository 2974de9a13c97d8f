"""Finite directed hypergraphs and their generator letters.

A hyperedge has an ordered source sequence and an ordered range sequence;
repetition encodes multiplicity and the order fixes the indices ``i`` and
``j`` of the letters ``h[i,j]`` and ``h*[i,j]``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

from .errors import HypergraphError, ParseError

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Letter(NamedTuple):
    """Generator ``edge[i,j]`` (or ``edge*[i,j]`` when ``star``); 1-based indices."""

    edge: str
    i: int
    j: int
    star: bool = False

    def __str__(self) -> str:
        return f"{self.edge}{'*' if self.star else ''}[{self.i},{self.j}]"

    @property
    def adjoint(self) -> "Letter":
        return Letter(self.edge, self.i, self.j, not self.star)


def token_key(x: str | Letter) -> tuple:
    """Sort key: vertices by name; letters by edge, direct before star, then indices."""
    if isinstance(x, str):
        return (0, x, False, 0, 0)
    return (1, x.edge, x.star, x.i, x.j)


def token(x: str | Letter) -> str:
    """Text form of a word token (a vertex name or a letter)."""
    return x if isinstance(x, str) else str(x)


@dataclass(frozen=True)
class Hyperedge:
    name: str
    source: tuple[str, ...]
    range: tuple[str, ...]


def _check_name(name: str, what: str) -> None:
    if not isinstance(name, str) or not NAME_RE.match(name):
        raise HypergraphError(f"invalid {what} name {name!r}")


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple[str, ...]
    edges: tuple[Hyperedge, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self,
            "edges",
            tuple(
                e if isinstance(e, Hyperedge) else Hyperedge(e[0], tuple(e[1]), tuple(e[2]))
                for e in self.edges
            ),
        )
        seen: set[str] = set()
        for v in self.vertices:
            _check_name(v, "vertex")
            if v in seen:
                raise HypergraphError(f"duplicate vertex name {v!r}")
            seen.add(v)
        vset = set(self.vertices)
        for e in self.edges:
            _check_name(e.name, "hyperedge")
            if e.name in seen:
                what = "vertex" if e.name in vset else "hyperedge"
                raise HypergraphError(f"hyperedge name {e.name!r} clashes with a {what} name")
            seen.add(e.name)
            object.__setattr__(e, "source", tuple(e.source))
            object.__setattr__(e, "range", tuple(e.range))
            if not e.source:
                raise HypergraphError(f"hyperedge {e.name!r} has an empty source")
            if not e.range:
                raise HypergraphError(f"hyperedge {e.name!r} has an empty range")
            for v in e.source + e.range:
                if v not in vset:
                    raise HypergraphError(f"hyperedge {e.name!r} uses undeclared vertex {v!r}")

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable[tuple] = ()) -> "Hypergraph":
        """``edges`` as ``(name, source, range)`` triples."""
        return cls(tuple(vertices), tuple(Hyperedge(n, tuple(s), tuple(r)) for n, s, r in edges))

    # lookups -------------------------------------------------------------

    @cached_property
    def edge_map(self) -> dict[str, Hyperedge]:
        return {e.name: e for e in self.edges}

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    def edge(self, name: str) -> Hyperedge:
        try:
            return self.edge_map[name]
        except KeyError:
            raise HypergraphError(f"unknown hyperedge {name!r}") from None

    @cached_property
    def letters(self) -> tuple[Letter, ...]:
        """All generator letters in canonical (serialization) order."""
        out = []
        for e in self.edges:
            for i in range(1, len(e.source) + 1):
                for j in range(1, len(e.range) + 1):
                    out.append(Letter(e.name, i, j, False))
                    out.append(Letter(e.name, i, j, True))
        return tuple(sorted(out, key=token_key))

    def has_letter(self, x: Letter) -> bool:
        e = self.edge_map.get(x.edge)
        return e is not None and 1 <= x.i <= len(e.source) and 1 <= x.j <= len(e.range)

    def letter_source(self, x: Letter) -> str:
        e = self.edge_map[x.edge]
        return e.range[x.j - 1] if x.star else e.source[x.i - 1]

    def letter_range(self, x: Letter) -> str:
        e = self.edge_map[x.edge]
        return e.source[x.i - 1] if x.star else e.range[x.j - 1]

    def word_source(self, word: tuple) -> str:
        x = word[0]
        return x if isinstance(x, str) else self.letter_source(x)

    def word_range(self, word: tuple) -> str:
        x = word[-1]
        return x if isinstance(x, str) else self.letter_range(x)

    @cached_property
    def letter_graph(self) -> "LetterGraph":
        return build_letter_graph(self)

    def __str__(self) -> str:
        return serialize_hypergraph(self)


def is_forbidden(x: Letter, y: Letter) -> bool:
    """``h[i,1] h*[j,1]`` or ``h*[1,i] h[1,j]`` on the same hyperedge."""
    if x.edge != y.edge or x.star == y.star:
        return False
    if not x.star:
        return x.j == 1 and y.j == 1
    return x.i == 1 and y.i == 1


@dataclass(frozen=True)
class LetterGraph:
    """Adjacency of letters along which nod-paths walk."""

    letters: tuple[Letter, ...]
    successors: Mapping[Letter, tuple[Letter, ...]]
    source_vertex: Mapping[Letter, str]
    range_vertex: Mapping[Letter, str]
    _pairs: frozenset = field(repr=False, default=frozenset())

    def allowed(self, x: Letter, y: Letter) -> bool:
        return (x, y) in self._pairs

    @cached_property
    def starting_at(self) -> dict[str, tuple[Letter, ...]]:
        out: dict[str, list[Letter]] = {}
        for x in self.letters:
            out.setdefault(self.source_vertex[x], []).append(x)
        return {v: tuple(xs) for v, xs in out.items()}


def build_letter_graph(H: Hypergraph) -> LetterGraph:
    letters = H.letters
    src = {x: H.letter_source(x) for x in letters}
    rng = {x: H.letter_range(x) for x in letters}
    by_source: dict[str, list[Letter]] = {}
    for x in letters:
        by_source.setdefault(src[x], []).append(x)
    succ = {}
    pairs = set()
    for x in letters:
        nxt = tuple(y for y in by_source.get(rng[x], ()) if not is_forbidden(x, y))
        succ[x] = nxt
        pairs.update((x, y) for y in nxt)
    return LetterGraph(letters, succ, src, rng, frozenset(pairs))


# text formats -----------------------------------------------------------

_TOKEN_RE = re.compile(r"\S+")


def _strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


def _names(text: str, line_no: int, offset: int) -> list[tuple[str, int]]:
    out = []
    for m in _TOKEN_RE.finditer(text):
        if not NAME_RE.match(m.group()):
            raise ParseError(f"invalid name {m.group()!r}", line_no, offset + m.start() + 1)
        out.append((m.group(), offset + m.start() + 1))
    return out


def _word_columns(head: str) -> list[int]:
    """1-based column of each whitespace-separated word of ``head``."""
    return [m.start() + 1 for m in _TOKEN_RE.finditer(head)]


def _split_header(line: str, line_no: int) -> tuple[str, str, int]:
    k = line.find(":")
    if k < 0:
        raise ParseError("expected ':'", line_no, len(line.rstrip()) + 1)
    return line[:k], line[k + 1 :], k + 1


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if line.strip():
            yield n, line


def _read_vertices(body: str, n: int, off: int, declared: dict[str, int]) -> None:
    for name, col in _names(body, n, off):
        if name in declared:
            raise ParseError(f"duplicate vertex {name!r}", n, col)
        declared[name] = n


def _vertex_refs(body: str, n: int, off: int, declared: Mapping[str, int]) -> list[str]:
    out = []
    for name, col in _names(body, n, off):
        if name not in declared:
            raise ParseError(f"undeclared vertex {name!r}", n, col)
        out.append(name)
    return out


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse the ``.hg`` format::

        vertices: v1 v2 w1 w2
        edge h: v1 v2 -> w1 w2
    """
    vertices: dict[str, int] = {}
    edges: list[Hyperedge] = []
    names: set[str] = set()
    for n, line in _lines(text):
        head, body, off = _split_header(line, n)
        words = head.split()
        if words == ["vertices"]:
            _read_vertices(body, n, off, vertices)
        elif len(words) == 2 and words[0] == "edge":
            name = words[1]
            col = _word_columns(head)[1]
            if not NAME_RE.match(name):
                raise ParseError(f"invalid edge name {name!r}", n, col)
            if name in names or name in vertices:
                raise ParseError(f"duplicate name {name!r}", n, col)
            if "->" not in body:
                raise ParseError("expected '->'", n, off + len(body.rstrip()) + 1)
            k = body.index("->")
            src = _vertex_refs(body[:k], n, off, vertices)
            rng = _vertex_refs(body[k + 2 :], n, off + k + 2, vertices)
            if not src:
                raise ParseError(f"edge {name!r} has an empty source", n, off + k + 1)
            if not rng:
                raise ParseError(f"edge {name!r} has an empty range", n, off + k + 1)
            names.add(name)
            edges.append(Hyperedge(name, tuple(src), tuple(rng)))
        else:
            raise ParseError(f"unexpected statement {head.strip()!r}", n, 1)
    try:
        return Hypergraph(tuple(vertices), tuple(edges))
    except HypergraphError as exc:
        raise ParseError(str(exc)) from None


def serialize_hypergraph(H: Hypergraph) -> str:
    lines = ["vertices: " + " ".join(H.vertices)]
    for e in H.edges:
        lines.append(f"edge {e.name}: {' '.join(e.source)} -> {' '.join(e.range)}")
    return "\n".join(lines) + "\n"


# separated and weighted graphs -----------------------------------------


@dataclass(frozen=True)
class GraphEdge:
    name: str
    source: str
    range: str


@dataclass(frozen=True)
class SeparatedGraph:
    vertices: tuple[str, ...]
    edges: tuple[GraphEdge, ...]
    groups: tuple[tuple[str, tuple[str, ...]], ...]  # (group name, edge names)

    def validate(self) -> None:
        emap = {e.name: e for e in self.edges}
        vset = set(self.vertices)
        for e in self.edges:
            if e.source not in vset or e.range not in vset:
                raise HypergraphError(f"edge {e.name!r} uses an undeclared vertex")
        covered: list[str] = []
        for name, members in self.groups:
            if not members:
                raise HypergraphError(f"group {name!r} is empty")
            for m in members:
                if m not in emap:
                    raise HypergraphError(f"group {name!r} lists unknown edge {m!r}")
            sources = {emap[m].source for m in members}
            if len(sources) > 1:
                raise HypergraphError(
                    f"group {name!r} has edges with different sources {sorted(sources)}"
                )
            covered.extend(members)
        if sorted(covered) != sorted(emap):
            raise HypergraphError("groups must partition the edge set")


@dataclass(frozen=True)
class WeightedGraph:
    vertices: tuple[str, ...]
    edges: tuple[GraphEdge, ...]
    weight: Mapping[str, int]

    def validate(self) -> None:
        vset = set(self.vertices)
        regular = set()
        for e in self.edges:
            if e.source not in vset or e.range not in vset:
                raise HypergraphError(f"edge {e.name!r} uses an undeclared vertex")
            regular.add(e.source)
        if set(self.weight) != regular:
            raise HypergraphError("weights must be given exactly for vertices emitting edges")
        for v, w in self.weight.items():
            if not isinstance(w, int) or w < 1:
                raise HypergraphError(f"weight of {v!r} must be a positive integer")


def from_separated_graph(G: SeparatedGraph) -> Hypergraph:
    """One hyperedge per group: common source -> ranges of the group's edges."""
    G.validate()
    emap = {e.name: e for e in G.edges}
    edges = []
    for name, members in G.groups:
        src = emap[members[0]].source
        edges.append(Hyperedge(name, (src,), tuple(emap[m].range for m in members)))
    return Hypergraph(tuple(G.vertices), tuple(edges))


def _fresh(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "_"
    taken.add(name)
    return name


def from_weighted_graph(G: WeightedGraph) -> Hypergraph:
    """One hyperedge ``h_v`` per regular vertex: ``v`` repeated ``weight(v)`` times."""
    G.validate()
    taken = set(G.vertices)
    edges = []
    for v in G.vertices:
        out = [e for e in G.edges if e.source == v]
        if not out:
            continue
        edges.append(
            Hyperedge(_fresh(f"h_{v}", taken), (v,) * G.weight[v], tuple(e.range for e in out))
        )
    return Hypergraph(tuple(G.vertices), tuple(edges))


def parse_separated_graph(text: str) -> SeparatedGraph:
    """``.sg``: ``vertices: ...`` then ``group X at v: r1 r2 ...`` lines."""
    vertices: dict[str, int] = {}
    edges: list[GraphEdge] = []
    groups = []
    names: set[str] = set()
    for n, line in _lines(text):
        head, body, off = _split_header(line, n)
        words = head.split()
        if words == ["vertices"]:
            _read_vertices(body, n, off, vertices)
        elif len(words) == 4 and words[0] == "group" and words[2] == "at":
            name, src = words[1], words[3]
            if not NAME_RE.match(name) or name in names or name in vertices:
                raise ParseError(f"invalid or duplicate group name {name!r}", n, _word_columns(head)[1])
            if src not in vertices:
                raise ParseError(f"undeclared vertex {src!r}", n, _word_columns(head)[3])
            rng = _vertex_refs(body, n, off, vertices)
            if not rng:
                raise ParseError(f"group {name!r} is empty", n, off + 1)
            names.add(name)
            members = []
            for k, r in enumerate(rng, start=1):
                ename = f"{name}_e{k}"
                edges.append(GraphEdge(ename, src, r))
                members.append(ename)
            groups.append((name, tuple(members)))
        else:
            raise ParseError(f"unexpected statement {head.strip()!r}", n, 1)
    G = SeparatedGraph(tuple(vertices), tuple(edges), tuple(groups))
    G.validate()
    return G


def parse_weighted_graph(text: str) -> WeightedGraph:
    """``.wg``: ``vertices: ...`` then ``emits v weight n: r1 r2 ...`` lines."""
    vertices: dict[str, int] = {}
    edges: list[GraphEdge] = []
    weight: dict[str, int] = {}
    for n, line in _lines(text):
        head, body, off = _split_header(line, n)
        words = head.split()
        if words == ["vertices"]:
            _read_vertices(body, n, off, vertices)
        elif len(words) == 4 and words[0] == "emits" and words[2] == "weight":
            v = words[1]
            if v not in vertices:
                raise ParseError(f"undeclared vertex {v!r}", n, _word_columns(head)[1])
            if v in weight:
                raise ParseError(f"vertex {v!r} already has an emits line", n, 1)
            try:
                w = int(words[3])
            except ValueError:
                raise ParseError(f"bad weight {words[3]!r}", n, _word_columns(head)[3]) from None
            if w < 1:
                raise ParseError("weight must be positive", n, _word_columns(head)[3])
            rng = _vertex_refs(body, n, off, vertices)
            if not rng:
                raise ParseError(f"vertex {v!r} emits no edges", n, off + 1)
            weight[v] = w
            for k, r in enumerate(rng, start=1):
                edges.append(GraphEdge(f"{v}_e{k}", v, r))
        else:
            raise ParseError(f"unexpected statement {head.strip()!r}", n, 1)
    G = WeightedGraph(tuple(vertices), tuple(edges), weight)
    G.validate()
    return G


# morphisms and subhypergraphs ------------------------------------------


@dataclass(frozen=True)
class HypergraphHom:
    vertex_map: Mapping[str, str]
    edge_map: Mapping[str, str]

    @classmethod
    def identity(cls, H: Hypergraph) -> "HypergraphHom":
        return cls({v: v for v in H.vertices}, {e.name: e.name for e in H.edges})

    def compose(self, after: "HypergraphHom") -> "HypergraphHom":
        """``after`` applied after ``self``."""
        return HypergraphHom(
            {v: after.vertex_map[w] for v, w in self.vertex_map.items()},
            {e: after.edge_map[f] for e, f in self.edge_map.items()},
        )


def check_homomorphism(phi: HypergraphHom, H: Hypergraph, I: Hypergraph) -> tuple[bool, str | None]:
    """Return ``(ok, first violation)``; multisets are compared after pushforward."""
    for v in H.vertices:
        if v not in phi.vertex_map:
            return False, f"vertex {v} has no image"
        if phi.vertex_map[v] not in I.vertex_set:
            return False, f"image of vertex {v} is not a vertex of the target"
    for e in H.edges:
        target = phi.edge_map.get(e.name)
        if target is None:
            return False, f"hyperedge {e.name} has no image"
        if target not in I.edge_map:
            return False, f"image of hyperedge {e.name} is not a hyperedge of the target"
        f = I.edge_map[target]
        for side in ("source", "range"):
            image = Counter(phi.vertex_map[v] for v in getattr(e, side))
            if image != Counter(getattr(f, side)):
                return False, (
                    f"{side} of {target} is {sorted(Counter(getattr(f, side)).elements())} but the "
                    f"image of the {side} of {e.name} is {sorted(image.elements())}"
                )
    return True, None


def subhypergraph(H: Hypergraph, vertices: Iterable[str], edges: Iterable[str]) -> Hypergraph:
    vs = set(vertices)
    es = set(edges)
    for v in vs:
        if v not in H.vertex_set:
            raise HypergraphError(f"{v!r} is not a vertex of the hypergraph")
    for name in es:
        H.edge(name)
    for e in H.edges:
        if e.name in es:
            for side in ("source", "range"):
                for v in getattr(e, side):
                    if v not in vs:
                        raise HypergraphError(
                            f"hyperedge {e.name!r} needs {side} vertex {v!r}, which is not kept"
                        )
    return Hypergraph(
        tuple(v for v in H.vertices if v in vs), tuple(e for e in H.edges if e.name in es)
    )


def same_up_to_ordering(H: Hypergraph, I: Hypergraph) -> bool:
    """Equal vertex sets and equal hyperedges, comparing sources/ranges as multisets."""
    if set(H.vertices) != set(I.vertices) or set(H.edge_map) != set(I.edge_map):
        return False
    for e in H.edges:
        f = I.edge_map[e.name]
        if Counter(e.source) != Counter(f.source) or Counter(e.range) != Counter(f.range):
            return False
    return True
