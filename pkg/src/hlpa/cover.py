"""Graded V-monoid presentations, covering hypergraphs and the smash product.

The group is Z^d written additively, truncated to the box ``[-B, B]^d``.
Only relations and hyperedges whose shifted vertices all lie in the box are
kept, so the truncated covering hypergraph is a subhypergraph of the full
(infinite) one.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator

from .algebra import AlgebraElement, Word, multiply
from .budget import StepCounter
from .errors import AlgebraError
from .fields import QQ, Field
from .grading import Degree, WeightMap, component, vadd, vsub
from .hypergraph import Hyperedge, Hypergraph, Letter
from .monoid import MonoidPresentation, v_monoid_presentation


@dataclass(frozen=True)
class DegreeWindow:
    rank: int
    bound: int

    def __post_init__(self) -> None:
        if self.bound < 0:
            raise AlgebraError("window bound must be nonnegative")

    def __contains__(self, g: Degree) -> bool:
        return len(g) == self.rank and all(-self.bound <= c <= self.bound for c in g)

    def __iter__(self) -> Iterator[Degree]:
        return itertools.product(range(-self.bound, self.bound + 1), repeat=self.rank)


def _enc(c: int) -> str:
    return str(c) if c >= 0 else f"m{-c}"


def graded_name(name: str, g: Degree) -> str:
    """Name of the copy of a vertex or hyperedge at degree ``g``, e.g. ``v1__m1_0``."""
    return f"{name}__{'_'.join(_enc(c) for c in g)}"


def _check(H: Hypergraph, w: WeightMap, window: DegreeWindow) -> None:
    w.require_admissible(H)
    if window.rank != w.rank:
        raise AlgebraError(f"window rank {window.rank} differs from weight rank {w.rank}")


def _shifted_sides(e: Hyperedge, w: WeightMap, g: Degree):
    """Degrees of the source and range copies of the hyperedge ``e`` at degree ``g``."""
    w11 = w.weight(e.name, 1, 1)
    src = [(v, vadd(g, vsub(w.weight(e.name, i, 1), w11))) for i, v in enumerate(e.source, start=1)]
    rng = [(v, vsub(g, w.weight(e.name, 1, j))) for j, v in enumerate(e.range, start=1)]
    return src, rng


@dataclass(frozen=True)
class Cover:
    hypergraph: Hypergraph
    vertex_origin: dict = field(repr=False)  # cover vertex -> (vertex, degree)
    edge_origin: dict = field(repr=False)  # cover hyperedge -> (hyperedge, degree)


def build_cover(H: Hypergraph, w: WeightMap, window: DegreeWindow) -> Cover:
    _check(H, w, window)
    vertex_origin = {}
    vertices = []
    for v in H.vertices:
        for g in window:
            name = graded_name(v, g)
            vertices.append(name)
            vertex_origin[name] = (v, g)
    edges = []
    edge_origin = {}
    for e in H.edges:
        for g in window:
            src, rng = _shifted_sides(e, w, g)
            if all(d in window for _, d in src + rng):
                name = graded_name(e.name, g)
                edges.append(
                    Hyperedge(
                        name,
                        tuple(graded_name(v, d) for v, d in src),
                        tuple(graded_name(v, d) for v, d in rng),
                    )
                )
                edge_origin[name] = (e.name, g)
    return Cover(Hypergraph(tuple(vertices), tuple(edges)), vertex_origin, edge_origin)


def covering_hypergraph(H: Hypergraph, w: WeightMap, window: DegreeWindow) -> Hypergraph:
    return build_cover(H, w, window).hypergraph


def graded_monoid_presentation(H: Hypergraph, w: WeightMap, window: DegreeWindow) -> MonoidPresentation:
    """Generators ``v_g``; relation ``sum_i s(h)_i at g+w(h[i,1])-w(h[1,1]) = sum_j r(h)_j at g-w(h[1,j])``."""
    _check(H, w, window)
    gens = tuple(graded_name(v, g) for v in H.vertices for g in window)
    index = {name: k for k, name in enumerate(gens)}
    rels = []
    labels = []
    for e in H.edges:
        for g in window:
            src, rng = _shifted_sides(e, w, g)
            if not all(d in window for _, d in src + rng):
                continue
            lhs = [0] * len(gens)
            rhs = [0] * len(gens)
            for v, d in src:
                lhs[index[graded_name(v, d)]] += 1
            for v, d in rng:
                rhs[index[graded_name(v, d)]] += 1
            rels.append((tuple(lhs), tuple(rhs)))
            labels.append(graded_name(e.name, g))
    return MonoidPresentation(gens, tuple(rels), tuple(labels))


# smash product ----------------------------------------------------------


class SmashElement:
    """Finite formal sum ``sum_g r_g p_g`` with ``r_g`` in the algebra of ``H``."""

    __slots__ = ("hypergraph", "field", "weights", "_comps")

    def __init__(self, hypergraph: Hypergraph, field: Field, weights: WeightMap, comps=None) -> None:
        self.hypergraph = hypergraph
        self.field = field
        self.weights = weights
        self._comps: dict[Degree, AlgebraElement] = {}
        for g, r in (comps or {}).items():
            g = tuple(g)
            if len(g) != weights.rank:
                raise AlgebraError("group element has the wrong rank")
            if r.hypergraph != hypergraph or r.field != field:
                raise AlgebraError("component over a different hypergraph or field")
            if g in self._comps:
                r = self._comps[g] + r
            if r:
                self._comps[g] = r
            else:
                self._comps.pop(g, None)

    @classmethod
    def single(cls, r: AlgebraElement, weights: WeightMap, g: Degree) -> "SmashElement":
        return cls(r.hypergraph, r.field, weights, {tuple(g): r})

    @property
    def components(self) -> dict[Degree, AlgebraElement]:
        return dict(self._comps)

    def is_zero(self) -> bool:
        return not self._comps

    def _same(self, other: "SmashElement") -> None:
        if (other.hypergraph, other.field, other.weights) != (self.hypergraph, self.field, self.weights):
            raise AlgebraError("smash elements over different data")

    def __add__(self, other: "SmashElement") -> "SmashElement":
        self._same(other)
        out = dict(self._comps)
        for g, r in other._comps.items():
            out[g] = out[g] + r if g in out else r
        return SmashElement(self.hypergraph, self.field, self.weights, out)

    def scale(self, c) -> "SmashElement":
        return SmashElement(
            self.hypergraph, self.field, self.weights, {g: r.scale(c) for g, r in self._comps.items()}
        )

    def __sub__(self, other: "SmashElement") -> "SmashElement":
        return self + other.scale(-1)

    def __mul__(self, other: "SmashElement") -> "SmashElement":
        return smash_multiply(self, other, self.weights)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SmashElement):
            return NotImplemented
        return (
            self.hypergraph == other.hypergraph
            and self.field == other.field
            and self._comps == other._comps
        )

    __hash__ = None

    def __str__(self) -> str:
        if not self._comps:
            return "0"
        return " + ".join(f"({r}) p{list(g)}" for g, r in sorted(self._comps.items()))

    __repr__ = __str__


def smash_multiply(x: SmashElement, y: SmashElement, w: WeightMap) -> SmashElement:
    """Bilinear extension of ``(r p_a)(s p_b) = r s_(a-b) p_b``."""
    x._same(y)
    if w != x.weights:
        raise AlgebraError("weight map differs from the one the smash elements use")
    out: dict[Degree, AlgebraElement] = {}
    for a, r in x._comps.items():
        for b, s in y._comps.items():
            piece = component(s, w, vsub(a, b))
            if piece.is_zero():
                continue
            prod = multiply(r, piece)
            if prod.is_zero():
                continue
            out[b] = out[b] + prod if b in out else prod
    return SmashElement(x.hypergraph, x.field, w, out)


# the isomorphism from the algebra of the cover onto the smash product --------


class CoverMap:
    """Generator images ``v_g -> v p_g``, ``(h_g)[i,j] -> h[i,j] p_(g - w(h[1,j]))``,
    ``(h_g)*[i,j] -> h*[i,j] p_(g + w(h[i,1]) - w(h[1,1]))``."""

    def __init__(self, H: Hypergraph, w: WeightMap, cover: Cover, field: Field = QQ) -> None:
        self.H = H
        self.w = w
        self.cover = cover
        self.field = field
        self._cache: dict = {}

    def token(self, x) -> SmashElement:
        if x in self._cache:
            return self._cache[x]
        H, w, f = self.H, self.w, self.field
        if isinstance(x, str):
            v, g = self.cover.vertex_origin[x]
            img = SmashElement.single(AlgebraElement.vertex(H, v, f), w, g)
        else:
            name, g = self.cover.edge_origin[x.edge]
            base = AlgebraElement.letter(H, name, x.i, x.j, x.star, f)
            if x.star:
                d = vadd(g, vsub(w.weight(name, x.i, 1), w.weight(name, 1, 1)))
            else:
                d = vsub(g, w.weight(name, 1, x.j))
            img = SmashElement.single(base, w, d)
        self._cache[x] = img
        return img

    def word(self, word: Word) -> SmashElement:
        out = self.token(word[0])
        for x in word[1:]:
            out = smash_multiply(out, self.token(x), self.w)
        return out

    def element(self, a: AlgebraElement) -> SmashElement:
        total = SmashElement(self.H, self.field, self.w)
        for wd, c in a.terms.items():
            total = total + self.word(wd).scale(c)
        return total


@dataclass
class CoverReport:
    relations_checked: int = 0
    products_checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "relations_checked": self.relations_checked,
            "products_checked": self.products_checked,
            "violations": list(self.violations),
        }


def _random_walk(Hc: Hypergraph, rng: random.Random, start: str | None, length: int) -> Word | None:
    by_source: dict[str, list[Letter]] = {}
    for x in Hc.letters:
        by_source.setdefault(Hc.letter_source(x), []).append(x)
    if start is None:
        starts = [v for v in Hc.vertices if by_source.get(v)]
        if not starts:
            return None
        start = rng.choice(starts)
    out = []
    at = start
    for _ in range(length):
        options = by_source.get(at)
        if not options:
            break
        x = rng.choice(options)
        out.append(x)
        at = Hc.letter_range(x)
    return tuple(out) if out else (start,)


def verify_cover_isomorphism(
    H: Hypergraph,
    w: WeightMap,
    window: DegreeWindow,
    trials: int = 50,
    seed: int = 0,
    field: Field = QQ,
    counter: StepCounter | None = None,
) -> CoverReport:
    """Check that the generator images satisfy every defining relation of the
    covering hypergraph's algebra, then spot-check multiplicativity on random products."""
    counter = counter or StepCounter()
    cover = build_cover(H, w, window)
    Hc = cover.hypergraph
    phi = CoverMap(H, w, cover, field)
    report = CoverReport()
    zero = SmashElement(H, field, w)

    def expect(lhs: SmashElement, rhs: SmashElement, what: str) -> None:
        counter.tick()
        report.relations_checked += 1
        if lhs != rhs:
            report.violations.append(f"{what}: got {lhs}, expected {rhs}")

    # vertices are orthogonal idempotents
    for u in Hc.vertices:
        for u2 in Hc.vertices:
            expect(phi.token(u) * phi.token(u2), phi.token(u) if u == u2 else zero, f"{u} {u2}")

    for e in Hc.edges:
        ns, nr = len(e.source), len(e.range)
        for i in range(1, ns + 1):
            for j in range(1, nr + 1):
                x = phi.token(Letter(e.name, i, j))
                xs = phi.token(Letter(e.name, i, j, True))
                s_i, r_j = phi.token(e.source[i - 1]), phi.token(e.range[j - 1])
                tag = f"{e.name}[{i},{j}]"
                expect(s_i * x, x, f"s_i {tag}")
                expect(x * r_j, x, f"{tag} r_j")
                expect(r_j * xs, xs, f"r_j {tag}*")
                expect(xs * s_i, xs, f"{tag}* s_i")
        for i in range(1, ns + 1):
            for j in range(1, ns + 1):
                total = zero
                for k in range(1, nr + 1):
                    total = total + phi.token(Letter(e.name, i, k)) * phi.token(Letter(e.name, j, k, True))
                expect(total, phi.token(e.source[i - 1]) if i == j else zero, f"row relation {e.name} {i},{j}")
        for i in range(1, nr + 1):
            for j in range(1, nr + 1):
                total = zero
                for k in range(1, ns + 1):
                    total = total + phi.token(Letter(e.name, k, i, True)) * phi.token(Letter(e.name, k, j))
                expect(total, phi.token(e.range[i - 1]) if i == j else zero, f"column relation {e.name} {i},{j}")

    rng = random.Random(seed)
    for _ in range(trials):
        a_word = _random_walk(Hc, rng, None, rng.randint(1, 3))
        if a_word is None:
            break
        b_word = _random_walk(Hc, rng, Hc.word_range(a_word), rng.randint(1, 3))
        a = AlgebraElement.word(Hc, a_word, field, rng.randint(1, 3))
        b = AlgebraElement.word(Hc, b_word, field, rng.choice([1, -1, 2]))
        ab = multiply(a, b)
        lhs = phi.element(ab)
        rhs = phi.element(a) * phi.element(b)
        counter.tick()
        report.products_checked += 1
        if lhs != rhs:
            report.violations.append(f"product {a} * {b}: phi(ab) = {lhs} but phi(a)phi(b) = {rhs}")
    return report
