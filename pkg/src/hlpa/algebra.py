"""Elements of the Leavitt path algebra of a hypergraph, kept in normal form.

Words are tuples of tokens; a token is a vertex name (``str``) or a
:class:`~hlpa.hypergraph.Letter`. Reduction uses five rules on adjacent
token pairs:

1. ``v w -> delta(v,w) v`` for vertices,
2. a vertex next to a letter is absorbed or kills the word,
3. letters whose endpoints do not meet kill the word,
4. ``h[i,1] h*[j,1] -> delta(i,j) s(h)_i - sum_{k>=2} h[i,k] h*[j,k]``,
5. ``h*[1,i] h[1,j] -> delta(i,j) r(h)_i - sum_{k>=2} h*[k,i] h[k,j]``.

The system is confluent and terminating, so the irreducible words (the
nod-paths) form a basis and the fixed point does not depend on the order
in which redexes are chosen.
"""

from __future__ import annotations

from types import MappingProxyType
from typing import Iterable, Literal, Mapping, Union

from .budget import StepCounter
from .errors import AlgebraError
from .fields import QQ, Field
from .hypergraph import Hypergraph, HypergraphHom, Letter, check_homomorphism, is_forbidden, token, token_key

Token = Union[str, Letter]
Word = tuple  # tuple[Token, ...]
Strategy = Literal["left", "right"]


def word_length(word: Word) -> int:
    """0 for a lone vertex, otherwise the number of tokens."""
    if len(word) == 1 and isinstance(word[0], str):
        return 0
    return len(word)


def word_key(word: Word) -> tuple:
    """Canonical order: length, then tokens compared by ``token_key``."""
    return (word_length(word), tuple(token_key(x) for x in word))


def format_word(word: Word) -> str:
    return " ".join(token(x) for x in word)


def star_word(word: Word) -> Word:
    return tuple(x if isinstance(x, str) else x.adjoint for x in reversed(word))


def check_word(H: Hypergraph, word: Word) -> None:
    if not word:
        raise AlgebraError("empty word")
    for x in word:
        if isinstance(x, str):
            if x not in H.vertex_set:
                raise AlgebraError(f"unknown vertex {x!r}")
        elif isinstance(x, Letter):
            if not H.has_letter(x):
                raise AlgebraError(f"unknown generator {x}")
        else:
            raise AlgebraError(f"bad word token {x!r}")


def _rewrite(H: Hypergraph, a: Token, b: Token):
    """Replacement for the pair ``a b`` as ``[(coef, subword), ...]``; None if irreducible."""
    a_vertex = isinstance(a, str)
    b_vertex = isinstance(b, str)
    if a_vertex and b_vertex:
        return [(1, (a,))] if a == b else []
    if a_vertex:
        return [(1, (b,))] if H.letter_source(b) == a else []
    if b_vertex:
        return [(1, (a,))] if H.letter_range(a) == b else []
    if H.letter_range(a) != H.letter_source(b):
        return []
    if not is_forbidden(a, b):
        return None
    e = H.edge_map[a.edge]
    out = []
    if not a.star:
        # a = h[i,1], b = h*[j,1]
        i, j = a.i, b.i
        if i == j:
            out.append((1, (e.source[i - 1],)))
        for k in range(2, len(e.range) + 1):
            out.append((-1, (Letter(e.name, i, k, False), Letter(e.name, j, k, True))))
    else:
        # a = h*[1,i], b = h[1,j]
        i, j = a.j, b.j
        if i == j:
            out.append((1, (e.range[i - 1],)))
        for k in range(2, len(e.source) + 1):
            out.append((-1, (Letter(e.name, k, i, True), Letter(e.name, k, j, False))))
    return out


def find_redex(H: Hypergraph, word: Word, strategy: Strategy = "left"):
    """Position and replacement of the first redex, or ``None`` if ``word`` is irreducible."""
    n = len(word)
    positions = range(n - 1) if strategy == "left" else range(n - 2, -1, -1)
    for k in positions:
        rep = _rewrite(H, word[k], word[k + 1])
        if rep is not None:
            return k, rep
    return None


def reduce_terms(
    H: Hypergraph,
    raw: Mapping[Word, object],
    field: Field = QQ,
    strategy: Strategy = "left",
    counter: StepCounter | None = None,
) -> dict[Word, object]:
    """Rewrite a linear combination of words to its fixed point."""
    counter = counter or StepCounter()
    zero = field.zero()
    pending: dict[Word, object] = {}
    for w, c in raw.items():
        w = tuple(w)
        check_word(H, w)
        c = field(c)
        if c:
            pending[w] = pending.get(w, zero) + c
    result: dict[Word, object] = {}
    while pending:
        w, c = pending.popitem()
        if not c:
            continue
        counter.tick()
        hit = find_redex(H, w, strategy)
        if hit is None:
            s = result.get(w, zero) + c
            if s:
                result[w] = s
            else:
                result.pop(w, None)
            continue
        k, rep = hit
        for d, sub in rep:
            nw = w[:k] + sub + w[k + 2 :]
            pending[nw] = pending.get(nw, zero) + c * d
    return result


class AlgebraElement:
    """A finite linear combination of nod-paths with nonzero coefficients."""

    __slots__ = ("hypergraph", "field", "_terms")

    def __init__(self, hypergraph: Hypergraph, field: Field, terms: Mapping[Word, object]) -> None:
        # trusted constructor: ``terms`` must already be normal
        self.hypergraph = hypergraph
        self.field = field
        self._terms = dict(terms)

    # constructors --------------------------------------------------------

    @classmethod
    def from_raw(
        cls,
        H: Hypergraph,
        raw: Mapping[Word, object],
        field: Field = QQ,
        strategy: Strategy = "left",
        counter: StepCounter | None = None,
    ) -> "AlgebraElement":
        return cls(H, field, reduce_terms(H, raw, field, strategy, counter))

    @classmethod
    def zero(cls, H: Hypergraph, field: Field = QQ) -> "AlgebraElement":
        return cls(H, field, {})

    @classmethod
    def word(cls, H: Hypergraph, word: Iterable[Token], field: Field = QQ, coef=1) -> "AlgebraElement":
        return cls.from_raw(H, {tuple(word): coef}, field)

    @classmethod
    def vertex(cls, H: Hypergraph, v: str, field: Field = QQ) -> "AlgebraElement":
        return cls.word(H, (v,), field)

    @classmethod
    def letter(cls, H: Hypergraph, edge: str, i: int, j: int, star: bool = False, field: Field = QQ):
        return cls.word(H, (Letter(edge, i, j, star),), field)

    @classmethod
    def unit(cls, H: Hypergraph, field: Field = QQ) -> "AlgebraElement":
        """Sum of all vertices: the identity of the algebra of a finite hypergraph."""
        one = field.one()
        return cls(H, field, {(v,): one for v in H.vertices})

    # views ---------------------------------------------------------------

    @property
    def terms(self) -> Mapping[Word, object]:
        return MappingProxyType(self._terms)

    def sorted_terms(self) -> list[tuple[object, Word]]:
        return [(self._terms[w], w) for w in sorted(self._terms, key=word_key)]

    def support(self) -> list[Word]:
        return sorted(self._terms, key=word_key)

    def coefficient(self, word: Iterable[Token]):
        return self._terms.get(tuple(word), self.field.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    # arithmetic ----------------------------------------------------------

    def _check(self, other: "AlgebraElement") -> None:
        if other.hypergraph != self.hypergraph:
            raise AlgebraError("elements live over different hypergraphs")
        if other.field != self.field:
            raise AlgebraError(f"field mismatch: {self.field.name} vs {other.field.name}")

    def scale(self, c) -> "AlgebraElement":
        c = self.field(c)
        if not c:
            return AlgebraElement.zero(self.hypergraph, self.field)
        return AlgebraElement(self.hypergraph, self.field, {w: c * d for w, d in self._terms.items()})

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return combine(1, self, 1, other)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return combine(1, self, -1, other)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        try:
            return self.scale(other)
        except (TypeError, AlgebraError):
            return NotImplemented

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (
            self.hypergraph == other.hypergraph
            and self.field == other.field
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"AlgebraElement({format_element(self)!r})"

    def __str__(self) -> str:
        return format_element(self)


def format_element(a: AlgebraElement) -> str:
    if not a._terms:
        return "0"
    out = []
    for c, w in a.sorted_terms():
        body = format_word(w)
        neg = a.field.p == 0 and c < 0
        mag = -c if neg else c
        text = body if mag == 1 else f"{a.field.format(mag)} {body}"
        if not out:
            out.append(("-" if neg else "") + text)
        else:
            out.append(("- " if neg else "+ ") + text)
    return " ".join(out)


def normal_form(
    H: Hypergraph,
    raw: Mapping[Word, object],
    field: Field = QQ,
    strategy: Strategy = "left",
    counter: StepCounter | None = None,
) -> AlgebraElement:
    """Normal form of a raw linear combination of words over the generators of ``H``."""
    return AlgebraElement.from_raw(H, raw, field, strategy, counter)


def multiply(a: AlgebraElement, b: AlgebraElement, counter: StepCounter | None = None) -> AlgebraElement:
    a._check(b)
    raw: dict[Word, object] = {}
    zero = a.field.zero()
    for p, c in a._terms.items():
        for q, d in b._terms.items():
            w = p + q
            raw[w] = raw.get(w, zero) + c * d
    return AlgebraElement.from_raw(a.hypergraph, raw, a.field, counter=counter)


def combine(c1, a: AlgebraElement, c2, b: AlgebraElement) -> AlgebraElement:
    """``c1*a + c2*b``; zero coefficients are dropped."""
    a._check(b)
    f = a.field
    c1, c2 = f(c1), f(c2)
    out: dict[Word, object] = {}
    for w, c in a._terms.items():
        out[w] = c1 * c
    for w, c in b._terms.items():
        out[w] = out.get(w, f.zero()) + c2 * c
    return AlgebraElement(a.hypergraph, f, {w: c for w, c in out.items() if c})


def linear_combination(H: Hypergraph, pairs: Iterable[tuple[object, AlgebraElement]], field: Field = QQ):
    total = AlgebraElement.zero(H, field)
    for c, x in pairs:
        total = combine(1, total, c, x)
    return total


def involute(a: AlgebraElement) -> AlgebraElement:
    """Apply the involution fixing vertices and swapping ``h[i,j]`` with ``h*[i,j]``."""
    raw = {star_word(w): c for w, c in a._terms.items()}
    return AlgebraElement.from_raw(a.hypergraph, raw, a.field)


def apply_homomorphism(
    phi: HypergraphHom, a: AlgebraElement, target: Hypergraph
) -> AlgebraElement:
    """Image of ``a`` under the algebra map induced by a hypergraph morphism."""
    ok, why = check_homomorphism(phi, a.hypergraph, target)
    if not ok:
        raise AlgebraError(f"not a hypergraph homomorphism: {why}")

    def image(x: Token) -> Token:
        if isinstance(x, str):
            return phi.vertex_map[x]
        return Letter(phi.edge_map[x.edge], x.i, x.j, x.star)

    raw: dict[Word, object] = {}
    zero = a.field.zero()
    for w, c in a._terms.items():
        nw = tuple(image(x) for x in w)
        raw[nw] = raw.get(nw, zero) + c
    return AlgebraElement.from_raw(target, raw, a.field)


def local_unit_for(elements: Iterable[AlgebraElement]) -> AlgebraElement:
    """Sum of the endpoint vertices of every word occurring in ``elements``."""
    elements = list(elements)
    if not elements:
        raise AlgebraError("local_unit_for needs at least one element")
    H, f = elements[0].hypergraph, elements[0].field
    ends: set[str] = set()
    for x in elements:
        x._check(elements[0])
        for w in x._terms:
            ends.add(H.word_source(w))
            ends.add(H.word_range(w))
    one = f.one()
    return AlgebraElement(H, f, {(v,): one for v in H.vertices if v in ends})
