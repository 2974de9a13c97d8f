"""Hyperedge-size conditions, connectivity, the length valuation, and a
property report containing only verdicts that follow from proven criteria."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .algebra import AlgebraElement, word_length
from .hypergraph import Hypergraph

PROPERTIES = (
    "domain",
    "prime",
    "nonsingular",
    "semiprimitive",
    "vonNeumannRegular",
    "simple",
    "finiteDimensional",
    "leftArtinian",
    "rightArtinian",
    "leftNoetherian",
    "rightNoetherian",
)

NEG_INF = -math.inf


@dataclass(frozen=True)
class ConditionsProfile:
    lv: bool
    a: bool
    a_prime: bool
    b: bool
    witnesses: dict = field(default_factory=dict)


def _is_set(seq) -> bool:
    return all(m == 1 for m in Counter(seq).values())


def check_conditions(H: Hypergraph) -> ConditionsProfile:
    """Evaluate (LV), (A), (A') and (B); each verdict names a hyperedge.

    (LV): every hyperedge has |s|, |r| >= 2 (witness: a counterexample edge).
    (A): some hyperedge has |s|, |r| >= 2.
    (A'): some such hyperedge has a proper multiset side, or both sides are
    sets sharing a vertex.
    (B): every hyperedge has |s|, |r| >= 2 or |s| = |r| = 1.
    """
    wit: dict[str, Optional[str]] = {"lv": None, "a": None, "aPrime": None, "b": None}
    lv = True
    a = a_prime = False
    b = True
    for e in H.edges:
        ns, nr = len(e.source), len(e.range)
        big = ns >= 2 and nr >= 2
        if not big and lv:
            lv = False
            wit["lv"] = e.name
        if big and not a:
            a = True
            wit["a"] = e.name
        if big and not a_prime:
            s_set, r_set = _is_set(e.source), _is_set(e.range)
            if not s_set or not r_set or (set(e.source) & set(e.range)):
                a_prime = True
                wit["aPrime"] = e.name
        if not (big or (ns == 1 and nr == 1)) and b:
            b = False
            wit["b"] = e.name
    return ConditionsProfile(lv, a, a_prime, b, wit)


def is_connected(H: Hypergraph) -> bool:
    """Every vertex reaches every other by a d-path (stars make this symmetric)."""
    if not H.vertices:
        return True
    parent = {v: v for v in H.vertices}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x in H.letters:
        a, b = find(H.letter_source(x)), find(H.letter_range(x))
        if a != b:
            parent[a] = b
    return len({find(v) for v in H.vertices}) == 1


def local_valuation(a: AlgebraElement) -> float | int:
    """Largest word length in the normal form; ``-inf`` for zero."""
    if a.is_zero():
        return NEG_INF
    return max(word_length(w) for w in a.terms)


@dataclass(frozen=True)
class Verdict:
    status: str  # "yes" | "no" | "unknown"
    witness: Optional[str] = None
    citation: Optional[str] = None

    def as_dict(self) -> dict:
        return {"status": self.status, "witness": self.witness, "citation": self.citation}


UNKNOWN = Verdict("unknown")

CITE_NONSINGULAR = "LV => length valuation is a local valuation => nonsingular"
CITE_PRIME = "LV and connected => connected ring with local valuation => prime"
CITE_SEMIPRIMITIVE = "LV and connected => valuation zero exactly on span of vertices => semiprimitive"
CITE_VNR_LV = "LV and nonempty edge set => nontrivial local valuation => not von Neumann regular"
CITE_A = (
    "Condition A => valuative basis element h[2,2] h*[2,2] => infinite-dimensional, "
    "infinitely many ideals (not simple), neither left nor right Artinian, not von Neumann regular"
)
CITE_A_PRIME = "Condition A' => adhesive cancellative basis elements => neither left nor right Noetherian"
CITE_DOMAIN = "domain iff exactly one vertex and Condition B"


@dataclass(frozen=True)
class PropertyReport:
    verdicts: dict
    conditions: ConditionsProfile
    connected: bool

    def __getitem__(self, name: str) -> Verdict:
        return self.verdicts[name]

    def as_dict(self) -> dict:
        return {
            "conditions": {
                "LV": self.conditions.lv,
                "A": self.conditions.a,
                "A'": self.conditions.a_prime,
                "B": self.conditions.b,
                "witnesses": dict(self.conditions.witnesses),
            },
            "connected": self.connected,
            "properties": {k: self.verdicts[k].as_dict() for k in PROPERTIES},
        }


def property_report(H: Hypergraph) -> PropertyReport:
    cond = check_conditions(H)
    conn = is_connected(H)
    v: dict[str, Verdict] = {k: UNKNOWN for k in PROPERTIES}
    has_edges = bool(H.edges)
    if cond.lv:
        v["nonsingular"] = Verdict("yes", "every hyperedge has |s|,|r| >= 2", CITE_NONSINGULAR)
        if conn:
            v["prime"] = Verdict("yes", "LV holds and the hypergraph is connected", CITE_PRIME)
            v["semiprimitive"] = Verdict(
                "yes", "LV holds and the hypergraph is connected", CITE_SEMIPRIMITIVE
            )
        if has_edges:
            v["vonNeumannRegular"] = Verdict(
                "no", f"valuation of {H.edges[0].name}[1,1] is 1", CITE_VNR_LV
            )
    if cond.a:
        e = cond.witnesses["a"]
        wit = f"hyperedge {e}: element {e}[2,2] {e}*[2,2]"
        for name in ("finiteDimensional", "simple", "leftArtinian", "rightArtinian", "vonNeumannRegular"):
            v[name] = Verdict("no", wit, CITE_A)
    if cond.a_prime:
        wit = f"hyperedge {cond.witnesses['aPrime']}"
        v["leftNoetherian"] = Verdict("no", wit, CITE_A_PRIME)
        v["rightNoetherian"] = Verdict("no", wit, CITE_A_PRIME)
    n0 = len(H.vertices)
    if n0 == 1 and cond.b:
        v["domain"] = Verdict("yes", "one vertex and Condition B holds", CITE_DOMAIN)
    elif n0 != 1:
        v["domain"] = Verdict("no", f"{n0} vertices (distinct vertices multiply to 0)", CITE_DOMAIN)
    else:
        v["domain"] = Verdict(
            "no", f"Condition B fails at hyperedge {cond.witnesses['b']}", CITE_DOMAIN
        )
    return PropertyReport(v, cond, conn)
