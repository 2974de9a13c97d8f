"""Shared test hypergraphs and random generators."""

import random
from fractions import Fraction

from hlpa import parse_hypergraph

SQUARE = "vertices: v1 v2 w1 w2\nedge h: v1 v2 -> w1 w2\n"
LAURENT = "vertices: u\nedge l: u -> u\n"
L12 = "vertices: u\nedge f: u -> u u\n"
L23 = "vertices: u\nedge g: u u -> u u u\n"
EDGELESS = "vertices: u\n"
TWO_CYCLE = "vertices: u1 u2\nedge l1: u1 -> u2\nedge l2: u2 -> u1\n"


def square():
    return parse_hypergraph(SQUARE)


def laurent():
    return parse_hypergraph(LAURENT)


def l12():
    return parse_hypergraph(L12)


def l23():
    return parse_hypergraph(L23)


def edgeless():
    return parse_hypergraph(EDGELESS)


def two_cycle():
    return parse_hypergraph(TWO_CYCLE)


ALL = {"square": square, "laurent": laurent, "l12": l12, "l23": l23}


def random_dpath(H, rng: random.Random, max_len: int, start=None):
    """A random word that is a d-path (forbidden pairs allowed) or a lone vertex."""
    n = rng.randint(0, max_len)
    if n == 0 or not H.letters:
        return (start or rng.choice(H.vertices),)
    by_source = {}
    for x in H.letters:
        by_source.setdefault(H.letter_source(x), []).append(x)
    at = start
    if at is None or at not in by_source:
        at = rng.choice(sorted(by_source))
    word = []
    for _ in range(n):
        opts = by_source.get(at)
        if not opts:
            break
        x = rng.choice(opts)
        word.append(x)
        at = H.letter_range(x)
    return tuple(word) if word else (at,)


def random_coef(rng: random.Random):
    return Fraction(rng.choice([-3, -2, -1, 1, 2, 3, 5]), rng.choice([1, 1, 1, 2, 3]))


def random_raw(H, rng: random.Random, max_terms: int = 6, max_len: int = 6) -> dict:
    raw = {}
    for _ in range(rng.randint(1, max_terms)):
        w = random_dpath(H, rng, max_len)
        raw[w] = raw.get(w, 0) + random_coef(rng)
    return raw
