import random
from itertools import combinations
from math import gcd

import pytest

import helpers
from hlpa import (
    AlgebraError,
    Hypergraph,
    HypergraphError,
    MonoidPresentation,
    group_completion,
    monoid_equal_bounded,
    monoid_to_hypergraph,
    v_monoid_presentation,
)
from hlpa.hypergraph import same_up_to_ordering
from hlpa.monoid import apply_step, replay


def test_square_presentation(HS):
    P = v_monoid_presentation(HS)
    assert P.generators == ("v1", "v2", "w1", "w2")
    assert P.relations == (((1, 1, 0, 0), (0, 0, 1, 1)),)
    assert str(P) == "<v1, v2, w1, w2 | v1 + v2 = w1 + w2>"


def test_edgeless_presentation(H0):
    P = v_monoid_presentation(H0)
    assert P.relations == ()
    assert group_completion(P).free_rank == 1


def test_l23_presentation(H23):
    P = v_monoid_presentation(H23)
    assert P.relations == (((2,), (3,)),)
    assert str(P) == "<u | 2u = 3u>"


def test_inverse_construction():
    P = MonoidPresentation(("x",), (((2,), (3,)),))
    H = monoid_to_hypergraph(P)
    assert same_up_to_ordering(H, Hypergraph.build(["x"], [("h1", ["x", "x"], ["x"] * 3)]))
    Q = MonoidPresentation(("x", "y"), (((1, 1), (0, 2)),))
    (e,) = monoid_to_hypergraph(Q).edges
    assert sorted(e.source) == ["x", "y"] and e.range == ("y", "y")
    free = monoid_to_hypergraph(MonoidPresentation(("x",), ()))
    assert free.vertices == ("x",) and free.edges == ()


def test_inverse_rejects_zero_side():
    with pytest.raises(HypergraphError, match="all-zero side"):
        monoid_to_hypergraph(MonoidPresentation(("x",), (((0,), (1,)),)))


@pytest.mark.parametrize("name", list(helpers.ALL))
def test_round_trips(name):
    H = helpers.ALL[name]()
    P = v_monoid_presentation(H)
    assert monoid_to_hypergraph(P) == H
    assert v_monoid_presentation(monoid_to_hypergraph(P)) == P


def test_round_trip_random_presentations():
    rng = random.Random(4)
    for _ in range(50):
        n = rng.randint(1, 4)
        rels = []
        for _ in range(rng.randint(0, 3)):
            lhs = [rng.randint(0, 2) for _ in range(n)]
            rhs = [rng.randint(0, 2) for _ in range(n)]
            lhs[rng.randrange(n)] += 1
            rhs[rng.randrange(n)] += 1
            rels.append((tuple(lhs), tuple(rhs)))
        P = MonoidPresentation(tuple(f"x{k}" for k in range(n)), tuple(rels))
        assert v_monoid_presentation(monoid_to_hypergraph(P)).equivalent(P)


def test_equivalence_ignores_order():
    P = MonoidPresentation(("a", "b"), (((1, 0), (0, 2)), ((1, 1), (2, 0))))
    Q = MonoidPresentation(("b", "a"), (((0, 2), (1, 1)), ((2, 0), (0, 1))))
    assert P.equivalent(Q)
    R = MonoidPresentation(("b", "a"), (((0, 2), (1, 1)), ((3, 0), (0, 1))))
    assert not P.equivalent(R)


def test_presentation_validation():
    with pytest.raises(AlgebraError):
        MonoidPresentation(("a", "a"), ())
    with pytest.raises(AlgebraError):
        MonoidPresentation(("a",), (((1, 0), (1,)),))
    with pytest.raises(AlgebraError):
        MonoidPresentation(("a",), (((-1,), (1,)),))


# word problem -------------------------------------------------------------


def test_word_problem_square(HS):
    P = v_monoid_presentation(HS)
    r = monoid_equal_bounded(P, (1, 1, 0, 0), (0, 0, 1, 1), 5)
    assert r.equal and len(r.trace) == 1
    assert replay(P, (1, 1, 0, 0), r.trace) == (0, 0, 1, 1)
    assert monoid_equal_bounded(P, (1, 0, 0, 0), (1, 0, 0, 0), 0).trace == ()


def test_word_problem_l23(H23):
    P = v_monoid_presentation(H23)
    r = monoid_equal_bounded(P, (2,), (5,), 10)
    assert r.equal and len(r.trace) == 3
    assert replay(P, (2,), r.trace) == (5,)
    assert monoid_equal_bounded(P, (1,), (2,), 10).status == "unknown"


def test_conical_zero(HS, H23):
    for H in (HS, H23):
        P = v_monoid_presentation(H)
        n = len(P.generators)
        zero = (0,) * n
        assert monoid_equal_bounded(P, zero, zero, 3).equal
        for k in range(n):
            x = tuple(1 if i == k else 0 for i in range(n))
            assert not monoid_equal_bounded(P, zero, x, 6).equal


def test_word_problem_dimension_mismatch(HS):
    with pytest.raises(AlgebraError):
        monoid_equal_bounded(v_monoid_presentation(HS), (1,), (1,), 3)


def test_random_traces_replay():
    rng = random.Random(9)
    P = MonoidPresentation(("a", "b", "c"), (((1, 1, 0), (0, 0, 2)), ((0, 0, 1), (1, 0, 1)), ((2, 0, 0), (0, 1, 0))))
    for _ in range(40):
        a = tuple(rng.randint(0, 2) for _ in range(3))
        x = a
        for _ in range(rng.randint(0, 4)):
            moves = [(k, f) for k in range(3) for f in (True, False) if apply_step(P, x, k, f) is not None]
            if not moves:
                break
            x = apply_step(P, x, *rng.choice(moves))
        r = monoid_equal_bounded(P, a, x, 8)
        if max(x) <= 8:
            assert r.equal
            assert replay(P, a, r.trace) == x


# group completion ---------------------------------------------------------------


def _det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** c * m[0][c] * _det([row[:c] + row[c + 1 :] for row in m[1:]]) for c in range(len(m)))


def _determinantal_invariants(rows, n):
    """Free rank and torsion from gcds of k x k minors (independent of any Smith routine)."""
    divisors = [1]
    k = 1
    while k <= min(len(rows), n):
        g = 0
        for rs in combinations(range(len(rows)), k):
            for cs in combinations(range(n), k):
                g = gcd(g, _det([[rows[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        divisors.append(g)
        k += 1
    factors = [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]
    return n - len(factors), tuple(f for f in factors if f > 1)


def test_group_completion_examples(HS, H23):
    g = group_completion(v_monoid_presentation(HS))
    assert (g.free_rank, g.torsion) == (3, ())
    g = group_completion(v_monoid_presentation(H23))
    assert (g.free_rank, g.torsion) == (0, ())
    assert str(g) == "0"
    free = MonoidPresentation(("a", "b", "c"), ())
    assert group_completion(free).free_rank == 3


def test_group_completion_torsion():
    P = MonoidPresentation(("u",), (((1,), (3,)),))
    g = group_completion(P)
    assert (g.free_rank, g.torsion) == (0, (2,))
    assert str(g) == "Z/2"


def test_group_completion_against_minors():
    rng = random.Random(12)
    for _ in range(60):
        n = rng.randint(1, 4)
        rels = []
        for _ in range(rng.randint(1, 3)):
            lhs = tuple(rng.randint(0, 3) for _ in range(n))
            rhs = tuple(rng.randint(0, 3) for _ in range(n))
            rels.append((lhs, rhs))
        P = MonoidPresentation(tuple(f"x{k}" for k in range(n)), tuple(rels))
        rows = [[l - r for l, r in zip(lhs, rhs)] for lhs, rhs in rels]
        g = group_completion(P)
        assert (g.free_rank, g.torsion) == _determinantal_invariants(rows, n)
