import random

import pytest

import helpers
from hlpa import (
    BudgetExhausted,
    Hypergraph,
    InconsistencyError,
    Letter,
    AlgebraError,
    StepCounter,
    connects,
    enumerate_quasi_cycles,
    gk_dimension,
    growth_table,
    is_nod_path,
    max_chain,
    parse_hypergraph,
    selfconnected_witness,
    check_conditions,
)
from hlpa.algebra import star_word
from hlpa.basis import iter_nod_paths
from hlpa.gk import QuasiCycle, _check_class_dag, connects_nod, is_quasi_cycle, shifts

L = Letter
h22, h22s = L("h", 2, 2), L("h", 2, 2, True)

EXTRA = {
    "sink": "vertices: a b\nedge x: a -> a\nedge y: a -> b\n",
    "gk2": "vertices: a b\nedge e0: b -> a b\n",
    "gk3": "vertices: a b c\nedge e0: c a -> c\nedge e1: a -> a\n",
    "two_loops": "vertices: a b\nedge x: a -> a\nedge y: a -> b\nedge z: b -> b\n",
}


def all_test_hypergraphs():
    out = {k: f() for k, f in helpers.ALL.items()}
    out["edgeless"] = helpers.edgeless()
    out.update({k: parse_hypergraph(t) for k, t in EXTRA.items()})
    return out


GRAPHS = all_test_hypergraphs()


# quasi-cycles -----------------------------------------------------------------


def test_square_quasi_cycles(HS):
    qc = enumerate_quasi_cycles(HS)
    assert [c.word for c in qc] == [(h22, h22s), (h22s, h22)]
    assert len({c.class_id for c in qc}) == 1


def test_laurent_quasi_cycles(HL):
    qc = enumerate_quasi_cycles(HL)
    assert sorted(c.word for c in qc) == sorted([(L("l", 1, 1),), (L("l", 1, 1, True),)])
    assert len({c.class_id for c in qc}) == 2


def test_edgeless_quasi_cycles(H0):
    assert enumerate_quasi_cycles(H0) == []


@pytest.mark.parametrize("name", ["square", "laurent", "l12", "edgeless", "sink", "gk2", "gk3", "two_loops"])
def test_pruned_search_matches_literal_algorithm(name):
    H = GRAPHS[name]
    assert enumerate_quasi_cycles(H) == enumerate_quasi_cycles(H, prune=False)


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_quasi_cycle_invariants(name):
    H = GRAPHS[name]
    qc = enumerate_quasi_cycles(H)
    words = {c.word: c.class_id for c in qc}
    g = H.letter_graph
    for c in qc:
        p = c.word
        assert is_quasi_cycle(p, H)
        assert len(set(p)) == len(p)
        for s in shifts(p):
            assert words[s] == c.class_id
        assert star_word(p) in words
        n = len(p)
        for i in range(n):
            for j in range(n):
                assert g.allowed(p[i], p[j]) == (j == i + 1 or (i == n - 1 and j == 0))


def test_is_quasi_cycle_rejects(HS, HL):
    assert not is_quasi_cycle((h22,), HS)
    assert not is_quasi_cycle((L("l", 1, 1), L("l", 1, 1)), HL)
    assert not is_quasi_cycle(("u",), HL)


# connectors -------------------------------------------------------------------


def test_connects_examples(H12, HL, HS):
    f11, f12 = L("f", 1, 1), L("f", 1, 2)
    assert connects_nod((f11,), (f11,), H12) == (f12,)
    l, ls = L("l", 1, 1), L("l", 1, 1, True)
    assert connects_nod((l,), (ls,), HL) is None
    assert connects((l,), (l,), HL)
    assert not connects((l,), (ls,), HL)
    assert connects_nod((h22, h22s), (h22, h22s), HS) is None


def test_connects_same_class_in_square(HS):
    # h[2,2] h*[2,2] . h*[2,2] h[2,2] is no path, but o = h[2,2] connects them
    p, q = (h22, h22s), (h22s, h22)
    assert not is_nod_path(p + q, HS)
    o = connects_nod(p, q, HS)
    assert o == (h22,)
    assert is_nod_path(p + o + q, HS)
    assert connects(p, q, HS)


def test_connects_needs_nod_paths(HS):
    with pytest.raises(AlgebraError):
        connects_nod((L("h", 1, 1), L("h", 1, 1, True)), (h22,), HS)
    with pytest.raises(AlgebraError):
        connects_nod(("v1",), (h22,), HS)


def _brute_connector_length(p, q, H, paths):
    for o in paths:
        if o[: len(p)] == p:
            continue
        if is_nod_path(p + o + q, H):
            return len(o)
    return None


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_automaton_agrees_with_brute_force(name):
    H = GRAPHS[name]
    paths = [w for w in iter_nod_paths(H, 6) if isinstance(w[0], Letter)]
    short = [w for w in iter_nod_paths(H, 2) if isinstance(w[0], Letter)]
    rng = random.Random(name)
    pairs = [(c.word, d.word) for c in enumerate_quasi_cycles(H) for d in enumerate_quasi_cycles(H)]
    pairs += [(rng.choice(short), rng.choice(short)) for _ in range(30)] if short else []
    for p, q in pairs[:120]:
        o = connects_nod(p, q, H)
        brute = _brute_connector_length(p, q, H, paths)
        if o is None:
            assert brute is None
        else:
            assert o[: len(p)] != p and is_nod_path(p + o + q, H)
            if len(o) <= 6:
                assert brute == len(o)
            else:
                assert brute is None


# GK dimension -----------------------------------------------------------------


def test_gk_square(HS):
    r = gk_dimension(HS)
    assert r.kind == "finite" and r.dimension == 1
    assert [link.cycle.word for link in r.chain] == [(h22, h22s)]
    assert str(r) == "GKdim = 1; chain: [h[2,2] h*[2,2]]"


def test_gk_l12_exponential(H12):
    r = gk_dimension(H12)
    assert r.kind == "exponential"
    assert (r.witness.word, r.connector) == ((L("f", 1, 1),), (L("f", 1, 2),))
    assert selfconnected_witness(H12)[0].word == (L("f", 1, 1),)


def test_gk_edgeless_and_laurent(H0, HL):
    assert gk_dimension(H0).dimension == 0
    assert max_chain(H0) == (0, [])
    assert max_chain(HL)[0] == 1


def test_l23_exponential(H23):
    assert check_conditions(H23).a_prime
    assert gk_dimension(H23).kind == "exponential"


def test_max_chain_requires_no_selfconnected(H12):
    with pytest.raises(AlgebraError):
        max_chain(H12)


@pytest.mark.parametrize("name", sorted(GRAPHS))
def test_witnesses_check_out(name):
    H = GRAPHS[name]
    r = gk_dimension(H)
    if r.is_finite:
        assert r.dimension == len(r.chain)
        classes = [link.cycle.class_id for link in r.chain]
        assert len(set(classes)) == len(classes)
        for a, b in zip(r.chain, r.chain[1:]):
            p, q = a.cycle.word, b.cycle.word
            o = b.connector
            if o is None:
                assert is_nod_path(p + q, H)
            else:
                assert o[: len(p)] != p and is_nod_path(p + o + q, H)
    else:
        p, o = r.witness.word, r.connector
        assert is_quasi_cycle(p, H)
        assert o[: len(p)] != p and is_nod_path(p + o + p, H)


@pytest.mark.parametrize("name, d", [("square", 1), ("laurent", 1), ("sink", 1), ("gk2", 2), ("gk3", 3)])
def test_finite_dimension_matches_growth(name, d):
    H = GRAPHS[name]
    assert gk_dimension(H).dimension == d
    cum = growth_table(H, 24).cumulative
    assert abs(cum[24] / cum[12] / 2**d - 1) <= 0.3


def _random_hypergraph(rng):
    vs = ["a", "b", "c"][: rng.randint(1, 3)]
    edges = [
        (f"e{k}", [rng.choice(vs) for _ in range(rng.randint(1, 2))], [rng.choice(vs) for _ in range(rng.randint(1, 3))])
        for k in range(rng.randint(0, 3))
    ]
    return Hypergraph.build(vs, edges)


def test_growth_surrogate_on_random_hypergraphs():
    rng = random.Random(11)
    for _ in range(150):
        H = _random_hypergraph(rng)
        r = gk_dimension(H)
        cum = growth_table(H, 24).cumulative
        if not r.is_finite:
            assert all(cum[n + 2] / cum[n] >= 1.5 for n in range(6, 13))
        elif r.dimension == 0:
            assert cum[24] == cum[12]
        else:
            assert abs(cum[24] / cum[12] / 2**r.dimension - 1) <= 0.3
        if check_conditions(H).a_prime:
            assert not r.is_finite


def test_class_cycle_reported():
    a = QuasiCycle((L("x", 1, 1),), 0)
    b = QuasiCycle((L("y", 1, 1),), 1)
    with pytest.raises(InconsistencyError):
        _check_class_dag([a, b], {0: [(1, None)], 1: [(0, None)]})


def test_budget_guard(monkeypatch, H23):
    H = GRAPHS["gk3"]
    monkeypatch.setenv("HLPA_MAX_STEPS", "20")
    with pytest.raises(BudgetExhausted, match="budget exhausted after 20 steps"):
        gk_dimension(H)
    monkeypatch.delenv("HLPA_MAX_STEPS")
    assert gk_dimension(H).dimension == 3
    with pytest.raises(BudgetExhausted):
        enumerate_quasi_cycles(H23, StepCounter(5))
