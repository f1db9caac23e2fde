from __future__ import annotations

import itertools
from functools import reduce

import pytest
from hypothesis import given, strategies as st

from conftest import group
from oracles import naive_lee_search, triangle_violations
from leemetrics.catalog import load_catalog
from leemetrics.metric_engine import (
    GeneratorWeights, ORACLE_MAX_K, WeightFunction, brute_force_lee_oracle, decide_lee_by_search,
    find_any_integral_weight, find_interval_weight, format_weight, induced_partition, is_interval,
    is_lee_weight, metric, parse_weight, validate_weight, word_weight,
)
from leemetrics.partitions import (
    SymPartition, enumerate_unitary_symmetric, hamming_partition, lee_partition,
)

Z13_CUBES = [[0], [1, 5, 8, 12], [2, 3, 10, 11], [4, 6, 7, 9]]
SPECS = ["cyclic:7", "cyclic:12", "dihedral:4", "dihedral:5", "dicyclic:8", "dicyclic:12", "alt:4",
         "sym:3", "prod(cyclic:3,cyclic:3)", "prod(cyclic:4,cyclic:2)", "qd:4,-"]


def d4_table_weight():
    D4 = group("dihedral:4")
    w = [0] * 8
    for lab, val in zip(["e", "τ", "ρτ", "ρ³", "ρ", "ρ³τ", "ρ²τ", "ρ²"], (0, 1, 2, 3, 3, 4, 5, 6)):
        w[D4.index(lab)] = val
    return D4, w


def d4_rotation_partition():
    D4 = group("dihedral:4")
    ix = D4.index
    return D4, SymPartition.from_blocks(D4, [[ix("e")], [ix("ρ"), ix("ρ²"), ix("ρ³")], [ix("τ")],
                                             [ix("ρτ")], [ix("ρ²τ")], [ix("ρ³τ")]])


# -- validation ---------------------------------------------------------------


def test_validate_examples():
    Z8 = group("cyclic:8")
    assert validate_weight(Z8, [min(x, 8 - x) for x in range(8)])
    Q16 = group("dicyclic:16")
    assert validate_weight(Q16, (0, 2, 4, 3, 1, 3, 4, 2, 5, 6, 8, 7, 5, 6, 8, 7))
    Z5 = group("cyclic:5")
    chk = validate_weight(Z5, [0, 1, 3, 3, 1])
    assert not chk and chk.violation.startswith("w3 at (1,1)")


def test_validate_reports_each_axiom():
    Z4 = group("cyclic:4")
    assert validate_weight(Z4, [1, 1, 1, 1]).violation.startswith("w1")
    assert validate_weight(Z4, [0, 0, 1, 1]).violation.startswith("w1")
    assert validate_weight(Z4, [0, 1, 2, 3]).violation.startswith("w2")
    with pytest.raises(ValueError):
        validate_weight(Z4, [0, 1, 1])


@given(st.sampled_from(SPECS), st.data())
def test_validate_agrees_with_plain_loops(spec, data):
    G = group(spec)
    lee = lee_partition(G)
    vals = data.draw(st.lists(st.integers(1, 6), min_size=lee.s, max_size=lee.s))
    w = [0 if b == 0 else vals[b - 1] for b in lee.block_of]
    assert bool(validate_weight(G, w)) == (not triangle_violations(G, w))


def test_is_interval_examples():
    Z9 = group("cyclic:9")
    w = [min(x, 9 - x) for x in range(9)]
    assert is_interval(Z9, w) and max(w) == 4
    Z13 = group("cyclic:13")
    gapped = [0] * 13
    for val, block in zip((2, 3, 4), Z13_CUBES[1:]):
        for g in block:
            gapped[g] = val
    assert not is_interval(Z13, gapped)
    G = group("sym:3")
    assert is_interval(G, [0 if g == G.identity else 1 for g in range(G.n)])


def test_metric_is_right_invariant():
    D4, w = d4_table_weight()
    for x, y, g in itertools.product(range(8), repeat=3):
        assert metric(D4, w, D4.rows[x][g], D4.rows[y][g]) == metric(D4, w, x, y)
    assert all(metric(D4, w, x, x) == 0 for x in range(8))


# -- word metrics ----------------------------------------------------------


def test_word_weight_dihedral_four():
    D4 = group("dihedral:4")
    t, s = D4.index("τ"), D4.index("ρτ")
    w = word_weight(D4, GeneratorWeights({t: 1, s: 2}))

    def m(*xs):
        return reduce(lambda a, b: D4.rows[a][b], xs, D4.identity)

    words = [m(), m(t), m(s), m(t, s), m(s, t), m(t, s, t), m(s, t, s), m(t, s, t, s)]
    assert [w[x] for x in words] == [0, 1, 2, 3, 3, 4, 5, 6]


def test_word_weight_dihedral_six_pattern():
    D6 = group("dihedral:6")
    t, s = D6.index("τ"), D6.index("ρτ")
    w = word_weight(D6, {t: 1, s: 2})
    st_, ts = D6.rows[s][t], D6.rows[t][s]
    for k in range(4):
        stk = D6.power(st_, k)
        tsk = D6.power(ts, k)
        assert w[stk] == w[tsk] == 3 * k
        if k < 3:
            assert w[D6.rows[tsk][t]] == 3 * k + 1
            assert w[D6.rows[stk][s]] == 3 * k + 2


@pytest.mark.parametrize("m", range(1, 65))
def test_word_weight_on_cycle_is_classic_lee(m):
    G = group(f"cyclic:{m}")
    w = word_weight(G, {1 % m: 1})
    assert list(w) == [min(x, m - x) for x in range(m)]


def test_word_weight_rejects_non_generating_set():
    with pytest.raises(ValueError):
        word_weight(group("cyclic:6"), {2: 1})
    with pytest.raises(ValueError):
        GeneratorWeights({1: 0})


@given(st.sampled_from(SPECS), st.data())
def test_word_weight_always_valid(spec, data):
    G = group(spec)
    gens = data.draw(st.sets(st.integers(1, max(1, G.n - 1)), min_size=1, max_size=4)) if G.n > 1 else {0}
    # top up with every element of cost 9 when the draw misses a generating set
    costs = {g: data.draw(st.integers(1, 5)) for g in gens if g < G.n}
    if G.n > 1:
        from leemetrics.group_core import generated_subgroup
        if len(generated_subgroup(G, costs)) < G.n:
            costs.update({g: 9 for g in range(G.n) if g != G.identity and g not in costs})
    w = word_weight(G, costs)
    assert validate_weight(G, w)
    assert not triangle_violations(G, w)


# -- interval search on fixed partitions ----------------------------------------


def test_z13_cubes_have_no_interval_weight():
    Z13 = group("cyclic:13")
    P = SymPartition.from_blocks(Z13, Z13_CUBES)
    assert find_interval_weight(Z13, P).status == "none"


def test_hamming_partition_gets_weight_one():
    for spec in SPECS:
        G = group(spec)
        res = find_interval_weight(G, hamming_partition(G))
        assert res.status == "found"
        assert sorted(set(res.weight)) == ([0, 1] if G.n > 1 else [0])


def test_d4_rotation_partition_has_no_interval_weight():
    D4, P = d4_rotation_partition()
    assert find_interval_weight(D4, P).status == "none"


def naive_interval_exists(G, P) -> bool:
    """Try every assignment of 1..s to the blocks and check the triangle inequality by loops."""
    for perm in itertools.permutations(range(1, P.s + 1)):
        vals = (0, *perm)
        w = [vals[b] for b in P.block_of]
        if not triangle_violations(G, w):
            return True
    return False


@pytest.mark.parametrize("spec", ["cyclic:7", "cyclic:8", "cyclic:9", "cyclic:10", "dihedral:3",
                                  "dihedral:4", "dicyclic:8", "prod(cyclic:3,cyclic:3)",
                                  "prod(cyclic:4,cyclic:2)", "sym:3", "dicyclic:12", "cyclic:13"])
def test_interval_search_matches_naive_on_every_partition(spec):
    G = group(spec)
    for P in enumerate_unitary_symmetric(G):
        res = find_interval_weight(G, P)
        assert res.status in ("found", "none")
        assert (res.status == "found") == naive_interval_exists(G, P), (spec, P.blocks)
        if res.weight is not None:
            assert validate_weight(G, res.weight)
            assert is_interval(G, res.weight)
            assert induced_partition(G, res.weight) == P


def test_integral_weight_examples():
    Z13 = group("cyclic:13")
    P = SymPartition.from_blocks(Z13, Z13_CUBES)
    res = find_any_integral_weight(Z13, P, 4)
    assert res.status == "found"
    assert set(res.weight) == {0, 2, 3, 4}
    assert validate_weight(Z13, res.weight) and induced_partition(Z13, res.weight) == P
    assert find_any_integral_weight(Z13, P, 3).status == "none"
    Z5 = group("cyclic:5")
    assert list(find_any_integral_weight(Z5, lee_partition(Z5), 2).weight) == [0, 1, 2, 2, 1]


def test_integral_with_bound_s_equals_interval():
    for spec in ("sym:3", "dihedral:4", "cyclic:8"):
        G = group(spec)
        for P in enumerate_unitary_symmetric(G):
            a = find_interval_weight(G, P)
            b = find_any_integral_weight(G, P, P.s)
            assert a.status == b.status
            if b.weight is not None:
                assert is_interval(G, b.weight)


def test_budget_exhaustion_is_a_value():
    G = group("sym:4")
    res = find_interval_weight(G, lee_partition(G), budget=5)
    assert res.status == "budget" and res.weight is None
    v = decide_lee_by_search(G, budget=5)
    assert v.outcome == "Undecided" and v.witness is None


# -- Lee decisions ---------------------------------------------------------------


@pytest.mark.parametrize("spec,outcome", [
    ("alt:4", "No"), ("prod(cyclic:4,cyclic:4)", "Yes"), ("sym:4", "No"),
])
def test_search_examples(spec, outcome):
    G = group(spec)
    v = decide_lee_by_search(G)
    assert v.outcome == outcome
    if outcome == "Yes":
        assert is_lee_weight(G, v.witness)


@pytest.mark.parametrize("spec,outcome", [
    ("prod(cyclic:3,cyclic:3)", "No"), ("dicyclic:8", "Yes"), ("cyclic:8", "Yes"),
])
def test_oracle_examples(spec, outcome):
    G = group(spec)
    v = brute_force_lee_oracle(G)
    assert v.outcome == outcome and v.reason == "exhaustive-search"
    if v.witness is not None:
        assert is_lee_weight(G, v.witness)


def test_oracle_refuses_large_k():
    G = group("cyclic:22")
    assert len(lee_partition(G).blocks) - 1 > ORACLE_MAX_K
    with pytest.raises(ValueError):
        brute_force_lee_oracle(G)


def test_search_matches_independent_element_search_on_catalog():
    """Every catalog group, against a plain element-level backtracker with no block tables."""
    for e in load_catalog():
        G = e.build()
        v = decide_lee_by_search(G)
        found, w, _ = naive_lee_search(G)
        assert found is not None, e.name
        assert (v.outcome == "Yes") == found, e.name
        if found:
            assert is_lee_weight(G, w) and is_lee_weight(G, v.witness)


def test_verdict_json_shape():
    G = group("cyclic:6")
    doc = decide_lee_by_search(G).to_json("Z6", 3)
    assert list(doc) == ["group", "k", "outcome", "reason", "witness", "nodes", "millis"]
    doc = decide_lee_by_search(group("alt:4")).to_json("A4", 7)
    assert "witness" not in doc and doc["outcome"] == "No"


def test_weight_text_round_trip():
    for spec in ("dihedral:4", "sym:3", "prod(cyclic:2,cyclic:2)", "affine:5"):
        G = group(spec)
        w = WeightFunction(range(G.n))
        assert parse_weight(G, format_weight(G, w)) == w
    with pytest.raises(ValueError):
        parse_weight(group("cyclic:3"), "0 0\n1 1\n")
