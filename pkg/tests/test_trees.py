import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import oracles
from opd import trees as tr
from opd.trees import (
    LEAF,
    EdgeRef,
    NotInnerEdge,
    RootInStar,
    TruncationRequired,
    corolla,
    parse,
    to_str,
)


@st.composite
def trees(draw, max_inner=6, arities=(0, 1, 2, 3)):
    k = draw(st.integers(0, max_inner))
    seed = draw(st.integers(0, 2**32 - 1))
    return tr.random_tree(random.Random(seed), k, list(arities))


# -- encoding --------------------------------------------------------------

def test_basic_encodings():
    assert to_str(LEAF) == "*"
    assert to_str(corolla(0)) == "()"
    assert to_str(corolla(2)) == "(**)"


@given(trees())
def test_parse_round_trip(t):
    assert parse(to_str(t)) == t


@pytest.mark.parametrize("bad", ["", "(", "(*", "*)", "x", "(*)*"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse(bad)


def test_counts_of_mixed_arity_tree():
    t = parse("((***)(*()*))")
    assert tr.n_leaves(t) == 5
    assert tr.n_inner(t) == 4
    assert [a for _, a, _ in tr.inner_vertices(t)] == [2, 3, 3, 0]
    assert tr.height(t) == 3


# -- enumeration -----------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 8))
def test_binary_trees_are_catalan(n):
    assert len(tr.enumerate_trees(n, [2])) == oracles.catalan(n - 1)


@pytest.mark.parametrize("n,k", [(0, 3), (1, 2), (2, 3), (3, 4)])
def test_mixed_arities_match_recursion(n, k):
    sup = frozenset({0, 1, 2, 3})
    got = tr.enumerate_trees(n, sup, k)
    assert len(got) == sum(oracles.tree_count(n, j, sup) for j in range(k + 1))
    assert len(set(got)) == len(got)
    assert all(tr.n_leaves(t) == n and tr.n_inner(t) <= k for t in got)


def test_unbounded_enumeration_refused():
    with pytest.raises(TruncationRequired):
        tr.enumerate_trees(2, [0, 2])


@pytest.mark.parametrize("k", range(0, 5))
def test_all_trees_by_inner_counts(k):
    sup = frozenset({0, 1, 2, 3})
    got = [t for t in tr.all_trees_by_inner(k, sup) if tr.n_inner(t) == k]
    expect = sum(oracles.tree_count(n, k, sup) for n in range(0, 3 * k + 2))
    assert len(got) == expect


@pytest.mark.parametrize("n,t,ev", [(1, 1, [1]), (2, 1, [2]), (1, 2, [1]), (2, 1, [1, 2]),
                                    (0, 1, [0])])
def test_even_level_trees_by_brute_force(n, t, ev):
    got = tr.enumerate_even_level_trees(n, t, ev)
    bound = 1 + t + t * max(ev)
    brute = []
    for s in tr.all_trees_by_inner(bound, range(n + t + 1) if n + t else [0]):
        if tr.n_leaves(s) != n or not tr.leaves_even(s):
            continue
        evens, odds = tr.parity_split(s)
        if len(evens) != t or s.is_leaf:
            continue
        if all(tr.subtree(s, a).arity in ev for a in evens):
            brute.append(s)
    assert sorted(map(to_str, got)) == sorted(map(to_str, brute))


# -- grafting ---------------------------------------------------------------

def test_graft_arity_mismatch():
    with pytest.raises(tr.ArityMismatch):
        tr.graft(corolla(2), [LEAF])


@given(trees(max_inner=3), trees(max_inner=3), trees(max_inner=3), st.data())
def test_graft_associative(a, b, c, data):
    # (a ∘ᵢ b) ∘_{i+j−1} c = a ∘ᵢ (b ∘ⱼ c)
    na, nb = tr.n_leaves(a), tr.n_leaves(b)
    assume(na > 0 and nb > 0)
    i = data.draw(st.integers(1, na))
    j = data.draw(st.integers(1, nb))
    lhs = tr.circ_i_tree(tr.circ_i_tree(a, i, b), i + j - 1, c)
    rhs = tr.circ_i_tree(a, i, tr.circ_i_tree(b, j, c))
    assert lhs == rhs


@given(trees())
def test_unit_tree_is_neutral(t):
    assert tr.graft(t, [LEAF] * tr.n_leaves(t)) == t
    assert tr.circ_i_tree(LEAF, 1, t) == t


@given(trees())
def test_decompose_round_trip(t):
    e = tr.decompose_into_corollas(t)
    assert tr.evaluate_decomposition(e) == t


def test_decomposition_text():
    t = parse("((**)(*()*))")
    assert tr.format_decomposition(tr.decompose_into_corollas(t)) == "C2(C2,C3(U,C0,U))"


def test_roundtrip_census_small():
    n, bad = tr.roundtrip_census(4, [0, 1, 2, 3])
    assert bad == []
    assert n == 1 + 4 + 24 + 208 + 2080


# -- contractions -----------------------------------------------------------

def test_contracting_root_edge_refused():
    with pytest.raises(NotInnerEdge):
        tr.contract(corolla(2), EdgeRef(()))


def test_contract_single_edge():
    t = parse("((**)*)")
    assert tr.contract(t, EdgeRef((1,))) == corolla(3)


@given(trees(max_inner=6))
def test_collapse_gives_corolla(t):
    c = tr.collapse(t)
    if t.is_leaf:
        assert c == LEAF
    else:
        assert c == corolla(tr.n_leaves(t))


@given(trees(max_inner=6), st.data())
def test_contraction_functoriality(t, data):
    es = tr.inner_edges(t)
    assume(len(es) >= 2)
    e, f = data.draw(st.permutations(es))[:2]
    assert tr.check_contraction_pair(t, e, f)


@given(trees(max_inner=6), st.data())
def test_contraction_order_independent(t, data):
    es = tr.inner_edges(t)
    assume(len(es) >= 2)
    e, f = data.draw(st.permutations(es))[:2]
    (f1,) = tr.image_edges(t, [e], [f])
    (e1,) = tr.image_edges(t, [f], [e])
    assert tr.contract(tr.contract(t, e), f1) == tr.contract(tr.contract(t, f), e1)


def test_tree_morphism_codomain():
    t = parse("((**)(**))")
    m = tr.TreeMorphism(t, frozenset({EdgeRef((1,)), EdgeRef((2,))}))
    assert m.codomain == corolla(4)


# -- stars ------------------------------------------------------------------

def test_extended_star_and_r():
    t = parse("(*((**)(***)))")
    v = (2,)
    assert tr.star(t, v) == [EdgeRef((2,)), EdgeRef((2, 1)), EdgeRef((2, 2))]
    assert tr.link(t, v) == [(), (2, 1), (2, 2)]
    assert tr.extended_star(t, v) == parse("(*((**)(***)))")
    assert tr.r_of(t, v) == 2 + 2 + 3 - 1
    q, _ = tr.contract_star(t, v)
    assert q == corolla(tr.r_of(t, v) + 0)


def test_star_restrictions():
    with pytest.raises(RootInStar):
        tr.r_of(parse("((**))"), ())
    with pytest.raises(NotInnerEdge):
        tr.r_of(parse("((*(**)))"), (1,))


# -- rendering --------------------------------------------------------------

def test_render_marks_parity():
    pic = tr.render(parse("((**)*)"))
    lines = pic.splitlines()
    assert lines[0] == "root"
    assert "o arity 2" in lines[1]
    assert "# arity 2" in lines[2]


def test_render_distinguishes_unit_tree():
    assert "bare edge" in tr.render(LEAF)
    assert "bare edge" not in tr.render(corolla(1))


def test_parity_pattern_tree_is_a_cell_with_four_leaves():
    # root edge, odd binary vertex, then an even ternary vertex whose inputs
    # carry the remaining even vertices of arity 0 and 1
    t = parse("(*((()*(()))()(**)))")
    evens, odds = tr.parity_split(t)
    assert tr.leaves_even(t)
    assert (tr.n_leaves(t), len(evens), len(odds)) == (4, 3, 5)
    assert sorted(tr.subtree(t, a).arity for a in evens) == [0, 1, 3]
    cells = tr.enumerate_even_level_trees(4, 3, [0, 1, 3], [0, 2, 3])
    assert to_str(t) in {to_str(s) for s in cells}
    five = tr.enumerate_even_level_trees(5, 3, [0, 1, 3], [0, 2, 3])
    assert to_str(t) not in {to_str(s) for s in five}
