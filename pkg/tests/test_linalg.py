from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

import oracles
from strategies import matrices
from opd.linalg import Echelon, Quotient, independent_subset, rank, solve_columns


def as_cols(rows, ncols):
    return [{i: Fraction(r[j]) for i, r in enumerate(rows) if r[j]} for j in range(ncols)]


@given(st.data())
def test_rank_against_gaussian_oracle(data):
    m, n = data.draw(st.integers(1, 4)), data.draw(st.integers(1, 4))
    rows = data.draw(matrices(m, n))
    assert rank(as_cols(rows, n)) == oracles.rank(rows)


@given(st.data())
def test_independent_subset_spans(data):
    m, n = data.draw(st.integers(1, 4)), data.draw(st.integers(1, 5))
    rows = data.draw(matrices(m, n, entries=st.integers(-1, 1)))
    cols = as_cols(rows, n)
    keep = independent_subset(cols)
    assert len(keep) == rank(cols) == rank([cols[k] for k in keep])


@given(st.data())
def test_solve_columns(data):
    m, n = data.draw(st.integers(1, 3)), data.draw(st.integers(1, 3))
    a = data.draw(matrices(m, n))
    x = data.draw(matrices(n, 2))
    b = oracles.matmul(a, x, 2)
    sol = solve_columns(as_cols(a, n), m, as_cols(b, 2))
    assert sol is not None
    xs = [[sol[j].get(i, 0) for j in range(2)] for i in range(n)]
    assert oracles.matmul(a, xs, 2) == b


def test_unsolvable_system():
    assert solve_columns([{0: 1}], 2, [{1: 1}]) is None


def test_quotient_keeps_high_coordinates():
    q = Quotient(3, [{0: 1, 2: -1}])
    assert q.dim == 2
    assert q.kept == [1, 2]
    assert q.project({0: 1}) == {1: 1}


@given(st.lists(st.dictionaries(st.integers(0, 4), st.integers(-3, 3).filter(bool), max_size=3),
                max_size=4))
def test_quotient_kills_relations(rels):
    q = Quotient(5, rels)
    assert q.dim == 5 - rank(rels)
    for r in rels:
        assert q.project(dict(r)) == {}


def test_echelon_membership():
    e = Echelon()
    e.add({0: 1, 1: 1})
    assert e.contains({0: 2, 1: 2})
    assert not e.contains({1: 1})
