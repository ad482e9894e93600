"""Hypothesis strategies for small exact objects."""

from fractions import Fraction

from hypothesis import strategies as st

from opd.exactcat import LinMap, Space

small_q = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def matrices(draw, rows=None, cols=None, max_dim=3, entries=small_q):
    m = draw(st.integers(0, max_dim)) if rows is None else rows
    n = draw(st.integers(0, max_dim)) if cols is None else cols
    return [[draw(entries) for _ in range(n)] for _ in range(m)]


@st.composite
def linmaps(draw, source=None, target=None, max_dim=3, entries=small_q):
    n = draw(st.integers(0, max_dim)) if source is None else source
    m = draw(st.integers(0, max_dim)) if target is None else target
    rows = draw(matrices(m, n, entries=entries))
    return LinMap.from_rows(rows, Space(n), Space(m))
