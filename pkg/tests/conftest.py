import pytest
from hypothesis import strategies as st

from mincp.model import LabeledDatabase, Literal, Pattern


@pytest.fixture
def toy_db():
    # a=0, b=1, c=2
    return LabeledDatabase(3, [{0, 1}, {0, 2}], [{1, 2}])


@st.composite
def databases(draw, max_items=6, max_rows=10, negation=None):
    n = draw(st.integers(1, max_items))
    row = st.frozensets(st.integers(0, n - 1))
    pos = draw(st.lists(row, max_size=max_rows))
    neg = draw(st.lists(row, max_size=max_rows))
    neg_flag = draw(st.booleans()) if negation is None else negation
    return LabeledDatabase(n, pos, neg, neg_flag)


@st.composite
def patterns(draw, n_items):
    items = draw(st.sets(st.integers(0, n_items - 1)))
    return Pattern(tuple(Literal(i, draw(st.booleans())) for i in items))
