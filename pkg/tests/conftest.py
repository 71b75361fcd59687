from fractions import Fraction

from hypothesis import strategies as st

from ticover.core import Instance

QUARTER_GRID = st.integers(min_value=0, max_value=32).map(lambda k: Fraction(k, 4))


@st.composite
def unit_instances(draw, min_n=1, max_n=7):
    lefts = draw(st.lists(QUARTER_GRID, min_size=min_n, max_size=max_n))
    return Instance.from_lefts(lefts)


@st.composite
def mixed_instances(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    lefts = draw(st.lists(QUARTER_GRID, min_size=n, max_size=n))
    lengths = draw(st.lists(st.integers(1, 12).map(lambda k: Fraction(k, 4)), min_size=n, max_size=n))
    c = draw(st.integers(1, 12).map(lambda k: Fraction(k, 4)))
    return Instance.from_lefts(lefts, covering_length=c, lengths=lengths)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
