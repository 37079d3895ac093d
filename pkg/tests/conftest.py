import pytest
from hypothesis import strategies as st

from rectlevel.geometry import Family, perturb_to_general_position

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@st.composite
def families(draw, min_size=1, max_size=12, coord=30):
    """Arbitrary small families pushed into general position."""
    n = draw(st.integers(min_size, max_size))
    rows = []
    for _ in range(n):
        x0 = draw(st.integers(0, coord))
        y0 = draw(st.integers(0, coord))
        w = draw(st.integers(1, coord))
        h = draw(st.integers(1, coord))
        rows.append((x0, y0, x0 + w, y0 + h))
    return perturb_to_general_position(Family.from_coords(rows))


# common examples
TWO_CORNER = [(0, 0, 4, 3), (2, 1, 6, 5)]          # A=[0,4]x[0,3], B=[2,6]x[1,5]
CORNER_PAIR = [(0, 0, 6, 4), (1, 1, 3, 9)]         # A=[0,6]x[0,4], B=[1,3]x[1,9]
THREE_RECT = [(0, 0, 9, 9), (1, 1, 8, 8), (2, 2, 10, 10)]
STACKED = [(0, 0, 10, 2), (1, 3, 11, 5), (2, 6, 12, 8)]
