import sys
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qappell.algebra import ZPoly
from qappell.lattice import LatticeParam

F = Fraction

scalars = st.builds(Fraction, st.integers(-9, 9), st.sampled_from([1, 2, 3]))


def zpolys(max_degree=12):
    return st.lists(scalars, min_size=0, max_size=max_degree + 1).map(ZPoly)


lattices = st.sampled_from([F(1, 2), F(2, 3), F(3, 2), F(2), F(5, 7)]).map(LatticeParam)


@pytest.fixture
def half():
    return LatticeParam(F(1, 2))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(mod.RESULTS):
        terminalreporter.write_line(mod._line(i, *mod.RESULTS[i]))
