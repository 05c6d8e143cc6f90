import numpy as np
import pytest

from zaklab.geometry import IntervalUnion, Polygon
from zaklab.lattice import make_lattice
from zaklab.presets import load_domain

SQRT2 = np.sqrt(2.0)


@pytest.fixture
def unit():
    return IntervalUnion([(0.0, 1.0)])


@pytest.fixture
def square():
    return Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.fixture
def z1():
    return make_lattice(1.0)


@pytest.fixture
def z2():
    return make_lattice(np.eye(2))


@pytest.fixture
def parallelogram():
    return load_domain("parallelogram")


@pytest.fixture
def lshape():
    return load_domain("lshape")


@pytest.fixture
def octagon():
    return load_domain("octagon")


@pytest.fixture
def sheared_pair():
    """A non-diagonal compatible pair M, N and the parallelogram Q = M[0,1)^2."""
    m = make_lattice([[SQRT2, 0.0], [1.0, 1.0]])
    n = make_lattice([[1 / SQRT2, -SQRT2], [0.0, 1.0]])
    q = Polygon([(0, 0), (SQRT2, 1), (SQRT2, 2), (0, 1)])
    return m, n, q


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for label in sorted(results, key=lambda s: (int(s.rstrip("abc")), s)):
            terminalreporter.write_line(results[label])
