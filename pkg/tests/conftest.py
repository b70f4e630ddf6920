"""Shared desk-scale problems and curated rational critical points.

The curated configurations were derived by solving the critical-point
system by hand (they are all weighted-average / two-node eliminations);
the tests recheck them through `bethe_residuals`, so nothing is trusted.
"""

from fractions import Fraction as F

import pytest

from operpop.exactalg import Poly
from operpop.critical import PolyTuple, problem


@pytest.fixture(scope="session")
def half_problem():
    """sl_2, weights (1),(1) at 0,1; critical tuple (x - 1/2)."""
    return problem("A", 1, [[1], [1]], [0, 1])


@pytest.fixture(scope="session")
def half_tuple():
    return PolyTuple([Poly([F(-1, 2), 1])])


@pytest.fixture(scope="session")
def a2_problem():
    """sl_3, weights (1,0)@0 and (0,1)@1; critical tuple (x-1/3, x-2/3)."""
    return problem("A", 2, [[1, 0], [0, 1]], [0, 1])


@pytest.fixture(scope="session")
def a2_tuple():
    return PolyTuple([Poly([F(-1, 3), 1]), Poly([F(-2, 3), 1])])


@pytest.fixture(scope="session")
def b2_problem():
    """so_5, weights (1,0)@0 and (0,1)@5; critical tuple (x-2, x-4)."""
    return problem("B", 2, [[1, 0], [0, 1]], [0, 5])


@pytest.fixture(scope="session")
def b2_tuple():
    return PolyTuple([Poly([-2, 1]), Poly([-4, 1])])


@pytest.fixture(scope="session")
def a3_problem():
    """sl_4, weights (1,0,0) at 0 and 1; critical tuple (x-1/2, 1, 1)."""
    return problem("A", 3, [[1, 0, 0], [1, 0, 0]], [0, 1])


@pytest.fixture(scope="session")
def a3_tuple():
    return PolyTuple([Poly([F(-1, 2), 1]), Poly.one(), Poly.one()])


# Rational-root critical configurations: (family, rank, weights, points,
# bethe coordinate groups).  Each was obtained by hand from the two-term
# eliminations of the critical system.
CURATED_CRITICAL = {
    "A1": [
        ("A", 1, [[1], [1]], ["0", "1"], [["1/2"]]),
        ("A", 1, [[1], [3]], ["0", "1"], [["1/4"]]),
        ("A", 1, [[3], [1]], ["0", "1"], [["3/4"]]),
        ("A", 1, [[1], [1]], ["0", "3"], [["3/2"]]),
        ("A", 1, [[2], [2]], ["0", "1"], [["1/2"]]),
    ],
    "A2": [
        ("A", 2, [[1, 0], [0, 1]], ["0", "1"], [["1/3"], ["2/3"]]),
        ("A", 2, [[1, 0], [0, 1]], ["0", "3"], [["1"], ["2"]]),
        ("A", 2, [[1, 0], [0, 1]], ["0", "-3"], [["-1"], ["-2"]]),
        ("A", 2, [[0, 1], [1, 0]], ["0", "3"], [["2"], ["1"]]),
        ("A", 2, [[1, 0], [1, 0]], ["0", "1"], [["1/2"], []]),
    ],
    "B2": [
        ("B", 2, [[1, 0], [0, 1]], ["0", "5"], [["2"], ["4"]]),
        ("B", 2, [[1, 0], [0, 1]], ["0", "5/2"], [["1"], ["2"]]),
        ("B", 2, [[0, 1], [1, 0]], ["0", "5"], [["3"], ["1"]]),
        ("B", 2, [[1, 0], [1, 0]], ["0", "1"], [["1/2"], []]),
        ("B", 2, [[0, 1], [0, 1]], ["0", "1"], [[], ["1/2"]]),
    ],
}
