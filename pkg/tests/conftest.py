import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from bergekit import decompose as dc
from bergekit import graphcore as gc


def env_int(name: str, default: int) -> int:
    return int(os.environ.get(name, default))


@pytest.fixture(scope="session")
def c4():
    return gc.cycle_graph(4)


@pytest.fixture(scope="session")
def c5():
    return gc.cycle_graph(5)


@pytest.fixture(scope="session")
def c6():
    return gc.cycle_graph(6)


@pytest.fixture(scope="session")
def c8():
    return gc.cycle_graph(8)


@pytest.fixture(scope="session")
def p5():
    return gc.path_graph(5)


@pytest.fixture(scope="session")
def k4():
    return gc.complete_graph(4)


@pytest.fixture(scope="session")
def ds22():
    return dc.double_split_graph(2, 2)


@pytest.fixture(scope="session")
def pds225():
    return dc.path_double_split_graph(2, 2, 5)


@pytest.fixture(scope="session")
def double_theta():
    return dc.double_theta_graph()


@pytest.fixture(scope="session")
def square_pair():
    return dc.square_pair_graph()


@pytest.fixture(scope="session")
def prism():
    return dc.prism_graph()


@pytest.fixture(scope="session")
def homogeneous_fixture():
    """12-vertex graph carrying the homogeneous 2-join
    ({a1,a2},{b1,b2},{c},{d},{e1,e2},{f1,f2,f3,f4})."""
    from bergekit.recognize import SixTuple

    a1, a2, b1, b2, c, d, e1, e2 = range(8)
    f = list(range(8, 12))
    edges = [(a1, b1), (a2, b2), (c, a1), (c, a2), (c, e1), (c, f[0]),
             (d, b1), (d, b2), (d, e2), (d, f[1]), (e1, e2)]
    edges += [(a, fv) for a in (a1, a2) for fv in f]
    edges += [(b, fv) for b in (b1, b2) for fv in f]
    edges += [(f[i], f[j]) for i in range(4) for j in range(i + 1, 4)]
    g = gc.build_graph(12, edges)
    t = SixTuple.of({a1, a2}, {b1, b2}, {c}, {d}, {e1, e2}, set(f))
    return g, t


@pytest.fixture(scope="session")
def cutting2_fixture():
    """Path 2-join (X1 = 0-1-2-3) that is cutting of type 2 with A3 = {5},
    B3 = {7}: removing X1 + A3 + B3 detaches vertex 8."""
    from bergekit.twojoin import TwoJoinSplit

    edges = [(0, 1), (1, 2), (2, 3), (0, 4), (0, 5), (3, 6), (3, 7),
             (5, 7), (7, 8), (4, 6)]
    g = gc.build_graph(9, edges)
    split = TwoJoinSplit.of({0, 1, 2, 3}, {4, 5, 6, 7, 8}, {0}, {3}, {4, 5}, {6, 7})
    return g, split


@pytest.fixture(scope="session")
def small_corpus():
    """Exhaustive connected Berge graphs up to the unit-test size."""
    from corpus import connected_berge_graphs

    max_n = env_int("BERGEKIT_UNIT_MAX_N", 7)
    return connected_berge_graphs(max_n, min_n=1)
