import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import pytest

from pathcrystals.rootdata import root_system

ALL_TYPES = [
    ("A", 1), ("A", 2), ("A", 3), ("A", 4),
    ("B", 2), ("B", 3), ("B", 4),
    ("C", 2), ("C", 3), ("C", 4),
    ("D", 4), ("G", 2), ("F", 4),
]

NON_SIMPLY_LACED = [t for t in ALL_TYPES if t[0] in "BCGF"]


@pytest.fixture(params=ALL_TYPES, ids=lambda t: f"{t[0]}{t[1]}")
def any_rs(request):
    return root_system(*request.param)


@pytest.fixture(params=NON_SIMPLY_LACED, ids=lambda t: f"{t[0]}{t[1]}")
def nsl_rs(request):
    return root_system(*request.param)


def finite_orbit(rs, x, finite_only=True, cap=200000):
    """Full reflection orbit of a weight (finite Weyl group by default)."""
    nodes = rs.finite_nodes if finite_only else rs.nodes
    seen = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for w in frontier:
            for i in nodes:
                y = rs.reflect(i, w)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
        assert len(seen) <= cap
    return seen


def affine_orbit_bounded(rs, x, depth):
    """All weights reachable by at most ``depth`` affine reflections."""
    layer = {x}
    seen = {x}
    for _ in range(depth):
        nxt = set()
        for w in layer:
            for i in rs.nodes:
                y = rs.reflect(i, w)
                if y not in seen:
                    nxt.add(y)
        seen |= nxt
        layer = nxt
    return seen
