import random
from fractions import Fraction
from itertools import permutations, product

import pytest

from tricon.order import close_transitively


def linear_extensions(P):
    elems = P.sorted_elements()
    for perm in permutations(elems):
        pos = {x: i for i, x in enumerate(perm)}
        if all(pos[x] < pos[y] for x, y in P.less_than):
            yield perm


def brute_force_dimension(P, max_t=3):
    """Independent enumerator: smallest t such that some t-tuple of linear extensions realizes P."""
    elems = P.sorted_elements()
    if len(elems) <= 1:
        return 1
    exts = [{x: i for i, x in enumerate(e)} for e in linear_extensions(P)]
    pairs = [(x, y) for x in elems for y in elems if x != y and (x, y) not in P.less_than]
    for t in range(1, max_t + 1):
        for combo in product(range(len(exts)), repeat=t):
            if list(combo) != sorted(combo):
                continue
            if all(any(exts[i][y] < exts[i][x] for i in combo) for x, y in pairs):
                return t
    return None


def random_poset(rng, n, p):
    ids = [f"e{i}" for i in range(n)]
    pairs = [(ids[i], ids[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    perm = ids[:]
    rng.shuffle(perm)
    relabel = dict(zip(ids, perm))
    return close_transitively([(relabel[x], relabel[y]) for x, y in pairs], perm)


def random_height2(rng, n, p):
    k = rng.randint(1, n - 1)
    white = [f"w{i}" for i in range(k)]
    black = [f"b{i}" for i in range(n - k)]
    pairs = [(w, b) for w in white for b in black if rng.random() < p]
    return close_transitively(pairs, white + black)


def convex_polygons_meet(P, Q):
    """Separating-axis test on exact rational convex polygons (closed sets)."""
    for poly in (P, Q):
        m = len(poly)
        for i in range(m):
            (x1, y1), (x2, y2) = poly[i], poly[(i + 1) % m]
            nx, ny = y2 - y1, x1 - x2
            a = [nx * x + ny * y for x, y in P]
            b = [nx * x + ny * y for x, y in Q]
            if max(a) < min(b) or max(b) < min(a):
                return False
    return True


def triangle_corners_2d(apex, level):
    """Corners of the sum-plane triangle with given apex, charted as (p1, p2)."""
    a1, a2, a3 = apex
    return [(level - a2 - a3, a2), (a1, level - a1 - a3), (a1, a2)]


@pytest.fixture
def rng():
    return random.Random(20240611)


F = Fraction


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
