import random
from itertools import permutations, product

import pytest

from tricon.catalog import chevron, standard_example
from tricon.order import antichain, chain, is_realizer, close_transitively
from tricon.oracle import (
    DimensionTimeout,
    Status,
    dimension,
    dimension_at_most_k,
    encode_dim_le_k,
)
from tricon import sat

from conftest import brute_force_dimension, linear_extensions, random_poset


def _satisfiable(cnf):
    return sat.solve(cnf.num_vars, cnf.clauses) is not None


def test_encoding_examples():
    assert _satisfiable(encode_dim_le_k(chain("abc"), 1))
    assert not _satisfiable(encode_dim_le_k(antichain("ab"), 1))
    assert not _satisfiable(encode_dim_le_k(chevron(), 2))


def test_chevron_needs_three_extensions_by_exhaustion():
    # 6! x 6! style check restricted to linear extensions of the chevron
    P = chevron()
    exts = [{x: i for i, x in enumerate(e)} for e in linear_extensions(P)]
    pairs = [(x, y) for x, y in permutations(P.elements, 2) if not P.comparable(x, y)]
    assert not any(all(p[y] < p[x] or q[y] < q[x] for x, y in pairs)
                   for p, q in product(exts, repeat=2))


def test_dimension_at_most_k_examples():
    ans = dimension_at_most_k(chevron(), 3)
    assert ans.status is Status.YES and is_realizer(chevron(), ans.witness) and len(ans.witness) == 3
    assert dimension_at_most_k(chevron(), 2).status is Status.NO
    S3 = standard_example(3)
    assert dimension_at_most_k(S3, 2).status is Status.NO
    assert dimension_at_most_k(S3, 3).status is Status.YES
    assert brute_force_dimension(S3) == 3


def test_dimension_examples():
    assert dimension(chain("abcdef")) == 1
    assert dimension(antichain("a")) == 1
    for n in range(2, 7):
        assert dimension(antichain([f"x{i}" for i in range(n)])) == 2
    assert dimension(chevron()) == 3
    assert dimension(standard_example(4)) == 4


def test_timeout_is_reported():
    assert dimension_at_most_k(standard_example(6), 5, budget=0.0).status in (Status.TIMEOUT, Status.NO)
    with pytest.raises(DimensionTimeout):
        dimension(standard_example(7), budget=0.0)


def test_monotone_in_k(rng):
    for _ in range(30):
        P = random_poset(rng, rng.randint(2, 7), 0.3)
        answers = [dimension_at_most_k(P, k).status for k in range(1, 5)]
        first = answers.index(Status.YES)
        assert all(a is Status.YES for a in answers[first:])


def test_dual_invariance(rng):
    for _ in range(30):
        P = random_poset(rng, rng.randint(2, 8), 0.35)
        assert dimension(P) == dimension(P.dual())


def test_agreement_with_brute_force_small(rng):
    for _ in range(40):
        P = random_poset(rng, rng.randint(1, 6), rng.choice([0.2, 0.4, 0.6]))
        assert dimension(P) == brute_force_dimension(P)


def test_dimacs_export_round_trip():
    from tricon.reduction.cnf import parse_dimacs_raw
    cnf = encode_dim_le_k(standard_example(2), 2)
    num_vars, clauses = parse_dimacs_raw(cnf.to_dimacs())
    assert num_vars == cnf.num_vars and clauses == [list(c) for c in cnf.clauses]
    assert '"extension": 1' in cnf.variable_map_json()
