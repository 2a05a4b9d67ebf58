import random

import pytest

from circast import (
    DomainTooSmall,
    IndexPartition,
    PairSet,
    TernaryRelation,
    TriplePartition,
    build_pair_universe,
    make_domain,
    pair_capacity,
    trivial_relations,
)
from circast.core import in_pair_universe, pair_rank, pair_unrank


def test_make_domain():
    assert make_domain(3).n == 3
    assert make_domain(10).n == 10
    with pytest.raises(DomainTooSmall):
        make_domain(2)


def test_pair_universe_small():
    assert list(build_pair_universe(make_domain(3))) == [(1, 2), (2, 1)]
    assert list(build_pair_universe(make_domain(4))) == [
        (1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2),
    ]
    assert len(build_pair_universe(make_domain(10))) == 72


def test_pair_universe_size_formula():
    for n in range(3, 13):
        X = build_pair_universe(make_domain(n))
        assert len(X) == (n - 1) * (n - 2) == pair_capacity(n)


def test_rank_unrank_round_trip():
    for n in (3, 4, 7, 11):
        for rank in range(pair_capacity(n)):
            pair = pair_unrank(n, rank)
            assert in_pair_universe(n, pair)
            assert pair_rank(n, pair) == rank


def test_pairset_validation():
    with pytest.raises(ValueError):
        PairSet.from_pairs(5, [(0, 1)])
    with pytest.raises(ValueError):
        PairSet.from_pairs(5, [(2, 2)])
    with pytest.raises(ValueError):
        PairSet.from_pairs(5, [(1, 5)])
    with pytest.raises(ValueError):
        PairSet(4, 1 << pair_capacity(4))


def test_pairset_set_operations():
    a = PairSet.from_pairs(5, [(1, 2), (2, 1)])
    b = PairSet.from_pairs(5, [(2, 1), (3, 4)])
    assert list(a | b) == [(1, 2), (2, 1), (3, 4)]
    assert list(a & b) == [(2, 1)]
    assert list(a - b) == [(1, 2)]
    assert not a.isdisjoint(b)
    assert a.isdisjoint(PairSet.from_pairs(5, [(4, 3)]))
    assert a.issubset(PairSet.universe(5))
    assert (2, 1) in a and (1, 3) not in a
    with pytest.raises(ValueError):
        a | PairSet.from_pairs(6, [(1, 2)])


def test_pairset_canonical_iteration_sorted():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randrange(3, 12)
        mask = rng.getrandbits(pair_capacity(n))
        I = PairSet(n, mask)
        assert list(I) == sorted(I.pairs())


def test_trivial_relations_sizes_and_contents():
    r0, r1, r2, r3 = trivial_relations(make_domain(3))
    assert len(r0) == 3 and len(r1) == 6
    assert (0, 4, 0) in trivial_relations(make_domain(5))[2]
    # together: exactly the triples with a repeated coordinate
    for n in (3, 4, 6):
        rels = trivial_relations(make_domain(n))
        union = set()
        total = 0
        for rel in rels:
            total += len(rel)
            union |= rel.triples
        assert total == len(union)  # pairwise disjoint
        repeated = {
            (x, y, z)
            for x in range(n)
            for y in range(n)
            for z in range(n)
            if x == y or y == z or x == z
        }
        assert union == repeated
        assert len(union) + n * (n - 1) * (n - 2) == n ** 3


def test_triple_partition_of_omega3_at_n3():
    n = 3
    rels = list(trivial_relations(make_domain(n)))
    distinct = {
        (x, y, z)
        for x in range(n)
        for y in range(n)
        for z in range(n)
        if len({x, y, z}) == 3
    }
    rels.append(TernaryRelation(n, frozenset(distinct)))
    part = TriplePartition(n, tuple(rels))
    part.validate()
    assert [len(r) for r in part.relations] == [3, 6, 6, 6, 6]
    assert part.m == 4


def test_triple_partition_validate_rejects_bad_input():
    n = 3
    rels = list(trivial_relations(make_domain(n)))
    # missing the distinct triples: not a cover
    with pytest.raises(ValueError):
        TriplePartition(n, tuple(rels)).validate()
    # overlapping relations
    bad = rels + [rels[0]]
    with pytest.raises(ValueError):
        TriplePartition(n, tuple(bad)).validate()


def test_triple_partition_from_obj_checks_ids():
    n = 3
    rels = list(trivial_relations(make_domain(n)))
    distinct = TernaryRelation.from_triples(
        n, [t for t in __import__("itertools").permutations(range(n), 3)]
    )
    obj = TriplePartition(n, tuple(rels + [distinct])).to_obj()
    obj["relations"][0]["id"] = 4
    with pytest.raises(ValueError):
        TriplePartition.from_obj(obj)


def test_index_partition_canonicalises_and_validates():
    n = 4
    a = PairSet.from_pairs(n, [(1, 3), (2, 1), (3, 2)])
    b = PairSet.from_pairs(n, [(1, 2), (2, 3), (3, 1)])
    P = IndexPartition(n, (a, b))
    assert P.parts[0] == b  # sorted by least pair
    with pytest.raises(ValueError):
        IndexPartition(n, (a,))  # does not cover X
    with pytest.raises(ValueError):
        IndexPartition(n, (a, b, b))  # overlap
    with pytest.raises(ValueError):
        IndexPartition(n, (a, b, PairSet(n, 0)))  # empty part


def test_serialization_round_trips():
    rng = random.Random(11)
    for _ in range(10):
        n = rng.randrange(3, 9)
        I = PairSet(n, rng.getrandbits(pair_capacity(n)))
        assert PairSet.from_obj(I.to_obj()) == I
        triples = {
            (rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(6)
        }
        R = TernaryRelation.from_triples(n, triples)
        assert TernaryRelation.from_obj(R.to_obj()) == R
    # partition round trips
    n = 5
    rels = list(trivial_relations(make_domain(n)))
    distinct = {
        t for t in __import__("itertools").permutations(range(n), 3)
    }
    rels.append(TernaryRelation(n, frozenset(distinct)))
    A = TriplePartition(n, tuple(rels))
    assert TriplePartition.from_obj(A.to_obj()) == A
    P = IndexPartition(n, (PairSet.universe(n),))
    assert IndexPartition.from_obj(P.to_obj()) == P
