from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import ordered_pairs, ranks_of_partition, vector_from_ranks
from wopkit.core import (
    PreferencePartition,
    WeakOrder,
    apply_move,
    check_ranking,
    dimension,
    from_ranking,
    pair_index,
    pairs,
    ranking_to_weak_order,
    relabel,
    reverse_partition,
    to_characteristic,
    to_partition,
    to_ranking,
    transpose,
)
from wopkit.errors import InvalidPairError, InvalidRankingError, InvariantError, MoveError


@st.composite
def partitions(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    alts = draw(st.permutations(range(1, n + 1)))
    cuts = draw(st.sets(st.integers(1, n - 1), max_size=n - 1)) if n > 1 else set()
    bounds = [0, *sorted(cuts), n]
    return PreferencePartition.of(*(alts[a:b] for a, b in zip(bounds, bounds[1:])))


def test_pair_index_layout():
    for n in range(2, 7):
        assert [pair_index(i, j, n) for i, j in ordered_pairs(n)] == list(range(dimension(n)))
        assert list(pairs(n)) == ordered_pairs(n)
    assert pair_index(1, 2, 4) == 0
    assert pair_index(4, 3, 4) == 11


@pytest.mark.parametrize("i,j,n", [(1, 1, 3), (0, 2, 3), (1, 4, 3)])
def test_pair_index_rejects(i, j, n):
    with pytest.raises(InvalidPairError):
        pair_index(i, j, n)


def test_weak_order_rejects_non_total_and_intransitive():
    with pytest.raises(InvariantError):
        WeakOrder(2, 0)
    # 1 >= 2, 2 >= 3 but not 1 >= 3
    bad = {(1, 2), (2, 1), (2, 3), (3, 2), (3, 1)}
    with pytest.raises(InvariantError):
        WeakOrder.from_relation(bad, 3)
    with pytest.raises(InvariantError):
        WeakOrder.from_vector([1, 1, 2, 1, 1, 1], 3)


def test_partition_invariants():
    with pytest.raises(InvariantError):
        PreferencePartition.of([1], [])
    with pytest.raises(InvariantError):
        PreferencePartition.of([1, 2], [2])
    with pytest.raises(InvariantError):
        PreferencePartition.of([1], [3])
    assert str(PreferencePartition.of([2, 1], [4], [3])) == "{1,2}|{4}|{3}"


def test_ranking_examples():
    w = ranking_to_weak_order((1, 1, 4, 3))
    assert str(w) == "{1,2}|{4}|{3}"
    assert to_ranking(w) == (1, 1, 4, 3)
    for bad in [(1, 2, 2, 3), (2, 2), (1, 3, 3, 1, 2), (0,)]:
        with pytest.raises(InvalidRankingError):
            check_ranking(bad)


@given(partitions())
def test_representation_round_trips(P):
    w = to_characteristic(P)
    assert to_partition(w) == P
    ranks = to_ranking(w)
    assert ranks == ranks_of_partition(P.buckets, P.n)
    assert from_ranking(ranks) == P
    assert w.vector() == vector_from_ranks(ranks)
    assert WeakOrder.from_vector(w.vector(), P.n) == w
    assert WeakOrder.from_relation(w.relation(), P.n) == w


@given(partitions())
def test_transpose_reverses_buckets(P):
    w = to_characteristic(P)
    t = transpose(w)
    assert transpose(t) == w
    assert to_partition(t) == reverse_partition(P)
    for i, j in pairs(P.n):
        assert t.prefers(i, j) == w.prefers(j, i)


@given(partitions(min_n=2), st.randoms())
def test_relabel_is_consistent(P, rnd):
    n = P.n
    mapping = list(range(1, n + 1))
    rnd.shuffle(mapping)
    w = relabel(to_characteristic(P), mapping)
    expected = PreferencePartition.of(*({mapping[a - 1] for a in b} for b in P.buckets))
    assert to_partition(w) == expected


def test_move_examples():
    P = PreferencePartition.of
    cases = [
        (P([1, 2], [4], [3]), {2}, 1, "{1}|{2,4}|{3}"),
        (P([1], [2, 4], [3]), {2, 4}, -1, "{1,2,4}|{3}"),
        (P([1, 2], [4], [3]), {3}, -2, "{1,2,3}|{4}"),
        (P([1, 2, 3], [4]), {1, 3}, Fraction(3, 2), "{2}|{4}|{1,3}"),
        (P([1, 2], [4], [3]), {3}, Fraction(-5, 2), "{3}|{1,2}|{4}"),
    ]
    for start, alts, q, expected in cases:
        assert str(apply_move(start, alts, q)) == expected


def test_move_errors():
    P = PreferencePartition.of([1, 2], [3], [4])
    with pytest.raises(MoveError):
        apply_move(P, {1, 3}, 1)
    with pytest.raises(MoveError):
        apply_move(P, set(), 1)
    with pytest.raises(MoveError):
        apply_move(P, 1, 0)
    with pytest.raises(MoveError):
        apply_move(P, 1, Fraction(1, 3))
    with pytest.raises(MoveError):
        apply_move(P, 1, 3)
    with pytest.raises(MoveError):
        apply_move(P, 4, Fraction(3, 2))
    assert str(apply_move(P, 4, Fraction(-5, 2))) == "{4}|{1,2}|{3}"


@given(partitions(min_n=2), st.data())
def test_move_keeps_alternatives_and_relative_order(P, data):
    k = data.draw(st.integers(1, len(P)))
    bucket = sorted(P[k - 1])
    alts = data.draw(st.sets(st.sampled_from(bucket), min_size=1))
    p = len(P)
    choices = [Fraction(t, 2) for t in range(-2 * k + 1, 2 * (p - k + 1)) if t]
    q = data.draw(st.sampled_from(choices))
    out = apply_move(P, alts, q)
    assert out.n == P.n
    # Every other alternative keeps its relative order.
    before = to_characteristic(P)
    after = to_characteristic(out)
    others = [a for a in range(1, P.n + 1) if a not in alts]
    for i in others:
        for j in others:
            if i != j:
                assert before.prefers(i, j) == after.prefers(i, j)
    # The moved set stays tied.
    for i in alts:
        for j in alts:
            if i != j:
                assert after.prefers(i, j)
