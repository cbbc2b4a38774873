import random

import pytest

from oracles import fraction_affine_rank
from wopkit.construct import (
    MRState,
    VectorMatrix,
    construct,
    cpt1,
    cpt2,
    front_step,
    merge_and_reverse,
)
from wopkit.core import PreferencePartition, dimension, to_characteristic, transpose
from wopkit.errors import MoveError, ParameterError
from wopkit.inequalities import make_vi
from wopkit.structures import classify_structure
from wopkit.verify import affine_rank, evaluate

EXAMPLE_MR = [
    "{1,2,3}|{4}|{5}", "{3}|{1,2}|{4}|{5}",
    "{3}|{1,2,4}|{5}", "{3}|{4}|{1,2}|{5}",
    "{3}|{4}|{1,2,5}", "{3}|{4}|{5}|{1,2}",
    "{1,3,4}|{5}|{2}", "{4}|{1,3}|{5}|{2}",
    "{4}|{1,3,5}|{2}", "{4}|{5}|{1,3}|{2}",
    "{1,4,5}|{3}|{2}", "{5}|{1,4}|{3}|{2}",
]
EXAMPLE_CPT1_TAIL = [
    "{4}|{1,5}|{3}|{2}", "{4}|{3}|{1,5}|{2}", "{4}|{3}|{2}|{1,5}",
    "{4}|{3}|{1,2}|{5}", "{4}|{1,3}|{2}|{5}", "{1,4}|{3}|{2}|{5}",
    "{1,2}|{3}|{4}|{5}",
]
SEED = PreferencePartition.of([1, 2], [3], [4], [5])


def test_merge_and_reverse_example():
    X, final = merge_and_reverse(SEED, 1, 4, front_step)
    assert [str(p) for p in X.partitions] == EXAMPLE_MR
    assert str(final) == "{1,5}|{4}|{3}|{2}"
    assert set(X.provenance) == {"merge", "reverse"}


def test_merge_and_reverse_edge_cases():
    X, final = merge_and_reverse(SEED, 1, 0, front_step)
    assert len(X) == 0 and final == SEED and X.status == "ok"
    X, final = merge_and_reverse(SEED, 1, 5, front_step)
    assert len(X) == 0 and final == SEED and X.status == "empty"


def test_merge_and_reverse_row_count_without_outer_step():
    P0 = PreferencePartition.of([1], [2], [3], [4], [5])
    for p_hat in range(0, 6):
        X, _ = merge_and_reverse(P0, 1, p_hat)
        assert len(X) == 2 * sum(5 - j for j in range(1, p_hat + 1))


def test_pinned_alternatives_cannot_move():
    def bad_step(j, state: MRState):
        state.move(2, 1)

    with pytest.raises(MoveError):
        merge_and_reverse(SEED, 1, 2, bad_step, pinned={2, 3, 4, 5})


def test_shell_rank_with_pinned_set():
    X, _ = merge_and_reverse(SEED, 1, 4, front_step, pinned={2, 3, 4, 5})
    rows = X.vectors() + [to_characteristic(SEED).vector()]
    assert len(rows) == 13
    assert affine_rank(rows) == 13 == fraction_affine_rank(rows)


def test_cpt1_example_tail():
    X = cpt1(5, 1)
    assert len(X) == 20
    assert [str(p) for p in X.partitions[13:]] == EXAMPLE_CPT1_TAIL
    assert [str(p) for p in X.partitions[:12]] == EXAMPLE_MR


@pytest.mark.parametrize("n", range(4, 9))
@pytest.mark.parametrize("tag", ["T1", "T2-1", "T2-2", "T2-3", "T2-4"])
def test_rows_are_tight_and_counted(tag, n):
    fixed = (1,) if tag == "T1" else (1, n)
    X = construct(tag, n, fixed)
    q = make_vi(tag, n, fixed)
    assert len(X) == dimension(n)
    assert all(evaluate(q, w) == q.rhs for w in X.rows)


@pytest.mark.parametrize("n", range(4, 8))
@pytest.mark.parametrize("tag", ["T1", "T2-1", "T2-2", "T2-3", "T2-4"])
def test_rows_fall_in_structures(tag, n):
    fixed = (2,) if tag == "T1" else (3, 1)
    X = construct(tag, n, fixed)
    assert all(classify_structure(tag, fixed, w) is not None for w in X.rows)


@pytest.mark.parametrize("n", range(5, 9))
@pytest.mark.parametrize("tag", ["T1", "T2-1", "T2-2", "T2-3", "T2-4"])
def test_full_affine_rank(tag, n):
    X = construct(tag, n, (1,) if tag == "T1" else (1, n))
    assert affine_rank(X) == dimension(n)


def test_rank_agrees_with_fraction_oracle():
    for tag, n, fixed in [("T1", 5, (1,)), ("T2-3", 5, (2, 4)), ("T2-1", 6, (1, 6)), ("T1", 4, (1,))]:
        X = construct(tag, n, fixed)
        assert affine_rank(X) == fraction_affine_rank(X.vectors())


def test_n4_rank_per_procedure():
    # The T1 procedure repeats one order at n = 4, so it falls one short.
    X = cpt1(4, 1)
    assert len(set(X.rows)) == 11
    assert affine_rank(X) == 11
    for tag in ("T2-1", "T2-2", "T2-3", "T2-4"):
        assert affine_rank(cpt2(tag, 4, 1, 4)) == 12


def test_t23_special_case_n7():
    assert affine_rank(cpt2("T2-3", 7, 1, 7)) == 42


def test_cpt2_seed_swaps_last_two():
    X = cpt2("T2-1", 7, 2, 5)
    assert str(X.partitions[0]) == "{2}|{5}|{1}|{3}|{4}|{7}|{6}"
    assert X.provenance[0] == "seed"


def test_mirrored_procedures_transpose_rows():
    for a, b in (("T2-1", "T2-2"), ("T2-3", "T2-4")):
        A, B = cpt2(a, 6, 2, 4), cpt2(b, 6, 2, 4)
        assert [transpose(w) for w in A.rows] == B.rows


def test_construct_errors():
    with pytest.raises(ParameterError):
        cpt1(3, 1)
    with pytest.raises(ParameterError):
        cpt2("T2-1", 5, 2, 2)
    with pytest.raises(ParameterError):
        cpt2("T2-0", 5, 1, 2)
    with pytest.raises(ParameterError):
        construct("T2-0", 5, (1, 2))
    with pytest.raises(ParameterError):
        construct("T1", 5, (1, 2))


def _random_mr_case(seed: int):
    rng = random.Random(seed)
    n = rng.randint(2, 6)
    alts = list(range(1, n + 1))
    rng.shuffle(alts)
    p = rng.randint(1, n)
    cuts = sorted(rng.sample(range(1, n), p - 1))
    bounds = [0, *cuts, n]
    buckets = [alts[a:b] for a, b in zip(bounds, bounds[1:])]
    pinned = {rng.choice(b) for b in buckets}
    free = [a for a in alts if a not in pinned]
    I0 = set(rng.sample(free, rng.randint(0, len(free))))
    p_hat = rng.randint(0, p)

    def step(j: int, state: MRState) -> None:
        # Integer moves of unpinned alternatives keep one pinned alternative per bucket.
        for _ in range(rng.randint(0, 3)):
            if not free:
                return
            a = rng.choice(free)
            k = state.partition.bucket_of(a) + 1
            targets = [t for t in range(1, len(state.partition) + 1) if t != k]
            if targets:
                state.move(a, rng.choice(targets) - k)
            if rng.random() < 0.3:
                state.record()

    return PreferencePartition.of(*buckets), I0, p_hat, step, pinned


@pytest.mark.parametrize("seed", range(100))
def test_merge_and_reverse_affine_independence(seed):
    P0, I0, p_hat, step, pinned = _random_mr_case(seed)
    X, _ = merge_and_reverse(P0, I0, p_hat, step, pinned)
    shell = [w.vector() for w, tag in zip(X.rows, X.provenance) if tag in ("merge", "reverse")]
    p = len(P0)
    assert len(shell) == 2 * sum(p - j for j in range(1, p_hat + 1))
    rows = shell + [to_characteristic(P0).vector()]
    assert affine_rank(rows) >= p_hat * (p_hat - 1) + 1


def test_vector_matrix_array():
    X = cpt1(5, 3)
    arr = X.as_array()
    assert arr.shape == (20, 20)
    assert VectorMatrix(4).as_array().shape == (0, 12)
    assert int(arr.sum()) == sum(sum(v) for v in X.vectors())
