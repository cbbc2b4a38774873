import pytest

from oracles import instantiation_count, orbit_count

from wopkit.core import pairs
from wopkit.errors import ParameterError
from wopkit.inequalities import (
    T3_TAGS,
    T_TAGS,
    WO4_CARDINALITIES,
    Inequality,
    axiomatic_inequalities,
    class_cardinality,
    dominated_by,
    fixed_arity,
    instances,
    lift,
    make_class,
    make_t3_vi,
    make_vi,
    min_n,
    transpose_coefficients,
    wo4_catalog,
)

WO_FOR_T = {"T1": "WO4", "T2-0": "WO5", "T2-1": "WO6", "T2-2": "WO7", "T2-3": "WO9", "T2-4": "WO8"}


def rhs_formula(tag, n):
    base, shift = {"T1": (2, 2), "T2-0": (2, 4), "T2-1": (2, 3), "T2-2": (2, 3),
                   "T2-3": (3, 4), "T2-4": (3, 4)}[tag]
    return base - (n - shift) * (n - shift - 1) // 2


@pytest.mark.parametrize("tag", list(WO_FOR_T))
def test_n4_catalog_correspondence(tag):
    catalog = {q.tag: q for q in wo4_catalog()}
    q = make_vi(tag, 4, (1,) if tag == "T1" else (1, 2))
    ref = catalog[WO_FOR_T[tag]]
    assert q.dense() == ref.dense() and q.rhs == ref.rhs


def test_t1_written_out():
    q = make_vi("T1", 5, (1,))
    assert q.rhs == -1 and len(q.coeffs) == 20
    assert str(make_vi("T1", 4, (1,))).startswith("x12 + x13 + x14 + x21 - x23")


@pytest.mark.parametrize("tag", T_TAGS)
@pytest.mark.parametrize("n", range(4, 9))
def test_rhs_formulas(tag, n):
    fixed = (1,) if tag == "T1" else (2, n)
    assert make_vi(tag, n, fixed).rhs == rhs_formula(tag, n)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_mirrored_classes_are_transposes(n):
    for a, b in (("T2-1", "T2-2"), ("T2-3", "T2-4")):
        qa, qb = make_vi(a, n, (1, 3)), make_vi(b, n, (1, 3))
        assert transpose_coefficients(qa.coeffs) == dict(qb.coeffs)
        assert qa.rhs == qb.rhs


def test_t3_shapes():
    for v in range(1, 9):
        for n in (5, 6, 7):
            q = make_t3_vi(v, n, (1, 2, 3))
            assert q.rhs == (4 - (n - 5) * (n - 6) // 2 if v <= 4 else 5 - (n - 6) * (n - 7) // 2)
            assert all(abs(c) == 1 for c in q.coeffs.values())
    with pytest.raises(ParameterError):
        make_t3_vi(9, 5, (1, 2, 3))
    with pytest.raises(ParameterError):
        make_t3_vi(1, 4, (1, 2, 3))


def test_parameter_errors():
    with pytest.raises(ParameterError):
        make_vi("T1", 3, (1,))
    with pytest.raises(ParameterError):
        make_vi("T2-1", 5, (1, 1))
    with pytest.raises(ParameterError):
        make_vi("T2-1", 5, (1,))
    with pytest.raises(ParameterError):
        make_vi("T9", 5, (1,))
    with pytest.raises(ParameterError):
        make_vi("T1", 5, (6,))


def test_axiomatic_counts():
    rows = axiomatic_inequalities(4)
    tags = [q.tag for q in rows]
    assert tags.count("AX1") == 12 and tags.count("AX2") == 6 and tags.count("AX3") == 24


def test_wo_cardinalities_match_orbits():
    for q in wo4_catalog():
        assert orbit_count(q.coeffs, 4, 4) == WO4_CARDINALITIES[q.tag]
    assert class_cardinality("WO4", 5) == 20
    assert class_cardinality("WO5", 5) == 60
    for n in (5, 6):
        for q in wo4_catalog()[3:]:
            assert class_cardinality(q.tag, n) == orbit_count(q.coeffs, 4, n)


@pytest.mark.parametrize("tag", ["T1", "T2-0", "T2-1", "T2-3"])
@pytest.mark.parametrize("n", [4, 5, 6])
def test_t_cardinalities_match_instantiation(tag, n):
    assert class_cardinality(tag, n) == instantiation_count(lambda m, f: make_class(tag, m, f), min_n(tag), fixed_arity(tag), n)


@pytest.mark.parametrize("tag", T3_TAGS)
def test_t3_cardinality_counts_distinct_instances(tag):
    assert class_cardinality(tag, 5) == 30
    assert class_cardinality(tag, 6) == instantiation_count(lambda m, f: make_class(tag, m, f), min_n(tag), fixed_arity(tag), 6)


def test_instances_enumerates_fixed_tuples():
    assert len(list(instances("T1", 5))) == 5
    assert len(list(instances("T2-3", 5))) == 20
    assert len(list(instances("T3-2", 5))) == 60


def test_lift_pads_with_zeros():
    q = make_vi("T2-1", 4, (1, 2))
    lifted = lift(q, 6)
    assert lifted.n == 6 and lifted.rhs == q.rhs and dict(lifted.coeffs) == dict(q.coeffs)
    assert lifted.origin == "T2-1@n=4"
    assert sum(1 for c in lifted.dense() if c) == len(q.coeffs)
    with pytest.raises(ParameterError):
        lift(q, 4)


def test_dominance():
    t4, t5 = make_vi("T1", 4, (1,)), make_vi("T1", 5, (1,))
    assert not dominated_by(t4, t5)
    assert not dominated_by(t5, t4)
    weaker = Inequality(4, dict(t4.coeffs), 2)
    assert dominated_by(weaker, t4)
    assert not dominated_by(t4, weaker)
    assert not dominated_by(t4, t4)
    scaled = Inequality(4, {p: 2 * c for p, c in t4.coeffs.items()}, 2)
    assert not dominated_by(t4, scaled)


def test_inequality_normalisation():
    q = Inequality(3, {(1, 2): 1, (2, 1): 1, (1, 3): 0}, 1, sense=">=")
    assert (1, 3) not in q.coeffs
    dense, rhs = q.normalized()
    assert rhs == -1 and dense[0] == -1
    assert len(q.dense()) == len(pairs(3))
    with pytest.raises(ParameterError):
        Inequality(3, {}, 0, sense="<")
