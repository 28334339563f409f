"""Objects, morphisms, the two semirings, and the sampled category laws."""

import numpy as np
import pytest

from cpcat import (BOOLEAN, COMPLEX, Mor, Obj, UNIT, as_obj, check_laws,
                   compose, factor_permutation, identity, max_abs_diff,
                   mor_equal, random_mor, random_obj, swap, tensor)
from cpcat.errors import DimensionMismatch, InvalidArgument, ShapeMismatch


def test_obj_dims_and_tensor():
    a = Obj(2, 3)
    assert a.dim == 6
    assert a.factors == (2, 3)
    assert (a @ Obj(4)).factors == (2, 3, 4)
    assert UNIT.dim == 1
    assert UNIT.factors == ()
    assert a @ UNIT == a


def test_obj_equality_is_by_factor_list():
    assert Obj(2, 3) != Obj(3, 2)
    assert Obj(6) != Obj(2, 3)
    assert hash(Obj(2, 3)) == hash(Obj(2, 3))


def test_as_obj_accepts_ints_and_tuples():
    assert as_obj(3) == Obj(3)
    assert as_obj((2, 2)) == Obj(2, 2)
    assert as_obj(Obj(5)) == Obj(5)


def test_obj_rejects_nonpositive_factor():
    with pytest.raises(InvalidArgument):
        Obj(2, 0)


def test_mor_shape_must_match_types():
    with pytest.raises(ShapeMismatch):
        Mor(Obj(2), Obj(3), np.zeros((2, 3)))


def test_mor_array_is_frozen():
    m = identity(2)
    with pytest.raises(ValueError):
        m.array[0, 0] = 5.0


def test_compose_checks_total_dimension_only():
    f = Mor(Obj(2, 3), Obj(2), np.ones((2, 6)))
    g = Mor(Obj(6), Obj(2), np.ones((2, 6)))
    # same total dimension, different factorings: both accepted
    h = Mor(Obj(2), Obj(3, 2), np.ones((6, 2)))
    assert compose(f, h).dom == Obj(2)
    assert compose(g, h).cod == Obj(2)
    with pytest.raises(DimensionMismatch):
        compose(f, identity(5))


def test_compose_is_matrix_product():
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    b = np.array([[0.0, 1.0], [1.0, 0.0]])
    f = Mor(Obj(2), Obj(2), a)
    g = Mor(Obj(2), Obj(2), b)
    assert np.array_equal(compose(g, f).array, b @ a)
    assert np.array_equal(f.then(g).array, b @ a)
    assert np.array_equal((f >> g).array, b @ a)


def test_tensor_is_kronecker_in_row_major_order():
    f = Mor(Obj(2), Obj(2), np.array([[1.0, 2.0], [3.0, 4.0]]))
    g = Mor(Obj(3), Obj(1), np.array([[1.0, 0.0, 1.0]]))
    fg = tensor(f, g)
    assert fg.dom == Obj(2, 3)
    assert fg.cod == Obj(2, 1)
    assert np.array_equal(fg.array, np.kron(f.array, g.array))
    assert np.array_equal((f @ g).array, fg.array)


def test_dagger_is_conjugate_transpose():
    m = Mor(Obj(2), Obj(1), np.array([[1.0 + 2.0j, 3.0]]))
    d = m.dagger()
    assert d.dom == Obj(1)
    assert d.cod == Obj(2)
    assert np.array_equal(d.array, np.array([[1.0 - 2.0j], [3.0]]))


def test_boolean_matmul_is_or_of_ands():
    rng = np.random.default_rng(11)
    a = rng.random((3, 4)) < 0.5
    b = rng.random((4, 2)) < 0.5
    got = BOOLEAN.matmul(a, b)
    expect = np.zeros((3, 2), dtype=np.bool_)
    for i in range(3):
        for j in range(2):
            acc = False
            for k in range(4):
                acc = acc or (a[i, k] and b[k, j])
            expect[i, j] = acc
    assert np.array_equal(got, expect)


def test_boolean_entries_must_be_zero_or_one():
    with pytest.raises(InvalidArgument):
        BOOLEAN.asarray([[0, 2]])


def test_boolean_deviation_is_zero_or_one():
    a = np.array([[True, False]])
    assert BOOLEAN.deviation(a, a) == 0.0
    assert BOOLEAN.deviation(a, ~a) == 1.0


def test_factor_permutation_against_index_loop():
    factors = (2, 3, 2)
    perm = (2, 0, 1)
    p = factor_permutation(factors, perm)
    n = 12
    expect = np.zeros((n, n))
    for i0 in range(2):
        for i1 in range(3):
            for i2 in range(2):
                src = (i0 * 3 + i1) * 2 + i2
                idx = (i2, i0, i1)  # value landing in slot k is factor perm[k]
                dst = (idx[0] * 2 + idx[1]) * 3 + idx[2]
                expect[dst, src] = 1.0
    assert np.array_equal(p.array, expect)
    assert p.dom == Obj(*factors)
    assert p.cod == Obj(2, 2, 3)


def test_factor_permutation_identity():
    p = factor_permutation((2, 3), (0, 1))
    assert np.array_equal(p.array, np.eye(6))


def test_swap_two_by_two_rows():
    s = swap(2, 2)
    # permutation sending basis vector e_{ij} to e_{ji}
    assert np.array_equal(s.array, np.eye(4)[[0, 2, 1, 3]])
    assert s.dom == Obj(2, 2)
    assert s.cod == Obj(2, 2)


def test_swap_is_an_involution():
    for a, b in [(2, 3), (1, 4), (3, 3)]:
        s = swap(a, b)
        back = swap(b, a)
        assert np.array_equal(compose(back, s).array, np.eye(a * b))


def test_swap_naturality():
    rng = np.random.default_rng(5)
    f = random_mor(rng, Obj(2), Obj(3))
    g = random_mor(rng, Obj(4), Obj(2))
    lhs = compose(swap(3, 2), tensor(f, g))
    rhs = compose(tensor(g, f), swap(2, 4))
    assert max_abs_diff(lhs, rhs) < 1e-12


def test_swap_boolean_is_exact():
    s = swap(2, 3, BOOLEAN)
    assert s.array.dtype == np.bool_
    assert np.array_equal(
        BOOLEAN.matmul(swap(3, 2, BOOLEAN).array, s.array), np.eye(6) > 0)


def test_mor_equal_and_deviation():
    f = Mor(Obj(2), Obj(2), np.eye(2))
    g = Mor(Obj(2), Obj(2), np.diag([1.0, -1.0]))
    assert max_abs_diff(f, g) == 2.0
    assert not mor_equal(f, g)
    assert mor_equal(f, g, tol=3.0)
    with pytest.raises(DimensionMismatch):
        max_abs_diff(f, identity(3))


def test_random_mor_entry_ranges():
    rng = np.random.default_rng(0)
    m = random_mor(rng, Obj(3), Obj(3))
    assert np.all(np.abs(m.array.real) <= 1.0)
    assert np.all(np.abs(m.array.imag) <= 1.0)
    b = random_mor(rng, Obj(3), Obj(3), BOOLEAN)
    assert b.array.dtype == np.bool_


def test_random_obj_respects_max_dim():
    rng = np.random.default_rng(2)
    for _ in range(50):
        assert 1 <= random_obj(rng, max_dim=4).dim <= 4


LAW_NAMES = [
    "compose_assoc", "compose_unit_left", "compose_unit_right",
    "interchange", "tensor_unit_left", "tensor_unit_right",
    "dagger_involution", "dagger_antihomomorphism", "dagger_tensor",
    "dagger_identity", "swap_involution", "swap_naturality",
]


def test_check_laws_complex():
    report = check_laws(COMPLEX, trials=60, seed=1)
    assert list(report.deviations) == LAW_NAMES
    assert report.ok
    assert report.max_deviation < 1e-12


def test_check_laws_boolean_is_exact():
    report = check_laws(BOOLEAN, trials=60, seed=1)
    assert report.ok
    assert report.max_deviation == 0.0


def test_check_laws_rejects_bad_trials():
    with pytest.raises(InvalidArgument):
        check_laws(COMPLEX, trials=0)
