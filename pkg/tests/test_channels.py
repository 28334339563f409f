"""Choi matrices, superoperators, and Kraus extraction.

Kraus operators are the ancilla slices of ``f : A -> B ⊗ C``; densities
are vectorized row-major.  The transpose map supplies the standard
non-CP witness: its Choi matrix is the swap, with an eigenvalue of -1.
"""

import numpy as np
import pytest

from cpcat import (BOOLEAN, ChoiMatrix, KrausMor, Mor, Obj, Superoperator,
                   check_cp, choi_of_kraus, choi_of_superop, heisenberg_of,
                   kraus_from_choi, random_isometry, random_mor,
                   schrodinger_of, superop_compose, superop_of_choi, swap)
from cpcat.errors import (DimensionMismatch, InvalidArgument,
                          NotCompletelyPositive, NotHermitian, ShapeMismatch)


def random_kraus(rng, na, nb, nc):
    m = random_mor(rng, Obj(na), Obj(nb, nc))
    return KrausMor(m, Obj(nb), Obj(nc))


def kraus_slices(k):
    t = k.mor.array.reshape(k.out.dim, k.ancilla.dim, k.dom.dim)
    return [t[:, c, :] for c in range(k.ancilla.dim)]


def apply_channel(k, rho):
    return sum(op @ rho @ op.conj().T for op in kraus_slices(k))


def test_identity_channel_choi_is_the_maximally_entangled_projector():
    k = KrausMor(Mor(Obj(2), Obj(2), np.eye(2)), Obj(2), Obj(1))
    choi = choi_of_kraus(k)
    want = np.zeros((4, 4))
    for spot in [(0, 0), (0, 3), (3, 0), (3, 3)]:
        want[spot] = 1.0
    assert np.array_equal(choi.matrix, want)
    ok, min_eig = check_cp(choi)
    assert ok
    assert min_eig >= -1e-12


def test_choi_matches_entry_loop():
    rng = np.random.default_rng(41)
    k = random_kraus(rng, 2, 3, 2)
    choi = choi_of_kraus(k)
    t = k.mor.array.reshape(3, 2, 2)
    for i in range(2):
        for ip in range(3):
            for j in range(2):
                for jp in range(3):
                    want = sum(t[ip, c, i] * np.conj(t[jp, c, j])
                               for c in range(2))
                    assert abs(choi.matrix[i * 3 + ip, j * 3 + jp]
                               - want) < 1e-12


def test_choi_of_kraus_rejects_boolean():
    m = Mor(Obj(2), Obj(2, 1), np.eye(2) > 0, BOOLEAN)
    with pytest.raises(InvalidArgument):
        choi_of_kraus(KrausMor(m, Obj(2), Obj(1)))


def test_transpose_choi_is_not_cp():
    choi = ChoiMatrix(2, 2, swap(2, 2).array)
    ok, min_eig = check_cp(choi)
    assert not ok
    assert abs(min_eig + 1.0) < 1e-9
    eigs = np.linalg.eigvalsh(choi.matrix)
    assert np.max(np.abs(np.sort(eigs) - np.array([-1.0, 1.0, 1.0, 1.0]))) < 1e-12
    with pytest.raises(NotCompletelyPositive):
        kraus_from_choi(choi)


def test_check_cp_rejects_non_hermitian_input():
    m = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(NotHermitian):
        check_cp(ChoiMatrix(1, 2, m))


def test_choi_matrix_validates_shape():
    with pytest.raises(ShapeMismatch):
        ChoiMatrix(2, 2, np.eye(3))
    with pytest.raises(ShapeMismatch):
        Superoperator(2, 2, np.eye(3))


def test_kraus_from_choi_round_trip():
    rng = np.random.default_rng(42)
    for _ in range(5):
        k = random_kraus(rng, 2, 3, 2)
        choi = choi_of_kraus(k)
        result = kraus_from_choi(choi)
        assert result.reconstruction_error < 1e-12
        again = choi_of_kraus(result.mor)
        assert np.max(np.abs(again.matrix - choi.matrix)) < 1e-12


def test_kraus_from_choi_trims_null_directions():
    rng = np.random.default_rng(43)
    v = random_isometry(rng, 2, 3)
    pure_k = KrausMor(v.retyped(Obj(2), Obj(3)), Obj(3), Obj(1))
    result = kraus_from_choi(choi_of_kraus(pure_k))
    assert result.ancilla_dim == 1
    # single Kraus operator equal to the isometry up to phase
    op = result.kraus_ops[0]
    overlap = np.trace(op.conj().T @ v.array) / 2.0
    assert abs(abs(overlap) - 1.0) < 1e-9


def test_zero_channel_keeps_one_zero_operator():
    k = KrausMor(Mor(Obj(2), Obj(2), np.zeros((2, 2))), Obj(2), Obj(1))
    result = kraus_from_choi(choi_of_kraus(k))
    assert result.ancilla_dim == 1
    assert np.max(np.abs(result.kraus_ops[0])) == 0.0


def test_schrodinger_matches_direct_kraus_action():
    rng = np.random.default_rng(44)
    k = random_kraus(rng, 2, 3, 2)
    s = schrodinger_of(k)
    rho = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    want = apply_channel(k, rho)
    assert np.max(np.abs(s.apply(rho) - want)) < 1e-12
    assert np.max(np.abs(s.matrix @ rho.ravel() - want.ravel())) < 1e-12


def test_heisenberg_is_adjoint_under_the_trace_pairing():
    rng = np.random.default_rng(45)
    k = random_kraus(rng, 2, 3, 2)
    s = schrodinger_of(k)
    h = heisenberg_of(k)
    rho = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    x = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    lhs = np.vdot(x.ravel(), s.matrix @ rho.ravel())
    rhs = np.vdot(h.matrix @ x.ravel(), rho.ravel())
    assert abs(lhs - rhs) < 1e-12


def test_heisenberg_of_isometry_channel_is_unital():
    rng = np.random.default_rng(46)
    v = random_isometry(rng, 2, 6)
    k = KrausMor(v.retyped(Obj(2), Obj(6)), Obj(3), Obj(2))
    h = heisenberg_of(k)
    assert np.max(np.abs(h.apply(np.eye(3)) - np.eye(2))) < 1e-12


def test_superop_compose_matches_staged_application():
    rng = np.random.default_rng(47)
    f = random_kraus(rng, 2, 3, 2)
    g = random_kraus(rng, 3, 2, 3)
    both = superop_compose(schrodinger_of(g), schrodinger_of(f))
    rho = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    want = apply_channel(g, apply_channel(f, rho))
    assert np.max(np.abs(both.apply(rho) - want)) < 1e-12
    with pytest.raises(DimensionMismatch):
        superop_compose(schrodinger_of(f), schrodinger_of(f))


def test_choi_and_superop_views_convert_both_ways():
    rng = np.random.default_rng(48)
    k = random_kraus(rng, 3, 2, 2)
    s = schrodinger_of(k)
    choi = choi_of_kraus(k)
    assert np.max(np.abs(choi_of_superop(s).matrix - choi.matrix)) < 1e-12
    assert np.max(np.abs(superop_of_choi(choi).matrix - s.matrix)) < 1e-12
