"""Choi matrices, complete positivity and the two channel pictures.

Complex instance only; everything here leans on the Hermitian
eigendecomposition.  Conventions:

* ``vec`` is row-major: ``vec(rho)[(i, j)] = rho[i, j]`` with ``i`` the
  most significant index.
* The Choi matrix of a channel ``Phi`` with input dimension ``n`` lives
  on ``n * out_dim`` and has block ``(i, j)`` equal to ``Phi(E_ij)``,
  i.e. ``choi[(i, i'), (j, j')] = Phi(E_ij)[i', j']``.
* A superoperator acts on vectorized density matrices,
  ``S[(i', j'), (i, j)] = choi[(i, i'), (j, j')]``.

The Schroedinger picture of a Kraus morphism ``f : A -> B ⊗ C`` sends
``rho`` to the ancilla partial trace of ``f rho f†``; the Heisenberg
picture sends an observable ``x`` on ``B`` to ``f† (x ⊗ id_C) f``.  The
two are adjoint for the trace pairing and the tests pin that down.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import COMPLEX, Mor, Obj
from .cp import KrausMor
from .errors import (DimensionMismatch, InvalidArgument, NotCompletelyPositive,
                     NotHermitian, ShapeMismatch)

KRAUS_EIG_TOL = 1e-10


def _require_complex(k: KrausMor) -> None:
    if k.semiring is not COMPLEX:
        raise InvalidArgument(
            "channel-level operations need the complex instance")


def _kraus_tensor(k: KrausMor) -> np.ndarray:
    """Entries of ``k`` reshaped to ``[out, ancilla, in]``."""
    _require_complex(k)
    return k.mor.array.reshape(k.out.dim, k.ancilla.dim, k.dom.dim)


@dataclass(frozen=True)
class ChoiMatrix:
    in_dim: int
    out_dim: int
    matrix: np.ndarray

    def __post_init__(self):
        n = self.in_dim * self.out_dim
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.shape != (n, n):
            raise ShapeMismatch(
                f"Choi matrix for {self.in_dim}->{self.out_dim} must be "
                f"{n} x {n}, got {m.shape}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True)
class Superoperator:
    """Matrix acting on row-major vectorized operators."""

    in_dim: int
    out_dim: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.shape != (self.out_dim ** 2, self.in_dim ** 2):
            raise ShapeMismatch(
                f"superoperator for {self.in_dim}->{self.out_dim} must be "
                f"{self.out_dim ** 2} x {self.in_dim ** 2}, got {m.shape}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        rho = np.asarray(rho, dtype=np.complex128)
        if rho.shape != (self.in_dim, self.in_dim):
            raise ShapeMismatch(
                f"operator must be {self.in_dim} x {self.in_dim}")
        out = self.matrix @ rho.reshape(-1)
        return out.reshape(self.out_dim, self.out_dim)


@dataclass(frozen=True)
class DilationResult:
    """Kraus operators recovered from a Choi matrix.

    ``mor`` stacks the operators into a single Kraus morphism
    ``A -> B ⊗ C`` whose ancilla index enumerates the operators, so
    ``ancilla_dim = len(kraus_ops)`` and never exceeds ``in * out``.
    """

    kraus_ops: tuple
    mor: KrausMor
    reconstruction_error: float

    @property
    def ancilla_dim(self) -> int:
        return len(self.kraus_ops)


def choi_of_kraus(k: KrausMor) -> ChoiMatrix:
    """Choi matrix of the Schroedinger channel of ``k``.

    Explicit sum over the ancilla index:
    ``choi[(i, i'), (j, j')] = sum_c f[(i', c), i] conj(f[(j', c), j])``.
    """
    t = _kraus_tensor(k)
    a, b = k.dom.dim, k.out.dim
    blocks = np.einsum("bca,dce->abed", t, t.conj())
    return ChoiMatrix(a, b, blocks.reshape(a * b, a * b))


def check_cp(choi: ChoiMatrix, tol: float = 1e-9) -> tuple:
    """Hermiticity then spectrum: returns ``(is_cp, min_eigenvalue)``.

    Raises :class:`NotHermitian` when the matrix is further than ``tol``
    from its adjoint; otherwise the verdict is ``min_eig >= -tol``.
    """
    m = choi.matrix
    herm_dev = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if herm_dev > tol:
        raise NotHermitian(
            f"Choi matrix is {herm_dev:.3e} from Hermitian (tol {tol:.3e})")
    eigs = np.linalg.eigvalsh((m + m.conj().T) / 2)
    min_eig = float(eigs[0])
    return min_eig >= -tol, min_eig


def kraus_from_choi(choi: ChoiMatrix, tol: float = KRAUS_EIG_TOL) -> DilationResult:
    """Eigendecompose a CP Choi matrix into Kraus operators.

    Eigenvalues below ``-tol`` raise :class:`NotCompletelyPositive`;
    those within ``(-tol, tol)`` are dropped.  Each kept pair
    ``(lam, v)`` yields the operator ``K[i', i] = sqrt(lam) v[(i, i')]``.
    """
    m = choi.matrix
    herm_dev = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if herm_dev > tol:
        raise NotHermitian(
            f"Choi matrix is {herm_dev:.3e} from Hermitian (tol {tol:.3e})")
    a, b = choi.in_dim, choi.out_dim
    vals, vecs = np.linalg.eigh((m + m.conj().T) / 2)
    if vals[0] < -tol:
        raise NotCompletelyPositive(
            f"Choi matrix has eigenvalue {vals[0]:.3e} < {-tol:.3e}")
    ops = []
    for lam, vec in zip(vals, vecs.T):
        if lam > tol:
            ops.append(np.sqrt(lam) * vec.reshape(a, b).T)
    if not ops:
        # the zero channel still needs a carrier; use one zero operator
        ops.append(np.zeros((b, a), dtype=np.complex128))
    stacked = np.stack(ops, axis=1).reshape(b * len(ops), a)
    mor = KrausMor(Mor(Obj(a), Obj(b, len(ops)), stacked), Obj(b), Obj(len(ops)))
    err = float(np.max(np.abs(choi_of_kraus(mor).matrix - m)))
    return DilationResult(tuple(ops), mor, err)


def schrodinger_of(k: KrausMor) -> Superoperator:
    """State picture ``rho -> Tr_C(f rho f†)`` as a matrix on vec(rho)."""
    t = _kraus_tensor(k)
    a, b = k.dom.dim, k.out.dim
    sup = np.einsum("bca,dce->bdae", t, t.conj())
    return Superoperator(a, b, sup.reshape(b * b, a * a))


def heisenberg_of(k: KrausMor) -> Superoperator:
    """Observable picture ``x -> f† (x ⊗ id_C) f`` as a matrix on vec(x)."""
    t = _kraus_tensor(k)
    a, b = k.dom.dim, k.out.dim
    sup = np.einsum("bca,dce->aebd", t.conj(), t)
    return Superoperator(b, a, sup.reshape(a * a, b * b))


def superop_compose(s2: Superoperator, s1: Superoperator) -> Superoperator:
    if s1.out_dim != s2.in_dim:
        raise DimensionMismatch(
            f"superop_compose: {s1.out_dim} != {s2.in_dim}")
    return Superoperator(s1.in_dim, s2.out_dim, s2.matrix @ s1.matrix)


def choi_of_superop(s: Superoperator) -> ChoiMatrix:
    """Reindex ``S[(i', j'), (i, j)]`` into ``choi[(i, i'), (j, j')]``."""
    a, b = s.in_dim, s.out_dim
    four = s.matrix.reshape(b, b, a, a)
    return ChoiMatrix(a, b, four.transpose(2, 0, 3, 1).reshape(a * b, a * b))


def superop_of_choi(c: ChoiMatrix) -> Superoperator:
    a, b = c.in_dim, c.out_dim
    four = c.matrix.reshape(a, b, a, b)
    return Superoperator(a, b, four.transpose(1, 3, 0, 2).reshape(b * b, a * a))
