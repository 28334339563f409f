"""Compact structure and the two concrete instances.

Objects are self-dual with respect to the standard basis, so the cup on
``A`` is the state ``I -> A ⊗ A`` pairing equal basis indices and no dual
objects appear at runtime.  Cups are unnormalized: the complex cup on
dimension ``n`` has squared norm ``n``.

The complex semiring gives finite-dimensional Hilbert spaces; the
boolean semiring gives finite sets and relations, built from explicit
pair lists by :func:`rel_mor`.
"""

from __future__ import annotations

import numpy as np

from .core import (BOOLEAN, COMPLEX, Mor, Obj, Semiring, as_obj, compose,
                   identity, swap, tensor)
from .errors import (IndexOutOfRange, InvalidArgument, MissingFactorSplit,
                     NotCompact)


def cup(a, semiring: Semiring = COMPLEX) -> Mor:
    """The state ``I -> A ⊗ A`` with entry 1 where both indices agree."""
    if not semiring.compact:
        raise NotCompact(f"{semiring.name} has no compact structure")
    a = as_obj(a)
    entries = semiring.eye(a.dim).reshape(a.dim * a.dim, 1)
    return Mor(Obj(), a.tensor(a), entries, semiring)


def cap(a, semiring: Semiring = COMPLEX) -> Mor:
    """The effect ``A ⊗ A -> I``, dagger of the cup."""
    return cup(a, semiring).dagger()


def conj_star(f: Mor, ancilla=None, out=None) -> Mor:
    """Lower-star of ``f : A -> C ⊗ B``, typed ``A -> B ⊗ C``.

    Computed as ``swap(C, B) ∘ conj(f)``, which is what the dagger
    composed with both transposes amounts to under self-dual objects.
    The codomain split ``(C, B)`` is taken from the stored factors when
    there are exactly two, otherwise it must be passed in.
    """
    if ancilla is None and out is None:
        if len(f.cod.factors) != 2:
            raise MissingFactorSplit(
                f"codomain {f.cod!r} has no unique (C, B) split; pass one")
        c, b = (Obj(d) for d in f.cod.factors)
    elif ancilla is None or out is None:
        raise MissingFactorSplit("pass both halves of the codomain split")
    else:
        c, b = as_obj(ancilla), as_obj(out)
        if c.dim * b.dim != f.cod.dim:
            raise MissingFactorSplit(
                f"split {c!r} ⊗ {b!r} does not factor {f.cod!r}")
    return compose(swap(c, b, f.semiring), f.conjugate().retyped(f.dom, c.tensor(b)))


def transpose(f: Mor) -> Mor:
    """Compact transpose ``B -> A`` of ``f : A -> B`` (conjugated dagger)."""
    return f.dagger().conjugate()


def name_of(f: Mor) -> Mor:
    """Curry ``f : A -> B`` into the state ``I -> A ⊗ B``.

    This is ``(id_A ⊗ f) ∘ cup(A)``; bending the input wire up is
    invertible, so no information is lost.
    """
    return compose(tensor(identity(f.dom, f.semiring), f), cup(f.dom, f.semiring))


def rel_mor(dom_size: int, cod_size: int, pairs) -> Mor:
    """Boolean morphism from an explicit relation.

    ``pairs`` lists ``(input, output)`` members with 0-based indices.
    """
    if dom_size < 1 or cod_size < 1:
        raise InvalidArgument("relation carriers need dimension >= 1")
    entries = np.zeros((cod_size, dom_size), dtype=np.bool_)
    for x, y in pairs:
        if not (0 <= x < dom_size and 0 <= y < cod_size):
            raise IndexOutOfRange(
                f"pair ({x}, {y}) outside {dom_size} x {cod_size}")
        entries[y, x] = True
    return Mor(Obj(dom_size), Obj(cod_size), entries, BOOLEAN)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-ish unitary from the QR factorization of a Gaussian matrix."""
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_isometry(rng: np.random.Generator, dom: int, cod: int) -> Mor:
    """Complex isometry ``dom -> cod`` (requires ``cod >= dom``)."""
    if cod < dom:
        raise InvalidArgument(f"no isometry from {dom} into {cod}")
    return Mor(Obj(dom), Obj(cod), random_unitary(rng, cod)[:, :dom], COMPLEX)
