"""Completely positive morphisms presented by Kraus dilations.

A CP morphism ``A -> B`` is carried by a Kraus morphism
``f : A -> B ⊗ C`` of the base category together with the designated
split of its codomain into the output ``B`` and the ancillary object
``C``.  Different dilations can present the same CP morphism, so
equality is decided on a canonical matrix, the *doubled form*

    form[(a', b'), (a, b)] = sum_c conj(f[(b, c), a']) * f[(b', c), a]

typed ``A ⊗ B -> A ⊗ B``.  Global phases on ``f`` and unitary rotations
of the ancilla cancel in this expression, which is why it is canonical.
The same matrix falls out of composing ``f ⊗ id_B``, the permutation
exchanging the two ``B`` wires, and ``(f ⊗ id_B)†``; tests keep an
index-level oracle for it.

Composition tensors the ancillas (the later ancilla leftmost) and
tensoring interleaves outputs before ancillas, so the result is again a
Kraus morphism in the ``B ⊗ C`` layout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (COMPLEX, DEFAULT_TOL, Mor, Obj, Semiring, UNIT, as_obj,
                   compose, factor_permutation, identity, swap, tensor)
from .errors import DimensionMismatch, ShapeMismatch


@dataclass(frozen=True)
class KrausMor:
    """A Kraus morphism ``mor : A -> B ⊗ C`` with its codomain split."""

    mor: Mor
    out: Obj
    ancilla: Obj

    def __post_init__(self):
        out, anc = as_obj(self.out), as_obj(self.ancilla)
        if out.dim * anc.dim != self.mor.cod.dim:
            raise ShapeMismatch(
                f"codomain dim {self.mor.cod.dim} does not split into "
                f"{out!r} ⊗ {anc!r}")
        object.__setattr__(self, "out", out)
        object.__setattr__(self, "ancilla", anc)
        object.__setattr__(
            self, "mor", self.mor.retyped(self.mor.dom, out.tensor(anc)))

    @property
    def dom(self) -> Obj:
        return self.mor.dom

    @property
    def semiring(self) -> Semiring:
        return self.mor.semiring

    def __repr__(self) -> str:
        return (f"KrausMor({self.dom!r} -> {self.out!r}, "
                f"ancilla={self.ancilla!r}, {self.semiring.name})")


def cp_form(k: KrausMor) -> Mor:
    """Canonical doubled form of ``k``, typed ``A ⊗ B -> A ⊗ B``."""
    b, c = k.out, k.ancilla
    sem = k.semiring
    lift = tensor(k.mor, identity(b, sem))
    exchange = factor_permutation((b.dim, c.dim, b.dim), (2, 1, 0), sem)
    return compose(lift.dagger(), compose(exchange, lift))


def cp_identity(a, semiring: Semiring = COMPLEX) -> KrausMor:
    """Identity CP morphism: Kraus ``id_A`` with trivial ancilla."""
    return KrausMor(identity(a, semiring), as_obj(a), UNIT)


def pure(f: Mor) -> KrausMor:
    """The doubling of a base morphism: ``f`` itself, trivial ancilla."""
    return KrausMor(f, f.cod, UNIT)


def discard(a, semiring: Semiring = COMPLEX) -> KrausMor:
    """Trace-out ``A -> I``: Kraus ``id_A`` with the whole of A ancillary."""
    return KrausMor(identity(a, semiring), UNIT, as_obj(a))


def cp_compose(g: KrausMor, f: KrausMor) -> KrausMor:
    """Composite ``g after f``; ancillas collect as ``C_g ⊗ C_f``."""
    if g.semiring is not f.semiring:
        raise DimensionMismatch("cannot compose across semirings")
    if f.out.dim != g.dom.dim:
        raise DimensionMismatch(
            f"cp_compose: output dim {f.out.dim} != input dim {g.dom.dim}")
    lifted = tensor(g.mor, identity(f.ancilla, f.semiring))
    return KrausMor(compose(lifted, f.mor), g.out,
                    g.ancilla.tensor(f.ancilla))


def cp_tensor(k1: KrausMor, k2: KrausMor) -> KrausMor:
    """Tensor of CP morphisms: outputs first, then both ancillas."""
    if k1.semiring is not k2.semiring:
        raise DimensionMismatch("cannot tensor across semirings")
    sem = k1.semiring
    raw = tensor(k1.mor, k2.mor)
    sort = tensor(identity(k1.out, sem),
                  tensor(swap(k1.ancilla, k2.out, sem),
                         identity(k2.ancilla, sem)))
    return KrausMor(compose(sort, raw), k1.out.tensor(k2.out),
                    k1.ancilla.tensor(k2.ancilla))


def cp_deviation(k1: KrausMor, k2: KrausMor) -> float:
    """Max-abs difference of the doubled forms."""
    if k1.semiring is not k2.semiring:
        raise DimensionMismatch("cannot compare across semirings")
    if (k1.dom.dim, k1.out.dim) != (k2.dom.dim, k2.out.dim):
        raise ShapeMismatch(
            f"cp morphisms {k1!r} and {k2!r} have different types")
    a, b = cp_form(k1), cp_form(k2)
    return k1.semiring.deviation(a.array, b.array)


def cp_equal(k1: KrausMor, k2: KrausMor, tol: float = DEFAULT_TOL) -> bool:
    """Equality of CP morphisms through their doubled forms.

    Exact on booleans; a max-abs test at ``tol`` on complex entries.
    Dilations with different ancilla dimensions compare fine.
    """
    dev = cp_deviation(k1, k2)
    if k1.semiring.dtype is np.bool_:
        return dev == 0.0
    return dev <= tol
