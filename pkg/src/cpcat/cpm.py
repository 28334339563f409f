"""Doubled morphisms of the compact construction.

Here a CP morphism ``A -> B`` with Kraus morphism ``f : A -> B ⊗ C`` is
realized as one matrix ``A ⊗ A -> B ⊗ B`` by running a conjugated copy
next to the original and bending the two ancilla wires into each other:

    realized = (id_B ⊗ cap_C ⊗ id_B) ∘ (f_* ⊗ f')

where ``f' = swap(B, C) ∘ f`` moves the ancilla to the front and ``f_*``
is its lower star (:func:`cpcat.instances.conj_star`).  Entrywise,

    realized[(b', b), (a', a)] = sum_c conj(f[(b', c), a']) * f[(b, c), a]

with the left factor of each doubled pair the conjugated one.  This is
the same data as :func:`cpcat.cp.cp_form` under a fixed relabelling,

    cp_form[(a', b'), (a, b)] = realized[(b, b'), (a', a)]

so the two constructions convert into each other without touching the
Kraus representative.  Composition and tensor reuse the CP-level
operations on representatives; the realized matrices then compose by
plain matrix product and tensor by an interleaved Kronecker product,
which the tests check against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (COMPLEX, DEFAULT_TOL, Mor, Obj, Semiring, as_obj, compose,
                   factor_permutation, identity, swap, tensor)
from .cp import KrausMor, cp_compose, cp_identity, cp_tensor
from .errors import NotCompact
from .instances import cap, conj_star, cup


def cpm_form(k: KrausMor) -> Mor:
    """Realized doubled matrix ``A ⊗ A -> B ⊗ B`` of a Kraus morphism."""
    if not k.semiring.compact:
        raise NotCompact(f"{k.semiring.name} has no compact structure")
    b, c = k.out, k.ancilla
    sem = k.semiring
    front = compose(swap(b, c, sem), k.mor)
    starred = conj_star(front, ancilla=c, out=b)
    bend = tensor(identity(b, sem), tensor(cap(c, sem), identity(b, sem)))
    return compose(bend, tensor(starred, front))


@dataclass(frozen=True)
class CpmMor:
    """A doubled morphism: Kraus representative plus realized matrix."""

    kraus: KrausMor
    realized: Mor

    @classmethod
    def of(cls, k: KrausMor) -> "CpmMor":
        return cls(k, cpm_form(k))

    @property
    def dom(self) -> Obj:
        return self.kraus.dom

    @property
    def out(self) -> Obj:
        return self.kraus.out

    @property
    def semiring(self) -> Semiring:
        return self.kraus.semiring


def cpm_identity(a, semiring: Semiring = COMPLEX) -> CpmMor:
    return CpmMor.of(cp_identity(a, semiring))


def cpm_of_kraus(mor: Mor, out, ancilla) -> CpmMor:
    return CpmMor.of(KrausMor(mor, as_obj(out), as_obj(ancilla)))


def cpm_compose(g: CpmMor, f: CpmMor) -> CpmMor:
    """Composite; its realized matrix is the product of realized matrices."""
    return CpmMor.of(cp_compose(g.kraus, f.kraus))


def cpm_tensor(k1: CpmMor, k2: CpmMor) -> CpmMor:
    """Tensor; realized matrices combine by an interleaved Kronecker."""
    return CpmMor.of(cp_tensor(k1.kraus, k2.kraus))


def doubled_interleave(x1: Obj, x2: Obj, semiring: Semiring) -> Mor:
    """Permutation ``(X1 ⊗ X2) ⊗ (X1 ⊗ X2) -> (X1 ⊗ X1) ⊗ (X2 ⊗ X2)``.

    Conjugate realized matrices by this to turn a plain Kronecker of
    doubled matrices into the doubled matrix of the tensor.
    """
    dims = (x1.dim, x2.dim, x1.dim, x2.dim)
    return factor_permutation(dims, (0, 2, 1, 3), semiring)


def cpm_dagger(k: KrausMor) -> KrausMor:
    """Adjoint Kraus morphism ``g : B -> A ⊗ C`` with the same ancilla.

    ``g = (f† ⊗ id_C) ∘ (id_B ⊗ cup_C)``; its realized matrix is the
    dagger of the realized matrix of ``k``.
    """
    if not k.semiring.compact:
        raise NotCompact(f"{k.semiring.name} has no compact structure")
    sem = k.semiring
    b, c = k.out, k.ancilla
    feed = tensor(identity(b, sem), cup(c, sem))
    lift = tensor(k.mor.dagger(), identity(c, sem))
    return KrausMor(compose(lift, feed), k.dom, c)


def cp_to_cpm(k: KrausMor) -> KrausMor:
    """CP to doubled presentation: the Kraus representative is shared.

    Only the reading of the canonical matrix changes, per the
    relabelling in the module docstring, so this is the identity on
    representatives.
    """
    return k


def cpm_to_cp(k: KrausMor) -> KrausMor:
    """Inverse of :func:`cp_to_cpm`, again the identity on representatives."""
    return k
