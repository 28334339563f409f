"""Checkers for the environment-structure, doubling and
preparation-state axioms, plus numerical replays of the proof steps
that connect them.

Universally quantified statements are checked on seeded samples plus
adversarial families (global phases, ancilla rotations, sign flips), so
a passing report means "holds on N samples", never "proved".  Failing
reports carry the offending morphisms entrywise so a counterexample can
be re-verified without rerunning any sampler.

The environment structure under test is the one where discarding is
tracing out: ``top(A)`` is the CP morphism ``A -> I`` whose Kraus
morphism is ``id_A`` with all of ``A`` ancillary.  Checkers that need a
biconditional evaluate both sides by genuinely different routes (direct
doubled forms versus composition with the discard in the CP layer) and
report whether the verdicts agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .core import (BOOLEAN, COMPLEX, DEFAULT_TOL, Mor, Obj, Semiring, UNIT,
                   as_obj, compose, identity, max_abs_diff, mor_equal,
                   random_mor, swap, tensor)
from .cp import (KrausMor, cp_compose, cp_deviation, cp_equal, cp_form,
                 cp_identity, cp_tensor, discard, pure)
from .cpm import CpmMor, cpm_form
from .channels import choi_of_kraus, kraus_from_choi
from .errors import DimensionMismatch, DomainNotUnit, InvalidArgument
from .instances import name_of, random_unitary


@dataclass(frozen=True)
class EnvStructure:
    """A choice of discard morphisms over one category instance."""

    semiring: Semiring
    top: Callable[[Obj], KrausMor]

    @classmethod
    def standard(cls, semiring: Semiring) -> "EnvStructure":
        return cls(semiring, lambda a: discard(a, semiring))


@dataclass
class AxiomReport:
    """Outcome of one axiom check over explicit or sampled inputs."""

    axiom: str
    holds: bool
    checked: int
    max_deviation: float = 0.0
    witness: Optional[dict] = None
    notes: tuple = field(default_factory=tuple)

    @property
    def status(self) -> str:
        if self.holds:
            return "holds"
        return "counterexample" if self.witness is not None else "fails"


def _equal(sem: Semiring, x: Mor, y: Mor, tol: float) -> tuple:
    dev = max_abs_diff(x, y)
    if sem.dtype is np.bool_:
        return dev == 0.0, dev
    return dev <= tol, dev


def check_env_a(env: EnvStructure, objects, tol: float = DEFAULT_TOL) -> AxiomReport:
    """Discard of the unit is the identity and discards multiply.

    Checks ``top(I) = cp_identity(I)`` once and
    ``cp_tensor(top(A), top(B)) = top(A ⊗ B)`` for every ordered pair
    of supplied objects.  The first failing clause becomes the witness.
    """
    sem = env.semiring
    objects = [as_obj(a) for a in objects]
    report = AxiomReport("env-a", True, 0)

    def clause(label: str, lhs: KrausMor, rhs: KrausMor) -> None:
        report.checked += 1
        dev = cp_deviation(lhs, rhs)
        report.max_deviation = max(report.max_deviation, dev)
        ok = dev == 0.0 if sem.dtype is np.bool_ else dev <= tol
        if not ok and report.witness is None:
            report.holds = False
            report.witness = {
                "clause": label,
                "deviation": dev,
                "lhs_form": cp_form(lhs).array,
                "rhs_form": cp_form(rhs).array,
            }
        elif not ok:
            report.holds = False

    clause("unit", env.top(UNIT), cp_identity(UNIT, sem))
    for a in objects:
        for b in objects:
            clause(f"pair {a!r} {b!r}",
                   cp_tensor(env.top(a), env.top(b)), env.top(a.tensor(b)))
    return report


def check_env_b_pair(env: EnvStructure, f: Mor, g: Mor,
                     tol: float = DEFAULT_TOL) -> AxiomReport:
    """Doubled equality in the base category iff equality after discard.

    ``f`` and ``g`` must share the type ``A -> C ⊗ B`` with the ancilla
    the leading factor.  The left side compares doubled forms directly
    (after one swap into the output-first layout); the right side stays
    inside the CP layer, composing the lifted morphisms with
    ``top(C) ⊗ id_B``.  Both verdicts must agree; the reported deviation
    is the gap between the two sides' numeric residuals, which is tiny
    precisely because the two routes compute the same canonical matrix.
    """
    sem = env.semiring
    if f.dom.dim != g.dom.dim or f.cod.dim != g.cod.dim:
        raise DimensionMismatch(f"env-b pair {f!r} vs {g!r}")
    if len(f.cod.factors) != 2 or f.cod.factors != g.cod.factors:
        raise DimensionMismatch(
            "env-b needs a shared two-factor codomain (ancilla, output)")
    c, b = (Obj(d) for d in f.cod.factors)

    def doubled(m: Mor) -> KrausMor:
        return KrausMor(compose(swap(c, b, sem), m), b, c)

    def discarded(m: Mor) -> KrausMor:
        lift = cp_tensor(env.top(c), cp_identity(b, sem))
        return cp_compose(lift, pure(m))

    left_dev = cp_deviation(doubled(f), doubled(g))
    right_dev = cp_deviation(discarded(f), discarded(g))
    if sem.dtype is np.bool_:
        left, right = left_dev == 0.0, right_dev == 0.0
    else:
        left, right = left_dev <= tol, right_dev <= tol
    holds = left == right
    witness = None
    if not holds:
        witness = {"f": f.array, "g": g.array, "left_deviation": left_dev,
                   "right_deviation": right_dev}
    return AxiomReport(
        "env-b", holds, 1, abs(left_dev - right_dev), witness,
        (f"left={left} right={right}",))


def check_env_c(env: EnvStructure, k: KrausMor,
                tol: float = DEFAULT_TOL) -> AxiomReport:
    """Every CP morphism has a Kraus witness: extract one and compare.

    Goes out through the Choi matrix and back through its
    eigendecomposition, then certifies ``cp_equal`` between the
    extracted dilation and the original.  Complex instance only.
    """
    if env.semiring is not COMPLEX or k.semiring is not COMPLEX:
        raise InvalidArgument("env-c needs the complex instance")
    extracted = kraus_from_choi(choi_of_kraus(k))
    dev = cp_deviation(extracted.mor, k)
    holds = dev <= tol
    witness = None if holds else {
        "kraus": k.mor.array, "extracted": extracted.mor.mor.array,
        "deviation": dev}
    return AxiomReport("env-c", holds, 1, dev, witness,
                       (f"ancilla_dim={extracted.ancilla_dim}",))


def check_doubling_pair(k1: KrausMor, k2: KrausMor,
                        tol: float = DEFAULT_TOL) -> AxiomReport:
    """Tensor squares equal iff the morphisms are equal (CP layer)."""
    if (k1.dom.dim, k1.out.dim) != (k2.dom.dim, k2.out.dim):
        raise DimensionMismatch(f"doubling pair {k1!r} vs {k2!r}")
    squares = cp_deviation(cp_tensor(k1, k1), cp_tensor(k2, k2))
    singles = cp_deviation(k1, k2)
    if k1.semiring.dtype is np.bool_:
        ante, cons = squares == 0.0, singles == 0.0
    else:
        ante, cons = squares <= tol, singles <= tol
    holds = ante == cons
    witness = None
    if not holds:
        witness = {"k1": k1.mor.array, "k2": k2.mor.array,
                   "square_deviation": squares, "single_deviation": singles}
    return AxiomReport("doubling", holds, 1, 0.0, witness,
                       (f"squares={ante} singles={cons}",))


def check_doubling_base(f: Mor, g: Mor, tol: float = DEFAULT_TOL) -> AxiomReport:
    """The same biconditional on raw base-category morphisms.

    The complex instance genuinely fails this: ``[1]`` and ``[-1]`` have
    equal tensor squares but are distinct, and that sign pair is the
    expected counterexample.
    """
    if (f.dom.dim, f.cod.dim) != (g.dom.dim, g.cod.dim):
        raise DimensionMismatch(f"doubling pair {f!r} vs {g!r}")
    sem = f.semiring
    ante, sq_dev = _equal(sem, tensor(f, f), tensor(g, g), tol)
    cons, single_dev = _equal(sem, f, g, tol)
    holds = ante == cons
    witness = None
    if not holds:
        witness = {"f": f.array, "g": g.array,
                   "square_deviation": sq_dev, "single_deviation": single_dev}
    return AxiomReport("doubling-base", holds, 1, 0.0, witness,
                       (f"squares={ante} singles={cons}",))


def check_prep_state_pair(phi: CpmMor, psi: CpmMor,
                          tol: float = DEFAULT_TOL) -> AxiomReport:
    """States with equal preparations are equal (doubled layer).

    Evaluates ``R R† = S S†  implies  R = S`` on the realized matrices
    of two states; the antecedent composes each state with its own
    adjoint, which is exactly the preparation it induces.
    """
    if phi.dom.dim != 1 or psi.dom.dim != 1:
        raise DomainNotUnit("preparation-state check needs states from I")
    if phi.out.dim != psi.out.dim:
        raise DimensionMismatch(f"prep-state pair {phi!r} vs {psi!r}")
    sem = phi.semiring
    r, s = phi.realized, psi.realized
    ante, prep_dev = _equal(sem, compose(r, r.dagger()),
                            compose(s, s.dagger()), tol)
    cons, state_dev = _equal(sem, r, s, tol)
    holds = (not ante) or cons
    witness = None
    if not holds:
        witness = {"phi": r.array, "psi": s.array,
                   "preparation_deviation": prep_dev,
                   "state_deviation": state_dev}
    return AxiomReport("prep-state", holds, 1, 0.0, witness,
                       (f"preparations={ante} states={cons}",))


def check_prep_state_base(f: Mor, g: Mor, tol: float = DEFAULT_TOL) -> AxiomReport:
    """The raw-category version, which the sign pair ``[1]/[-1]`` breaks."""
    if f.dom.dim != 1 or g.dom.dim != 1:
        raise DomainNotUnit("preparation-state check needs states from I")
    if f.cod.dim != g.cod.dim:
        raise DimensionMismatch(f"prep-state pair {f!r} vs {g!r}")
    sem = f.semiring
    ante, prep_dev = _equal(sem, compose(f, f.dagger()),
                            compose(g, g.dagger()), tol)
    cons, state_dev = _equal(sem, f, g, tol)
    holds = (not ante) or cons
    witness = None
    if not holds:
        witness = {"f": f.array, "g": g.array,
                   "preparation_deviation": prep_dev,
                   "state_deviation": state_dev}
    return AxiomReport("prep-state-base", holds, 1, 0.0, witness,
                       (f"preparations={ante} states={cons}",))


def _as_state(m: Mor) -> tuple:
    """Bend ``m : A -> D`` into a Kraus state and its realized double.

    The name ``I -> A ⊗ D`` of ``m`` keeps the whole input as ancilla;
    bending is invertible, so identities checked on the state carry the
    full content of the corresponding identities for ``m``.
    """
    a, d = m.dom, m.cod
    state = compose(swap(a, d, m.semiring), name_of(m))
    k = KrausMor(state, as_obj(d.dim), as_obj(a.dim))
    return k, cpm_form(k)


def replay_proposition_steps(f: Mor, g: Mor,
                             tol: float = DEFAULT_TOL) -> AxiomReport:
    """Re-run the displayed rewrite steps as concrete matrix identities.

    For each of ``f`` and ``g`` (any pair with a common domain):

    * ``four_fold``: the doubled form of ``m ∘ m†``, rewired by the
      fixed bending permutation, equals the product of the realized
      state of ``m`` with its own adjoint (the four-box picture).
    * ``cup_bend``: the realized state of ``m`` is exactly ``m ∘ m†``
      with its wires bent straight, i.e. a pure reindexing.

    Both are equalities, not implications, so the pair-level consequence
    (equal preparations iff equal realized states) follows and is
    reported as an agreement check between the two sides.
    """
    if f.dom.dim != g.dom.dim:
        raise DimensionMismatch("replay needs a common domain")
    if f.semiring is not g.semiring:
        raise DimensionMismatch("replay needs a common semiring")
    sem = f.semiring
    report = AxiomReport("replay", True, 0)

    def step(label: str, dev: float) -> None:
        report.checked += 1
        report.max_deviation = max(report.max_deviation, dev)
        ok = dev == 0.0 if sem.dtype is np.bool_ else dev <= tol
        if not ok:
            report.holds = False
            if report.witness is None:
                report.witness = {"step": label, "deviation": dev}

    sides = {}
    for label, m in (("f", f), ("g", g)):
        d = m.cod.dim
        _, phi = _as_state(m)
        prep = compose(m, m.dagger())
        doubled = cpm_form(pure(prep))
        # four-box picture: rewire the doubled preparation so indices
        # line up with phi ∘ phi†
        p4 = doubled.array.reshape(d, d, d, d)
        rewired = p4.transpose(3, 1, 2, 0).reshape(d * d, d * d)
        outer = compose(phi, phi.dagger())
        step(f"four_fold[{label}]", sem.deviation(outer.array, rewired))
        # bending: phi is prep with both wires bent up
        bent = phi.array.reshape(d, d).T
        step(f"cup_bend[{label}]", sem.deviation(bent, prep.array))
        sides[label] = (prep, phi)

    # pair-level agreement: preparations equal iff realized states equal;
    # only meaningful when the two sides are comparable at all
    if f.cod.dim == g.cod.dim:
        prep_eq, _ = _equal(sem, sides["f"][0], sides["g"][0], tol)
        state_eq, _ = _equal(sem, sides["f"][1], sides["g"][1], tol)
        report.checked += 1
        if prep_eq != state_eq:
            report.holds = False
            if report.witness is None:
                report.witness = {"step": "pair_agreement",
                                  "preparations_equal": prep_eq,
                                  "states_equal": state_eq,
                                  "f": f.array, "g": g.array}
        report.notes = (f"preparations_equal={prep_eq}",
                        f"states_equal={state_eq}")
    else:
        report.notes = ("pair_agreement skipped: different codomains",)
    return report


def xi_lift(k: KrausMor) -> KrausMor:
    """The isomorphism's action: lift the Kraus morphism, discard its ancilla.

    ``xi(k) = (id_B ⊗ top_C) ∘ pure(kraus)`` lands back at an ``A -> B``
    CP morphism presented with ancilla ``C ⊗ I``; it is ``cp_equal`` to
    ``k`` itself, which is what makes the map well defined on doubled
    forms.
    """
    sem = k.semiring
    lift = cp_tensor(cp_identity(k.out, sem), discard(k.ancilla, sem))
    return cp_compose(lift, pure(k.mor))


def xi_iso_check(semiring: Semiring = COMPLEX, samples: int = 100,
                 seed: int = 0, tol: float = DEFAULT_TOL,
                 max_dim: int = 3) -> AxiomReport:
    """Functor laws of the isomorphism plus doubling on the pure image.

    Per sample: xi respects composition and tensor (compared through
    ``cp_equal``), xi is the identity on doubled forms, and doubling
    holds as a biconditional on pairs of lifted pure morphisms,
    including phase-related pairs where both sides must come out true.
    """
    if samples < 1:
        raise InvalidArgument(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    report = AxiomReport("xi", True, 0)

    def expect(label: str, dev: float) -> None:
        report.checked += 1
        report.max_deviation = max(report.max_deviation, dev)
        ok = dev == 0.0 if semiring.dtype is np.bool_ else dev <= tol
        if not ok:
            report.holds = False
            if report.witness is None:
                report.witness = {"law": label, "deviation": dev}

    for n in range(samples):
        dims = [int(d) for d in rng.integers(1, max_dim + 1, size=7)]
        a, b, c, b2, c2, a3, b3 = dims
        k = KrausMor(random_mor(rng, a, Obj(b, c), semiring), Obj(b), Obj(c))
        k2 = KrausMor(random_mor(rng, b, Obj(b2, c2), semiring),
                      Obj(b2), Obj(c2))
        k3 = KrausMor(random_mor(rng, a3, Obj(b3, c), semiring),
                      Obj(b3), Obj(c))
        expect("identity_on_forms", cp_deviation(xi_lift(k), k))
        expect("compose", cp_deviation(
            xi_lift(cp_compose(k2, k)),
            cp_compose(xi_lift(k2), xi_lift(k))))
        expect("tensor", cp_deviation(
            xi_lift(cp_tensor(k, k3)),
            cp_tensor(xi_lift(k), xi_lift(k3))))

        # doubling on the pure image, with an adversarial phase pair
        m1 = random_mor(rng, a, b, semiring)
        if semiring.dtype is np.bool_ or n % 2:
            m2 = m1 if n % 3 == 0 else random_mor(rng, a, b, semiring)
        else:
            theta = 2 * np.pi * (n % 12) / 12
            m2 = Mor(m1.dom, m1.cod, np.exp(1j * theta) * m1.array)
        sub = check_doubling_pair(pure(m1), pure(m2), tol)
        report.checked += 1
        if not sub.holds:
            report.holds = False
            if report.witness is None:
                report.witness = sub.witness
    return report


def _random_kraus(rng, semiring: Semiring, max_dim: int = 3) -> KrausMor:
    a, b, c = (int(d) for d in rng.integers(1, max_dim + 1, size=3))
    return KrausMor(random_mor(rng, a, Obj(b, c), semiring), Obj(b), Obj(c))


def _merge(total: AxiomReport, one: AxiomReport) -> None:
    total.checked += one.checked
    total.max_deviation = max(total.max_deviation, one.max_deviation)
    if not one.holds:
        total.holds = False
        if total.witness is None:
            total.witness = one.witness


def run_env_a(semiring: Semiring, samples: int = 0, seed: int = 0,
              tol: float = DEFAULT_TOL, max_dim: int = 4) -> AxiomReport:
    """Axiom (a) over all objects of dimension up to ``max_dim``."""
    env = EnvStructure.standard(semiring)
    objects = [UNIT] + [Obj(d) for d in range(1, max_dim + 1)]
    return check_env_a(env, objects, tol)


def run_env_b(semiring: Semiring, samples: int = 100, seed: int = 0,
              tol: float = DEFAULT_TOL, max_dim: int = 3) -> AxiomReport:
    """Axiom (b) on random pairs plus the ancilla-rotation family."""
    if samples < 1:
        raise InvalidArgument(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    env = EnvStructure.standard(semiring)
    total = AxiomReport("env-b", True, 0)
    for n in range(samples):
        a, b, c = (int(d) for d in rng.integers(1, max_dim + 1, size=3))
        f = random_mor(rng, a, Obj(c, b), semiring)
        if n % 3 == 0:
            g = f
        elif n % 3 == 1:
            # equal after discarding: rotate the ancilla only
            if semiring.dtype is np.bool_:
                u = np.eye(c, dtype=np.bool_)[rng.permutation(c)]
            else:
                u = random_unitary(rng, c)
            rot = Mor(Obj(c), Obj(c), u, semiring)
            g = compose(tensor(rot, identity(b, semiring)), f)
        else:
            g = random_mor(rng, a, Obj(c, b), semiring)
        _merge(total, check_env_b_pair(env, f, g, tol))
    return total


def run_env_c(semiring: Semiring = COMPLEX, samples: int = 100, seed: int = 0,
              tol: float = 1e-8, max_dim: int = 3) -> AxiomReport:
    """Axiom (c): Kraus witnesses for random CP morphisms (complex only)."""
    if samples < 1:
        raise InvalidArgument(f"samples must be >= 1, got {samples}")
    if semiring is not COMPLEX:
        raise InvalidArgument("env-c needs the complex instance")
    rng = np.random.default_rng(seed)
    env = EnvStructure.standard(semiring)
    total = AxiomReport("env-c", True, 0)
    for _ in range(samples):
        _merge(total, check_env_c(env, _random_kraus(rng, semiring, max_dim), tol))
    return total


def run_doubling(semiring: Semiring, samples: int = 100, seed: int = 0,
                 tol: float = DEFAULT_TOL, max_dim: int = 3) -> AxiomReport:
    """Doubling on the doubled image: pure pairs, phases included."""
    if samples < 1:
        raise InvalidArgument(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    total = AxiomReport("doubling", True, 0)
    for n in range(samples):
        a, b = (int(d) for d in rng.integers(1, max_dim + 1, size=2))
        m1 = random_mor(rng, a, b, semiring)
        if semiring.dtype is not np.bool_ and n % 2 == 0:
            theta = 2 * np.pi * (n % 12) / 12
            m2 = Mor(m1.dom, m1.cod, np.exp(1j * theta) * m1.array)
        elif n % 3 == 0:
            m2 = m1
        else:
            m2 = random_mor(rng, a, b, semiring)
        _merge(total, check_doubling_pair(pure(m1), pure(m2), tol))
    return total


def run_prep_state(semiring: Semiring, samples: int = 100, seed: int = 0,
                   tol: float = DEFAULT_TOL, max_dim: int = 3) -> AxiomReport:
    """Preparation-state agreement on doubled states, phases included."""
    if samples < 1:
        raise InvalidArgument(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    total = AxiomReport("prep-state", True, 0)
    for n in range(samples):
        b, c = (int(d) for d in rng.integers(1, max_dim + 1, size=2))
        s1 = random_mor(rng, UNIT, Obj(b, c), semiring)
        if semiring.dtype is not np.bool_ and n % 2 == 0:
            theta = 2 * np.pi * (n % 12) / 12
            s2 = Mor(s1.dom, s1.cod, np.exp(1j * theta) * s1.array)
        elif n % 3 == 0:
            s2 = s1
        else:
            s2 = random_mor(rng, UNIT, Obj(b, c), semiring)
        phi = CpmMor.of(KrausMor(s1, Obj(b), Obj(c)))
        psi = CpmMor.of(KrausMor(s2, Obj(b), Obj(c)))
        _merge(total, check_prep_state_pair(phi, psi, tol))
    return total


def run_replay(semiring: Semiring, samples: int = 50, seed: int = 0,
               tol: float = DEFAULT_TOL, max_dim: int = 3) -> AxiomReport:
    """Proof-step replay on random pairs with a common domain."""
    if samples < 1:
        raise InvalidArgument(f"samples must be >= 1, got {samples}")
    rng = np.random.default_rng(seed)
    total = AxiomReport("replay", True, 0)
    for n in range(samples):
        a, b = (int(d) for d in rng.integers(1, max_dim + 1, size=2))
        f = random_mor(rng, a, b, semiring)
        g = f if n % 5 == 0 else random_mor(rng, a, b, semiring)
        _merge(total, replay_proposition_steps(f, g, tol))
    return total


def run_xi(semiring: Semiring, samples: int = 100, seed: int = 0,
           tol: float = DEFAULT_TOL, max_dim: int = 3) -> AxiomReport:
    return xi_iso_check(semiring, samples, seed, tol, max_dim)


AXIOM_RUNNERS = {
    "env-a": run_env_a,
    "env-b": run_env_b,
    "env-c": run_env_c,
    "doubling": run_doubling,
    "prep-state": run_prep_state,
    "xi": run_xi,
}
