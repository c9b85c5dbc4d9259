"""Evaluation pairing between real torus cocycles and finite-coefficient
classes over the fundamental group of a real quotient.

The ambient group is pi1 = mu(C) x Gamma (mu constant over the reals, so the
product is direct).  A sign sequence y gives a group section s_y of the
second projection, xi -> (y, xi), and evaluating a degree-2 class beta at y
means pulling back along s_y.  Values land in H^2(Gamma, Z/2), identified
with {0, 1/2} inside Q/Z once and for all.

Left linearity is tested for the based evaluation: the table minus its value
at the identity sequence must be additive.  Classes pulled back along the
projection to Gamma have constant tables, so they are linear in this sense;
the distinguished degree-2 class of the order-8 dihedral extension is not.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .groups import (
    FiniteGroup, GroupHom, abelian_coords_to_id, make_abelian, make_cyclic,
    make_direct_product, make_hom, make_semidirect,
)
from .gmodules import GModule, ModuleHom, gamma_real, mu_m_real, pullback_module, trivial_module
from .cohomology import (
    CohomologyClass, CohomologyGroup, change_coefficients,
    cohomology_group, kunneth_basis, pullback_class,
)
from .extensions import d8_class
from .real_galois import RealGaloisError, SignSequence, h1_real_torsion, sign_sequence_coordinates


class PairingError(ValueError):
    pass


@dataclass(frozen=True)
class Section:
    """A group section of the projection pi1 -> Gamma attached to a cocycle y."""

    y: SignSequence
    hom: GroupHom


class Pi1Real:
    """The group mu(C) x Gamma with its distinguished retraction and projection.

    mu_module is a module over Gamma describing the point group mu(C) with
    its Galois action; a trivial action yields a direct product (the only
    case the torus examples need), a nontrivial one a semidirect product, for
    which the retraction onto mu(C) is only a map of sets (lambda_o is None,
    retraction_ids still records it).
    """

    def __init__(self, mu_module: GModule):
        gamma = gamma_real()
        if mu_module.group != gamma:
            raise PairingError("mu must be a module over the real Galois group")
        self.mu_module = mu_module
        self.gamma = gamma
        factors = mu_module.factors
        mu_group = make_abelian(factors, name="mu")
        self.mu_group = mu_group
        if mu_module.is_trivial_action:
            self.group = make_direct_product(mu_group, gamma, name="pi1")
            self.lambda_o = self.group.proj_left
            self.p2 = self.group.proj_right
        else:
            fac = np.array(factors, dtype=np.int64)
            k = len(factors)
            coords = np.zeros((mu_group.order, k), dtype=np.int64)
            rem = np.arange(mu_group.order, dtype=np.int64)
            for j in range(k):
                w = int(np.prod(fac[j + 1:])) if j + 1 < k else 1
                coords[:, j] = rem // w
                rem = rem % w
            perms = []
            for g in range(gamma.order):
                imgs = coords @ mu_module.action_table[g].T % fac
                ids = np.zeros(mu_group.order, dtype=np.int64)
                for j in range(k):
                    ids = ids * fac[j] + imgs[:, j]
                perms.append(ids)
            self.group = make_semidirect(mu_group, gamma, perms, name="pi1")
            self.lambda_o = None
            self.p2 = self.group.proj_quotient
        self.retraction_ids = np.arange(self.group.order) // gamma.order

    @property
    def torsion_order(self) -> int:
        m = self.mu_module.factors[0] if self.mu_module.factors else 1
        if any(f != m for f in self.mu_module.factors):
            raise PairingError("sign-sequence features need equal invariant factors")
        return m

    @property
    def sequence_length(self) -> int:
        return self.mu_module.rank + 1

    def h1(self) -> list:
        return h1_real_torsion(self.sequence_length, self.torsion_order)

    def mu_id(self, y: SignSequence) -> int:
        coords = sign_sequence_coordinates(y, self.torsion_order)
        if len(coords) != self.mu_module.rank:
            raise PairingError("sign sequence length does not match the torus rank")
        return abelian_coords_to_id(coords, self.mu_module.factors)

    def section(self, y: SignSequence) -> Section:
        image = self.mu_id(y) * self.gamma.order + 1
        hom = make_hom(self.gamma, self.group, [image])
        assert self.p2.images[image] == 1
        return Section(y, hom)

    def coefficients(self, factors=(2,)) -> GModule:
        return trivial_module(self.group, factors, name="A")

    def h2(self, module: GModule | None = None) -> CohomologyGroup:
        if module is None:
            module = self.coefficients()
        return cohomology_group(self.group, module, 2)


def pi1_real(mu_module: GModule) -> Pi1Real:
    """Bundle the fundamental group of the real quotient with its projections."""
    return Pi1Real(mu_module)


def value_fraction(cls: CohomologyClass) -> Fraction:
    """Identify a class in H^2(Gamma, Z/2) with an element of {0, 1/2}."""
    fac = cls.parent.invariant_factors
    if fac == ():
        return Fraction(0)
    if fac == (2,):
        return Fraction(cls.coordinates[0], 2)
    raise PairingError("value group is not of order at most 2")


def evaluate(ctx: Pi1Real, beta: CohomologyClass, y: SignSequence) -> CohomologyClass:
    """Pull a degree-2 class back along the section attached to y."""
    if beta.parent.group != ctx.group:
        raise PairingError("class does not live over this fundamental group")
    if beta.parent.degree != 2:
        raise PairingError("evaluation needs a degree-2 class")
    return pullback_class(ctx.section(y).hom, beta)


@dataclass(frozen=True)
class EvaluationTable:
    """Values of one class at every torus cocycle, as elements of {0, 1/2}."""

    entries: tuple  # ((SignSequence, Fraction), ...)

    def value(self, y: SignSequence) -> Fraction:
        for s, v in self.entries:
            if s == y:
                return v
        raise KeyError(y)

    def as_dict(self) -> dict:
        return {s.label(): str(v) for s, v in self.entries}

    def is_constant(self) -> bool:
        vals = {v for _, v in self.entries}
        return len(vals) <= 1

    def nonzero_labels(self) -> list:
        return [s.label() for s, v in self.entries if v != 0]


def evaluation_table(ctx: Pi1Real, beta: CohomologyClass) -> EvaluationTable:
    return EvaluationTable(tuple(
        (y, value_fraction(evaluate(ctx, beta, y))) for y in ctx.h1()
    ))


def is_left_linear(ctx: Pi1Real, beta: CohomologyClass | None = None):
    """Whether based evaluation is additive in the cocycle argument.

    The test compares value(y * y') + value(identity) with value(y) +
    value(y') in Q/Z over every ordered pair; subtracting the identity value
    makes constant tables linear, matching the classification of the pairing
    into its product components.  With beta = None every basis class of
    H^2(pi1, Z/2) is tested; additivity in beta then extends the conclusion
    to all classes.

    Returns (True, None) or (False, (beta, y, y')).
    """
    if beta is None:
        h2 = ctx.h2()
        betas = [h2.class_from_coordinates(tuple(
            1 if i == j else 0 for j in range(len(h2.invariant_factors))
        )) for i in range(len(h2.invariant_factors))]
    else:
        betas = [beta]
    ys = ctx.h1()
    for b in betas:
        table = {y: value_fraction(evaluate(ctx, b, y)) for y in ys}
        base = table[SignSequence.identity(ctx.sequence_length)]
        for y in ys:
            for y2 in ys:
                lhs = (table[y * y2] + base) % 1
                rhs = (table[y] + table[y2]) % 1
                if lhs != rhs:
                    return False, (b, y, y2)
    return True, None


def alpha_class_T2() -> CohomologyClass:
    """The dihedral degree-2 class pulled back to pi1 of the 2-torsion torus.

    The retraction pi1 = (Z/2)^3 -> (Z/2)^2 transports the order-8 dihedral
    extension class; its evaluation table is nonconstant and non-additive.
    """
    ctx = pi1_real(trivial_module(gamma_real(), (2, 2), name="T2"))
    return pullback_class(ctx.lambda_o, d8_class())


def alpha_context() -> Pi1Real:
    return pi1_real(trivial_module(gamma_real(), (2, 2), name="T2"))


@dataclass(frozen=True)
class ComponentReport:
    bidegree: tuple
    class_count: int
    linear: bool
    constant_tables: bool
    violation: tuple | None


@dataclass(frozen=True)
class PairingReport:
    mu_factors: tuple
    components: tuple
    all_linear: bool
    h1h1_mu_vanishes: bool | None

    def component(self, bidegree) -> ComponentReport:
        for c in self.components:
            if c.bidegree == tuple(bidegree):
                return c
        raise KeyError(bidegree)


def kunneth_pairing_analysis(mu_module: GModule) -> PairingReport:
    """Linearity of the based evaluation on each product component of
    H^2(pi1, Z/2), with the extra vanishing check for the doubled-entry
    block of H^2(mu(C)) when mu is a square of one cyclic factor.
    """
    if not mu_module.is_trivial_action:
        raise PairingError("analysis supports trivial actions only")
    ctx = pi1_real(mu_module)
    m = ctx.torsion_order
    prod, elements = kunneth_basis(ctx.mu_group, ctx.gamma, 2)
    assert prod == ctx.group
    reports = []
    all_linear = True
    for bidegree in ((0, 2), (1, 1), (2, 0)):
        elems = [e for e in elements if e.bidegree == bidegree]
        violation = None
        linear = True
        constant = True
        for e in elems:
            ok, bad = is_left_linear(ctx, e.cls)
            if not ok and violation is None:
                linear = False
                violation = bad
            if not evaluation_table(ctx, e.cls).is_constant():
                constant = False
        all_linear = all_linear and linear
        reports.append(ComponentReport(bidegree, len(elems), linear, constant, violation))

    h1h1 = None
    if len(mu_module.factors) == 2 and m % 2 == 0:
        cyc = make_cyclic(m)
        mu_prod, mu_elements = kunneth_basis(cyc, cyc, 2)
        assert mu_prod == ctx.mu_group
        h1h1 = True
        for e in mu_elements:
            if e.bidegree != (1, 1):
                continue
            for y in ctx.h1():
                phi = make_hom(ctx.gamma, ctx.mu_group, [ctx.mu_id(y)])
                if not pullback_class(phi, e.cls).is_zero():
                    h1h1 = False
    return PairingReport(mu_module.factors, tuple(reports), all_linear, h1h1)


def coefficient_doubling_report(ctx: Pi1Real, m: int = 4) -> dict:
    """Invariant factors of H^2(pi1, mu_m with conjugation) and the orders of
    the images of the H^2(pi1, Z/2) basis under the doubling map Z/2 -> Z/m.
    """
    if m % 4 != 0 and m != 2:
        raise PairingError("doubling needs m divisible by 2")
    mu_coeff = pullback_module(ctx.p2, mu_m_real(m), name=f"mu{m}")
    h2_big = cohomology_group(ctx.group, mu_coeff, 2)
    h2_small = ctx.h2()
    phi = ModuleHom(h2_small.module, mu_coeff, [[m // 2]])
    orders = []
    for i in range(len(h2_small.invariant_factors)):
        coords = tuple(1 if j == i else 0 for j in range(len(h2_small.invariant_factors)))
        img = change_coefficients(phi, h2_small.class_from_coordinates(coords))
        doubled = img + img
        orders.append(1 if img.is_zero() else (2 if doubled.is_zero() else 0))
    return {
        "target_invariant_factors": h2_big.invariant_factors,
        "image_orders": orders,
    }
