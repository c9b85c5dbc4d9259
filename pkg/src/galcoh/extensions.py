"""Central extensions of a finite group by a finite abelian group.

An extension 1 -> A -> E -> G -> 1 with A central is packaged together with a
set-theoretic section s of the quotient map.  The section discrepancy
s(g)s(h)s(gh)^-1 lands in A and defines a 2-cocycle for the trivial action;
conversely a 2-cocycle glues A x G into a group.  The two directions are
mutually inverse up to coboundary, so H^2(G, A) classifies these extensions.
"""

from __future__ import annotations

import numpy as np

from .groups import (
    FiniteGroup,
    GroupError,
    GroupHom,
    _abelian_invariant_factors,
    make_abelian,
    make_hom,
    make_semidirect,
    make_cyclic,
)
from .gmodules import GModule, trivial_module
from .cohomology import Cochain, CohomologyClass, CohomologyError, cohomology_group, normalize_cocycle


class ExtensionError(ValueError):
    pass


class Extension:
    """A central extension with a chosen set-theoretic section.

    total            the middle group E
    kernel_embedding injective hom A -> E with central image, image = ker(quotient_map)
    quotient_map     surjective hom E -> G
    section          array of E-ids indexed by G-id, with quotient_map(section[g]) = g

    The section need not send identity to identity; the extracted cocycle is
    normalized exactly when it does.
    """

    def __init__(self, total: FiniteGroup, kernel_embedding: GroupHom,
                 quotient_map: GroupHom, section):
        if kernel_embedding.target is not total and kernel_embedding.target != total:
            raise ExtensionError("kernel embedding must land in the total group")
        if quotient_map.source is not total and quotient_map.source != total:
            raise ExtensionError("quotient map must start at the total group")
        kernel_group = kernel_embedding.source
        quotient_group = quotient_map.target
        emb = kernel_embedding.images
        if len(set(emb.tolist())) != kernel_group.order:
            raise ExtensionError("kernel embedding is not injective")
        if total.order != kernel_group.order * quotient_group.order:
            raise ExtensionError("total group order must be |A| * |G|")
        # central image
        img = np.asarray(sorted(set(emb.tolist())), dtype=np.int64)
        if not np.array_equal(total.table[np.ix_(img, np.arange(total.order))],
                              total.table[np.ix_(np.arange(total.order), img)].T):
            raise ExtensionError("kernel image is not central in the total group")
        # image = kernel of the quotient map
        ker = np.nonzero(quotient_map.images == 0)[0]
        if not np.array_equal(np.sort(ker), img):
            raise ExtensionError("kernel embedding image differs from ker(quotient map)")
        if not quotient_map.is_surjective():
            raise ExtensionError("quotient map is not surjective")
        section = np.asarray(section, dtype=np.int64)
        if section.shape != (quotient_group.order,):
            raise ExtensionError("section must list one total-group id per quotient id")
        if section.min() < 0 or section.max() >= total.order:
            raise ExtensionError("section ids out of range")
        if not np.array_equal(quotient_map.images[section], np.arange(quotient_group.order)):
            raise ExtensionError("section is not a right inverse of the quotient map")
        self.total = total
        self.kernel_embedding = kernel_embedding
        self.quotient_map = quotient_map
        self.section = section
        self.section.flags.writeable = False

    @property
    def kernel_group(self) -> FiniteGroup:
        return self.kernel_embedding.source

    @property
    def quotient_group(self) -> FiniteGroup:
        return self.quotient_map.target

    def __repr__(self):
        return (f"Extension({self.kernel_group.name} -> "
                f"{self.total.name} -> {self.quotient_group.name})")


def extension_from_cocycle(group: FiniteGroup, module: GModule, cocycle: Cochain) -> Extension:
    """Glue the abelian module and the group along a 2-cocycle.

    Elements of the total group are pairs (a, g) with id a*|G| + g and product
    (a, g)(a', g') = (a + a' + c(g, g'), gg').  The cocycle is normalized
    internally first, so the canonical section g -> (0, g) sends identity to
    identity.
    """
    if module.group != group:
        raise ExtensionError("module must live over the quotient group")
    if not module.is_trivial_action:
        raise ExtensionError("extension gluing requires a trivial action")
    if cocycle.module != module or cocycle.degree != 2:
        raise ExtensionError("cocycle must be a degree-2 cochain over the module")
    from .cohomology import coboundary

    dc = coboundary(cocycle)
    if not dc.is_zero():
        raise ExtensionError("cochain is not a cocycle")
    cocycle, _ = normalize_cocycle(cocycle)

    fac = np.array(module.factors, dtype=np.int64)
    k = len(module.factors)
    n_g = group.order
    n_a = int(np.prod(fac)) if k else 1
    kernel = make_abelian(module.factors, name=f"Z({module.name})")

    # coords[a] = coordinate tuple of kernel id a (left-major)
    coords = np.zeros((n_a, k), dtype=np.int64)
    rem = np.arange(n_a, dtype=np.int64)
    for j in range(k):
        w = int(np.prod(fac[j + 1:])) if j + 1 < k else 1
        coords[:, j] = rem // w
        rem = rem % w
    # kernel id of a coordinate row
    def ids_of(rows):
        out = np.zeros(rows.shape[0], dtype=np.int64)
        for j in range(k):
            out = out * fac[j] + rows[:, j] % fac[j]
        return out

    cvals = cocycle.values.reshape(n_g, n_g, k)
    a = np.arange(n_a, dtype=np.int64)
    g = np.arange(n_g, dtype=np.int64)
    # pair ids, a-major
    pair = (a[:, None] * n_g + g[None, :]).reshape(-1)
    # product of (a,g) and (a',g') for all four indices
    asum = (coords[:, None, :] + coords[None, :, :]).reshape(n_a * n_a, k)
    table = np.zeros((n_a * n_g, n_a * n_g), dtype=np.int64)
    for gi in range(n_g):
        gprod = group.table[gi]
        shift = cvals[gi]  # (n_g, k)
        total_a = ids_of((asum[:, None, :] + shift[None, :, :]).reshape(-1, k))
        total_a = total_a.reshape(n_a, n_a, n_g)
        block = total_a * n_g + gprod[None, None, :]
        rows = (a * n_g + gi)
        table[rows[:, None], pair[None, :]] = block.transpose(0, 1, 2).reshape(n_a, n_a * n_g)
    total = FiniteGroup(
        table,
        generators=[int(ka) * n_g for ka in kernel.generators] + list(group.generators),
        name=f"ext({group.name})",
    )
    embedding = make_hom(kernel, total, [int(ka) * n_g for ka in kernel.generators])
    quotient = GroupHom(total, group, np.tile(g, n_a))
    section = g.copy()
    return Extension(total, embedding, quotient, section)


def cocycle_of_extension(ext: Extension) -> Cochain:
    """Extract the section-discrepancy 2-cocycle of an extension.

    The kernel group must have left-major coordinate ids for its invariant
    factors (as produced by make_abelian); the returned cochain lives over the
    trivial module with those factors.
    """
    kernel = ext.kernel_group
    group = ext.quotient_group
    total = ext.total
    factors = _abelian_invariant_factors(kernel)
    fac = np.array(factors, dtype=np.int64)
    k = len(factors)
    coords = np.zeros((kernel.order, k), dtype=np.int64)
    rem = np.arange(kernel.order, dtype=np.int64)
    for j in range(k):
        w = int(np.prod(fac[j + 1:])) if j + 1 < k else 1
        coords[:, j] = rem // w
        rem = rem % w
    # the id -> coords map must be an isomorphism onto the direct sum
    added = (coords[:, None, :] + coords[None, :, :]) % fac[None, None, :]
    via_table = coords[kernel.table]
    if not np.array_equal(added, via_table):
        raise ExtensionError(
            "kernel group ids are not in left-major coordinate form for its invariant factors"
        )

    emb_inv = np.full(total.order, -1, dtype=np.int64)
    emb_inv[ext.kernel_embedding.images] = np.arange(kernel.order)
    s = ext.section
    # discrepancy s(g) s(h) s(gh)^-1
    sgsh = total.table[s[:, None], s[None, :]]
    sgh_inv = total._inv[s[group.table]]
    disc = total.table[sgsh, sgh_inv]
    a_ids = emb_inv[disc]
    if (a_ids < 0).any():
        raise ExtensionError("section discrepancy lands outside the kernel image")
    module = trivial_module(group, factors)
    return Cochain(module, 2, coords[a_ids].reshape(group.order * group.order, k))


def is_split(x: CohomologyClass) -> bool:
    """An extension class splits exactly when it is the zero class."""
    return x.is_zero()


def d8_group() -> FiniteGroup:
    """Dihedral group of order 8 as Z/4 x| Z/2, ids (k, s) = 2k + s."""
    rot = make_cyclic(4, name="Z4")
    flip = make_cyclic(2, name="Z2")
    return make_semidirect(rot, flip, [[0, 1, 2, 3], [0, 3, 2, 1]], name="D8")


def d8_extension() -> Extension:
    """The extension 1 -> Z/2 -> D8 -> (Z/2)^2 -> 1 by the center.

    The quotient is make_abelian((2, 2)) with id 2 the image of the order-4
    rotation and id 1 the image of the reflection.
    """
    d8 = d8_group()
    v4 = make_abelian((2, 2), name="V4")
    center = make_cyclic(2, name="Z2")
    embedding = make_hom(center, d8, [4])
    quotient = GroupHom(d8, v4, np.array([0, 1, 2, 3, 0, 1, 2, 3], dtype=np.int64))
    section = np.arange(4, dtype=np.int64)
    return Extension(d8, embedding, quotient, section)


def d8_class() -> CohomologyClass:
    """The class of the D8 central extension in H^2((Z/2)^2, Z/2)."""
    ext = d8_extension()
    cocycle = cocycle_of_extension(ext)
    h2 = cohomology_group(ext.quotient_group, cocycle.module, 2)
    return h2.reduce(cocycle)
