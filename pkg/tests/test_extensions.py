"""Central extensions versus degree-2 classes.

Splitness is cross-checked against a section search: an extension splits
exactly when some homomorphism G -> E composes with the quotient map to the
identity.
"""

from collections import Counter

import numpy as np
import pytest

from galcoh import (
    ExtensionError, all_homs, cohomology_group, conjugate_relabeling,
    cocycle_of_extension, d8_class, d8_extension, d8_group,
    extension_from_cocycle, fingerprint_small_group, gamma_real,
    identity_hom, is_split, make_abelian, make_cyclic, make_hom,
    pullback_class, trivial_module,
)
from galcoh.groups import GroupHom


def has_section(ext) -> bool:
    g = ext.quotient_group
    for s in all_homs(g, ext.total):
        if (ext.quotient_map.images[s.images] == np.arange(g.order)).all():
            return True
    return False


def _h2_v4_mod2():
    v4 = make_abelian((2, 2))
    return cohomology_group(v4, trivial_module(v4, (2,)), 2)


def test_v4_extension_dictionary():
    """The eight degree-2 classes of the Klein four group with Z/2
    coefficients give one elementary abelian, three Z4xZ2, three dihedral,
    and one quaternion extension."""
    h2 = _h2_v4_mod2()
    v4 = h2.group
    counts = Counter()
    for bits in range(8):
        coords = ((bits >> 2) & 1, (bits >> 1) & 1, bits & 1)
        cls = h2.class_from_coordinates(coords)
        ext = extension_from_cocycle(v4, h2.module, cls.representative)
        counts[fingerprint_small_group(ext.total)] += 1
    assert counts == {"E8": 1, "Z4xZ2": 3, "D8": 3, "Q8": 1}


def test_is_split_agrees_with_section_search():
    h2 = _h2_v4_mod2()
    v4 = h2.group
    for bits in range(8):
        coords = ((bits >> 2) & 1, (bits >> 1) & 1, bits & 1)
        cls = h2.class_from_coordinates(coords)
        ext = extension_from_cocycle(v4, h2.module, cls.representative)
        assert is_split(cls) == has_section(ext)


def test_two_element_quotient_extensions():
    gamma = gamma_real()
    h2 = cohomology_group(gamma, trivial_module(gamma, (2,)), 2)
    split = extension_from_cocycle(gamma, h2.module,
                                   h2.class_from_coordinates((0,)).representative)
    nonsplit = extension_from_cocycle(gamma, h2.module,
                                      h2.class_from_coordinates((1,)).representative)
    assert fingerprint_small_group(split.total) == "V4"
    assert fingerprint_small_group(nonsplit.total) == "Z4"
    assert has_section(split) and not has_section(nonsplit)


def test_extension_cocycle_roundtrip():
    h2 = _h2_v4_mod2()
    v4 = h2.group
    for bits in range(8):
        coords = ((bits >> 2) & 1, (bits >> 1) & 1, bits & 1)
        cls = h2.class_from_coordinates(coords)
        ext = extension_from_cocycle(v4, h2.module, cls.representative)
        back = h2.reduce(cocycle_of_extension(ext))
        assert back.coordinates == coords


def test_d8_extension_and_class():
    ext = d8_extension()
    assert fingerprint_small_group(ext.total) == "D8"
    assert ext.kernel_group.order == 2
    assert ext.quotient_group == make_abelian((2, 2))
    cls = d8_class()
    assert not cls.is_zero()
    assert cls == d8_class()


def test_d8_class_pullback_dictionary():
    cls = d8_class()
    v4 = cls.parent.group
    gamma = gamma_real()
    outcomes = {}
    for f in all_homs(gamma, v4):
        y = pullback_class(f, cls)
        ext = extension_from_cocycle(gamma, y.parent.module, y.representative)
        outcomes[int(f.images[1])] = (fingerprint_small_group(ext.total),
                                      y.is_zero())
    # ids in the Klein four group: 2 = (1,0), the distinguished direction
    assert outcomes[2] == ("Z4", False)
    for other in (0, 1, 3):
        assert outcomes[other] == ("V4", True)


def test_extension_from_cocycle_rejects_non_cocycles():
    v4 = make_abelian((2, 2))
    mod = trivial_module(v4, (2,))
    from galcoh import Cochain
    not_cocycle = Cochain.from_dict(mod, 2, {(1, 1): (1,), (1, 2): (1,)})
    with pytest.raises(ExtensionError, match="not a cocycle"):
        extension_from_cocycle(v4, mod, not_cocycle)


def test_extension_from_cocycle_rejects_nontrivial_action():
    from galcoh import mu_m_real, Cochain
    mod = mu_m_real(4)
    zero = Cochain.zero(mod, 2)
    with pytest.raises(ExtensionError):
        extension_from_cocycle(mod.group, mod, zero)


def test_cocycle_of_extension_needs_left_major_kernel_ids():
    """A kernel group whose element ids are shuffled out of coordinate
    order is rejected rather than silently mis-read."""
    from galcoh.extensions import Extension

    gamma = gamma_real()
    mod4 = trivial_module(gamma, (4,))
    h2 = cohomology_group(gamma, mod4, 2)
    ext = extension_from_cocycle(
        gamma, mod4, h2.class_from_coordinates((1,)).representative
    )
    perm = np.array([0, 2, 1, 3])
    bad_kernel = conjugate_relabeling(ext.kernel_group, perm)
    emb = GroupHom(bad_kernel, ext.total,
                   ext.kernel_embedding.images[perm], check=False)
    bad = Extension(ext.total, emb, ext.quotient_map, ext.section)
    with pytest.raises(ExtensionError, match="left-major"):
        cocycle_of_extension(bad)


def test_non_central_embedding_rejected():
    d8 = d8_group()
    z4 = make_cyclic(4)
    rot = make_hom(z4, d8, [2])  # the rotation subgroup, not central
    v2 = make_cyclic(2)
    quot = GroupHom(d8, v2, np.arange(8) % 2)
    from galcoh.extensions import Extension
    with pytest.raises(ExtensionError, match="central"):
        Extension(d8, rot, quot, np.array([0, 1]))


def _fiber_product_fingerprint(ext, f):
    """Oracle: the pullback extension as an explicit fiber product
    {(e, g') : quotient(e) = f(g')} with componentwise multiplication."""
    e_total = ext.total
    g2 = f.source
    pairs = [(e, x) for e in range(e_total.order) for x in range(g2.order)
             if int(ext.quotient_map.images[e]) == int(f.images[x])]
    index = {p: i for i, p in enumerate(pairs)}
    table = np.zeros((len(pairs), len(pairs)), dtype=np.int64)
    for i, (e1, x1) in enumerate(pairs):
        for j, (e2, x2) in enumerate(pairs):
            table[i, j] = index[(e_total.mul(e1, e2), g2.mul(x1, x2))]
    from galcoh.groups import FiniteGroup
    gens = tuple(range(len(pairs)))
    return fingerprint_small_group(FiniteGroup(table, gens, "fiber", None))


def test_pullback_matches_fiber_product():
    cls = d8_class()
    ext = d8_extension()
    gamma = gamma_real()
    v4 = cls.parent.group
    for f in all_homs(gamma, v4):
        y = pullback_class(f, cls)
        via_cocycle = extension_from_cocycle(gamma, y.parent.module,
                                             y.representative)
        assert (fingerprint_small_group(via_cocycle.total)
                == _fiber_product_fingerprint(ext, f))


def test_baer_sum_well_defined_on_classes():
    """The extension built from c1 + c2 only depends on the classes of the
    two summands."""
    from galcoh import Cochain, coboundary

    for factors in ((4,), (2, 2)):
        g = make_abelian(factors)
        h2 = cohomology_group(g, trivial_module(g, (2,)), 2)
        coords = [tuple(1 if i == j else 0 for j in range(len(h2.invariant_factors)))
                  for i in range(len(h2.invariant_factors))]
        c1 = h2.class_from_coordinates(coords[0]).representative
        c2 = h2.class_from_coordinates(coords[-1]).representative
        base = fingerprint_small_group(
            extension_from_cocycle(g, h2.module, c1 + c2).total)
        shift1 = coboundary(Cochain.from_dict(h2.module, 1, {(1,): (1,)}))
        shift2 = coboundary(Cochain.from_dict(h2.module, 1, {(2,): (1,), (3,): (1,)}))
        moved = fingerprint_small_group(
            extension_from_cocycle(g, h2.module, (c1 + shift1) + (c2 + shift2)).total)
        assert moved == base


def test_split_agreement_extends_to_order_eight_quotients():
    for g in (make_cyclic(8), d8_group(), make_abelian((2, 4))):
        mod = trivial_module(g, (2,))
        h2 = cohomology_group(g, mod, 2)
        seen = 0
        for i in range(len(h2.invariant_factors)):
            coords = tuple(1 if j == i else 0
                           for j in range(len(h2.invariant_factors)))
            for cls in (h2.class_from_coordinates(coords),
                        h2.class_from_coordinates((0,) * len(coords))):
                ext = extension_from_cocycle(g, mod, cls.representative)
                assert is_split(cls) == has_section(ext)
                seen += 1
        assert seen >= 2
