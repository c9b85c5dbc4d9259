"""Finite group construction, homomorphisms, and structure fingerprints."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from galcoh import (
    GroupError, GroupHom, all_homs, abelian_coords_to_id, abelian_id_to_coords,
    conjugate_relabeling, fingerprint_small_group, identity_hom, make_abelian,
    make_cyclic, make_direct_product, make_hom, make_semidirect, trivial_hom,
)
from galcoh.extensions import d8_group
from galcoh.groups import _abelian_invariant_factors


@given(st.integers(1, 30), st.integers(0, 29))
def test_cyclic_element_orders(n, k):
    g = make_cyclic(n)
    assert g.order == n
    assert g.element_order(k % n) == n // np.gcd(n, k % n)


@given(st.integers(1, 20), st.integers(1, 20))
def test_hom_count_between_cyclic_groups(n, m):
    """|Hom(Z/n, Z/m)| = gcd(n, m)."""
    assert len(all_homs(make_cyclic(n), make_cyclic(m))) == np.gcd(n, m)


def test_hom_law_is_checked():
    g = make_cyclic(4)
    with pytest.raises(GroupError):
        GroupHom(g, g, [0, 1, 1, 1])
    with pytest.raises(GroupError):
        GroupHom(g, g, [1, 0, 3, 2])


def test_make_hom_rejects_non_extendable_images():
    # a generator of order 4 cannot land on an element of order 3
    with pytest.raises(GroupError):
        make_hom(make_cyclic(4), make_cyclic(3), [1])
    assert make_hom(make_cyclic(4), make_cyclic(4), [2])(1) == 2


def test_direct_product_projections():
    g = make_direct_product(make_cyclic(2), make_cyclic(3))
    assert g.order == 6
    for x in range(6):
        a, b = g.proj_left(x), g.proj_right(x)
        assert x == a * 3 + b
    assert g.is_abelian()


def test_structural_equality_of_equal_tables():
    a = make_abelian((2, 2), name="first")
    b = make_direct_product(make_cyclic(2), make_cyclic(2), name="second")
    assert a == b
    assert hash(a) == hash(b)
    assert a.key() == b.key()


def test_semidirect_builds_dihedral():
    rot = make_cyclic(4)
    flip = make_cyclic(2)
    d8 = make_semidirect(rot, flip, [[0, 1, 2, 3], [0, 3, 2, 1]])
    assert not d8.is_abelian()
    assert sorted(d8.element_orders()) == [1, 2, 2, 2, 2, 2, 4, 4]
    assert fingerprint_small_group(d8) == "D8"
    assert d8 == d8_group()


def test_semidirect_rejects_non_automorphism_action():
    with pytest.raises(GroupError):
        make_semidirect(make_cyclic(4), make_cyclic(2),
                        [[0, 1, 2, 3], [0, 2, 1, 3]])


def test_fingerprints_of_small_groups():
    assert fingerprint_small_group(make_cyclic(4)) == "Z4"
    assert fingerprint_small_group(make_abelian((2, 2))) == "V4"
    assert fingerprint_small_group(make_abelian((2, 2, 2))) == "E8"
    assert fingerprint_small_group(make_abelian((2, 4))) == "Z4xZ2"


@pytest.mark.parametrize("factors,expected", [
    ((2, 4), (2, 4)),
    ((4, 2), (2, 4)),
    ((2, 3), (6,)),
    ((4, 4), (4, 4)),
    ((2, 2, 3), (2, 6)),
    ((1, 5), (5,)),
])
def test_abelian_invariant_factors_normal_form(factors, expected):
    assert _abelian_invariant_factors(make_abelian(factors)) == expected


@given(st.lists(st.sampled_from([2, 3, 4]), min_size=1, max_size=3), st.data())
def test_abelian_coordinate_roundtrip(factors, data):
    total = int(np.prod(factors))
    i = data.draw(st.integers(0, total - 1))
    coords = abelian_id_to_coords(i, factors)
    assert abelian_coords_to_id(coords, factors) == i
    g = make_abelian(factors)
    j = data.draw(st.integers(0, total - 1))
    cj = abelian_id_to_coords(j, factors)
    summed = tuple((a + b) % f for a, b, f in zip(coords, cj, factors))
    assert g.mul(i, j) == abelian_coords_to_id(summed, factors)


def test_conjugate_relabeling_is_isomorphic():
    g = d8_group()
    perm = [0, 3, 1, 2, 6, 5, 7, 4]
    h = conjugate_relabeling(g, perm)
    assert sorted(h.element_orders()) == sorted(g.element_orders())
    assert fingerprint_small_group(h) == "D8"


def test_identity_and_trivial_homs():
    g = make_cyclic(6)
    assert (identity_hom(g).images == np.arange(6)).all()
    assert not trivial_hom(g, make_cyclic(2)).images.any()


def test_compose_applies_right_hom_first():
    g2, g6 = make_cyclic(2), make_cyclic(6)
    embed = make_hom(g2, g6, [3])
    reduce_ = make_hom(g6, g2, [1])
    roundtrip = reduce_.compose(embed)
    assert (roundtrip.images == np.arange(2)).all()
