"""Module structures: action validation, standard constructions, pullbacks."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from galcoh import (
    ModuleError, ModuleHom, gamma_real, make_abelian, make_cyclic, make_hom,
    make_module, mu_m_real, pullback_module, trivial_module,
)


def test_gamma_real_is_the_two_element_group():
    g = gamma_real()
    assert g.order == 2
    assert g.mul(1, 1) == 0


@pytest.mark.parametrize("m", [2, 3, 4, 6])
def test_mu_m_real_conjugation_negates(m):
    mod = mu_m_real(m)
    v = np.arange(m).reshape(m, 1) % np.array([m])
    assert (mod.act(0, v) == v % m).all()
    assert (mod.act(1, v) == (-v) % m).all()
    assert mod.is_trivial_action == (m <= 2)


def test_trivial_action_property_detects_nontrivial_actions():
    assert trivial_module(gamma_real(), (4,)).is_trivial_action
    assert not mu_m_real(4).is_trivial_action
    assert isinstance(mu_m_real(4).is_trivial_action, bool)


def test_make_module_rejects_non_invertible_matrix():
    with pytest.raises(ModuleError):
        make_module(make_cyclic(2), [4], [[[2]]])


def test_make_module_rejects_non_action():
    # generator of order 2 acting with a matrix of multiplicative order 4
    with pytest.raises(ModuleError):
        make_module(make_cyclic(2), [5], [[[2]]])


def test_make_module_accepts_conjugation_by_each_generator():
    g = make_abelian((2, 4, 4))
    mod = make_module(g, [4], [[[3]], [[1]], [[1]]])
    assert not mod.is_trivial_action
    assert mod.exponent == 4


@given(st.sampled_from([2, 3, 4, 6]))
def test_action_respects_group_law(m):
    mod = mu_m_real(m)
    g = mod.group
    v = np.arange(m).reshape(m, 1)
    for a in range(g.order):
        for b in range(g.order):
            left = mod.act(g.mul(a, b), v)
            right = mod.act(a, mod.act(b, v))
            assert (left == right).all()


def test_pullback_module_composes_the_action():
    gamma = gamma_real()
    g4 = make_cyclic(4)
    f = make_hom(g4, gamma, [1])
    pulled = pullback_module(f, mu_m_real(4))
    v = np.array([[1]])
    assert pulled.group == g4
    assert (pulled.act(1, v) == np.array([[3]])).all()
    assert (pulled.act(2, v) == v).all()


def test_structural_module_equality_ignores_name():
    a = trivial_module(make_cyclic(2), (3,), name="a")
    b = trivial_module(make_cyclic(2), (3,), name="b")
    assert a == b
    assert a.key() == b.key()


def test_module_hom_shape_and_application():
    g = gamma_real()
    src = trivial_module(g, (2,))
    dst = trivial_module(g, (4,))
    phi = ModuleHom(src, dst, [[2]])
    assert (phi.apply(np.array([[1]])) == np.array([[2]])).all()
    with pytest.raises(ModuleError):
        ModuleHom(src, dst, [[1, 2]])
