"""Exact linear algebra over Z/m, cross-checked against brute-force
enumeration of row spans and kernels for small sizes."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from galcoh.zmodlin import (
    howell_form, inverse_mod, kernel_of, linear_system, matmul_mod,
    quotient_presentation, smith_normal_form, xgcd,
)

MODULI = (2, 3, 4, 5, 6, 8, 12)


def small_matrix(m):
    return st.lists(
        st.lists(st.integers(0, m - 1), min_size=1, max_size=3),
        min_size=1, max_size=4,
    ).filter(lambda rows: len({len(r) for r in rows}) == 1)


matrix_and_modulus = st.sampled_from(MODULI).flatmap(
    lambda m: st.tuples(st.just(m), small_matrix(m))
)


def row_span(rows, m, dim):
    """Every Z/m combination of the rows, as a frozenset of tuples."""
    rows = [tuple(int(x) % m for x in r) for r in rows]
    out = {(0,) * dim}
    frontier = [(0,) * dim]
    while frontier:
        cur = frontier.pop()
        for r in rows:
            nxt = tuple((a + b) % m for a, b in zip(cur, r))
            if nxt not in out:
                out.add(nxt)
                frontier.append(nxt)
    return frozenset(out)


@given(matrix_and_modulus)
def test_xgcd_bezout(mm):
    m, rows = mm
    a, b = len(rows), m
    g, x, y = xgcd(a, b)
    assert g == a * x + b * y
    assert a % g == 0 and b % g == 0


@given(st.integers(1, 200), st.integers(2, 200))
def test_inverse_mod(a, m):
    g = np.gcd(a, m)
    if g != 1:
        with pytest.raises(ValueError):
            inverse_mod(a, m)
    else:
        assert (a * inverse_mod(a, m)) % m == 1


@given(matrix_and_modulus)
def test_howell_form_preserves_span(mm):
    m, rows = mm
    dim = len(rows[0])
    h, pivots = howell_form(np.array(rows), m)
    assert row_span(rows, m, dim) == row_span(h, m, dim)
    cols = [int(c) for c in pivots]
    assert cols == sorted(cols)


@given(matrix_and_modulus, st.data())
def test_linear_system_solves_exactly_the_image(mm, data):
    m, rows = mm
    a = np.array(rows)
    sys_ = linear_system(a, m)
    image = {tuple(int(v) for v in (a @ np.array(x)) % m)
             for x in itertools.product(range(m), repeat=a.shape[1])}
    b = data.draw(st.lists(st.integers(0, m - 1),
                           min_size=a.shape[0], max_size=a.shape[0]))
    x = sys_.solve(b)
    if tuple(b) in image:
        assert x is not None
        assert tuple(int(v) for v in (a @ x) % m) == tuple(b)
    else:
        assert x is None


@given(matrix_and_modulus)
def test_kernel_of_matches_enumeration(mm):
    m, rows = mm
    a = np.array(rows)
    dim = a.shape[1]
    kern = kernel_of([a], dim, m)
    expected = {x for x in itertools.product(range(m), repeat=dim)
                if not ((a @ np.array(x)) % m).any()}
    assert row_span(kern, m, dim) == expected


@given(matrix_and_modulus)
def test_smith_normal_form_properties(mm):
    m, rows = mm
    a = np.array(rows)
    diag, v, vinv = smith_normal_form(a, m)
    n = a.shape[1]
    assert ((v @ vinv) % m == np.eye(n, dtype=int)).all()
    assert ((vinv @ v) % m == np.eye(n, dtype=int)).all()
    for d1, d2 in zip(diag, diag[1:]):
        assert d2 % d1 == 0 or d2 == 0
    for d in diag:
        assert d == 0 or m % d == 0
    # A @ v equals U^-1 @ D for invertible U, so the row spans agree
    av = (a @ v) % m
    dmat = np.zeros_like(av)
    for i, d in enumerate(diag[: min(av.shape)]):
        dmat[i, i] = d % m
    assert row_span(av, m, n) == row_span(dmat, m, n)


def test_quotient_presentation_known_case():
    """(Z/4)^2 / <(2,0)> = Z/2 x Z/4."""
    q = quotient_presentation(np.eye(2, dtype=int), [[2, 0]], 4)
    assert q.factors == [2, 4]
    assert q.order == 8
    for i, rep in enumerate(q.reps):
        unit = tuple(1 if j == i else 0 for j in range(len(q.factors)))
        assert q.coordinates(rep) == unit


def test_quotient_presentation_rejects_outside_subgroup():
    with pytest.raises(ValueError):
        quotient_presentation([[1, 0]], [[0, 1]], 4)


def test_quotient_presentation_outside_span_is_none():
    q = quotient_presentation([[2, 0]], [[0, 0]], 4)
    assert q.coordinates([1, 0]) is None
    assert q.coordinates([2, 0]) is not None


@given(st.sampled_from(MODULI), st.data())
def test_quotient_coordinates_additive(m, data):
    gens = data.draw(small_matrix(m))
    a = np.array(gens)
    q = quotient_presentation(a, np.zeros((0, a.shape[1]), dtype=int), m)
    lam1 = data.draw(st.lists(st.integers(0, m - 1),
                              min_size=a.shape[0], max_size=a.shape[0]))
    lam2 = data.draw(st.lists(st.integers(0, m - 1),
                              min_size=a.shape[0], max_size=a.shape[0]))
    v1 = (np.array(lam1) @ a) % m
    v2 = (np.array(lam2) @ a) % m
    c1, c2 = q.coordinates(v1), q.coordinates(v2)
    c12 = q.coordinates((v1 + v2) % m)
    assert c12 == tuple((x + y) % f for x, y, f in zip(c1, c2, q.factors))


@given(st.integers(2, 2**26), st.data())
def test_matmul_mod_matches_object_arithmetic(m, data):
    rows = data.draw(st.integers(1, 3))
    mid = data.draw(st.integers(1, 3))
    cols = data.draw(st.integers(1, 3))
    a = np.array(data.draw(st.lists(
        st.lists(st.integers(0, m - 1), min_size=mid, max_size=mid),
        min_size=rows, max_size=rows)))
    b = np.array(data.draw(st.lists(
        st.lists(st.integers(0, m - 1), min_size=cols, max_size=cols),
        min_size=mid, max_size=mid)))
    got = matmul_mod(a, b, m)
    exact = (a.astype(object) @ b.astype(object)) % m
    assert (got == exact.astype(np.int64)).all()
