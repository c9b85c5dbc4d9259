"""Sign sequences, hermitian signatures, and the product-of-local-conditions
checkers, with numpy eigenvalues and direct set enumeration as oracles."""

import itertools
import json
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from galcoh import (
    ConditionInput, ConditionPlace, GaussianRational, HermitianForm,
    RealGaloisError, ResourceLimitError, SignSequence, Signature,
    check_condition_double_star, check_condition_star, delta_image,
    h1_real_torsion, hermitian_signature, is_subgroup, j_form,
    sign_sequence_coordinates, sign_sequence_from_coordinates,
    su_class_of_cocycle,
)

signs = st.lists(st.sampled_from([1, -1]), min_size=2, max_size=6)


def balanced(entries):
    head = entries[:-1]
    prod = 1
    for e in head:
        prod *= e
    return tuple(head) + (prod,)


@given(signs)
def test_sign_sequence_group_law(entries):
    s = SignSequence(balanced(entries))
    e = SignSequence.identity(len(s.entries))
    assert s * e == s
    assert s * s == e
    assert (s * s).label() == "+" * len(s.entries)


def test_sign_sequence_rejects_odd_minus_count():
    with pytest.raises(RealGaloisError):
        SignSequence((1, -1, 1))


@given(signs, signs)
def test_sign_sequence_product_is_pointwise(a, b):
    assume(len(a) == len(b))
    sa, sb = SignSequence(balanced(a)), SignSequence(balanced(b))
    prod = sa * sb
    assert prod.entries == tuple(x * y for x, y in zip(sa.entries, sb.entries))


@pytest.mark.parametrize("n,m,size", [
    (2, 2, 2), (3, 2, 4), (4, 2, 8), (3, 4, 4), (3, 3, 1), (4, 5, 1),
])
def test_h1_real_torsion_sizes(n, m, size):
    classes = h1_real_torsion(n, m)
    assert len(classes) == size
    assert classes[0] == SignSequence.identity(n)
    assert len(set(classes)) == size


@given(signs, st.sampled_from([2, 4, 6]))
def test_coordinate_roundtrip_is_a_homomorphism(entries, m):
    s = SignSequence(balanced(entries))
    coords = sign_sequence_coordinates(s, m)
    assert sign_sequence_from_coordinates(coords, m) == s
    t = SignSequence(balanced(entries[::-1]))
    ct = sign_sequence_coordinates(t, m)
    summed = tuple((a + b) % m for a, b in zip(coords, ct))
    assert sign_sequence_from_coordinates(summed, m) == s * t


def test_su_class_known_values():
    assert su_class_of_cocycle(SignSequence.identity(3), 2, 1) == Signature(1, 2)
    assert su_class_of_cocycle(SignSequence((-1, -1, 1)), 2, 1) == Signature(3, 0)
    assert su_class_of_cocycle(SignSequence((1, -1, -1)), 2, 1) == Signature(1, 2)
    assert su_class_of_cocycle(SignSequence((-1, 1, -1)), 2, 1) == Signature(1, 2)


@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_su_class_minus_count_parity(p, q, data):
    classes = h1_real_torsion(p + q, 2)
    s = data.draw(st.sampled_from(classes))
    sig = su_class_of_cocycle(s, p, q)
    assert sig.n_plus + sig.n_minus == p + q
    assert sig.n_minus % 2 == p % 2


def test_delta_image_su21_is_the_published_set():
    di = delta_image(2, 1, 2)
    assert [s.label() for s in di] == ["+++", "+--", "-+-"]
    assert not is_subgroup(di, h1_real_torsion(3, 2))


def test_delta_image_balanced_signature_is_a_subgroup():
    di = delta_image(1, 1, 2)
    assert is_subgroup(di, h1_real_torsion(2, 2))
    assert len(di) == 2


def test_is_subgroup_requires_subset():
    with pytest.raises(RealGaloisError):
        is_subgroup([SignSequence.identity(4)], h1_real_torsion(3, 2))
    assert not is_subgroup(
        [SignSequence((1, -1, -1)), SignSequence((-1, 1, -1))],
        h1_real_torsion(3, 2),
    )


# -- Gaussian rationals and hermitian forms ----------------------------------

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@given(rationals, rationals, rationals, rationals)
def test_gaussian_rational_field_operations(a, b, c, d):
    x = GaussianRational(a, b)
    y = GaussianRational(c, d)
    assert (x + y).re == a + c and (x + y).im == b + d
    prod = x * y
    assert prod.re == a * c - b * d
    assert prod.im == a * d + b * c
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    if not y.is_zero():
        assert (x / y) * y == x


def test_gaussian_rational_rejects_floats_and_accepts_tuples():
    with pytest.raises(RealGaloisError):
        GaussianRational.coerce(1.5j)
    z = GaussianRational.coerce((Fraction(1, 2), 3))
    assert z.re == Fraction(1, 2) and z.im == 3


def test_hermitian_form_symmetry_validated():
    i = GaussianRational(0, 1)
    HermitianForm([[1, i], [-i, 2]])
    with pytest.raises(RealGaloisError, match=r"\(0, 1\)"):
        HermitianForm([[1, i], [i, 2]])


def test_j_form_signature():
    assert hermitian_signature(j_form(2, 1)) == Signature(1, 2)
    assert hermitian_signature(j_form(0, 3)) == Signature(3, 0)


def test_hyperbolic_plane_signature():
    i = GaussianRational(0, 1)
    form = HermitianForm([[0, i], [-i, 0]])
    assert hermitian_signature(form) == Signature(1, 1)


def test_degenerate_form_rejected():
    with pytest.raises(RealGaloisError, match="degenerate"):
        hermitian_signature(HermitianForm([[1, 0], [0, 0]]))


def _random_hermitian(rng, n):
    rows = [[GaussianRational(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = GaussianRational(Fraction(rng.randint(-4, 4)))
        for j in range(i + 1, n):
            z = GaussianRational(Fraction(rng.randint(-3, 3), rng.randint(1, 2)),
                                 Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
            rows[i][j] = z
            rows[j][i] = z.conjugate()
    return HermitianForm(rows)


def test_signature_matches_numpy_eigenvalues():
    rng = random.Random(7)
    done = 0
    while done < 40:
        n = rng.randint(1, 4)
        form = _random_hermitian(rng, n)
        mat = np.array(
            [[complex(r.re) + 1j * complex(r.im) for r in row] for row in form.rows]
        )
        eig = np.linalg.eigvalsh(mat)
        if np.min(np.abs(eig)) < 1e-8:
            continue
        expected = Signature(int((eig > 0).sum()), int((eig < 0).sum()))
        assert hermitian_signature(form) == expected
        done += 1


def test_signature_invariant_under_congruence():
    rng = random.Random(23)
    for _ in range(50):
        n = rng.randint(1, 4)
        diag = [Fraction(rng.choice([-7, -2, -1, 1, 3, 5]), rng.randint(1, 3))
                for _ in range(n)]
        form = HermitianForm.diagonal(diag)
        base = hermitian_signature(form)
        s = [[GaussianRational(1 if i == j else 0) for j in range(n)]
             for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                s[i][j] = GaussianRational(Fraction(rng.randint(-2, 2)),
                                           Fraction(rng.randint(-2, 2), 2))
        rows = [[sum((s[i][a] * form.rows[a][b] * s[j][b].conjugate()
                      for a in range(n) for b in range(n)),
                     GaussianRational(0)) for j in range(n)] for i in range(n)]
        assert hermitian_signature(HermitianForm(rows)) == base


# -- condition checkers -------------------------------------------------------


def test_condition_place_validation():
    ConditionPlace((2, 2), [(0, 0), (1, 1)])
    with pytest.raises(RealGaloisError):
        ConditionPlace((2, 2), [(1, 1)])  # missing the identity
    with pytest.raises(RealGaloisError):
        ConditionPlace((2,), [(0,), (2,)])  # out of range
    with pytest.raises(RealGaloisError):
        ConditionPlace((0,), [(0,)])


def test_condition_input_requires_r_closed():
    place = ConditionPlace((2,), [(0,)])
    ConditionInput([place], [(0,)])
    with pytest.raises(RealGaloisError):
        ConditionInput([place], [(1,)])  # not containing 0
    with pytest.raises(RealGaloisError):
        ConditionInput([ConditionPlace((4,), [(0,)])], [(0,), (1,)])  # not closed


def test_condition_input_json_roundtrip():
    ci = ConditionInput(
        [ConditionPlace((2, 2), [(0, 0), (1, 1), (0, 1)])], [(0, 0)]
    )
    back = ConditionInput.from_json(ci.to_json())
    assert back.to_dict() == ci.to_dict()
    with pytest.raises(RealGaloisError):
        ConditionInput.from_json("{not json")
    with pytest.raises(RealGaloisError):
        ConditionInput.from_dict({"places": [{}], "r_subgroup": []})


def _oracle_star(ci):
    full = set(itertools.product(*[range(f) for f in ci.flat_factors]))
    deltas = [p.delta for p in ci.places]
    reach = set()
    for combo in itertools.product(*deltas):
        d = tuple(x for part in combo for x in part)
        for r in ci.r_subgroup:
            reach.add(tuple((a + b) % f for a, b, f in zip(r, d, ci.flat_factors)))
    missing = sorted(full - reach)
    return (True, None) if not missing else (False, missing[0])


def _oracle_double_star(ci):
    flat = ci.flat_factors
    deltas = [p.delta for p in ci.places]
    gens = [tuple(x for part in combo for x in part)
            for combo in itertools.product(*deltas)]
    group = {tuple([0] * len(flat))}
    frontier = list(group)
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = tuple((a + b) % f for a, b, f in zip(cur, g, flat))
            if nxt not in group:
                group.add(nxt)
                frontier.append(nxt)
    # every element of the generated product subgroup must be r + d with d
    # drawn from the raw image product, not from its closure
    allowed = set()
    for d in gens:
        for r in ci.r_subgroup:
            allowed.add(tuple((a + b) % f for a, b, f in zip(r, d, flat)))
    missing = sorted(g for g in group if g not in allowed)
    return (True, None) if not missing else (False, missing[0])


@st.composite
def condition_inputs(draw):
    n_places = draw(st.integers(1, 2))
    places = []
    for _ in range(n_places):
        factors = tuple(draw(st.lists(st.sampled_from([2, 3, 4]),
                                      min_size=1, max_size=2)))
        cells = list(itertools.product(*[range(f) for f in factors]))
        extra = draw(st.lists(st.sampled_from(cells), max_size=4))
        delta = list(dict.fromkeys([tuple([0] * len(factors))] + extra))
        places.append(ConditionPlace(factors, delta))
    flat = tuple(f for p in places for f in p.factors)
    # R: the subgroup generated by one random element
    seed = draw(st.sampled_from(list(itertools.product(*[range(f) for f in flat]))))
    r = {tuple([0] * len(flat))}
    cur = seed
    while cur not in r:
        r.add(cur)
        cur = tuple((a + b) % f for a, b, f in zip(cur, seed, flat))
    return ConditionInput(places, sorted(r))


@given(condition_inputs())
@settings(max_examples=50)
def test_condition_checkers_match_set_enumeration(ci):
    star = check_condition_star(ci)
    dbl = check_condition_double_star(ci)
    assert star == _oracle_star(ci)
    assert dbl == _oracle_double_star(ci)
    if star[0]:
        assert dbl[0], "the full-product condition must imply the subgroup one"


def test_double_star_holds_when_each_image_is_a_subgroup():
    place = ConditionPlace((4, 2), [(0, 0), (2, 0), (0, 1), (2, 1)])
    ci = ConditionInput([place], [(0, 0)])
    assert check_condition_double_star(ci) == (True, None)


@given(st.integers(1, 3), st.integers(1, 3))
def test_delta_image_contains_identity_and_trivial_class_is_trivial(p, q):
    di = delta_image(p, q, 2)
    assert SignSequence.identity(p + q) in di
    assert su_class_of_cocycle(SignSequence.identity(p + q), p, q) == Signature(q, p)


def test_conditions_vacuous_without_places():
    empty = ConditionInput([], [()])
    assert check_condition_star(empty) == (True, None)
    assert check_condition_double_star(empty) == (True, None)


def test_condition_star_resource_bound():
    places = [ConditionPlace((2,), [(0,)]) for _ in range(21)]
    ci = ConditionInput(places, [tuple([0] * 21)])
    with pytest.raises(ResourceLimitError):
        check_condition_star(ci)
