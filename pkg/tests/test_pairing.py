"""Evaluation of degree-2 classes against torsion classes of the real point:
structure of the fundamental-group model, the distinguished nonlinear class
on T[2], and linearity over T[4]."""

from fractions import Fraction

import pytest

from galcoh import (
    Cochain, PairingError, SignSequence, alpha_class_T2, alpha_context,
    coboundary, coefficient_doubling_report, cohomology_group, delta_image,
    evaluate, evaluation_table, fingerprint_small_group, gamma_real,
    is_left_linear, kunneth_pairing_analysis, mu_m_real, pi1_real,
    pullback_class, trivial_module, value_fraction,
)


def test_trivial_coefficients_give_a_direct_product_model():
    ctx = pi1_real(trivial_module(gamma_real(), (2, 2)))
    assert ctx.group.order == 8
    assert ctx.group.is_abelian()
    assert ctx.lambda_o is not None
    assert ctx.torsion_order == 2
    assert ctx.sequence_length == 3


def test_conjugation_coefficients_give_a_dihedral_model():
    ctx = pi1_real(mu_m_real(4))
    assert fingerprint_small_group(ctx.group) == "D8"
    assert ctx.lambda_o is None


def test_sections_split_the_projection():
    ctx = alpha_context()
    for y in ctx.h1():
        sec = ctx.section(y)
        assert sec.y == y
        for x in range(2):
            assert ctx.p2(sec.hom(x)) == x


def test_alpha_evaluation_table_matches_published_values():
    ctx = alpha_context()
    alpha = alpha_class_T2()
    table = evaluation_table(ctx, alpha)
    assert table.as_dict() == {"+++": "0", "+--": "0", "-+-": "0", "--+": "1/2"}
    assert not table.is_constant()
    assert table.nonzero_labels() == ("--+",)


def test_alpha_vanishes_on_delta_image_but_is_nonzero():
    ctx = alpha_context()
    alpha = alpha_class_T2()
    table = evaluation_table(ctx, alpha)
    assert not alpha.is_zero()
    for y in delta_image(2, 1, 2):
        assert table.value(y) == 0


def test_alpha_is_not_linear_and_the_violation_multiplies_into_the_gap():
    ctx = alpha_context()
    alpha = alpha_class_T2()
    ok, violation = is_left_linear(ctx, alpha)
    assert not ok
    _, y1, y2 = violation
    assert (y1 * y2).label() == "--+"


def test_evaluation_depends_only_on_the_class():
    ctx = alpha_context()
    alpha = alpha_class_T2()
    h2 = ctx.h2()
    shifted = h2.reduce(
        alpha.representative
        + coboundary(Cochain.from_dict(h2.module, 1, {(3,): (1, 0), (5,): (0, 1)}))
    )
    assert shifted.coordinates == alpha.coordinates
    for y in ctx.h1():
        assert value_fraction(evaluate(ctx, shifted, y)) == value_fraction(
            evaluate(ctx, alpha, y)
        )


def test_pullbacks_along_the_projection_have_constant_tables():
    ctx = alpha_context()
    gamma = gamma_real()
    h2_gamma = cohomology_group(gamma, trivial_module(gamma, (2,)), 2)
    pulled = pullback_class(ctx.p2, h2_gamma.class_from_coordinates((1,)))
    table = evaluation_table(ctx, pulled)
    assert table.is_constant()
    assert table.value(SignSequence.identity(3)) == Fraction(1, 2)
    ok, _ = is_left_linear(ctx, pulled)
    assert ok, "a constant table is linear relative to its base value"


def test_t2_nonlinear_and_t4_linear_in_one_run():
    t2 = kunneth_pairing_analysis(trivial_module(gamma_real(), (2, 2)))
    t4 = kunneth_pairing_analysis(trivial_module(gamma_real(), (4, 4)))
    assert not t2.all_linear
    assert not t2.component((2, 0)).linear
    assert t4.all_linear
    assert t4.h1h1_mu_vanishes
    ok, _ = is_left_linear(pi1_real(trivial_module(gamma_real(), (4, 4))))
    assert ok


def test_t4_component_breakdown():
    report = kunneth_pairing_analysis(trivial_module(gamma_real(), (4, 4)))
    assert report.component((0, 2)).constant_tables
    assert report.component((0, 2)).class_count == 1
    assert report.component((1, 1)).class_count == 2
    assert report.component((2, 0)).class_count == 3


def test_coefficient_doubling_lands_in_low_order_classes():
    ctx = pi1_real(trivial_module(gamma_real(), (2,), name="T1"))
    report = coefficient_doubling_report(pi1_real(mu_m_real(2)), 4) if False else None
    ctx4 = pi1_real(trivial_module(gamma_real(), (4, 4)))
    report = coefficient_doubling_report(ctx4, 4)
    assert tuple(report["target_invariant_factors"]) == (2,) * 6
    assert all(o in (1, 2) for o in report["image_orders"])
    assert sorted(report["image_orders"]) == [1, 1, 2, 2, 2, 2]


def test_value_fraction_rejects_odd_coefficients():
    g3 = pi1_real(trivial_module(gamma_real(), (3, 3)))
    h2 = g3.h2(trivial_module(g3.group, (3,)))
    with pytest.raises(PairingError):
        value_fraction(h2.class_from_coordinates((0,) * len(h2.invariant_factors)))


def test_evaluate_checks_the_context():
    ctx2 = alpha_context()
    ctx4 = pi1_real(trivial_module(gamma_real(), (4, 4)))
    beta = ctx4.h2().class_from_coordinates((0,) * 6)
    with pytest.raises(PairingError):
        evaluate(ctx2, beta, SignSequence.identity(3))
