import time
from fractions import Fraction

from galcoh.gmodules import gamma_real, mu_m_real, trivial_module
from galcoh.cohomology import Cochain, coboundary
from galcoh.real_galois import SignSequence, delta_image
from galcoh.pairing import (
    alpha_class_T2, alpha_context, coefficient_doubling_report, evaluate,
    evaluation_table, is_left_linear, kunneth_pairing_analysis, pi1_real,
    value_fraction,
)

t0 = time.time()
gamma = gamma_real()

# T[2] context
ctx2 = alpha_context()
assert ctx2.group.order == 8
assert ctx2.torsion_order == 2 and ctx2.sequence_length == 3
ys = ctx2.h1()
assert len(ys) == 4

# section sanity: p2 . section = id
for y in ys:
    s = ctx2.section(y)
    assert [ctx2.p2.images[s.hom.images[g]] for g in range(2)] == [0, 1]

alpha = alpha_class_T2()
assert not alpha.is_zero()
tab = evaluation_table(ctx2, alpha)
print("alpha table:", tab.as_dict())
assert tab.value(SignSequence((-1, -1, 1))) == Fraction(1, 2)
assert tab.nonzero_labels() == ["--+"]
ok, bad = is_left_linear(ctx2, alpha)
assert not ok
b, y1, y2 = bad
assert (y1 * y2) == SignSequence((-1, -1, 1)), (y1.label(), y2.label())
print("violating pair:", y1.label(), y2.label())

# alpha pairs trivially with the delta image
for y in delta_image(2, 1, 2):
    assert value_fraction(evaluate(ctx2, alpha, y)) == 0

# class-invariance: adding a coboundary does not change evaluations
h2 = alpha.parent
import numpy as np
rng = np.random.default_rng(7)
c1 = Cochain(h2.module, 1, rng.integers(0, 2, size=(ctx2.group.order, 1)))
shifted = alpha.representative + coboundary(c1)
alpha2 = h2.reduce(shifted)
assert alpha2.coordinates == alpha.coordinates
for y in ys:
    assert value_fraction(evaluate(ctx2, alpha2, y)) == tab.value(y)

# full T[2] linearity scan: must fail somewhere (alpha is in the span)
ok_all, bad_all = is_left_linear(ctx2)
assert not ok_all
print("T2 scan: nonlinear basis class found:", bad_all[0].coordinates)

# T[4] context
ctx4 = pi1_real(trivial_module(gamma, (4, 4), name="T4"))
assert ctx4.group.order == 32
assert ctx4.h2().describe() == "(Z/2)^6", ctx4.h2().describe()
ok4, bad4 = is_left_linear(ctx4)
assert ok4, bad4
print("T4 all-basis linearity: ok")

rep = kunneth_pairing_analysis(trivial_module(gamma, (4, 4), name="T4"))
assert rep.all_linear
assert rep.h1h1_mu_vanishes is True
c02 = rep.component((0, 2))
assert c02.constant_tables and c02.linear and c02.class_count == 1
c11 = rep.component((1, 1))
assert c11.linear and c11.class_count == 2
c20 = rep.component((2, 0))
assert c20.linear and c20.class_count == 3
print("T4 kunneth report ok")

rep2 = kunneth_pairing_analysis(trivial_module(gamma, (2, 2), name="T2"))
assert not rep2.all_linear
assert not rep2.component((2, 0)).linear
assert rep2.component((0, 2)).linear and rep2.component((1, 1)).linear
print("T2 kunneth report: (2,0) nonlinear as expected; violation:",
      tuple(x.label() if hasattr(x, 'label') else x.coordinates for x in rep2.component((2, 0)).violation))

# mu4 coefficient assertions
doubling = coefficient_doubling_report(ctx4, 4)
assert doubling["target_invariant_factors"] == (2, 2, 2, 2, 2, 2), doubling
assert all(o in (1, 2) for o in doubling["image_orders"])
print("mu4 doubling report:", doubling)

# nontrivial action branch: mu_4 as one-dimensional module with inversion
ctx_tw = pi1_real(mu_m_real(4))
assert ctx_tw.lambda_o is None
assert ctx_tw.group.order == 8
from galcoh.groups import fingerprint_small_group
print("twisted pi1 fingerprint:", fingerprint_small_group(ctx_tw.group))
assert fingerprint_small_group(ctx_tw.group) == "D8"

print("pairing ok in %.1fs" % (time.time() - t0))
