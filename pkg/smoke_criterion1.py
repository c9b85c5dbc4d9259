import time

import numpy as np

from galcoh.cohomology import cohomology_group, coboundary, Cochain
from galcoh.gmodules import make_module
from galcoh.groups import make_abelian, make_cyclic, make_direct_product

t0 = time.perf_counter()
g1 = make_direct_product(
    make_cyclic(2), make_direct_product(make_cyclic(4), make_cyclic(4))
)
print("group order", g1.order, "generators", g1.generators)
# action: first generator inverts, the Z/4 x Z/4 part acts trivially
mod = make_module(g1, [4], [[[3]], [[1]], [[1]]], name="mu4-twisted")
t1 = time.perf_counter()
print(f"setup {t1 - t0:.2f}s")
h2 = cohomology_group(g1, mod, 2)
t2 = time.perf_counter()
print("H2 =", h2.describe(), h2.invariant_factors)
print(f"H2 time {t2 - t1:.2f}s")

# sanity: basis elements are cocycles and reduce to unit coordinates
for i, b in enumerate(h2.basis[:2]):
    assert coboundary(b).is_zero()
    cls = h2.reduce(b)
    expect = tuple(1 if j == i else 0 for j in range(6))
    assert cls.coordinates == expect, (i, cls.coordinates)
t3 = time.perf_counter()
print(f"reduce sanity {t3 - t2:.2f}s")
print(f"total {t3 - t0:.2f}s")
