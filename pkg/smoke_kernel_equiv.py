import time

import numpy as np

from galcoh.cohomology import _constraint_batches, _diff_batches, cohomology_group
from galcoh.gmodules import make_module, mu_m_real, trivial_module
from galcoh.groups import make_abelian, make_cyclic, make_direct_product, make_semidirect
from galcoh.zmodlin import kernel_of

# restricted-source kernel == all-sources kernel
cases = []
v4 = make_abelian((2, 2), "V4")
cases.append((v4, trivial_module(v4, [4]), 2))
z6 = make_cyclic(6)
cases.append((z6, trivial_module(z6, [6]), 2))
d8 = make_semidirect(make_cyclic(4), make_cyclic(2), [[0, 1, 2, 3], [0, 3, 2, 1]], name="D8")
cases.append((d8, trivial_module(d8, [2]), 2))
g = make_direct_product(make_cyclic(2), make_cyclic(4))
mixed = make_module(g, [2, 4], "trivial", name="mix")
cases.append((g, mixed, 1))
cases.append((g, mixed, 2))

for grp, mod, deg in cases:
    big_m = mod.exponent
    t_n = (grp.order - 1) ** deg
    dim = t_n * mod.rank

    def batches(sources):
        yield from _constraint_batches(t_n, mod, big_m)
        yield from _diff_batches(grp, mod, deg, big_m, sources=sources)

    k_restricted = kernel_of(batches(grp.generators), dim, big_m)
    k_full = kernel_of(batches(None), dim, big_m)
    assert np.array_equal(k_restricted, k_full), (grp.name, deg)
    print(f"kernel equivalence ok: {grp.name} deg {deg} (dim {k_full.shape[0]})")

# order-64 support within the resource bound
t0 = time.perf_counter()
g64 = make_abelian((4, 4, 4), "Z4^3")
h2 = cohomology_group(g64, trivial_module(g64, [2]), 2)
t1 = time.perf_counter()
print("H2(Z4^3, Z/2) =", h2.describe(), f"in {t1 - t0:.1f}s")

from galcoh.cohomology import ResourceLimitError

g128 = make_abelian((2,) * 7, "E128")
try:
    cohomology_group(g128, trivial_module(g128, [2]), 1)
    raise SystemExit("should have raised")
except ResourceLimitError as e:
    print("resource bound:", e)
