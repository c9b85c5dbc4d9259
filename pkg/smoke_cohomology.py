import numpy as np

from galcoh.cohomology import (
    Cochain,
    coboundary,
    cohomology_group,
    cup_product,
    kunneth_basis,
    pullback_class,
    change_coefficients,
)
from galcoh.gmodules import gamma_real, make_module, mu_m_real, trivial_module, ModuleHom
from galcoh.groups import make_abelian, make_cyclic, make_direct_product, make_hom

gamma = gamma_real()
mu4 = mu_m_real(4)
mu3 = mu_m_real(3)
z2 = trivial_module(gamma, [2])

# H^0(Gamma, mu_4) = fixed points {0, 2} = Z/2
h0 = cohomology_group(gamma, mu4, 0)
print("H0(Gamma, mu4):", h0.invariant_factors, h0.describe())
assert h0.invariant_factors == (2,)
assert h0.basis[0]() == (2,)

# H^1(Gamma, mu4): cocycles z(xi) with xi.z(xi) + z(xi) = 0 -> 3z+z=0 -> Z/4? no:
# z(xi*xi)=z(e)=0 = xi z(xi) + z(xi) = -z+z = 0 always -> Z^1 = Z/4
# B^1: db(xi) = xi.b - b = -2b -> {0, 2}.  H^1 = Z/4 / {0,2} = Z/2
h1 = cohomology_group(gamma, mu4, 1)
print("H1(Gamma, mu4):", h1.invariant_factors)
assert h1.invariant_factors == (2,)

# H^2(Gamma, mu4): c(xi,xi)=v; cocycle: dc(xi,xi,xi) = xi.c(xi,xi) - c(e,xi) + c(xi,e) - c(xi,xi)
# = -v - 0 + 0 - v = -2v = 0 -> v in {0,2}; B^2: db(xi,xi) = xi.b(xi) - b(e) + b(xi) = -b + b = 0
# -> H^2 = Z/2 (classes {0}, {2})
h2 = cohomology_group(gamma, mu4, 2)
print("H2(Gamma, mu4):", h2.invariant_factors)
assert h2.invariant_factors == (2,)
assert h2.basis[0](1, 1) == (2,)

# H^n(Gamma, mu_3): order-2 group acting on odd torsion -> trivial for n >= 1
for n in (1, 2):
    h = cohomology_group(gamma, mu3, n)
    print(f"H{n}(Gamma, mu3):", h.invariant_factors)
    assert h.invariant_factors == ()
h0_3 = cohomology_group(gamma, mu3, 0)
print("H0(Gamma, mu3):", h0_3.invariant_factors)
assert h0_3.invariant_factors == ()  # only 0 fixed by negation on Z/3

# H^*(Gamma, Z/2) trivial action: all Z/2
for n in (0, 1, 2):
    h = cohomology_group(gamma, z2, n)
    assert h.invariant_factors == (2,), (n, h.invariant_factors)
print("H^*(Gamma, Z/2) all Z/2 ok")

# generator of H^2(Gamma, Z/2) is the cochain with value 1 at (xi, xi)
h2z2 = cohomology_group(gamma, z2, 2)
assert h2z2.basis[0](1, 1) == (1,)
assert h2z2.basis[0](0, 1) == (0,)

# V4 = Z/2 x Z/2, trivial Z/2: H^1 = (Z/2)^2, H^2 = (Z/2)^3
v4 = make_abelian((2, 2), "V4")
zv = trivial_module(v4, [2])
assert cohomology_group(v4, zv, 1).invariant_factors == (2, 2)
assert cohomology_group(v4, zv, 2).invariant_factors == (2, 2, 2)
print("V4 dims ok")

# Z/4 trivial Z/2: H^1 = Z/2, H^2 = Z/2
z4 = make_cyclic(4)
assert cohomology_group(z4, trivial_module(z4, [2]), 1).invariant_factors == (2,)
assert cohomology_group(z4, trivial_module(z4, [2]), 2).invariant_factors == (2,)

# Z/4 with Z (well, Z/8) trivial: H^2(Z/4, Z/8) = Z/4 (cyclic group cohomology)
z8mod = trivial_module(z4, [8])
h2z8 = cohomology_group(z4, z8mod, 2)
print("H2(Z/4, Z/8):", h2z8.invariant_factors)
assert h2z8.invariant_factors == (4,)

# d o d = 0 on random cochains (mixed moduli, nontrivial action)
g2 = make_abelian((2,), "C2")
mixed = make_module(gamma, [2, 4], [[[1, 0], [2, 3]]], name="mixed")
rng = np.random.default_rng(0)
for deg in (0, 1):
    for _ in range(5):
        c = Cochain(mixed, deg, rng.integers(0, 4, size=(2**deg, 2)))
        assert coboundary(coboundary(c)).is_zero()
print("d o d = 0 ok")

# reduce: coboundary reduces to zero class with witness
b = Cochain(mu4, 1, [[0], [3]])
db = coboundary(b)
h2mu4 = cohomology_group(gamma, mu4, 2)
cls = h2mu4.reduce(db)
assert cls.is_zero(), cls.coordinates
assert cls.witness is not None
assert (coboundary(cls.witness) - db).is_zero() or (db - coboundary(cls.witness)).is_zero()
print("witness roundtrip ok")

# non-cocycle rejected with location
try:
    h2mu4.reduce(Cochain.from_dict(mu4, 2, {(1, 0): (1,)}))
    raise SystemExit("should have raised")
except Exception as e:
    print("non-cocycle rejection:", e)

# witness for a general class: representative - combination cobounds
c = Cochain.from_dict(mu4, 2, {(1, 1): (3,), (1, 0): (1,), (0, 1): (1,), (0, 0): (1,)})
dc = coboundary(c)
if dc.is_zero():
    cls = h2mu4.reduce(c)
    print("general reduce coords:", cls.coordinates)

# pullback along identity is identity on coordinates
idhom = make_hom(gamma, gamma, [1])
x = h2z2.class_from_coordinates((1,))
px = pullback_class(idhom, x)
assert px.coordinates == (1,)
print("pullback identity ok")

# cup product: generator of H^1(Gamma,Z/2) cup itself = generator of H^2
h1z2 = cohomology_group(gamma, z2, 1)
a = h1z2.class_from_coordinates((1,))
aa = cup_product(a, a)
print("a cup a:", aa.coordinates)
assert aa.coordinates == (1,)

# change of coefficients along Z/2 -> Z/4 (multiplication by 2)
phi = ModuleHom(z2, mu4, [[2]])
y = change_coefficients(phi, h2z2.class_from_coordinates((1,)))
print("H2 image under Z/2 -> mu4:", y.coordinates, y.parent.invariant_factors)

# Kunneth for Gamma x Gamma over Z/2: dims 1 + 1 + 1 = 3
prod, elems = kunneth_basis(gamma, gamma, 2)
print("Kunneth H2(Gamma x Gamma):", [(e.bidegree, e.cls.coordinates) for e in elems])
assert len(elems) == 3

# class addition
s = h2z2.class_from_coordinates((1,)) + h2z2.class_from_coordinates((1,))
assert s.is_zero()
print("all cohomology smoke checks passed")
