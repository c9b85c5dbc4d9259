import itertools
import time
from fractions import Fraction

from galcoh.local_symbols import (
    InvariantSum, LocalError, Place, TernaryForm, hilbert_symbol,
    hilbert_symbol_search_oracle, invariant_sum, is_norm_from_gaussian,
    is_square_local, ternary_isotropic,
)

t0 = time.time()
real = Place.real()
p2, p3, p5, p7 = (Place.finite(p) for p in (2, 3, 5, 7))

# squares
assert is_square_local(-1, p5)
assert not is_square_local(-1, real)
assert not is_square_local(2, p2)
assert is_square_local(4, p2) and is_square_local(Fraction(9, 4), p3)
assert is_square_local(Fraction(1, 5), p5) is False or True
assert is_square_local(17, p2)  # 17 = 1 mod 8
assert not is_square_local(5, p2)

# pinned symbol values
assert hilbert_symbol(-1, -1, real) == -1
assert hilbert_symbol(-1, -1, p2) == -1
assert hilbert_symbol(-1, -1, p5) == 1
assert hilbert_symbol(2, 3, p3) == -1
assert hilbert_symbol(2, 2, p2) == 1
assert hilbert_symbol(5, 5, p5) == hilbert_symbol(5, -1, p5)

# oracle agreement on a quick corpus
vals = [Fraction(n, d) for n in range(-6, 7) if n for d in (1, 2, 3)]
places = [real, p2, p3, p5, p7]
checked = 0
for a, b in itertools.product(vals[::3], vals[::4]):
    for v in places:
        f = hilbert_symbol(a, b, v)
        o = hilbert_symbol_search_oracle(a, b, v)
        assert f == o, (a, b, str(v), f, o)
        checked += 1
print("oracle agreement on", checked, "cases in %.1fs" % (time.time() - t0))

# symmetry + bimultiplicativity + (a, -a)
import random
rng = random.Random(5)
for _ in range(200):
    a = Fraction(rng.randint(-20, 20) or 1, rng.randint(1, 20))
    b = Fraction(rng.randint(-20, 20) or 1, rng.randint(1, 20))
    c = Fraction(rng.randint(-20, 20) or 1, rng.randint(1, 20))
    for v in places:
        assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
        assert hilbert_symbol(a * c * c, b, v) == hilbert_symbol(a, b, v)
        assert hilbert_symbol(a, b * c * c, v) == hilbert_symbol(a, b, v)
        assert hilbert_symbol(a, -a, v) == 1
        assert hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v) == hilbert_symbol(a, b * c, v)

# ternary isotropy
q = TernaryForm(Fraction(1), Fraction(1), Fraction(1))
ok, wit = ternary_isotropic(q, p5)
assert ok
print("5-adic witness:", wit)
assert sum(c * w * w for c, w in zip(q.coefficients(), wit)) % 5**6 == 0
assert any(w % 5 for w in wit)

ok, wit = ternary_isotropic(q, real)
assert not ok and wit is None
ok, wit = ternary_isotropic(q, p2)
assert not ok

q2 = TernaryForm(1, 1, -3)
ok, wit = ternary_isotropic(q2, real)
assert ok
val = sum(c * w * w for c, w in zip((1.0, 1.0, -3.0), wit))
assert abs(val) < 1e-9, (wit, val)
print("real witness:", wit)

ok, wit = ternary_isotropic(q2, p3)
print("(1,1,-3) at 3:", ok, wit)
if ok:
    assert sum(c * w * w for c, w in zip((1, 1, -3), wit)) % 3**6 == 0

# fractional coefficients
q3 = TernaryForm(Fraction(1, 2), Fraction(-3, 4), Fraction(5, 7))
for v in (real, p2, p3, p5, p7):
    ok, wit = ternary_isotropic(q3, v, precision=5)
    if ok and not v.is_real:
        den = 28
        co = [int(x * den) for x in q3.coefficients()]
        assert sum(c * w * w for c, w in zip(co, wit)) % v.p**5 == 0, (str(v), wit)
    print("q3 at", v, "->", ok, wit)

# degenerate rejected
try:
    TernaryForm(1, 0, 2)
    raise SystemExit("zero coefficient accepted")
except LocalError:
    pass

# norms from Q(i)
assert is_norm_from_gaussian(2, real)
assert not is_norm_from_gaussian(-1, real)
assert all(is_norm_from_gaussian(a, p5) for a in (2, 3, -7, Fraction(5, 3)))

# invariant sums
s = invariant_sum(-1, -1)
d = s.as_dict()
assert s.total == 0
assert d["real"] == "1/2" and d["2"] == "1/2"
assert all(val == "0" for k, val in d.items() if k not in ("real", "2"))
s2 = invariant_sum(1, 77)
assert all(v == 0 for _, v in s2.entries) and s2.total == 0
for _ in range(100):
    a = Fraction(rng.randint(-30, 30) or 3, rng.randint(1, 30))
    b = Fraction(rng.randint(-30, 30) or 5, rng.randint(1, 30))
    assert invariant_sum(a, b).total == 0

print("local_symbols ok in %.1fs" % (time.time() - t0))
