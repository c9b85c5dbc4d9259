from fractions import Fraction

from galcoh.real_galois import (
    ConditionInput, ConditionPlace, GaussianRational, HermitianForm, I_UNIT,
    RealGaloisError, SignSequence, Signature, check_condition_double_star,
    check_condition_star, delta_image, h1_real_torsion, hermitian_signature,
    is_subgroup, j_form, sign_sequence_coordinates, sign_sequence_from_coordinates,
    su_class_of_cocycle,
)

# sign sequences
s = SignSequence((-1, 1, -1))
assert s.label() == "-+-"
assert (s * s).is_identity()
try:
    SignSequence((1, -1))
    raise SystemExit("product -1 accepted")
except RealGaloisError:
    pass

h = h1_real_torsion(3, 2)
assert len(h) == 4 and h[0].is_identity()
assert [x.label() for x in h] == ["+++", "+--", "-+-", "--+"]
assert h1_real_torsion(3, 3) == [SignSequence.identity(3)]
assert len(h1_real_torsion(4, 4)) == 8

# coordinates: pinned basis
assert sign_sequence_coordinates(SignSequence((-1, -1, 1)), 2) == (1, 0)
assert sign_sequence_coordinates(SignSequence((-1, 1, -1)), 2) == (0, 1)
assert sign_sequence_coordinates(SignSequence((-1, -1, 1)), 4) == (2, 0)
for x in h:
    assert sign_sequence_from_coordinates(sign_sequence_coordinates(x, 2), 2) == x

# su classes for (2,1)
triv = su_class_of_cocycle(SignSequence.identity(3), 2, 1)
assert triv == Signature(1, 2)
di = delta_image(2, 1, 2)
assert [x.label() for x in di] == ["+++", "+--", "-+-"], [x.label() for x in di]
# the one nontrivial class
nt = [x for x in h if x not in di]
assert len(nt) == 1
assert nt[0] == SignSequence((-1, -1, 1))
assert su_class_of_cocycle(nt[0], 2, 1) == Signature(3, 0)

assert not is_subgroup(di, h)
assert is_subgroup([SignSequence.identity(3)], h)
assert is_subgroup(h, h)

# delta image for larger m: same three sequences (2-torsion only)
di4 = delta_image(2, 1, 4)
assert [x.label() for x in di4] == ["+++", "+--", "-+-"]

# hermitian signatures
assert hermitian_signature(j_form(2, 1)) == Signature(1, 2)
assert hermitian_signature(HermitianForm.diagonal([1, 1, 1])) == Signature(3, 0)
hyp = HermitianForm([[0, I_UNIT], [GaussianRational(0, -1), 0]])
assert hermitian_signature(hyp) == Signature(1, 1)
m = HermitianForm([[Fraction(1, 2), (1, 1)], [(1, -1), -3]])
sig = hermitian_signature(m)
assert sig == Signature(1, 1), sig
try:
    hermitian_signature(HermitianForm([[1, 0], [0, 0]]))
    raise SystemExit("degenerate accepted")
except RealGaloisError:
    pass

# conditions: one real place, H = (Z/2)^2, D = delta image coords, R = {0}
coords = [sign_sequence_coordinates(x, 2) for x in di]
place = ConditionPlace((2, 2), coords)
ci = ConditionInput([place], [(0, 0)])
ok, cert = check_condition_star(ci)
assert not ok and cert == (1, 0), (ok, cert)
ok2, cert2 = check_condition_double_star(ci)
assert not ok2 and cert2 == (1, 0), (ok2, cert2)

# trivial delta image: double star holds, star needs R to cover
trivial_place = ConditionPlace((2,), [(0,)])
ci2 = ConditionInput([trivial_place], [(0,)])
ok, cert = check_condition_double_star(ci2)
assert ok and cert is None
ok, cert = check_condition_star(ci2)
assert not ok and cert == (1,)

# full R makes star true
ci3 = ConditionInput([place], [(0, 0), (1, 0), (0, 1), (1, 1)])
assert check_condition_star(ci3) == (True, None)

# empty set of places: vacuously true
ci4 = ConditionInput([], [()])
assert check_condition_star(ci4) == (True, None)
assert check_condition_double_star(ci4) == (True, None)

# two places
p1 = ConditionPlace((2,), [(0,), (1,)])
p2 = ConditionPlace((2,), [(0,)])
ci5 = ConditionInput([p1, p2], [(0, 0), (1, 1)])
assert check_condition_star(ci5) == (True, None)

# serialization round trip
text = ci.to_json()
ci_back = ConditionInput.from_json(text)
assert ci_back.to_dict() == ci.to_dict()
try:
    ConditionInput.from_json("{\"places\": 3}")
    raise SystemExit("malformed accepted")
except RealGaloisError as e:
    print("malformed rejected:", e)

# r closure validation
try:
    ConditionInput([place], [(0, 0), (1, 0)])  # missing (0,0)+(1,0) closure? (1,0)+(1,0)=(0,0) ok; it IS closed
    pass
except RealGaloisError:
    raise SystemExit("closed r rejected")
try:
    ConditionInput([ConditionPlace((4,), [(0,)])], [(0,), (1,)])
    raise SystemExit("non-closed r accepted")
except RealGaloisError as e:
    print("non-closed r rejected:", e)

print("real_galois ok")
