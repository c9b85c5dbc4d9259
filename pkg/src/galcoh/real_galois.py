"""Real Galois cohomology of diagonal tori and special unitary groups.

Diagonal real cocycles are sign sequences.  For the determinant-one torus
T[m] of rank n-1 the real first cohomology with coefficients in the
m-torsion is the group of length-n sign sequences of product +1 when m is
even, and trivial when m is odd.  The connecting map to SU(p, q) sends a
sign sequence M to the signature of J.diag(M) where J is the standard
diagonal form with p minus ones first; the image of the coboundary from the
simply connected cover consists of the sequences whose signature matches J
itself.

Hermitian forms over the Gaussian rationals are diagonalized exactly, so
signatures carry no floating point error.

The obstruction conditions compare a product of local groups H_v, local
subsets D_v containing zero and a global subgroup R of the product:

  (*)   every element of the product is reachable as r + (d_v)_v
  (**)  every element of the product of the generated subgroups <D_v> is

Both checkers return a certificate element when the condition fails.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .cohomology import ResourceLimitError


class RealGaloisError(ValueError):
    pass


class SignSequence:
    """A length-n tuple of signs with product +1, multiplied pointwise."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        entries = tuple(int(e) for e in entries)
        if not entries:
            raise RealGaloisError("sign sequence must be nonempty")
        if any(e not in (1, -1) for e in entries):
            raise RealGaloisError("sign sequence entries must be +1 or -1")
        prod = 1
        for e in entries:
            prod *= e
        if prod != 1:
            raise RealGaloisError("sign sequence must have product +1")
        self.entries = entries

    @classmethod
    def identity(cls, n: int) -> "SignSequence":
        return cls((1,) * n)

    def __len__(self) -> int:
        return len(self.entries)

    def __mul__(self, other: "SignSequence") -> "SignSequence":
        if len(other) != len(self):
            raise RealGaloisError("sign sequence lengths differ")
        return SignSequence(tuple(a * b for a, b in zip(self.entries, other.entries)))

    def inverse(self) -> "SignSequence":
        return self

    def is_identity(self) -> bool:
        return all(e == 1 for e in self.entries)

    def label(self) -> str:
        return "".join("+" if e == 1 else "-" for e in self.entries)

    def __eq__(self, other):
        return isinstance(other, SignSequence) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"SignSequence({self.label()})"


def h1_real_torsion(n: int, m: int) -> list:
    """All diagonal real cocycle classes of the rank n-1 torus killed by m.

    For even m these are the 2^(n-1) sign sequences of length n and product
    +1, listed with the identity first and the remaining free entries in
    lexicographic order (+ before -).  For odd m only the identity remains.
    """
    if n < 1 or m < 1:
        raise RealGaloisError("need n >= 1 and m >= 1")
    if m % 2 == 1:
        return [SignSequence.identity(n)]
    out = []
    for head in itertools.product((1, -1), repeat=n - 1):
        prod = 1
        for e in head:
            prod *= e
        out.append(SignSequence(head + (prod,)))
    return out


def sign_sequence_coordinates(s: SignSequence, m: int) -> tuple:
    """Coordinates of a sign sequence in (Z/m)^(n-1), first entry dropped.

    The chosen basis sends (-1,-1,+1,...) to (m/2, 0, ...) and
    (-1,+1,-1,+1,...) to (0, m/2, 0, ...); the first entry is recovered as
    the product of the rest, so dropping it is injective.
    """
    if m % 2 != 0:
        raise RealGaloisError("coordinates need even torsion order")
    half = m // 2
    return tuple(half if e == -1 else 0 for e in s.entries[1:])


def sign_sequence_from_coordinates(coords, m: int) -> SignSequence:
    half = m // 2
    tail = []
    for c in coords:
        if c % m == 0:
            tail.append(1)
        elif c % m == half:
            tail.append(-1)
        else:
            raise RealGaloisError("coordinates must be 0 or m/2")
    prod = 1
    for e in tail:
        prod *= e
    return SignSequence((prod, *tail))


@dataclass(frozen=True)
class Signature:
    """Inertia of a nondegenerate hermitian form: positive and negative counts."""

    n_plus: int
    n_minus: int

    @property
    def size(self) -> int:
        return self.n_plus + self.n_minus

    def __repr__(self):
        return f"Signature(+{self.n_plus}, -{self.n_minus})"


def su_class_of_cocycle(m_seq: SignSequence, p: int, q: int) -> Signature:
    """Signature of J.diag(M) for the diagonal cocycle M of SU(p, q).

    J has p entries -1 first, then q entries +1; cocycles with the signature
    of J itself are trivial in H^1(R, SU(p, q)).
    """
    if p < 0 or q < 0 or p + q != len(m_seq):
        raise RealGaloisError("need p, q >= 0 with p + q equal to the sequence length")
    j = (-1,) * p + (1,) * q
    diag = [a * b for a, b in zip(j, m_seq.entries)]
    n_plus = sum(1 for d in diag if d == 1)
    sig = Signature(n_plus, len(diag) - n_plus)
    # det(M) = 1 forces the discriminant of J.diag(M) to match J's
    assert sig.n_minus % 2 == p % 2
    return sig


def delta_image(p: int, q: int, m: int) -> list:
    """Torus classes that become trivial in SU(p, q): the connecting image.

    Listed in the order of h1_real_torsion(p + q, m).
    """
    if p < 1 or q < 1:
        raise RealGaloisError("need p, q >= 1")
    n = p + q
    trivial = su_class_of_cocycle(SignSequence.identity(n), p, q)
    return [s for s in h1_real_torsion(n, m) if su_class_of_cocycle(s, p, q) == trivial]


def is_subgroup(subset, ambient) -> bool:
    """Whether a set of sign sequences is a subgroup of the ambient list."""
    d = set(subset)
    if not d:
        return False
    h = set(ambient)
    if not d <= h:
        raise RealGaloisError("subset contains elements outside the ambient group")
    return all(a * b in d for a in d for b in d)


# -- exact hermitian forms over Q(i) ---------------------------------------


class GaussianRational:
    """a + b*i with rational a, b; exact arithmetic."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, tuple):
            return cls(*x)
        if isinstance(x, complex):
            raise RealGaloisError("float complex not accepted; pass exact parts")
        return cls(x)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __add__(self, o):
        return GaussianRational(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, o):
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    def __truediv__(self, o):
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational((self.re * o.re + self.im * o.im) / n,
                                (self.im * o.re - self.re * o.im) / n)

    def __eq__(self, o):
        return isinstance(o, GaussianRational) and self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


I_UNIT = GaussianRational(0, 1)


class HermitianForm:
    """A square conjugate-symmetric matrix over the Gaussian rationals."""

    def __init__(self, rows):
        mat = [[GaussianRational.coerce(x) for x in row] for row in rows]
        n = len(mat)
        if any(len(row) != n for row in mat):
            raise RealGaloisError("matrix must be square")
        for i in range(n):
            for j in range(n):
                if mat[i][j] != mat[j][i].conjugate():
                    raise RealGaloisError(
                        f"matrix is not conjugate-symmetric at ({i}, {j})"
                    )
        self.rows = tuple(tuple(row) for row in mat)
        self.size = n

    @classmethod
    def diagonal(cls, entries) -> "HermitianForm":
        es = [GaussianRational.coerce(e) for e in entries]
        n = len(es)
        return cls([[es[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def __repr__(self):
        return f"HermitianForm(size={self.size})"


def j_form(p: int, q: int) -> HermitianForm:
    """The standard diagonal form with p entries -1 first, then q entries +1."""
    if p < 0 or q < 0 or p + q < 1:
        raise RealGaloisError("need p, q >= 0 with p + q >= 1")
    return HermitianForm.diagonal([-1] * p + [1] * q)


def hermitian_signature(form: HermitianForm) -> Signature:
    """Exact signature of a nondegenerate hermitian form.

    Recursively splits off a nonzero diagonal entry, or a hyperbolic plane
    when the whole diagonal vanishes.  Raises on degenerate forms.
    """
    mat = {(i, j): form.rows[i][j] for i in range(form.size) for j in range(form.size)}
    active = list(range(form.size))
    n_plus = n_minus = 0
    while active:
        pivot = next((i for i in active if not mat[(i, i)].is_zero()), None)
        if pivot is not None:
            d = mat[(pivot, pivot)].re
            if d > 0:
                n_plus += 1
            else:
                n_minus += 1
            rest = [i for i in active if i != pivot]
            piv = mat[(pivot, pivot)]
            for k in rest:
                for l in rest:
                    mat[(k, l)] = mat[(k, l)] - mat[(k, pivot)] * mat[(pivot, l)] / piv
            active = rest
            continue
        off = next(((i, j) for i in active for j in active
                    if i < j and not mat[(i, j)].is_zero()), None)
        if off is None:
            raise RealGaloisError("form is degenerate")
        i, j = off
        a = mat[(i, j)]
        ab = a.conjugate()
        n_plus += 1
        n_minus += 1
        rest = [k for k in active if k not in (i, j)]
        for k in rest:
            for l in rest:
                mat[(k, l)] = (mat[(k, l)]
                               - mat[(k, j)] * mat[(i, l)] / a
                               - mat[(k, i)] * mat[(j, l)] / ab)
        active = rest
    return Signature(n_plus, n_minus)


# -- obstruction conditions over a finite set of places ---------------------


MAX_PRODUCT_SIZE = 10**6


class ConditionPlace:
    """Local data at one place: invariant factors of H_v and the subset D_v."""

    def __init__(self, factors, delta):
        factors = tuple(int(f) for f in factors)
        if any(f < 1 for f in factors):
            raise RealGaloisError("invariant factors must be positive")
        delta = [tuple(int(x) for x in d) for d in delta]
        for d in delta:
            if len(d) != len(factors):
                raise RealGaloisError("delta element length must match the factor count")
            if any(x < 0 or x >= f for x, f in zip(d, factors)):
                raise RealGaloisError("delta element out of range")
        if (0,) * len(factors) not in delta:
            raise RealGaloisError("delta subset must contain zero")
        if len(set(delta)) != len(delta):
            raise RealGaloisError("delta subset has repeated elements")
        self.factors = factors
        self.delta = tuple(delta)

    @property
    def order(self) -> int:
        n = 1
        for f in self.factors:
            n *= f
        return n


class ConditionInput:
    """Product-of-places data for the reachability conditions.

    r_subgroup lists elements of the full product as flat tuples obtained by
    concatenating per-place coordinates; it must be a subgroup.
    """

    def __init__(self, places, r_subgroup):
        self.places = tuple(p if isinstance(p, ConditionPlace) else ConditionPlace(*p)
                            for p in places)
        flat_factors = tuple(f for p in self.places for f in p.factors)
        rank = len(flat_factors)
        rs = [tuple(int(x) for x in r) for r in r_subgroup]
        for r in rs:
            if len(r) != rank:
                raise RealGaloisError("r element length must match the total rank")
            if any(x < 0 or x >= f for x, f in zip(r, flat_factors)):
                raise RealGaloisError("r element out of range")
        rset = set(rs)
        if (0,) * rank not in rset:
            raise RealGaloisError("r must contain zero")
        for a in rset:
            for b in rset:
                s = tuple((x + y) % f for x, y, f in zip(a, b, flat_factors))
                if s not in rset:
                    raise RealGaloisError("r is not closed under addition")
        self.r_subgroup = tuple(sorted(rset))
        self.flat_factors = flat_factors

    def product_order(self) -> int:
        n = 1
        for p in self.places:
            n *= p.order
        return n

    def to_dict(self) -> dict:
        return {
            "places": [
                {"invariant_factors": list(p.factors),
                 "delta_image": [list(d) for d in p.delta]}
                for p in self.places
            ],
            "r_subgroup": [list(r) for r in self.r_subgroup],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ConditionInput":
        try:
            places = [ConditionPlace(p["invariant_factors"], p["delta_image"])
                      for p in d["places"]]
            return cls(places, d["r_subgroup"])
        except (KeyError, TypeError) as e:
            raise RealGaloisError(f"malformed condition input: {e}") from e

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "ConditionInput":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise RealGaloisError(f"invalid JSON: {e}") from e
        return cls.from_dict(data)


def _reachable_set(ci: ConditionInput) -> set:
    flat_factors = ci.flat_factors
    deltas = [p.delta for p in ci.places]
    combos = 1
    for d in deltas:
        combos *= len(d)
    if combos * max(len(ci.r_subgroup), 1) > 10 * MAX_PRODUCT_SIZE:
        raise ResourceLimitError("reachable-set enumeration too large")
    reach = set()
    for parts in itertools.product(*deltas):
        d = tuple(x for part in parts for x in part)
        for r in ci.r_subgroup:
            reach.add(tuple((x + y) % f for x, y, f in zip(d, r, flat_factors)))
    return reach


def _first_missing(candidates, reach) -> tuple | None:
    for v in candidates:
        if v not in reach:
            return v
    return None


def check_condition_star(ci: ConditionInput):
    """Whether every element of the product of the H_v is reachable.

    Returns (True, None) or (False, certificate), the certificate being the
    lexicographically least unreachable element as a flat tuple.
    """
    if ci.product_order() > MAX_PRODUCT_SIZE:
        raise ResourceLimitError(
            f"product of local groups has more than {MAX_PRODUCT_SIZE} elements"
        )
    reach = _reachable_set(ci)
    full = itertools.product(*[range(f) for f in ci.flat_factors])
    missing = _first_missing(full, reach)
    return (missing is None), missing


def _generated_subgroup(delta, factors) -> list:
    gen = {(0,) * len(factors)}
    frontier = set(delta)
    while frontier:
        new = set()
        for a in frontier:
            for b in delta:
                s = tuple((x + y) % f for x, y, f in zip(a, b, factors))
                if s not in gen and s not in frontier:
                    new.add(s)
        gen |= frontier
        frontier = new
    return sorted(gen)


def check_condition_double_star(ci: ConditionInput):
    """Whether the product of the generated subgroups <D_v> is reachable.

    Same return convention as check_condition_star.
    """
    if ci.product_order() > MAX_PRODUCT_SIZE:
        raise ResourceLimitError(
            f"product of local groups has more than {MAX_PRODUCT_SIZE} elements"
        )
    reach = _reachable_set(ci)
    gens = [_generated_subgroup(p.delta, p.factors) for p in ci.places]
    combos = itertools.product(*gens)
    flat = (tuple(x for part in parts for x in part) for parts in combos)
    missing = _first_missing(flat, reach)
    return (missing is None), missing
