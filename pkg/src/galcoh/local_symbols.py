"""Exact local arithmetic over the p-adic fields and the reals.

Square classes, Hilbert symbols and diagonal ternary-form isotropy, all in
exact rational arithmetic.  Symbols are computed by the classical
valuation/residue formulas; an independent search oracle decides the same
question by enumerating primitive solutions of z^2 = a x^2 + b y^2 modulo
p^(2 v_p(4ab) + 3), a modulus at which a primitive approximate solution is
liftable, so the two routes must agree exactly.

Witnesses for isotropic ternary forms over Q_p are primitive integer triples
correct modulo p^precision, produced by a coarse search followed by Newton
lifting on the coordinate with an invertible derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cohomology import ResourceLimitError


class LocalError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Place:
    """The real place or a finite place given by a prime."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "real":
            if self.p is not None:
                raise LocalError("real place carries no prime")
        elif self.kind == "finite":
            if self.p is None or not _is_prime(self.p):
                raise LocalError(f"finite place needs a prime, got {self.p}")
        else:
            raise LocalError(f"unknown place kind {self.kind!r}")

    @classmethod
    def real(cls) -> "Place":
        return cls("real")

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls("finite", int(p))

    @classmethod
    def parse(cls, text: str) -> "Place":
        t = text.strip().lower()
        if t in ("real", "oo", "inf", "infinity", "r"):
            return cls.real()
        try:
            return cls.finite(int(t))
        except ValueError as e:
            raise LocalError(f"cannot parse place {text!r}") from e

    @property
    def is_real(self) -> bool:
        return self.kind == "real"

    def __str__(self):
        return "real" if self.is_real else str(self.p)


@dataclass(frozen=True)
class TernaryForm:
    """Diagonal form a x^2 + b y^2 + c z^2 with nonzero rational coefficients."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = Fraction(getattr(self, name))
            if v == 0:
                raise LocalError("ternary form coefficients must be nonzero")
            object.__setattr__(self, name, v)

    def coefficients(self) -> tuple:
        return (self.a, self.b, self.c)

    def __call__(self, x, y, z):
        return self.a * x * x + self.b * y * y + self.c * z * z


def _check_nonzero(*values) -> list:
    out = []
    for v in values:
        f = Fraction(v)
        if f == 0:
            raise LocalError("argument must be a nonzero rational")
        out.append(f)
    return out


def _vp(x: Fraction, p: int) -> int:
    n, d, v = x.numerator, x.denominator, 0
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _unit_residue(x: Fraction, p: int, mod: int) -> int:
    """The p-free part of x reduced modulo `mod` (a power of p)."""
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
    while d % p == 0:
        d //= p
    return n * pow(d, -1, mod) % mod


def is_square_local(a, v: Place) -> bool:
    """Whether a nonzero rational is a square in the completion at v."""
    (a,) = _check_nonzero(a)
    if v.is_real:
        return a > 0
    p = v.p
    if _vp(a, p) % 2 != 0:
        return False
    if p == 2:
        return _unit_residue(a, 2, 8) == 1
    u = _unit_residue(a, p, p)
    return pow(u, (p - 1) // 2, p) == 1


def hilbert_symbol(a, b, v: Place) -> int:
    """The Hilbert symbol (a, b)_v: +1 iff z^2 = a x^2 + b y^2 has a
    nontrivial solution over the completion at v."""
    a, b = _check_nonzero(a, b)
    if v.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = v.p
    alpha, beta = _vp(a, p), _vp(b, p)
    if p == 2:
        u = _unit_residue(a, 2, 8)
        w = _unit_residue(b, 2, 8)
        eps_u, eps_w = (u - 1) // 2 % 2, (w - 1) // 2 % 2
        om_u, om_w = (u * u - 1) // 8 % 2, (w * w - 1) // 8 % 2
        e = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if e % 2 else 1
    u = _unit_residue(a, p, p)
    w = _unit_residue(b, p, p)
    leg_u = 1 if pow(u, (p - 1) // 2, p) == 1 else -1
    leg_w = 1 if pow(w, (p - 1) // 2, p) == 1 else -1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    return sign * (leg_u ** (beta % 2)) * (leg_w ** (alpha % 2))


MAX_ORACLE_MODULUS = 1 << 24


def _squarefree_int(x: Fraction) -> int:
    """An integer representing x modulo nonzero rational squares."""
    n = x.numerator * x.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return sign * out * n


def hilbert_symbol_search_oracle(a, b, v: Place) -> int:
    """Decide (a, b)_v by enumerating primitive solutions modulo a fixed
    power of p, with no residue-symbol shortcuts.

    Slot values are first replaced by squarefree integers (an isometry of
    the form z^2 - a x^2 - b y^2, rescaling one variable).  A primitive
    solution has some unit coordinate, so after scaling it is 1; each of the
    three resulting two-variable equations is checked by a full enumeration
    of one variable and a table lookup for the other.
    """
    a, b = _check_nonzero(a, b)
    if v.is_real:
        return -1 if (a < 0 and b < 0) else 1
    p = v.p
    ai, bi = _squarefree_int(a), _squarefree_int(b)
    bound = 2 * _vp(Fraction(4 * ai * bi), p) + 3
    n = p**bound
    if n > MAX_ORACLE_MODULUS:
        raise ResourceLimitError(f"oracle modulus {p}^{bound} too large")
    t = np.arange(n, dtype=np.int64)
    sq = np.zeros(n, dtype=bool)
    sq[(t * t) % n] = True
    # x = 1: z^2 - b y^2 = a
    if sq[(ai + bi * t * t) % n].any():
        return 1
    # y = 1: z^2 - a x^2 = b
    if sq[(bi + ai * t * t) % n].any():
        return 1
    # z = 1: a x^2 + b y^2 = 1
    by = np.zeros(n, dtype=bool)
    by[(bi * t * t) % n] = True
    if by[(1 - ai * t * t) % n].any():
        return 1
    return -1


def ternary_isotropic(form: TernaryForm, v: Place, precision: int = 6):
    """Whether the diagonal ternary form has a nontrivial zero at v.

    Equivalent to hilbert_symbol(-a/c, -b/c, v) = +1.  When isotropic the
    second return value is a witness: over the reals a float triple zeroing
    the form to machine precision, over Q_p a primitive integer triple with
    form(witness) = 0 modulo p^precision.
    """
    a, b, c = form.coefficients()
    result = hilbert_symbol(-a / c, -b / c, v) == 1
    if not result:
        return False, None
    if v.is_real:
        co = [a, b, c]
        ipos = next(i for i in range(3) if co[i] > 0)
        ineg = next(i for i in range(3) if co[i] < 0)
        w = [0.0, 0.0, 0.0]
        w[ipos] = math.sqrt(abs(float(co[ineg])))
        w[ineg] = math.sqrt(abs(float(co[ipos])))
        return True, tuple(w)
    return True, _padic_witness(form, v.p, precision)


def _padic_witness(form: TernaryForm, p: int, precision: int) -> tuple:
    den = math.lcm(form.a.denominator, form.b.denominator, form.c.denominator)
    co = [int(form.a * den), int(form.b * den), int(form.c * den)]
    bound = 2 * _vp(Fraction(4 * co[0] * co[1] * co[2]), p) + 3
    n = p**bound
    if n > MAX_ORACLE_MODULUS:
        raise ResourceLimitError(f"witness search modulus {p}^{bound} too large")
    t = np.arange(n, dtype=np.int64)
    sol = None
    # place 1 in each slot in turn; enumerate the second slot, look up the third
    for unit in range(3):
        rest = [i for i in range(3) if i != unit]
        third_val = np.full(n, -1, dtype=np.int64)
        third_sq = (co[rest[1]] * t * t) % n
        third_val[third_sq[::-1]] = t[::-1]  # smallest t wins
        need = (-(co[unit] + co[rest[0]] * t * t)) % n
        hits = third_val[need] >= 0
        if hits.any():
            s = int(np.argmax(hits))
            vec = [0, 0, 0]
            vec[unit] = 1
            vec[rest[0]] = s
            vec[rest[1]] = int(third_val[need[s]])
            sol = vec
            break
    assert sol is not None, "symbol said isotropic but the search found nothing"
    return _newton_lift(co, sol, p, bound, precision)


def _newton_lift(co, sol, p: int, start_exp: int, precision: int) -> tuple:
    """Lift a solution of sum co[i] x_i^2 = 0 from mod p^start_exp to
    mod p^precision by Newton iteration on one coordinate."""
    target = p**precision
    if precision <= start_exp:
        vec = [x % target for x in sol]
        return tuple(vec)
    # pick the coordinate with the most invertible derivative 2 co[i] x_i,
    # leaving a coordinate equal to 1 untouched when possible
    candidates = []
    for i in range(3):
        d = 2 * co[i] * sol[i]
        if d == 0 or sol[i] % p == 0:
            continue
        candidates.append((_vp(Fraction(d), p), sol[i] == 1, i))
    assert candidates
    best_v, _, i = min(candidates)
    exp = start_exp
    x = sol[i]
    while exp < precision:
        exp = min(2 * exp - 2 * best_v, precision)
        mod = p**exp
        rhs = -(sum(co[j] * sol[j] * sol[j] for j in range(3) if j != i)) % mod
        f = (co[i] * x * x - rhs) % mod
        fp = 2 * co[i] * x
        unit = fp // p**best_v
        x = (x - f // p**best_v * pow(unit % mod, -1, mod)) % mod
    out = [s % target for s in sol]
    out[i] = x % target
    q = sum(co[j] * out[j] * out[j] for j in range(3)) % target
    assert q == 0, "lifted witness fails verification"
    assert any(w % p for w in out), "lifted witness not primitive"
    return tuple(out)


def is_norm_from_gaussian(a, v: Place) -> bool:
    """Whether a is a local norm from the field obtained by adjoining i."""
    return hilbert_symbol(-1, a, v) == 1


@dataclass(frozen=True)
class InvariantSum:
    """Local quaternion invariants of (a, b) at the relevant places."""

    entries: tuple  # ((Place, Fraction), ...)
    total: Fraction

    def as_dict(self) -> dict:
        return {str(pl): str(val) for pl, val in self.entries}


def _prime_divisors(n: int) -> list:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def invariant_sum(a, b) -> InvariantSum:
    """Local invariants (0 or 1/2) of the symbol (a, b) at the real place and
    the primes dividing 2ab, with their total in Q/Z.  The total is always 0;
    the value is returned rather than asserted so callers can exhibit it.
    """
    a, b = _check_nonzero(a, b)
    support = {2}
    for x in (a, b):
        support.update(_prime_divisors(x.numerator))
        support.update(_prime_divisors(x.denominator))
    places = [Place.real()] + [Place.finite(p) for p in sorted(support)]
    entries = []
    total = Fraction(0)
    for pl in places:
        s = hilbert_symbol(a, b, pl)
        val = Fraction(0) if s == 1 else Fraction(1, 2)
        entries.append((pl, val))
        total += val
    return InvariantSum(tuple(entries), total % 1)
