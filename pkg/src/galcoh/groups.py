"""Finite groups as validated multiplication tables, plus homomorphisms.

Elements are integer ids 0..order-1 with 0 always the identity.  Product
constructions use left-factor-major ids: the pair (a, b) gets id
a * |right| + b, so a semidirect product with trivial twist has a table
identical to the plain direct product.
"""

from __future__ import annotations

import hashlib
from collections import Counter

import numpy as np


class GroupError(ValueError):
    pass


class FiniteGroup:
    """Immutable finite group on ids 0..order-1 with identity 0."""

    def __init__(self, table, generators, name: str = "G", labels=None):
        table = np.asarray(table, dtype=np.int64)
        n = table.shape[0]
        if table.shape != (n, n):
            raise GroupError("multiplication table must be square")
        if n == 0:
            raise GroupError("group must be nonempty")
        if table.min() < 0 or table.max() >= n:
            raise GroupError("table entries out of range")
        rng = np.arange(n)
        if not np.array_equal(table[0], rng) or not np.array_equal(table[:, 0], rng):
            raise GroupError("element 0 is not a two-sided identity")
        # two-sided inverses
        inv = np.full(n, -1, dtype=np.int64)
        for a, b in zip(*np.nonzero(table == 0)):
            inv[a] = b
        if (inv < 0).any() or (table[inv, rng] != 0).any():
            raise GroupError("some element has no two-sided inverse")
        lhs = table[table, :]  # lhs[a,b,c] = (a*b)*c
        rhs = table[:, table]  # rhs[a,b,c] = a*(b*c)
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)[0]
            raise GroupError(f"associativity fails at triple {tuple(int(x) for x in bad)}")
        generators = tuple(int(g) for g in generators)
        if any(g < 0 or g >= n for g in generators):
            raise GroupError("generator id out of range")
        reached = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for g in generators:
                y = int(table[x, g])
                if y not in reached:
                    reached.add(y)
                    frontier.append(y)
        if len(reached) != n:
            raise GroupError("declared generators do not generate the group")
        self.table = table
        self.table.flags.writeable = False
        self.order = n
        self.generators = generators
        self.name = name
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        self._inv = inv
        self._inv.flags.writeable = False
        self._key = hashlib.sha1(table.tobytes()).hexdigest()

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self._inv[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        r = 0
        for _ in range(k):
            r = self.mul(r, a)
        return r

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def element_orders(self) -> list[int]:
        return [self.element_order(a) for a in range(self.order)]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def key(self) -> str:
        return self._key

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


class GroupHom:
    """A verified homomorphism between FiniteGroups, stored as an image table."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images, check: bool = True):
        images = np.asarray(images, dtype=np.int64)
        if images.shape != (source.order,):
            raise GroupError("image table must list one target id per source element")
        if check:
            if images[0] != 0:
                raise GroupError("homomorphism must send identity to identity")
            ft = target.table[images][:, images]
            fs = images[source.table]
            if not np.array_equal(ft, fs):
                a, b = np.argwhere(ft != fs)[0]
                raise GroupError(
                    f"homomorphism law fails at pair ({int(a)}, {int(b)})"
                )
        self.source = source
        self.target = target
        self.images = images
        self.images.flags.writeable = False

    def __call__(self, a: int) -> int:
        return int(self.images[a])

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self ∘ other (apply `other` first)."""
        if other.target != self.source:
            raise GroupError("composition mismatch")
        return GroupHom(other.source, self.target, self.images[other.images], check=False)

    def is_surjective(self) -> bool:
        return len(set(self.images.tolist())) == self.target.order

    def __repr__(self):
        return f"GroupHom({self.source.name} -> {self.target.name})"


def make_cyclic(n: int, name: str | None = None) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be >= 1")
    rng = np.arange(n)
    table = (rng[:, None] + rng[None, :]) % n
    gens = (1,) if n > 1 else ()
    return FiniteGroup(table, gens, name or f"Z{n}")


def make_direct_product(g: FiniteGroup, h: FiniteGroup, name: str | None = None) -> FiniteGroup:
    """Direct product with ids a * |h| + b; projection/inclusion homs attached."""
    ng, nh = g.order, h.order
    table = (
        g.table[:, None, :, None] * nh + h.table[None, :, None, :]
    ).reshape(ng * nh, ng * nh)
    gens = tuple(gg * nh for gg in g.generators) + tuple(h.generators)
    labels = [f"({g.labels[a]},{h.labels[b]})" for a in range(ng) for b in range(nh)]
    p = FiniteGroup(table, gens, name or f"{g.name}x{h.name}", labels)
    ids = np.arange(ng * nh)
    p.left = g
    p.right = h
    p.proj_left = GroupHom(p, g, ids // nh, check=False)
    p.proj_right = GroupHom(p, h, ids % nh, check=False)
    p.incl_left = GroupHom(g, p, np.arange(ng) * nh, check=False)
    p.incl_right = GroupHom(h, p, np.arange(nh), check=False)
    return p


def make_semidirect(
    normal: FiniteGroup, quotient: FiniteGroup, action, name: str | None = None
) -> FiniteGroup:
    """Semidirect product N ⋊ Q for a left action of Q on N by automorphisms.

    `action` lists, for each element q of Q, the permutation of N it induces
    (image id list of length |N|).  Each permutation is checked to be an
    automorphism and the assignment a homomorphism Q -> Aut(N); violations
    are rejected with the offending pair.  Trivial action reproduces the
    direct product table exactly.
    """
    nn, nq = normal.order, quotient.order
    act = np.asarray(action, dtype=np.int64)
    if act.shape != (nq, nn):
        raise GroupError("action must give an image list over N for every element of Q")
    for q in range(nq):
        perm = act[q]
        if sorted(perm.tolist()) != list(range(nn)):
            raise GroupError(f"action of element {q} is not a bijection of N")
        hom_ok = perm[normal.table] == normal.table[perm][:, perm]
        if not hom_ok.all():
            a, b = np.argwhere(~hom_ok)[0]
            raise GroupError(
                f"action of element {q} is not an automorphism: fails at ({int(a)}, {int(b)})"
            )
    for q1 in range(nq):
        for q2 in range(nq):
            if not np.array_equal(act[q1][act[q2]], act[quotient.mul(q1, q2)]):
                raise GroupError(
                    f"action is not a homomorphism Q -> Aut(N): fails at pair ({q1}, {q2})"
                )
    n1 = np.arange(nn)[:, None, None, None]
    q1 = np.arange(nq)[None, :, None, None]
    n2 = np.arange(nn)[None, None, :, None]
    q2 = np.arange(nq)[None, None, None, :]
    twisted = act[q1, n2]
    table = (normal.table[n1, twisted] * nq + quotient.table[q1, q2]).reshape(
        nn * nq, nn * nq
    )
    gens = tuple(g * nq for g in normal.generators) + tuple(quotient.generators)
    labels = [
        f"({normal.labels[a]};{quotient.labels[b]})" for a in range(nn) for b in range(nq)
    ]
    s = FiniteGroup(table, gens, name or f"{normal.name}:{quotient.name}", labels)
    ids = np.arange(nn * nq)
    s.normal = normal
    s.quotient = quotient
    s.incl_normal = GroupHom(normal, s, np.arange(nn) * nq, check=False)
    s.proj_quotient = GroupHom(s, quotient, ids % nq, check=False)
    return s


def make_abelian(factors, name: str | None = None) -> FiniteGroup:
    """Direct product of cyclic groups Z/factors[0] x Z/factors[1] x ..."""
    factors = [int(f) for f in factors]
    if not factors:
        return make_cyclic(1, name)
    g = make_cyclic(factors[0])
    for f in factors[1:]:
        g = make_direct_product(g, make_cyclic(f))
    if name:
        g.name = name
    return g


def abelian_coords_to_id(coords, factors) -> int:
    """Id of a coordinate tuple in make_abelian(factors), left-major."""
    i = 0
    for c, f in zip(coords, factors):
        i = i * f + (int(c) % f)
    return i


def abelian_id_to_coords(i: int, factors) -> tuple[int, ...]:
    out = []
    for f in reversed(list(factors)):
        out.append(i % f)
        i //= f
    return tuple(reversed(out))


def make_hom(source: FiniteGroup, target: FiniteGroup, generator_images) -> GroupHom:
    """The homomorphism extending source generators to the given target ids.

    Images are propagated over products of generators; any conflicting
    assignment or violated relation is rejected with a witness pair.
    """
    gen_images = [int(x) for x in generator_images]
    if len(gen_images) != len(source.generators):
        raise GroupError("need exactly one image per declared generator")
    images = np.full(source.order, -1, dtype=np.int64)
    images[0] = 0
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g, img in zip(source.generators, gen_images):
            y = source.mul(x, g)
            fy = target.mul(int(images[x]), img)
            if images[y] < 0:
                images[y] = fy
                frontier.append(y)
            elif images[y] != fy:
                raise GroupError(
                    f"generator images violate a relation at pair ({x}, {g})"
                )
    return GroupHom(source, target, images)


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, np.arange(g.order), check=False)


def trivial_hom(source: FiniteGroup, target: FiniteGroup) -> GroupHom:
    return GroupHom(source, target, np.zeros(source.order, dtype=np.int64), check=False)


def all_homs(source: FiniteGroup, target: FiniteGroup) -> list[GroupHom]:
    """Every homomorphism source -> target, by exhaustive generator images."""
    from itertools import product as iproduct

    out = []
    for imgs in iproduct(range(target.order), repeat=len(source.generators)):
        try:
            out.append(make_hom(source, target, imgs))
        except GroupError:
            continue
    return out


_ORDER_LABELS = {
    (6, False): "S3",
    (10, False): "D10",
    (14, False): "D14",
}

_NONABELIAN_MULTISETS = {
    (8, (1, 2, 2, 2, 2, 2, 4, 4)): "D8",
    (8, (1, 2, 4, 4, 4, 4, 4, 4)): "Q8",
    (12, (1, 2, 2, 2, 2, 2, 2, 2, 3, 3, 6, 6)): "D12",
    (12, (1, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3)): "A4",
    (12, (1, 2, 3, 3, 4, 4, 4, 4, 4, 4, 6, 6)): "Dic12",
}

_SPECIAL_ABELIAN = {
    (2, 2): "V4",
    (2, 2, 2): "E8",
    (2, 2, 2, 2): "E16",
}


def fingerprint_small_group(g: FiniteGroup) -> str:
    """A canonical label for |G| <= 16 from (order, abelian?, element orders).

    The triple separates all groups of order <= 8 and all abelian types up
    to order 16; nonabelian groups of order 16 get a stable descriptive
    label that is not a complete isomorphism invariant.
    """
    if g.order > 16:
        raise GroupError(f"fingerprint unsupported for order {g.order} > 16")
    n = g.order
    if n == 1:
        return "trivial"
    orders = tuple(sorted(g.element_orders()))
    if g.is_abelian():
        factors = _abelian_invariant_factors(g)
        if factors in _SPECIAL_ABELIAN:
            return _SPECIAL_ABELIAN[factors]
        if len(factors) == 1:
            return f"Z{factors[0]}"
        return "x".join(f"Z{f}" for f in reversed(factors))
    if (n, False) in _ORDER_LABELS:
        return _ORDER_LABELS[(n, False)]
    if (n, orders) in _NONABELIAN_MULTISETS:
        return _NONABELIAN_MULTISETS[(n, orders)]
    return f"nonabelian{n}[{','.join(map(str, orders))}]"


def _abelian_invariant_factors(g: FiniteGroup) -> tuple[int, ...]:
    """Invariant factors (ascending divisibility) of an abelian group.

    For each prime p, #{x : x^(p^k) = e} jumps by a factor of p for every
    cyclic p-component of exponent >= k, which recovers the exponent
    multiset; per-prime lists are then right-aligned into factors.
    """
    orders = g.element_orders()
    per_prime: dict[int, list[int]] = {}
    for p in _prime_factors(g.order):
        counts = [1]
        while True:
            k = len(counts)
            c = sum(1 for o in orders if p**k % o == 0)
            counts.append(c)
            if c == counts[-2]:
                break
        num_ge = [
            _log_int(counts[k] // counts[k - 1], p) for k in range(1, len(counts))
        ]
        exps: list[int] = []
        for k in range(len(num_ge), 0, -1):
            exact = num_ge[k - 1] - (num_ge[k] if k < len(num_ge) else 0)
            exps = [k] * exact + exps
        per_prime[p] = exps  # ascending
    width = max(len(v) for v in per_prime.values())
    factors = []
    for i in range(width):
        f = 1
        for p, es in per_prime.items():
            pad = width - len(es)
            if i >= pad:
                f *= p ** es[i - pad]
        factors.append(f)
    return tuple(f for f in factors if f > 1)


def _log_int(x: int, p: int) -> int:
    k = 0
    while x > 1:
        x //= p
        k += 1
    return k


def _prime_factors(n: int) -> list[int]:
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


def conjugate_relabeling(g: FiniteGroup, perm) -> FiniteGroup:
    """The same abstract group with elements renamed by a permutation fixing 0."""
    perm = np.asarray(perm, dtype=np.int64)
    if perm[0] != 0 or sorted(perm.tolist()) != list(range(g.order)):
        raise GroupError("relabeling must be a permutation fixing the identity")
    inv = np.empty_like(perm)
    inv[perm] = np.arange(g.order)
    table = perm[g.table[inv][:, inv]]
    gens = tuple(int(perm[x]) for x in g.generators)
    return FiniteGroup(table, gens, f"{g.name}~", None)
