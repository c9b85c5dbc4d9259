"""Inhomogeneous group cochains, coboundaries and cohomology in degrees 0-2.

Cochains store a value row for every tuple of group elements (full grid,
left-major indexing).  Internally, cohomology is computed on the
identity-normalized subcomplex (cochains vanishing whenever an argument is
the identity), which carries the same cohomology with far fewer
coordinates: (|G|-1)^n tuples instead of |G|^n.

Mixed coefficient moduli Z/d1 x ... x Z/dk are handled by one exact
embedding into (Z/M)^(T*k) for M = lcm(d_i): coordinate i is scaled by
M/d_i, membership in the embedded submodule is enforced by diagonal
constraint rows d_i * e_i, and action entries rescale by d_j/d_i (integral
exactly because the action respects the moduli).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gmodules import GModule, ModuleError, ModuleHom
from .groups import FiniteGroup, GroupHom
from .zmodlin import (
    DTYPE,
    kernel_of,
    linear_system,
    matmul_mod,
    quotient_presentation,
)

MAX_GROUP_ORDER = 64
MAX_DEGREE = 2


class ResourceLimitError(RuntimeError):
    """Raised when a request exceeds the supported size bounds."""


class CohomologyError(ValueError):
    pass


class Cochain:
    """A degree-n map G^n -> A, stored on the full tuple grid.

    values has shape (|G|^n, k); the flat index of (g_1, ..., g_n) is
    sum(g_i * |G|^(n-1-i)).  Degree 0 is the single empty tuple.
    """

    def __init__(self, module: GModule, degree: int, values):
        if degree < 0 or degree > MAX_DEGREE + 1:
            raise CohomologyError(f"degree {degree} out of supported range")
        n = module.group.order
        vals = np.asarray(values, dtype=DTYPE).reshape(n**degree, module.rank)
        self.module = module
        self.degree = degree
        self.values = module.reduce(vals)
        self.values.flags.writeable = False

    @classmethod
    def zero(cls, module: GModule, degree: int) -> "Cochain":
        n = module.group.order
        return cls(module, degree, np.zeros((n**degree, module.rank), dtype=DTYPE))

    @classmethod
    def from_dict(cls, module: GModule, degree: int, entries: dict) -> "Cochain":
        """Build from {tuple_of_ids: value_tuple}; unset tuples are zero."""
        n = module.group.order
        vals = np.zeros((n**degree, module.rank), dtype=DTYPE)
        for tup, val in entries.items():
            vals[_flat_index(n, degree, tup)] = np.asarray(val, dtype=DTYPE).reshape(
                module.rank
            )
        return cls(module, degree, vals)

    def __call__(self, *gids: int) -> tuple[int, ...]:
        if len(gids) != self.degree:
            raise CohomologyError(f"expected {self.degree} arguments")
        n = self.module.group.order
        return tuple(int(v) for v in self.values[_flat_index(n, self.degree, gids)])

    def _binop_check(self, other: "Cochain") -> None:
        if self.module != other.module or self.degree != other.degree:
            raise CohomologyError("cochain mismatch")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._binop_check(other)
        return Cochain(self.module, self.degree, self.values + other.values)

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._binop_check(other)
        return Cochain(self.module, self.degree, self.values - other.values)

    def __neg__(self) -> "Cochain":
        return Cochain(self.module, self.degree, -self.values)

    def scale(self, c: int) -> "Cochain":
        return Cochain(self.module, self.degree, self.values * int(c))

    def is_zero(self) -> bool:
        return not self.values.any()

    def is_normalized(self) -> bool:
        """True when every tuple containing the identity maps to zero."""
        n = self.module.group.order
        mask = np.ones(n**self.degree, dtype=bool)
        if self.degree:
            mask[_normalized_flat_indices(n, self.degree)] = False
            return not self.values[mask].any()
        return True

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.module == other.module
            and self.degree == other.degree
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        return f"Cochain(degree={self.degree}, module={self.module!r})"


def _flat_index(n: int, degree: int, gids) -> int:
    if len(gids) != degree:
        raise CohomologyError("tuple length does not match degree")
    idx = 0
    for g in gids:
        g = int(g)
        if g < 0 or g >= n:
            raise CohomologyError(f"element id {g} out of range")
        idx = idx * n + g
    return idx


def _normalized_flat_indices(n: int, degree: int) -> np.ndarray:
    """Full-grid flat indices of the tuples with no identity component."""
    if degree == 0:
        return np.zeros(1, dtype=np.int64)
    t = (n - 1) ** degree
    ids = np.arange(t, dtype=np.int64)
    full = np.zeros(t, dtype=np.int64)
    rem = ids
    for pos in range(degree):
        w = (n - 1) ** (degree - 1 - pos)
        d = rem // w
        rem = rem % w
        full = full * n + (d + 1)
    return full


def coboundary(c: Cochain) -> Cochain:
    """The standard inhomogeneous coboundary of a degree <= 2 cochain."""
    if c.degree > MAX_DEGREE:
        raise CohomologyError("coboundary supported through degree 2 input")
    mod = c.module
    g = mod.group
    n = g.order
    k = mod.rank
    act = mod.action_table
    vals = c.values
    if c.degree == 0:
        v = vals[0]
        out = np.einsum("aij,j->ai", act, v) - v[None, :]
        return Cochain(mod, 1, out)
    if c.degree == 1:
        term0 = np.einsum("aij,bj->abi", act, vals)
        term1 = vals[g.table]
        term2 = np.broadcast_to(vals[:, None, :], (n, n, k))
        return Cochain(mod, 2, (term0 - term1 + term2).reshape(n * n, k))
    # degree 2
    v2 = vals.reshape(n, n, k)
    term0 = np.einsum("aij,bcj->abci", act, v2)
    term1 = v2[g.table]  # [a,b,c] = c(ab, c)
    a_idx = np.arange(n)[:, None, None]
    term2 = v2[a_idx, g.table[None, :, :]]  # [a,b,c] = c(a, bc)
    term3 = np.broadcast_to(v2[:, :, None, :], (n, n, n, k))
    out = term0 - term1 + term2 - term3
    return Cochain(mod, 3, out.reshape(n**3, k))


def normalize_cocycle(c: Cochain) -> tuple[Cochain, Cochain | None]:
    """An identity-normalized cocycle cohomologous to c.

    Returns (normalized, b) with normalized = c - db (b None when c was
    already normalized, e.g. always in degrees 0 and 1 for cocycles).
    """
    if c.degree != 2 or c.is_normalized():
        return c, None
    v_ee = c.values[0]  # value at (e, e)
    n = c.module.group.order
    b = Cochain(
        c.module, 1, np.broadcast_to(v_ee[None, :], (n, c.module.rank)).copy()
    )
    normalized = c - coboundary(b)
    if not normalized.is_normalized():
        raise CohomologyError("input is not a cocycle: normalization failed")
    return normalized, b


@dataclass(frozen=True)
class CohomologyClass:
    """An element of a CohomologyGroup: factor coordinates plus data."""

    parent: "CohomologyGroup"
    coordinates: tuple[int, ...]
    representative: Cochain
    witness: Cochain | None  # cobounds representative minus the basis combination

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coordinates)

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        if self.parent is not other.parent and self.parent.cache_key != other.parent.cache_key:
            raise CohomologyError("classes live in different cohomology groups")
        return self.parent.reduce(self.representative + other.representative)

    def __neg__(self) -> "CohomologyClass":
        return self.parent.reduce(-self.representative)

    def __sub__(self, other: "CohomologyClass") -> "CohomologyClass":
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, CohomologyClass)
            and self.parent.cache_key == other.parent.cache_key
            and self.coordinates == other.coordinates
        )

    def __hash__(self):
        return hash((self.parent.cache_key, self.coordinates))


class CohomologyGroup:
    """H^n(G, A) with invariant factors, representative basis and a solver."""

    def __init__(self, group, module, degree, invariant_factors, basis, internals):
        self.group = group
        self.module = module
        self.degree = degree
        self.invariant_factors = tuple(invariant_factors)
        self.basis = basis  # Cochain representatives, one per invariant factor
        self._internals = internals
        self.cache_key = (group.key(), module.key(), degree)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    def describe(self) -> str:
        """Human shape string like '(Z/2)^6', 'Z/2 x Z/4' or '0'."""
        if not self.invariant_factors:
            return "0"
        from collections import Counter

        counts = Counter(self.invariant_factors)
        parts = []
        for f in sorted(counts):
            parts.append(f"(Z/{f})^{counts[f]}" if counts[f] > 1 else f"Z/{f}")
        return " x ".join(parts)

    def zero_class(self) -> CohomologyClass:
        return self.reduce(Cochain.zero(self.module, self.degree))

    def class_from_coordinates(self, coords) -> CohomologyClass:
        if len(tuple(coords)) != len(self.invariant_factors):
            raise CohomologyError("wrong number of coordinates")
        coords = tuple(int(c) % f for c, f in zip(coords, self.invariant_factors))
        rep = Cochain.zero(self.module, self.degree)
        for c, b in zip(coords, self.basis):
            if c:
                rep = rep + b.scale(c)
        return CohomologyClass(self, coords, rep, None)

    def reduce(self, cochain: Cochain) -> CohomologyClass:
        """Express a cocycle in the invariant-factor coordinates.

        Rejects non-cocycles, reporting the first tuple where the coboundary
        is nonzero.  The returned class carries a witness b with
        db = cochain - (coordinate combination of the basis).
        """
        internals = self._internals
        if cochain.module != self.module or cochain.degree != self.degree:
            raise CohomologyError("cochain does not match this cohomology group")
        dc = coboundary(cochain)
        if not dc.is_zero():
            flat = int(np.argwhere(dc.values.any(axis=1))[0][0])
            tup = _unflatten(self.group.order, self.degree + 1, flat)
            raise CohomologyError(
                f"not a cocycle: coboundary is {dc(*tup)} at {tup}"
            )
        normalized, b0 = normalize_cocycle(cochain)
        x = internals.embed(normalized)
        coords = internals.qp.coordinates(x)
        if coords is None:
            raise AssertionError("verified cocycle missing from the kernel")
        residual = x.copy()
        for c, rep in zip(coords, internals.qp.reps):
            residual = (residual - c * rep) % internals.big_m
        wit_nat = internals.boundary_system.solve(residual)
        if wit_nat is None:
            raise AssertionError("residual of a reduced cocycle is not a coboundary")
        witness = internals.unembed_domain(wit_nat) if self.degree else None
        if b0 is not None:
            witness = witness + b0
        return CohomologyClass(self, tuple(coords), cochain, witness)

    def __repr__(self):
        return (
            f"CohomologyGroup(H^{self.degree}({self.group.name}, "
            f"{self.module.name}) = {self.describe()})"
        )


def _unflatten(n: int, degree: int, flat: int) -> tuple[int, ...]:
    out = []
    for _ in range(degree):
        out.append(flat % n)
        flat //= n
    return tuple(reversed(out))


class _Internals:
    """Scaled-embedding data shared by reduce() calls."""

    def __init__(self, module, degree, big_m, qp, boundary_system):
        self.module = module
        self.degree = degree
        self.big_m = big_m
        self.qp = qp
        self.boundary_system = boundary_system
        n = module.group.order
        fac = np.array(module.factors, dtype=DTYPE)
        self.scale = (big_m // fac) if module.rank else np.zeros(0, dtype=DTYPE)
        self.norm_idx = _normalized_flat_indices(n, degree)

    def embed(self, cochain: Cochain) -> np.ndarray:
        vals = cochain.values[self.norm_idx]
        return ((vals * self.scale[None, :]) % self.big_m).reshape(-1)

    def unembed(self, flat: np.ndarray) -> Cochain:
        """Embedded flat vector (degree-n, normalized positions) -> Cochain."""
        k = self.module.rank
        vals = flat.reshape(-1, k) // self.scale[None, :]
        n = self.module.group.order
        full = np.zeros((n**self.degree, k), dtype=DTYPE)
        full[self.norm_idx] = vals
        return Cochain(self.module, self.degree, full)

    def unembed_domain(self, nat: np.ndarray) -> Cochain:
        """Natural-coordinate flat vector over degree n-1 -> Cochain."""
        k = self.module.rank
        n = self.module.group.order
        deg = self.degree - 1
        full = np.zeros((n**deg, k), dtype=DTYPE)
        full[_normalized_flat_indices(n, deg)] = nat.reshape(-1, k)
        return Cochain(self.module, deg, full)


def _scaled_action_table(module: GModule, big_m: int) -> np.ndarray:
    fac = np.array(module.factors, dtype=DTYPE)
    scale = big_m // fac
    mats = (module.action_table * scale[None, :, None]) // scale[None, None, :]
    return mats % big_m


def _diff_batches(group, module, degree, big_m, sources=None, batch_rows=4096):
    """Yield row batches of the scaled differential C^degree -> C^(degree+1)
    on the identity-normalized subcomplex.

    `sources` restricts the first tuple slot.  Because the coboundary of a
    coboundary vanishes identically, the cocycle identity with first slot
    g1*g2 is a combination of identities with first slots g1 and g2, so for
    kernel computations the rows with first slot in a generating set already
    cut out the full cocycle space.
    """
    n = group.order
    k = module.rank
    nm1 = n - 1
    if sources is None:
        src = np.arange(1, n, dtype=np.int64)
    else:
        src = np.array(sorted({int(s) for s in sources} - {0}), dtype=np.int64)
    t_in = nm1**degree
    total = src.shape[0] * t_in
    act_scaled = _scaled_action_table(module, big_m)
    table = group.table
    karange = np.arange(k)
    eye = np.eye(k, dtype=DTYPE)
    for start in range(0, total, batch_rows):
        stop = min(start + batch_rows, total)
        rows = np.arange(start, stop, dtype=np.int64)
        nrows = rows.shape[0]
        batch = np.zeros((nrows * k, t_in * k), dtype=DTYPE)
        # gids[j]: element id in tuple slot j (0-based), all nonzero
        gids = [src[rows // t_in]]
        rem = rows % t_in
        for pos in range(degree):
            w = nm1 ** (degree - 1 - pos)
            gids.append(rem // w + 1)
            rem = rem % w

        def colidx(digs):
            c = np.zeros(nrows, dtype=np.int64)
            for d in digs:
                c = c * nm1 + (d - 1)
            return c

        def scatter(rel_rows, cols, blocks):
            if rel_rows.shape[0] == 0:
                return
            ridx = (rel_rows * k)[:, None, None] + karange[None, :, None]
            cidx = (cols * k)[:, None, None] + karange[None, None, :]
            np.add.at(batch, (ridx, cidx), blocks)

        rel = np.arange(nrows, dtype=np.int64)
        # g1 . c(g2, ..., g_{degree+1})
        scatter(rel, colidx(gids[1:]), act_scaled[gids[0]])
        # alternating merged-slot terms; identity merges leave the subcomplex
        for i in range(degree):
            merged = table[gids[i], gids[i + 1]]
            keep = merged != 0
            cols = colidx(gids[:i] + [merged] + gids[i + 2 :])
            sign = -1 if (i + 1) % 2 else 1
            scatter(rel[keep], cols[keep], sign * eye)
        # (-1)^(degree+1) c(g1, ..., g_degree)
        sign = -1 if (degree + 1) % 2 else 1
        scatter(rel, colidx(gids[:degree]), sign * eye)
        yield batch % big_m


def _constraint_batches(t_n, module, big_m, batch_rows=4096):
    """Diagonal rows d_i * e_i forcing membership in the embedded submodule."""
    k = module.rank
    fac = np.array(module.factors, dtype=DTYPE)
    if k == 0 or (fac == big_m).all():
        return
    dim = t_n * k
    facvec = np.tile(fac, t_n)
    for start in range(0, dim, batch_rows):
        stop = min(start + batch_rows, dim)
        rows = np.zeros((stop - start, dim), dtype=DTYPE)
        rows[np.arange(stop - start), np.arange(start, stop)] = facvec[start:stop]
        yield rows


def _dense_scaled_boundary(group, module, degree, big_m) -> np.ndarray:
    """The scaled map C^(degree-1) -> C^degree with natural-coordinate domain
    columns (column (s, j) additionally scaled by M/d_j)."""
    n = group.order
    k = module.rank
    t_in = (n - 1) ** (degree - 1) if degree else 0
    t_out = (n - 1) ** degree
    if degree == 0:
        return np.zeros((k, 0), dtype=DTYPE)
    blocks = [b for b in _diff_batches(group, module, degree - 1, big_m, batch_rows=1 << 30)]
    d = blocks[0] if blocks else np.zeros((t_out * k, t_in * k), dtype=DTYPE)
    fac = np.array(module.factors, dtype=DTYPE)
    colscale = np.tile(big_m // fac, t_in)
    return (d * colscale[None, :]) % big_m


_COHOMOLOGY_CACHE: dict[tuple, CohomologyGroup] = {}


def cohomology_group(
    group: FiniteGroup, module: GModule, degree: int, use_cache: bool = True
) -> CohomologyGroup:
    """H^degree(group, module) for degree in {0, 1, 2}.

    Deterministic: the basis is derived from an echelon kernel basis and a
    Smith normal form over Z/lcm(factors).
    """
    if module.group != group:
        raise CohomologyError("module is not over the given group")
    if degree not in (0, 1, 2):
        raise CohomologyError(f"degree {degree} not supported (0, 1 or 2)")
    if group.order > MAX_GROUP_ORDER:
        raise ResourceLimitError(
            f"group order {group.order} exceeds the supported bound {MAX_GROUP_ORDER}"
        )
    key = (group.key(), module.key(), degree)
    if use_cache and key in _COHOMOLOGY_CACHE:
        return _COHOMOLOGY_CACHE[key]
    big_m = module.exponent
    k = module.rank
    n = group.order
    t_n = (n - 1) ** degree
    dim = t_n * k

    def batches():
        yield from _constraint_batches(t_n, module, big_m)
        yield from _diff_batches(group, module, degree, big_m, sources=group.generators)

    if big_m == 1 or k == 0:
        zgens = np.zeros((0, max(dim, 0)), dtype=DTYPE)
        big_m_eff = max(big_m, 2)
        boundary = linear_system(np.zeros((dim, 0), dtype=DTYPE), big_m_eff)
        qp = quotient_presentation(zgens, np.zeros((0, dim), dtype=DTYPE), big_m_eff)
        internals = _Internals(module, degree, big_m_eff, qp, boundary)
        h = CohomologyGroup(group, module, degree, (), [], internals)
        if use_cache:
            _COHOMOLOGY_CACHE[key] = h
        return h
    zgens = kernel_of(batches(), dim, big_m)
    w = _dense_scaled_boundary(group, module, degree, big_m)
    boundary = linear_system(w, big_m)
    qp = quotient_presentation(zgens, boundary.image, big_m)
    internals = _Internals(module, degree, big_m, qp, boundary)
    basis = [internals.unembed(rep) for rep in qp.reps]
    h = CohomologyGroup(group, module, degree, qp.factors, basis, internals)
    if use_cache:
        _COHOMOLOGY_CACHE[key] = h
    return h


def reduce_class(h: CohomologyGroup, cochain: Cochain) -> CohomologyClass:
    return h.reduce(cochain)


def pullback_class(f: GroupHom, x: CohomologyClass) -> CohomologyClass:
    """f^* x for f: H -> G and x over G, landing over H with the pulled module."""
    from .gmodules import pullback_module

    src_group = x.parent.group
    if f.target != src_group:
        raise CohomologyError("homomorphism target must match the class's group")
    module = x.representative.module
    pulled = pullback_module(f, module)
    degree = x.parent.degree
    n_t = src_group.order
    n_s = f.source.order
    idx = np.zeros(n_s**degree, dtype=np.int64)
    rem = np.arange(n_s**degree, dtype=np.int64)
    for pos in range(degree):
        w = n_s ** (degree - 1 - pos)
        d = rem // w
        rem = rem % w
        idx = idx * n_t + f.images[d]
    vals = x.representative.values[idx]
    target_h = cohomology_group(f.source, pulled, degree)
    return target_h.reduce(Cochain(pulled, degree, vals))


def change_coefficients(phi: ModuleHom, x: CohomologyClass) -> CohomologyClass:
    """Apply an equivariant coefficient map valuewise and reduce."""
    if phi.source != x.representative.module:
        raise CohomologyError("coefficient map source does not match the class")
    degree = x.parent.degree
    vals = phi.apply(x.representative.values)
    target_h = cohomology_group(x.parent.group, phi.target, degree)
    return target_h.reduce(Cochain(phi.target, degree, vals))


def cup_product(a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    """Cup product for classes over one group with coefficients in a shared
    rank-1 trivial-action module Z/r (the ring structure used here)."""
    ga, gb = a.parent.group, b.parent.group
    if ga != gb:
        raise CohomologyError("cup product requires classes over the same group")
    ma, mb = a.representative.module, b.representative.module
    if ma != mb:
        raise CohomologyError("cup product requires a shared coefficient module")
    if ma.rank != 1 or not ma.is_trivial_action:
        raise CohomologyError(
            "cup product supported for rank-1 trivial-action coefficients only"
        )
    p, q = a.parent.degree, b.parent.degree
    if p + q > MAX_DEGREE:
        raise CohomologyError("cup product supported in total degree <= 2")
    va = a.representative.values.reshape(-1)
    vb = b.representative.values.reshape(-1)
    vals = np.outer(va, vb).reshape(-1, 1)
    target_h = cohomology_group(ga, ma, p + q)
    return target_h.reduce(Cochain(ma, p + q, vals))


@dataclass(frozen=True)
class KunnethElement:
    """One external product p1*(a) cup p2*(b) in H^2 of a direct product."""

    bidegree: tuple[int, int]
    left_index: int
    right_index: int
    cls: CohomologyClass


def kunneth_basis(
    g: FiniteGroup, h: FiniteGroup, r: int = 2
) -> tuple[FiniteGroup, list[KunnethElement]]:
    """A basis of H^2(G x H, Z/r) (trivial action, r prime) organized by
    bidegree: (2,0) and (0,2) pullbacks plus (1,1) cup products.

    Verifies that the collected classes are linearly independent and span;
    a mismatch raises CohomologyError since it signals an internal
    inconsistency rather than bad input.
    """
    from .gmodules import trivial_module
    from .groups import make_direct_product

    prod = make_direct_product(g, h)
    coeff_g = trivial_module(g, [r])
    coeff_h = trivial_module(h, [r])
    coeff_p = trivial_module(prod, [r])
    h2_prod = cohomology_group(prod, coeff_p, 2)
    elements: list[KunnethElement] = []
    h2_g = cohomology_group(g, coeff_g, 2)
    for i in range(len(h2_g.basis)):
        cls = pullback_class(prod.proj_left, h2_g.class_from_coordinates(_unit(i, h2_g)))
        elements.append(KunnethElement((2, 0), i, -1, cls))
    h1_g = cohomology_group(g, coeff_g, 1)
    h1_h = cohomology_group(h, coeff_h, 1)
    for i in range(len(h1_g.basis)):
        ca = pullback_class(prod.proj_left, h1_g.class_from_coordinates(_unit(i, h1_g)))
        for j in range(len(h1_h.basis)):
            cb = pullback_class(
                prod.proj_right, h1_h.class_from_coordinates(_unit(j, h1_h))
            )
            elements.append(KunnethElement((1, 1), i, j, cup_product(ca, cb)))
    h2_h = cohomology_group(h, coeff_h, 2)
    for j in range(len(h2_h.basis)):
        cls = pullback_class(
            prod.proj_right, h2_h.class_from_coordinates(_unit(j, h2_h))
        )
        elements.append(KunnethElement((0, 2), -1, j, cls))
    if len(elements) != len(h2_prod.invariant_factors):
        raise CohomologyError(
            "external products do not match the product cohomology dimension"
        )
    if elements:
        mat = np.array([e.cls.coordinates for e in elements], dtype=DTYPE)
        from .zmodlin import howell_form

        rank = len(howell_form(mat, r)[1])
        if rank != len(elements):
            raise CohomologyError("external products are not linearly independent")
    return prod, elements


def _unit(i: int, h: CohomologyGroup) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(len(h.invariant_factors)))
