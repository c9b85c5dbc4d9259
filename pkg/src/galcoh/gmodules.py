"""Finite abelian coefficient modules with a group action.

A module is Z/d1 x ... x Z/dk; the action is given by one integer matrix per
group generator and extended to an exact per-element table.  Matrices act on
coordinate columns, row i taken mod d_i; well-definedness requires
d_i | a_ij * d_j for every entry.
"""

from __future__ import annotations

import hashlib
import math

import numpy as np

from .groups import FiniteGroup, GroupError, GroupHom, make_cyclic
from .zmodlin import kernel_of

_gamma_real_cache: FiniteGroup | None = None


def gamma_real() -> FiniteGroup:
    """The order-2 group generated by complex conjugation."""
    global _gamma_real_cache
    if _gamma_real_cache is None:
        g = make_cyclic(2, name="Gamma_R")
        g.labels = ["1", "conj"]
        _gamma_real_cache = g
    return _gamma_real_cache


class ModuleError(ValueError):
    pass


class GModule:
    """A finite abelian group with a left action of a FiniteGroup."""

    def __init__(self, group: FiniteGroup, factors, action_table, name: str = "A"):
        factors = tuple(int(f) for f in factors)
        if any(f < 1 for f in factors):
            raise ModuleError("factors must be positive")
        k = len(factors)
        act = np.asarray(action_table, dtype=np.int64)
        if act.shape != (group.order, k, k):
            raise ModuleError("need one k x k matrix per group element")
        fac = np.array(factors, dtype=np.int64)
        act = act % fac[:, None] if k else act
        self.group = group
        self.factors = factors
        self.action_table = act
        self.action_table.flags.writeable = False
        self.name = name
        self.exponent = math.lcm(*factors) if factors else 1
        self._validate()
        self._key = hashlib.sha1(
            group.key().encode()
            + repr(factors).encode()
            + self.action_table.tobytes()
        ).hexdigest()

    def _validate(self) -> None:
        k = len(self.factors)
        if k == 0:
            return
        fac = np.array(self.factors, dtype=np.int64)
        # well-definedness: d_i | a_ij * d_j
        prod = self.action_table * fac[None, None, :]
        if (prod % fac[None, :, None]).any():
            raise ModuleError("an action matrix does not respect the factor moduli")
        # invertibility: the action matrix, rescaled into Z/exponent
        # coordinates, must kill no nonzero module element
        m = self.exponent
        scale = m // fac
        for g in self.group.generators:
            mat = ((self.action_table[g] * scale[:, None]) // scale[None, :]) % m
            constraints = np.vstack([mat, np.diag(fac)])
            ker = kernel_of([constraints], k, m)
            if ker.shape[0]:
                raise ModuleError(
                    f"action of generator {g} is not invertible on the module"
                )
        # homomorphism law action(a*b) = action(a) . action(b), exhaustively
        t = self.group.table
        for a in range(self.group.order):
            comp = np.einsum("ij,njk->nik", self.action_table[a], self.action_table)
            diff = (comp - self.action_table[t[a]]) % fac[None, :, None]
            if diff.any():
                b = int(np.argwhere(diff.any(axis=(1, 2)))[0][0])
                raise ModuleError(f"action law fails at pair ({a}, {b})")

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def size(self) -> int:
        return math.prod(self.factors)

    @property
    def is_trivial_action(self) -> bool:
        eye = np.broadcast_to(
            np.eye(self.rank, dtype=np.int64), self.action_table.shape
        )
        fac = np.array(self.factors, dtype=np.int64)
        return not ((self.action_table - eye) % fac[None, :, None]).any()

    def act(self, g: int, values: np.ndarray) -> np.ndarray:
        """Apply the action of g to value rows (shape (..., k))."""
        fac = np.array(self.factors, dtype=np.int64)
        return (values @ self.action_table[g].T) % fac

    def reduce(self, values: np.ndarray) -> np.ndarray:
        fac = np.array(self.factors, dtype=np.int64)
        return np.asarray(values, dtype=np.int64) % fac

    def key(self) -> str:
        return self._key

    def __eq__(self, other):
        return isinstance(other, GModule) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        shape = " x ".join(f"Z/{f}" for f in self.factors) or "0"
        return f"GModule({shape} over {self.group.name})"


def make_module(
    group: FiniteGroup,
    invariant_factors,
    generator_matrices="trivial",
    name: str = "A",
) -> GModule:
    """Build a GModule from matrices for the declared group generators.

    The per-element action table is derived by extending generator matrices
    over products; conflicts along different generator words are rejected.
    """
    factors = tuple(int(f) for f in invariant_factors)
    k = len(factors)
    n = group.order
    if generator_matrices == "trivial":
        generator_matrices = [np.eye(k, dtype=np.int64)] * len(group.generators)
    mats = [np.asarray(m, dtype=np.int64) for m in generator_matrices]
    if len(mats) != len(group.generators):
        raise ModuleError("need one matrix per declared group generator")
    if k == 0:
        return GModule(group, factors, np.zeros((n, 0, 0), dtype=np.int64), name)
    fac = np.array(factors, dtype=np.int64)
    # reject non-invertible generator matrices before extending over words
    m = math.lcm(*factors)
    scale = m // fac
    for g, mat in zip(group.generators, mats):
        if mat.shape != (k, k):
            raise ModuleError("generator matrices must be k x k")
        if ((mat * fac[None, :]) % fac[:, None]).any():
            raise ModuleError("a generator matrix does not respect the factor moduli")
        scaled = ((mat * scale[:, None]) // scale[None, :]) % m
        if kernel_of([np.vstack([scaled, np.diag(fac)])], k, m).shape[0]:
            raise ModuleError(f"matrix for generator {g} is not invertible")
    table = np.zeros((n, k, k), dtype=np.int64)
    table[0] = np.eye(k, dtype=np.int64)
    assigned = np.zeros(n, dtype=bool)
    assigned[0] = True
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g, mat in zip(group.generators, mats):
            y = group.mul(x, g)
            prod = (table[x] @ mat) % fac[:, None]
            if not assigned[y]:
                table[y] = prod
                assigned[y] = True
                frontier.append(y)
            elif ((table[y] - prod) % fac[:, None]).any():
                raise ModuleError(
                    f"generator matrices violate a relation at pair ({x}, {g})"
                )
    return GModule(group, factors, table, name)


def trivial_module(group: FiniteGroup, factors, name: str | None = None) -> GModule:
    factors = tuple(int(f) for f in factors)
    return make_module(
        group,
        factors,
        "trivial",
        name or ("Z/" + "xZ/".join(str(f) for f in factors)),
    )


def mu_m_real(m: int) -> GModule:
    """Roots of unity of order m as a module over the real Galois group:
    conjugation inverts, so the generator acts by multiplication by m - 1."""
    if m < 1:
        raise ModuleError("m must be positive")
    return make_module(gamma_real(), [m], [[[m - 1]]], name=f"mu_{m}")


def pullback_module(f: GroupHom, module: GModule, name: str | None = None) -> GModule:
    """The same abelian group with h acting as f(h) did."""
    if f.target != module.group:
        raise ModuleError("homomorphism target must be the module's group")
    table = module.action_table[f.images]
    return GModule(
        f.source, module.factors, table, name or f"{module.name}|{f.source.name}"
    )


class ModuleHom:
    """An equivariant homomorphism between modules over the same group."""

    def __init__(self, source: GModule, target: GModule, matrix):
        if source.group != target.group:
            raise ModuleError("modules live over different groups")
        mat = np.asarray(matrix, dtype=np.int64)
        if mat.shape != (target.rank, source.rank):
            raise ModuleError("matrix shape must be (target rank, source rank)")
        tfac = np.array(target.factors, dtype=np.int64)
        sfac = np.array(source.factors, dtype=np.int64)
        if ((mat * sfac[None, :]) % tfac[:, None]).any():
            raise ModuleError("matrix does not respect the factor moduli")
        mat = mat % tfac[:, None]
        for g in source.group.generators:
            lhs = (target.action_table[g] @ mat) % tfac[:, None]
            rhs = (mat @ source.action_table[g]) % tfac[:, None]
            if (lhs != rhs).any():
                raise ModuleError(f"not equivariant for generator {g}")
        self.source = source
        self.target = target
        self.matrix = mat
        self.matrix.flags.writeable = False

    def apply(self, values: np.ndarray) -> np.ndarray:
        """Apply to value rows (shape (..., source.rank))."""
        tfac = np.array(self.target.factors, dtype=np.int64)
        return (np.asarray(values, dtype=np.int64) @ self.matrix.T) % tfac
