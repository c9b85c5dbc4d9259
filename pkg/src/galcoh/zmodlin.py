"""Exact linear algebra over Z/M.

Row-echelon (Howell) forms, kernels, linear solving, Smith normal form and
quotient presentations of finite abelian groups given by generators and
relations.  All matrices are numpy integer arrays with entries reduced into
[0, M); a matrix A acts on column vectors as A @ x, while spans are always
spans of *rows*.

The Howell form is the workhorse: unlike a plain echelon form over Z/M it is
span-saturated (every span element whose leading coordinates vanish is a
combination of the trailing rows), which is what makes membership tests and
kernel extraction complete over non-field moduli.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

DTYPE = np.int64

# float64 matmul is exact while inner_dim * (M-1)^2 stays below 2^52
_EXACT_MATMUL_BOUND = 2**52


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) = x*a + y*b and g >= 0."""
    old_r, r = int(a), int(b)
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def inverse_mod(a: int, m: int) -> int:
    g, x, _ = xgcd(a % m, m)
    if g != 1:
        raise ValueError(f"{a} is not invertible modulo {m}")
    return x % m


def unit_scaling_to_gcd(a: int, m: int) -> int:
    """A unit u modulo m with u*a ≡ gcd(a, m) (mod m)."""
    a %= m
    if a == 0:
        return 1
    g = math.gcd(a, m)
    a1 = a // g
    m1 = m // g
    u = inverse_mod(a1 % m1, m1) if m1 > 1 else 1
    # lift u to a unit mod m; a residue coprime to m1 always has such a lift
    for _ in range(g + 1):
        if math.gcd(u, m) == 1:
            return u % m
        u += m1
    raise AssertionError("no unit lift found")


def _as_matrix(a, ncols: int | None = None) -> np.ndarray:
    mat = np.asarray(a, dtype=DTYPE)
    if mat.ndim != 2:
        if mat.size == 0:
            mat = mat.reshape(0, ncols if ncols is not None else 0)
        else:
            raise ValueError("expected a 2-D array")
    return mat


def howell_form(a, m: int, reduce_above: bool = True) -> tuple[np.ndarray, list[int]]:
    """Canonical span form of the rows of `a` over Z/m.

    Returns (rows, pivot_cols): an echelon matrix without zero rows whose row
    span over Z/m equals that of `a`.  Each pivot entry divides m, entries in
    a pivot column above the pivot are reduced below it (skipped when
    reduce_above is False; the span and pivots are unaffected), and the form
    is saturated: for every x in the span with x[:j] = 0, x is a combination
    of the returned rows with pivot column >= j.
    """
    if m < 1:
        raise ValueError("modulus must be positive")
    mat = _as_matrix(a) % m
    ncols = mat.shape[1]
    if m == 1 or mat.size == 0:
        return np.zeros((0, ncols), dtype=DTYPE), []
    if mat.size > 200_000:
        return _howell_form_fast(mat, m, reduce_above)
    mat = mat[mat.any(axis=1)]
    out_rows: list[np.ndarray] = []
    out_pivots: list[int] = []
    extra: list[np.ndarray] = []  # shadow rows awaiting processing
    alive = list(range(mat.shape[0]))
    for col in range(ncols):
        while True:
            rows_here = [i for i in alive if mat[i, col]] + [
                -1 - j for j, r in enumerate(extra) if r[col]
            ]
            if not rows_here:
                break

            def _entry(ref: int) -> int:
                return int(mat[ref, col]) if ref >= 0 else int(extra[-1 - ref][col])

            def _row(ref: int) -> np.ndarray:
                return mat[ref] if ref >= 0 else extra[-1 - ref]

            def _set_row(ref: int, val: np.ndarray) -> None:
                if ref >= 0:
                    mat[ref] = val
                else:
                    extra[-1 - ref] = val

            gcds = [math.gcd(_entry(r), m) for r in rows_here]
            kpos = min(range(len(rows_here)), key=gcds.__getitem__)
            kref = rows_here[kpos]
            p = gcds[kpos]
            bad = [r for r in rows_here if r != kref and _entry(r) % p]
            if bad:
                # gcd-combine two rows with a unimodular 2x2 transform
                jref = bad[0]
                e1, e2 = _entry(kref), _entry(jref)
                g, x, y = xgcd(e1, e2)
                r1 = (x * _row(kref) + y * _row(jref)) % m
                r2 = ((e1 // g) * _row(jref) - (e2 // g) * _row(kref)) % m
                _set_row(kref, r1)
                _set_row(jref, r2)
                continue
            u = unit_scaling_to_gcd(_entry(kref), m)
            piv = (_row(kref) * u) % m
            for r in rows_here:
                if r == kref:
                    continue
                q = _entry(r) // p
                _set_row(r, (_row(r) - q * piv) % m)
            if kref >= 0:
                alive.remove(kref)
            else:
                extra.pop(-1 - kref)
            out_rows.append(piv)
            out_pivots.append(col)
            if p > 1:
                shadow = ((m // p) * piv) % m
                if shadow.any():
                    extra.append(shadow)
            break
    if not out_rows:
        return np.zeros((0, ncols), dtype=DTYPE), []
    h = np.vstack(out_rows)
    if reduce_above:
        _reduce_above_pivots(h, out_pivots, m)
    return h, out_pivots


def _reduce_above_pivots(h: np.ndarray, pivots: list[int], m: int) -> None:
    for j in range(1, len(pivots)):
        pc = pivots[j]
        p = int(h[j, pc])
        q = h[:j, pc] // p
        if q.any():
            h[:j] = (h[:j] - np.outer(q, h[j])) % m


def _howell_form_fast(
    mat: np.ndarray, m: int, reduce_above: bool
) -> tuple[np.ndarray, list[int]]:
    """Vectorized Howell form for large dense matrices.

    Same contract as howell_form; optimized around numpy whole-row updates
    and a preallocated row buffer (one extra slot per pivot for its shadow).
    """
    ncols = mat.shape[1]
    mat = mat[mat.any(axis=1)]
    nrows = mat.shape[0]
    buf = np.zeros((nrows + ncols, ncols), dtype=DTYPE)
    buf[:nrows] = mat
    used = nrows
    alive = np.arange(nrows)
    out_rows: list[np.ndarray] = []
    out_pivots: list[int] = []
    for col in range(ncols):
        while True:
            colvals = buf[alive, col]
            nzpos = np.flatnonzero(colvals)
            if nzpos.size == 0:
                break
            vals = colvals[nzpos]
            gcds = np.gcd(vals, m)
            kpos = int(np.argmin(gcds))
            p = int(gcds[kpos])
            kidx = int(alive[nzpos[kpos]])
            bad = np.flatnonzero(vals % p)
            if bad.size:
                jidx = int(alive[nzpos[int(bad[0])]])
                e1, e2 = int(buf[kidx, col]), int(buf[jidx, col])
                g, x, y = xgcd(e1, e2)
                r1 = (x * buf[kidx] + y * buf[jidx]) % m
                r2 = ((e1 // g) * buf[jidx] - (e2 // g) * buf[kidx]) % m
                buf[kidx] = r1
                buf[jidx] = r2
                continue
            u = unit_scaling_to_gcd(int(buf[kidx, col]), m)
            piv = (buf[kidx] * u) % m
            fix = alive[nzpos]
            fix = fix[fix != kidx]
            if fix.size:
                q = buf[fix, col] // p
                buf[fix] = (buf[fix] - np.outer(q, piv)) % m
            alive = alive[alive != kidx]
            out_rows.append(piv)
            out_pivots.append(col)
            if p > 1:
                shadow = ((m // p) * piv) % m
                if shadow.any():
                    buf[used] = shadow
                    alive = np.append(alive, used)
                    used += 1
            break
    if not out_rows:
        return np.zeros((0, ncols), dtype=DTYPE), []
    h = np.vstack(out_rows)
    if reduce_above:
        _reduce_above_pivots(h, out_pivots, m)
    return h, out_pivots


def matmul_mod(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    """Exact (a @ b) % m using BLAS float64 when safe."""
    a = np.ascontiguousarray(a, dtype=DTYPE) % m
    b = np.ascontiguousarray(b, dtype=DTYPE) % m
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=DTYPE)
    if a.shape[1] * (m - 1) ** 2 < _EXACT_MATMUL_BOUND:
        c = a.astype(np.float64) @ b.astype(np.float64)
        return np.rint(c).astype(DTYPE) % m
    return (a @ b) % m


@dataclass
class LinearSystem:
    """Solver for A @ x = b over Z/m, with the kernel of A on the side.

    Built from the Howell form of [A^T | I]: rows split into image rows
    (u, t) with A @ t = u != 0 and kernel rows (0, t) with A @ t = 0.
    """

    m: int
    nrows: int  # dimension of b
    ncols: int  # dimension of x
    image: np.ndarray  # r x nrows, Howell basis of the column space (as rows)
    witness: np.ndarray  # r x ncols, A @ witness[i] = image[i]
    pivots: list[int]
    kernel: np.ndarray  # rows generate {x : A @ x = 0}

    def solve(self, b) -> np.ndarray | None:
        """Some x with A @ x ≡ b (mod m), or None when b is not in the image."""
        w = np.asarray(b, dtype=DTYPE).reshape(-1) % self.m
        if w.shape[0] != self.nrows:
            raise ValueError("right-hand side has wrong length")
        x = np.zeros(self.ncols, dtype=DTYPE)
        for i, pc in enumerate(self.pivots):
            v = int(w[pc])
            if v == 0:
                continue
            p = int(self.image[i, pc])
            if v % p:
                return None
            q = v // p
            w = (w - q * self.image[i]) % self.m
            x = (x + q * self.witness[i]) % self.m
        if w.any():
            return None
        return x

    def contains(self, b) -> bool:
        return self.solve(b) is not None


def linear_system(a, m: int, ncols: int | None = None) -> LinearSystem:
    mat = _as_matrix(a, ncols)
    nrows, ncols = mat.shape
    aug = np.hstack([mat.T, np.eye(ncols, dtype=DTYPE)]) if ncols else np.zeros(
        (0, nrows), dtype=DTYPE
    )
    h, piv = howell_form(aug, m, reduce_above=False)
    is_img = np.array([pc < nrows for pc in piv], dtype=bool)
    img = h[is_img, :nrows] if h.size else np.zeros((0, nrows), dtype=DTYPE)
    wit = h[is_img, nrows:] if h.size else np.zeros((0, ncols), dtype=DTYPE)
    ker = h[~is_img, nrows:] if h.size else np.zeros((0, ncols), dtype=DTYPE)
    return LinearSystem(
        m=m,
        nrows=nrows,
        ncols=ncols,
        image=img,
        witness=wit,
        pivots=[pc for pc, f in zip(piv, is_img) if f],
        kernel=ker,
    )


def kernel_of(constraints, dim: int, m: int) -> np.ndarray:
    """Rows generating {x in (Z/m)^dim : C @ x ≡ 0 for every constraint row C}.

    `constraints` is an iterable of row-batch matrices, so very tall
    constraint systems never need materializing.  The kernel basis is
    refined batch by batch; each refinement works in the coordinates of the
    current basis, which keeps the expensive eliminations at most
    dim x dim sized.
    """
    basis = np.eye(dim, dtype=DTYPE)
    for batch in constraints:
        if basis.shape[0] == 0:
            break
        c = _as_matrix(batch, dim) % m
        c = c[c.any(axis=1)]
        if c.shape[0] == 0:
            continue
        e = matmul_mod(c, basis.T, m)
        e = e[e.any(axis=1)]
        if e.shape[0] == 0:
            continue
        lam = linear_system(e, m).kernel
        basis = matmul_mod(lam, basis, m)
    h, _ = howell_form(basis, m)
    return h


def smith_normal_form(a, m: int) -> tuple[list[int], np.ndarray, np.ndarray]:
    """Diagonalize the rows-as-relations matrix `a` over Z/m.

    Returns (diag, v, vinv) with U @ a @ v diagonal for some invertible U
    (not tracked), v @ vinv ≡ I, diag entries dividing m and forming a
    divisibility chain diag[i] | diag[i+1].
    """
    w = _as_matrix(a) % m
    r, c = w.shape
    v = np.eye(c, dtype=DTYPE)
    vinv = np.eye(c, dtype=DTYPE)

    def col_combine(i: int, j: int, x: int, y: int, e1g: int, e2g: int) -> None:
        # (col_i, col_j) <- (x*col_i + y*col_j, e1g*col_j - e2g*col_i)
        for mtx in (w, v):
            ci = mtx[:, i].copy()
            cj = mtx[:, j].copy()
            mtx[:, i] = (x * ci + y * cj) % m
            mtx[:, j] = (e1g * cj - e2g * ci) % m
        ri = vinv[i].copy()
        rj = vinv[j].copy()
        vinv[i] = (e1g * ri + e2g * rj) % m
        vinv[j] = (x * rj - y * ri) % m

    def col_addmul(src: int, dst: int, coef: int) -> None:
        # col_dst += coef * col_src
        w[:, dst] = (w[:, dst] + coef * w[:, src]) % m
        v[:, dst] = (v[:, dst] + coef * v[:, src]) % m
        vinv[src] = (vinv[src] - coef * vinv[dst]) % m

    def col_swap(i: int, j: int) -> None:
        for mtx in (w, v):
            mtx[:, [i, j]] = mtx[:, [j, i]]
        vinv[[i, j]] = vinv[[j, i]]

    t = 0
    limit = min(r, c)
    while t < limit:
        block = w[t:, t:]
        if not block.any():
            break
        gcds = np.gcd(block, m)
        gcds[block == 0] = m + 1
        bi, bj = np.unravel_index(int(np.argmin(gcds)), block.shape)
        if bi:
            w[[t, t + bi]] = w[[t + bi, t]]
        if bj:
            col_swap(t, t + bj)
        while True:
            p = math.gcd(int(w[t, t]), m)
            colv = w[t + 1 :, t]
            rowv = w[t, t + 1 :]
            # make the pivot entry the gcd of everything it must clear
            bad_row = np.flatnonzero(colv % p)
            if bad_row.size:
                i = t + 1 + int(bad_row[0])
                e1, e2 = int(w[t, t]), int(w[i, t])
                g, x, y = xgcd(e1, e2)
                rt = (x * w[t] + y * w[i]) % m
                ri = ((e1 // g) * w[i] - (e2 // g) * w[t]) % m
                w[t], w[i] = rt, ri
                continue
            bad_col = np.flatnonzero(rowv % p)
            if bad_col.size:
                j = t + 1 + int(bad_col[0])
                e1, e2 = int(w[t, t]), int(w[t, j])
                g, x, y = xgcd(e1, e2)
                col_combine(t, j, x, y, e1 // g, e2 // g)
                continue
            u = unit_scaling_to_gcd(int(w[t, t]), m)
            w[t] = (w[t] * u) % m
            q = colv // p
            nz = np.flatnonzero(q)
            if nz.size:
                w[t + 1 :][nz] = (w[t + 1 :][nz] - np.outer(q[nz], w[t])) % m
            qr = rowv // p
            for off in np.flatnonzero(qr):
                col_addmul(t, t + 1 + int(off), -int(qr[off]))
            rest = w[t + 1 :, t + 1 :]
            stray = np.flatnonzero(rest % p)
            if stray.size:
                # fold an offending column into the pivot column and redo
                _, j = np.unravel_index(int(stray[0]), rest.shape)
                col_addmul(t + 1 + int(j), t, 1)
                continue
            break
        t += 1
    diag = [math.gcd(int(w[i, i]), m) for i in range(limit)]
    return diag, v, vinv


@dataclass
class QuotientPresentation:
    """Z/B for subgroups B <= Z <= (Z/m)^n given by generating rows.

    factors are the cyclic orders (> 1, each dividing the next) of the
    quotient; reps are ambient representatives of the factor generators;
    coordinates() expresses any element of Z in those factors.
    """

    m: int
    factors: list[int]
    reps: np.ndarray
    _gen_system: LinearSystem = field(repr=False)
    _v: np.ndarray = field(repr=False)
    _kept: list[int] = field(repr=False)

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    def coordinates(self, vec) -> tuple[int, ...] | None:
        """Coordinates of vec + B in the factor decomposition; None if vec not in Z."""
        lam = self._gen_system.solve(vec)
        if lam is None:
            return None
        y = matmul_mod(lam.reshape(1, -1), self._v, self.m)[0]
        return tuple(int(y[i]) % f for i, f in zip(self._kept, self.factors))


def quotient_presentation(gens, subgens, m: int) -> QuotientPresentation:
    """Present span(gens)/span(subgens) over Z/m; subgens must lie in span(gens)."""
    gens = _as_matrix(gens)
    subgens = _as_matrix(subgens, gens.shape[1])
    z = gens.shape[0]
    gen_system = linear_system(gens.T, m)
    if z == 0:
        return QuotientPresentation(
            m=m,
            factors=[],
            reps=np.zeros((0, gens.shape[1]), dtype=DTYPE),
            _gen_system=gen_system,
            _v=np.zeros((0, 0), dtype=DTYPE),
            _kept=[],
        )
    mus = []
    for b in subgens:
        lam = gen_system.solve(b)
        if lam is None:
            raise ValueError("subgroup generator outside the ambient span")
        mus.append(lam)
    rel_parts = [gen_system.kernel] + ([np.vstack(mus)] if mus else [])
    rel = np.vstack([p for p in rel_parts if p.size]) if any(
        p.size for p in rel_parts
    ) else np.zeros((0, z), dtype=DTYPE)
    diag, v, vinv = smith_normal_form(rel, m)
    factors_all = [d if d else m for d in diag] + [m] * (z - len(diag))
    kept = [i for i, f in enumerate(factors_all) if f > 1]
    factors = [factors_all[i] for i in kept]
    reps = matmul_mod(vinv[kept], gens, m) if kept else np.zeros(
        (0, gens.shape[1]), dtype=DTYPE
    )
    return QuotientPresentation(
        m=m,
        factors=factors,
        reps=reps,
        _gen_system=gen_system,
        _v=v,
        _kept=kept,
    )
