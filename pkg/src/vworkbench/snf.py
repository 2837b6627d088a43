"""Exact integer and field linear algebra.

Matrices are sparse integer matrices (column dictionaries).  Everything is
exact: Python ints for Z and F_p, fraction-free integer elimination for
ranks over Q.  Smith elimination uses min-magnitude pivoting with a mild
fill heuristic, which keeps entry growth tame on the near-unimodular
differentials produced elsewhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import ResourceLimitError


class IntMat:
    """Sparse integer matrix stored as one dict {row: value} per column."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows, ncols, cols=None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = [dict() for _ in range(ncols)] if cols is None else cols

    @staticmethod
    def from_dense(rows) -> "IntMat":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        cols = [dict() for _ in range(ncols)]
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                if v:
                    cols[c][r] = int(v)
        return IntMat(nrows, ncols, cols)

    def set(self, r, c, v):
        if v:
            self.cols[c][r] = v
        else:
            self.cols[c].pop(r, None)

    def nnz(self):
        return sum(len(col) for col in self.cols)

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                out[r][c] = v
        return out

    def rows(self):
        rows = [dict() for _ in range(self.nrows)]
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                rows[r][c] = v
        return rows

    def transpose(self) -> "IntMat":
        t = IntMat(self.ncols, self.nrows)
        for c, col in enumerate(self.cols):
            for r, v in col.items():
                t.cols[r][c] = v
        return t

    def matvec(self, vec):
        out = [0] * self.nrows
        for c, x in enumerate(vec):
            if x:
                for r, v in self.cols[c].items():
                    out[r] += v * x
        return out

    def column_vector(self, c):
        out = [0] * self.nrows
        for r, v in self.cols[c].items():
            out[r] = v
        return out

    def compose_is_zero(self, inner: "IntMat") -> bool:
        """True iff self @ inner is the zero matrix."""
        for c in range(inner.ncols):
            acc = {}
            for mid, v in inner.cols[c].items():
                for r, w in self.cols[mid].items():
                    acc[r] = acc.get(r, 0) + v * w
            if any(acc.values()):
                return False
        return True


@dataclass(frozen=True)
class SNFResult:
    invariant_factors: tuple
    rank: int


def _divisibility_chain(diag):
    ds = [abs(x) for x in diag if x]
    changed = True
    while changed:
        changed = False
        for i in range(len(ds)):
            for j in range(i + 1, len(ds)):
                if ds[j] % ds[i]:
                    g = gcd(ds[i], ds[j])
                    ds[i], ds[j] = g, ds[i] * ds[j] // g
                    changed = True
    ds.sort()
    return ds


def smith_invariant_factors(mat: IntMat, max_steps=None):
    """Invariant factors of an integer matrix, smallest first."""
    rows = [dict() for _ in range(mat.nrows)]
    cols = [dict(col) for col in mat.cols]
    for c, col in enumerate(cols):
        for r, v in col.items():
            rows[r][c] = v
    live_rows = {r for r in range(mat.nrows) if rows[r]}
    live_cols = {c for c in range(mat.ncols) if cols[c]}

    def addmul_row(dst, src, m):
        rd = rows[dst]
        for c, v in rows[src].items():
            nv = rd.get(c, 0) + m * v
            if nv:
                rd[c] = nv
                cols[c][dst] = nv
            else:
                rd.pop(c, None)
                cols[c].pop(dst, None)

    def addmul_col(dst, src, m):
        cd = cols[dst]
        for r, v in cols[src].items():
            nv = cd.get(r, 0) + m * v
            if nv:
                cd[r] = nv
                rows[r][dst] = nv
            else:
                cd.pop(r, None)
                rows[r].pop(dst, None)

    diag = []
    steps = 0
    while live_cols:
        # pivot choice: unit entries first, then min magnitude, then min fill
        best = None
        for c in list(live_cols):
            col = cols[c]
            if not col:
                live_cols.discard(c)
                continue
            for r, v in col.items():
                key = (abs(v) != 1, abs(v), (len(rows[r]) - 1) * (len(col) - 1), r, c)
                if best is None or key < best[0]:
                    best = (key, r, c)
        if best is None:
            break
        _, r0, c0 = best
        while True:
            steps += 1
            if max_steps is not None and steps > max_steps:
                raise ResourceLimitError("Smith elimination exceeded step cap")
            pv = rows[r0][c0]
            moved = False
            for r in list(cols[c0]):
                if r == r0:
                    continue
                q = rows[r][c0] // pv
                addmul_row(r, r0, -q)
                rem = rows[r].get(c0, 0)
                if rem:
                    r0 = r  # strictly smaller remainder becomes the pivot
                    moved = True
                    break
            if moved:
                continue
            for c in list(rows[r0]):
                if c == c0:
                    continue
                q = rows[r0][c] // pv
                addmul_col(c, c0, -q)
                rem = rows[r0].get(c, 0)
                if rem:
                    c0 = c
                    moved = True
                    break
            if not moved:
                break
        diag.append(rows[r0][c0])
        for c in list(rows[r0]):
            cols[c].pop(r0, None)
        rows[r0] = {}
        cols[c0] = {}
        live_rows.discard(r0)
        live_cols.discard(c0)
    return _divisibility_chain(diag)


def smith_normal_form(mat) -> SNFResult:
    """Invariant factors d_1 | d_2 | ... | d_r of an integer matrix."""
    if not isinstance(mat, IntMat):
        mat = IntMat.from_dense(mat)
    factors = smith_invariant_factors(mat)
    return SNFResult(tuple(factors), len(factors))


# ---------------------------------------------------------------------------
# ranks over fields

def rank_field(mat: IntMat, p=None) -> int:
    """Rank over F_p (p prime) or over Q (p=None, fraction-free)."""
    pivots = {}  # pivot col -> reduced row dict
    rank = 0
    for r_dict in mat.rows():
        row = dict(r_dict)
        if p is not None:
            row = {c: v % p for c, v in row.items() if v % p}
        while row:
            c = min(row)
            if c in pivots:
                prow = row_reduce_against(row, pivots[c], c, p)
                row = prow
            else:
                if p is None:
                    g = 0
                    for v in row.values():
                        g = gcd(g, v)
                    if g > 1:
                        row = {cc: v // g for cc, v in row.items()}
                pivots[c] = row
                rank += 1
                break
    return rank


def row_reduce_against(row, prow, c, p):
    f = row[c]
    pv = prow[c]
    out = {}
    if p is None:
        # integer fraction-free: row*pv - prow*f, then strip content
        for cc, v in row.items():
            out[cc] = v * pv
        for cc, v in prow.items():
            nv = out.get(cc, 0) - v * f
            if nv:
                out[cc] = nv
            else:
                out.pop(cc, None)
        g = 0
        for v in out.values():
            g = gcd(g, v)
        if g > 1:
            out = {cc: v // g for cc, v in out.items()}
    else:
        m = f * pow(pv, -1, p) % p
        out = dict(row)
        for cc, v in prow.items():
            nv = (out.get(cc, 0) - m * v) % p
            if nv:
                out[cc] = nv
            else:
                out.pop(cc, None)
    out.pop(c, None)
    return out


def rank_over(mat: IntMat, ring) -> int:
    from .rings import PrimeField

    if isinstance(ring, PrimeField):
        return rank_field(mat, ring.p)
    return rank_field(mat, None)


# ---------------------------------------------------------------------------
# dense Smith with transforms, integer kernels and solves

def snf_transforms(dense):
    """U @ A @ V = D with U, V unimodular and D diagonal (not chained)."""
    m = len(dense)
    n = len(dense[0]) if m else 0
    D = [list(row) for row in dense]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    t = 0
    while True:
        pr = pc = None
        best = None
        for r in range(t, m):
            for c in range(t, n):
                v = D[r][c]
                if v and (best is None or abs(v) < best):
                    best, pr, pc = abs(v), r, c
        if pr is None:
            break
        if pr != t:
            D[t], D[pr] = D[pr], D[t]
            U[t], U[pr] = U[pr], U[t]
        if pc != t:
            for row in D:
                row[t], row[pc] = row[pc], row[t]
            for row in V:
                row[t], row[pc] = row[pc], row[t]
        while True:
            pv = D[t][t]
            dirty = False
            for r in range(t + 1, m):
                if D[r][t]:
                    q = D[r][t] // pv
                    if q:
                        for c in range(n):
                            D[r][c] -= q * D[t][c]
                        for c in range(m):
                            U[r][c] -= q * U[t][c]
                    if D[r][t]:
                        D[t], D[r] = D[r], D[t]
                        U[t], U[r] = U[r], U[t]
                        dirty = True
                        break
            if dirty:
                continue
            for c in range(t + 1, n):
                if D[t][c]:
                    q = D[t][c] // pv
                    if q:
                        for r in range(m):
                            D[r][c] -= q * D[r][t]
                        for r in range(n):
                            V[r][c] -= q * V[r][t]
                    if D[t][c]:
                        for r in range(m):
                            D[r][t], D[r][c] = D[r][c], D[r][t]
                        for r in range(n):
                            V[r][t], V[r][c] = V[r][c], V[r][t]
                        dirty = True
                        break
            if not dirty:
                break
        if D[t][t] < 0:
            for c in range(n):
                D[t][c] = -D[t][c]
            for c in range(m):
                U[t][c] = -U[t][c]
        t += 1
        if t >= min(m, n):
            break
    diag = [D[k][k] for k in range(min(m, n)) if D[k][k]]
    return U, D, V, diag


def kernel_basis(mat: IntMat):
    """Columns spanning the integer kernel lattice (saturated)."""
    if mat.ncols == 0:
        return []
    if mat.nrows == 0:
        return [[int(i == j) for i in range(mat.ncols)] for j in range(mat.ncols)]
    dense = mat.to_dense()
    _, D, V, diag = snf_transforms(dense)
    r = len(diag)
    n = mat.ncols
    return [[V[i][c] for i in range(n)] for c in range(r, n)]


def solve_int(mat: IntMat, b):
    """One integer solution x of mat @ x = b, or None."""
    dense = mat.to_dense()
    if mat.ncols == 0:
        return [] if not any(b) else None
    U, D, V, diag = snf_transforms(dense)
    m, n = mat.nrows, mat.ncols
    ub = [sum(U[r][k] * b[k] for k in range(m)) for r in range(m)]
    y = [0] * n
    for k in range(min(m, n)):
        d = D[k][k]
        if d:
            if ub[k] % d:
                return None
            y[k] = ub[k] // d
        elif ub[k]:
            return None
    for k in range(min(m, n), m):
        if ub[k]:
            return None
    return [sum(V[r][k] * y[k] for k in range(n)) for r in range(n)]


def _rref_mod_p(rows, width, p):
    """Dense reduced row echelon form mod p; returns (rows, pivot_cols)."""
    mat = [[v % p for v in row] for row in rows]
    pivots = []
    r0 = 0
    for c in range(width):
        pr = next((r for r in range(r0, len(mat)) if mat[r][c]), None)
        if pr is None:
            continue
        mat[r0], mat[pr] = mat[pr], mat[r0]
        inv = pow(mat[r0][c], -1, p)
        mat[r0] = [(x * inv) % p for x in mat[r0]]
        for r in range(len(mat)):
            if r != r0 and mat[r][c]:
                f = mat[r][c]
                mat[r] = [(x - f * y) % p for x, y in zip(mat[r], mat[r0])]
        pivots.append(c)
        r0 += 1
    return mat[:r0], pivots


def kernel_basis_mod_p(mat: IntMat, p):
    """Basis vectors of the kernel over F_p (dense columns)."""
    rows = [[0] * mat.ncols for _ in range(mat.nrows)]
    for c, col in enumerate(mat.cols):
        for r, v in col.items():
            rows[r][c] = v % p
    red, pivots = _rref_mod_p(rows, mat.ncols, p)
    pivot_set = set(pivots)
    out = []
    for c in range(mat.ncols):
        if c in pivot_set:
            continue
        vec = [0] * mat.ncols
        vec[c] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = (-red[r][c]) % p
        out.append(vec)
    return out


def solve_mod_p(mat: IntMat, b, p):
    """One solution of mat @ x = b over F_p, or None."""
    rows = [[0] * (mat.ncols + 1) for _ in range(mat.nrows)]
    for c, col in enumerate(mat.cols):
        for r, v in col.items():
            rows[r][c] = v % p
    for r, v in enumerate(b):
        rows[r][mat.ncols] = v % p
    red, pivots = _rref_mod_p(rows, mat.ncols, p)
    x = [0] * mat.ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][mat.ncols]
    residual = [0] * mat.nrows
    for c, col in enumerate(mat.cols):
        if x[c]:
            for r, v in col.items():
                residual[r] = (residual[r] + v * x[c]) % p
    for r, v in enumerate(b):
        if residual[r] % p != v % p:
            return None
    return x


# ---------------------------------------------------------------------------
# row lattices (Hermite-style) for subcomplex spans

def hnf_row_basis(vectors, width):
    """Echelon basis of the row lattice spanned by integer vectors.

    Returns (basis_rows, pivot_cols); rows have increasing pivot columns,
    positive pivots, and entries above each pivot reduced.
    """
    work = [list(v) for v in vectors if any(v)]
    basis = []
    pivot_cols = []
    for c in range(width):
        nz = [r for r in work if r[c]]
        rest = [r for r in work if not r[c]]
        if not nz:
            work = rest
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[c]))
            r0 = nz[0]
            keep = [r0]
            for r in nz[1:]:
                q = r[c] // r0[c]
                for k in range(c, width):
                    r[k] -= q * r0[k]
                if r[c]:
                    keep.append(r)
                elif any(r):
                    rest.append(r)
            nz = keep
        r0 = nz[0]
        if r0[c] < 0:
            r0 = [-x for x in r0]
        basis.append(r0)
        pivot_cols.append(c)
        work = rest
    for idx in range(len(basis) - 1, -1, -1):
        c = pivot_cols[idx]
        piv = basis[idx][c]
        for jdx in range(idx):
            q = basis[jdx][c] // piv
            if q:
                basis[jdx] = [x - q * y for x, y in zip(basis[jdx], basis[idx])]
    return basis, pivot_cols


def solve_in_row_lattice(basis, pivot_cols, v):
    """Integer coordinates of v in an echelon row basis, or None."""
    v = list(v)
    coords = []
    for row, c in zip(basis, pivot_cols):
        q, rem = divmod(v[c], row[c])
        if rem:
            return None
        if q:
            v = [x - q * y for x, y in zip(v, row)]
        coords.append(q)
    if any(v):
        return None
    return coords
