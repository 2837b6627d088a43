"""Exact bigraded homology of the diagram complexes.

Over Z a slice group is ker/im computed from two Smith forms: the free rank
is dim - rank(out) - rank(in) and the torsion is the set of invariant
factors > 1 of the incoming differential.  Over a field only ranks enter.
Dual (cochain) groups transpose the roles of the two differentials; on the
lower diagonal j = 2i of the chord-only variants they produce the chord
diagram bialgebra dimensions, which an independent brute-force oracle on
matchings (four-term sliding relations, optional isolated-chord relations)
cross-checks.

Induced maps on homology are computed from explicit integer presentations
(kernel lattice modulo boundary image, diagonalized with transforms); a map
is flagged an isomorphism when both groups agree and the induced map is
surjective, which for finitely generated abelian groups forces bijectivity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import gcd

from .complexes import (
    DEFAULT_MAX_SLICE,
    DifferentialMatrix,
    Variant,
    differential_matrix,
    slice_basis,
)
from .diagrams import Bigrading, Diagram, Parity, total_parity
from .errors import ClosureViolationError, NotAChainMapError, ResourceLimitError
from .hopf import iso_I, iso_I_hat, make_zhat
from .lincomb import LinComb
from .relations import arnold_reduce
from .rings import QQ, ZZ, PrimeField, Ring
from .snf import (
    IntMat,
    SNFResult,
    kernel_basis,
    rank_field,
    smith_normal_form,
    snf_transforms,
    solve_int,
)

__all__ = [
    "HomologyGroup",
    "SNFResult",
    "smith_normal_form",
    "homology_group",
    "dual_homology_group",
    "chord_space_dims",
    "kunneth_compare",
    "induced_map_on_homology",
    "DiagramComplex",
    "TensorComplex",
]


@dataclass(frozen=True)
class HomologyGroup:
    """Free rank plus invariant-factor torsion: Z^r + sum_s Z/t_s."""

    free_rank: int
    torsion: tuple = ()

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        bits = []
        if self.free_rank == 1:
            bits.append("Z")
        elif self.free_rank > 1:
            bits.append(f"Z^{self.free_rank}")
        bits.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(bits) if bits else "0"

    # -- finitely generated abelian group arithmetic (for Kunneth) ---------

    def _primary(self):
        out = []
        for t in self.torsion:
            m = t
            p = 2
            while p * p <= m:
                if m % p == 0:
                    e = 0
                    while m % p == 0:
                        m //= p
                        e += 1
                    out.append(p**e)
                p += 1
            if m > 1:
                out.append(m)
        return sorted(out)

    @staticmethod
    def _from_primary(rank, primary):
        groups = {}
        for q in primary:
            p = _smallest_prime_factor(q)
            groups.setdefault(p, []).append(q)
        for p in groups:
            groups[p].sort(reverse=True)
        factors = []
        k = 0
        while True:
            fs = [groups[p][k] for p in groups if len(groups[p]) > k]
            if not fs:
                break
            f = 1
            for q in fs:
                f *= q
            factors.append(f)
            k += 1
        factors.sort()
        return HomologyGroup(rank, tuple(factors))

    def direct_sum(self, other: "HomologyGroup") -> "HomologyGroup":
        return HomologyGroup._from_primary(
            self.free_rank + other.free_rank,
            self._primary() + other._primary(),
        )

    def tensor(self, other: "HomologyGroup") -> "HomologyGroup":
        prim = []
        mine, theirs = self._primary(), other._primary()
        for q1 in mine:
            for q2 in theirs:
                g = gcd(q1, q2)
                if g > 1:
                    prim.append(g)
        prim += mine * other.free_rank
        prim += theirs * self.free_rank
        return HomologyGroup._from_primary(
            self.free_rank * other.free_rank, prim
        )

    def tor(self, other: "HomologyGroup") -> "HomologyGroup":
        prim = [
            g
            for q1 in self._primary()
            for q2 in other._primary()
            if (g := gcd(q1, q2)) > 1
        ]
        return HomologyGroup._from_primary(0, prim)


def _smallest_prime_factor(q):
    p = 2
    while p * p <= q:
        if q % p == 0:
            return p
        p += 1
    return q


TRIVIAL_GROUP = HomologyGroup(0, ())


# ---------------------------------------------------------------------------
# complex views

class DiagramComplex:
    """Chain-complex interface over one variant at one parity."""

    def __init__(self, variant, parity: Parity, max_size=DEFAULT_MAX_SLICE):
        self.variant = Variant.parse(variant)
        self.parity = parity
        self.max_size = max_size

    def dim(self, i, j) -> int:
        if j < 0:
            return 0
        return slice_basis(self.variant, self.parity, i, j, self.max_size).dim

    def matrix(self, i, j) -> IntMat:
        return differential_matrix(
            self.variant, self.parity, i, j, self.max_size
        ).mat

    def basis_lincombs(self, i, j):
        if j < 0:
            return []
        return slice_basis(
            self.variant, self.parity, i, j, self.max_size
        ).basis_lincombs()

    def coordinates(self, i, j, lc: LinComb):
        return slice_basis(
            self.variant, self.parity, i, j, self.max_size
        ).coordinates(lc)


class TensorComplex:
    """Tensor product of two diagram complexes, bigraded by total (i, j).

    The differential is d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db with |a|
    the total-degree parity of the left block.
    """

    def __init__(self, left: DiagramComplex, right: DiagramComplex):
        if left.parity != right.parity:
            raise ValueError("tensor factors must share a parity")
        self.left = left
        self.right = right
        self.parity = left.parity

    @lru_cache(maxsize=None)
    def blocks(self, i, j):
        """Ordered (i1, j1, i2, j2, dim1, dim2) blocks of the (i, j) piece."""
        out = []
        for i1 in range(0, i + 1):
            for j1 in range(0, j + 1):
                d1 = self.left.dim(i1, j1)
                if not d1:
                    continue
                d2 = self.right.dim(i - i1, j - j1)
                if not d2:
                    continue
                out.append((i1, j1, i - i1, j - j1, d1, d2))
        return tuple(out)

    def dim(self, i, j) -> int:
        if i < 0 or j < 0:
            return 0
        return sum(b[4] * b[5] for b in self.blocks(i, j))

    def _offsets(self, i, j):
        offs = {}
        pos = 0
        for b in self.blocks(i, j):
            offs[b[:4]] = pos
            pos += b[4] * b[5]
        return offs

    def index(self, i, j, i1, j1, k1, k2):
        offs = self._offsets(i, j)
        for b in self.blocks(i, j):
            if b[:2] == (i1, j1):
                return offs[b[:4]] + k1 * b[5] + k2
        raise KeyError((i1, j1))

    def matrix(self, i, j) -> IntMat:
        mat = IntMat(self.dim(i, j - 1), self.dim(i, j))
        if not mat.ncols or j < 0:
            return mat
        tgt_offs = self._offsets(i, j - 1)
        tgt_blocks = {b[:4]: b for b in self.blocks(i, j - 1)}
        col_offs = self._offsets(i, j)
        for b in self.blocks(i, j):
            i1, j1, i2, j2, d1, d2 = b
            base = col_offs[b[:4]]
            m_left = self.left.matrix(i1, j1)
            m_right = self.right.matrix(i2, j2)
            sgn = -1 if Bigrading(i1, j1).total_parity(self.parity) else 1
            for k1 in range(d1):
                for k2 in range(d2):
                    col = base + k1 * d2 + k2
                    key = (i1, j1 - 1, i2, j2)
                    if key in tgt_blocks:
                        tb = tgt_blocks[key]
                        off = tgt_offs[key]
                        for r, v in m_left.cols[k1].items():
                            mat.cols[col][off + r * tb[5] + k2] = v
                    key = (i1, j1, i2, j2 - 1)
                    if key in tgt_blocks:
                        tb = tgt_blocks[key]
                        off = tgt_offs[key]
                        for r, v in m_right.cols[k2].items():
                            mat.cols[col][off + k1 * tb[5] + r] = sgn * v
        return mat

    def basis_pairs(self, i, j):
        """Flat list of (left LinComb, right LinComb, i1, j1) per basis index."""
        out = []
        for i1, j1, i2, j2, d1, d2 in self.blocks(i, j):
            ls = self.left.basis_lincombs(i1, j1)
            rs = self.right.basis_lincombs(i2, j2)
            for a in ls:
                for b in rs:
                    out.append((a, b, i1, j1))
        return out


# ---------------------------------------------------------------------------
# groups of one bigraded slice

def homology_group(variant, parity: Parity, i, j, ring: Ring = ZZ,
                   max_size=DEFAULT_MAX_SLICE):
    """Homology at (i, j): a HomologyGroup over Z, a dimension over a field."""
    cx = DiagramComplex(variant, parity, max_size)
    return _slice_group(cx, i, j, ring)


def dual_homology_group(variant, parity: Parity, i, j, ring: Ring = ZZ,
                        max_size=DEFAULT_MAX_SLICE):
    """Cochain homology at (i, j) (transposed differentials)."""
    cx = DiagramComplex(variant, parity, max_size)
    return _slice_group(cx, i, j, ring, dual=True)


def _slice_group(cx, i, j, ring, dual=False):
    n = cx.dim(i, j)
    if n == 0:
        return 0 if ring.is_field else TRIVIAL_GROUP
    m_out = cx.matrix(i, j)
    m_in = cx.matrix(i, j + 1)
    if ring.is_field:
        p = ring.p if isinstance(ring, PrimeField) else None
        return n - rank_field(m_out, p) - rank_field(m_in, p)
    torsion_src = m_out.transpose() if dual else m_in
    snf = smith_normal_form(torsion_src)
    free = n - rank_field(m_out, None) - rank_field(m_in, None)
    return HomologyGroup(free, tuple(f for f in snf.invariant_factors if f > 1))


# ---------------------------------------------------------------------------
# presentations and induced maps over Z

@dataclass
class Presentation:
    """H = kernel lattice / boundary image, with explicit generators.

    ``kernel`` columns span ker(d) in slice coordinates; relations are
    diagonal: order[s] = 0 means a free generator.  Coordinates of a class
    come out reduced modulo the orders.
    """

    dim: int
    kernel: list
    u: list  # transform: coords in diagonal basis = u @ (kernel coords)
    orders: list  # one per generator; 0 = free, 1 = trivial

    @property
    def group(self) -> HomologyGroup:
        diag = [d for d in self.orders if d > 1]
        free = sum(1 for d in self.orders if d == 0)
        from .snf import _divisibility_chain

        return HomologyGroup(free, tuple(_divisibility_chain(diag)))

    def class_coords(self, vec):
        """Coordinates of a cycle's class on the generators, or None."""
        return self.class_coords_multi([vec])[0]

    def class_coords_multi(self, vecs):
        """Batched :meth:`class_coords` sharing one elimination."""
        k = len(self.orders)
        if k == 0:
            return [[] if not any(v) or self.dim == 0 else None for v in vecs]
        sols = _solve_dense_multi(self.kernel, list(vecs))
        out = []
        for sol in sols:
            if sol is None:
                out.append(None)
                continue
            coords = [
                sum(self.u[r][c] * sol[c] for c in range(len(sol)))
                for r in range(len(sol))
            ]
            out.append(
                [c % d if d > 0 else c for c, d in zip(coords, self.orders)]
            )
        return out


def _solve_dense_multi(cols_matrix, vecs):
    """Solve (columns) @ x = vec for every right-hand side in one elimination.

    Returns a list with an integer solution vector or None per input.
    """
    from fractions import Fraction

    nrows = len(cols_matrix)
    ncols = len(cols_matrix[0]) if nrows else 0
    nrhs = len(vecs)
    a = [
        [Fraction(cols_matrix[r][c]) for c in range(ncols)]
        + [Fraction(v[r]) for v in vecs]
        for r in range(nrows)
    ]
    pivots = []
    r0 = 0
    for c in range(ncols):
        pr = next((r for r in range(r0, nrows) if a[r][c]), None)
        if pr is None:
            continue
        a[r0], a[pr] = a[pr], a[r0]
        inv = a[r0][c]
        a[r0] = [x / inv for x in a[r0]]
        for r in range(nrows):
            if r != r0 and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[r0])]
        pivots.append(c)
        r0 += 1
        if r0 == nrows:
            break
    pivot_rows = {c: r for r, c in enumerate(pivots)}
    out = []
    for kk in range(nrhs):
        col = ncols + kk
        x = [Fraction(0)] * ncols
        for c, r in pivot_rows.items():
            x[c] = a[r][col]
        ok = all(not a[r][col] for r in range(len(pivots), nrows))
        if not ok or any(xx.denominator != 1 for xx in x):
            out.append(None)
        else:
            out.append([int(xx) for xx in x])
    return out


def _solve_dense(cols_matrix, vec):
    """Solve (columns) @ x = vec exactly over Q, return ints or None."""
    return _solve_dense_multi(cols_matrix, [vec])[0]


@lru_cache(maxsize=8192)
def presentation(cx, i, j) -> Presentation:
    n = cx.dim(i, j)
    if n == 0:
        return Presentation(0, [], [], [])
    m_out = cx.matrix(i, j)
    m_in = cx.matrix(i, j + 1)
    kb = kernel_basis(m_out)  # list of column vectors
    k = len(kb)
    kernel = [[kb[c][r] for c in range(k)] for r in range(n)]
    if k == 0:
        return Presentation(n, kernel, [], [])
    # boundary columns in kernel coordinates (one shared elimination)
    rhs = [m_in.column_vector(c) for c in range(m_in.ncols)]
    sols = _solve_dense_multi(kernel, rhs) if rhs else []
    x_cols = []
    for sol in sols:
        if sol is None:
            raise ClosureViolationError("boundaries do not lie in the kernel")
        x_cols.append(sol)
    if x_cols:
        dense = [[x_cols[c][r] for c in range(len(x_cols))] for r in range(k)]
        u, dmat, _, diag = snf_transforms(dense)
        rank = len(diag)
        orders = [abs(dmat[s][s]) if s < rank else 0 for s in range(k)]
    else:
        u = [[int(a == b) for b in range(k)] for a in range(k)]
        orders = [0] * k
    return Presentation(n, kernel, u, orders)


CHAIN_MAPS = ("proj_Tss_T", "incl_T0_Ts", "iso_I", "iso_I_hat")


@dataclass
class InducedMapResult:
    name: str
    i: int
    j: int
    source_group: HomologyGroup
    target_group: HomologyGroup
    matrix: list
    orders_source: list
    orders_target: list
    is_isomorphism: bool


@lru_cache(maxsize=64)
def _map_setup(name, parity: Parity, max_size):
    if name == "proj_Tss_T":
        src = DiagramComplex(Variant.TSS, parity, max_size)
        tgt = DiagramComplex(Variant.T, parity, max_size)

        def fn(lc):
            return LinComb(
                {d: c for d, c in lc.items() if not d.has_asterisks}, lc.ring
            )

        return src, tgt, lambda lc, i, j: fn(lc)
    if name == "incl_T0_Ts":
        src = DiagramComplex(Variant.T0, parity, max_size)
        tgt = DiagramComplex(Variant.TS, parity, max_size)
        return src, tgt, lambda lc, i, j: lc
    if name == "iso_I":
        src = DiagramComplex(Variant.TSS_H, parity, max_size)
        tgt = DiagramComplex(Variant.TSS, parity, max_size)
        return src, tgt, lambda lc, i, j: iso_I(lc, parity)
    if name == "iso_I_hat":
        zc = DiagramComplex(Variant.Z, parity, max_size)
        t0c = DiagramComplex(Variant.T0, parity, max_size)
        src = TensorComplex(zc, t0c)
        tgt = DiagramComplex(Variant.T, parity, max_size)
        return src, tgt, None
    raise ValueError(f"unknown chain map {name!r}; choose from {CHAIN_MAPS}")


@lru_cache(maxsize=8192)
def _map_matrix_cached(name, parity: Parity, max_size, i, j) -> IntMat:
    src, tgt, fn = _map_setup(name, parity, max_size)
    return _map_matrix(name, src, tgt, fn, parity, i, j)


def _map_matrix(name, src, tgt, fn, parity, i, j) -> IntMat:
    if j < 0:
        return IntMat(tgt.dim(i, j), 0)
    mat = IntMat(tgt.dim(i, j), src.dim(i, j))
    if name == "iso_I_hat":
        cols = []
        for a, b, _, _ in src.basis_pairs(i, j):
            out = iso_I_hat(a, b, parity, strict=False)
            cols.append(out)
    else:
        cols = [fn(lc, i, j) for lc in src.basis_lincombs(i, j)]
    for cidx, out in enumerate(cols):
        out = arnold_reduce(out, parity)
        if not out:
            continue
        vec = tgt.coordinates(i, j, out)
        for r, v in enumerate(vec):
            if v:
                mat.cols[cidx][r] = v
    return mat


def induced_map_on_homology(name, parity: Parity, i, j, ring: Ring = ZZ,
                            max_size=DEFAULT_MAX_SLICE) -> InducedMapResult:
    """Matrix of a named chain map on homology at (i, j), with an iso flag."""
    src, tgt, fn = _map_setup(name, parity, max_size)
    f_here = _map_matrix_cached(name, parity, max_size, i, j)
    f_below = _map_matrix_cached(name, parity, max_size, i, j - 1)
    f_above = _map_matrix_cached(name, parity, max_size, i, j + 1)
    # commuting squares at (i,j) and (i,j+1)
    for fa, fb, level in ((f_here, f_below, j), (f_above, f_here, j + 1)):
        lhs = _compose(fb, src.matrix(i, level))
        rhs = _compose(tgt.matrix(i, level), fa)
        if lhs != rhs:
            raise NotAChainMapError(
                f"{name} does not commute with the differential at ({i},{level})"
            )
    ps = presentation(src, i, j)
    pt = presentation(tgt, i, j)
    src_gens = _generator_vectors(ps)
    images = [f_here.matvec(g) for g in src_gens]
    induced = []
    for coords in pt.class_coords_multi(images) if images else []:
        if coords is None:
            raise NotAChainMapError(f"{name} image is not a cycle at ({i},{j})")
        induced.append(coords)
    matrix = [
        [induced[c][r] for c in range(len(induced))]
        for r in range(len(pt.orders))
    ]
    iso = _is_group_iso(ps, pt, matrix)
    return InducedMapResult(
        name, i, j, ps.group, pt.group, matrix,
        list(ps.orders), list(pt.orders), iso,
    )


def _generator_vectors(pres: Presentation):
    """Slice-coordinate vectors of the presentation's generators."""
    k = len(pres.orders)
    if k == 0:
        return []
    uinv = _invert_unimodular(pres.u)
    gens = []
    for s in range(k):
        col = [uinv[r][s] for r in range(k)]
        vec = [
            sum(pres.kernel[r][c] * col[c] for c in range(k))
            for r in range(pres.dim)
        ]
        gens.append(vec)
    return gens


def _invert_unimodular(u):
    from fractions import Fraction

    k = len(u)
    a = [[Fraction(u[r][c]) for c in range(k)] + [Fraction(int(r == s)) for s in range(k)]
         for r in range(k)]
    for c in range(k):
        pr = next(r for r in range(c, k) if a[r][c])
        a[c], a[pr] = a[pr], a[c]
        inv = a[c][c]
        a[c] = [x / inv for x in a[c]]
        for r in range(k):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    out = [[a[r][k + c] for c in range(k)] for r in range(k)]
    assert all(x.denominator == 1 for row in out for x in row)
    return [[int(x) for x in row] for row in out]


def _compose(outer: IntMat, inner: IntMat) -> list:
    dense = []
    for c in range(inner.ncols):
        acc = {}
        for mid, v in inner.cols[c].items():
            for r, w in outer.cols[mid].items():
                acc[r] = acc.get(r, 0) + v * w
        dense.append({r: v for r, v in acc.items() if v})
    return dense


def _is_group_iso(ps: Presentation, pt: Presentation, matrix):
    if ps.group != pt.group:
        return False
    kt = len(pt.orders)
    if kt == 0:
        return True
    cols = [[matrix[r][c] for r in range(kt)] for c in range(len(ps.orders))]
    for s, d in enumerate(pt.orders):
        if d > 0:
            e = [0] * kt
            e[s] = d
            cols.append(e)
    mat = IntMat(kt, len(cols))
    for c, col in enumerate(cols):
        for r, v in enumerate(col):
            if v:
                mat.cols[c][r] = v
    snf = smith_normal_form(mat)
    return snf.rank == kt and all(f == 1 for f in snf.invariant_factors)


# ---------------------------------------------------------------------------
# independent chord-diagram oracle

def _matchings(order):
    """All perfect matchings of 1..2*order as canonical chord words."""
    if order == 0:
        return [()]

    def build(positions):
        if not positions:
            return [[]]
        first, rest = positions[0], positions[1:]
        out = []
        for k, partner in enumerate(rest):
            remaining = rest[:k] + rest[k + 1 :]
            for sub in build(remaining):
                out.append([(first, partner)] + sub)
        return out

    out = []
    for pairing in build(list(range(2 * order))):
        out.append(_word_from_pairs(pairing, 2 * order))
    return sorted(set(out))


def _word_from_pairs(pairs, length):
    slot = [None] * length
    for label, (a, b) in enumerate(pairs):
        slot[a] = label
        slot[b] = label
    return _canon_word(tuple(slot))


def _canon_word(word):
    relabel = {}
    out = []
    for x in word:
        if x not in relabel:
            relabel[x] = len(relabel)
        out.append(relabel[x])
    return tuple(out)


def _word_pairs(word):
    where = {}
    for pos, x in enumerate(word):
        where.setdefault(x, []).append(pos)
    return {x: tuple(ps) for x, ps in where.items()}


def chord_space_dims(order_max: int, relations=("4T",), field: Ring = QQ,
                     cap: int = 8):
    """Dimensions of the matching span modulo sliding relations, order 0..max.

    Brute-force oracle: enumerate chord words (perfect matchings of 2i points
    on a line), impose the four-term relation rows
    D(w left of a) - D(w right of a) + D(w left of b) - D(w right of b) = 0
    for every chord (a, b), every other chord end w, and optionally kill every
    word containing a chord with adjacent endpoints.  Entirely independent of
    the diagram complexes.
    """
    if order_max > cap:
        raise ResourceLimitError(f"order {order_max} exceeds oracle cap {cap}")
    rels = set(relations)
    if not rels <= {"4T", "1T"}:
        raise ValueError("relations must be a subset of {'4T', '1T'}")
    dims = []
    p = field.p if isinstance(field, PrimeField) else None
    if not field.is_field:
        from .rings import require_field

        require_field(field)
    for order in range(order_max + 1):
        words = _matchings(order)
        index = {w: k for k, w in enumerate(words)}
        rows = []
        seen = set()
        for word in words:
            pairs = _word_pairs(word)
            labels = sorted(pairs)
            for c in labels:
                a_pos, b_pos = pairs[c]
                for m in labels:
                    if m == c:
                        continue
                    for w_pos in pairs[m]:
                        base = list(word)
                        del base[w_pos]
                        letter = word[w_pos]
                        row = {}
                        for anchor in (a_pos, b_pos):
                            if anchor > w_pos:
                                anchor -= 1
                            for offset, sgn in ((0, 1), (1, -1)):
                                new = list(base)
                                new.insert(anchor + offset, letter)
                                key = index[_canon_word(tuple(new))]
                                row[key] = row.get(key, 0) + sgn
                        row = {k: v for k, v in row.items() if v}
                        if row:
                            norm = tuple(sorted(row.items()))
                            if norm[0][1] < 0:
                                norm = tuple((k, -v) for k, v in norm)
                            if norm not in seen:
                                seen.add(norm)
                                rows.append(dict(norm))
        if "1T" in rels:
            for word in words:
                if any(word[k] == word[k + 1] for k in range(len(word) - 1)):
                    rows.append({index[word]: 1})
        mat = IntMat(len(rows), len(words))
        for r, row in enumerate(rows):
            for c, v in row.items():
                mat.cols[c][r] = v
        dims.append(len(words) - rank_field(mat, p))
    return dims


# ---------------------------------------------------------------------------
# Kunneth comparison

@dataclass
class KunnethEntry:
    i: int
    j: int
    lhs: HomologyGroup
    rhs: HomologyGroup

    @property
    def match(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class KunnethReport:
    parity: Parity
    entries: list = field(default_factory=list)
    field_entries: list = field(default_factory=list)
    diagonal: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            all(e.match for e in self.entries)
            and all(e[-1] for e in self.field_entries)
            and all(self.diagonal.get(k, (0, 0))[0] == self.diagonal[k][1]
                    for k in self.diagonal)
        )


def _group_table(variant, parity, i_max, ring, max_size):
    out = {}
    for i in range(0, i_max + 1):
        for j in range(0, 2 * i + 1):
            g = homology_group(variant, parity, i, j, ring, max_size)
            if ring.is_field:
                if g:
                    out[(i, j)] = g
            elif not g.is_trivial:
                out[(i, j)] = g
    return out


def kunneth_compare(parity: Parity, i_max: int, fields=(), diagonal_i_max=None,
                    max_size=DEFAULT_MAX_SLICE) -> KunnethReport:
    """Compare H(T) with the two-factor combination of H(T0) and H(Z).

    Over Z the comparison includes torsion products at (i, j-1); over the
    optional fields it is a plain dimension convolution.  When
    ``diagonal_i_max`` is set the report also carries the lower-diagonal
    dimension identity between the chord bialgebra of T and the one-term
    quotient of Ts (polynomial splitting for odd parity, the two-step
    truncation for even parity).
    """
    report = KunnethReport(parity)
    ht = _group_table(Variant.T, parity, i_max, ZZ, max_size)
    h0 = _group_table(Variant.T0, parity, i_max, ZZ, max_size)
    hz = _group_table(Variant.Z, parity, i_max, ZZ, max_size)
    for i in range(0, i_max + 1):
        for j in range(0, 2 * i + 1 if i else 1):
            rhs = TRIVIAL_GROUP
            for (i1, j1), g1 in h0.items():
                if i1 > i:
                    continue
                g2 = hz.get((i - i1, j - j1))
                if g2 is not None:
                    rhs = rhs.direct_sum(g1.tensor(g2))
                g2 = hz.get((i - i1, j - 1 - j1))
                if g2 is not None:
                    rhs = rhs.direct_sum(g1.tor(g2))
            lhs = ht.get((i, j), TRIVIAL_GROUP)
            if not (lhs.is_trivial and rhs.is_trivial):
                report.entries.append(KunnethEntry(i, j, lhs, rhs))
    for f in fields:
        ht_f = _group_table(Variant.T, parity, i_max, f, max_size)
        h0_f = _group_table(Variant.T0, parity, i_max, f, max_size)
        hz_f = _group_table(Variant.Z, parity, i_max, f, max_size)
        for i in range(0, i_max + 1):
            for j in range(0, 2 * i + 1 if i else 1):
                rhs = 0
                for (i1, j1), d1 in h0_f.items():
                    d2 = hz_f.get((i - i1, j - j1), 0)
                    rhs += d1 * d2
                lhs = ht_f.get((i, j), 0)
                if lhs or rhs:
                    report.field_entries.append(
                        (f.name, i, j, lhs, rhs, lhs == rhs)
                    )
    if diagonal_i_max is not None:
        b = [
            dual_homology_group(Variant.T, parity, i, 2 * i, QQ, max_size)
            for i in range(diagonal_i_max + 1)
        ]
        b0 = [
            dual_homology_group(Variant.TS, parity, i, 2 * i, QQ, max_size)
            for i in range(diagonal_i_max + 1)
        ]
        for i in range(diagonal_i_max + 1):
            if parity.eps == 1:  # odd: polynomial splitting, one power per level
                want = sum(b0[k] for k in range(i + 1))
            else:  # even: the square of the extra generator dies rationally
                want = b0[i] + (b0[i - 1] if i >= 1 else 0)
            report.diagonal[i] = (b[i], want)
    return report


# ---------------------------------------------------------------------------
# generator class of the fan diagram on the upper diagonal

def zhat_class_is_nonzero(variant, parity: Parity, i: int,
                          max_size=DEFAULT_MAX_SLICE) -> bool:
    """Whether the fan diagram's class at (i, i+1) is nonzero over Z."""
    v = Variant.parse(variant)
    if v is not Variant.T:
        raise ValueError("the fan class lives in the chord-only quotient T")
    if i == 0:
        return False
    basis = slice_basis(v, parity, i, i + 1, max_size)
    lc = arnold_reduce(make_zhat(i, parity), parity)
    vec = basis.coordinates(lc)
    m_in = differential_matrix(v, parity, i, i + 2, max_size).mat
    return solve_int(m_in, vec) is None


def zhat_class_generates(variant, parity: Parity, i: int,
                         max_size=DEFAULT_MAX_SLICE) -> bool:
    """Whether the fan class generates all of H at (i, i+1) over Z."""
    v = Variant.parse(variant)
    basis = slice_basis(v, parity, i, i + 1, max_size)
    lc = arnold_reduce(make_zhat(i, parity), parity)
    vec = basis.coordinates(lc)
    m_in = differential_matrix(v, parity, i, i + 2, max_size).mat
    aug = IntMat(m_in.nrows, m_in.ncols + 1)
    for c in range(m_in.ncols):
        aug.cols[c] = dict(m_in.cols[c])
    for r, val in enumerate(vec):
        if val:
            aug.cols[m_in.ncols][r] = val
    snf = smith_normal_form(aug)
    return snf.rank == m_in.nrows and all(
        f == 1 for f in snf.invariant_factors
    )
