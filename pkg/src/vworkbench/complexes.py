"""Bigraded slice bases and differentials for the six complex variants.

Variants
--------
Tss    all strict diagrams, differential = horizontal + vertical gluings
Tss_h  same space, horizontal part only
Ts     no top asterisks (a subcomplex of Tss)
T      no asterisks at all (a quotient: asterisk-bearing terms are dropped)
T0     T-diagrams without chords between neighbor points; this is the span
       of those diagrams inside T, realized as an integer row lattice over
       T's admissible basis (the span is not free on its diagrams)
Z      only top asterisks, horizontal differential (merges asterisk columns)

The horizontal differential glues a neighbor pair (t_m, t_{m+1}); a direct
chord between them becomes a bottom asterisk, top asterisk stacks merge with
the signed binomial coefficient, and the sign is produced by fronting the
t_m token, removing it, renaming the glued tokens in place (the surviving
point keeps t_{m+1}'s token; point m's top stack sits above point (m+1)'s)
and re-sorting into the canonical monomial.  The vertical differential drops
the lowest top asterisk of a half-line onto its point by fronting its height
token, removing it, and renaming the asterisk token to a bottom token.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations

from .diagrams import (
    EMPTY,
    Diagram,
    Parity,
    canonical_monomial,
    koszul_sign_between,
    serialize,
    token_parity,
    validate,
)
from .errors import ClosureViolationError, ResourceLimitError
from .lincomb import LinComb
from .relations import arnold_reduce, is_admissible, quantum_binomial
from .snf import IntMat, hnf_row_basis, solve_in_row_lattice

DEFAULT_MAX_SLICE = 200_000


class Variant(str, Enum):
    TSS = "Tss"
    TSS_H = "Tss_h"
    TS = "Ts"
    T = "T"
    T0 = "T0"
    Z = "Z"

    @staticmethod
    def parse(name) -> "Variant":
        if isinstance(name, Variant):
            return name
        for v in Variant:
            if v.value == name:
                return v
        raise ValueError(f"unknown complex variant {name!r}")


_VERTICAL_VARIANTS = (Variant.TSS, Variant.TS)


# ---------------------------------------------------------------------------
# differentials on single diagrams

def _connected(n, pairs, x, y):
    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return find(x) == find(y)


def _dh_rename(tok, m, km):
    kind = tok[0]
    if kind == "P":
        p = tok[1]
        return ("P", p if p <= m else p - 1)
    if kind in ("H", "T"):
        p, r = tok[1], tok[2]
        if p == m:
            return (kind, m, r)
        if p == m + 1:
            return (kind, m, km + r)
        return (kind, p if p <= m else p - 1, r)
    if kind == "C":
        a, b = tok[1], tok[2]
        if (a, b) == (m, m + 1):
            return ("B", m)
        return ("C", a if a <= m else a - 1, b if b <= m else b - 1)
    p = tok[1]
    return ("B", p if p <= m else p - 1)


def d_h_at(d: Diagram, m: int, parity: Parity) -> LinComb:
    """Gluing of the neighbor pair (t_m, t_{m+1}), a single summand of d_h."""
    if not 1 <= m < d.n:
        raise ValueError(f"no neighbor pair at position {m}")
    direct = (m, m + 1) in d.chords
    others = [p for p in d.chords if p != (m, m + 1)]
    if _connected(d.n, others, m, m + 1):
        return LinComb.zero()  # a longer chord path: gluing closes a cycle
    if direct:
        if m in d.bottom or (m + 1) in d.bottom:
            return LinComb.zero()
    elif m in d.bottom and (m + 1) in d.bottom:
        return LinComb.zero()
    km, km1 = d.top[m - 1], d.top[m]
    qb = quantum_binomial(km, km1, parity.sign_d)
    if qb == 0:
        return LinComb.zero()
    new_chords = sorted(
        (a if a <= m else a - 1, b if b <= m else b - 1) for a, b in others
    )
    new_bottom = {p if p <= m else p - 1 for p in d.bottom}
    if direct:
        new_bottom.add(m)
    tops = list(d.top)
    merged = tops[: m - 1] + [km + km1] + tops[m + 1 :]
    target = Diagram(d.n - 1, new_chords, sorted(new_bottom), merged)
    src = canonical_monomial(d)
    idx = src.index(("P", m))
    sign = 1
    for tok in src[:idx]:
        if token_parity(tok, parity):
            sign = -sign
    transported = tuple(
        _dh_rename(tok, m, km) for k, tok in enumerate(src) if k != idx
    )
    sign *= koszul_sign_between(transported, canonical_monomial(target), parity)
    return LinComb({target: qb * sign})


def d_h(d: Diagram, parity: Parity) -> LinComb:
    """Horizontal differential: sum of all neighbor gluings (not reduced)."""
    out = LinComb.zero()
    for m in range(1, d.n):
        out = out + d_h_at(d, m, parity)
    return out


def d_v_at(d: Diagram, p: int, parity: Parity) -> LinComb:
    """Descent of the lowest top asterisk over point p, or zero."""
    kp = d.top[p - 1]
    if kp == 0 or p in d.bottom:
        return LinComb.zero()
    tops = list(d.top)
    tops[p - 1] -= 1
    target = Diagram(d.n, d.chords, sorted(set(d.bottom) | {p}), tops)
    src = canonical_monomial(d)
    idx = src.index(("H", p, kp))
    sign = 1
    for tok in src[:idx]:
        if token_parity(tok, parity):
            sign = -sign
    transported = tuple(
        ("B", p) if tok == ("T", p, kp) else tok
        for k, tok in enumerate(src)
        if k != idx
    )
    sign *= koszul_sign_between(transported, canonical_monomial(target), parity)
    return LinComb({target: sign})


def d_v(d: Diagram, parity: Parity) -> LinComb:
    """Vertical differential: one descent per half-line with top asterisks."""
    out = LinComb.zero()
    for p in range(1, d.n + 1):
        out = out + d_v_at(d, p, parity)
    return out


def full_differential(x: LinComb, parity: Parity) -> LinComb:
    """d_h + d_v on the full diagram space, reduced onto admissible forests."""
    raw = LinComb.zero(x.ring)
    for dkey, c in x.items():
        raw = raw + (d_h(dkey, parity) + d_v(dkey, parity)).scaled(c)
    return arnold_reduce(raw, parity)


def differential(variant, x: LinComb, parity: Parity, check_closure=True) -> LinComb:
    """The variant's differential, reduced, projected or closure-checked."""
    v = Variant.parse(variant)
    raw = LinComb.zero(x.ring)
    for dkey, c in x.items():
        term = d_h(dkey, parity)
        if v in _VERTICAL_VARIANTS:
            term = term + d_v(dkey, parity)
        raw = raw + term.scaled(c)
    red = arnold_reduce(raw, parity)
    if v in (Variant.T, Variant.T0):
        red = LinComb(
            {k: c for k, c in red.items() if not k.has_asterisks}, red.ring
        )
    if check_closure and v in (Variant.TS, Variant.Z):
        for key in red.support():
            if validate(key, v.value):
                raise ClosureViolationError(
                    f"{v.value} differential left its span at {key!r}"
                )
    if check_closure and v is Variant.T0 and red:
        gradings = {(len(k.chords), k.n) for k in red.support()}
        if len(gradings) == 1:
            (i, j) = gradings.pop()
            basis = slice_basis(Variant.T0, parity, i, j)
            if _t0_coords(basis, red) is None:
                raise ClosureViolationError(
                    "T0 differential left the T0 span"
                )
    return red


# ---------------------------------------------------------------------------
# slice enumeration

def _forest_chordsets(n, c, admissible=True, allowed=None):
    if allowed is None:
        allowed = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    out = []

    def rec(start, chosen, heads, parent):
        if len(chosen) == c:
            out.append(tuple(chosen))
            return
        for k in range(start, len(allowed)):
            a, b = allowed[k]
            if admissible and b in heads:
                continue

            def find(x, par=parent):
                while par[x] != x:
                    x = par[x]
                return x

            ra, rb = find(a), find(b)
            if ra == rb:
                continue
            par2 = list(parent)
            par2[ra] = rb
            rec(k + 1, chosen + [(a, b)], heads | {b}, par2)

    rec(0, [], set(), list(range(n + 1)))
    return out


def _compositions(total, parts, min_each=0):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min_each, total - min_each * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, min_each):
            yield (first,) + rest


@dataclass
class SliceBasis:
    """Ordered basis data of one bigraded piece of one variant.

    For the free variants ``diagrams`` is the admissible basis.  For T0 the
    ``diagrams`` are the generating neighbor-chord-free diagrams and the
    actual basis is the ``lattice`` (echelon integer rows over the ambient
    T slice), since those generators are not linearly independent in T.
    """

    variant: Variant
    parity: Parity
    i: int
    j: int
    diagrams: tuple
    ambient: "SliceBasis | None" = None
    lattice: tuple = ()
    lattice_pivots: tuple = ()
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {d: k for k, d in enumerate(self.diagrams)}

    @property
    def dim(self) -> int:
        if self.variant is Variant.T0:
            return len(self.lattice)
        return len(self.diagrams)

    def index(self, d: Diagram) -> int:
        return self._index[d]

    def coordinates(self, lc: LinComb):
        """Dense coordinate vector of a combination in this basis."""
        if self.variant is Variant.T0:
            coords = _t0_coords(self, lc)
            if coords is None:
                raise ClosureViolationError("combination is not in the T0 span")
            return coords
        vec = [0] * len(self.diagrams)
        for d, c in lc.items():
            vec[self._index[d]] = c
        return vec

    def basis_lincombs(self):
        if self.variant is Variant.T0:
            return [
                LinComb(
                    {
                        self.ambient.diagrams[c]: v
                        for c, v in enumerate(row)
                        if v
                    }
                )
                for row in self.lattice
            ]
        return [LinComb.of(d) for d in self.diagrams]

    def serial_hash(self) -> str:
        h = hashlib.sha256()
        for d in self.diagrams:
            h.update(serialize(d).encode())
            h.update(b"\n")
        for row in self.lattice:
            h.update(repr(row).encode())
        return h.hexdigest()[:16]


def _t0_coords(basis: SliceBasis, lc: LinComb):
    red = arnold_reduce(lc, basis.parity)
    vec = [0] * basis.ambient.dim
    for d, c in red.items():
        vec[basis.ambient.index(d)] = c
    if not basis.lattice:
        return [] if not any(vec) else None
    return solve_in_row_lattice(
        [list(r) for r in basis.lattice], list(basis.lattice_pivots), vec
    )


def _slice_diagrams(v: Variant, i: int, j: int, admissible: bool,
                    max_size: int) -> list:
    """Valid diagrams of one bigrading, optionally restricted to admissible."""
    diagrams = []
    if i >= 0 and j >= 0:
        if i == 0 and j == 0:
            diagrams.append(EMPTY)
        for s in range(0, i + 1):
            if v in (Variant.TS, Variant.T, Variant.T0) and s > 0:
                continue
            if v is Variant.Z and s != i:
                continue
            n = j - s
            if n <= 0:
                continue
            rest = i - s
            for c in range(rest + 1):
                b = rest - c
                if v in (Variant.T, Variant.T0, Variant.Z) and b > 0:
                    continue
                if v is Variant.Z and c > 0:
                    continue
                if 2 * c + b + min(s, n) < n:
                    continue  # cannot cover every point
                allowed = None
                if v is Variant.T0:
                    allowed = [
                        (x, y)
                        for x in range(1, n + 1)
                        for y in range(x + 2, n + 1)
                    ]
                chordsets = _forest_chordsets(
                    n, c, admissible=admissible, allowed=allowed
                )
                for chords in chordsets:
                    for bottom in combinations(range(1, n + 1), b):
                        for top in _compositions(
                            s, n, 1 if v is Variant.Z else 0
                        ):
                            d = Diagram(n, chords, bottom, top)
                            if d.bare_points():
                                continue
                            diagrams.append(d)
                            if len(diagrams) > max_size:
                                raise ResourceLimitError(
                                    f"slice ({v.value},{i},{j}) exceeds cap {max_size}"
                                )
    diagrams.sort(key=serialize)
    return diagrams


def slice_diagrams_all(variant, i: int, j: int,
                       max_size: int = DEFAULT_MAX_SLICE) -> list:
    """Every valid diagram of the bigrading, admissible or not."""
    return _slice_diagrams(Variant.parse(variant), i, j, False, max_size)


@lru_cache(maxsize=4096)
def slice_basis(variant, parity: Parity, i: int, j: int,
                max_size: int = DEFAULT_MAX_SLICE) -> SliceBasis:
    """All admissible valid diagrams of one bigrading (T0: generators+lattice)."""
    v = Variant.parse(variant)
    diagrams = _slice_diagrams(v, i, j, v is not Variant.T0, max_size)
    basis = SliceBasis(v, parity, i, j, tuple(diagrams))
    if v is Variant.T0:
        ambient = slice_basis(Variant.T, parity, i, j, max_size)
        vectors = []
        for g in diagrams:
            red = arnold_reduce(LinComb.of(g), parity)
            vec = [0] * ambient.dim
            for d, c in red.items():
                vec[ambient.index(d)] = c
            vectors.append(vec)
        rows, pivots = hnf_row_basis(vectors, ambient.dim)
        basis = SliceBasis(
            v, parity, i, j, tuple(diagrams),
            ambient=ambient,
            lattice=tuple(tuple(r) for r in rows),
            lattice_pivots=tuple(pivots),
        )
    return basis


def enumerate_slice(variant, parity: Parity, i: int, j: int,
                    max_size: int = DEFAULT_MAX_SLICE) -> SliceBasis:
    if i < 0 or j < 0:
        raise ValueError("bigrading must be non-negative")
    return slice_basis(Variant.parse(variant), parity, i, j, max_size)


# ---------------------------------------------------------------------------
# differential matrices

@dataclass
class DifferentialMatrix:
    source: SliceBasis
    target: SliceBasis
    mat: IntMat

    def export_text(self) -> str:
        s, t = self.source, self.target
        lines = [
            f"# source complex={s.variant.value} parity={s.parity.name} "
            f"i={s.i} j={s.j} dim={s.dim} hash={s.serial_hash()}",
            f"# target complex={t.variant.value} parity={t.parity.name} "
            f"i={t.i} j={t.j} dim={t.dim} hash={t.serial_hash()}",
            "# entries: row col value",
        ]
        for c, col in enumerate(self.mat.cols):
            for r in sorted(col):
                lines.append(f"{r} {c} {col[r]}")
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=4096)
def differential_matrix(variant, parity: Parity, i: int, j: int,
                        max_size: int = DEFAULT_MAX_SLICE) -> DifferentialMatrix:
    """Integer matrix of the differential from (i, j) to (i, j-1)."""
    v = Variant.parse(variant)
    src = slice_basis(v, parity, i, j, max_size)
    if j >= 1:
        tgt = slice_basis(v, parity, i, j - 1, max_size)
    else:
        tgt = SliceBasis(v, parity, i, j - 1, ())
    mat = IntMat(tgt.dim, src.dim)
    if v is Variant.T0:
        ambient_mat = differential_matrix(Variant.T, parity, i, j, max_size)
        for cidx, row in enumerate(src.lattice):
            image = ambient_mat.mat.matvec(list(row))
            if not any(image):
                continue
            if tgt.dim == 0:
                raise ClosureViolationError(
                    f"T0 differential not closed at ({i},{j})"
                )
            coords = solve_in_row_lattice(
                [list(r) for r in tgt.lattice], list(tgt.lattice_pivots), image
            )
            if coords is None:
                raise ClosureViolationError(
                    f"T0 differential not closed at ({i},{j})"
                )
            for r, val in enumerate(coords):
                if val:
                    mat.cols[cidx][r] = val
        return DifferentialMatrix(src, tgt, mat)
    for cidx, d in enumerate(src.diagrams):
        out = differential(v, LinComb.of(d), parity, check_closure=False)
        for key, val in out.items():
            try:
                r = tgt.index(key)
            except KeyError:
                raise ClosureViolationError(
                    f"differential output {key!r} missing from "
                    f"({v.value},{i},{j-1}) basis"
                ) from None
            mat.cols[cidx][r] = val
    return DifferentialMatrix(src, tgt, mat)


def clear_caches():
    slice_basis.cache_clear()
    differential_matrix.cache_clear()
