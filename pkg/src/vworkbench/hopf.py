"""Multiplicative and comultiplicative structure on diagram combinations.

The product shuffles active points (each carrying its half-line decorations);
the coproduct splits a diagram at every chord-free cut.  The divided product
keeps only the shuffles in which the left-most points of the factors stay in
order, and the binary gluing operation ``vdash`` measures its failure to be a
chain map:

    A |= B  =  (-1)^(|A|-1) ( d<A,B> - <dA,B> - (-1)^|A| <A,dB> )

with d the full differential and |.| the total-degree parity.  On diagrams it
glues the two left-most points.  Out of the one-point tower diagrams Z_k
(one point, k top asterisks) and the chord fans Zhat_k (chords from the
first of k+1 points to all others) one builds a triangular automorphism I of
the diagram space that intertwines the horizontal differential with the full
one, its explicit inverse, and the splitting map that replaces towers by
fans and multiplies into the chord-only quotient.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct

from .complexes import full_differential
from .diagrams import (
    EMPTY,
    Diagram,
    Parity,
    SignedDiagram,
    canonicalize,
    canonical_monomial,
    koszul_sign_between,
    total_parity,
    validate,
)
from .errors import (
    ArityMismatchError,
    InvalidDiagramError,
    OddDegreeError,
    TopAsteriskError,
    VariantMismatchError,
)
from .lincomb import LinComb
from .relations import _is_forest, arnold_reduce


# ---------------------------------------------------------------------------
# named diagram families

@lru_cache(maxsize=None)
def make_z(k: int, parity: Parity) -> LinComb:
    """Tower diagram: one point with k top asterisks, standard orientation."""
    if k == 0:
        return LinComb.of(Diagram(1))
    d = Diagram(1, (), (), (k,))
    mono = [("P", 1)]
    for r in range(1, k + 1):
        mono += [("T", 1, r), ("H", 1, r)]
    sd = canonicalize(d, tuple(mono), parity)
    return LinComb.of(sd.diagram, sd.sign)


@lru_cache(maxsize=None)
def make_zhat(k: int, parity: Parity) -> LinComb:
    """Fan diagram: k chords from the first of k+1 points, standard orientation."""
    if k == 0:
        return LinComb.of(Diagram(1))
    d = Diagram(k + 1, [(1, r) for r in range(2, k + 2)])
    mono = [("P", 1)]
    for r in range(2, k + 2):
        mono += [("C", 1, r), ("P", r)]
    sd = canonicalize(d, tuple(mono), parity)
    return LinComb.of(sd.diagram, sd.sign)


def make_star() -> LinComb:
    """One point carrying one bottom asterisk."""
    return LinComb.of(Diagram(1, (), (1,), (0,)))


def make_unit() -> LinComb:
    """The empty diagram, the unit of the shuffle product."""
    return LinComb.of(EMPTY)


# ---------------------------------------------------------------------------
# shuffles

def _interleavings(sizes, ordered_firsts=False):
    total = sum(sizes)
    ell = len(sizes)

    def rec(remaining, started, acc):
        if len(acc) == total:
            yield tuple(acc)
            return
        for b in range(ell):
            if not remaining[b]:
                continue
            if ordered_firsts and not started[b] and any(
                not started[b2] for b2 in range(b)
            ):
                continue
            remaining[b] -= 1
            prev = started[b]
            started[b] = True
            acc.append(b)
            yield from rec(remaining, started, acc)
            acc.pop()
            started[b] = prev
            remaining[b] += 1

    yield from rec(list(sizes), [False] * ell, [])


def _map_token(tok, mp):
    kind = tok[0]
    if kind == "P":
        return ("P", mp[tok[1] - 1])
    if kind in ("H", "T"):
        return (kind, mp[tok[1] - 1], tok[2])
    if kind == "C":
        return ("C", mp[tok[1] - 1], mp[tok[2] - 1])
    return ("B", mp[tok[1] - 1])


def _iter_shuffle_maps(blocks, ordered_firsts):
    sizes = [d.n for d in blocks]
    for owner in _interleavings(sizes, ordered_firsts):
        maps = [[] for _ in blocks]
        for pos, b in enumerate(owner, start=1):
            maps[b].append(pos)
        yield maps


def _assemble(blocks, maps):
    """Shuffled diagram plus the concatenated (relabeled) orienting monomial."""
    n = sum(d.n for d in blocks)
    chords = []
    bottom = []
    top = [0] * n
    concat = []
    for b, d in enumerate(blocks):
        mp = maps[b]
        for a, c in d.chords:
            chords.append((mp[a - 1], mp[c - 1]))
        for p in d.bottom:
            bottom.append(mp[p - 1])
        for p in range(1, d.n + 1):
            top[mp[p - 1] - 1] = d.top[p - 1]
        for tok in canonical_monomial(d):
            concat.append(_map_token(tok, mp))
    return Diagram(n, sorted(chords), sorted(bottom), top), tuple(concat)


def shuffle_product(a: LinComb, b: LinComb, parity: Parity) -> LinComb:
    """Bilinear shuffle of active points with Koszul signs."""
    acc = {}
    for da, ca in a.items():
        for db, cb in b.items():
            for maps in _iter_shuffle_maps([da, db], False):
                tgt, concat = _assemble([da, db], maps)
                s = koszul_sign_between(
                    concat, canonical_monomial(tgt), parity
                )
                acc[tgt] = acc.get(tgt, 0) + ca * cb * s
    return LinComb(acc, a.ring)


def divided_product(xs, parity: Parity) -> LinComb:
    """Shuffle terms keeping the factors' left-most points in order."""
    xs = list(xs)
    if not xs:
        return make_unit()
    if len(xs) == 1:
        return xs[0]
    ring = xs[0].ring
    acc = {}
    for combo in iproduct(*(x.items() for x in xs)):
        blocks = [k for k, _ in combo]
        coeff = 1
        for _, c in combo:
            coeff = coeff * c
        if any(blk.n == 0 for blk in blocks):
            raise InvalidDiagramError(
                "divided product factors must have a left-most point"
            )
        for maps in _iter_shuffle_maps(blocks, True):
            tgt, concat = _assemble(blocks, maps)
            s = koszul_sign_between(concat, canonical_monomial(tgt), parity)
            acc[tgt] = acc.get(tgt, 0) + coeff * s
    return LinComb(acc, ring)


# ---------------------------------------------------------------------------
# coproduct

class TensorPair:
    __slots__ = ("left", "right", "sign")

    def __init__(self, left, right, sign):
        self.left = left
        self.right = right
        self.sign = sign

    def __repr__(self):
        return f"TensorPair({self.left!r} (x) {self.right!r}, {self.sign:+d})"


def coproduct(d: Diagram, parity: Parity):
    """Split at every chord-free cut; sign regroups the canonical monomial."""
    mono = canonical_monomial(d)
    out = []
    for c in range(d.n + 1):
        if any(a <= c < b for a, b in d.chords):
            continue
        left = Diagram(
            c,
            [p for p in d.chords if p[1] <= c],
            [p for p in d.bottom if p <= c],
            d.top[:c],
        )
        right = Diagram(
            d.n - c,
            [(a - c, b - c) for a, b in d.chords if a > c],
            [p - c for p in d.bottom if p > c],
            d.top[c:],
        )
        def _side(tok):
            return 0 if tok[1] <= c else 1

        regrouped = tuple(t for t in mono if _side(t) == 0) + tuple(
            t for t in mono if _side(t) == 1
        )
        sign = koszul_sign_between(mono, regrouped, parity)
        out.append(TensorPair(left, right, sign))
    return out


def coproduct_terms(x: LinComb, parity: Parity):
    """Coproduct of a combination as a {(left, right): coeff} dictionary."""
    acc = {}
    for d, c in x.items():
        for pair in coproduct(d, parity):
            key = (pair.left, pair.right)
            acc[key] = acc.get(key, 0) + c * pair.sign
            if not acc[key]:
                del acc[key]
    return acc


def tensor_multiply(t1, t2, parity: Parity):
    """Product on tensor-square dictionaries with the Koszul interchange sign."""
    acc = {}
    for (a1, a2), c1 in t1.items():
        for (b1, b2), c2 in t2.items():
            swap = total_parity(a2, parity) * total_parity(b1, parity)
            sgn = -1 if swap else 1
            left = shuffle_product(LinComb.of(a1), LinComb.of(b1), parity)
            right = shuffle_product(LinComb.of(a2), LinComb.of(b2), parity)
            for dl, cl in left.items():
                for dr, cr in right.items():
                    key = (dl, dr)
                    acc[key] = acc.get(key, 0) + sgn * c1 * c2 * cl * cr
                    if not acc[key]:
                        del acc[key]
    return acc


def tensor_twist(t, parity: Parity):
    acc = {}
    for (a, b), c in t.items():
        sgn = -1 if total_parity(a, parity) * total_parity(b, parity) else 1
        key = (b, a)
        acc[key] = acc.get(key, 0) + sgn * c
        if not acc[key]:
            del acc[key]
    return acc


# ---------------------------------------------------------------------------
# the gluing operation and divided powers

def vdash(a: LinComb, b: LinComb, parity: Parity) -> LinComb:
    """Left-most-point gluing, computed by its defining formula."""
    if not a or not b:
        return LinComb.zero()
    pa = a.degree_parity(parity)
    b.degree_parity(parity)  # homogeneity check
    d_ab = full_differential(divided_product([a, b], parity), parity)
    da_b = divided_product([full_differential(a, parity), b], parity)
    a_db = divided_product([a, full_differential(b, parity)], parity)
    core = d_ab - da_b - a_db.scaled(-1 if pa else 1)
    pref = 1 if pa else -1  # (-1)^(|A|-1)
    return arnold_reduce(core.scaled(pref), parity)


def divided_power(x: LinComb, ell: int, parity: Parity) -> LinComb:
    """ell-fold divided product; requires even degree outside characteristic 2."""
    if ell < 0:
        raise ValueError("negative divided power")
    if ell == 0:
        return LinComb.of(EMPTY, 1, x.ring)
    if not x:
        return LinComb.zero(x.ring)
    if x.ring.characteristic != 2 and x.degree_parity(parity) == 1:
        raise OddDegreeError(
            "divided powers need even total degree outside characteristic 2"
        )
    return divided_product([x] * ell, parity)


def bracket_over(args, base: Diagram, parity: Parity) -> LinComb:
    """Glue the left-most points of the factors onto the points of ``base``.

    ``base`` is a (generalized) diagram without top asterisks whose r-th
    point contributes its chords and bottom asterisk to the left-most point
    of the r-th factor in every ordered shuffle of the factors.
    """
    args = list(args)
    if base.total_top:
        raise TopAsteriskError("gluing base carries top asterisks")
    if len(args) != base.n:
        raise ArityMismatchError(
            f"base has {base.n} points but {len(args)} factors were given"
        )
    if base.n == 0:
        return make_unit()
    ring = args[0].ring
    acc = {}
    for combo in iproduct(*(x.items() for x in args)):
        blocks = [k for k, _ in combo]
        coeff = 1
        for _, c in combo:
            coeff = coeff * c
        if any(blk.n == 0 for blk in blocks):
            raise InvalidDiagramError(
                "bracket factors must have a left-most point"
            )
        if any(
            (r + 1) in base.bottom and 1 in blocks[r].bottom
            for r in range(len(blocks))
        ):
            continue
        for maps in _iter_shuffle_maps(blocks, True):
            tgt0, concat = _assemble(blocks, maps)
            firsts = [mp[0] for mp in maps]
            add_chords = [
                (firsts[a - 1], firsts[b - 1]) for a, b in base.chords
            ]
            all_chords = sorted(list(tgt0.chords) + add_chords)
            if not _is_forest(tgt0.n, all_chords):
                continue  # multi-edge or cycle from the gluing counts as zero
            new_bottom = sorted(
                set(tgt0.bottom) | {firsts[p - 1] for p in base.bottom}
            )
            tgt = Diagram(tgt0.n, all_chords, new_bottom, tgt0.top)
            mono = (
                concat
                + tuple(("C",) + p for p in add_chords)
                + tuple(("B", firsts[p - 1]) for p in base.bottom)
            )
            s = koszul_sign_between(mono, canonical_monomial(tgt), parity)
            acc[tgt] = acc.get(tgt, 0) + coeff * s
    return LinComb(acc, ring)


# ---------------------------------------------------------------------------
# tower decomposition and the triangular isomorphisms

@lru_cache(maxsize=200000)
def decompose(d: Diagram, parity: Parity):
    """Write a diagram as towers glued over its asterisk-free part.

    Returns (sigma, ks, base) with sigma = +-1 such that gluing the standard
    towers Z_{ks} over ``base`` yields sigma * d exactly.
    """
    ks = d.top
    base = Diagram(d.n, d.chords, d.bottom, (0,) * d.n)
    rebuilt = bracket_over([make_z(k, parity) for k in ks], base, parity)
    items = list(rebuilt.items())
    if len(items) != 1 or items[0][0] != d or abs(items[0][1]) != 1:
        raise InvalidDiagramError(f"tower decomposition failed for {d!r}")
    return items[0][1], ks, base


@lru_cache(maxsize=None)
def _iso_on_tower(k: int, parity: Parity, inverse: bool) -> LinComb:
    acc = LinComb.zero()
    for m in range(k + 1):
        term = vdash(make_z(k - m, parity), make_zhat(m, parity), parity)
        if inverse:
            e = (m + parity.eps * (m * (m - 1) // 2)) % 2
            if e:
                term = term.scaled(-1)
        acc = acc + term
    return acc


def _iso_apply(x: LinComb, parity: Parity, inverse: bool) -> LinComb:
    def per_diagram(d: Diagram) -> LinComb:
        sigma, ks, base = decompose(d, parity)
        factors = [_iso_on_tower(k, parity, inverse) for k in ks]
        out = bracket_over(factors, base, parity).scaled(sigma)
        return arnold_reduce(out, parity)

    return x.map_linear(per_diagram)


def iso_I(x: LinComb, parity: Parity) -> LinComb:
    """Triangular isomorphism from the horizontal complex to the full one."""
    return _iso_apply(x, parity, inverse=False)


def iso_I_inv(x: LinComb, parity: Parity) -> LinComb:
    """Explicit inverse of :func:`iso_I`."""
    return _iso_apply(x, parity, inverse=True)


def iso_I_hat(z: LinComb, t: LinComb, parity: Parity, strict=True) -> LinComb:
    """Replace towers by chord fans and multiply into the chord-only quotient.

    ``z`` must be supported on tower-column diagrams (variant Z) and ``t`` on
    neighbor-chord-free diagrams (variant T0); with ``strict=False`` the
    right factor may be any asterisk-free combination, which is how the map
    extends to the T0 lattice.
    """
    for key in z.support():
        if validate(key, "Z"):
            raise VariantMismatchError(f"{key!r} is not a Z-variant diagram")
    right_variant = "T0" if strict else "T"
    for key in t.support():
        if validate(key, right_variant):
            raise VariantMismatchError(
                f"{key!r} is not a {right_variant}-variant diagram"
            )
    acc = LinComb.zero(z.ring)
    for dz, cz in z.items():
        sigma, ks, _ = decompose(dz, parity)
        hat = divided_product([make_zhat(k, parity) for k in ks], parity)
        for dt, ct in t.items():
            prod = shuffle_product(hat, LinComb.of(dt), parity)
            acc = acc + prod.scaled(cz * ct * sigma)
    red = arnold_reduce(acc, parity)
    return LinComb({k: c for k, c in red.items() if not k.has_asterisks}, red.ring)
