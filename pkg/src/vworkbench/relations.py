"""Linear algebra over diagrams: the signed binomial, the three-term chord
relations, and normalization onto the admissible forest basis.

The three-term relation on chords a--v, b--v, a--b (any triple of points)
reads, once every chord is written small -> large,

    C(a,v) C(b,v) = C(a,b) C(b,v) - C(a,b) C(a,v)        (a < b < v)

with the two tokens adjacent in that order; all other tokens are untouched.
Rewriting a pair headed at v strictly decreases the sum of chord heads, so
normalization terminates, and the admissible basis consists of the forests in
which every point is the larger endpoint of at most one chord (such chord
sets are automatically acyclic: the top of a cycle would head two edges).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from math import comb, gcd

from .diagrams import (
    Diagram,
    Parity,
    canonical_monomial,
    check_valid,
    koszul_sign_between,
)
from .errors import NonTerminationError
from .lincomb import LinComb
from .rings import QQ, PrimeField, Ring, require_field
from .snf import IntMat, rank_field


def quantum_binomial(k: int, n: int, q: int) -> int:
    """Signed count of (k, n) shuffles at q = +1 or -1.

    q=+1 counts all C(k+n, k) shuffles; q=-1 counts even minus odd shuffles,
    which vanishes when k and n are both odd and equals C((k+n)//2, k//2)
    otherwise.
    """
    if k < 0 or n < 0:
        raise ValueError("binomial arguments must be non-negative")
    if q == 1:
        return comb(k + n, k)
    if q == -1:
        if k % 2 == 1 and n % 2 == 1:
            return 0
        return comb((k + n) // 2, k // 2)
    raise ValueError("q must be +1 or -1")


def is_admissible(d: Diagram) -> bool:
    """Every point heads (is the larger endpoint of) at most one chord."""
    heads = []
    for a, b in d.chords:
        if a >= b:
            return False
        heads.append(b)
    return len(heads) == len(set(heads))


def _double_head(d: Diagram):
    """Deterministic choice of a violating triple (a, b, v), or None."""
    by_head = {}
    for a, b in d.chords:
        by_head.setdefault(b, []).append(a)
    for v in sorted(by_head, reverse=True):
        tails = sorted(by_head[v])
        if len(tails) > 1:
            return tails[0], tails[1], v
    return None


def _double_head_random(d: Diagram, rng):
    options = []
    by_head = {}
    for a, b in d.chords:
        by_head.setdefault(b, []).append(a)
    for v in sorted(by_head):
        tails = sorted(by_head[v])
        if len(tails) > 1:
            options.extend((a, b, v) for a, b in combinations(tails, 2))
    if not options:
        return None
    return options[rng.randrange(len(options))]


def arnold_rewrite(d: Diagram, a: int, b: int, v: int, parity: Parity):
    """One rewrite of the pair (a,v),(b,v) headed at v; two signed diagrams."""
    mono = canonical_monomial(d)
    t_av, t_bv = ("C", a, v), ("C", b, v)
    rest = tuple(t for t in mono if t != t_av and t != t_bv)
    arranged = (t_av, t_bv) + rest
    s0 = koszul_sign_between(mono, arranged, parity)
    base = set(d.chords)
    base.discard(t_av[1:])
    base.discard(t_bv[1:])
    out = []
    for rel_sign, kept in ((1, (b, v)), (-1, (a, v))):
        child = Diagram(d.n, sorted(base | {(a, b), kept}), d.bottom, d.top)
        mono_child = (("C", a, b), ("C",) + kept) + rest
        s1 = koszul_sign_between(mono_child, canonical_monomial(child), parity)
        out.append((child, s0 * rel_sign * s1))
    return out


@lru_cache(maxsize=200000)
def _reduce_diagram(d: Diagram, parity: Parity):
    """Admissible normal form of a single diagram, as a term tuple."""
    fuel = sum(b for _, b in d.chords) + 1
    acc = {}
    stack = [(d, 1, fuel)]
    while stack:
        cur, coeff, fu = stack.pop()
        pick = _double_head(cur)
        if pick is None:
            acc[cur] = acc.get(cur, 0) + coeff
            continue
        if fu <= 0:
            raise NonTerminationError("head-sum bound exceeded during rewriting")
        for child, s in arnold_rewrite(cur, *pick, parity):
            stack.append((child, coeff * s, fu - 1))
    return tuple((k, v) for k, v in acc.items() if v)


def arnold_reduce(x: LinComb, parity: Parity, rng=None) -> LinComb:
    """Unique representative of a combination on the admissible basis.

    With ``rng`` the rewriting schedule is randomized (and not memoized); by
    confluence the result must coincide with the deterministic one.
    """
    if rng is None:
        out = {}
        for d, c in x.items():
            if _double_head(d) is None:
                out[d] = out.get(d, 0) + c
                continue
            for k, v in _reduce_diagram(d, parity):
                out[k] = out.get(k, 0) + c * v
        return LinComb(out, x.ring)
    out = {}
    stack = [(d, c, sum(b for _, b in d.chords) + 1) for d, c in x.items()]
    while stack:
        cur, coeff, fu = stack.pop(rng.randrange(len(stack)))
        pick = _double_head_random(cur, rng)
        if pick is None:
            out[cur] = out.get(cur, 0) + coeff
            continue
        if fu <= 0:
            raise NonTerminationError("head-sum bound exceeded during rewriting")
        for child, s in arnold_rewrite(cur, *pick, parity):
            stack.append((child, coeff * s, fu - 1))
    return LinComb(out, x.ring)


# ---------------------------------------------------------------------------
# independent rank oracle over the raw (oriented) diagram span

def _oriented_monomial(d: Diagram, flips):
    """Canonical-order token layout with chosen chord orientations."""
    toks = []
    for tok in canonical_monomial(d):
        if tok[0] == "C" and (tok[1], tok[2]) in flips:
            toks.append(("C", tok[2], tok[1]))
        else:
            toks.append(tok)
    return tuple(toks)


def _is_forest(n, pairs):
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    seen = set()
    for a, b in pairs:
        if (a, b) in seen:
            return False
        seen.add((a, b))
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def span_rank_oracle(diagrams, parity: Parity, field: Ring = QQ) -> int:
    """Dimension of the raw oriented-diagram span modulo flip and three-term
    relations, by row reduction over a field.

    The raw basis consists of every input diagram with every assignment of
    chord orientations; the relation rows are all single-chord reorientations
    (a flip costs (-1)^d) and all three-term instances whose members are
    forests.  The input must be closed under replacing a shared-endpoint
    chord pair by either other pairing of the triple (full bigraded slices
    of the free-quotient complex variants are).
    """
    require_field(field)
    for d in diagrams:
        check_valid(d, generalized=True)
    raws = []
    for d in diagrams:
        for mask in product((False, True), repeat=len(d.chords)):
            flips = frozenset(p for p, m in zip(d.chords, mask) if m)
            raws.append((d, flips))
    index = {key: k for k, key in enumerate(raws)}
    q = parity.sign_d
    seen = set()
    rows = []

    def push(row):
        items = sorted(row.items())
        g = 0
        for _, v in items:
            g = gcd(g, v)
        if g == 0:
            return
        if items[0][1] < 0:
            g = -g
        key = tuple((i, v // g) for i, v in items)
        if key not in seen:
            seen.add(key)
            rows.append(dict(key))

    for d, flips in raws:
        for pair in d.chords:
            other = flips ^ {pair}
            push({index[(d, other)]: 1, index[(d, flips)]: -q})

    for d in diagrams:
        for c1, c2 in combinations(d.chords, 2):
            shared = set(c1) & set(c2)
            if len(shared) != 1:
                continue
            y = shared.pop()
            x = c1[0] if c1[1] == y else c1[1]
            z = c2[0] if c2[1] == y else c2[1]
            base_pairs = tuple(p for p in d.chords if p != c1 and p != c2)
            for mask in product((False, True), repeat=len(base_pairs)):
                base_flips = frozenset(
                    p for p, m in zip(base_pairs, mask) if m
                )
                row = {}
                ok = True
                for p1, p2 in (
                    ((x, y), (y, z)),
                    ((y, z), (z, x)),
                    ((z, x), (x, y)),
                ):
                    n1 = (min(p1), max(p1))
                    n2 = (min(p2), max(p2))
                    pairs = sorted(set(base_pairs) | {n1, n2})
                    if len(pairs) != len(base_pairs) + 2 or not _is_forest(d.n, pairs):
                        ok = False
                        break
                    term = Diagram(d.n, pairs, d.bottom, d.top)
                    term_flips = base_flips | {
                        n for n, p in ((n1, p1), (n2, p2)) if p[0] > p[1]
                    }
                    key = (term, frozenset(term_flips))
                    if key not in index:
                        raise ValueError(
                            "input diagrams are not closed under the three-term system"
                        )
                    rest = tuple(
                        t
                        for t in _oriented_monomial(d, base_flips)
                        if t[0] != "C"
                        or (min(t[1], t[2]), max(t[1], t[2])) not in (c1, c2)
                    )
                    written = (("C",) + p1, ("C",) + p2) + rest
                    coef = koszul_sign_between(
                        written, _oriented_monomial(*key), parity
                    )
                    k = index[key]
                    row[k] = row.get(k, 0) + coef
                if ok:
                    push(row)

    mat = IntMat(len(rows), len(raws))
    for r, row in enumerate(rows):
        for c, v in row.items():
            mat.cols[c][r] = v
    p = field.p if isinstance(field, PrimeField) else None
    return len(raws) - rank_field(mat, p)
