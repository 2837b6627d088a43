"""Decorated line diagrams: the combinatorial atoms of all complexes here.

A diagram consists of n active points on a horizontal line (identified with
1..n), oriented chords between distinct points whose underlying graph must be
a forest, at most one bottom asterisk per point, and a count of top asterisks
stacked on the vertical half-line over each point.  Strict diagrams require
every point to carry a chord end or an asterisk; gluing operations also use
"generalized" diagrams in which bare points are allowed.

Orientation bookkeeping.  Every feature of a diagram contributes one token:

    ("P", i)      active point                degree -1
    ("H", i, r)   height of r-th top asterisk degree -1   (r = 1 is topmost)
    ("C", a, b)   chord oriented a -> b       degree d-1
    ("B", i)      bottom asterisk             degree d-1
    ("T", i, r)   top asterisk                degree d-1

An orienting monomial is an ordering of all tokens of a diagram.  Reordering
multiplies the diagram by the Koszul sign of the permutation (odd-degree
tokens anticommute), and reversing a chord multiplies it by (-1)^d.  Only the
parity of the ambient dimension d ever enters a sign or a degree, so every
sign-aware operation takes a :class:`Parity` and nothing ever consumes d
itself.

The canonical monomial of a diagram lists the point tokens P(1..n), then the
height tokens H grouped by point with r increasing, then the chord tokens in
lexicographic order (every chord stored with a < b), then the bottom tokens,
then the top tokens grouped by (i, r).  A :class:`SignedDiagram` is a
canonical diagram together with a sign relative to its canonical monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidDiagramError, TokenMismatchError

VARIANTS = ("Tss", "Tss_h", "Ts", "T", "T0", "Z")


@dataclass(frozen=True)
class Parity:
    """Parity of the ambient dimension: the only part of d that signs use."""

    eps: int  # d mod 2

    def __post_init__(self):
        if self.eps not in (0, 1):
            raise ValueError("parity must be 0 (even) or 1 (odd)")

    @property
    def sign_d(self) -> int:
        """(-1)^d."""
        return 1 if self.eps == 0 else -1

    @property
    def name(self) -> str:
        return "even" if self.eps == 0 else "odd"

    @staticmethod
    def from_name(name: str) -> "Parity":
        if name == "even":
            return EVEN
        if name == "odd":
            return ODD
        raise ValueError(f"unknown parity {name!r}")

    def __repr__(self):
        return f"Parity({self.name})"


EVEN = Parity(0)
ODD = Parity(1)
PARITIES = (EVEN, ODD)


class Diagram:
    """Immutable diagram.

    ``chords`` are stored as ordered pairs exactly as given; the canonical
    form has every pair (a, b) with a < b.  ``top`` is the tuple of top
    asterisk counts per point, ``bottom`` the sorted tuple of bottom-marked
    points.  Construction performs no validation; see :func:`validate`.
    """

    __slots__ = ("n", "chords", "bottom", "top", "_hash")

    def __init__(self, n, chords=(), bottom=(), top=None):
        self.n = int(n)
        self.chords = tuple(sorted((int(a), int(b)) for a, b in chords))
        self.bottom = tuple(sorted(int(p) for p in bottom))
        if top is None:
            top = (0,) * self.n
        self.top = tuple(int(k) for k in top)
        self._hash = hash((self.n, self.chords, self.bottom, self.top))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (
            isinstance(other, Diagram)
            and self.n == other.n
            and self.chords == other.chords
            and self.bottom == other.bottom
            and self.top == other.top
        )

    def __lt__(self, other):
        return serialize(self) < serialize(other)

    @property
    def is_canonical(self) -> bool:
        return all(a < b for a, b in self.chords)

    @property
    def total_top(self) -> int:
        return sum(self.top)

    @property
    def has_asterisks(self) -> bool:
        return bool(self.bottom) or self.total_top > 0

    def bare_points(self):
        """Points with no chord end and no asterisk (nonempty => generalized)."""
        covered = set(self.bottom)
        for a, b in self.chords:
            covered.add(a)
            covered.add(b)
        covered.update(p for p in range(1, self.n + 1) if self.top[p - 1] > 0)
        return tuple(p for p in range(1, self.n + 1) if p not in covered)

    def __repr__(self):
        return f"Diagram[{serialize(self)}]"


EMPTY = Diagram(0)


def empty_diagram() -> Diagram:
    return EMPTY


@dataclass(frozen=True)
class SignedDiagram:
    diagram: Diagram
    sign: int


@dataclass(frozen=True)
class Bigrading:
    """Complexity i and number of geometrically distinct points j.

    The spectral-sequence coordinates are p = -i and q = i*d - j; the total
    degree is i*(d-1) - j.  Both depend on d itself, which is never fixed
    here, so they are exposed as coefficient pairs (m, c) meaning m*d + c and
    as a parity once a :class:`Parity` is supplied.
    """

    i: int
    j: int

    @property
    def p(self) -> int:
        return -self.i

    @property
    def q_coeffs(self):
        return (self.i, -self.j)

    @property
    def total_degree_coeffs(self):
        return (self.i, -(self.i + self.j))

    def total_parity(self, parity: Parity) -> int:
        # i*(d-1) - j mod 2, with (d-1) mod 2 = eps + 1
        return (self.i * (parity.eps + 1) + self.j) % 2

    def q_text(self) -> str:
        return f"{self.i}d-{self.j}"


# ---------------------------------------------------------------------------
# tokens and Koszul signs

def token_parity(tok, parity: Parity) -> int:
    """Degree parity of one token: 1 for odd, 0 for even."""
    if tok[0] in ("P", "H"):
        return 1
    return (parity.eps + 1) % 2  # parity of d-1


@lru_cache(maxsize=200000)
def canonical_monomial(d: Diagram):
    """Reference ordering of all tokens of a diagram.

    For canonical diagrams this is *the* canonical monomial; for raw diagrams
    (flipped chords) it is the same layout with the chords as stored.
    """
    toks = [("P", i) for i in range(1, d.n + 1)]
    toks += [
        ("H", i, r)
        for i in range(1, d.n + 1)
        for r in range(1, d.top[i - 1] + 1)
    ]
    toks += [("C", a, b) for a, b in d.chords]
    toks += [("B", i) for i in d.bottom]
    toks += [
        ("T", i, r)
        for i in range(1, d.n + 1)
        for r in range(1, d.top[i - 1] + 1)
    ]
    return tuple(toks)


def koszul_sign(perm, degrees) -> int:
    """Sign of permuting tokens with the given degree parities.

    ``perm[k]`` is the original position of the token placed at position k;
    ``degrees`` lists the degree parity (0 or 1) of each original position.
    Each inversion of two odd tokens contributes -1.
    """
    if len(perm) != len(degrees):
        raise ValueError("permutation and degree list lengths differ")
    odd = [p for p in perm if degrees[p]]
    inv = 0
    for x in range(len(odd)):
        ox = odd[x]
        for y in range(x + 1, len(odd)):
            if ox > odd[y]:
                inv += 1
    return -1 if inv & 1 else 1


def koszul_sign_between(src, dst, parity: Parity) -> int:
    """Koszul sign of reordering monomial ``src`` into monomial ``dst``."""
    pos = {tok: k for k, tok in enumerate(dst)}
    if len(pos) != len(dst) or len(src) != len(dst):
        raise TokenMismatchError("monomials must list the same distinct tokens")
    try:
        seq = [pos[t] for t in src if token_parity(t, parity)]
    except KeyError as e:
        raise TokenMismatchError(f"token {e.args[0]} missing from target") from None
    inv = 0
    for x in range(len(seq)):
        sx = seq[x]
        for y in range(x + 1, len(seq)):
            if sx > seq[y]:
                inv += 1
    return -1 if inv & 1 else 1


# ---------------------------------------------------------------------------
# validation

def validate(d: Diagram, variant: str = "Tss", generalized: bool = False):
    """Structured list of violated conditions; empty means valid."""
    issues = []
    if d.n < 0:
        return ["negative point count"]
    if len(d.top) != d.n:
        issues.append("top counts do not match point count")
    if any(k < 0 for k in d.top):
        issues.append("negative top count")
    if any(p < 1 or p > d.n for p in d.bottom):
        issues.append("bottom asterisk outside 1..n")
    if len(set(d.bottom)) != len(d.bottom):
        issues.append("repeated bottom asterisk")
    seen_pairs = set()
    parent = list(range(d.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in d.chords:
        if not (1 <= a <= d.n and 1 <= b <= d.n) or a == b:
            issues.append(f"bad chord ({a},{b})")
            continue
        key = (min(a, b), max(a, b))
        if key in seen_pairs:
            issues.append(f"multi-edge on pair {key}")
            continue
        seen_pairs.add(key)
        ra, rb = find(a), find(b)
        if ra == rb:
            issues.append(f"cycle through chord ({a},{b})")
        else:
            parent[ra] = rb
    if issues:
        return issues
    if not generalized and d.bare_points():
        issues.append(f"isolated points {d.bare_points()} in strict mode")
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if variant in ("Ts", "T", "T0") and d.total_top > 0:
        issues.append(f"variant {variant} forbids top asterisks")
    if variant in ("T", "T0") and d.bottom:
        issues.append(f"variant {variant} forbids bottom asterisks")
    if variant == "T0" and any(b == a + 1 for a, b in d.chords):
        issues.append("variant T0 forbids chords joining neighbor points")
    if variant == "Z" and (d.chords or d.bottom):
        issues.append("variant Z allows only top asterisks")
    return issues


def check_valid(d: Diagram, variant: str = "Tss", generalized: bool = False):
    issues = validate(d, variant, generalized)
    if issues:
        raise InvalidDiagramError(f"{d!r}: " + "; ".join(issues))


# ---------------------------------------------------------------------------
# bigrading and canonicalization

def bigrading(d: Diagram) -> Bigrading:
    return Bigrading(
        i=len(d.chords) + len(d.bottom) + d.total_top,
        j=d.n + d.total_top,
    )


def total_parity(d: Diagram, parity: Parity) -> int:
    """Parity of the total degree i(d-1) - j of a diagram."""
    return bigrading(d).total_parity(parity)


def canonicalize(raw: Diagram, monomial, parity: Parity) -> SignedDiagram:
    """Normalize chord orientations and the monomial order.

    Returns the canonical diagram together with the sign picked up by
    reorienting chords, each flip contributing (-1)^d, and by the Koszul
    permutation from ``monomial`` to the canonical monomial.
    """
    expected = canonical_monomial(raw)
    if sorted(monomial) != sorted(expected):
        raise TokenMismatchError(
            "monomial does not cover the diagram's generators exactly once"
        )
    issues = [m for m in validate(raw, generalized=True)]
    if issues:
        raise InvalidDiagramError("; ".join(issues))
    sign = 1
    toks = list(monomial)
    flipped = False
    for k, tok in enumerate(toks):
        if tok[0] == "C" and tok[1] > tok[2]:
            toks[k] = ("C", tok[2], tok[1])
            sign *= parity.sign_d
            flipped = True
    if flipped:
        canon = Diagram(
            raw.n,
            [(min(a, b), max(a, b)) for a, b in raw.chords],
            raw.bottom,
            raw.top,
        )
    else:
        canon = raw
    sign *= koszul_sign_between(tuple(toks), canonical_monomial(canon), parity)
    return SignedDiagram(canon, sign)


# ---------------------------------------------------------------------------
# serialization: deterministic, lexicographically sortable, bit-stable

def serialize(d: Diagram) -> str:
    chords = ",".join(f"{a}-{b}" for a, b in d.chords)
    bottom = ",".join(str(p) for p in d.bottom)
    top = ",".join(str(k) for k in d.top)
    return f"{d.n};chords={chords};bottom={bottom};top={top}"


def parse_diagram(text: str) -> Diagram:
    head, chords_s, bottom_s, top_s = text.strip().split(";")
    n = int(head)
    if not chords_s.startswith("chords=") or not bottom_s.startswith("bottom=") \
            or not top_s.startswith("top="):
        raise ValueError(f"malformed diagram text {text!r}")
    chords_s = chords_s[len("chords="):]
    bottom_s = bottom_s[len("bottom="):]
    top_s = top_s[len("top="):]
    chords = []
    if chords_s:
        for part in chords_s.split(","):
            a, b = part.split("-")
            chords.append((int(a), int(b)))
    bottom = [int(p) for p in bottom_s.split(",")] if bottom_s else []
    top = [int(k) for k in top_s.split(",")] if top_s else [0] * n
    if n == 0:
        top = []
    return Diagram(n, chords, bottom, top)
