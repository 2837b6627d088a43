"""Named verification suites: the release gate.

Each suite returns a report of (check name, ok, detail) lines so the CLI and
the acceptance tests share one implementation.  Random checks use explicit
seeds; nothing here is approximate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import factorial

from .complexes import (
    Variant,
    d_h,
    d_h_at,
    d_v,
    differential,
    differential_matrix,
    full_differential,
    slice_basis,
    slice_diagrams_all,
)
from .diagrams import (
    EVEN,
    ODD,
    PARITIES,
    Diagram,
    Parity,
    bigrading,
    serialize,
    total_parity,
    validate,
)
from .hopf import (
    bracket_over,
    coproduct_terms,
    divided_power,
    divided_product,
    iso_I,
    iso_I_inv,
    make_star,
    make_unit,
    make_z,
    make_zhat,
    shuffle_product,
    tensor_multiply,
    tensor_twist,
    vdash,
)
from .homology import (
    chord_space_dims,
    dual_homology_group,
    homology_group,
    induced_map_on_homology,
    kunneth_compare,
    zhat_class_generates,
)
from .lincomb import LinComb
from .relations import arnold_reduce, is_admissible, quantum_binomial, span_rank_oracle
from .rings import QQ, PrimeField


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)

    def add(self, name, ok, detail=""):
        self.checks.append(CheckResult(name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def lines(self):
        out = []
        for c in self.checks:
            mark = "PASS" if c.ok else "FAIL"
            line = f"[{mark}] {self.suite}: {c.name}"
            if c.detail and not c.ok:
                line += f" ({c.detail})"
            out.append(line)
        return out

    def summary(self) -> str:
        good = sum(1 for c in self.checks if c.ok)
        return f"{self.suite}: {good}/{len(self.checks)} checks passed"


# ---------------------------------------------------------------------------
# helpers

def _zero(lc, parity):
    return not arnold_reduce(lc, parity)


def _eq(a, b, parity):
    return arnold_reduce(a, parity) == arnold_reduce(b, parity)


def random_diagram(rng, max_n=3, max_top=2):
    """Small random strict diagram (bare points get patched with asterisks)."""
    n = rng.randint(1, max_n)
    chords = []
    for v in range(2, n + 1):
        if rng.random() < 0.45:
            chords.append((rng.randint(1, v - 1), v))
    bottom = {p for p in range(1, n + 1) if rng.random() < 0.3}
    top = [rng.randint(0, max_top) for _ in range(n)]
    d = Diagram(n, chords, sorted(bottom), top)
    for p in d.bare_points():
        if rng.random() < 0.5:
            bottom.add(p)
        else:
            top[p - 1] = 1
    return Diagram(n, chords, sorted(bottom), top)


def small_pool(parity, i_max=2, n_max=2):
    """Every strict diagram with complexity <= i_max and <= n_max points."""
    pool = []
    for i in range(0, i_max + 1):
        for j in range(0, 2 * i + 1):
            for d in slice_basis(Variant.TSS, parity, i, j).diagrams:
                if 1 <= d.n <= n_max:
                    pool.append(d)
    return pool


# ---------------------------------------------------------------------------
# suites

def suite_d_squared(i_max=4, parities=PARITIES, variants=tuple(Variant),
                    max_size=None) -> SuiteReport:
    rep = SuiteReport("d-squared")
    kwargs = {} if max_size is None else {"max_size": max_size}
    for v in variants:
        v = Variant.parse(v)
        for par in parities:
            bad = []
            checked = 0
            for i in range(0, i_max + 1):
                for j in range(0, 2 * i + 2):
                    m1 = differential_matrix(v, par, i, j, **kwargs)
                    if m1.source.dim == 0:
                        continue
                    checked += m1.source.dim
                    if j >= 1:
                        m0 = differential_matrix(v, par, i, j - 1, **kwargs)
                        if not m0.mat.compose_is_zero(m1.mat):
                            bad.append((i, j))
            rep.add(
                f"d.d=0 {v.value} parity={par.name} i<={i_max} "
                f"({checked} basis diagrams)",
                not bad,
                f"failures at {bad}" if bad else "",
            )
    return rep


def suite_iso_I(i_max=3, k_max=5, ab_max=6, parities=PARITIES) -> SuiteReport:
    rep = SuiteReport("iso-I")
    star = make_star()
    for par in parities:
        # boundary identities of the named families
        ok = all(
            _zero(d_h(next(iter(make_z(k, par).support())), par), par)
            for k in range(1, k_max + 1)
        )
        rep.add(f"d_h(Z_k)=0 k<={k_max} parity={par.name}", ok)
        ok = True
        for k in range(1, k_max + 1):
            lhs = full_differential(make_z(k, par), par)
            rhs = vdash(make_z(k - 1, par), star, par)
            if (par.eps * k) % 2:
                rhs = rhs.scaled(-1)
            ok = ok and _eq(lhs, rhs, par)
        rep.add(f"dZ_k = (-1)^(dk) Z_(k-1)|=* k<={k_max} parity={par.name}", ok)
        ok = True
        for k in range(1, k_max + 1):
            lhs = full_differential(make_zhat(k, par), par)
            rhs = vdash(star, make_zhat(k - 1, par), par)
            if (par.eps + 1) % 2:
                rhs = rhs.scaled(-1)
            ok = ok and _eq(lhs, rhs, par)
        rep.add(
            f"dZhat_k = (-1)^(d-1) *|=Zhat_(k-1) k<={k_max} parity={par.name}", ok
        )
        ok = True
        for a in range(0, ab_max + 1):
            for b in range(0, ab_max + 1 - a):
                got = vdash(make_z(a, par), make_z(b, par), par)
                want = make_z(a + b, par).scaled(
                    quantum_binomial(a, b, par.sign_d)
                )
                ok = ok and _eq(got, want, par)
                got = vdash(make_zhat(a, par), make_zhat(b, par), par)
                want = make_zhat(a + b, par).scaled(
                    quantum_binomial(a, b, par.sign_d)
                )
                ok = ok and _eq(got, want, par)
        rep.add(
            f"Z_a|=Z_b and fan analogue, signed binomials a+b<={ab_max} "
            f"parity={par.name}",
            ok,
        )
        # chain map, inverse, triangularity on full slices
        chain_ok = True
        inv_ok = True
        tri_ok = True
        for i in range(0, i_max + 1):
            for j in range(0, 2 * i + 1):
                basis = slice_basis(Variant.TSS, par, i, j)
                images = {}
                for d in basis.diagrams:
                    x = LinComb.of(d)
                    ix = iso_I(x, par)
                    images[d] = ix
                    lhs = iso_I(differential(Variant.TSS_H, x, par), par)
                    rhs = full_differential(ix, par)
                    if not _eq(lhs, rhs, par):
                        chain_ok = False
                    if not _eq(iso_I_inv(ix, par), x, par):
                        inv_ok = False
                for d, ix in images.items():
                    if ix.coeff(d) != 1:
                        tri_ok = False
                    for d2, c in ix.items():
                        if d2 != d and d2.total_top >= d.total_top and c:
                            tri_ok = False
        rep.add(f"I chain map on Tss i<={i_max} parity={par.name}", chain_ok)
        rep.add(f"I_inv . I = id i<={i_max} parity={par.name}", inv_ok)
        rep.add(
            f"I unitriangular in top-count order i<={i_max} parity={par.name}",
            tri_ok,
        )
        ok = all(
            _eq(iso_I(LinComb.of(d), par), LinComb.of(d), par)
            for i in range(0, i_max + 1)
            for j in range(0, 2 * i + 1)
            for d in slice_basis(Variant.TS, par, i, j).diagrams
        )
        rep.add(f"I = id on asterisk-free-top slices parity={par.name}", ok)
    return rep


def _leibniz_check(args, par):
    """Two-sided sum rule for the divided product."""
    ell = len(args)
    lhs = full_differential(divided_product(list(args), par), par)
    rhs = LinComb.zero()
    degs = [a.degree_parity(par) for a in args]
    for i in range(ell):
        sgn = (-1) ** (sum(degs[:i]) % 2)
        term = divided_product(
            list(args[:i]) + [full_differential(args[i], par)] + list(args[i + 1:]),
            par,
        )
        rhs = rhs + term.scaled(sgn)
    for i in range(ell - 1):
        sgn = (-1) ** ((sum(degs[: i + 1]) - 1) % 2)
        merged = vdash(args[i], args[i + 1], par)
        term = divided_product(
            list(args[:i]) + [merged] + list(args[i + 2:]), par
        ) if merged else LinComb.zero()
        rhs = rhs + term.scaled(sgn)
    return _eq(lhs, rhs, par)


def _bracket_leibniz_check(args, base, par):
    """Sum rule for the gluing bracket, with the base glued pairwise.

    The base gluing enters with its positional fronting sign stripped (the
    bracket recipe orients the base with its points already in front, so
    gluing the pair (i, i+1) crosses nothing).
    """
    ell = len(args)
    lhs = full_differential(bracket_over(list(args), base, par), par)
    rhs = LinComb.zero()
    degs = [a.degree_parity(par) for a in args]
    for i in range(ell):
        sgn = (-1) ** (sum(degs[:i]) % 2)
        term = bracket_over(
            list(args[:i]) + [full_differential(args[i], par)] + list(args[i + 1:]),
            base,
            par,
        )
        rhs = rhs + term.scaled(sgn)
    for i in range(ell - 1):
        sgn = (-1) ** ((sum(degs[: i + 1]) - 1 + i) % 2)
        merged = vdash(args[i], args[i + 1], par)
        glued_base = d_h_at(base, i + 1, par)
        for base2, cb in glued_base.items():
            if merged:
                term = bracket_over(
                    list(args[:i]) + [merged] + list(args[i + 2:]), base2, par
                )
                rhs = rhs + term.scaled(sgn * cb)
    return _eq(lhs, rhs, par)


def suite_hopf(n_random=500, seed=20260810, parities=PARITIES) -> SuiteReport:
    rep = SuiteReport("hopf-axioms")
    unit = make_unit()
    for par in parities:
        pool = small_pool(par, i_max=2, n_max=2)
        # exhaustive small: |= symmetry and associativity
        ok_sym = ok_assoc = True
        for da in pool:
            for db in pool:
                a, b = LinComb.of(da), LinComb.of(db)
                pa, pb = total_parity(da, par), total_parity(db, par)
                lhs = vdash(a, b, par)
                rhs = vdash(b, a, par)
                if ((pa - 1) * (pb - 1)) % 2:
                    rhs = rhs.scaled(-1)
                if not _eq(lhs, rhs, par):
                    ok_sym = False
        rng = random.Random(seed)
        for _ in range(40):
            da, db, dc = (random_diagram(rng, max_n=2, max_top=1) for _ in range(3))
            a, b, c = (LinComb.of(x) for x in (da, db, dc))
            if not _eq(vdash(vdash(a, b, par), c, par),
                       vdash(a, vdash(b, c, par), par), par):
                ok_assoc = False
        rep.add(f"|= graded symmetry (exhaustive n<=2) parity={par.name}", ok_sym)
        rep.add(f"|= associativity (random) parity={par.name}", ok_assoc)
        # unit and shuffle associativity
        ok = True
        rng = random.Random(seed + 1)
        for _ in range(30):
            d = random_diagram(rng)
            x = LinComb.of(d)
            if shuffle_product(unit, x, par) != x or shuffle_product(x, unit, par) != x:
                ok = False
        rep.add(f"unit of the shuffle product parity={par.name}", ok)
        ok = True
        rng = random.Random(seed + 2)
        for _ in range(60):
            da, db, dc = (random_diagram(rng, max_n=2) for _ in range(3))
            a, b, c = (LinComb.of(x) for x in (da, db, dc))
            lhs = shuffle_product(shuffle_product(a, b, par), c, par)
            rhs = shuffle_product(a, shuffle_product(b, c, par), par)
            if lhs != rhs:
                ok = False
        rep.add(f"shuffle associativity parity={par.name}", ok)
        # coassociativity and bialgebra compatibility
        ok_co = True
        rng = random.Random(seed + 3)
        for _ in range(60):
            d = random_diagram(rng)
            left = {}
            right = {}
            for (l, r), c in coproduct_terms(LinComb.of(d), par).items():
                for (l2, m2), c2 in coproduct_terms(LinComb.of(l), par).items():
                    key = (l2, m2, r)
                    left[key] = left.get(key, 0) + c * c2
                    if not left[key]:
                        del left[key]
                for (m2, r2), c2 in coproduct_terms(LinComb.of(r), par).items():
                    key = (l, m2, r2)
                    right[key] = right.get(key, 0) + c * c2
                    if not right[key]:
                        del right[key]
            if left != right:
                ok_co = False
        rep.add(f"coassociativity parity={par.name}", ok_co)
        ok_bi = True
        rng = random.Random(seed + 4)
        for _ in range(60):
            da, db = (random_diagram(rng, max_n=2) for _ in range(2))
            a, b = LinComb.of(da), LinComb.of(db)
            lhs = coproduct_terms(shuffle_product(a, b, par), par)
            rhs = tensor_multiply(
                coproduct_terms(a, par), coproduct_terms(b, par), par
            )
            if lhs != rhs:
                ok_bi = False
        rep.add(f"coproduct is multiplicative parity={par.name}", ok_bi)
        # Leibniz rules
        ok = True
        rng = random.Random(seed + 5)
        for _ in range(50):
            ell = rng.randint(2, 3)
            args = [LinComb.of(random_diagram(rng, max_n=2, max_top=1))
                    for _ in range(ell)]
            if not _leibniz_check(args, par):
                ok = False
        rep.add(f"divided-product sum rule l<=3 parity={par.name}", ok)
        ok = True
        rng = random.Random(seed + 6)
        for _ in range(40):
            ell = rng.randint(2, 3)
            args = [LinComb.of(random_diagram(rng, max_n=2, max_top=1))
                    for _ in range(ell)]
            base_bottom = [p for p in range(1, ell + 1) if rng.random() < 0.4]
            base_chords = []
            if ell == 3 and rng.random() < 0.4:
                base_chords = [(1, 3)] if rng.random() < 0.5 else [(1, 2)]
            base = Diagram(ell, base_chords, base_bottom, (0,) * ell)
            if not _bracket_leibniz_check(args, base, par):
                ok = False
        rep.add(f"bracket sum rule l<=3 parity={par.name}", ok)
        # divided powers
        ok_parts = []
        evens = [d for d in small_pool(par, i_max=2, n_max=2)
                 if total_parity(d, par) == 0]
        for d in evens:
            x = LinComb.of(d)
            ok_parts.append(_zero(vdash(x, x, par), par))
            for ell in (2, 3):
                pw = divided_power(x, ell, par)
                lhs = pw.scaled(factorial(ell))
                rhs = x
                for _ in range(ell - 1):
                    rhs = shuffle_product(rhs, x, par)
                ok_parts.append(lhs == rhs)
                # boundary rule
                lhs2 = full_differential(pw, par)
                rhs2 = shuffle_product(
                    full_differential(x, par),
                    divided_power(x, ell - 1, par),
                    par,
                )
                ok_parts.append(_eq(lhs2, rhs2, par))
                # coproduct of a divided power of a primitive element
                from .diagrams import EMPTY

                primitive = coproduct_terms(x, par) == {
                    (d, EMPTY): 1,
                    (EMPTY, d): 1,
                }
                if primitive:
                    got = coproduct_terms(pw, par)
                    want = {}
                    for a in range(ell + 1):
                        pa = divided_power(x, a, par)
                        pb = divided_power(x, ell - a, par)
                        for dl, cl in pa.items():
                            for dr, cr in pb.items():
                                key = (dl, dr)
                                want[key] = want.get(key, 0) + cl * cr
                                if not want[key]:
                                    del want[key]
                    ok_parts.append(got == want)
        rep.add(
            f"divided powers: x|=x=0, l! scaling, boundary and coproduct rules "
            f"({len(evens)} even elements) parity={par.name}",
            all(ok_parts),
        )
        rep.add(
            f"x^<0> is the unit parity={par.name}",
            divided_power(LinComb.of(pool[0]), 0, par) == unit,
        )
        # random mixed checks to the requested volume
        rng = random.Random(seed + 7)
        remaining = max(0, n_random - 240)
        ok = True
        for _ in range(remaining // len(parities)):
            da, db = (random_diagram(rng, max_n=3, max_top=1) for _ in range(2))
            a, b = LinComb.of(da), LinComb.of(db)
            split = divided_product([a, b], par)
            other = divided_product([b, a], par)
            sgn = (-1) ** (total_parity(da, par) * total_parity(db, par))
            if not _eq(split + other.scaled(sgn), shuffle_product(a, b, par), par):
                ok = False
        rep.add(
            f"<A,B> + (-1)^(|A||B|) <B,A> = A*B (random volume) parity={par.name}",
            ok,
        )
    return rep


def suite_quasi_iso(i_max=3, parities=PARITIES) -> SuiteReport:
    rep = SuiteReport("quasi-iso")
    for name in ("proj_Tss_T", "incl_T0_Ts", "iso_I", "iso_I_hat"):
        for par in parities:
            bad = []
            for i in range(0, i_max + 1):
                for j in range(0, 2 * i + 1):
                    r = induced_map_on_homology(name, par, i, j)
                    if not r.is_isomorphism:
                        bad.append((i, j, str(r.source_group), str(r.target_group)))
            rep.add(
                f"{name} induces isomorphisms i<={i_max} parity={par.name}",
                not bad,
                f"failures {bad}" if bad else "",
            )
    return rep


def suite_kunneth(i_max=4, z_i_max=3, parities=PARITIES) -> SuiteReport:
    rep = SuiteReport("kunneth")
    fields = (PrimeField(2), PrimeField(3))
    for par in parities:
        r_small = kunneth_compare(par, z_i_max)
        bad = [(e.i, e.j, str(e.lhs), str(e.rhs))
               for e in r_small.entries if not e.match]
        rep.add(
            f"integral two-factor comparison i<={z_i_max} parity={par.name}",
            not bad,
            f"failures {bad}" if bad else "",
        )
        r_field = kunneth_compare(par, i_max, fields=fields)
        badf = [e for e in r_field.field_entries if not e[-1]]
        rep.add(
            f"F2/F3 dimension convolution i<={i_max} parity={par.name}",
            not badf,
            f"failures {badf[:4]}" if badf else "",
        )
    return rep


def suite_chord_split(order_max=5, even_order_max=4) -> SuiteReport:
    rep = SuiteReport("chord-split")
    oracle = chord_space_dims(order_max)
    engine = [
        dual_homology_group(Variant.T, ODD, i, 2 * i, QQ)
        for i in range(order_max + 1)
    ]
    rep.add(
        f"matching-oracle dims == lower-diagonal dims (odd) i<={order_max}",
        oracle == engine,
        f"oracle={oracle} engine={engine}",
    )
    rep_odd = kunneth_compare(ODD, 0, diagonal_i_max=order_max)
    bad = {k: v for k, v in rep_odd.diagonal.items() if v[0] != v[1]}
    rep.add(
        f"polynomial splitting of the diagonal (odd) i<={order_max}",
        not bad,
        f"failures {bad}" if bad else "",
    )
    rep_even = kunneth_compare(EVEN, 0, diagonal_i_max=even_order_max)
    bad = {k: v for k, v in rep_even.diagonal.items() if v[0] != v[1]}
    rep.add(
        f"super splitting of the diagonal (even) i<={even_order_max}",
        not bad,
        f"failures {bad}" if bad else "",
    )
    return rep


def suite_arnold(i_max=4, n_schedules=500, seed=20260810,
                 parities=PARITIES) -> SuiteReport:
    rep = SuiteReport("arnold")
    rng = random.Random(seed)
    pool = []
    for i in range(2, i_max + 1):
        for j in range(0, 2 * i + 1):
            for d in slice_diagrams_all(Variant.TSS, i, j):
                if not is_admissible(d):
                    pool.append(d)
    ok = True
    for k in range(n_schedules):
        d = pool[rng.randrange(len(pool))]
        par = PARITIES[k % 2]
        x = LinComb.of(d, 1 + (k % 3))
        det = arnold_reduce(x, par)
        sched = arnold_reduce(x, par, rng=random.Random(seed + k))
        if det != sched:
            ok = False
    rep.add(
        f"confluence under {n_schedules} randomized schedules "
        f"({len(pool)} reducible diagrams)",
        ok,
    )
    for par in parities:
        for v in (Variant.TSS, Variant.T, Variant.TS, Variant.Z):
            bad = []
            for i in range(0, i_max + 1):
                for j in range(0, 2 * i + 1):
                    allv = slice_diagrams_all(v, i, j)
                    if not allv:
                        continue
                    want = slice_basis(v, par, i, j).dim
                    got = span_rank_oracle(allv, par, QQ)
                    if got != want:
                        bad.append((i, j, got, want))
            rep.add(
                f"oriented-span oracle == admissible count {v.value} "
                f"i<={i_max} parity={par.name}",
                not bad,
                f"failures {bad}" if bad else "",
            )
    return rep


SUITES = {
    "d-squared": suite_d_squared,
    "iso-I": suite_iso_I,
    "hopf-axioms": suite_hopf,
    "quasi-iso": suite_quasi_iso,
    "kunneth": suite_kunneth,
    "chord-split": suite_chord_split,
}
