"""Acceptance gate: every release criterion at its stated scale.

Each test prints one PASS/FAIL line.  Run with ``pytest -s`` to see them;
the optional depth-6 torsion computation only runs when VW_RUN_OPTIONAL=1.
"""

import os
import random
import time

import pytest

from vworkbench.complexes import Variant, slice_basis, slice_diagrams_all
from vworkbench.diagrams import EVEN, ODD, PARITIES
from vworkbench.homology import (
    HomologyGroup,
    chord_space_dims,
    dual_homology_group,
    homology_group,
    induced_map_on_homology,
    kunneth_compare,
    zhat_class_generates,
    zhat_class_is_nonzero,
)
from vworkbench.hopf import shuffle_product
from vworkbench.lincomb import LinComb
from vworkbench.rings import QQ, PrimeField
from vworkbench import verify


def _report(number, ok, text):
    print(f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {text}")
    assert ok, text


def test_criterion_01_d_squared_zero():
    t0 = time.time()
    rep = verify.suite_d_squared(i_max=4, parities=PARITIES,
                                 variants=tuple(Variant))
    elapsed = time.time() - t0
    _report(1, rep.ok and elapsed < 120,
            f"d.d = 0 for all 6 variants, both parities, i <= 4 "
            f"({elapsed:.1f}s < 120s)")


def test_criterion_02_t0_upper_diagonal_trivial():
    t0 = time.time()
    ok = True
    for par in PARITIES:
        for i in range(2, 6):
            g = homology_group("T0", par, i, i + 1)
            ok = ok and g.is_trivial
    elapsed = time.time() - t0
    _report(2, ok and elapsed < 60,
            f"H(T0) trivial at (i, i+1) for 2 <= i <= 5, both parities "
            f"({elapsed:.1f}s < 60s)")


EXPECTED_UPPER = {
    "even": {1: HomologyGroup(1), 2: HomologyGroup(0, (2,)),
             3: HomologyGroup(0, (3,)), 4: HomologyGroup(0, (2,)),
             5: HomologyGroup(0, (5,))},
    "odd": {1: HomologyGroup(1), 2: HomologyGroup(1),
            3: HomologyGroup(0), 4: HomologyGroup(0, (2,)),
            5: HomologyGroup(0)},
}


def test_criterion_03_upper_diagonal_torsion_table():
    ok = True
    details = []
    for par in PARITIES:
        for i in range(1, 6):
            g = homology_group("T", par, i, i + 1)
            want = EXPECTED_UPPER[par.name][i]
            if g != want:
                ok = False
                details.append(f"{par.name} i={i}: got {g} want {want}")
            if not g.is_trivial:
                if not (zhat_class_is_nonzero("T", par, i)
                        and zhat_class_generates("T", par, i)):
                    ok = False
                    details.append(f"{par.name} i={i}: fan class not a generator")
    _report(3, ok,
            "upper-diagonal groups of T match the torsion table for i <= 5 "
            "and the fan class generates" + ("" if ok else f": {details}"))


@pytest.mark.skipif(os.environ.get("VW_RUN_OPTIONAL") != "1",
                    reason="optional depth-6 computation (set VW_RUN_OPTIONAL=1)")
def test_criterion_03_optional_depth_six():
    t0 = time.time()
    budget = 1800.0
    results = {}
    for par, want in ((ODD, HomologyGroup(0, (3,))), (EVEN, HomologyGroup(0))):
        if time.time() - t0 > budget:
            pytest.skip("30-minute budget exhausted")
        g = homology_group("T", par, 6, 7)
        results[par.name] = (g, want, g == want)
    ok = all(v[2] for v in results.values())
    _report("3 (optional i=6)", ok,
            f"depth-6 groups {[(k, str(v[0])) for k, v in results.items()]} "
            f"({time.time()-t0:.0f}s)")


def test_criterion_04_triangular_isomorphism():
    t0 = time.time()
    rep = verify.suite_iso_I(i_max=3, k_max=5, ab_max=6, parities=PARITIES)
    elapsed = time.time() - t0
    checks = [c for c in rep.checks if "chain map" in c.name
              or "I_inv" in c.name or "unitriangular" in c.name]
    ok = all(c.ok for c in checks) and elapsed < 120
    _report(4, ok,
            f"I is a chain map on Tss i <= 3, has the explicit inverse, and "
            f"is unitriangular ({elapsed:.1f}s < 120s)")


def test_criterion_05_tower_and_fan_identities():
    rep = verify.suite_iso_I(i_max=0, k_max=5, ab_max=6, parities=PARITIES)
    checks = [c for c in rep.checks if "d_h(Z_k)" in c.name
              or "dZ_k" in c.name or "dZhat_k" in c.name
              or "signed binomials" in c.name]
    ok = all(c.ok for c in checks)
    _report(5, ok,
            "boundary identities of towers and fans hold for k <= 5 and the "
            "signed binomial gluings for a+b <= 6, both parities")


def test_criterion_06_hopf_suite():
    rep = verify.suite_hopf(n_random=500, parities=PARITIES)
    ok = rep.ok
    # exhaustive triple associativity over every <=2-point diagram,
    # plus random <=3-point factors inside the suite
    for par in PARITIES:
        pool = verify.small_pool(par, i_max=2, n_max=2)
        singles = [LinComb.of(d) for d in pool]
        for a in singles:
            for b in singles:
                ab = shuffle_product(a, b, par)
                for c in singles:
                    lhs = shuffle_product(ab, c, par)
                    rhs = shuffle_product(a, shuffle_product(b, c, par), par)
                    if lhs != rhs:
                        ok = False
    _report(6, ok,
            "product, coproduct, gluing and divided-power axioms pass on "
            "exhaustive small diagrams plus 500 random cases")


def test_criterion_07_quotient_and_inclusion_quasi_isos():
    ok = True
    bad = []
    for name in ("proj_Tss_T", "incl_T0_Ts"):
        for par in PARITIES:
            for i in range(0, 4):
                for j in range(0, 2 * i + 1):
                    r = induced_map_on_homology(name, par, i, j)
                    if not r.is_isomorphism:
                        ok = False
                        bad.append((name, par.name, i, j))
    _report(7, ok,
            "projection to the chord-only quotient and the neighbor-free "
            "inclusion induce integral isomorphisms for i <= 3"
            + ("" if ok else f": {bad}"))


def test_criterion_08_splitting_quasi_iso_and_kunneth():
    ok = True
    bad = []
    for par in PARITIES:
        for i in range(0, 4):
            for j in range(0, 2 * i + 1):
                r = induced_map_on_homology("iso_I_hat", par, i, j)
                if not r.is_isomorphism:
                    ok = False
                    bad.append((par.name, i, j))
        rep = kunneth_compare(par, 4, fields=(PrimeField(2), PrimeField(3)))
        for e in rep.field_entries:
            if not e[-1]:
                ok = False
                bad.append(e)
    _report(8, ok,
            "the tower-to-fan splitting map induces integral isomorphisms for "
            "i <= 3 and the two-factor dimension count matches over F2/F3 "
            "for i <= 4" + ("" if ok else f": {bad[:6]}"))


def test_criterion_09_chord_diagram_splitting():
    t0 = time.time()
    oracle = chord_space_dims(5)
    b = [dual_homology_group("T", ODD, i, 2 * i, QQ) for i in range(6)]
    b0 = [dual_homology_group("Ts", ODD, i, 2 * i, QQ) for i in range(6)]
    split = [sum(b0[: i + 1]) for i in range(6)]
    ok = (oracle == b) and (split == b)
    bt = [dual_homology_group("T", EVEN, i, 2 * i, QQ) for i in range(5)]
    bt0 = [dual_homology_group("Ts", EVEN, i, 2 * i, QQ) for i in range(5)]
    super_split = [bt0[i] + (bt0[i - 1] if i else 0) for i in range(5)]
    ok = ok and (super_split == bt)
    elapsed = time.time() - t0
    _report(9, ok and elapsed < 600,
            f"odd: oracle {oracle} == engine {b}, polynomial splitting "
            f"{split}; even: super splitting {super_split} == {bt} "
            f"({elapsed:.1f}s < 600s)")


def test_criterion_10_arnold_confluence_and_basis():
    rep = verify.suite_arnold(i_max=4, n_schedules=500, parities=PARITIES)
    _report(10, rep.ok,
            "normal forms independent of rewrite order (500 schedules) and "
            "admissible dimensions equal the oriented-span oracle over Q "
            "for every slice with i <= 4"
            + ("" if rep.ok else ": " + "; ".join(
                c.name for c in rep.checks if not c.ok)))
