#!/usr/bin/env python3
"""Run every verification suite at release-gate scale and exit nonzero on red."""

import sys
import time

from vworkbench import verify


def main():
    suites = [
        ("d-squared", verify.suite_d_squared, {}),
        ("iso-I", verify.suite_iso_I, {}),
        ("hopf-axioms", verify.suite_hopf, {}),
        ("quasi-iso", verify.suite_quasi_iso, {}),
        ("kunneth", verify.suite_kunneth, {}),
        ("chord-split", verify.suite_chord_split, {}),
        ("arnold", verify.suite_arnold, {}),
    ]
    all_ok = True
    for name, fn, kwargs in suites:
        t0 = time.time()
        rep = fn(**kwargs)
        for line in rep.lines():
            print(line)
        print(f"{rep.summary()} [{time.time() - t0:.1f}s]")
        all_ok = all_ok and rep.ok
    print("release gate:", "GREEN" if all_ok else "RED")
    return 0 if all_ok else 3


if __name__ == "__main__":
    sys.exit(main())
