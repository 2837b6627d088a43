"""Command-line driver: homology tables, verification suites, basis listings.

Exit codes: 0 success, 2 resource limit exceeded, 3 internal invariant
failure (including a red verification suite).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cache import ENV_CACHE_DIR, ResultCache
from .complexes import (
    DEFAULT_MAX_SLICE,
    Variant,
    differential_matrix,
    slice_basis,
)
from .diagrams import EVEN, ODD, Parity, serialize
from .errors import ResourceLimitError, VWError
from .homology import homology_group, zhat_class_is_nonzero
from .rings import ZZ, ring_from_name
from .verify import SUITES

EXIT_OK = 0
EXIT_RESOURCE = 2
EXIT_INVARIANT = 3


@dataclass
class JobSpec:
    """Everything that determines one batch computation (and its cache key)."""

    command: str
    complex: str = "T"
    parities: tuple = ("odd",)
    i_max: int = 3
    ring: str = "Z"
    max_slice: int = DEFAULT_MAX_SLICE
    time_budget: float | None = None
    fmt: str = "json"
    out: str | None = None
    jobs: int = 1
    extra: dict = field(default_factory=dict)

    def cache_params(self):
        return {
            "command": self.command,
            "complex": self.complex,
            "parities": list(self.parities),
            "i_max": self.i_max,
            "ring": self.ring,
            "max_slice": self.max_slice,
            "extra": self.extra,
        }


def _parities(name):
    if name == "both":
        return ("even", "odd")
    if name in ("even", "odd"):
        return (name,)
    raise ValueError(f"unknown parity {name!r}")


def _row_params(spec: JobSpec, parity_name, i, j):
    return {
        "command": "homology-row",
        "complex": spec.complex,
        "parity": parity_name,
        "i": i,
        "j": j,
        "ring": spec.ring,
        "max_slice": spec.max_slice,
    }


def _compute_row(complex_name, parity_name, i, j, ring_name, max_slice):
    parity = Parity.from_name(parity_name)
    ring = ring_from_name(ring_name)
    group = homology_group(complex_name, parity, i, j, ring, max_slice)
    row = {
        "complex": complex_name,
        "parity": parity_name,
        "i": i,
        "j": j,
        "ring": ring.name,
    }
    if ring.is_field:
        row["dim"] = group
    else:
        row["free_rank"] = group.free_rank
        row["torsion"] = list(group.torsion)
    if j == i + 1 and i >= 1 and complex_name == "T":
        row["zhat_class_nonzero"] = zhat_class_is_nonzero(
            "T", parity, i, max_slice
        )
    return row


def _row_worker(args):
    return _compute_row(*args)


def cmd_homology(spec: JobSpec, cache: ResultCache) -> int:
    started = time.monotonic()
    variant = Variant.parse(spec.complex)
    tasks = []
    for parity_name in spec.parities:
        parity = Parity.from_name(parity_name)
        for i in range(0, spec.i_max + 1):
            js = [0] if i == 0 else range(i, 2 * i + 1)
            for j in js:
                if slice_basis(variant, parity, i, j, spec.max_slice).dim:
                    tasks.append((spec.complex, parity_name, i, j))
    rows = []
    if spec.jobs > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            args = [t + (spec.ring, spec.max_slice) for t in tasks]
            rows = list(pool.map(_row_worker, args))
    else:
        for t in tasks:
            if spec.time_budget and time.monotonic() - started > spec.time_budget:
                raise ResourceLimitError(
                    f"time budget {spec.time_budget}s exceeded at slice {t}"
                )
            row = cache.get_or_compute(
                _row_params(spec, t[1], t[2], t[3]),
                lambda t=t: _compute_row(*t, spec.ring, spec.max_slice),
            )
            rows.append(row)
    rows.sort(key=lambda r: (r["complex"], r["parity"], r["i"], r["j"], r["ring"]))
    text = _format_rows(rows, spec.fmt)
    _emit(text, spec.out)
    if spec.extra.get("dump_matrices"):
        _dump_matrices(spec)
    return EXIT_OK


def _format_rows(rows, fmt):
    if fmt == "json":
        return json.dumps(rows, sort_keys=True, indent=1) + "\n"
    columns = [
        "complex", "parity", "i", "j", "ring",
        "free_rank", "torsion", "dim", "zhat_class_nonzero",
    ]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([
            r.get("complex"), r.get("parity"), r.get("i"), r.get("j"),
            r.get("ring"),
            r.get("free_rank", ""),
            ";".join(str(t) for t in r.get("torsion", [])),
            r.get("dim", ""),
            {True: "true", False: "false"}.get(r.get("zhat_class_nonzero"), ""),
        ])
    return buf.getvalue()


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_matrices(spec: JobSpec):
    directory = spec.extra["dump_matrices"]
    os.makedirs(directory, exist_ok=True)
    variant = Variant.parse(spec.complex)
    for parity_name in spec.parities:
        parity = Parity.from_name(parity_name)
        for i in range(0, spec.i_max + 1):
            for j in range(0, 2 * i + 1):
                dm = differential_matrix(variant, parity, i, j, spec.max_slice)
                if dm.source.dim == 0:
                    continue
                name = f"{spec.complex}_{parity_name}_i{i}_j{j}.txt"
                with open(os.path.join(directory, name), "w",
                          encoding="utf-8") as fh:
                    fh.write(dm.export_text())


def cmd_basis(spec: JobSpec) -> int:
    variant = Variant.parse(spec.complex)
    parity = Parity.from_name(spec.parities[0])
    i, j = spec.extra["i"], spec.extra["j"]
    basis = slice_basis(variant, parity, i, j, spec.max_slice)
    lines = [
        f"# basis complex={spec.complex} parity={parity.name} i={i} j={j} "
        f"dim={basis.dim} hash={basis.serial_hash()}"
    ]
    if variant is Variant.T0:
        lines[0] += f" generators={len(basis.diagrams)}"
    lines += [serialize(d) for d in basis.diagrams]
    _emit("\n".join(lines) + "\n", spec.out)
    return EXIT_OK


def cmd_verify(spec: JobSpec) -> int:
    suite_name = spec.extra["suite"]
    fn = SUITES[suite_name]
    kwargs = {}
    if suite_name == "d-squared":
        kwargs = {"i_max": spec.i_max, "parities": _parity_objs(spec.parities)}
    elif suite_name in ("iso-I", "quasi-iso"):
        kwargs = {"i_max": spec.i_max, "parities": _parity_objs(spec.parities)}
    elif suite_name == "hopf-axioms":
        kwargs = {"parities": _parity_objs(spec.parities)}
        if spec.extra.get("n_random"):
            kwargs["n_random"] = spec.extra["n_random"]
    elif suite_name == "kunneth":
        kwargs = {"i_max": spec.i_max, "parities": _parity_objs(spec.parities)}
    elif suite_name == "chord-split":
        kwargs = {"order_max": spec.extra.get("order_max", 5)}
    report = fn(**kwargs)
    text = "\n".join(report.lines() + [report.summary()]) + "\n"
    _emit(text, spec.out)
    return EXIT_OK if report.ok else EXIT_INVARIANT


def _parity_objs(names):
    return tuple(Parity.from_name(n) for n in names)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="vw",
        description="exact workbench for bigraded diagram complexes",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_ij=False):
        p.add_argument("--complex", default="T",
                       choices=[v.value for v in Variant])
        p.add_argument("--parity", default="odd",
                       choices=["odd", "even", "both"])
        if with_ij:
            p.add_argument("--i", type=int, required=True)
            p.add_argument("--j", type=int, required=True)
        else:
            p.add_argument("--i-max", type=int, default=3)
        p.add_argument("--ring", default="Z")
        p.add_argument("--max-slice", type=int, default=DEFAULT_MAX_SLICE)
        p.add_argument("--time-budget", type=float, default=None)
        p.add_argument("--format", default="json", choices=["json", "csv"])
        p.add_argument("--out", default=None)
        p.add_argument("--cache-dir", default=None)
        p.add_argument("--cache-audit", action="store_true")
        p.add_argument("--jobs", type=int, default=1)

    ph = sub.add_parser("homology", help="bigraded homology table")
    common(ph)
    ph.add_argument("--dump-matrices", default=None, metavar="DIR")

    pb = sub.add_parser("basis", help="print one slice basis")
    common(pb, with_ij=True)

    pv = sub.add_parser("verify", help="run a named verification suite")
    pv.add_argument("suite", choices=sorted(SUITES))
    common(pv)
    pv.add_argument("--n-random", type=int, default=None)
    pv.add_argument("--order-max", type=int, default=5)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    spec = JobSpec(
        command=args.command,
        complex=getattr(args, "complex", "T"),
        parities=_parities(args.parity),
        i_max=getattr(args, "i_max", 0),
        ring=args.ring,
        max_slice=args.max_slice,
        time_budget=args.time_budget,
        fmt=args.format,
        out=args.out,
        jobs=args.jobs,
    )
    cache = ResultCache(args.cache_dir, audit=args.cache_audit)
    try:
        if args.command == "homology":
            if args.dump_matrices:
                spec.extra["dump_matrices"] = args.dump_matrices
            return cmd_homology(spec, cache)
        if args.command == "basis":
            spec.extra["i"] = args.i
            spec.extra["j"] = args.j
            return cmd_basis(spec)
        if args.command == "verify":
            spec.extra["suite"] = args.suite
            spec.extra["order_max"] = args.order_max
            if args.n_random:
                spec.extra["n_random"] = args.n_random
            return cmd_verify(spec)
        parser.error(f"unknown command {args.command}")
    except ResourceLimitError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except VWError as e:
        print(f"invariant failure: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
