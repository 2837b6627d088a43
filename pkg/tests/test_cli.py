import json
import os
import subprocess
import sys

import pytest

from vworkbench.cache import ResultCache
from vworkbench.cli import main


def run_cli(args, **kwargs):
    return main(list(args))


def test_homology_json_and_determinism(tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    for out in (out1, out2):
        code = run_cli([
            "homology", "--complex", "T", "--parity", "odd",
            "--i-max", "2", "--ring", "Z", "--out", str(out),
        ])
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()
    rows = json.loads(out1.read_text())
    by_key = {(r["i"], r["j"]): r for r in rows}
    assert by_key[(1, 2)]["free_rank"] == 1
    assert by_key[(1, 2)]["zhat_class_nonzero"] is True
    assert by_key[(2, 3)]["free_rank"] == 1  # odd parity keeps a free class


def test_homology_field_and_csv(tmp_path):
    out = tmp_path / "t.csv"
    code = run_cli([
        "homology", "--complex", "T", "--parity", "both",
        "--i-max", "2", "--ring", "Fp:2", "--format", "csv",
        "--out", str(out),
    ])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].split(",")[:5] == ["complex", "parity", "i", "j", "ring"]
    assert any(",F2," in line for line in lines[1:])


def test_homology_table_values(tmp_path):
    out = tmp_path / "even.json"
    assert run_cli([
        "homology", "--complex", "T", "--parity", "even",
        "--i-max", "4", "--ring", "Z", "--out", str(out),
    ]) == 0
    rows = {(r["i"], r["j"]): r for r in json.loads(out.read_text())}
    assert rows[(4, 5)]["torsion"] == [2]
    out2 = tmp_path / "t0.json"
    assert run_cli([
        "homology", "--complex", "T0", "--parity", "both",
        "--i-max", "4", "--ring", "Z", "--out", str(out2),
    ]) == 0
    for r in json.loads(out2.read_text()):
        if r["i"] >= 2 and r["j"] == r["i"] + 1:
            assert r["free_rank"] == 0 and r["torsion"] == []


def test_basis_listing(capsys):
    assert run_cli([
        "basis", "--complex", "Z", "--parity", "even", "--i", "3", "--j", "4",
    ]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out[0].startswith("# basis complex=Z parity=even i=3 j=4 dim=1")
    assert out[1] == "1;chords=;bottom=;top=3"
    assert run_cli([
        "basis", "--complex", "T", "--parity", "odd", "--i", "1", "--j", "2",
    ]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out[1] == "2;chords=1-2;bottom=;top=0,0"


def test_verify_suite_exit_codes(capsys):
    assert run_cli(["verify", "d-squared", "--i-max", "1", "--parity", "both"]) == 0
    out = capsys.readouterr().out
    assert "[PASS]" in out and "FAIL" not in out


def test_resource_limit_exit_code(capsys):
    code = run_cli([
        "homology", "--complex", "T", "--parity", "odd",
        "--i-max", "3", "--max-slice", "1",
    ])
    assert code == 2


def test_cache_roundtrip_and_audit(tmp_path):
    cache_dir = tmp_path / "cache"
    calls = []

    def compute():
        calls.append(1)
        return {"value": 42}

    cache = ResultCache(str(cache_dir))
    params = {"x": 1}
    assert cache.get_or_compute(params, compute) == {"value": 42}
    assert cache.get_or_compute(params, compute) == {"value": 42}
    assert len(calls) == 1
    # audit mode recomputes deterministically and validates
    cache2 = ResultCache(str(cache_dir), audit=True)
    for k in range(120):
        cache2.get_or_compute({"x": 1, "k": k}, lambda: {"v": 1})
    hits_before = cache2.audited
    for k in range(120):
        cache2.get_or_compute({"x": 1, "k": k}, lambda: {"v": 1})
    assert cache2.audited > hits_before  # about 5% of 120 hits

    def poisoned():
        return {"v": 2}

    bad_key = next(
        k for k in range(200)
        if __import__("random").Random(
            ResultCache.key_of({"x": 1, "k": k})
        ).random() < 0.05
    )
    cache2.get_or_compute({"x": 1, "k": bad_key}, lambda: {"v": 1})
    with pytest.raises(RuntimeError):
        cache2.get_or_compute({"x": 1, "k": bad_key}, poisoned)


def test_cached_homology_matches_fresh(tmp_path):
    out1 = tmp_path / "fresh.json"
    out2 = tmp_path / "cached.json"
    cache_dir = str(tmp_path / "cache")
    args = [
        "homology", "--complex", "Ts", "--parity", "odd",
        "--i-max", "2", "--cache-dir", cache_dir,
    ]
    assert run_cli(args + ["--out", str(out1)]) == 0
    assert run_cli(args + ["--out", str(out2), "--cache-audit"]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_env_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("VW_CACHE_DIR", str(tmp_path / "envcache"))
    cache = ResultCache()
    cache.get_or_compute({"probe": 1}, lambda: {"v": 7})
    assert os.listdir(tmp_path / "envcache")


def test_dump_matrices(tmp_path):
    dump = tmp_path / "mats"
    assert run_cli([
        "homology", "--complex", "T", "--parity", "odd", "--i-max", "2",
        "--out", str(tmp_path / "t.json"), "--dump-matrices", str(dump),
    ]) == 0
    files = sorted(os.listdir(dump))
    assert "T_odd_i1_j2.txt" in files
    text = (dump / "T_odd_i1_j2.txt").read_text()
    assert text.startswith("# source complex=T parity=odd i=1 j=2")


def test_parallel_jobs_match_sequential(tmp_path):
    seq = tmp_path / "seq.json"
    par = tmp_path / "par.json"
    base = ["homology", "--complex", "Z", "--parity", "both", "--i-max", "3"]
    assert run_cli(base + ["--out", str(seq)]) == 0
    assert run_cli(base + ["--out", str(par), "--jobs", "2"]) == 0
    assert seq.read_bytes() == par.read_bytes()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "vworkbench.cli", "basis", "--complex", "T",
         "--parity", "odd", "--i", "1", "--j", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "2;chords=1-2" in proc.stdout
