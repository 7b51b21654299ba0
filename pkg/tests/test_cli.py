import io
import subprocess
import sys

import pytest

from typeb.cli import parse_braid_file, run


def call(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dims(capsys):
    assert call(capsys, "dims", "--algebra", "bmwB", "--n", "2")[:2] == (0, "12\n")
    assert call(capsys, "dims", "--algebra", "heckeB", "--n", "3")[:2] == (0, "48\n")
    assert call(capsys, "dims", "--algebra", "tlb-diagrams", "--n", "3")[:2] == (0, "20\n")


def test_dims_dump(capsys):
    code, out, _ = call(capsys, "dims", "--algebra", "bmwB", "--n", "1", "--dump")
    assert code == 0 and out.startswith("# BBB1 dim 2")


def test_verify(capsys):
    assert call(capsys, "verify", "re")[:2] == (0, "PASS\n")
    assert call(capsys, "verify", "re", "--f1", "symbolic")[:2] == (0, "PASS\n")
    assert call(capsys, "verify", "ybe", "--specialize", "--seed", "3")[:2] == (0, "PASS\n")
    code, out, _ = call(capsys, "verify", "relations")
    assert code == 0 and out.count("PASS") == 4


def test_verify_specialize_needs_seed(capsys):
    assert call(capsys, "verify", "ybe", "--specialize")[0] == 2


def test_invariant_empty_stdin(capsys, monkeypatch):
    assert call(capsys, "invariant", "--route", "jones", "--braid", "-", stdin="", monkeypatch=monkeypatch)[:2] == (0, "1\n")


def test_invariant_file_and_set(capsys, tmp_path):
    p = tmp_path / "trefoil.braid"
    p.write_text("# trefoil\n1 1 1\n")
    code, out, _ = call(capsys, "invariant", "--route", "jones", "--braid", str(p))
    assert code == 0 and out.strip() == "a^-2*b^2 + a^-6*b^6 - a^-8*b^8"
    code, out, _ = call(capsys, "invariant", "--route", "jones", "--braid", str(p), "--set", "a=1", "--set", "b=1")
    assert (code, out) == (0, "1\n")


def test_invariant_kauffman_strand_bound(capsys, monkeypatch):
    code, _, err = call(capsys, "invariant", "--route", "kauffman", "--braid", "-", stdin="strands 4\n1 2 3\n",
                        monkeypatch=monkeypatch)
    assert code == 1 and "jones_B" in err


def test_invariant_bad_token(capsys, monkeypatch):
    assert call(capsys, "invariant", "--braid", "-", stdin="1 z\n", monkeypatch=monkeypatch)[0] == 2


def test_parse_braid_file():
    assert parse_braid_file("y 2\n").strands == 3
    assert parse_braid_file("strands 4\n1\n").strands == 4
    assert parse_braid_file("").strands == 1


def test_bratteli(capsys):
    code, out, _ = call(capsys, "bratteli", "2", "--check")
    assert code == 0 and out.splitlines()[-1] == "PASS" and "(1|1): 2" in out


def test_potts(capsys, tmp_path):
    p = tmp_path / "g.lat"
    p.write_text("grid 2 2\n")
    code, out, _ = call(capsys, "potts", "--lattice", str(p), "--states", "2")
    assert (code, out.strip()) == (0, "u^4*w^2 + u^4 + 3*u^2*w^2 + 6*u^2*w + 3*u^2 + 2*w")
    code, out, _ = call(capsys, "potts", "--lattice", str(p), "--states", "3", "--crosscheck")
    assert code == 0 and out.startswith("PASS")


def test_trace_solve(capsys):
    code, out, _ = call(capsys, "trace-solve", "2", "--seed", "1")
    assert code == 0 and out.startswith("parameters: s1") and "nondegenerate: PASS" in out
    assert call(capsys, "trace-solve", "4")[0] == 2


def test_invariance_suite_jobs_stable(capsys):
    a = call(capsys, "invariance-suite", "--trials", "6", "--seed", "2", "--verbose")
    b = call(capsys, "invariance-suite", "--trials", "6", "--seed", "2", "--verbose", "--jobs", "2")
    assert a[0] == b[0] == 0
    assert a[1] == b[1]


def test_usage_errors(capsys):
    assert call(capsys, "nope")[0] == 2
    assert call(capsys, "invariance-suite", "--trials", "3")[0] == 2
    assert call(capsys, "dims", "--algebra", "bmwB")[0] == 2


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "typeb.cli", "dims", "--algebra", "bmwA", "--n", "3"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "15\n"
