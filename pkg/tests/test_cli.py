import io
import json
import subprocess
import sys

import pytest

from spiderflat.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture(scope="module")
def f777(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "f777.json"
    code, out = run("derive", "--legs", "7,7,7", "--out", str(path))
    assert code == 0 and "wrote" in out
    return path


def test_derive_reports_relations(f777):
    code, out = run("derive", "--legs", "7,7,7", "--out", str(f777))
    assert code == 0
    assert "x*y + x^2 - y" in out
    assert "weights (15, 16, 17)" in out


def test_derive_to_stdout_is_json(capsys):
    code, out = run("derive", "--legs", "1,1")
    assert code == 0
    assert json.loads(out)["weights"] == [2, 3]


def test_verify_ok(f777):
    code, out = run("verify", str(f777))
    assert code == 0
    assert "ok   flatness: 15 S-pairs reduce to zero, free of rank 22" in out
    assert out.count("dimension 22") == 6


def test_verify_custom_lambdas(f777):
    code, out = run("verify", str(f777), "--lambdas", "3,-2/5")
    assert code == 0
    assert "e=-2/5" in out and "e=1/3" not in out


def test_tampered_descriptor_fails(f777, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(f777.read_text().replace('"2298"', '"2299"'))
    code, out = run("verify", str(bad))
    assert code == 1
    assert "FAIL relation check: f4" in out


def test_emit(f777, tmp_path):
    code, out = run("emit", str(f777))
    assert code == 0 and "assert(gy == 0);" in out
    target = tmp_path / "v.sage"
    code, _ = run("emit", str(f777), "--dialect", "sage", "--out", str(target))
    assert code == 0 and "assert gy == 0" in target.read_text()


def test_report_weights(f777):
    code, out = run("report-weights", str(f777))
    assert code == 0
    assert "x^8        120            z^7      119       1" in out
    code, out = run("report-weights", "--legs", "1,1")
    assert code == 0 and "weights (2, 3)" in out


@pytest.mark.parametrize("argv", [
    ("derive", "--legs", "0,2"),
    ("derive", "--legs", "a,b"),
    ("derive", "--legs", "2,2", "--a-values", "1,1"),
    ("derive", "--legs", "2,2", "--weights", "1"),
    ("derive", "--legs", "7,7,7", "--weights", "14,15,16"),
    ("verify", "/nonexistent/family.json"),
    ("emit", "--dialect", "m2"),
    ("report-weights",),
    ("frobnicate",),
])
def test_usage_errors(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_bad_descriptor_is_usage_error(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("[]")
    assert run("verify", str(p))[0] == 2


def test_bad_lambdas(f777):
    assert run("verify", str(f777), "--lambdas", "1/0")[0] == 2
    assert run("verify", str(f777), "--lambdas", "0.5")[0] == 0


def test_internal_invariant_exit_code(monkeypatch):
    import spiderflat.cli as cli

    def boom(*args, **kwargs):
        raise cli.BasisDegenerate("rank 3 < 4")

    monkeypatch.setattr(cli, "build_family", boom)
    assert run("derive", "--legs", "1,2")[0] == 3


def test_unknown_dialect(f777):
    assert run("emit", str(f777), "--dialect", "maple")[0] == 2


def test_infeasible_consecutive_weights(tmp_path):
    code, _ = run("derive", "--legs", "1,3,3")
    assert code == 1
    path = tmp_path / "f.json"
    code, _ = run("derive", "--legs", "1,3,3", "--general-weights", "--out", str(path))
    assert code == 0
    assert run("verify", str(path))[0] == 0


def test_module_entry_point(f777):
    proc = subprocess.run([sys.executable, "-m", "spiderflat", "report-weights", str(f777)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "weights (15, 16, 17)" in proc.stdout


def test_derive_and_verify_are_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("derive", "--legs", "3,2,2", "--out", str(a))[0] == 0
    assert run("derive", "--legs", "3,2,2", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert run("verify", str(a))[1] == run("verify", str(b))[1]
