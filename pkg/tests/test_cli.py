"""End-to-end tests of the command line through subprocesses."""

import json
import subprocess
import sys

import pytest

from fhodge.fhs import FHS1Morphism, seq_around_v0
from fhodge.generator import gen
from fhodge.serialize import SequenceDoc, dumps_document


def run_cli(*argv, stdin=None):
    return subprocess.run(
        [sys.executable, "-m", "fhodge.cli", *argv],
        input=stdin,
        capture_output=True,
        text=True,
        timeout=120,
    )


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(dumps_document(obj))
    return str(path)


def test_gen_then_validate(tmp_path):
    out = tmp_path / "x.json"
    r = run_cli("gen", "--profile", "special", "--seed", "5", "-o", str(out))
    assert r.returncode == 0 and r.stdout == ""
    r2 = run_cli("validate", str(out))
    assert r2.returncode == 0
    info = json.loads(r2.stdout)
    assert info["ok"] is True and info["kind"] == "fhs1"
    assert "ranks" in info


def test_gen_stdout_deterministic():
    a = run_cli("gen", "--profile", "motive-general", "--seed", "11")
    b = run_cli("gen", "--profile", "motive-general", "--seed", "11")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout.startswith("{")


def test_validate_reads_stdin():
    doc = dumps_document(gen("etale", 2))
    r = run_cli("validate", "-", stdin=doc)
    assert r.returncode == 0
    assert json.loads(r.stdout)["ok"] is True


def test_malformed_input_exits_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{this is not json")
    r = run_cli("validate", str(path))
    assert r.returncode == 2
    assert r.stdout == ""
    diag = json.loads(r.stderr)
    assert diag["error"] == "malformed_input"


def test_missing_file_exits_2(tmp_path):
    r = run_cli("validate", str(tmp_path / "nope.json"))
    assert r.returncode == 2
    assert "cannot read" in json.loads(r.stderr)["message"]


def test_usage_error_exits_2():
    assert run_cli("frobnicate").returncode == 2
    assert run_cli("gen", "--profile", "etale").returncode == 2
    assert run_cli().returncode == 2


def test_domain_invalid_exits_1(tmp_path):
    for seed in range(40):
        m = gen("motive-general", seed)
        if not m.is_special():
            break
    else:
        pytest.fail("no non-special sample found")
    r = run_cli("connected", write(tmp_path, "m.json", m))
    assert r.returncode == 1
    diag = json.loads(r.stderr)
    assert diag["error"] == "not_special"


def test_transform_output_parses(tmp_path):
    from fhodge.serialize import loads_document

    path = write(tmp_path, "x.json", gen("general", 7))
    for cmd, kind in (("etale", "fhs1"), ("dual", "fhs1"), ("arrow", "motive")):
        r = run_cli(cmd, path)
        assert r.returncode == 0, (cmd, r.stderr)
        got_kind, _ = loads_document(r.stdout)
        assert got_kind == kind


def test_wrong_kind_for_subcommand(tmp_path):
    path = write(tmp_path, "x.json", gen("etale", 0))
    r = run_cli("univ-ext", path)
    assert r.returncode == 2
    assert "does not accept" in json.loads(r.stderr)["message"]


def test_kernel_cokernel_commands(tmp_path):
    path = write(tmp_path, "phi.json", gen("morphism", 4))
    for cmd in ("kernel", "cokernel"):
        r = run_cli(cmd, path)
        assert r.returncode == 0, r.stderr
        assert json.loads(r.stdout)["kind"] == "morphism"


def test_check_exact_pass_and_fail(tmp_path):
    x = gen("general", 9)
    left, right = seq_around_v0(x)
    good = write(tmp_path, "good.json", SequenceDoc("fhs1", (left, right), True))
    r = run_cli("check-exact", good)
    assert r.returncode == 0
    assert json.loads(r.stdout)["exact"] is True

    ident = FHS1Morphism.identity(x)
    bad = write(tmp_path, "bad.json", SequenceDoc("fhs1", (ident, ident), True))
    r2 = run_cli("check-exact", bad)
    assert r2.returncode == 1
    assert json.loads(r2.stdout)["exact"] is False


def test_hom_command(tmp_path):
    a = write(tmp_path, "a.json", gen("etale", 1))
    b = write(tmp_path, "b.json", gen("etale", 2))
    r = run_cli("hom", a, b)
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["category"] == "fhs1"
    assert out["z_rank"] == len(out["z_basis"])


def test_roundtrip_command(tmp_path):
    for profile, kind in (("connected", "fhs1"), ("motive-special", "motive")):
        path = write(tmp_path, "x.json", gen(profile, 3))
        r = run_cli("roundtrip", path)
        assert r.returncode == 0
        out = json.loads(r.stdout)
        assert out["ok"] is True and out["kind"] == kind


def test_suite_small_and_deterministic():
    a = run_cli("suite", "--seeds", "2")
    b = run_cli("suite", "--seeds", "2")
    assert a.returncode == 0, a.stderr
    assert a.stdout == b.stdout
    out = json.loads(a.stdout)
    assert out["ok"] is True and out["seeds"] == 2
