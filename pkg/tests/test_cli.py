import json
import subprocess
import sys

import pytest

from rp2_triangle.cli import run

DECIDE_ROWS = "id,mu1,mu2,mu3\na,0.3,0.3,0.3\nb,1/5,1/5,1/2\nc,0.6,0.6,0.1\n"


def test_decide_exit_codes():
    assert run(["decide", "0.3", "0.3", "0.3"]).code == 0
    assert run(["decide", "1/5", "1/5", "1/2"]).code == 1
    res = run(["decide", "0.6", "0.6", "0.1"])
    assert res.code == 2 and "μ₁ + μ₂ < 1" in res.err
    assert run(["decide", "0.1", "x", "0.1"]).code == 2
    assert run(["decide", "0.1", "0.1"]).code == 2
    assert run(["frobnicate"]).code == 2


def test_decide_text_and_json():
    res = run(["decide", "0.3", "0.3", "0.3"])
    assert res.out.startswith("YES") and "3/20" in res.out and "3/40" in res.out
    data = json.loads(run(["--json", "decide", "0.3", "0.3", "0.3"]).out)
    assert data["verdict"] == "YES" and data["epsilon_sup"] == "3/20"
    assert data["witness"] == {"epsilon": "3/40", "mu_tilde": ["21/40", "3/40", "3/40", "3/40"]}
    data = json.loads(run(["decide", "1/5", "1/5", "1/2", "--json"]).out)
    assert data["verdict"] == "NO" and data["witness"] is None
    assert data["violation"] == "μ₁ + μ₂ > μ₃ fails"


def test_decimal_fraction_equivalence():
    assert run(["--json", "decide", "0.3", "0.3", "0.3"]) == run(["--json", "decide", "3/10", "3/10", "3/10"])
    assert run(["--json", "epsilon-max", "0.25", "0.5", "0.5"]) == run(["--json", "epsilon-max", "1/4", "1/2", "2/4"])


def test_quiet_suppresses_output():
    res = run(["--quiet", "decide", "1/5", "1/5", "1/2"])
    assert res.code == 1 and res.out == ""


def test_transform_and_inverse():
    res = run(["--json", "transform", "3/10", "3/10", "3/10", "--eps", "1/20"])
    data = json.loads(res.out)
    assert res.code == 0
    assert data["mu_tilde"] == ["1/2", "1/10", "1/10", "1/10"] and data["sigma_area"] == data["four_eps"] == "1/5"
    res = run(["transform", "3/10", "3/10", "3/10", "--eps", "3/20"])
    assert res.code == 1 and "μ̃₁ > 0 fails" in res.out
    data = json.loads(run(["--json", "inverse", "1/2", "1/10", "1/10", "1/10"]).out)
    assert data == {"mu": ["3/10", "3/10", "3/10"], "eps": "1/20", "eps_positive": True}
    assert run(["inverse", "1/2", "1/6", "1/6", "1/6"]).code == 1


def test_epsilon_max():
    data = json.loads(run(["--json", "epsilon-max", "0.3", "0.3", "0.3"]).out)
    assert data == {"epsilon_sup": "3/20", "attained": False, "binding": "μ̃₁ > 0"}
    assert run(["epsilon-max", "1/5", "3/10", "1/2"]).code == 1
    assert run(["epsilon-max", "3/5", "3/5", "1/10"]).code == 2


def test_enumerate():
    res = run(["enumerate", "--square", "-4", "--c1", "-2", "--orth", "H", "--primitive"])
    assert res.code == 0 and len(res.out.splitlines()) == 4
    assert "E~0 - E~1 - E~2 - E~3" in res.out.splitlines()
    data = json.loads(run(["--json", "enumerate", "--square", "-2", "--c1", "0", "--orth", "H,Sigma"]).out)
    assert len(data["classes"]) == 6
    res = run(["enumerate", "--square", "-4", "--c1", "-2", "--orth", "Sigma"])
    assert res.code == 2 and "indefinite" in res.err
    assert run(["enumerate", "--lattice", "B9", "--square", "-1", "--c1", "1", "--orth", "H"]).code == 2
    assert run(["enumerate", "--square", "-1", "--c1", "1", "--orth", "Q"]).code == 2
    res = run(["enumerate", "--lattice", "B3", "--square", "-1", "--c1", "1", "--h-degree", "0"])
    assert res.out.split() == ["E3", "E2", "E1"]


def test_decompose_and_kahler():
    data = json.loads(run(["--json", "decompose", "1", "0", "0", "0", "0"]).out)
    assert data == {"d": 1, "m": 4, "n_prime": [1, 1, 1]}
    res = run(["--json", "kahler", "1", "1/2", "1/10", "1/10", "1/10", "--curve", "5,-1,0,0,0"])
    data = json.loads(res.out)
    assert res.code == 0 and data["member"] and data["curve"]["case"] == "c" and data["curve"]["area"] == "9/2"
    res = run(["kahler", "1", "3/10", "1/10", "1/10", "1/10"])
    assert res.code == 1 and "(3~)" in res.out
    assert run(["kahler", "1", "1/2", "1/10", "1/10", "1/10", "--curve", "1,x"]).code == 2


def test_audin():
    assert json.loads(run(["--json", "audin", "3"]).out) == {"n": 3, "classes": [[0, 1, 1, 1]]}
    assert json.loads(run(["--json", "audin", "2"]).out)["classes"] == []
    assert run(["audin", "4"]).code == 2


def test_json_byte_identical():
    for argv in (["decide", "2/7", "1/3", "2/5"], ["enumerate", "--square", "-4", "--c1", "2", "--orth", "H,Sigma"]):
        assert run(["--json", *argv]).out == run(["--json", *argv]).out


def test_batch(tmp_path):
    src = tmp_path / "in.csv"
    dst = tmp_path / "out.json"
    src.write_text(DECIDE_ROWS, encoding="utf-8")
    res = run(["batch", str(src), str(dst)])
    assert res.code == 0 and res.out == "3 rows: 1 YES, 1 NO, 1 errors\n"
    entries = json.loads(dst.read_text(encoding="utf-8"))
    assert [e["row"] for e in entries] == [1, 2, 3]
    assert [e["id"] for e in entries] == ["a", "b", "c"]
    assert entries[0]["verdict"] == "YES" and entries[1]["verdict"] == "NO" and "error" in entries[2]
    single = json.loads(run(["--json", "decide", "0.3", "0.3", "0.3"]).out)
    assert {k: v for k, v in entries[0].items() if k not in ("row", "id")} == single


def test_batch_edge_cases(tmp_path, monkeypatch):
    dst = tmp_path / "out.json"
    empty = tmp_path / "empty.csv"
    empty.write_text("mu1,mu2,mu3\n", encoding="utf-8")
    assert run(["batch", str(empty), str(dst)]).code == 0
    assert json.loads(dst.read_text()) == []
    dup = tmp_path / "dup.csv"
    dup.write_text("mu1,mu2,mu3\n1/3,1/3,1/3\n1/3,1/3,1/3\n", encoding="utf-8")
    monkeypatch.setenv("RP2_TRIANGLE_THREADS", "1")
    run(["batch", str(dup), str(dst)])
    one = dst.read_bytes()
    monkeypatch.setenv("RP2_TRIANGLE_THREADS", "4")
    run(["batch", str(dup), str(dst)])
    assert dst.read_bytes() == one
    entries = json.loads(one)
    assert len(entries) == 2 and entries[0]["verdict"] == entries[1]["verdict"] == "YES"
    monkeypatch.setenv("RP2_TRIANGLE_THREADS", "0")
    assert run(["batch", str(dup), str(dst)]).code == 2
    monkeypatch.delenv("RP2_TRIANGLE_THREADS")
    assert run(["batch", str(tmp_path / "missing.csv"), str(dst)]).code == 2
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n", encoding="utf-8")
    assert run(["batch", str(bad), str(dst)]).code == 2


def test_short_row_is_row_error(tmp_path):
    src = tmp_path / "in.csv"
    src.write_text("mu1,mu2,mu3\n0.3,0.3\n", encoding="utf-8")
    dst = tmp_path / "out.json"
    assert run(["batch", str(src), str(dst)]).code == 0
    assert "error" in json.loads(dst.read_text())[0]


@pytest.mark.parametrize(
    "argv,code",
    [(["decide", "0.3", "0.3", "0.3"], 0), (["decide", "1/5", "1/5", "1/2"], 1), (["decide", "0.6", "0.6", "0.1"], 2)],
)
def test_subprocess_entry_point(argv, code):
    proc = subprocess.run([sys.executable, "-m", "rp2_triangle", "--json", *argv], capture_output=True)
    assert proc.returncode == code
    if code < 2:
        assert proc.stdout.decode("utf-8") == run(["--json", *argv]).out


def test_verify_command():
    res = run(["verify"])
    assert res.code == 0
    assert res.out.rstrip().endswith("ALL CHECKS PASSED")
    assert "discriminant(Λ′₃) = 4" in res.out and "index = 4, quotient = ℤ₄" in res.out
