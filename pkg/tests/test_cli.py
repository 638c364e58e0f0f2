import json
from pathlib import Path

import pytest

import linkage
from linkage.cli import main, run_corpus, worst_exit

CORPUS = Path(linkage.__file__).parent / "corpus"
NEGATIVE = CORPUS / "negative"


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_run_prints_json(tmp_path, capsys):
    f = write(tmp_path, "a.lk", "ring R = F101[x,y]/(x*y); module M = R/(x); print report(M); verify(MS, M);")
    assert main(["run", f]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["summary"]["pass"] == 1
    assert out["outputs"][0]["result"]["horizontally_linked"] is True


def test_run_json_file(tmp_path):
    f = write(tmp_path, "a.lk", "ring R = F101[x,y]; module k = R/(x,y); verify(AB-formula, k);")
    out = tmp_path / "out.json"
    assert main(["run", f, "--json", str(out)]) == 0
    assert json.loads(out.read_text())["records"][0]["status"] == "pass"


def test_run_exit_codes(tmp_path):
    assert main(["run", str(tmp_path / "missing.lk")]) == 1
    bad = write(tmp_path, "bad.lk", "ring R = F101[x,y]; module M = R/(w);")
    assert main(["run", bad]) == 1
    fail = write(tmp_path, "fail.lk", "ring R = F101[x,y]/(x*y); module k = R/(x,y); verify(MS, k, hlinked=true);")
    assert main(["run", fail]) == 3
    cap = write(tmp_path, "cap.lk", "ring S = F101[x,y,z]; set degree_cap = 1;"
                " module M = S/(x^3 - y*z^2, y^3 - x*z^2); print betti(M);")
    assert main(["run", cap]) == 2


def test_usage_errors():
    assert main([]) == 1
    assert main(["frobnicate"]) == 1
    assert main(["corpus", "/nonexistent/dir"]) == 1
    assert main(["corpus", str(CORPUS), "--only", "NoSuchThm"]) == 1


def test_environment_degree_cap(tmp_path, monkeypatch):
    f = write(tmp_path, "a.lk", "ring S = F101[x,y,z]; module M = S/(x^3 - y*z^2, y^3 - x*z^2); print betti(M);")
    monkeypatch.setenv("LINKAGE_DEGREE_CAP", "1")
    assert main(["run", f]) == 2
    monkeypatch.setenv("LINKAGE_DEGREE_CAP", "20")
    assert main(["run", f]) == 0


def test_full_corpus_has_no_failures():
    summary = run_corpus(str(CORPUS))
    assert summary["exit_code"] == 0
    assert summary["totals"]["fail"] == 0 and summary["totals"]["errors"] == 0
    assert summary["totals"]["pass"] > 50


def test_corpus_selection(tmp_path):
    out = tmp_path / "c.json"
    assert main(["corpus", str(CORPUS), "--only", "Thm-d", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert set(data["per_theorem"]) == {"Thm-d"}


def test_negative_corpus_exit_code(tmp_path):
    out = tmp_path / "n.json"
    assert main(["corpus", str(NEGATIVE), "--json", str(out)]) == 3
    data = json.loads(out.read_text())
    for f in data["files"]:
        assert f["summary"]["fail"] == 1, f["file"]


@pytest.mark.parametrize("path", sorted(NEGATIVE.glob("*.lk")), ids=lambda p: p.stem)
def test_each_negative_control_fails_once(path):
    assert main(["run", str(path)]) == 3


def test_parallel_corpus_matches_serial():
    a = run_corpus(str(CORPUS), jobs=1)
    b = run_corpus(str(CORPUS), jobs=2)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_oracle_check_single_file(tmp_path, capsys):
    f = write(tmp_path, "a.lk", "ring R = F101[x,y]/(x*y); module k = R/(x,y); module Mx = R/(x);")
    assert main(["oracle-check", f, "--degree", "7"]) == 0
    data = json.loads(capsys.readouterr().out)
    mods = data["files"]["a.lk"]
    assert mods["k"]["mismatches"] == [] and mods["k"]["compared"] > 20


def test_worst_exit():
    assert worst_exit(0, 3) == 3
    assert worst_exit(3, 2) == 2
    assert worst_exit(1, 3) == 3
    assert worst_exit(2, 1) == 2
