import csv
import io
import json
import subprocess
import sys

import pytest

from wreath_observable.cli import PROB_FIELDS, main
from wreath_observable.fixtures import fixture_path
from wreath_observable.report import format_float, to_csv, to_json


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def fx(name):
    return str(fixture_path(name))


@pytest.fixture
def bad_graph(tmp_path):
    p = tmp_path / "bad.g"
    p.write_text("n 3\ne 0 1\ne 0 x\n")
    return str(p)


@pytest.mark.parametrize("argv,code", [
    (["decide", "--g1", "p3", "--g2", "p3b", "--m", "2", "--seed", "7"], 0),
    (["decide", "--g1", "k3", "--g2", "k3", "--m", "1"], 0),
    (["decide", "--g1", "k3", "--g2", "edge3", "--m", "3"], 1),
    (["decide", "--g1", "rigid6a", "--g2", "rigid6b", "--m", "1"], 3),
    (["decide", "--g1", "p3", "--g2", "k3", "--m", "4"], 3),
    (["prob", "--g1", "p3", "--g2", "k3", "--m", "4", "--budget-nnz", "1000"], 3),
    (["prob", "--g1", "p3", "--g2", "k3", "--m", "2"], 0),
    (["autgroup", "--g1", "p3", "--g2", "p3b"], 0),
    (["gprime", "--n", "3"], 0),
    (["swaps", "--n", "3"], 0),
    (["verify", "--suite", "group"], 0),
])
def test_exit_codes(capsys, argv, code):
    argv = [fx(a) if prev in ("--g1", "--g2") else a for prev, a in zip([""] + argv, argv)]
    assert run(capsys, *argv)[0] == code


def test_usage_errors(capsys, bad_graph):
    code, _, err = run(capsys, "decide", "--g1", bad_graph, "--g2", fx("k3"))
    assert code == 2 and "line 3" in err
    code, _, err = run(capsys, "prob", "--g1", "/nonexistent.g", "--g2", fx("k3"))
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["decide", "--g1", fx("k3"), "--g2", fx("k3"), "--m", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_decide_json_is_byte_identical(capsys):
    argv = ["decide", "--g1", fx("p3"), "--g2", fx("k3"), "--m", "3", "--trials", "3", "--seed", "5"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    doc = json.loads(a)
    assert doc["bound"] == 0.75 and doc["trials"] == 3 and len(doc["p1_trials"]) == 3
    assert all(p <= 0.75 + 1e-9 for p in doc["p1_trials"])
    assert "runtime" not in doc
    _, c, _ = run(capsys, *argv, "--timing")
    assert json.loads(c)["runtime"] >= 0


def test_decide_isomorphic_report(capsys):
    code, out, _ = run(capsys, "decide", "--g1", fx("p3"), "--g2", fx("p3b"), "--m", "2", "--seed", "7")
    doc = json.loads(out)
    assert code == 0 and doc["decision"] == "isomorphic" and doc["p1"] == 1
    assert doc["outcome_samples"] == {"lambda0": 0, "lambda1": 1}


def test_prob_fields(capsys):
    code, out, _ = run(capsys, "prob", "--g1", fx("p3"), "--g2", fx("k3"), "--m", "2", "--seed", "1")
    doc = json.loads(out)
    assert code == 0 and tuple(doc) == PROB_FIELDS
    assert doc["dimension"] == 5184 and doc["group_order"] == 72 and doc["h_order"] == 12
    assert doc["contains_swap"] is False
    assert abs(doc["p1"] - 7 / 12) <= 1e-9 and abs(doc["p0"] + doc["p1"] - 1) <= 1e-12
    assert len(doc["reps"]) == 2


def test_prob_union_bound_m1(capsys):
    _, out, _ = run(capsys, "prob", "--g1", fx("p3"), "--g2", fx("k3"), "--m", "1", "--method", "exact")
    doc = json.loads(out)
    assert doc["sum_swap_expect"] == 3 and doc["method"] == "exact-rational"
    assert abs(doc["p1"] - 5 / 6) <= 1e-12


def test_prob_trivial_pair(capsys):
    code, out, _ = run(capsys, "prob", "--g1", fx("k3"), "--g2", fx("edge3"), "--m", "2")
    doc = json.loads(out)
    assert code == 0 and doc["method"] == "none" and doc["p1"] is None and doc["contains_swap"] is False


def test_decide_csv_rows(capsys):
    _, out, _ = run(capsys, "decide", "--g1", fx("p3"), "--g2", fx("k3"), "--m", "2",
                    "--trials", "4", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 4 and [r["trial"] for r in rows] == ["0", "1", "2", "3"]
    assert all(len(r["reps"].split(";")) == 2 for r in rows)


def test_human_format(capsys):
    code, out, _ = run(capsys, "gprime", "--n", "4", "--format", "human")
    assert code == 0 and "index" in out and "2" in out


def test_swaps_and_gprime(capsys):
    _, out, _ = run(capsys, "swaps", "--n", "3", "--format", "json")
    doc = json.loads(out)
    assert doc["count"] == 6
    assert all(s["b"] == 1 for s in doc["swaps"])
    _, out, _ = run(capsys, "swaps", "--n", "2", "--format", "csv")
    assert len(out.strip().splitlines()) == 3
    _, out, _ = run(capsys, "gprime", "--n", "3")
    doc = json.loads(out)
    assert doc == {"n": 3, "group_order": 72, "gprime_order": 36, "predicate_order": 36,
                   "match": True, "index": 2}


def test_autgroup(capsys):
    _, out, _ = run(capsys, "autgroup", "--g1", fx("p3"), "--g2", fx("p3b"), "--elements")
    doc = json.loads(out)
    assert doc["h_order"] == 8 and doc["contains_swap"] is True and doc["swap_elements"] == 4
    assert len(doc["elements"]) == 8
    _, out, _ = run(capsys, "autgroup", "--g1", fx("rigid6a"), "--g2", fx("rigid6a_relabeled"))
    assert json.loads(out)["h_order"] == 2


def test_verify_suite_output(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "dims", "--n", "2", "--m", "2")
    assert code == 0 and "[dims] PASS" in out


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "wreath_observable.cli", "gprime", "--n", "2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["index"] == 2


def test_report_formatting():
    assert format_float(0.1) == "0.10000000000000001"
    assert to_json({"b": 1.0, "a": None, "c": [0.5, True]}) == '{"b": 1, "a": null, "c": [0.5, true]}'
    assert to_csv([{"x": {"lambda0": 1, "lambda1": 2}, "y": [1, 2]}]) == "x,y\nlambda0=1;lambda1=2,1;2\n"
    assert to_csv([]) == ""
