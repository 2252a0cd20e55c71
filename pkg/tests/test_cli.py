import csv
import importlib
import io
import json
import subprocess
import sys

import pytest

search_mod = importlib.import_module("repdigit_triangles.search")
from repdigit_triangles.cli import FIELDS, main
from repdigit_triangles.search import Theorem


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), stdout=buf)
    return code, [json.loads(line) for line in buf.getvalue().splitlines()]


def sides(rec):
    return (int(rec["leg_a"]), int(rec["leg_b"]), int(rec["hypotenuse"]))


def assert_pythagorean(rec):
    a, b, c = sides(rec)
    assert a * a + b * b == c * c


@pytest.mark.parametrize("k, b, d, expected", [(3, 10, 6, (216, 630, 666)), (2, 4, 3, (9, 12, 15))])
def test_check_hit(k, b, d, expected):
    code, recs = run("check", "--k", str(k), "--b", str(b), "--d", str(d), "--type", "t1")
    assert code == 0
    [rec] = recs
    assert rec["record"] == "hit"
    assert sides(rec) == expected


def test_check_anchor_fields():
    _, [rec] = run("check", "--k", "3", "--b", "10", "--d", "6", "--type", "t1")
    assert (rec["delta"], rec["m"], rec["n"]) == ("18", "6", "1")
    assert rec["hypotenuse_base"] == "666"
    assert list(rec) == [f for f in FIELDS if f in rec]


def test_check_absent():
    code, [rec] = run("check", "--k", "2", "--b", "4", "--d", "2", "--type", "t2")
    assert code == 1
    assert rec["record"] == "verdict" and rec["verdict"] == "NO_WITNESS"


def test_check_constraint_violation():
    code, [rec] = run("check", "--k", "2", "--b", "4", "--d", "5", "--type", "t1")
    assert code == 2
    assert rec["record"] == "error"
    assert "d <= b - 1" in rec["message"]


def test_check_bad_type():
    code, [rec] = run("check", "--k", "2", "--b", "4", "--d", "3", "--type", "t9")
    assert code == 2 and rec["record"] == "error"


def test_verify_theorem_two():
    code, recs = run("verify-theorem", "--id", "2", "--k-max", "64", "--threads", "1")
    assert code == 0
    hits = [r for r in recs if r["record"] == "hit"]
    [verdict] = [r for r in recs if r["record"] == "verdict"]
    assert [(h["k"], h["b"], h["d"]) for h in hits] == [(2, 4, 3)]
    assert verdict["verdict"] == "CONSISTENT"
    assert verdict["k_max"] == 64


def test_verify_theorem_three():
    code, recs = run("verify-theorem", "--id", "3", "--k-max", "64", "--threads", "1")
    assert code == 0
    assert [r["record"] for r in recs] == ["verdict"]
    assert recs[0]["hits"] == 0


def test_verify_theorem_five_echoes_bounds():
    code, [rec] = run("verify-theorem", "--id", "5", "--b-max", "500", "--threads", "1")
    assert code == 0
    assert rec["b_max"] == 500 and rec["bases"] == "3..500" and rec["digits"] == "2,3,4"


def test_verify_theorem_bad_id():
    code, [rec] = run("verify-theorem", "--id", "9")
    assert code == 2 and rec["record"] == "error"


def test_verify_theorem_violation_exit_code(monkeypatch):
    monkeypatch.setitem(search_mod.THEOREMS, 2, Theorem(2, "pretend", frozenset()))
    code, recs = run("verify-theorem", "--id", "2", "--k-max", "8", "--threads", "1")
    assert code == 3
    assert recs[-1]["verdict"] == "VIOLATION"


def test_search_small_range():
    code, recs = run("search", "--bases", "3..20", "--k-max", "10", "--types", "t1,t2", "--threads", "1")
    assert code == 0
    hits = [(r["k"], r["b"], r["d"], r["type"]) for r in recs if r["record"] == "hit"]
    # frozen from the closed-form / math.isqrt oracle in tests/oracles.py
    assert hits == [
        (2, 4, 3, "t1"), (2, 7, 6, "t2"), (2, 9, 6, "t1"), (2, 9, 8, "t1"), (3, 10, 6, "t1"),
        (2, 11, 5, "t2"), (2, 11, 9, "t2"), (2, 12, 5, "t1"), (2, 14, 8, "t2"), (2, 14, 9, "t1"),
        (2, 14, 12, "t1"), (2, 15, 12, "t2"), (2, 16, 8, "t1"), (2, 16, 15, "t1"), (2, 19, 12, "t1"),
        (2, 19, 15, "t2"), (2, 19, 16, "t1"),
    ]
    for r in recs[:-1]:
        assert_pythagorean(r)
    summary = recs[-1]
    assert summary["record"] == "summary"
    assert summary["hits"] == 17
    assert summary["specs_tested"] == summary["prefilter_rejections"] + summary["full_checks"]


def test_search_base_ten_type2():
    code, recs = run("search", "--bases", "10..10", "--k-max", "6", "--types", "t2", "--threads", "1")
    assert code == 0
    assert [r["record"] for r in recs] == ["summary"]


def test_search_with_digit_list():
    code, recs = run("search", "--bases", "4..4", "--digits", "3", "--k-max", "4", "--types", "t1",
                     "--threads", "1")
    assert [(r["k"], r["b"], r["d"]) for r in recs if r["record"] == "hit"] == [(2, 4, 3)]


@pytest.mark.parametrize("bases", ["2..10", "a..b", "9..3"])
def test_search_malformed_range(bases):
    code, [rec] = run("search", "--bases", bases, "--threads", "1")
    assert code == 2 and rec["record"] == "error"


def test_search_is_reproducible_across_threads():
    def strip(recs):
        return [{k: v for k, v in r.items() if k not in ("elapsed_s", "threads")} for r in recs]
    _, a = run("search", "--bases", "3..40", "--k-max", "6", "--threads", "1")
    _, b = run("search", "--bases", "3..40", "--k-max", "6", "--threads", "2")
    assert strip(a) == strip(b)


def test_threads_env_default(monkeypatch):
    monkeypatch.setenv("REPDIGIT_THREADS", "1")
    _, recs = run("search", "--bases", "3..5", "--k-max", "3")
    assert recs[-1]["threads"] == 1
    monkeypatch.setenv("REPDIGIT_THREADS", "zero")
    code, [rec] = run("search", "--bases", "3..5", "--k-max", "3")
    assert code == 2 and "REPDIGIT_THREADS" in rec["message"]


def test_family_single():
    code, [rec] = run("family", "--name", "F1", "--l", "1", "--q", "2")
    assert code == 0
    assert (rec["k"], rec["b"], rec["d"]) == (2, 11, 5)
    assert sides(rec) == (25, 60, 65)
    assert rec["family"] == "F1" and rec["family_params"] == "l=1, q=2"
    assert rec["leg_b_base"] == "[5]:[5]"


def test_family_grid():
    code, recs = run("family", "--name", "U", "--grid", "4")
    assert code == 0
    assert [r["family_params"] for r in recs] == ["t=2", "t=3", "t=4"]


def test_family_condition_violation():
    code, [rec] = run("family", "--name", "F2", "--l", "1", "--q", "1")
    assert code == 2
    assert "l**2 >= 2*q**2 + 2" in rec["message"]


def test_family_grid_with_params_is_usage_error():
    code, [rec] = run("family", "--name", "U", "--grid", "4", "--t", "3")
    assert code == 2


def test_corollary():
    code, [rec] = run("corollary", "--d", "6", "--type", "t2")
    assert code == 0
    assert (rec["b"], rec["family"]) == (7, "F2")
    assert_pythagorean(rec)
    code, [rec] = run("corollary", "--d", "2", "--type", "t1")
    assert code == 2


def test_csv_format():
    buf = io.StringIO()
    assert main(["family", "--name", "U", "--grid", "3", "--format", "csv"], stdout=buf) == 0
    rows = list(csv.DictReader(io.StringIO(buf.getvalue())))
    assert [r["b"] for r in rows] == ["4", "9"]
    assert list(rows[0]) == list(FIELDS)


def test_output_is_byte_identical_except_elapsed():
    def once():
        buf = io.StringIO()
        main(["verify-theorem", "--id", "4", "--k-max", "20", "--threads", "1"], stdout=buf)
        return [{k: v for k, v in json.loads(l).items() if k != "elapsed_s"}
                for l in buf.getvalue().splitlines()]
    assert json.dumps(once()) == json.dumps(once())


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "repdigit_triangles", "check", "--k", "2", "--b", "4",
                           "--d", "3", "--type", "t1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["hypotenuse"] == "15"


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "repdigit_triangles", "check", "--k", "x"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
