import json
from fractions import Fraction

import pytest

from sltcalc.cli import main
from sltcalc.verify import KNOWN_CLAIMS, Ledger, jsonable


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_resolve_text(capsys):
    code, out, _ = run(capsys, "resolve", "--classt", "5", "1", "7")
    assert code == 0
    assert "chain (-2, -2, -5, -4)" in out and "index 7" in out


def test_resolve_nonnormal(capsys):
    code, doc = run_json(capsys, "resolve", "--nonnormal", "3", "5")
    assert code == 0 and sorted(doc["charts"]) == ["e", "o"]


@pytest.mark.parametrize("argv", [
    ("resolve", "--classt", "4", "1", "6"),
    ("fullsheaf", "--classt", "5", "1", "7"),
    ("fullsheaf", "--classt", "5", "1", "7", "--n", "7"),
    ("pair", "--classt", "5", "1", "7", "--n", "1", "--n2", "9"),
    ("bound", "--classt", "5", "1", "7", "--n", "14"),
    ("expand", "--classt", "5", "1", "7", "--n", "5", "--kind", "tau"),
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("sltcalc ")


def test_argparse_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["resolve", "--classt", "5", "1", "7", "--nonnormal", "3", "5"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        main(["verify", "--max-m", "0"])


def test_fullsheaf(capsys):
    code, doc = run_json(capsys, "fullsheaf", "--classt", "5", "1", "7", "--n", "6")
    assert code == 0 and doc["oracle_agrees"] is True
    assert doc["nu"] == {"1,1": "0", "1,2": "0", "2,1": "2", "3,1": "3"}
    assert doc["t_min"] == [["9", "2"]]
    code, doc = run_json(capsys, "fullsheaf", "--nonnormal", "3", "5", "--n", "4")
    assert code == 0 and doc["oracle_agrees"] is True


def test_pair_and_bound(capsys):
    code, doc = run_json(capsys, "pair", "--classt", "5", "1", "7", "--n", "6")
    assert code == 0 and doc["formula"] == doc["oracle"] == "4" and doc["agree"]
    code, doc = run_json(capsys, "bound", "--classt", "5", "1", "7", "--n", "1")
    assert code == 0 and (doc["index"], doc["DDprime"], doc["B"], doc["ok"]) == ("7", "4", "13", True)


def test_expand_and_member(capsys):
    code, doc = run_json(capsys, "expand", "--classt", "5", "1", "7", "--n", "4", "--kind", "mu")
    assert code == 0 and doc["entries"] == ["0", "2"] and doc["valid"]
    code, doc = run_json(capsys, "member", "--classt", "5", "1", "7", "--n", "1")
    assert code == 0 and doc["n_star"] == "6" and len(doc["curves"]) == 5
    code, doc = run_json(capsys, "member", "--classt", "5", "1", "7", "--n", "7")
    assert code == 0 and doc["curves"] == []


def test_json_is_deterministic(capsys):
    argv = ("fullsheaf", "--classt", "5", "2", "7", "--n", "3", "--format", "json")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second and json.loads(first)


def test_small_verify(capsys, tmp_path):
    path = tmp_path / "ledger.jsonl"
    code, doc = run_json(capsys, "verify", "--max-m", "7", "--max-d", "2", "--max-r-cf", "40",
                         "--max-r-pullback", "20", "--random-vectors", "10", "--ledger", str(path))
    assert code == 0 and doc["ok"] and doc["findings"] == "0"
    rows = [json.loads(line) for line in path.read_text().splitlines()]
    assert rows and all(set(r) == {"claim", "ref", "instance", "expected", "got", "verdict"} for r in rows)
    assert {r["verdict"] for r in rows} <= {"erratum", "convention"}


def test_ledger_unknown_claim_is_a_finding():
    led = Ledger()
    led.add("minus-tail", {}, 1, 2)
    led.add("something new", {}, 1, 2)
    assert [e.verdict for e in led.entries] == ["erratum", "finding"]
    assert led.entries[0].ref == KNOWN_CLAIMS["minus-tail"][0]
    assert len(led.findings) == 1 and led.counts() == {"minus-tail": 1, "something new": 1}


def test_jsonable():
    assert jsonable({(1, 2): Fraction(3, 6), "x": [1, True, None]}) == {"1,2": "1/2", "x": ["1", True, None]}
