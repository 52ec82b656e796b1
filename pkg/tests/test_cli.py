import json

from numsemi.cli import main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_convert_figure_one(capsys):
    code, out, _ = run(capsys, "convert", "--partition", "[6,4,3,3,1,1]")
    assert code == 0
    assert out.splitlines()[0] == "{0, 3, 4, 7, 9, 10, 12, ->}"
    assert "(g,f,m) = (6,11,3)" in out


def test_convert_json_and_sources(capsys):
    code, out, _ = run(capsys, "convert", "--generators", "3,5", "--emit", "json")
    rec = json.loads(out)[0]
    assert rec["gaps"] == ["1", "2", "4", "7"] and rec["semigroup"] is True
    code, out, _ = run(capsys, "convert", "--set", "{0, 3, 5, 6, 8, ->}", "--emit", "json")
    assert json.loads(out)[0]["partition"] == "[4,2,1,1]"
    code, _, err = run(capsys, "convert", "--gaps", "3,1")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "convert")
    assert code == 2


def test_count(capsys):
    assert run(capsys, "count", "--fn", "PF", "--args", "7,7")[:2] == (0, "4\n")
    code, out, _ = run(capsys, "count", "--fn", "P", "--args", "10", "--emit", "json")
    assert json.loads(out) == [{"fn": "P", "args": "10", "value": "42"}]


def test_exit_codes(capsys):
    assert run(capsys, "count", "--fn", "PG", "--args", "300,3")[0] == 3
    assert run(capsys, "count", "--fn", "P", "--args", "600")[0] == 3
    assert run(capsys, "count", "--fn", "XX", "--args", "1")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "table", "--fn", "PG", "--n", "1..x")[0] == 2
    assert run(capsys, "verify", "--theorem", "MULT_HALF", "--i", "3", "--n", "5..6")[0] == 1
    assert run(capsys, "count", "--fn", "P", "--args", "3", "--budget", "0")[0] == 2


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--fn", "PF", "--n", "1..4", "--arg", "1..4", "--emit", "csv")
    lines = out.splitlines()
    assert lines[0] == "fn,n,arg,value" and len(lines) == 17
    assert "PF,4,4,2" in lines


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "6", "--length", "4", "--semigroups", "--emit", "jsonl")
    recs = [json.loads(x) for x in out.splitlines()]
    assert [r["partition"] for r in recs] == ["[3,1,1,1]", "[2,2,1,1]"]
    code, out, _ = run(capsys, "enumerate", "--genus-tree", "3", "--count-only", "--emit", "csv")
    assert out.splitlines()[1] == "8"


def test_bijection_check(capsys):
    code, out, _ = run(capsys, "bijection", "--id", "MULT_REC_J", "--j", "2", "--n", "8", "--check")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and lines[-1]["summary"]["ok"] is True
    assert all(r["status"] == "ok" for r in lines[:-1])
    code, _, _ = run(capsys, "bijection", "--id", "GENUS_BOXED_K", "--k", "1", "--n", "6")
    assert code == 1


def test_verify_cli(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "FROB_REC", "--k", "0..2", "--n", "auto", "--auto-seconds", "1", "--summary")
    assert code == 0 and "FROB_REC" in out
    code, out, _ = run(capsys, "verify", "--theorem", "GENUS_REC", "--j", "0..1", "--n", "6..8", "--emit", "json")
    recs = json.loads(out)
    assert code == 0 and all(isinstance(r["lhs"], str) for r in recs)
    assert "elapsed" not in recs[0]


def test_cache_env(capsys, tmp_path, monkeypatch):
    path = tmp_path / "c.json"
    monkeypatch.setenv("NUMSEMI_CACHE", str(path))
    from numsemi import cli

    ap = cli.build_parser()
    assert ap.parse_args(["count", "--fn", "P", "--args", "5"]).cache == str(path)
    code, _, _ = run(capsys, "count", "--fn", "PG", "--args", "9,6", "--cache", str(path))
    assert code == 0 and json.loads(path.read_text())["entries"]["PG:9,6"] == "3"


def test_explore_and_ratio(capsys):
    code, out, _ = run(capsys, "explore", "--family", "genus", "--i", "1..3", "--n", "3..9", "--summary", "--emit", "csv")
    assert code == 0 and out.splitlines()[1].startswith("GENUS,1,1,")
    code, out, _ = run(capsys, "ratio", "--n", "0..6", "--emit", "json")
    recs = json.loads(out)
    assert recs[6]["ratio"] == "1/2" and recs[6]["ratio_decimal"] == "0.500000"


def test_parse_range():
    assert parse_range("1..3,7") == [1, 2, 3, 7]
    assert parse_range("4") == [4]
