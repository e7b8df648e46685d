import json

import pytest

from invgen.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def e12_tuple(form):
    return {"space": {"field": {"kind": "prime", "p": 101}, "n": 2, "form": form},
            "tuple": [[[0, 1], [0, 0]]]}


def test_check_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "check", write(tmp_path, "a.json", e12_tuple("symmetric")))
    assert code == 0
    rep = json.loads(out)
    assert rep["generates"] is True and rep["closure_dim"] == 4
    code, out, _ = run(capsys, "check", write(tmp_path, "b.json", e12_tuple("skew")))
    assert code == 1 and json.loads(out)["closure_dim"] == 2


def test_check_singular_gram(capsys, tmp_path):
    obj = e12_tuple("symmetric")
    obj["space"]["gram"] = [[1, 1], [1, 1]]
    code, _, err = run(capsys, "check", write(tmp_path, "c.json", obj))
    assert code == 2 and "gram: singular" in err


def test_check_schema_errors(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run(capsys, "check", str(p))[0] == 2
    assert run(capsys, "check", write(tmp_path, "d.json", {"space": {}}))[0] == 2
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 2


def test_witness_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "witness", "--form", "symmetric", "--n", "5", "--d", "2",
                       "--l", "1", "--r", "3", "--field", "p=101")
    assert code == 0
    obj = json.loads(out)
    assert obj["profile"] == {"d": 2, "l": 1} and obj["six_set_verified"]
    assert len(obj["tuple"]) == 3
    code, out, _ = run(capsys, "check", "--search-witness", write(tmp_path, "w.json", obj))
    assert code == 1
    rep = json.loads(out)
    assert not rep["generates"]
    ws = {(w["d"], w["l"]) for w in rep["witnesses"]}
    assert (2, 1) in ws and ws == {(1, 1), (2, 1), (3, 1), (4, 1)}
    assert {"d": 2, "l": 1, "basis": obj["w_basis"]} in rep["witnesses"]


def test_witness_round_trip_brute_force(capsys, tmp_path):
    # small field: the witness search can be confirmed against all subspaces of F_7^3
    code, out, _ = run(capsys, "witness", "--n", "3", "--d", "1", "--l", "0", "--field", "7")
    assert code == 0
    code, out, _ = run(capsys, "check", "--search-witness",
                       write(tmp_path, "w.json", json.loads(out)))
    assert code == 1 and {(w["d"], w["l"]) for w in json.loads(out)["witnesses"]} == {(1, 0), (2, 0)}


def test_witness_errors(capsys):
    code, _, err = run(capsys, "witness", "--form", "skew", "--n", "4", "--d", "2", "--l", "1")
    assert code == 2 and "EmptyStratum" in err
    code, _, err = run(capsys, "witness", "--n", "5", "--field", "p=3")
    assert code == 2 and "FieldTooSmall" in err
    code, _, err = run(capsys, "witness", "--form", "skew", "--n", "2", "--d", "1", "--l", "1")
    assert code == 2


def test_witness_fill_for_skew(capsys):
    code, out, _ = run(capsys, "witness", "--form", "skew", "--n", "4", "--d", "2", "--l", "0",
                       "--r", "2", "--fill", "--seed", "3")
    assert code == 0 and json.loads(out)["six_set_verified"]


def test_witness_is_deterministic(capsys, monkeypatch):
    argv = ["witness", "--n", "4", "--d", "2", "--l", "1", "--r", "2"]
    a = run(capsys, *argv, "--seed", "11")[1]
    b = run(capsys, *argv, "--seed", "11")[1]
    assert a == b
    monkeypatch.setenv("INVGEN_SEED", "11")
    assert run(capsys, *argv)[1] == a


def test_dims(capsys):
    code, out, _ = run(capsys, "dims", "--form", "symmetric", "--n", "4", "--r", "1")
    ext = json.loads(out)["extremal"]
    assert code == 0 and ext["max_dim"] == 13 and len(ext["argmax"]) == 3
    assert json.loads(run(capsys, "dims", "--form", "skew", "--n", "6", "--r", "2")[1])[
        "extremal"]["max_dim"] == 60
    assert json.loads(run(capsys, "dims", "--form", "skew", "--n", "10", "--r", "1")[1])[
        "extremal"]["max_dim"] == 92
    code, out, _ = run(capsys, "dims", "--n", "4", "--format", "csv")
    assert out.splitlines()[0].startswith("form,n,r,d,l")
    code, out, _ = run(capsys, "dims", "--n", "4", "--format", "text")
    assert "max dim 13" in out


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--mode", "incidence", "--form", "symmetric", "--n", "2",
                       "--r", "1", "--q", "3,5,7")
    tabs = {(t["d"], t["l"]): t for t in json.loads(out)["tables"]}
    assert code == 0 and tabs[(1, 0)]["degree"] == 3 == tabs[(1, 0)]["dim_stratum"]
    code, out, _ = run(capsys, "census", "--mode", "montecarlo", "--form", "skew", "--n", "2",
                       "--r", "1", "--samples", "100")
    assert code == 0 and all(r["rate"] == 0.0 for r in json.loads(out)["rows"])
    code, _, err = run(capsys, "census", "--mode", "exhaustive", "--n", "3", "--q", "101")
    assert code == 2 and "EnumerationTooLarge" in err
    code, out, _ = run(capsys, "census", "--mode", "exhaustive", "--n", "2", "--q", "3",
                       "--gram", "standard")
    assert json.loads(out)["rows"][0]["nongenerating"] == "33"
    code, out, _ = run(capsys, "census", "--mode", "exhaustive", "--n", "2", "--q", "3")
    assert json.loads(out)["rows"][0]["nongenerating"] == "57"


def test_census_csv_and_output(capsys, tmp_path):
    dest = tmp_path / "t.csv"
    code, out, _ = run(capsys, "census", "--n", "2", "--q", "3,5,7", "--format", "csv",
                       "--output", str(dest))
    assert code == 0 and out == ""
    lines = dest.read_text().splitlines()
    assert lines[0] == "kind,n,r,d,l,q,count,degree,residual" and len(lines) == 7


def reduce_input(field, rows, gram="identity"):
    return {"space": {"field": field, "n": 2, "form": "symmetric", "gram": gram},
            "subspace": rows}


def test_reduce(capsys, tmp_path):
    code, out, _ = run(capsys, "reduce",
                       write(tmp_path, "r1.json", reduce_input({"kind": "prime", "p": 5}, [[1, 2]])))
    assert code == 0 and json.loads(out)["gram"] == [["0", "1"], ["1", "0"]]
    bad = write(tmp_path, "r2.json", reduce_input({"kind": "prime", "p": 3}, [[1, 1]]))
    code, _, err = run(capsys, "reduce", bad)
    assert code == 2 and "NonSquareScalar" in err
    code, out, _ = run(capsys, "reduce", "--weak", bad)
    obj = json.loads(out)
    assert code == 0 and obj["gram"] == [["2", "0"], ["0", "2"]] and not obj["standard"]


def test_bad_arguments_exit_nonzero(capsys, tmp_path):
    with pytest.raises(SystemExit) as e:
        main(["census", "--q", "x,y"])
    assert e.value.code == 2
    code, _, err = run(capsys, "check", write(tmp_path, "a.json", e12_tuple("skew")),
                       "--format", "csv")
    assert code == 2 and "csv" in err
