import csv
import io
import json

import pytest

from subsums.cli import main


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def seq(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def test_mcsp_json(seq, capsys):
    path = seq("a.txt", "# sample\n3\n0\n5\n\n0\n2\n4\n")
    code, out, _ = run(["mcsp", "--input", path], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["positions"] == [3, 5, 1, 3, 2, 1]
    assert doc["result"]["maxima"] == ["5", "6", "8", "11", "11", "14"]
    assert doc["manifest"]["subcommand"] == "mcsp"
    assert len(doc["manifest"]["input_digests"][path]) == 64


def test_mcsp_fractions_and_decimals(seq, capsys):
    path = seq("a.txt", "1/2\n0.25\n-3\n")
    code, out, _ = run(["mcsp", "--input", path], capsys)
    assert json.loads(out)["result"]["maxima"] == ["1/2", "3/4", "-9/4"]


def test_format_parity(seq, capsys):
    path = seq("a.txt", "3\n0\n5\n0\n2\n4\n")
    _, js, _ = run(["mcsp", "--input", path], capsys)
    _, cs, _ = run(["mcsp", "--input", path, "--format", "csv"], capsys)
    _, tx, _ = run(["mcsp", "--input", path, "--format", "text"], capsys)
    result = json.loads(js)["result"]
    rows = list(csv.reader(io.StringIO(cs)))[1:]
    assert [r[1] for r in rows] == result["maxima"]
    assert [int(r[2]) for r in rows] == result["positions"]
    for m, p in zip(result["maxima"], result["positions"]):
        assert f"= {m} at" in tx and f"= {p}" in tx


def test_conv_and_max(seq, capsys):
    x, y = seq("x", "1\n2\n"), seq("y", "3\n4\n")
    _, out, _ = run(["conv", "--x", x, "--y", y], capsys)
    assert json.loads(out)["result"]["z"] == ["4", "5", "6"]
    _, out, _ = run(["conv", "--x", x, "--y", y, "--max"], capsys)
    assert json.loads(out)["result"]["z"] == ["4", "5", "6"]


def test_reduce_subcommands(seq, capsys):
    x, y = seq("x", "1\n2\n"), seq("y", "3\n4\n")
    code, out, _ = run(["reduce", "conv2mcsp", "--x", x, "--y", y], capsys)
    res = json.loads(out)["result"]
    assert code == 0 and res["decoded_z"] == ["4", "5", "6"] and res["matches_naive"]
    a = seq("a", "1\n2\n")
    code, out, _ = run(["reduce", "mcsp2conv", "--input", a], capsys)
    res = json.loads(out)["result"]
    assert res["x"] == ["3", "1", "0"] and res["y"] == ["0", "-1", "-3"]
    assert res["decoded_maxima"] == ["2", "3"]
    code, out, _ = run(["reduce", "verify", "--trials", "5", "--max-n", "6", "--seed", "3"], capsys)
    assert code == 0 and json.loads(out)["result"]["passed"] == 5


def test_unique(capsys):
    code, out, _ = run(["unique", "--config", "2,4,2,1,2,1"], capsys)
    res = json.loads(out)["result"]
    assert code == 0 and res["unique"] is False and res["reason"] == "infeasible-LP"
    code, out, _ = run(["unique", "--config", "5,5,1,3,2,1"], capsys)
    res = json.loads(out)["result"]
    assert res["unique"] and len(res["witness"]) == 6


def test_census(capsys):
    code, out, _ = run(["census", "--n", "6"], capsys)
    res = json.loads(out)["result"]
    assert code == 0 and res["unique_count"] == 148 and res["depth_lower_bound"] == 5
    _, out, _ = run(["census", "--n", "6", "--format", "csv"], capsys)
    assert list(csv.reader(io.StringIO(out)))[1][:2] == ["6", "148"]
    _, out, _ = run(["census", "--n", "5", "--format", "text"], capsys)
    assert "U(n)=36" in out and "(n/2)!=3.3" in out


def test_estimate_is_reproducible(capsys):
    argv = ["estimate", "--n", "8", "--samples", "50", "--seed", "7", "--verify"]
    code, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    a, b = json.loads(first), json.loads(second)
    assert code == 0 and a["result"] == b["result"]
    assert a["result"]["self_check"]["ok"]
    assert a["manifest"]["seed"] == 7


def test_manifest_replay(seq, capsys, tmp_path):
    out_path = tmp_path / "r.json"
    run(["estimate", "--n", "6", "--samples", "20", "--seed", "2", "--output", str(out_path)], capsys)
    doc = json.loads(out_path.read_text())
    flags = doc["manifest"]["flags"]
    argv = [doc["manifest"]["subcommand"]]
    for k, v in flags.items():
        if k in ("command", "verify") or v is None:
            continue
        argv += [f"--{k.replace('_', '-')}", str(v)]
    _, again, _ = run(argv, capsys)
    assert json.loads(again)["result"] == doc["result"]


def test_family(capsys):
    code, out, _ = run(["family", "--n", "6", "--verify"], capsys)
    res = json.loads(out)["result"]
    assert code == 0 and res["ok"] and res["instances"] == 8
    code, out, _ = run(["family", "--n", "5", "--subset", "4"], capsys)
    res = json.loads(out)["result"]
    assert res["configuration"] == [3, 2, 3, 2, 1] and res["sequence"] == ["0", "2", "20", "1", "3"]


def test_exit_codes(seq, capsys, tmp_path):
    assert run(["bogus"], capsys)[0] == 2
    assert run(["census"], capsys)[0] == 2
    assert run(["mcsp", "--input", str(tmp_path / "missing.txt")], capsys)[0] == 3
    assert run(["mcsp", "--input", seq("bad", "1\nabc\n")], capsys)[0] == 3
    assert run(["unique", "--config", "3,3,3"], capsys)[0] == 2
    assert run(["family", "--n", "6", "--subset", "9"], capsys)[0] == 2
    assert run(["conv", "--x", seq("x", "1\n"), "--y", seq("y", "1\n2\n")], capsys)[0] == 2
