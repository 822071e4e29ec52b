import io
import json

import pytest

from multsidon.cli import main, read_config, read_set_file


def run(argv, **kw):
    out = io.StringIO()
    code = main(argv, out=out)
    return code, out.getvalue()


@pytest.fixture
def set_file(tmp_path):
    p = tmp_path / "a.txt"
    p.write_text("# example\n1\n2\n3\n4  # four\n8\n\n12\n")
    return str(p)


def test_read_set_file(set_file):
    assert read_set_file(set_file) == [1, 2, 3, 4, 8, 12]


def test_verify_violation(set_file):
    code, out = run(["verify", set_file, "--k", "3"])
    assert code == 1
    rep = json.loads(out)
    assert rep["violation"] == {"lhs": [1, 4, 12], "rhs": [2, 3, 8], "product": 48}
    assert rep["square_witness"] == [1, 2, 3, 4, 8, 12]


def test_verify_ok(tmp_path):
    p = tmp_path / "p.txt"
    p.write_text("\n".join(map(str, [2, 3, 5, 7, 11, 13])))
    code, out = run(["verify", str(p)])
    assert code == 0 and json.loads(out)["k_sidon"]


def test_search_exact():
    code, out = run(["search", "--exact", "--n", "5"])
    rep = json.loads(out)
    assert code == 0 and rep["size"] == 5 and rep["optimal"] is True


def test_search_greedy_text():
    code, out = run(["search", "--greedy", "--n", "12", "--format", "text"])
    assert code == 0 and "size: 9" in out


def test_census_csv():
    code, out = run(["census", "--x", "20", "--i", "3", "--format", "csv"])
    lines = out.splitlines()
    assert lines[0] == "x,i,N_exact,M_exact,bound_value,remark_exponent"
    assert lines[1].split(",")[:4] == ["20", "3", "19", "5"]


def test_decompose_summary():
    code, out = run(["decompose", "--n", "5000"])
    rep = json.loads(out)
    assert code == 0 and rep["failures"] == 0 and sum(rep["counts"].values()) == 5000


def test_decompose_emit():
    code, out = run(["decompose", "--n", "100", "--emit", "--rule", "minv", "--format", "csv"])
    lines = out.splitlines()
    assert lines[0] == "m,u,v,case" and "60,15,4,Balanced" in lines and "97,97,1,LargePrime" in lines


def test_encode_outputs(tmp_path):
    p = tmp_path / "h.txt"
    p.write_text("6\n15\n35\n77\n143\n26\n")
    code, out = run(["encode", str(p), "--n", "150", "--format", "text"])
    assert code == 1
    assert out.splitlines()[0] == "2 3 6"
    assert "# hexagon 2 3 5 7 11 13" in out
    code, out = run(["encode", str(p), "--n", "150"])
    assert json.loads(out)["solution"] == [[6, 35, 143], [15, 77, 26]]


def test_ledger_csv():
    code, out = run(["ledger", "--n", "300", "--construction", "greedy", "--format", "csv"])
    assert code == 0
    assert out.splitlines()[0] == "part_key,h,subkey,k,l,edge_count,cap,cap_kind"


def test_extremal_and_bounds():
    code, out = run(["extremal", "--u", "4", "--v", "3"])
    rep = json.loads(out)
    assert code == 0 and rep["below_gyori"] and rep["witness_c6_free"]
    code, out = run(["extremal", "--n", "5", "--format", "csv"])
    assert out.splitlines()[-1].startswith("5,10,")
    code, out = run(["bounds", "--ns", "100,10000", "--format", "csv"])
    assert out.splitlines()[1].startswith("100,25,15,40,")


def test_config_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("n = 12\nformat = text\n# comment\n")
    assert read_config(str(cfg)) == {"n": "12", "format": "text"}
    code, out = run(["search", "--greedy", "--config", str(cfg)])
    assert "size: 9" in out
    code, out = run(["search", "--greedy", "--config", str(cfg), "--n", "8"])
    assert "size: 8" in out


def test_env_sieve_limit(monkeypatch):
    monkeypatch.setenv("MULTSIDON_SIEVE_LIMIT", "50")
    code, _ = run(["bounds", "--ns", "100"])
    assert code == 2
    monkeypatch.setenv("MULTSIDON_SIEVE_LIMIT", "200")
    code, _ = run(["bounds", "--ns", "100"])
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["verify", "/no/such/file"],
    ["search", "--n", "0"],
    ["census", "--x", "5", "--i", "1"],
    ["extremal", "--n", "12"],
    ["bogus"],
    ["search", "--n", "10", "--workers", "0"],
])
def test_bad_input_exit_2(argv, capsys):
    code, _ = run(argv)
    assert code == 2


def test_bad_set_file(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("1\nx\n")
    assert run(["verify", str(p)])[0] == 2
