import csv
import io
import json


from arakelov_h0.cli import dispatch


def run(*argv):
    out = io.StringIO()
    code = dispatch(list(argv), out=out)
    return code, out.getvalue()


def test_h0_example_one():
    code, text = run("h0", "--field", "ex1", "--divisor", "ex1", "--delta", "1e-5")
    assert code == 0
    obj = json.loads(text)
    assert abs(float(obj["h0"]) - 0.47250) < 1e-4
    assert obj["M"] == 8
    assert obj["path"] == "split"
    assert isinstance(obj["h0"], str)


def test_jump_trace_lines():
    code, text = run("jump", "--field", "ex1", "--logu", "-7.0710678e19,7.0710678e19", "--trace")
    assert code == 0
    rows = [json.loads(line) for line in text.splitlines()]
    assert [r["i"] for r in rows] == list(range(62))
    assert rows[1]["norm_Jinv"] == "129"
    assert set(rows[0]) == {"i", "hnf", "den", "norm_Jinv", "log_omega"}


def test_w_is_minus_logu():
    a = run("reduce", "--field", "ex2", "--w", "1,2,-3")[1]
    b = run("reduce", "--field", "ex2", "--logu", "-1,-2,3")[1]
    assert a == b


def test_info_text():
    code, text = run("info", "--field", '{"poly": [1, 0, 1]}', "--format", "text")
    assert code == 0
    assert "disc: -4" in text


def test_precision_flag_beats_env(monkeypatch):
    monkeypatch.setenv("ARAKELOV_H0_PRECISION", "300")
    assert '"precision_bits": 300' in run("info", "--field", '{"poly": [1, 0, 1]}')[1]
    assert '"precision_bits": 256' in run("info", "--field", '{"poly": [1, 0, 1]}', "--precision-bits", "256")[1]


def test_exit_codes(tmp_path):
    assert run("h0", "--field", "ex1", "--divisor", "ex1", "--delta", "3")[0] == 2
    assert run("h0", "--field", str(tmp_path / "missing.json"), "--logu", "0,0")[0] == 2
    assert run("h0", "--field", '{"poly": [-4, 0, 1]}', "--logu", "0,0")[0] == 4
    assert run("reduce", "--field", '{"poly": [-5, 0, 1]}', "--logu", "0,0", "--precision-bits", "60")[0] in (0, 3)
    assert run("bogus")[0] == 2
    assert run("reduce", "--field", "ex2", "--logu", "1,2")[0] == 2


def test_sweep_csv_roundtrip_and_determinism(tmp_path):
    args = ["sweep", "--field", '{"poly": [-1, -1, 1]}', "--logu", "0,0", "--dir", "e", "--extent", "3", "--samples", "7"]
    a = run(*args)[1]
    b = run(*args)[1]
    assert a == b
    rows = list(csv.reader(io.StringIO(a)))
    assert rows[0] == ["e", "h0", "M", "term_count", "cache_index"]
    assert len(rows) == 8
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    assert buf.getvalue() == a
    out = tmp_path / "grid.csv"
    code, text = run(*args, "--out", str(out))
    assert code == 0 and out.read_text() == a
    assert json.loads(text)["cache_size"] == 1  # class number one: every cell reduces to O_F
