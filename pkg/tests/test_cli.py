import json
import subprocess
import sys

import pytest

from vword.cli import EXIT_ERROR, EXIT_NOT_WP, EXIT_OK, main
from vword.group import ENDMARKER
from vword.pda import loads, validate_determinism


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decide_examples(capsys):
    code, out, _ = run_cli(capsys, "decide", "--gens", "higman", "g1 g1")
    assert code == EXIT_OK and "in_wp: true" in out
    code, out, _ = run_cli(capsys, "decide", "--gens", "higman", "g1")
    assert code == EXIT_NOT_WP
    assert "in_wp: false" in out and "witness: rotation=0 z=00" in out
    code, out, _ = run_cli(capsys, "decide", "--gens", "higman", "")
    assert code == EXIT_OK and "in_wp: true" in out


def test_decide_json(capsys):
    code, out, _ = run_cli(capsys, "decide", "--format", "json", "--word", "g1")
    assert code == EXIT_NOT_WP
    assert json.loads(out) == {"in_wp": False, "length": 1, "witness": {"rotation": 0, "z": "00"}}
    code, out, _ = run_cli(capsys, "decide", "--format", "json", "g2 g2")
    assert json.loads(out)["witness"] is None


def test_decide_json_is_byte_identical(capsys):
    args = ("decide", "--format", "json", "--random", "50", "--seed", "4")
    outs = {run_cli(capsys, *args)[1] for _ in range(3)}
    assert len(outs) == 1
    other = run_cli(capsys, "decide", "--format", "json", "--random", "50", "--seed", "5")[1]
    assert json.loads(other)["length"] == 50


def test_decide_parallel_is_deterministic(capsys):
    base = ("decide", "--format", "json", "--random", "200", "--seed", "1")
    serial = run_cli(capsys, *base)[1]
    assert run_cli(capsys, *base, "--parallel", "4")[1] == serial
    assert run_cli(capsys, *base, "--parallel")[1] == serial


def test_decide_word_file_and_compact(capsys, tmp_path):
    p = tmp_path / "w.txt"
    p.write_text("g3\n g1 g1\ng3\n")
    assert run_cli(capsys, "decide", "--word-file", str(p))[0] == EXIT_OK
    gens = tmp_path / "ab.json"
    gens.write_text(json.dumps({"generators": {"a": [["0", "1"], ["1", "0"]],
                                               "b": [["00", "01"], ["01", "00"], ["1", "1"]]}}))
    assert run_cli(capsys, "decide", "--gens", str(gens), "--compact", "abba")[0] == EXIT_OK
    assert run_cli(capsys, "decide", "--gens", str(gens), "--compact", "ab")[0] == EXIT_NOT_WP


@pytest.mark.parametrize("argv", [
    ("decide", "g1 g9"),
    ("decide", "--gens", "/nonexistent/gens.json", "g1"),
    ("decide", "--word-file", "/nonexistent/word.txt"),
    ("decide", "g1", "--word", "g2"),
    ("decide", "--gens", "higman", ENDMARKER),
    ("oracle", "g0"),
    ("export-lz", "--z", ""),
    ("export-lz", "--z", "0a"),
    ("check", "bogus"),
    ("bench", "--lengths", "64,32"),
    ("bench", "--lengths", "x"),
])
def test_errors_exit_1(capsys, argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == EXIT_ERROR
    assert "error" in err


def test_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["decide", "--random", "notanint"])
    assert exc.value.code == EXIT_ERROR
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == EXIT_ERROR


def test_malformed_gens_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli(capsys, "decide", "--gens", str(bad), "g1")[0] == EXIT_ERROR
    bad.write_text(json.dumps({"generators": {"a": [["0", "0"]]}}))
    assert run_cli(capsys, "decide", "--gens", str(bad), "a")[0] == EXIT_ERROR


def test_oracle_examples(capsys, gh):
    code, out, _ = run_cli(capsys, "oracle", "--format", "json", "g1 g1")
    assert code == EXIT_OK
    assert json.loads(out) == {"table": [["", ""]], "identity": True, "maxlen": 0}
    out = run_cli(capsys, "oracle", "--format", "json", "g2")[1]
    assert json.loads(out)["table"] == [list(pq) for pq in gh["g2"].entries]
    data = json.loads(run_cli(capsys, "oracle", "--format", "json", "g1 g3")[1])
    assert data["identity"] is False and data["maxlen"] <= 4
    out = run_cli(capsys, "oracle", "g1 g1")[1]
    assert "identity: true" in out


def test_export_lz_json_roundtrip(capsys, tmp_path):
    dest = tmp_path / "l00.json"
    code, _, _ = run_cli(capsys, "export-lz", "--z", "00", "--gens", "higman", "--format", "json", "-o", str(dest))
    assert code == EXIT_OK
    data = json.loads(dest.read_text())
    assert data["states"] == ["q0", "q1", "qa"]
    m = loads(dest.read_text())
    assert validate_determinism(m) == []


def test_export_lz_dot(capsys):
    code, out, _ = run_cli(capsys, "export-lz", "--z", "01", "--format", "dot")
    assert code == EXIT_OK and out.startswith('digraph "L_01"')


def test_check_suites(capsys):
    code, out, _ = run_cli(capsys, "check", "oracle-agreement", "--max-length", "4")
    assert code == EXIT_OK and "FAIL" not in out
    code, out, _ = run_cli(capsys, "check", "lemmas", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["passed"] is True


def test_bench_zero_trials(capsys):
    code, out, _ = run_cli(capsys, "bench", "--trials", "0", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["rows"] == []


def test_bench_small(capsys):
    code, out, _ = run_cli(capsys, "bench", "--lengths", "16,32", "--trials", "1", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert [r["n"] for r in data["rows"]] == [16, 32]
    assert data["slope"] is not None


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "vword", "decide", "g4 g4"], capture_output=True, text=True)
    assert r.returncode == EXIT_OK
    assert "in_wp: true" in r.stdout
