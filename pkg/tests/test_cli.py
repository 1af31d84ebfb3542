import json
import re
import shlex
from pathlib import Path

import jsonschema
import pytest

from edcrg import schemas
from edcrg.cli import main

README = Path(__file__).resolve().parent.parent / "README.md"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def kv(text):
    return dict(line.split(": ", 1) for line in text.strip().splitlines() if ": " in line)


@pytest.fixture
def gq22(tmp_path, capsys):
    path = tmp_path / "gq22.crg"
    assert run(capsys, "gen", "triangular_complement(6)", "--out", str(path))[0] == 0
    return str(path)


def test_bounds_at_t4(capsys):
    code, out, _ = run(capsys, "bounds", "at", "--t", "4", "--p", "1/4")
    d = kv(out)
    assert code == 0 and (d["upper"], d["lower"], d["exact"]) == ("11/60", "11/60", "True")


def test_crg_eval_gq22(capsys, gq22):
    code, out, _ = run(capsys, "crg", "eval", "--crg", gq22, "--p", "1/5")
    d = kv(out)
    assert code == 0 and d["f"] == "4/25" and d["g"] == "4/25" and d["is_pcore"] == "True"


def test_qlist_t6(capsys):
    code, out, _ = run(capsys, "bounds", "qlist", "--t", "6")
    assert code == 0 and kv(out)["q"] == "[]"


def test_gen_stdout_is_a_crg_file(capsys):
    from edcrg.crg import parse_crg

    code, out, _ = run(capsys, "gen", "--construction", "paley", "--params", "q=13")
    assert code == 0 and parse_crg(out).k == 13


def test_forbid_with_graph(capsys, tmp_path, gq22):
    g = tmp_path / "k24.graph"
    g.write_text("graph 6\n" + "".join(f"e {a} {b}\n" for a in (0, 1) for b in range(2, 6)))
    code, out, _ = run(capsys, "crg", "forbid", "--crg", gq22, "--graph", str(g))
    assert code == 0 and kv(out)["embeds"] == "False"


def test_oracle_dist(capsys, tmp_path):
    g = tmp_path / "k23.graph"
    g.write_text("graph 5\n" + "".join(f"e {a} {b}\n" for a in (0, 1) for b in range(2, 5)))
    code, out, _ = run(capsys, "oracle", "dist", "--graph", str(g), "--t", "3")
    assert code == 0 and kv(out)["distance"] == "1"


def test_oracle_gnp_csv(capsys):
    code, out, _ = run(capsys, "oracle", "gnp", "--n", "6", "--p", "1/2", "--t", "3", "--samples", "4", "--seed", "5")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "trial,edges,density,distance,normalized" and len(lines) == 5
    again = run(capsys, "oracle", "gnp", "--n", "6", "--p", "1/2", "--t", "3", "--samples", "4", "--seed", "5")[1]
    assert again == out


def test_envelope_csv_file(capsys, tmp_path):
    path = tmp_path / "env.csv"
    code, _, _ = run(capsys, "bounds", "envelope", "--t", "5", "--samples", "21", "--out", str(path))
    rows = path.read_text().strip().splitlines()
    assert code == 0 and rows[0] == "p,upper,lower,exact,active_upper" and len(rows) == 22


@pytest.mark.parametrize("argv, schema", [
    (["bounds", "envelope", "--t", "5", "--samples", "21", "--format", "json"], schemas.ENVELOPE),
    (["bounds", "envelope", "--t", "9", "--samples", "11", "--format", "json", "--catalog"], schemas.ENVELOPE),
    (["bounds", "at", "--t", "5", "--p", "0.32", "--format", "json"], schemas.POINT_BOUND),
    (["bounds", "at", "--t", "6", "--p", "0.2", "--format", "json"], schemas.POINT_BOUND),
    (["verify", "--suite", "quick", "--format", "json"], schemas.VERIFY),
    (["bounds", "qlist", "--t", "7", "--format", "json"], schemas.RECORD),
    (["bounds", "catalog", "--t", "7", "--format", "json"], schemas.RECORD),
    (["bounds", "tangency", "--t", "5", "--format", "json"], schemas.RECORD),
    (["oracle", "scan", "--max-k", "2", "--p", "3/10", "--t", "3", "--format", "json"], schemas.RECORD),
])
def test_json_outputs_validate(capsys, argv, schema):
    code, out, _ = run(capsys, *argv)
    data = json.loads(out)
    jsonschema.validate(data, schema)
    assert json.loads(json.dumps(data)) == data
    assert code == 0


def test_point_json_values(capsys):
    d = json.loads(run(capsys, "bounds", "at", "--t", "5", "--p", "0.32", "--format", "json")[1])
    assert d["upper"] == d["lower"] == "1/6" and d["exact"] is True


@pytest.mark.parametrize("argv", [
    ["bounds", "at", "--t", "4"],
    ["bounds"],
    ["crg", "eval", "--p", "1/2"],
    ["gen"],
    ["nosuch"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "usage" in err


@pytest.mark.parametrize("argv", [
    ["bounds", "at", "--t", "4", "--p", "3/2"],
    ["bounds", "qlist", "--t", "9"],
    ["gen", "paley", "--params", "q=7"],
    ["crg", "eval", "--crg", "/nonexistent.crg", "--p", "1/2"],
    ["oracle", "scan", "--max-k", "5", "--p", "1/3", "--t", "3"],
])
def test_domain_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and err.startswith("edcrg: ") and out == ""


def test_bad_crg_file_names_line(capsys, tmp_path):
    bad = tmp_path / "bad.crg"
    bad.write_text("crg 2\nv 0 B\nv 1 Q\n")
    code, _, err = run(capsys, "crg", "eval", "--crg", str(bad), "--p", "1/2")
    assert code == 1 and "line 3" in err


def test_verify_quick(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "quick")
    assert code == 0 and out.strip().endswith("6/6 passed")


def readme_examples():
    """(command, expected output) pairs from ``$ edcrg`` blocks in the README."""
    blocks = re.findall(r"```console\n(.*?)```", README.read_text(), re.S)
    out = []
    for block in blocks:
        cmd, lines = None, []
        for line in block.splitlines():
            if line.startswith("$ "):
                if cmd:
                    out.append((cmd, lines))
                cmd, lines = line[2:], []
            else:
                lines.append(line)
        if cmd:
            out.append((cmd, lines))
    return out


def test_readme_examples_run(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    examples = readme_examples()
    assert len(examples) >= 5
    for cmd, expected in examples:
        argv = shlex.split(cmd)
        assert argv[0] == "edcrg"
        code, out, _ = run(capsys, *argv[1:])
        assert code == 0, cmd
        got = out.rstrip("\n").splitlines()
        shown = [ln for ln in expected if ln != "..."]
        if "..." in expected:
            assert all(ln in got for ln in shown), cmd
        else:
            assert got == shown, cmd


def test_srg_file_needs_params(capsys, tmp_path):
    g = tmp_path / "c5.graph"
    g.write_text("graph 5\n" + "".join(f"e {i} {(i + 1) % 5}\n" for i in range(5)))
    code, _, err = run(capsys, "gen", "srg_file", "--params", f"path={g}")
    assert code == 1 and "params=k:d:lambda:mu" in err
    code, out, _ = run(capsys, "gen", "srg_file", "--params", f"path={g},params=5:2:0:1", "--format", "json")
    assert code == 0 and json.loads(out)["srg_params"] == "(5,2,0,1)"
