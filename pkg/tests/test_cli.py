"""The README console blocks are the fixture set; each command is run and compared byte for byte."""

import json
import re
import shlex
from pathlib import Path

import pytest

from bredon.cli import main

ROOT = Path(__file__).resolve().parent.parent
EXAMPLES = ROOT / "docs" / "examples"


def readme_examples():
    text = (ROOT / "README.md").read_text()
    out = []
    for block in re.findall(r"```console\n(.*?)```", text, re.S):
        current = None
        for line in block.splitlines():
            if line.startswith("$ "):
                current = [line[2:], []]
                out.append(current)
            else:
                current[1].append(line)
    cases = []
    for cmd, lines in out:
        status = 0
        if lines and (m := re.fullmatch(r"\[exit (\d+)\]", lines[-1])):
            status = int(m.group(1))
            lines = lines[:-1]
        cases.append((cmd, "\n".join(lines) + "\n", status))
    return cases


def run(argv, capsys):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


@pytest.mark.parametrize("cmd,expected,status", readme_examples(), ids=lambda v: v[:60] if isinstance(v, str) else None)
def test_readme_example(cmd, expected, status, capsys, monkeypatch):
    monkeypatch.chdir(ROOT)
    argv = shlex.split(cmd)
    assert argv[0] == "bredon"
    code, out, err = run(argv[1:], capsys)
    assert code == status
    assert out + err == expected


def test_readme_has_examples():
    cmds = [c for c, _, _ in readme_examples()]
    assert {shlex.split(c)[1] for c in cmds} == {"cohomology", "csupport", "table", "functor-dump", "verify", "snf"}


def test_output_is_repeatable(capsys):
    argv = ["cohomology", "--complex", str(EXAMPLES / "s3_triangle.json"),
            "--coefficients", str(EXAMPLES / "constant_z.json"),
            "--format", "json-document"]
    first = run(argv, capsys)
    assert first == run(argv, capsys)
    assert json.loads(first[1])["cohomology"][0]["rank"] == 1


def test_out_file(tmp_path, capsys):
    target = tmp_path / "snf.json"
    code, out, _ = run(["snf", "--matrix", "[[0, 3], [2, 0]]", "--format", "json-document", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["diagonal"] == [1, 6]


def test_group_mismatch_names_field(capsys):
    code, _, err = run(["cohomology", "--group", "Z/3", "--complex", str(EXAMPLES / "reflection_square.json"),
                        "--coefficients", str(EXAMPLES / "constant_z.json")], capsys)
    assert code == 2
    assert "reflection_square.json" in err and "group" in err


def test_missing_file_and_bad_json(capsys, tmp_path):
    code, _, err = run(["snf", "--matrix", str(tmp_path / "nope.json")], capsys)
    assert code == 2 and "nope.json" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(["cohomology", "--group", "Z/2", "--complex", str(bad),
                        "--coefficients", '{"kind": "constant"}'], capsys)
    assert code == 2 and "bad.json" in err


def test_non_functor_literal_rejected(capsys):
    doc = json.loads((EXAMPLES / "twisted_z2.json").read_text())
    doc["maps"][0]["matrix"] = [[-1]]
    code, _, err = run(["cohomology", "--complex", str(EXAMPLES / "reflection_square.json"),
                        "--coefficients", json.dumps(doc)], capsys)
    assert code == 2 and "maps" in err


def test_degree_window_and_routes(capsys):
    base = ["cohomology", "--complex", str(EXAMPLES / "reflection_square.json"),
            "--coefficients", str(EXAMPLES / "free_orbit_representable.json")]
    outs = {r: run(base + ["--route", r, "--degrees", "1..1"], capsys) for r in ("cellular", "poset", "both")}
    assert all(o == (0, "H1 = Z^2\n", "") for o in outs.values())


def test_route_disagreement_is_a_check_failure(capsys, monkeypatch):
    from bredon import cli
    from bredon.linalg import FGAbGroup
    monkeypatch.setattr(cli, "cohomology_poset", lambda X, E, **kw: [FGAbGroup(1), FGAbGroup(1)])
    code, _, err = run(["cohomology", "--complex", str(EXAMPLES / "reflection_square.json"),
                        "--coefficients", str(EXAMPLES / "constant_z.json")], capsys)
    assert code == 1 and "disagree" in err


def test_verify_subset_document(capsys):
    code, out, _ = run(["verify", "--checks", "normalization", "--random", "0", "--format", "json-document"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"] and doc["checks"][0]["cases"] == 258 and "seconds" not in doc["checks"][0]


def test_bad_option_values(capsys):
    with pytest.raises(SystemExit) as info:
        main(["cohomology", "--complex", "x", "--coefficients", "y", "--degrees", "3..1"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["cohomology", "--complex", "x", "--coefficients", "y", "--subdivide", "-1"])
