from __future__ import annotations

import json
from pathlib import Path

import jsonschema
import pytest

from touchconics.cli import EXIT_CERT, EXIT_CHECK, EXIT_INPUT, EXIT_OK, main, random_planes, render_text

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "schema" / "report-v1.json").read_text())

COMMANDS = [
    ["verify-gb"],
    ["quartic"],
    ["section", "--plane", "E1", "--plane", "1 2 3 0", "--plane", "3 -2 5 7"],
    ["bitangents", "--plane", "1 0 0 1"],
    ["families", "--plane", "1 0 0 1"],
    ["components", "--plane", "2 3 -1 4"],
    ["orbits"],
]


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_reports_validate_against_schema(capsys, argv):
    code, out, _ = run(capsys, argv)
    assert code == EXIT_OK
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    assert report["command"] == argv[0]
    assert report["passed"] and report["failed_checks"] == []


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(SCHEMA)


def _leaves(obj):
    if isinstance(obj, dict):
        for v in obj.values():
            yield from _leaves(v)
    elif isinstance(obj, list) and obj and all(not isinstance(v, (dict, list)) for v in obj):
        yield "[" + ", ".join(json.dumps(v) for v in obj) + "]"
    elif isinstance(obj, list):
        for v in obj:
            yield from _leaves(v)
    else:
        yield json.dumps(obj)


@pytest.mark.parametrize("argv", [["quartic"], ["section", "--plane", "1 2 3 0"], ["orbits"]], ids=lambda a: a[0])
def test_text_and_json_carry_the_same_data(capsys, argv):
    _, js, _ = run(capsys, argv + ["--json"])
    _, txt, _ = run(capsys, argv + ["--text"])
    report = json.loads(js)
    assert txt.strip() == render_text(report)
    pos = 0
    for leaf in _leaves(report):
        found = txt.find(leaf, pos)
        assert found >= 0, leaf
        pos = found + len(leaf)


def test_deterministic_output(capsys):
    argv = ["bitangents", "--seed", "11", "--count", "1"]
    _, a, _ = run(capsys, argv)
    _, b, _ = run(capsys, argv)
    assert a == b


def test_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["quartic", "--out", str(out)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["payload"]["nodes"]["count"] == 13


@pytest.mark.parametrize(
    "argv",
    [
        ["section", "--plane", "1 x 2 3"],
        ["section"],
        ["section", "--plane", "0 0 0 0"],
        ["bitangents", "--plane", "E2"],
        ["quartic", "--spec", "/nonexistent/spec.qspec"],
    ],
)
def test_input_errors(capsys, argv):
    code, _, err = run(capsys, argv)
    assert code == EXIT_INPUT
    assert "error" in err


def test_bad_spec_file(tmp_path, capsys):
    path = tmp_path / "bad.qspec"
    path.write_text("1 2 3\n")
    assert run(capsys, ["quartic", "--spec", str(path)])[0] == EXIT_INPUT


def test_broken_basis_exits_with_check_failure(tmp_path, capsys):
    from touchconics.groebner import load_basis_file

    path = tmp_path / "basis.txt"
    path.write_text("\n".join(p.to_text() for p in load_basis_file()[2:]) + "\n")
    code, out, err = run(capsys, ["verify-gb", "--basis", str(path)])
    assert code == EXIT_CHECK
    assert json.loads(out)["passed"] is False
    assert "check failed" in err


def test_certification_failure_exit_code(monkeypatch, capsys):
    import touchconics.cli as cli
    from touchconics.plane_quartic import CertificationError

    def boom(*a, **k):
        raise CertificationError("not enough precision")

    monkeypatch.setattr(cli, "bitangents", boom)
    assert run(capsys, ["bitangents", "--plane", "1 0 0 1"])[0] == EXIT_CERT


def test_random_planes_are_smooth_and_reproducible(surface):
    from touchconics.plane_quartic import section

    a = random_planes(surface, 4, 3)
    assert a == random_planes(surface, 4, 3)
    assert all(section(surface, p).kind == "Smooth" for p in a)
    assert all(abs(c) <= 9 for p in a for c in p.coeffs)
