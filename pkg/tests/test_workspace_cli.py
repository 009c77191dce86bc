import json

import pytest

from ngamma.bundled import bundled_document, bundled_path, bundled_workspace
from ngamma.cli import main
from ngamma.workspace import (
    SCHEMA, Workspace, WorkspaceError, dump_document, merge_document,
    parse_workspace,
)


def test_bundled_file_matches_generator():
    on_disk = bundled_path().read_text(encoding="utf-8")
    assert on_disk == dump_document(bundled_document())


def test_bundled_workspace_contents():
    ws = bundled_workspace()
    assert set(ws.semirings) == {"f2_ternary", "boolean_ternary", "z4_ternary"}
    assert "z4_ideal02" in ws.modules
    assert "c_ideal" in ws.conflations
    assert ws.module("z4_reg").parent == ws.semiring("z4_ternary")


def test_parse_workspace_from_file(tmp_path):
    path = tmp_path / "one.json"
    path.write_text(dump_document(bundled_document()), encoding="utf-8")
    ws = parse_workspace([str(path)])
    assert str(path) in ws.digests
    assert "f2_ternary" in ws.semirings


def test_empty_and_bad_documents(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps({"schema": SCHEMA}), encoding="utf-8")
    ws = parse_workspace([str(empty)])
    assert not ws.semirings

    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(WorkspaceError):
        parse_workspace([str(bad)])

    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"schema": "nope"}), encoding="utf-8")
    with pytest.raises(WorkspaceError):
        parse_workspace([str(wrong)])


def test_nonassociative_table_rejected():
    doc = {
        "schema": SCHEMA,
        "monoids": {"bad": {"size": 3, "zero": 0,
                            "add": [0, 1, 2, 1, 2, 2, 2, 0, 1]}},
    }
    ws = Workspace()
    with pytest.raises(WorkspaceError) as err:
        merge_document(ws, doc)
    assert "bad" in str(err.value)


def test_axiom_violation_aborts_load():
    doc = bundled_document()
    doc["semirings"]["broken"] = {
        "n": 3, "T": "m_z2", "gamma": "g_trivial",
        "mu": [0, 0, 0, 0, 0, 0, 1, 1],  # mu(1,1,0) = 1 breaks absorption
    }
    with pytest.raises(WorkspaceError) as err:
        merge_document(Workspace(), doc)
    assert "broken" in str(err.value)


def test_dangling_reference():
    doc = {"schema": SCHEMA,
           "semirings": {"s": {"n": 3, "T": "nope", "gamma": "nope", "mu": []}}}
    with pytest.raises(WorkspaceError):
        merge_document(Workspace(), doc)


def test_cli_exit_codes(capsys, tmp_path):
    assert main(["--format", "structured", "validate"]) == 0
    capsys.readouterr()
    assert main(["--format", "structured", "spectrum", "no_such"]) == 2
    capsys.readouterr()
    # An ideals quotient over a non-ideal subset is a fail report.
    assert main(["--format", "structured", "ideals", "quotient",
                 "z4_ternary", "--ideal", "3"]) == 1
    capsys.readouterr()


def test_cli_structured_reports_are_json(capsys):
    rc = main(["--format", "structured", "ext", "z4_ternary", "z4_reg",
               "z4_reg", "--depth", "1"])
    out = capsys.readouterr().out
    assert rc == 0
    doc = json.loads(out)
    assert doc["schema"] == "ngamma-report/1"
    assert doc["results"]["degrees"]["0"] == [4]
    assert doc["results"]["degrees"]["1"] == []


def test_cli_spectrum_values(capsys):
    rc = main(["--format", "structured", "spectrum", "z4_ternary"])
    doc = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert doc["results"]["primes"] == [[0, 2]]


def test_cli_deterministic_output(capsys):
    args = ["--format", "structured", "balance", "z4_ternary", "z4_reg",
            "z4_reg", "--depth", "2"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    second = capsys.readouterr().out
    assert first == second


def test_cli_gamma_policy_flag(capsys):
    rc = main(["--format", "structured", "ext", "z4_ternary", "z4_reg",
               "z4_reg", "--depth", "1", "--gamma-policy", "fixed:0,0",
               "--filler-policy", "fixed:1"])
    doc = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert doc["results"]["degrees"]["0"] == [4]


def test_cli_emit_matrices(capsys):
    rc = main(["--format", "structured", "ext", "f2_ternary", "f2_reg",
               "f2_reg", "--depth", "1", "--emit-matrices"])
    doc = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert doc["results"]["bar_differentials"]["1"] == [[0]]
    assert doc["results"]["bar_differentials"]["2"] == [[1]]


def test_cli_text_format(capsys):
    rc = main(["spectrum", "f2_ternary"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "status: pass" in out
