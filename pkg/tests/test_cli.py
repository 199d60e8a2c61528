from __future__ import annotations

import json
from pathlib import Path

from core.ops import build_system
from generators.registry import named_fixture
from inverse.ops import build_index_poset, build_inverse_system
from sepsys_contracts.documents import serialize_inverse_system
from treesets.cli import main, parse_selection


def test_parse_selection_keeps_parenthesized_names() -> None:
    assert parse_selection("(1,2), (3,2),a*") == ["(1,2)", "(3,2)", "a*"]


def test_cli_validate_fixture(capsys) -> None:
    exit_code = main(["validate", "path3"])
    output = capsys.readouterr().out

    assert exit_code == 0
    assert "elements: 4" in output
    assert "tree set: yes" in output


def test_cli_validate_reports_irregular_tree_set(capsys) -> None:
    exit_code = main(["validate", "small_pair"])
    output = capsys.readouterr().out

    assert exit_code == 0
    assert "regular: no" in output


def test_cli_orientations_count(capsys) -> None:
    assert main(["orientations", "path4"]) == 0
    assert "consistent orientations: 4" in capsys.readouterr().out


def test_cli_stars(capsys) -> None:
    assert main(["stars", "k13"]) == 0
    output = capsys.readouterr().out
    assert "splitting stars: 4" in output
    assert "{(1,0), (2,0), (3,0)} branching" in output


def test_cli_check_host(capsys) -> None:
    exit_code = main(["check", "k13"])
    output = capsys.readouterr().out

    assert exit_code == 0
    assert output.count(": holds") == 4


def test_cli_check_family(capsys) -> None:
    assert main(["check", "example_B", "--bound", "3"]) == 1
    assert "branch_bounded: violated" in capsys.readouterr().out
    assert main(["check", "ray", "--bound", "3"]) == 0
    assert "chain_complete: unknown_up_to (bound 3)" in capsys.readouterr().out


def test_cli_quotient_reports_non_transitive_relation(capsys) -> None:
    exit_code = main(["quotient", "ex_non_trans"])
    output = capsys.readouterr().out

    assert exit_code == 1
    assert "transitivity violations: 1" in output
    assert "three-star witnesses: 1" in output
    assert output.count("{(2,3), (4,3), (6,3)}") == 1
    assert "certified: no" in output


def test_cli_quotient_without_default_selection(capsys) -> None:
    exit_code = main(["quotient", "path3"])
    captured = capsys.readouterr()

    assert exit_code == 2
    assert "fixture 'path3' has no default selection; pass --selection" in captured.err
    assert "Unknown fixture" not in captured.err


def test_cli_quotient_with_explicit_selection(capsys) -> None:
    exit_code = main(["quotient", "path3", "--selection", "(1,2),(3,2)"])
    output = capsys.readouterr().out

    assert exit_code == 0
    assert "branch-closed: yes" in output
    assert "certified: yes" in output


def test_cli_limit_of_tree_set(capsys) -> None:
    assert main(["limit", "path3"]) == 0
    output = capsys.readouterr().out
    assert "canonical selection family of path3: 1 selections" in output
    assert "limit elements: 4" in output
    assert "phi: bijective, isomorphism" in output


def test_cli_limit_and_validate_inverse_document(tmp_path: Path, capsys) -> None:
    coarse = build_system(["a", "a*"], [("a", "a*")], name="coarse")
    index = build_index_poset(["p", "q"], [("p", "q")])
    table = {"(1,2)": "a", "(2,1)": "a*", "(2,3)": "a", "(3,2)": "a*"}
    system = build_inverse_system(index, {"p": coarse, "q": named_fixture("path3")}, {("q", "p"): table})
    document = tmp_path / "two_level.yaml"
    document.write_text(serialize_inverse_system(system), encoding="utf-8")

    assert main(["limit", str(document)]) == 0
    assert "limit elements: 4" in capsys.readouterr().out
    assert main(["validate", str(document)]) == 0
    assert "valid: yes" in capsys.readouterr().out
    assert main(["orientations", str(document)]) == 2


def test_cli_represent_needs_hypothesis(capsys) -> None:
    exit_code = main(["represent", "path3", "--ground", "greatest"])
    output = capsys.readouterr().out

    assert exit_code == 1
    assert "HYPOTHESIS FAILED" in output
    assert main(["represent", "k13", "--ground", "greatest"]) == 0


def test_cli_gen_then_validate(tmp_path: Path, capsys) -> None:
    out = tmp_path / "example_B_2.yaml"
    assert main(["gen", "example_B", "--n", "2", "--out", str(out)]) == 0
    assert "OK: wrote" in capsys.readouterr().out

    exit_code = main(["validate", str(out)])
    output = capsys.readouterr().out
    assert exit_code == 0
    assert "elements: 10" in output
    assert "provenance" in out.read_text(encoding="utf-8")


def test_cli_gen_to_stdout(capsys) -> None:
    assert main(["gen", "chain123"]) == 0
    assert capsys.readouterr().out.startswith("format: sepsys/1")


def test_cli_unknown_fixture(capsys) -> None:
    exit_code = main(["validate", "no_such_fixture"])
    captured = capsys.readouterr()

    assert exit_code == 2
    assert "ERROR:" in captured.err


def test_cli_missing_limits_file(tmp_path: Path, capsys) -> None:
    exit_code = main(["--limits", str(tmp_path / "absent.yaml"), "check", "k13"])
    assert exit_code == 2
    assert "Limits file not found" in capsys.readouterr().err


def test_cli_json_output(capsys) -> None:
    assert main(["--json", "validate", "path3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["elements"] == 4
    assert payload["tree_set"] is True


def test_cli_json_output_is_deterministic(capsys) -> None:
    outputs = []
    for _ in range(3):
        main(["--json", "quotient", "ex_non_trans"])
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1] == outputs[2]
    assert json.loads(outputs[0])["transitivity_violations"]
