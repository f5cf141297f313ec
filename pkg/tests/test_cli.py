import json
from pathlib import Path

import pytest

from higher_hopf.cli import RunConfig, build_parser, main, run

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def cli(*args):
    code, text = run([str(a) for a in args])
    return code, (json.loads(text) if text.startswith("{") else text)


def test_compute_c3c3_h2_and_h3():
    code, out = cli("compute", "--input", FIX / "c3c3.json", "--variety", "group:c2:p3")
    assert code == 0
    assert out["invariants"]["abelian_invariants"] == [3] and out["n"] == 1
    code, out = cli("compute", "--input", FIX / "c3c3.json", "--variety", "group:c2:p3", "--degree", 3)
    assert code == 0 and out["n"] == 2


def test_compute_is_byte_identical_across_runs():
    args = ["compute", "--input", str(FIX / "c3c3.json"), "--variety", "group:c2:p3", "--degree", "3"]
    assert run(args) == run(args)


def test_present_then_evaluate_roundtrip(tmp_path):
    code, cube = cli("present", "--input", FIX / "c3c3.json", "--variety", "group:c2:p3", "--degree", 3, "--seed", 4)
    assert code == 0 and cube["n"] == 2
    path = tmp_path / "cube.json"
    path.write_text(json.dumps(cube))
    code, rep = cli("validate-cube", "--input", path, "--variety", "group:c2:p3")
    assert code == 0 and rep["is_extension"] and rep["is_presentation"]
    code, res = cli("evaluate-cube", "--input", path, "--variety", "group:c2:p3")
    _, direct = cli("compute", "--input", FIX / "c3c3.json", "--variety", "group:c2:p3", "--degree", 3)
    assert code == 0 and res["invariants"] == direct["invariants"]


def test_validate_reports_failures_with_exit_2():
    code, rep = cli("validate-cube", "--input", FIX / "h27_bad_square.json")
    assert code == 2 and not rep["is_extension"] and rep["failures"]


def test_non_presentation_needs_trust():
    code, out = cli("evaluate-cube", "--input", FIX / "h27_square.json", "--variety", "group:c2:p3")
    assert code == 2 and out["error"] == "NotAPresentation"
    code, out = cli("evaluate-cube", "--input", FIX / "h27_square.json", "--variety", "group:c2:p3", "--trust")
    assert code == 0 and out["projectivity"] == "trusted"


def test_centralize_output_is_central(tmp_path):
    code, cube = cli("centralize", "--input", FIX / "h27_square.json")
    assert code == 0
    path = tmp_path / "c.json"
    path.write_text(json.dumps(cube))
    code, rep = cli("validate-cube", "--input", path)
    assert code == 0 and rep["is_extension"]


def test_pxmod_evaluation():
    code, out = cli("evaluate-cube", "--input", FIX / "swap_arrow.json", "--reflector", "peiffer")
    assert code == 0 and out["numerator_order"] == 2 and out["projectivity"] == "trusted"


@pytest.mark.parametrize(
    "args, code",
    [
        (["compute", "--input", FIX / "c3c3.json", "--variety", "group:c2:p3", "--reflector", "peiffer"], 2),
        (["compute", "--input", FIX / "s3.json", "--variety", "group:c2:p3"], 2),
        (["compute", "--input", FIX / "c3c3.json", "--variety", "group:c2:p3", "--degree", 4], 3),
        (["compute", "--input", FIX / "c3c3.json", "--variety", "group:c2:p3", "--cap", 20], 3),
        (["compute", "--input", FIX / "missing.json", "--variety", "group:c2:p3"], 4),
        (["compute", "--input", FIX / "c3c3.json"], 4),
        (["compute", "--input", FIX / "c3c3.json", "--variety", "group:c5:p3"], 2),
        (["compute", "--input", FIX / "c3c3.json", "--variety", "group:c2:p3", "--degree", 1], 4),
        (["nonsense"], 4),
    ],
)
def test_exit_codes(args, code):
    assert run([str(a) for a in args])[0] == code


def test_bad_json_is_a_parse_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out = cli("compute", "--input", bad, "--variety", "group:c2:p3")
    assert code == 4 and out["category"] == "parse"


def test_oracle_and_baer_commands():
    code, out = cli("oracle", "--trials", 15, "--max-order", 12)
    assert code == 0 and out["checked"] == 30 and out["disagreements"] == 0
    code, out = cli("oracle", "--reflector", "peiffer", "--trials", 10)
    assert code == 0 and out["disagreements"] == 0
    code, out = cli("baer-check", "--input", FIX / "c3c3.json", "--variety", "group:c2:p3", "--trials", 3)
    assert code == 0 and out["agree"] and out["trials"] == 3


def test_lie_compute():
    code, out = cli("compute", "--input", FIX / "lie_heis3.json", "--variety", "lie:c3:p3")
    assert code == 0 and out["invariants"]["dim"] == 2


def test_text_format_and_main(capsys):
    assert main(["compute", "--input", str(FIX / "c3c3.json"), "--variety", "group:c2:p3", "--format", "text"]) == 0
    assert "invariants.order: 3" in capsys.readouterr().out


def test_run_config_degree_maps_to_presentation_dimension():
    assert RunConfig("compute", degree=3).n == 2
    assert build_parser().parse_args(["compute"]).degree == 2
