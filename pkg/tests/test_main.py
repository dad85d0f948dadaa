from __future__ import annotations

import json

import pytest

from src.main import ExitCode, build_parser, dispatch, main
from src.run_report import comparable, to_markdown


def test_construct():
    result = dispatch(["construct", "--n", "13"])
    assert result.code == ExitCode.OK
    report = result.report
    assert report.command == "construct"
    assert report.details["images"][0] == "2101201021012"
    assert report.details["recipe"]["source"] == "appendix"
    assert all(report.verdicts.values())
    assert set(report.fixture_checksums) == {"appendix.txt", "muller.txt"}


def test_construct_excluded_length():
    result = dispatch(["construct", "--n", "14"])
    assert result.code == ExitCode.NONEXISTENCE
    assert "n=14" in result.report.details["error"]


@pytest.mark.parametrize(
    "argv",
    [
        ["construct", "--n", "5"],
        ["bogus"],
        [],
        ["verify-morphism", "--seed", "012", "--muller", "20"],
        ["make-x", "--k", "5"],
    ],
)
def test_usage_errors(argv):
    result = dispatch(argv)
    assert result.code == ExitCode.USAGE
    assert result.report is None


def test_search_reports_nonexistence_proof():
    result = dispatch(["search", "--n", "14"])
    assert result.code == ExitCode.OK
    outcome = result.report.details["outcome"]
    assert outcome["solutions"] == []
    assert result.report.details["proves_nonexistence"] is True


def test_search_with_budget():
    result = dispatch(["search", "--n", "18", "--budget", "40"])
    assert result.code == ExitCode.VERIFICATION_FAILED
    assert result.report.verdicts["exhaustive"] is False


def test_verify_morphism_counterexample():
    result = dispatch(["verify-morphism", "--seed", "012"])
    assert result.code == ExitCode.VERIFICATION_FAILED
    assert result.report.verdicts == {"berstel-3": False, "crochemore-5": False}
    assert result.report.details["berstel-3"]["counterexample"]["word"] == "010"


def test_verify_muller():
    result = dispatch(["verify-morphism", "--muller", "21"])
    assert result.code == ExitCode.OK
    assert result.report.details["stem"] == "012021020102120102012"
    assert result.report.details["stem_existence"]["evidence"] == "muller_morphism"


def test_check_appendix_small_ceiling():
    result = dispatch(["check-appendix", "--ceiling", "13", "--start", "13", "--stop", "30"])
    assert result.code == ExitCode.OK
    assert result.report.details["searched"] == 1
    assert "n=14" not in result.report.verdicts


def test_check_appendix_out_of_range():
    assert dispatch(["check-appendix", "--start", "10"]).code == ExitCode.USAGE


def test_verify_stem(tmp_path):
    path = tmp_path / "w.txt"
    path.write_text("012021\n")
    result = dispatch(["verify-stem", "--input", str(path), "--n", "3"])
    assert result.code == ExitCode.OK
    assert result.report.details["certificate"]["permutations"] == ["021"]

    path.write_text("012012\n")
    result = dispatch(["verify-stem", "--input", str(path), "--stem", "012"])
    assert result.code == ExitCode.VERIFICATION_FAILED
    assert result.report.verdicts == {"decodes": True, "square_free": False}

    skipped = dispatch(["verify-stem", "--input", str(path), "--stem", "012", "--skip-square-check"])
    assert skipped.code == ExitCode.OK


def test_verify_stem_needs_a_block_length(tmp_path):
    path = tmp_path / "w.txt"
    path.write_text("012120\n")
    assert dispatch(["verify-stem", "--input", str(path)]).code == ExitCode.USAGE
    assert dispatch(["verify-stem", "--input", str(tmp_path / "absent")]).code == ExitCode.USAGE


def test_stream_writes_certificate_and_word(tmp_path):
    certificate = tmp_path / "cert.json"
    output = tmp_path / "word.txt"
    result = dispatch(
        ["stream", "--n", "13", "--length", "1300", "--certificate", str(certificate), "--output", str(output)]
    )
    assert result.code == ExitCode.OK
    data = json.loads(certificate.read_text())
    assert data["covered_length"] == 1300
    assert len(data["permutations"]) == 99
    assert len(output.read_text()) == 1300


def test_make_x():
    result = dispatch(["make-x", "--k", "6"])
    assert result.code == ExitCode.OK
    assert result.report.details["x"] == "101202101"
    assert result.report.details["r"] == "2102012" + "101202101" + "2102012"


def test_check_alpha():
    result = dispatch(["check-alpha", "--k", "6"])
    assert result.code == ExitCode.OK
    assert "failures" not in result.report.details
    assert result.report.verdicts["lemma_aa"]


def test_reports_are_reproducible():
    first = dispatch(["construct", "--n", "123"]).report
    second = dispatch(["construct", "--n", "123"]).report
    assert comparable(first) == comparable(second)
    assert "timings" not in comparable(first)
    assert "## Details" in to_markdown(first)


def test_main_json_output(capsys):
    with pytest.raises(SystemExit) as info:
        main(["construct", "--n", "13", "--format", "json"])
    assert info.value.code == 0
    report = json.loads(capsys.readouterr().out)
    assert report["command"] == "construct"
    assert report["exit_code"] == 0


def test_main_text_output(capsys):
    with pytest.raises(SystemExit) as info:
        main(["make-x", "--k", "7", "-q"])
    assert info.value.code == 0
    out = capsys.readouterr().out
    assert "Verdicts" in out and "exit 0" in out


def test_parser_defaults():
    parser = build_parser()
    args = parser.parse_args(["search", "--n", "13"])
    assert args.mode == "all"
    assert parser.parse_args(["search", "--n", "13", "--first"]).mode == "first"
    assert parser.parse_args(["search", "--n", "13", "--all"]).mode == "all"
    assert args.budget is None
    assert args.format == "text"


def test_search_first_mode():
    result = dispatch(["search", "--n", "13", "--first"])
    assert result.code == ExitCode.OK
    assert result.report.details["outcome"]["mode"] == "first"
    assert result.report.details["outcome"]["solutions"] == ["2010210120102"]
    assert "reversal_closed" not in result.report.verdicts
    assert dispatch(["search", "--n", "13", "--first", "--all"]).code == ExitCode.USAGE


@pytest.mark.parametrize(
    "argv, code",
    [
        (["--n", "14", "--length", "140"], ExitCode.NONEXISTENCE),
        (["--n", "13", "--length", "131"], ExitCode.USAGE),
    ],
)
def test_failed_stream_leaves_no_output_file(tmp_path, argv, code):
    output = tmp_path / "word.txt"
    result = dispatch(["stream", *argv, "--output", str(output)])
    assert result.code == code
    assert not output.exists()
