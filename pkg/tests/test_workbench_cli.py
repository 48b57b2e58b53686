"""Tests for the command-line workbench."""

import json
from pathlib import Path
from unittest.mock import Mock, patch

import pytest
from typer.testing import CliRunner

from cliffmorph.workbench.cli import app
from cliffmorph.workbench.models import CheckResult, SelfDualReport

runner = CliRunner()


def run_json(*args: str) -> dict:
    result = runner.invoke(app, list(args))
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


class TestTable:
    def test_vee_table(self) -> None:
        """Test emitting a vee table document."""
        document = run_json("table", "--signature", "4,0", "--vee", "0")

        assert document["squares"] == [1, -1, -1, -1]
        assert document["provenance"] == "base Cl(4,0)[++++] -> vee(0)"

    def test_pattern_matches_tilt(self) -> None:
        """Test that a sign pattern gives the tilt's table."""
        pattern = run_json("table", "--signature=-+++")
        tilted = run_json("table", "--signature", "1,3", "--tilt")

        assert pattern["entries"] == tilted["entries"]
        assert tilted["squares"] == [-1, 1, 1, 1]

    def test_one_generator(self) -> None:
        """Test the table of a one-dimensional algebra."""
        document = run_json("table", "--signature", "0,1")

        assert len(document["entries"]) == 4

    def test_writes_file(self, tmp_path: Path) -> None:
        """Test writing the table to a file."""
        path = tmp_path / "table.json"

        result = runner.invoke(app, ["table", "-s", "1,3", "-o", str(path)])

        assert result.exit_code == 0
        assert json.loads(path.read_text())["n"] == 4

    def test_bad_vee_index(self) -> None:
        """Test that a vee index outside the signature fails."""
        result = runner.invoke(app, ["table", "--signature", "2,0", "--vee", "5"])

        assert result.exit_code == 2


class TestVerify:
    def test_only(self) -> None:
        """Test running selected checks as JSON."""
        report = run_json(
            "verify", "--only", "session-vee", "--only", "involutivity", "--structured"
        )

        assert report["passed"]
        assert [c["name"] for c in report["checks"]] == ["session-vee", "involutivity"]

    def test_human_output(self) -> None:
        """Test the rich table of check results."""
        result = runner.invoke(app, ["verify", "-s", "1,3", "--only", "session-vee"])

        assert result.exit_code == 0
        assert "session-vee" in result.stdout

    def test_corrupted_table_exits_one(self, tmp_path: Path) -> None:
        """Test that a corrupted table file exits with status 1."""
        path = tmp_path / "table.json"
        runner.invoke(app, ["table", "-s", "2,1", "-o", str(path)])
        document = json.loads(path.read_text())
        document["entries"][1 * 8 + 2][2] *= -1
        path.write_text(json.dumps(document))

        result = runner.invoke(
            app, ["verify", "--only", "table-file", "--table-file", str(path)]
        )

        assert result.exit_code == 1
        assert "(e0, e1)" in result.stdout

    def test_unknown_check(self) -> None:
        """Test that an unknown check name is rejected."""
        result = runner.invoke(app, ["verify", "--only", "nope"])

        assert result.exit_code == 2


class TestPlan:
    def test_structured(self) -> None:
        """Test the JSON plan report."""
        report = run_json("plan", "-s", "4,0", "-t", "3,1", "--structured")

        assert report["steps"] == ["vee(3)", "tilt"]
        assert report["verified"]
        assert report["first_mismatch"] is None

    def test_human(self) -> None:
        """Test the printed plan."""
        result = runner.invoke(app, ["plan", "-s", "4,0", "-t", "1,3"])

        assert result.exit_code == 0
        assert "vee(0)" in result.stdout

    def test_dimension_mismatch(self) -> None:
        """Test that planning across dimensions fails."""
        result = runner.invoke(app, ["plan", "-s", "4,0", "-t", "2,1"])

        assert result.exit_code == 2


class TestDirac:
    def test_vee_recoding(self) -> None:
        """Test the JSON report of the vee comparison."""
        report = run_json("dirac", "--mass", "1/2", "--with-potential", "--structured")

        assert report["equivalent"]
        assert report["mass"] == "1/2"
        signs = report["recoding"]["potential"]
        assert signs == {"A0": 1, "A1": -1, "A2": -1, "A3": -1}
        assert len(report["minkowski"]["equations"]) == 8

    def test_euclidean_control(self) -> None:
        """Test that the euclidean control reports no recoding."""
        report = run_json("dirac", "--against", "euclidean", "--structured")

        assert not report["equivalent"]
        assert report["recoding"] is None

    def test_human(self) -> None:
        """Test the printed Dirac comparison."""
        result = runner.invoke(app, ["dirac"])

        assert result.exit_code == 0
        assert "equivalent" in result.stdout

    @pytest.mark.parametrize(
        "args",
        [["--mass", "abc"], ["--charge", "1/0"], ["--against", "minkowski"]],
    )
    def test_bad_flags(self, args: list[str]) -> None:
        """Test that malformed couplings or comparisons exit with status 2."""
        assert runner.invoke(app, ["dirac", *args]).exit_code == 2


class TestSelfDual:
    @pytest.mark.parametrize("sign", ["1", "-1"])
    def test_structured(self, sign: str) -> None:
        """Test the JSON self-duality report."""
        report = run_json("selfdual", "--sign", sign, "--structured")

        assert report["passed"]
        assert len(report["basis"]) == 3

    def test_bad_sign(self) -> None:
        """Test that a sign other than +-1 is rejected."""
        assert runner.invoke(app, ["selfdual", "--sign", "2"]).exit_code == 2

    @patch("cliffmorph.workbench.cli.selfdual_report")
    def test_failed_check_exits_one(self, mock_report: Mock) -> None:
        """Test that a failing self-duality check exits with status 1."""
        mock_report.return_value = SelfDualReport(
            sign=1,
            basis=[],
            passed=False,
            checks=[CheckResult(name="dimension", passed=False, detail="0 fields")],
        )

        result = runner.invoke(app, ["selfdual"])

        assert result.exit_code == 1
        mock_report.assert_called_once_with(1)


class TestEval:
    def test_human(self) -> None:
        """Test printing an evaluated expression."""
        result = runner.invoke(app, ["eval", "e01 v e02"])

        assert result.exit_code == 0
        assert result.stdout.strip() == "-e12"

    def test_structured(self) -> None:
        """Test the JSON evaluation report."""
        report = run_json("eval", "e0123 v e0123", "-s", "1,3", "--structured")

        assert report["value"] == "1"
        assert report["terms"] == [["1", "1"]]
        assert report["signature"] == "Cl(1,3)[+---]"

    def test_parse_error(self) -> None:
        """Test that a malformed expression exits with status 2."""
        result = runner.invoke(app, ["eval", "e0 +"])

        assert result.exit_code == 2


class TestFlags:
    @pytest.mark.parametrize(
        "args",
        [
            ["eval", "1", "--signature", "9,9"],
            ["eval", "1", "--signature", "x"],
            ["verify", "--preserve", "7"],
            ["--log-level", "chatty", "eval", "1"],
            ["table", "--unknown"],
        ],
    )
    def test_rejected(self, args: list[str]) -> None:
        """Test that invalid session flags exit with status 2."""
        assert runner.invoke(app, args).exit_code == 2
