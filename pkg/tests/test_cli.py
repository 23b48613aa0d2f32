"""Command-line interface: exit codes, formats, determinism, figures."""

import json

import pytest
from click.testing import CliRunner

from dominance_lab.cli import main


@pytest.fixture
def runner():
    return CliRunner()


class TestDecide:
    def test_holds_exits_zero(self, runner):
        result = runner.invoke(main, [
            "decide", "--kind", "linear", "--domain", "N",
            "--g", "2 * n", "--f", "n"])
        assert result.exit_code == 0
        record = json.loads(result.output)
        assert record["status"] == "holds"

    def test_fails_exits_one(self, runner):
        result = runner.invoke(main, [
            "decide", "--kind", "linear", "--domain", "N",
            "--g", "n max 1", "--f", "n"])
        assert result.exit_code == 1
        assert json.loads(result.output)["status"] == "fails"

    def test_bad_expression_is_usage_error(self, runner):
        result = runner.invoke(main, [
            "decide", "--kind", "linear", "--domain", "N",
            "--g", "n +", "--f", "n"])
        assert result.exit_code == 2

    def test_output_deterministic(self, runner):
        args = ["decide", "--kind", "affine", "--domain", "N^2",
                "--g", "m * n + n", "--f", "m * n + 1"]
        a = runner.invoke(main, args)
        b = runner.invoke(main, args)
        assert a.output == b.output


class TestCompare:
    def test_equivalent(self, runner):
        result = runner.invoke(main, [
            "compare", "--kind", "linear", "--domain", "N",
            "--g", "2 * n", "--f", "n"])
        assert result.exit_code == 0
        assert json.loads(result.output)["relation"] == "equivalent"


class TestProps:
    def test_passing_cell(self, runner):
        result = runner.invoke(main, [
            "props", "--property", "Order", "--kind", "linear",
            "--trials", "5", "--horizon", "64"])
        assert result.exit_code == 0
        assert json.loads(result.output)["status"] == "passed"

    def test_refuted_cell_exits_one(self, runner):
        result = runner.invoke(main, [
            "props", "--property", "One", "--kind", "trivial",
            "--trials", "5", "--horizon", "64"])
        assert result.exit_code == 1


class TestMatrix:
    ARGS = ["matrix", "--kinds", "linear,affine",
            "--properties", "Order,One", "--trials", "5",
            "--horizon", "64"]

    def test_json_cells(self, runner):
        result = runner.invoke(main, self.ARGS)
        record = json.loads(result.output)
        assert len(record["cells"]) == 4

    def test_table_format(self, runner):
        result = runner.invoke(main, self.ARGS + ["--format", "table"])
        assert result.exit_code == 0
        assert "\t" in result.output

    def test_plot_file_written(self, runner, tmp_path):
        target = tmp_path / "matrix.png"
        result = runner.invoke(main, self.ARGS + ["--plot", str(target)])
        assert result.exit_code == 0
        assert target.exists() and target.stat().st_size > 0


class TestCounterexample:
    def test_single_case(self, runner):
        result = runner.invoke(main, ["counterexample", "alg-strip-cost"])
        assert result.exit_code == 0

    def test_all_cases(self, runner):
        result = runner.invoke(main, ["counterexample", "--horizon", "32"])
        assert result.exit_code == 0

    def test_unknown_case(self, runner):
        result = runner.invoke(main, ["counterexample", "no-such-case"])
        assert result.exit_code == 2


class TestMaster:
    def test_theta_class(self, runner):
        result = runner.invoke(main, [
            "master", "--variant", "integers", "-a", "2", "-b", "2",
            "-c", "1", "-d", "1", "--horizon-exp", "7"])
        assert result.exit_code == 0
        assert json.loads(result.output)["class"] == "n^c*log_b(n)"

    def test_rational_base(self, runner):
        result = runner.invoke(main, [
            "master", "--variant", "integers", "-a", "2", "-b", "5/2",
            "-c", "1", "-d", "1", "--horizon-exp", "7"])
        assert result.exit_code == 0

    def test_plot_file_written(self, runner, tmp_path):
        target = tmp_path / "master.png"
        result = runner.invoke(main, [
            "master", "--variant", "powers", "-a", "4", "-b", "2",
            "-c", "1", "-d", "1", "--horizon-exp", "7",
            "--plot", str(target)])
        assert result.exit_code == 0
        assert target.exists() and target.stat().st_size > 0


class TestCases:
    def test_table_of_extremes(self, runner):
        result = runner.invoke(main, ["cases", "--max-length", "4"])
        assert result.exit_code == 0
        by_n = json.loads(result.output)["byLength"]
        assert by_n["4"]["worst"] == "6"
        assert by_n["4"]["best"] == "3"


class TestOmap:
    def test_equality_law(self, runner):
        result = runner.invoke(main, [
            "omap", "--transform", "power", "--alpha", "2",
            "--law", "equality", "--trials", "20"])
        assert result.exit_code == 0
        assert json.loads(result.output)["status"] == "passed"

    def test_translate_equality_rejected(self, runner):
        result = runner.invoke(main, [
            "omap", "--transform", "translate", "--alpha", "3",
            "--law", "equality", "--trials", "20"])
        assert result.exit_code == 2


class TestPreorder:
    @pytest.mark.parametrize("letter", ["a", "b", "c", "d", "e", "f"])
    def test_figure_cases(self, runner, letter):
        result = runner.invoke(main, ["preorder", "--case", letter])
        assert result.exit_code == 0


class TestProofcheck:
    def test_bundled_corpus_clean(self, runner):
        result = runner.invoke(main, ["proofcheck"])
        assert result.exit_code == 0
        assert json.loads(result.output)["violations"] == []

    def test_violating_ledger_exits_one(self, runner, tmp_path):
        bad = tmp_path / "bad.ledger"
        bad.write_text("theorem t requires {A} proves {B}\n"
                       "  use A\n  end\n")
        result = runner.invoke(main, ["proofcheck", str(bad)])
        assert result.exit_code == 1


class TestOutputFile:
    def test_out_flag_writes_file(self, runner, tmp_path):
        target = tmp_path / "verdict.json"
        result = runner.invoke(main, [
            "decide", "--kind", "linear", "--domain", "N",
            "--g", "n", "--f", "n", "--out", str(target)])
        assert result.exit_code == 0
        assert json.loads(target.read_text())["status"] == "holds"
