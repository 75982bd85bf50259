"""CLI subcommands, output determinism, exit codes."""

import json

import pytest

from graphc.cli import (
    EXIT_CACHE,
    EXIT_CAP,
    EXIT_CHECK_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    main,
)
from graphc.enumeration import cache_filename


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBasis:
    def test_lists_diagrams(self, capsys, tmp_path):
        code, out, _ = run(
            capsys, "basis", "--type", "odd", "-k", "2", "-m", "0",
            "--cache-dir", str(tmp_path),
        )
        assert code == EXIT_OK
        lines = out.strip().splitlines()
        assert lines[0] == "# basis type=odd k=2 m=0 dim=3"
        assert len(lines) == 4
        for line in lines[1:]:
            assert json.loads(line)["type"] == "odd"

    def test_writes_cache(self, capsys, tmp_path):
        run(capsys, "basis", "--type", "even", "-k", "1", "-m", "0",
            "--cache-dir", str(tmp_path))
        assert (tmp_path / cache_filename("even", 1, 0)).exists()


class TestTable:
    def test_text_contains_header(self, capsys):
        code, out, _ = run(capsys, "table", "--type", "odd", "-k", "1")
        assert code == EXIT_OK
        assert out.splitlines()[0].split() == ["type", "k", "m", "dim_D", "dim_H"]

    def test_deterministic_bytes(self, capsys):
        code1, out1, _ = run(capsys, "table", "--type", "both", "-k", "1..3")
        code2, out2, _ = run(capsys, "table", "--type", "both", "-k", "1..3")
        assert code1 == code2 == EXIT_OK
        assert out1.encode() == out2.encode()

    def test_csv_and_json_formats(self, capsys):
        _, out_csv, _ = run(capsys, "table", "--type", "even", "-k", "1",
                            "--format", "csv")
        assert out_csv.splitlines()[0] == "type,k,m,dim_D,dim_H"
        _, out_json, _ = run(capsys, "table", "--type", "even", "-k", "1",
                             "--format", "json")
        rows = json.loads(out_json)
        assert all(row["type"] == "even" for row in rows)


class TestCohomology:
    def test_dimension_line(self, capsys):
        code, out, _ = run(capsys, "cohomology", "--type", "even",
                           "-k", "3", "-m", "1")
        assert code == EXIT_OK
        assert "dim H^(3,1) of the even complex = 1" in out

    def test_representative_and_ratio(self, capsys):
        code, out, _ = run(
            capsys, "cohomology", "--type", "even", "-k", "3", "-m", "1",
            "--representative", "--format", "json",
        )
        assert code == EXIT_OK
        result = json.loads(out)
        assert result["dim"] == 1
        assert len(result["supported_representative"]) == 2
        assert result["coefficient_ratio"] in ("2", "-2")

    def test_requires_single_type(self, capsys):
        code, _, err = run(capsys, "cohomology", "--type", "both",
                           "-k", "3", "-m", "1")
        assert code == EXIT_USAGE
        assert "requires" in err


class TestCheck:
    def test_d2_passes(self, capsys):
        code, out, _ = run(capsys, "check", "d2", "--kmax", "3")
        assert code == EXIT_OK
        assert "check d2: PASS" in out

    def test_adjoint_passes(self, capsys):
        code, out, _ = run(capsys, "check", "adjoint", "--kmax", "3")
        assert code == EXIT_OK
        assert "check adjoint: PASS" in out

    def test_quadrivalent_passes(self, capsys):
        code, out, _ = run(capsys, "check", "quadrivalent", "--kmax", "3")
        assert code == EXIT_OK

    def test_chord_compare_passes(self, capsys):
        code, out, _ = run(capsys, "check", "chord-compare", "--kmax", "3")
        assert code == EXIT_OK


class TestExport:
    def test_json(self, capsys):
        code, out, _ = run(capsys, "export", "--type", "odd", "-k", "2",
                           "-m", "0", "--index", "0")
        assert code == EXIT_OK
        assert json.loads(out)["type"] == "odd"

    def test_dot(self, capsys):
        code, out, _ = run(capsys, "export", "--type", "even", "-k", "2",
                           "-m", "0", "--index", "0",
                           "--export-format", "dot")
        assert code == EXIT_OK
        assert out.startswith("graph diagram {")
        assert "--" in out

    def test_to_file(self, capsys, tmp_path):
        path = tmp_path / "d.json"
        code, out, _ = run(capsys, "export", "--type", "odd", "-k", "1",
                           "-m", "0", "-o", str(path))
        assert code == EXIT_OK and out == ""
        assert json.loads(path.read_text())["type"] == "odd"

    def test_bad_index(self, capsys):
        code, _, err = run(capsys, "export", "--type", "even", "-k", "1",
                           "-m", "0", "--index", "99")
        assert code == EXIT_USAGE
        assert "out of range" in err


class TestExitCodes:
    def test_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["no-such-command"])
        assert exc.value.code == EXIT_USAGE

    def test_cap_exceeded(self, capsys):
        code, _, err = run(capsys, "table", "--type", "even", "-k", "4",
                           "--max-cell-size", "1")
        assert code == EXIT_CAP
        assert "error" in err

    def test_cache_corruption(self, capsys, tmp_path):
        (tmp_path / cache_filename("odd", 1, 0)).write_text("garbage\n")
        code, _, err = run(capsys, "basis", "--type", "odd", "-k", "1",
                           "-m", "0", "--cache-dir", str(tmp_path))
        assert code == EXIT_CACHE
        assert "error" in err

    def test_check_failure_exit_code_is_distinct(self):
        assert len({EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_CHECK_FAILED, EXIT_CACHE}) == 5
