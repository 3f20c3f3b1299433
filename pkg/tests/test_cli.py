"""End-to-end tests for the command line interface, driven through main()."""

import json
import math

import pytest

from hypmetrics.cli import main
from hypmetrics.suite import parse_report


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_ball_u(self, capsys):
        code, out, err = run(
            capsys, "eval", "--domain", "ball", "--metric", "u", "-x", "0,0,0", "-y", "0.5,0,0"
        )
        assert code == 0 and err == ""
        assert out.strip() == f"{math.log(4.5):.12g}"

    def test_halfspace_rho(self, capsys):
        code, out, _ = run(
            capsys, "eval", "--domain", "halfspace", "--metric", "rho",
            "-x", "0,0,1", "-y", "0,0,2",
        )
        assert code == 0
        assert out.strip() == f"{math.log(2.0):.12g}"

    def test_complement_cassinian(self, capsys):
        # boundary is the removed point and infinity; the removed point wins
        code, out, _ = run(
            capsys, "eval", "--domain", "complement", "--remove", "1,0,0",
            "--metric", "cassinian", "-x", "0,0,0", "-y", "2,0,0",
        )
        assert code == 0
        assert out.strip() == "2"

    def test_metric_defaults_to_u(self, capsys):
        code, out, _ = run(capsys, "eval", "--domain", "ball", "-x", "0,0,0", "-y", "0.5,0,0")
        assert code == 0
        assert out.strip() == f"{math.log(4.5):.12g}"

    def test_planar_points_work(self, capsys):
        code, out, _ = run(capsys, "eval", "--domain", "ball", "-x", "0,0", "-y", "0.5,0")
        assert code == 0
        assert out.strip() == f"{math.log(4.5):.12g}"

    def test_unknown_metric_is_a_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["eval", "--domain", "ball", "--metric", "nope", "-x", "0,0", "-y", "0.5,0"])
        assert exc.value.code == 2

    @pytest.mark.parametrize(
        "argv",
        [
            ["eval", "--domain", "ball", "-x", "0,0", "-y", "0,0,1"],
            ["eval", "--domain", "ball", "--dim", "4", "-x", "0,0,0", "-y", "0.5,0,0"],
            ["eval", "--domain", "complement", "-x", "0,0,0", "-y", "2,0,0"],
            ["eval", "--domain", "ball", "-x", "zero,0", "-y", "0.5,0"],
            ["eval", "--domain", "ball", "-x", "0", "-y", "0.5"],
            ["eval", "--domain", "ball", "-x", "0,0,2", "-y", "0.5,0,0"],
            ["eval", "--domain", "complement", "--remove", "1,0,0",
             "--metric", "rho", "-x", "0,0,0", "-y", "2,0,0"],
        ],
    )
    def test_configuration_errors_exit_2(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == 2
        assert out == ""
        assert err.startswith("error:")

    def test_no_infinity_boundary_changes_the_domain(self, capsys):
        args = ["--metric", "delta", "-x", "0,0,0", "-y", "2,0,0"]
        code, out, _ = run(
            capsys, "eval", "--domain", "complement", "--remove", "1,0,0", *args
        )
        assert code == 0
        # with only one finite boundary point the metric is undefined
        code, _, err = run(
            capsys, "eval", "--domain", "complement", "--remove", "1,0,0",
            "--no-infinity-boundary", *args,
        )
        assert code == 2 and err.startswith("error:")


class TestVerify:
    def test_single_case_json(self, capsys, monkeypatch):
        monkeypatch.delenv("HYPMETRICS_SEED", raising=False)
        code, out, _ = run(capsys, "verify", "--case", "AX-U", "--samples", "20")
        assert code == 0
        records = parse_report(out)
        assert len(records) == 1
        rec = records[0]
        assert rec["case_id"] == "AX-U"
        assert rec["samples"] == 20
        assert rec["seed"] == 42
        assert rec["pass"] is True

    def test_unknown_case_lists_known_ids(self, capsys):
        code, _, err = run(capsys, "verify", "--case", "BOGUS", "--samples", "5")
        assert code == 2
        assert "unknown case ids: BOGUS" in err
        assert "AX-U" in err

    def test_bad_samples(self, capsys):
        code, _, err = run(capsys, "verify", "--case", "AX-U", "--samples", "0")
        assert code == 2 and err.startswith("error:")

    def test_failing_case_exits_1(self, capsys):
        code, out, _ = run(capsys, "verify", "--case", "T-ALJ", "--samples", "50")
        assert code == 1
        rec = parse_report(out)[0]
        assert rec["violations"] > 0 and rec["pass"] is False

    def test_seed_flag_beats_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("HYPMETRICS_SEED", "9")
        code, out, _ = run(
            capsys, "verify", "--case", "AX-U", "--samples", "5", "--seed", "7"
        )
        assert code == 0 and parse_report(out)[0]["seed"] == 7

    def test_environment_seed_beats_default(self, capsys, monkeypatch):
        monkeypatch.setenv("HYPMETRICS_SEED", "9")
        code, out, _ = run(capsys, "verify", "--case", "AX-U", "--samples", "5")
        assert code == 0 and parse_report(out)[0]["seed"] == 9

    def test_garbage_environment_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("HYPMETRICS_SEED", "soon")
        code, _, err = run(capsys, "verify", "--case", "AX-U", "--samples", "5")
        assert code == 2 and "HYPMETRICS_SEED" in err

    def test_text_and_csv_formats(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--case", "AX-U", "--samples", "5", "--format", "text"
        )
        assert code == 0 and "pass" in out
        code, out, _ = run(
            capsys, "verify", "--case", "AX-U", "--samples", "5", "--format", "csv"
        )
        assert code == 0 and out.startswith("case_id,")

    def test_out_writes_a_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run(
            capsys, "verify", "--case", "AX-U", "--samples", "5", "--out", str(target)
        )
        assert code == 0 and out == ""
        assert parse_report(target.read_text())[0]["case_id"] == "AX-U"


class TestProbe:
    def test_csv_table(self, capsys):
        code, out, _ = run(capsys, "probe", "--id", "P6")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0].startswith("# probe P6:")
        assert lines[1] == "t,functional_value,deviation_from_expected"
        assert lines[-1].startswith("# summary: expected_limit=")
        assert "pass=true" in lines[-1]
        data_rows = lines[2:-1]
        assert len(data_rows) >= 4
        assert all(len(row.split(",")) == 3 for row in data_rows)

    def test_failing_probe_exits_1(self, capsys):
        code, out, _ = run(capsys, "probe", "--id", "P5")
        assert code == 1
        assert "pass=false" in out

    def test_unknown_probe(self, capsys):
        code, _, err = run(capsys, "probe", "--id", "BOGUS")
        assert code == 2 and "unknown probe ids" in err

    def test_schedule_override(self, capsys):
        code, out, _ = run(
            capsys, "probe", "--id", "P3", "--schedule", "0.1,0.01,0.001,0.0001"
        )
        assert code == 0
        assert out.count("\n") == 7

    def test_schedule_needs_exactly_one_id(self, capsys):
        code, _, err = run(
            capsys, "probe", "--id", "P3", "--id", "P6", "--schedule", "0.1,0.01,0.001,0.0001"
        )
        assert code == 2 and "exactly one" in err
        code, _, err = run(capsys, "probe", "--schedule", "0.1,0.01,0.001,0.0001")
        assert code == 2

    def test_unparsable_schedule(self, capsys):
        code, _, err = run(capsys, "probe", "--id", "P6", "--schedule", "1,2,x,4")
        assert code == 2 and "could not parse schedule" in err

    def test_schedule_leaving_the_domain(self, capsys):
        code, _, err = run(capsys, "probe", "--id", "P4", "--schedule", "0.5,0.9,0.99,1.0")
        assert code == 2 and "leaves the domain" in err

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "probe", "--id", "P6", "--format", "json")
        assert code == 0
        rec = parse_report(out)[0]
        assert rec["case_id"] == "P6"
        assert rec["final_deviation"] == 0.0
        assert rec["seed"] is None

    def test_all_probes_render(self, capsys):
        code, out, _ = run(capsys, "probe", "--format", "text")
        assert code == 1  # catalog contains probes that genuinely fall short
        assert out.count("\n") == len(
            [ln for ln in out.strip().split("\n")]
        )


class TestReport:
    def _write_report(self, capsys, tmp_path, case="AX-U", samples="5"):
        target = tmp_path / "r.json"
        code, _, _ = run(
            capsys, "verify", "--case", case, "--samples", samples, "--out", str(target)
        )
        return code, target

    def test_round_trip(self, capsys, tmp_path):
        wrote, target = self._write_report(capsys, tmp_path)
        assert wrote == 0
        code, out, _ = run(capsys, "report", "--in", str(target), "--format", "json")
        assert code == 0
        assert out == target.read_text()

    def test_text_rendering(self, capsys, tmp_path):
        _, target = self._write_report(capsys, tmp_path)
        code, out, _ = run(capsys, "report", "--in", str(target))
        assert code == 0 and "AX-U" in out and "pass" in out

    def test_failing_report_exits_1(self, capsys, tmp_path):
        wrote, target = self._write_report(capsys, tmp_path, case="T-ALJ", samples="50")
        assert wrote == 1
        code, out, _ = run(capsys, "report", "--in", str(target))
        assert code == 1 and "FAIL" in out

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "report", "--in", str(tmp_path / "absent.json"))
        assert code == 2 and "could not read report" in err

    def test_corrupt_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{]")
        code, _, err = run(capsys, "report", "--in", str(bad))
        assert code == 2 and err.startswith("error:")

    def test_rejects_wrong_shape(self, capsys, tmp_path):
        bad = tmp_path / "shape.json"
        bad.write_text(json.dumps([{"case_id": "X"}]))
        code, _, err = run(capsys, "report", "--in", str(bad))
        assert code == 2 and err.startswith("error:")
