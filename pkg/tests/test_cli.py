"""End-to-end command-line behavior: every verb, exit codes, determinism,
and the report round-trip guarantee (feeding an emitted report back as the
spec reproduces the bytes)."""

import json

import pytest

from semiforms import cli


def run(capsysbinary, argv):
    code = cli.main(argv)
    captured = capsysbinary.readouterr()
    return code, captured.out, captured.err


def spec_file(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


PELL_SEARCH = {
    "num_vars": 2,
    "family": ["x0^2 - 2*x1^2"],
    "S": [],
    "c": 1,
    "lambda": 0,
    "bound": 100,
}


class TestDelta:
    def test_three_lines(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "d.json",
                         {"num_vars": 2, "family": ["x0", "x1", "x0 + x1"]})
        code, out, _ = run(capsysbinary, ["delta", "--spec", spec])
        assert code == 0
        payload = json.loads(out)
        assert payload["delta"] == "1/1"
        assert payload["witness"] == [1]
        assert payload["dim_v"] == "1"
        assert payload["spec"]["family"] == ["x0", "x1", "x0 + x1"]

    def test_repeated_member(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "d.json",
                         {"num_vars": 2, "family": ["x0", "x0"]})
        code, out, _ = run(capsysbinary, ["delta", "--spec", spec])
        assert code == 0
        payload = json.loads(out)
        assert payload["delta"] == "2/1"
        assert payload["witness"] == [1, 2]

    def test_infinite_on_subvariety(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "d.json",
                         {"num_vars": 3, "family": ["x0"], "variety": ["x0"]})
        code, out, _ = run(capsysbinary, ["delta", "--spec", spec])
        assert code == 0
        assert json.loads(out)["delta"] == "inf"

    def test_workers_flag(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "d.json",
                         {"num_vars": 2, "family": ["x0", "x1", "x0 + x1"]})
        _, serial_out, _ = run(capsysbinary, ["delta", "--spec", spec])
        code, parallel_out, _ = run(capsysbinary,
                                    ["delta", "--spec", spec, "--workers", "2"])
        assert code == 0
        assert parallel_out == serial_out


class TestVerify:
    def test_five_lines(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "v.json", {
            "num_vars": 2,
            "family": ["x0", "x1", "x0 + x1", "x0 - x1", "x0 + 2*x1"],
            "lambda": "1/2",
        })
        code, out, _ = run(capsysbinary, ["verify", "--spec", spec])
        assert code == 0
        payload = json.loads(out)
        assert payload["ell"] == 5
        assert payload["bound"] == "9/4"
        assert payload["degree_ok"] is True
        assert payload["lambda_ok"] is True
        assert payload["lambda"] == "1/2"


class TestSearch:
    def test_pell(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "s.json", PELL_SEARCH)
        code, out, _ = run(capsysbinary, ["search", "--spec", spec])
        assert code == 0
        payload = json.loads(out)
        assert payload["count"] == 13
        reps = [tuple(c["representative"]) for c in payload["classes"]]
        assert (3, 2) in reps and (99, -70) in reps
        assert payload["classes"][0]["fs_value"] == "1/1"

    def test_budget_exit_code(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "s.json",
                         dict(PELL_SEARCH, c="1000000", bound=200))
        code, _, err = run(capsysbinary,
                           ["search", "--spec", spec, "--budget", "3"])
        assert code == 2
        assert b"budget" in err.lower()


class TestEquation:
    def test_pell_equation(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "e.json", {
            "num_vars": 2,
            "f": "x0^2 - 2*x1^2",
            "rhs": 1,
            "S": [],
            "bound": 100,
        })
        code, out, _ = run(capsysbinary, ["equation", "--spec", spec])
        assert code == 0
        payload = json.loads(out)
        members = [tuple(p) for c in payload["classes"]
                   for p in c["members_found"]]
        assert len(members) == 14
        assert (-3, 2) in members


class TestAudit:
    def test_three_lines_square(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "a.json", {
            "num_vars": 2,
            "family": ["x0", "x1", "x0 + x1"],
            "epsilon": 1,
            "mode": "square",
            "bounds": [20, 40],
        })
        code, out, _ = run(capsysbinary, ["audit", "--spec", spec])
        assert code == 0
        payload = json.loads(out)
        assert payload["rho"] == "13/4"
        assert payload["stabilized"] is True
        assert payload["violators"] == []
        assert [r["bound"] for r in payload["rungs"]] == ["20/1", "40/1"]

    def test_linear_mode(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "a.json", {
            "num_vars": 2,
            "family": ["x0", "x1", "x0 + x1"],
            "epsilon": 1,
            "mode": "linear",
            "bounds": [20],
        })
        code, out, _ = run(capsysbinary, ["audit", "--spec", spec])
        assert code == 0
        assert json.loads(out)["rho"] == "3/1"


class TestStability:
    def test_pell_ladder(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "t.json", {
            "num_vars": 2,
            "family": ["x0^2 - 2*x1^2"],
            "c": 1,
            "lambda": 0,
            "bounds": [100, 1000],
        })
        code, out, _ = run(capsysbinary, ["stability", "--spec", spec])
        assert code == 0
        payload = json.loads(out)
        assert payload["counts"] == [13, 17]
        assert payload["stable"] is False


class TestHeights:
    def test_positional_tuple(self, capsysbinary):
        code, out, _ = run(capsysbinary,
                           ["heights", "(6,4)", "--s-primes", "2"])
        assert code == 0
        payload = json.loads(out)
        assert payload["height_s"] == "3/1"
        assert payload["proj_height"] == "3/1"
        assert payload["tuple_norms"]["inf"] == "6/1"
        assert payload["tuple_norms"]["2"] == "1/2"

    def test_poly_alone_needs_num_vars(self, capsysbinary):
        code, _, err = run(capsysbinary,
                           ["heights", "--poly", "6*x0^2 - 15*x1^2"])
        assert code == 1
        assert b"num_vars" in err

    def test_poly_with_tuple(self, capsysbinary):
        code, out, _ = run(capsysbinary,
                           ["heights", "(2,3)", "--poly", "x0 - 5*x1"])
        assert code == 0
        payload = json.loads(out)
        assert payload["poly_height"] == "5/1"
        assert payload["proj_height"] == "3/1"

    def test_no_input_rejected(self, capsysbinary):
        code, _, err = run(capsysbinary, ["heights"])
        assert code == 1
        assert b"tuple" in err


class TestSpecHandling:
    def test_malformed_json(self, tmp_path, capsysbinary):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        code, _, err = run(capsysbinary, ["delta", "--spec", str(path)])
        assert code == 1
        assert b"JSON" in err

    def test_missing_file(self, capsysbinary):
        code, _, err = run(capsysbinary,
                           ["delta", "--spec", "/nonexistent/x.json"])
        assert code == 1

    def test_unknown_key(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "d.json",
                         {"num_vars": 2, "family": ["x0"], "colour": "red"})
        code, _, err = run(capsysbinary, ["delta", "--spec", spec])
        assert code == 1
        assert b"colour" in err

    def test_verb_mismatch(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "d.json",
                         {"verb": "delta", "num_vars": 2, "family": ["x0"]})
        code, _, err = run(capsysbinary, ["verify", "--spec", spec])
        assert code == 1

    def test_float_rejected(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "s.json", dict(PELL_SEARCH, c=0.5))
        code, _, err = run(capsysbinary, ["search", "--spec", spec])
        assert code == 1

    def test_bad_rational_string(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "s.json", dict(PELL_SEARCH, c="1.5"))
        code, _, err = run(capsysbinary, ["search", "--spec", spec])
        assert code == 1

    def test_syntax_error_reports_position(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "d.json",
                         {"num_vars": 2, "family": ["x0 + + x1"]})
        code, _, err = run(capsysbinary, ["delta", "--spec", spec])
        assert code == 1
        assert b"position" in err


class TestOutputModes:
    def test_deterministic_bytes(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "s.json", PELL_SEARCH)
        _, first, _ = run(capsysbinary, ["search", "--spec", spec])
        _, second, _ = run(capsysbinary, ["search", "--spec", spec])
        assert first == second
        assert first.endswith(b"\n")

    def test_csv_format(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "s.json", PELL_SEARCH)
        code, out, _ = run(capsysbinary,
                           ["search", "--spec", spec, "--format", "csv"])
        assert code == 0
        lines = out.decode().splitlines()
        assert lines[0].startswith("representative")
        assert len(lines) == 14  # header + 13 classes

    def test_out_directory(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "s.json", PELL_SEARCH)
        out_dir = tmp_path / "reports"
        code, out, _ = run(capsysbinary,
                           ["search", "--spec", spec, "--out", str(out_dir)])
        assert code == 0
        assert out == b""  # nothing on stdout when writing files
        assert (out_dir / "search.json").exists()
        assert (out_dir / "search.csv").exists()

    def test_report_round_trip(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "s.json", PELL_SEARCH)
        out_dir = tmp_path / "reports"
        run(capsysbinary, ["search", "--spec", spec, "--out", str(out_dir)])
        report = out_dir / "search.json"
        code, replay, _ = run(capsysbinary,
                              ["search", "--spec", str(report)])
        assert code == 0
        assert replay == report.read_bytes()

    def test_verbose_goes_to_stderr(self, tmp_path, capsysbinary):
        spec = spec_file(tmp_path, "d.json",
                         {"num_vars": 2, "family": ["x0"]})
        code, out, err = run(capsysbinary,
                             ["delta", "--spec", spec, "--verbose"])
        assert code == 0
        assert b"backend" in err
        json.loads(out)  # stdout stays pure JSON
